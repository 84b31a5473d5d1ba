//! Local binary and ternary pattern codes.
//!
//! Neighbors are sampled on a circle of radius `R` at angles `2πp/P`, starting
//! east and turning counterclockwise (y grows downward, so the offset for
//! point `p` is `(R cos θ, −R sin θ)`). Off-grid positions are bilinearly
//! interpolated and coordinates are clamped to the image rectangle, so every
//! pixel, border included, receives a code.
//!
//! Opposing-pair coding reads the center from one plane and the neighbors
//! from another, with the adaptive ternary threshold `t = g_c / 10`.

use rayon::prelude::*;

use crate::colorspace::{ChannelPair, ColorImage};
use crate::error::{Error, Result};

/// Largest `P` whose ternary codes fit in a `u32`.
pub const MAX_POINTS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodSpec {
    points: usize,
    radius: f64,
    offsets: Vec<(f64, f64)>,
}

impl Default for NeighborhoodSpec {
    /// `P = 5`, `R = 1`.
    fn default() -> Self {
        Self::new(5, 1.0).expect("default neighborhood is valid")
    }
}

impl NeighborhoodSpec {
    pub fn new(points: usize, radius: f64) -> Result<Self> {
        if points == 0 || points > MAX_POINTS {
            return Err(Error::InvalidNeighborhood(format!(
                "neighbor count must be in 1..={MAX_POINTS}, got {points}"
            )));
        }
        if !radius.is_finite() || radius < 1.0 {
            return Err(Error::InvalidNeighborhood(format!(
                "radius must be at least 1, got {radius}"
            )));
        }
        let offsets = (0..points)
            .map(|p| {
                let theta = 2.0 * std::f64::consts::PI * p as f64 / points as f64;
                (snap(radius * theta.cos()), snap(-radius * theta.sin()))
            })
            .collect();
        Ok(Self {
            points,
            radius,
            offsets,
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `(dx, dy)` sample offsets in pixel coordinates.
    pub fn offsets(&self) -> &[(f64, f64)] {
        &self.offsets
    }

    /// Number of distinct ternary codes, `3^P`.
    pub fn ternary_levels(&self) -> u32 {
        3u32.pow(self.points as u32)
    }

    /// Number of distinct binary codes, `2^P`.
    pub fn binary_levels(&self) -> u32 {
        1u32 << self.points
    }
}

// Removes the ~1e-16 residue of cos/sin at multiples of π/2.
fn snap(v: f64) -> f64 {
    let r = v.round();
    if (v - r).abs() < 1e-12 {
        r
    } else {
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeBase {
    Binary,
    Ternary,
}

impl CodeBase {
    pub fn radix(self) -> u32 {
        match self {
            CodeBase::Binary => 2,
            CodeBase::Ternary => 3,
        }
    }
}

/// Per-pixel pattern codes for one plane or opposing pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMap {
    width: usize,
    height: usize,
    base: CodeBase,
    levels: u32,
    codes: Vec<u32>,
}

impl CodeMap {
    pub fn from_codes(
        width: usize,
        height: usize,
        base: CodeBase,
        points: usize,
        codes: Vec<u32>,
    ) -> Result<Self> {
        let levels = base.radix().pow(points as u32);
        if codes.len() != width * height {
            return Err(Error::Invalid(format!(
                "code map needs {} codes, got {}",
                width * height,
                codes.len()
            )));
        }
        if let Some(c) = codes.iter().find(|&&c| c >= levels) {
            return Err(Error::Invalid(format!("code {c} out of range 0..{levels}")));
        }
        Ok(Self {
            width,
            height,
            base,
            levels,
            codes,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn base(&self) -> CodeBase {
        self.base
    }

    /// Number of representable codes (`2^P` or `3^P`).
    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.codes[y * self.width + x]
    }
}

/// `Σ s(g_p − g_c) 2^p` with `s(z) = 1` for `z ≥ 0`.
pub fn lbp_code(center: f64, neighbors: &[f64]) -> u32 {
    neighbors
        .iter()
        .enumerate()
        .map(|(p, &g)| u32::from(g - center >= 0.0) << p)
        .sum()
}

/// Ternary digit: 2 above the dead zone, 1 inside it, 0 below.
#[inline]
pub fn ternary_digit(z: f64, t: f64) -> u32 {
    if z >= t {
        2
    } else if z <= -t {
        0
    } else {
        1
    }
}

/// Basic LTP code `Σ s(g_p − g_c) 3^p` with dead-zone half-width `t`.
pub fn ltp_code(center: f64, neighbors: &[f64], t: f64) -> u32 {
    neighbors
        .iter()
        .rev()
        .fold(0, |acc, &g| acc * 3 + ternary_digit(g - center, t))
}

/// `g_c / 10`, kept real-valued.
#[inline]
pub fn adaptive_threshold(center: f64) -> f64 {
    center / 10.0
}

/// Bilinear sample at `(x, y)` after clamping to the plane rectangle.
#[inline]
pub fn sample_bilinear(plane: &[f64], width: usize, height: usize, x: f64, y: f64) -> f64 {
    let x = x.clamp(0.0, (width - 1) as f64);
    let y = y.clamp(0.0, (height - 1) as f64);
    let x0 = x.floor() as usize;
    let y0 = y.floor() as usize;
    let x1 = (x0 + 1).min(width - 1);
    let y1 = (y0 + 1).min(height - 1);
    let fx = x - x0 as f64;
    let fy = y - y0 as f64;
    let at = |xx: usize, yy: usize| plane[yy * width + xx];
    let top = at(x0, y0) + fx * (at(x1, y0) - at(x0, y0));
    let bottom = at(x0, y1) + fx * (at(x1, y1) - at(x0, y1));
    top + fy * (bottom - top)
}

fn code_planes(
    center_plane: &[f64],
    neighbor_plane: &[f64],
    width: usize,
    height: usize,
    spec: &NeighborhoodSpec,
    base: CodeBase,
) -> CodeMap {
    let mut codes = vec![0u32; width * height];
    codes
        .par_chunks_mut(width)
        .enumerate()
        .for_each(|(y, row)| {
            let mut neighbors = vec![0.0; spec.points()];
            for (x, code) in row.iter_mut().enumerate() {
                let center = center_plane[y * width + x];
                for (n, &(dx, dy)) in neighbors.iter_mut().zip(spec.offsets()) {
                    *n = sample_bilinear(
                        neighbor_plane,
                        width,
                        height,
                        x as f64 + dx,
                        y as f64 + dy,
                    );
                }
                *code = match base {
                    CodeBase::Binary => lbp_code(center, &neighbors),
                    CodeBase::Ternary => ltp_code(center, &neighbors, adaptive_threshold(center)),
                };
            }
        });
    CodeMap {
        width,
        height,
        base,
        levels: base.radix().pow(spec.points() as u32),
        codes,
    }
}

/// LBP codes of a single plane.
pub fn lbp_map(plane: &[f64], width: usize, height: usize, spec: &NeighborhoodSpec) -> CodeMap {
    assert_eq!(plane.len(), width * height, "plane size mismatch");
    code_planes(plane, plane, width, height, spec, CodeBase::Binary)
}

/// LTP codes of a single plane with the adaptive threshold.
pub fn ltp_map(plane: &[f64], width: usize, height: usize, spec: &NeighborhoodSpec) -> CodeMap {
    assert_eq!(plane.len(), width * height, "plane size mismatch");
    code_planes(plane, plane, width, height, spec, CodeBase::Ternary)
}

/// LTP codes of an opposing pair: centers from `pair.center_plane`,
/// neighbors from `pair.neighbor_plane`.
pub fn code_pair(img: &ColorImage, pair: ChannelPair, spec: &NeighborhoodSpec) -> CodeMap {
    code_planes(
        img.plane(pair.center_plane),
        img.plane(pair.neighbor_plane),
        img.width(),
        img.height(),
        spec,
        CodeBase::Ternary,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lbp_figure_pattern() {
        // bits 1, 2, 3 set: neighbors 1..=3 at or above the center
        let center = 239.0;
        let neighbors = [200.0, 239.0, 250.0, 240.0, 100.0];
        assert_eq!(lbp_code(center, &neighbors), 14);
    }

    #[test]
    fn lbp_extremes() {
        assert_eq!(lbp_code(5.0, &[5.0; 5]), 31);
        assert_eq!(lbp_code(5.0, &[4.0; 5]), 0);
    }

    #[test]
    fn ltp_digits() {
        assert_eq!(ltp_code(100.0, &[115.0], 10.0), 2);
        assert_eq!(ltp_code(100.0, &[105.0], 10.0), 1);
        assert_eq!(ltp_code(100.0, &[85.0], 10.0), 0);
        // exactly at the threshold falls outside the dead zone
        assert_eq!(ltp_code(100.0, &[110.0, 90.0], 10.0), 2);
    }

    #[test]
    fn ltp_fixed_points() {
        assert_eq!(ltp_code(80.0, &[80.0; 5], 8.0), 121);
        assert_eq!(ltp_code(80.0, &[88.0; 5], 8.0), 242);
        assert_eq!(ltp_code(80.0, &[0.0; 5], 8.0), 0);
    }

    #[test]
    fn zero_threshold_has_no_dead_zone() {
        assert_eq!(adaptive_threshold(0.0), 0.0);
        assert_eq!(ltp_code(0.0, &[0.0, 0.0, 0.0, 0.0, 0.0], 0.0), 242);
        assert_eq!(ternary_digit(-1e-9, 0.0), 0);
    }

    #[test]
    fn thresholds() {
        assert!((adaptive_threshold(239.0) - 23.9).abs() < 1e-12);
        assert_eq!(adaptive_threshold(100.0), 10.0);
    }

    #[test]
    fn offsets_start_east_counterclockwise() {
        let spec = NeighborhoodSpec::new(4, 1.0).unwrap();
        assert_eq!(
            spec.offsets(),
            &[(1.0, 0.0), (0.0, -1.0), (-1.0, 0.0), (0.0, 1.0)]
        );
        let five = NeighborhoodSpec::default();
        assert_eq!(five.points(), 5);
        assert_eq!(five.ternary_levels(), 243);
        assert_eq!(five.offsets()[0], (1.0, 0.0));
        assert!(
            five.offsets()[1].1 < 0.0,
            "second point lies above the center"
        );
    }

    #[test]
    fn invalid_neighborhoods() {
        assert!(NeighborhoodSpec::new(0, 1.0).is_err());
        assert!(NeighborhoodSpec::new(5, 0.5).is_err());
        assert!(NeighborhoodSpec::new(21, 1.0).is_err());
    }

    #[test]
    fn bilinear_midpoint_and_clamp() {
        let plane = [0.0, 10.0, 20.0, 30.0];
        assert_eq!(sample_bilinear(&plane, 2, 2, 0.5, 0.5), 15.0);
        assert_eq!(sample_bilinear(&plane, 2, 2, -3.0, 7.0), 20.0);
    }

    #[test]
    fn constant_plane_codes() {
        let spec = NeighborhoodSpec::default();
        let plane = vec![77.0; 25];
        let map = ltp_map(&plane, 5, 5, &spec);
        assert!(map.codes().iter().all(|&c| c == 121));
        let lbp = lbp_map(&plane, 5, 5, &spec);
        assert!(lbp.codes().iter().all(|&c| c == 31));
    }
}
