//! Working color spaces and opposing channel pairs.
//!
//! Every converted plane is rescaled onto `[0, 255]` so that the adaptive
//! LTP threshold and cross-channel comparisons see commensurate magnitudes:
//!
//! | space | plane 0            | plane 1                 | plane 2                 |
//! |-------|--------------------|-------------------------|-------------------------|
//! | RGB   | R                  | G                       | B                       |
//! | HSL   | H / 360° · 255     | S · 255                 | L · 255                 |
//! | LUV   | L* / 100 · 255     | u* in [-134, 220]       | v* in [-140, 122]       |
//! | CMY   | 255 − R            | 255 − G                 | 255 − B                 |
//!
//! LUV uses the D65 reference white. Hue is treated as a plain linear plane.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::imageio::RasterU8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColorSpace {
    Rgb,
    Hsl,
    Luv,
    Cmy,
}

impl ColorSpace {
    /// Fusion order.
    pub const ALL: [ColorSpace; 4] = [
        ColorSpace::Rgb,
        ColorSpace::Hsl,
        ColorSpace::Luv,
        ColorSpace::Cmy,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ColorSpace::Rgb => "rgb",
            ColorSpace::Hsl => "hsl",
            ColorSpace::Luv => "luv",
            ColorSpace::Cmy => "cmy",
        }
    }

    /// One-letter channel names, e.g. `['R', 'G', 'B']`.
    pub fn channel_letters(self) -> [char; 3] {
        match self {
            ColorSpace::Rgb => ['R', 'G', 'B'],
            ColorSpace::Hsl => ['H', 'S', 'L'],
            ColorSpace::Luv => ['L', 'U', 'V'],
            ColorSpace::Cmy => ['C', 'M', 'Y'],
        }
    }

    /// Parses a comma separated list such as `rgb,luv`.
    pub fn parse_list(s: &str) -> Result<Vec<ColorSpace>> {
        let spaces = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        if spaces.is_empty() {
            return Err(Error::UnsupportedSpace(s.to_string()));
        }
        Ok(spaces)
    }
}

impl fmt::Display for ColorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ColorSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rgb" => Ok(ColorSpace::Rgb),
            "hsl" => Ok(ColorSpace::Hsl),
            "luv" => Ok(ColorSpace::Luv),
            "cmy" => Ok(ColorSpace::Cmy),
            other => Err(Error::UnsupportedSpace(other.to_string())),
        }
    }
}

/// Three real-valued planes in `[0, 255]`, tagged with their color space.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorImage {
    space: ColorSpace,
    width: usize,
    height: usize,
    planes: [Vec<f64>; 3],
}

impl ColorImage {
    pub fn from_planes(
        space: ColorSpace,
        width: usize,
        height: usize,
        planes: [Vec<f64>; 3],
    ) -> Result<Self> {
        let n = width * height;
        if planes.iter().any(|p| p.len() != n) {
            return Err(Error::Invalid(format!("every plane must hold {n} samples")));
        }
        if planes.iter().flatten().any(|v| !(0.0..=255.0).contains(v)) {
            return Err(Error::Invalid("plane samples must lie in [0, 255]".into()));
        }
        Ok(Self {
            space,
            width,
            height,
            planes,
        })
    }

    pub fn space(&self) -> ColorSpace {
        self.space
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn plane(&self, index: usize) -> &[f64] {
        &self.planes[index]
    }

    pub fn planes(&self) -> &[Vec<f64>; 3] {
        &self.planes
    }
}

/// An ordered (center channel, neighbor channel) combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChannelPair {
    pub center_plane: usize,
    pub neighbor_plane: usize,
}

impl ChannelPair {
    pub fn new(center_plane: usize, neighbor_plane: usize) -> Result<Self> {
        if center_plane > 2 || neighbor_plane > 2 {
            return Err(Error::Invalid(format!(
                "plane indices must be in 0..=2, got ({center_plane}, {neighbor_plane})"
            )));
        }
        Ok(Self {
            center_plane,
            neighbor_plane,
        })
    }

    /// Two-letter name in the given space, e.g. `RG`.
    pub fn name(&self, space: ColorSpace) -> String {
        let l = space.channel_letters();
        [l[self.center_plane], l[self.neighbor_plane]]
            .iter()
            .collect()
    }
}

/// The nine opposing pairs in row-major order: RR, RG, RB, GR, ..., BB.
pub fn enumerate_pairs() -> [ChannelPair; 9] {
    std::array::from_fn(|i| ChannelPair {
        center_plane: i / 3,
        neighbor_plane: i % 3,
    })
}

/// Converts an 8-bit sRGB raster into `space`, each plane rescaled to `[0, 255]`.
pub fn convert(img: &RasterU8, space: ColorSpace) -> ColorImage {
    let n = img.pixel_count();
    let mut planes: [Vec<f64>; 3] = std::array::from_fn(|_| Vec::with_capacity(n));
    for y in 0..img.height() {
        for x in 0..img.width() {
            let p = convert_pixel(img.rgb(x, y), space);
            for (plane, v) in planes.iter_mut().zip(p) {
                plane.push(v);
            }
        }
    }
    ColorImage {
        space,
        width: img.width(),
        height: img.height(),
        planes,
    }
}

/// Converts one sRGB pixel to rescaled plane values.
pub fn convert_pixel(rgb: [u8; 3], space: ColorSpace) -> [f64; 3] {
    match space {
        ColorSpace::Rgb => rgb.map(f64::from),
        ColorSpace::Cmy => rgb.map(|c| 255.0 - f64::from(c)),
        ColorSpace::Hsl => {
            let [h, s, l] = rgb_to_hsl(rgb);
            [h / 360.0 * 255.0, s * 255.0, l * 255.0]
        }
        ColorSpace::Luv => {
            let [l, u, v] = rgb_to_luv(rgb);
            [
                rescale(l, 0.0, 100.0),
                rescale(u, LUV_U_RANGE.0, LUV_U_RANGE.1),
                rescale(v, LUV_V_RANGE.0, LUV_V_RANGE.1),
            ]
        }
    }
}

pub const LUV_U_RANGE: (f64, f64) = (-134.0, 220.0);
pub const LUV_V_RANGE: (f64, f64) = (-140.0, 122.0);

fn rescale(v: f64, lo: f64, hi: f64) -> f64 {
    (v.clamp(lo, hi) - lo) / (hi - lo) * 255.0
}

/// Hue in degrees `[0, 360)`, saturation and lightness in `[0, 1]`.
pub fn rgb_to_hsl(rgb: [u8; 3]) -> [f64; 3] {
    let [r, g, b] = rgb.map(|c| f64::from(c) / 255.0);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let l = (max + min) / 2.0;
    let d = max - min;
    if d == 0.0 {
        return [0.0, 0.0, l];
    }
    let s = (d / (1.0 - (2.0 * l - 1.0).abs())).min(1.0);
    let h = if max == r {
        60.0 * ((g - b) / d).rem_euclid(6.0)
    } else if max == g {
        60.0 * ((b - r) / d + 2.0)
    } else {
        60.0 * ((r - g) / d + 4.0)
    };
    [h % 360.0, s, l]
}

fn srgb_to_linear(c: u8) -> f64 {
    let c = f64::from(c) / 255.0;
    if c <= 0.04045 {
        c / 12.92
    } else {
        ((c + 0.055) / 1.055).powf(2.4)
    }
}

/// D65 reference white, Y normalized to 1.
pub const D65: [f64; 3] = [0.950_47, 1.0, 1.088_83];

/// CIE XYZ (D65, Y in `[0, 1]`) of an sRGB pixel.
pub fn rgb_to_xyz(rgb: [u8; 3]) -> [f64; 3] {
    let [r, g, b] = rgb.map(srgb_to_linear);
    [
        0.412_456_4 * r + 0.357_576_1 * g + 0.180_437_5 * b,
        0.212_672_9 * r + 0.715_152_2 * g + 0.072_175_0 * b,
        0.019_333_9 * r + 0.119_192_0 * g + 0.950_304_1 * b,
    ]
}

const CIE_EPSILON: f64 = 216.0 / 24389.0;
const CIE_KAPPA: f64 = 24389.0 / 27.0;

fn lightness(y_rel: f64) -> f64 {
    if y_rel > CIE_EPSILON {
        116.0 * y_rel.cbrt() - 16.0
    } else {
        CIE_KAPPA * y_rel
    }
}

/// CIELUV `(L*, u*, v*)` with `L* ∈ [0, 100]`.
pub fn rgb_to_luv(rgb: [u8; 3]) -> [f64; 3] {
    let [x, y, z] = rgb_to_xyz(rgb);
    let l = lightness(y / D65[1]);
    let denom = x + 15.0 * y + 3.0 * z;
    if denom == 0.0 || l == 0.0 {
        return [0.0, 0.0, 0.0];
    }
    let [xn, yn, zn] = D65;
    let dn = xn + 15.0 * yn + 3.0 * zn;
    let (un, vn) = (4.0 * xn / dn, 9.0 * yn / dn);
    let (up, vp) = (4.0 * x / denom, 9.0 * y / denom);
    [l, 13.0 * l * (up - un), 13.0 * l * (vp - vn)]
}

/// CIELAB `(L*, a*, b*)` under D65.
pub fn rgb_to_lab(rgb: [u8; 3]) -> [f64; 3] {
    let xyz = rgb_to_xyz(rgb);
    let f = |t: f64| {
        if t > CIE_EPSILON {
            t.cbrt()
        } else {
            (CIE_KAPPA * t + 16.0) / 116.0
        }
    };
    let [fx, fy, fz] = [0, 1, 2].map(|i| f(xyz[i] / D65[i]));
    [116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn cmy_is_complement() {
        assert_eq!(
            convert_pixel([255, 0, 0], ColorSpace::Cmy),
            [0.0, 255.0, 255.0]
        );
    }

    #[test]
    fn red_in_hsl() {
        // max=1, min=0 -> L=0.5, S=1/(1-|0|)=1, H=60*((0-0)/1 mod 6)=0
        assert_eq!(rgb_to_hsl([255, 0, 0]), [0.0, 1.0, 0.5]);
        let p = convert_pixel([255, 0, 0], ColorSpace::Hsl);
        assert_eq!(p, [0.0, 255.0, 127.5]);
    }

    #[test]
    fn hsl_reference_hues() {
        assert!(close(rgb_to_hsl([0, 255, 0])[0], 120.0));
        assert!(close(rgb_to_hsl([0, 0, 255])[0], 240.0));
        assert!(close(rgb_to_hsl([255, 0, 255])[0], 300.0));
        let [_, s, l] = rgb_to_hsl([128, 128, 128]);
        assert_eq!(s, 0.0);
        assert!(close(l, 128.0 / 255.0));
    }

    #[test]
    fn black_in_luv() {
        let p = convert_pixel([0, 0, 0], ColorSpace::Luv);
        assert_eq!(p[0], 0.0);
        assert!(close(p[1], 134.0 / 354.0 * 255.0));
        assert!(close(p[2], 140.0 / 262.0 * 255.0));
    }

    #[test]
    fn white_luv_is_neutral() {
        let [l, u, v] = rgb_to_luv([255, 255, 255]);
        assert!((l - 100.0).abs() < 1e-3);
        assert!(u.abs() < 1e-2 && v.abs() < 1e-2);
    }

    #[test]
    fn lab_of_white_and_black() {
        let [l, a, b] = rgb_to_lab([255, 255, 255]);
        assert!((l - 100.0).abs() < 1e-3 && a.abs() < 1e-2 && b.abs() < 1e-2);
        assert_eq!(rgb_to_lab([0, 0, 0]), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn pairs_in_row_major_order() {
        let pairs = enumerate_pairs();
        assert_eq!(pairs.len(), 9);
        assert_eq!(pairs[0], ChannelPair::new(0, 0).unwrap());
        assert_eq!(pairs[5], ChannelPair::new(1, 2).unwrap());
        let names: Vec<_> = pairs.iter().map(|p| p.name(ColorSpace::Rgb)).collect();
        assert_eq!(
            names,
            ["RR", "RG", "RB", "GR", "GG", "GB", "BR", "BG", "BB"]
        );
    }

    #[test]
    fn space_tags_parse() {
        assert_eq!(
            ColorSpace::parse_list("rgb,hsl,luv,cmy").unwrap(),
            ColorSpace::ALL.to_vec()
        );
        assert!(matches!(
            "lab".parse::<ColorSpace>(),
            Err(Error::UnsupportedSpace(_))
        ));
    }
}
