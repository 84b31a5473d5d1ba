//! End-to-end saliency estimation.
//!
//! Per color space: opposing-pair LTP features per superpixel, a 1-D FastMap
//! of those descriptors, min-max normalization and an orientation fix that
//! flips the map when it anti-correlates with a centered rectangle. The
//! per-space maps are then fused by embedding, again in one dimension, the
//! vector of per-superpixel means across spaces.

use rayon::prelude::*;

use crate::colorspace::{convert, ColorSpace};
use crate::error::{Error, Result};
use crate::fastmap::embed_rows_1d;
use crate::features::{build_feature_field, DEFAULT_BINS};
use crate::imageio::RasterU8;
use crate::ltp::NeighborhoodSpec;
use crate::slico::{segment, SuperpixelLabeling};

pub const DEFAULT_SUPERPIXELS: usize = 100;

/// Real-valued map over the image, values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SaliencyMap {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl SaliencyMap {
    pub fn from_values(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != width * height {
            return Err(Error::Invalid(format!(
                "map needs {} values, got {}",
                width * height,
                values.len()
            )));
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::Invalid("saliency values must lie in [0, 1]".into()));
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    /// `1 − s` at every pixel.
    pub fn complement(&self) -> SaliencyMap {
        SaliencyMap {
            width: self.width,
            height: self.height,
            values: self.values.iter().map(|s| 1.0 - s).collect(),
        }
    }

    /// Mean value inside each superpixel.
    pub fn superpixel_means(&self, lab: &SuperpixelLabeling) -> Result<Vec<f64>> {
        check_same_dims((lab.width(), lab.height()), (self.width, self.height))?;
        let mut sums = vec![0.0; lab.count()];
        for (&l, &v) in lab.labels().iter().zip(&self.values) {
            sums[l as usize] += v;
        }
        Ok(sums
            .into_iter()
            .zip(lab.superpixel_sizes())
            .map(|(s, n)| s / n as f64)
            .collect())
    }
}

fn check_same_dims(expected: (usize, usize), actual: (usize, usize)) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// Centered rectangle of size `⌊W/2⌋ × ⌊H/2⌋`, 1 inside and 0 outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterTemplate {
    width: usize,
    height: usize,
    left: usize,
    top: usize,
    rect_width: usize,
    rect_height: usize,
}

impl CenterTemplate {
    pub fn new(width: usize, height: usize) -> Self {
        let rect_width = width / 2;
        let rect_height = height / 2;
        Self {
            width,
            height,
            left: (width - rect_width) / 2,
            top: (height - rect_height) / 2,
            rect_width,
            rect_height,
        }
    }

    /// `(left, top, width, height)` of the rectangle.
    pub fn rect(&self) -> (usize, usize, usize, usize) {
        (self.left, self.top, self.rect_width, self.rect_height)
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        (self.left..self.left + self.rect_width).contains(&x)
            && (self.top..self.top + self.rect_height).contains(&y)
    }

    pub fn values(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.width * self.height);
        for y in 0..self.height {
            for x in 0..self.width {
                v.push(if self.contains(x, y) { 1.0 } else { 0.0 });
            }
        }
        v
    }
}

/// Pearson correlation; `None` when either signal is constant.
pub fn pearson(a: &[f64], b: &[f64]) -> Option<f64> {
    assert_eq!(a.len(), b.len(), "signals must have equal length");
    let constant = |s: &[f64]| s.iter().all(|&v| v == s[0]);
    if a.is_empty() || constant(a) || constant(b) {
        return None;
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut cov, mut va, mut vb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        cov += dx * dy;
        va += dx * dx;
        vb += dy * dy;
    }
    Some(cov / (va.sqrt() * vb.sqrt()))
}

/// Min-max rescale onto `[0, 1]`; constant input maps to all zeros.
pub fn normalize_01(width: usize, height: usize, values: &[f64]) -> Result<SaliencyMap> {
    if values.len() != width * height {
        return Err(Error::Invalid(format!(
            "map needs {} values, got {}",
            width * height,
            values.len()
        )));
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = max - min;
    // NaN-safe: a NaN range also takes the constant branch
    let values = if range.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        vec![0.0; values.len()]
    } else {
        values
            .iter()
            .map(|v| ((v - min) / range).clamp(0.0, 1.0))
            .collect()
    };
    Ok(SaliencyMap {
        width,
        height,
        values,
    })
}

/// Correlation between a map and its [`CenterTemplate`].
pub fn center_correlation(map: &SaliencyMap) -> Option<f64> {
    pearson(
        map.values(),
        &CenterTemplate::new(map.width, map.height).values(),
    )
}

/// Complements the map when it anti-correlates with the center template.
///
/// If the complement does not correlate positively either, the correlation
/// is rounding noise around zero and the map is kept; this makes the
/// operation idempotent.
pub fn orient(map: SaliencyMap) -> SaliencyMap {
    match center_correlation(&map) {
        Some(r) if r < 0.0 => {
            let flipped = map.complement();
            match center_correlation(&flipped) {
                Some(r) if r >= 0.0 => flipped,
                _ => map,
            }
        }
        _ => map,
    }
}

fn broadcast(lab: &SuperpixelLabeling, per_label: &[f64]) -> Vec<f64> {
    lab.labels()
        .iter()
        .map(|&l| per_label[l as usize])
        .collect()
}

/// Embeds per-superpixel vectors in 1-D and paints the normalized, oriented result.
fn map_from_vectors(lab: &SuperpixelLabeling, vectors: &[f64], dim: usize) -> Result<SaliencyMap> {
    let coords = if lab.count() < 2 {
        vec![0.0; lab.count()]
    } else {
        embed_rows_1d(vectors, dim)
    };
    let painted = broadcast(lab, &coords);
    Ok(orient(normalize_01(lab.width(), lab.height(), &painted)?))
}

/// Parameters of the detector.
#[derive(Debug, Clone, PartialEq)]
pub struct SaliencyConfig {
    pub superpixels: usize,
    pub spaces: Vec<ColorSpace>,
    pub neighborhood: NeighborhoodSpec,
    pub bins: usize,
}

impl Default for SaliencyConfig {
    /// 100 superpixels, RGB/HSL/LUV/CMY, `P = 5`, `R = 1`, 75 bins.
    fn default() -> Self {
        Self {
            superpixels: DEFAULT_SUPERPIXELS,
            spaces: ColorSpace::ALL.to_vec(),
            neighborhood: NeighborhoodSpec::default(),
            bins: DEFAULT_BINS,
        }
    }
}

impl SaliencyConfig {
    /// Spaces deduplicated and sorted into fusion order.
    pub fn fusion_spaces(&self) -> Vec<ColorSpace> {
        let mut s = self.spaces.clone();
        s.sort();
        s.dedup();
        s
    }
}

/// Probabilistic map of a single color space.
pub fn space_map(
    img: &RasterU8,
    space: ColorSpace,
    lab: &SuperpixelLabeling,
    cfg: &SaliencyConfig,
) -> Result<SaliencyMap> {
    check_same_dims((lab.width(), lab.height()), (img.width(), img.height()))?;
    let colors = convert(img, space);
    let field = build_feature_field(&colors, lab, &cfg.neighborhood, cfg.bins)?;
    map_from_vectors(lab, field.as_flat(), field.dim())
}

/// Fuses per-space maps given in fusion order.
pub fn fuse(maps: &[SaliencyMap], lab: &SuperpixelLabeling) -> Result<SaliencyMap> {
    if maps.is_empty() {
        return Err(Error::EmptySet("no maps to fuse".into()));
    }
    let means = maps
        .iter()
        .map(|m| m.superpixel_means(lab))
        .collect::<Result<Vec<_>>>()?;
    let dim = maps.len();
    let mut vectors = vec![0.0; lab.count() * dim];
    for (s, m) in means.iter().enumerate() {
        for (label, &v) in m.iter().enumerate() {
            vectors[label * dim + s] = v;
        }
    }
    map_from_vectors(lab, &vectors, dim)
}

/// Everything the detector produces for one image.
#[derive(Debug, Clone)]
pub struct Detection {
    pub saliency: SaliencyMap,
    pub space_maps: Vec<(ColorSpace, SaliencyMap)>,
    pub superpixels: SuperpixelLabeling,
}

/// Runs the full detector on one RGB image.
pub fn detect(img: &RasterU8, cfg: &SaliencyConfig) -> Result<Detection> {
    let spaces = cfg.fusion_spaces();
    if spaces.is_empty() {
        return Err(Error::EmptySet("no color spaces selected".into()));
    }
    let k = cfg.superpixels.min(img.pixel_count());
    let lab = segment(img, k)?;
    let maps = spaces
        .par_iter()
        .map(|&s| space_map(img, s, &lab, cfg))
        .collect::<Result<Vec<_>>>()?;
    let saliency = fuse(&maps, &lab)?;
    Ok(Detection {
        saliency,
        space_maps: spaces.into_iter().zip(maps).collect(),
        superpixels: lab,
    })
}
