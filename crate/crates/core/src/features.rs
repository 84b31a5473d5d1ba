//! Per-superpixel color micro-texture descriptors.
//!
//! For each of the nine opposing pairs, the LTP codes of a superpixel are
//! requantized into `B` bins with `bin(c) = ⌊c·B / 3^P⌋` and normalized to
//! frequencies. The nine blocks are concatenated in pair order, so every
//! superpixel carries one `9·B` vector shared by all of its pixels.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::colorspace::{enumerate_pairs, ColorImage};
use crate::error::{Error, Result};
use crate::ltp::{code_pair, CodeMap, NeighborhoodSpec};
use crate::slico::SuperpixelLabeling;

pub const DEFAULT_BINS: usize = 75;

pub const PAIRS: usize = 9;

#[inline]
pub fn requantize(code: u32, bins: usize, levels: u32) -> usize {
    (u64::from(code) * bins as u64 / u64::from(levels)) as usize
}

fn check_bins(bins: usize, levels: u32) -> Result<()> {
    if bins == 0 || bins > levels as usize {
        return Err(Error::InvalidBins {
            bins,
            max: levels as usize,
        });
    }
    Ok(())
}

fn check_dims(codes: &CodeMap, lab: &SuperpixelLabeling) -> Result<()> {
    if (codes.width(), codes.height()) != (lab.width(), lab.height()) {
        return Err(Error::DimensionMismatch {
            expected: (lab.width(), lab.height()),
            actual: (codes.width(), codes.height()),
        });
    }
    Ok(())
}

/// Normalized requantized histogram of the codes inside superpixel `label`.
pub fn pair_histogram(
    codes: &CodeMap,
    lab: &SuperpixelLabeling,
    label: usize,
    bins: usize,
) -> Result<Vec<f64>> {
    check_dims(codes, lab)?;
    check_bins(bins, codes.levels())?;
    let mut hist = vec![0usize; bins];
    let mut total = 0usize;
    for (&c, &l) in codes.codes().iter().zip(lab.labels()) {
        if l as usize == label {
            hist[requantize(c, bins, codes.levels())] += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Err(Error::EmptyLabel(label));
    }
    Ok(hist.into_iter().map(|h| h as f64 / total as f64).collect())
}

/// Histograms of every superpixel for one code map, flattened `K' × bins`.
pub fn all_histograms(codes: &CodeMap, lab: &SuperpixelLabeling, bins: usize) -> Result<Vec<f64>> {
    check_dims(codes, lab)?;
    check_bins(bins, codes.levels())?;
    let mut counts = vec![0usize; lab.count() * bins];
    for (&c, &l) in codes.codes().iter().zip(lab.labels()) {
        counts[l as usize * bins + requantize(c, bins, codes.levels())] += 1;
    }
    let sizes = lab.superpixel_sizes();
    Ok(counts
        .chunks(bins)
        .zip(&sizes)
        .flat_map(|(row, &size)| row.iter().map(move |&h| h as f64 / size as f64))
        .collect())
}

/// One `9·B` descriptor per superpixel.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureField {
    count: usize,
    bins: usize,
    vectors: Vec<f64>,
}

impl FeatureField {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn dim(&self) -> usize {
        PAIRS * self.bins
    }

    pub fn vector(&self, label: usize) -> &[f64] {
        let d = self.dim();
        &self.vectors[label * d..(label + 1) * d]
    }

    /// Bin block of `pair` inside the vector of `label`.
    pub fn block(&self, label: usize, pair: usize) -> &[f64] {
        &self.vector(label)[pair * self.bins..(pair + 1) * self.bins]
    }

    /// Row-major `count × dim` storage.
    pub fn as_flat(&self) -> &[f64] {
        &self.vectors
    }

    /// Vector of the superpixel containing pixel `(x, y)`.
    pub fn pixel_vector(&self, lab: &SuperpixelLabeling, x: usize, y: usize) -> &[f64] {
        self.vector(lab.label(x, y))
    }

    /// One row per superpixel: `label,f0,...,f{dim-1}`.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(&mut out);
        let mut header = vec!["label".to_string()];
        header.extend((0..self.dim()).map(|i| format!("f{i}")));
        w.write_record(&header)?;
        for label in 0..self.count {
            let mut row = vec![label.to_string()];
            row.extend(self.vector(label).iter().map(|v| format!("{v:.6}")));
            w.write_record(&row)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

pub fn build_feature_field(
    img: &ColorImage,
    lab: &SuperpixelLabeling,
    spec: &NeighborhoodSpec,
    bins: usize,
) -> Result<FeatureField> {
    if (img.width(), img.height()) != (lab.width(), lab.height()) {
        return Err(Error::DimensionMismatch {
            expected: (lab.width(), lab.height()),
            actual: (img.width(), img.height()),
        });
    }
    check_bins(bins, spec.ternary_levels())?;
    let blocks = enumerate_pairs()
        .par_iter()
        .map(|&pair| all_histograms(&code_pair(img, pair, spec), lab, bins))
        .collect::<Result<Vec<_>>>()?;

    let dim = PAIRS * bins;
    let mut vectors = vec![0.0; lab.count() * dim];
    for (p, block) in blocks.iter().enumerate() {
        for (label, hist) in block.chunks(bins).enumerate() {
            let start = label * dim + p * bins;
            vectors[start..start + bins].copy_from_slice(hist);
        }
    }
    Ok(FeatureField {
        count: lab.count(),
        bins,
        vectors,
    })
}
