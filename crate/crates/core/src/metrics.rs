//! Saliency benchmark metrics.
//!
//! Maps are quantized to 8 bits (`round(255 s)`, half up) and binarized at
//! every threshold `τ ∈ 0..=255` as `q ≥ τ`. Conventions at the edges:
//! precision is 0 when nothing is predicted, recall is 1 when the ground
//! truth has no positives, and `F_β` is 0 when its denominator vanishes.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::imageio::{quantize, GroundTruth};
use crate::pipeline::SaliencyMap;

pub const BETA_SQ: f64 = 0.3;

pub const THRESHOLDS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrPoint {
    pub threshold: u8,
    pub precision: f64,
    pub recall: f64,
}

fn check_dims(map: &SaliencyMap, gt: &GroundTruth) -> Result<()> {
    gt.check_dims(map.width(), map.height())
}

/// Mean absolute difference between the map and the binary mask.
pub fn mae(map: &SaliencyMap, gt: &GroundTruth) -> Result<f64> {
    check_dims(map, gt)?;
    let total: f64 = map
        .values()
        .iter()
        .zip(gt.mask())
        .map(|(&s, &g)| (s - f64::from(g)).abs())
        .sum();
    Ok(total / map.values().len() as f64)
}

fn precision_recall(tp: usize, predicted: usize, positives: usize) -> (f64, f64) {
    let precision = if predicted == 0 {
        0.0
    } else {
        tp as f64 / predicted as f64
    };
    let recall = if positives == 0 {
        1.0
    } else {
        tp as f64 / positives as f64
    };
    (precision, recall)
}

/// Precision and recall of the map binarized at `threshold`.
pub fn pr_at(map: &SaliencyMap, gt: &GroundTruth, threshold: u8) -> Result<(f64, f64)> {
    check_dims(map, gt)?;
    let (mut tp, mut predicted) = (0usize, 0usize);
    for (&s, &g) in map.values().iter().zip(gt.mask()) {
        if quantize(s) >= threshold {
            predicted += 1;
            tp += usize::from(g);
        }
    }
    Ok(precision_recall(tp, predicted, gt.positives()))
}

pub fn f_beta(precision: f64, recall: f64, beta_sq: f64) -> f64 {
    let denom = beta_sq * precision + recall;
    if denom == 0.0 {
        0.0
    } else {
        (1.0 + beta_sq) * precision * recall / denom
    }
}

/// Precision/recall at all 256 thresholds, built from one pass over the pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct PrCurve {
    points: Vec<PrPoint>,
}

impl PrCurve {
    pub fn compute(map: &SaliencyMap, gt: &GroundTruth) -> Result<Self> {
        check_dims(map, gt)?;
        let mut fg = [0usize; THRESHOLDS];
        let mut bg = [0usize; THRESHOLDS];
        for (&s, &g) in map.values().iter().zip(gt.mask()) {
            let q = quantize(s) as usize;
            if g == 1 {
                fg[q] += 1;
            } else {
                bg[q] += 1;
            }
        }
        let positives: usize = fg.iter().sum();
        let mut points = vec![
            PrPoint {
                threshold: 0,
                precision: 0.0,
                recall: 0.0
            };
            THRESHOLDS
        ];
        let (mut tp, mut fp) = (0usize, 0usize);
        for t in (0..THRESHOLDS).rev() {
            tp += fg[t];
            fp += bg[t];
            let (precision, recall) = precision_recall(tp, tp + fp, positives);
            points[t] = PrPoint {
                threshold: t as u8,
                precision,
                recall,
            };
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[PrPoint] {
        &self.points
    }

    pub fn f_beta_curve(&self, beta_sq: f64) -> Vec<f64> {
        self.points
            .iter()
            .map(|p| f_beta(p.precision, p.recall, beta_sq))
            .collect()
    }

    /// Best `F_β` and the lowest threshold reaching it.
    pub fn best(&self, beta_sq: f64) -> (f64, u8) {
        let mut best = (f64::NEG_INFINITY, 0u8);
        for (t, f) in self.f_beta_curve(beta_sq).into_iter().enumerate() {
            if f > best.0 {
                best = (f, t as u8);
            }
        }
        best
    }
}

/// Maximum `F_β` (β² = 0.3) over all thresholds; ties go to the lowest `τ`.
pub fn best_fbeta(map: &SaliencyMap, gt: &GroundTruth) -> Result<(f64, u8)> {
    Ok(PrCurve::compute(map, gt)?.best(BETA_SQ))
}

/// Scores of one map.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageEval {
    pub name: String,
    pub mae: f64,
    pub best_f: f64,
    pub best_threshold: u8,
    pub curve: PrCurve,
}

pub fn evaluate(name: impl Into<String>, map: &SaliencyMap, gt: &GroundTruth) -> Result<ImageEval> {
    let curve = PrCurve::compute(map, gt)?;
    let (best_f, best_threshold) = curve.best(BETA_SQ);
    Ok(ImageEval {
        name: name.into(),
        mae: mae(map, gt)?,
        best_f,
        best_threshold,
        curve,
    })
}

/// Dataset-level summary.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub images: Vec<ImageEval>,
    pub mean_mae: f64,
    pub mean_best_f: f64,
    /// Per-threshold precision and recall averaged over images.
    pub mean_curve: Vec<PrPoint>,
    /// `F_β` computed from the averaged precision and recall.
    pub f_curve: Vec<f64>,
}

pub fn aggregate(images: Vec<ImageEval>) -> Result<EvalReport> {
    if images.is_empty() {
        return Err(Error::EmptySet("no evaluated images".into()));
    }
    let n = images.len() as f64;
    let mean_mae = images.iter().map(|e| e.mae).sum::<f64>() / n;
    let mean_best_f = images.iter().map(|e| e.best_f).sum::<f64>() / n;
    let mean_curve: Vec<PrPoint> = (0..THRESHOLDS)
        .map(|t| {
            let (p, r) = images.iter().fold((0.0, 0.0), |(p, r), e| {
                let pt = e.curve.points[t];
                (p + pt.precision, r + pt.recall)
            });
            PrPoint {
                threshold: t as u8,
                precision: p / n,
                recall: r / n,
            }
        })
        .collect();
    let f_curve = mean_curve
        .iter()
        .map(|p| f_beta(p.precision, p.recall, BETA_SQ))
        .collect();
    Ok(EvalReport {
        images,
        mean_mae,
        mean_best_f,
        mean_curve,
        f_curve,
    })
}

impl EvalReport {
    /// `image,mae,best_f,best_tau`
    pub fn write_per_image_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["image", "mae", "best_f", "best_tau"])?;
        for e in &self.images {
            w.write_record([
                e.name.clone(),
                format!("{:.6}", e.mae),
                format!("{:.6}", e.best_f),
                e.best_threshold.to_string(),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// `tau,precision,recall,f_beta`
    pub fn write_curve_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["tau", "precision", "recall", "f_beta"])?;
        for (p, f) in self.mean_curve.iter().zip(&self.f_curve) {
            w.write_record([
                p.threshold.to_string(),
                format!("{:.6}", p.precision),
                format!("{:.6}", p.recall),
                format!("{f:.6}"),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// `images,mean_mae,mean_best_f,max_curve_f`
    pub fn write_summary_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["images", "mean_mae", "mean_best_f", "max_curve_f"])?;
        let max_curve_f = self.f_curve.iter().copied().fold(0.0, f64::max);
        w.write_record([
            self.images.len().to_string(),
            format!("{:.6}", self.mean_mae),
            format!("{:.6}", self.mean_best_f),
            format!("{max_curve_f:.6}"),
        ])?;
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// Writes `per_image.csv`, `pr_curve.csv` and `summary.csv` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        let create = |name: &str| {
            let path = dir.join(name);
            std::fs::File::create(&path)
                .map(std::io::BufWriter::new)
                .map_err(|e| Error::io(path, e))
        };
        self.write_per_image_csv(create(PER_IMAGE_CSV)?)?;
        self.write_curve_csv(create(CURVE_CSV)?)?;
        self.write_summary_csv(create(SUMMARY_CSV)?)?;
        Ok(())
    }
}

pub const PER_IMAGE_CSV: &str = "per_image.csv";
pub const CURVE_CSV: &str = "pr_curve.csv";
pub const SUMMARY_CSV: &str = "summary.csv";
