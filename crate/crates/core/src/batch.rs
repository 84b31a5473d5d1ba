//! Directory-level batch runner: detection over an image folder and
//! evaluation against a ground-truth folder paired by file basename.
//!
//! Per-image failures are logged and collected; they never abort the batch.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;

use crate::colorspace::convert;
use crate::error::{Error, Result};
use crate::features::build_feature_field;
use crate::imageio::{
    is_supported_image, load_ground_truth, load_image, load_saliency, output_file_name, save_png,
    save_saliency,
};
use crate::metrics::{aggregate, evaluate, EvalReport, ImageEval};
use crate::pipeline::{detect, SaliencyConfig, SaliencyMap};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_PARTIAL: u8 = 2;

const OVERLAY_COLOR: [u8; 3] = [255, 0, 0];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input_dir: PathBuf,
    pub gt_dir: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub detector: SaliencyConfig,
    /// Also write `<name>_<space>.png` per color space.
    pub emit_space_maps: bool,
    /// Also write `<name>_superpixels.png` boundary overlays.
    pub emit_superpixels: bool,
    /// Also write `<name>_features_<space>.csv`.
    pub emit_features: bool,
    pub workers: usize,
}

impl RunConfig {
    pub fn new(input_dir: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            input_dir: input_dir.into(),
            gt_dir: None,
            output_dir: output_dir.into(),
            detector: SaliencyConfig::default(),
            emit_space_maps: false,
            emit_superpixels: false,
            emit_features: false,
            workers: default_workers(),
        }
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// A per-item problem that was skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub item: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    /// Saliency maps written (zero for evaluation-only runs).
    pub written: usize,
    pub failures: Vec<Failure>,
    pub report: Option<EvalReport>,
}

impl RunSummary {
    pub fn exit_code(&self) -> u8 {
        if self.failures.is_empty() {
            EXIT_OK
        } else {
            EXIT_PARTIAL
        }
    }
}

/// Supported image files in `dir`, sorted by file name.
pub fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && is_supported_image(&path) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Files keyed by basename; later duplicates are returned separately.
fn index_by_stem(files: Vec<PathBuf>) -> (BTreeMap<String, PathBuf>, Vec<PathBuf>) {
    let mut index = BTreeMap::new();
    let mut duplicates = Vec::new();
    for f in files {
        match index.entry(stem(&f)) {
            std::collections::btree_map::Entry::Occupied(_) => duplicates.push(f),
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(f);
            }
        }
    }
    (index, duplicates)
}

fn duplicate_failures(duplicates: Vec<PathBuf>) -> Vec<Failure> {
    duplicates
        .into_iter()
        .map(|p| failure(&p.display().to_string(), "duplicate basename"))
        .collect()
}

fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start worker pool: {e}")))
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

struct ItemOutcome {
    written: bool,
    eval: Option<ImageEval>,
    failure: Option<Failure>,
}

fn detect_and_save(name: &str, path: &Path, cfg: &RunConfig) -> Result<SaliencyMap> {
    let img = load_image(path)?;
    let detection = detect(&img, &cfg.detector)?;
    save_saliency(
        &detection.saliency,
        cfg.output_dir.join(output_file_name(path)),
    )?;

    if cfg.emit_space_maps {
        for (space, map) in &detection.space_maps {
            save_saliency(map, cfg.output_dir.join(format!("{name}_{space}.png")))?;
        }
    }
    if cfg.emit_superpixels {
        let overlay = detection.superpixels.boundary_overlay(&img, OVERLAY_COLOR);
        save_png(
            &image::DynamicImage::ImageRgb8(overlay),
            &cfg.output_dir.join(format!("{name}_superpixels.png")),
        )?;
    }
    if cfg.emit_features {
        for space in cfg.detector.fusion_spaces() {
            let field = build_feature_field(
                &convert(&img, space),
                &detection.superpixels,
                &cfg.detector.neighborhood,
                cfg.detector.bins,
            )?;
            field.save_csv(&cfg.output_dir.join(format!("{name}_features_{space}.csv")))?;
        }
    }
    Ok(detection.saliency)
}

fn score(name: &str, map: &SaliencyMap, gt_path: &Path) -> Result<ImageEval> {
    let gt = load_ground_truth(gt_path)?;
    gt.check_dims(map.width(), map.height())?;
    evaluate(name, map, &gt)
}

fn failure(name: &str, reason: impl ToString) -> Failure {
    let f = Failure {
        item: name.to_string(),
        reason: reason.to_string(),
    };
    warn!("{}: {}", f.item, f.reason);
    f
}

fn process_item(
    name: &str,
    path: &Path,
    gts: Option<&BTreeMap<String, PathBuf>>,
    cfg: &RunConfig,
) -> ItemOutcome {
    let map = match detect_and_save(name, path, cfg) {
        Ok(r) => r,
        Err(e) => {
            return ItemOutcome {
                written: false,
                eval: None,
                failure: Some(failure(name, e)),
            }
        }
    };
    let (eval, fail) = match gts.map(|g| g.get(name)) {
        None => (None, None),
        Some(None) => (None, Some(failure(name, "missing ground truth"))),
        Some(Some(gt_path)) => match score(name, &map, gt_path) {
            Ok(e) => (Some(e), None),
            Err(e) => (None, Some(failure(name, e))),
        },
    };
    ItemOutcome {
        written: true,
        eval,
        failure: fail,
    }
}

/// Detects saliency for every image in `cfg.input_dir`; evaluates against
/// `cfg.gt_dir` when given.
pub fn run(cfg: &RunConfig) -> Result<RunSummary> {
    let (images, duplicates) = index_by_stem(list_images(&cfg.input_dir)?);
    if images.is_empty() {
        return Err(Error::EmptySet(format!(
            "no supported images in {}",
            cfg.input_dir.display()
        )));
    }
    let gts = match &cfg.gt_dir {
        Some(dir) => Some(index_by_stem(list_images(dir)?).0),
        None => None,
    };
    create_dir(&cfg.output_dir)?;

    let items: Vec<(&String, &PathBuf)> = images.iter().collect();
    let pool = thread_pool(cfg.workers)?;
    let outcomes: Vec<ItemOutcome> = pool.install(|| {
        items
            .par_iter()
            .map(|&(name, path)| process_item(name, path, gts.as_ref(), cfg))
            .collect()
    });

    let mut failures = duplicate_failures(duplicates);
    let mut evals = Vec::new();
    let mut written = 0;
    for o in outcomes {
        written += usize::from(o.written);
        failures.extend(o.failure);
        evals.extend(o.eval);
    }
    info!(
        "wrote {written} saliency maps to {}",
        cfg.output_dir.display()
    );

    let report = if cfg.gt_dir.is_some() {
        let report = aggregate(evals)?;
        report.save(&cfg.output_dir)?;
        Some(report)
    } else {
        None
    };
    Ok(RunSummary {
        written,
        failures,
        report,
    })
}

/// Scores existing 8-bit maps in `maps_dir` against `gt_dir`, writing the
/// report CSVs into `report_dir`.
pub fn eval_only(
    maps_dir: &Path,
    gt_dir: &Path,
    report_dir: &Path,
    workers: usize,
) -> Result<RunSummary> {
    let (maps, duplicates) = index_by_stem(list_images(maps_dir)?);
    let (gts, _) = index_by_stem(list_images(gt_dir)?);
    let pairs: Vec<(&String, &PathBuf, &PathBuf)> = maps
        .iter()
        .filter_map(|(name, m)| gts.get(name).map(|g| (name, m, g)))
        .collect();
    if pairs.is_empty() {
        return Err(Error::EmptySet(format!(
            "no map in {} shares a basename with a mask in {}",
            maps_dir.display(),
            gt_dir.display()
        )));
    }
    let mut failures = duplicate_failures(duplicates);
    for name in maps.keys().filter(|n| !gts.contains_key(*n)) {
        failures.push(failure(name, "missing ground truth"));
    }

    let pool = thread_pool(workers)?;
    let results: Vec<(String, Result<ImageEval>)> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(name, m, g)| {
                let r = load_saliency(m).and_then(|map| score(name, &map, g));
                (name.clone(), r)
            })
            .collect()
    });

    let mut evals = Vec::new();
    for (name, r) in results {
        match r {
            Ok(e) => evals.push(e),
            Err(e) => failures.push(failure(&name, e)),
        }
    }
    create_dir(report_dir)?;
    let report = aggregate(evals)?;
    report.save(report_dir)?;
    Ok(RunSummary {
        written: 0,
        failures,
        report: Some(report),
    })
}
