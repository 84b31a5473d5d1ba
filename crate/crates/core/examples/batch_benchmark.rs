//! Batch detection and scoring over folders, as the `ltp-saliency run` and
//! `ltp-saliency eval` subcommands do.
//!
//! ```bash
//! cargo run --release --example batch_benchmark -- images/ masks/ out/
//! cargo run --release --example batch_benchmark   # generates a synthetic set
//! ```

use std::path::PathBuf;

use ltp_saliency::batch::{eval_only, run, RunConfig};
use ltp_saliency::synthetic::textured_scene;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let args: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    let (images, masks, out) = if args.len() == 3 {
        (args[0].clone(), args[1].clone(), args[2].clone())
    } else {
        let root = std::env::temp_dir().join("ltp_saliency_benchmark");
        let (images, masks) = (root.join("images"), root.join("masks"));
        std::fs::create_dir_all(&images)?;
        std::fs::create_dir_all(&masks)?;
        for i in 0..8 {
            let scene = textured_scene(160, 120, i);
            scene
                .image
                .to_rgb_image()
                .save(images.join(format!("scene{i:02}.png")))?;
            let mask: Vec<u8> = scene.ground_truth.mask().iter().map(|&m| m * 255).collect();
            image::GrayImage::from_raw(160, 120, mask)
                .expect("mask size")
                .save(masks.join(format!("scene{i:02}.png")))?;
        }
        println!("synthetic set in {}", root.display());
        (images, masks, root.join("out"))
    };

    let mut cfg = RunConfig::new(&images, &out);
    cfg.gt_dir = Some(masks.clone());
    let summary = run(&cfg)?;
    let report = summary.report.as_ref().expect("ground truth given");
    println!(
        "run: {} maps, mean MAE {:.3}, mean best F {:.3}, {} skipped",
        summary.written,
        report.mean_mae,
        report.mean_best_f,
        summary.failures.len()
    );
    for e in &report.images {
        println!(
            "  {:10} MAE {:.3}  F {:.3} (tau {})",
            e.name, e.mae, e.best_f, e.best_threshold
        );
    }

    // Rescoring the written 8-bit maps gives the same numbers.
    let rescored = eval_only(&out, &masks, &out.join("rescored"), 1)?;
    let r = rescored.report.expect("report");
    println!(
        "eval: mean MAE {:.3}, mean best F {:.3}",
        r.mean_mae, r.mean_best_f
    );
    Ok(())
}
