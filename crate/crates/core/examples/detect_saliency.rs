//! Full detection on one image.
//!
//! ```bash
//! cargo run --release --example detect_saliency -- photo.jpg out/
//! cargo run --release --example detect_saliency            # synthetic scene
//! ```
//!
//! Writes the fused map, the four per-space maps and a superpixel overlay.

use std::path::PathBuf;
use std::time::Instant;

use ltp_saliency::imageio::save_saliency;
use ltp_saliency::metrics::{best_fbeta, mae};
use ltp_saliency::synthetic::textured_scene;
use ltp_saliency::{detect, load_image, SaliencyConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let input = args.next().map(PathBuf::from);
    let out_dir = PathBuf::from(args.next().unwrap_or_else(|| "saliency_out".into()));
    std::fs::create_dir_all(&out_dir)?;

    let (img, gt) = match &input {
        Some(path) => (load_image(path)?, None),
        None => {
            let scene = textured_scene(300, 225, 7);
            (scene.image, Some(scene.ground_truth))
        }
    };

    let start = Instant::now();
    let detection = detect(&img, &SaliencyConfig::default())?;
    println!(
        "{}x{} image, {} superpixels, {:.2?}",
        img.width(),
        img.height(),
        detection.superpixels.count(),
        start.elapsed()
    );

    save_saliency(&detection.saliency, out_dir.join("saliency.png"))?;
    for (space, map) in &detection.space_maps {
        save_saliency(map, out_dir.join(format!("saliency_{space}.png")))?;
    }
    detection
        .superpixels
        .boundary_overlay(&img, [255, 0, 0])
        .save(out_dir.join("superpixels.png"))?;
    img.to_rgb_image().save(out_dir.join("input.png"))?;

    if let Some(gt) = gt {
        let (f, tau) = best_fbeta(&detection.saliency, &gt)?;
        println!(
            "fused: MAE {:.3}, best F {:.3} at {tau}",
            mae(&detection.saliency, &gt)?,
            f
        );
        for (space, map) in &detection.space_maps {
            let (f, _) = best_fbeta(map, &gt)?;
            println!("{space:>5}: MAE {:.3}, best F {:.3}", mae(map, &gt)?, f);
        }
    }
    println!("maps written to {}", out_dir.display());
    Ok(())
}
