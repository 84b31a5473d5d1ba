//! Benchmark metrics for one map: MAE, the precision/recall sweep and the
//! best-threshold F-measure.
//!
//! ```bash
//! cargo run --example evaluate_maps -- map.png mask.png
//! cargo run --example evaluate_maps            # synthetic map and mask
//! ```

use ltp_saliency::imageio::{load_ground_truth, load_saliency};
use ltp_saliency::metrics::{best_fbeta, f_beta, mae, PrCurve, BETA_SQ};
use ltp_saliency::{GroundTruth, SaliencyMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (map, gt) = if args.len() == 2 {
        (load_saliency(&args[0])?, load_ground_truth(&args[1])?)
    } else {
        let (w, h) = (80, 60);
        let gt = GroundTruth::from_fn(w, h, |x, y| (20..60).contains(&x) && (15..45).contains(&y));
        // blurred-looking estimate: distance falloff around the object center
        let values = (0..w * h)
            .map(|i| {
                let (x, y) = ((i % w) as f64, (i / w) as f64);
                let d = ((x - 40.0) / 30.0).powi(2) + ((y - 30.0) / 22.0).powi(2);
                (1.0 - d).clamp(0.0, 1.0)
            })
            .collect();
        (SaliencyMap::from_values(w, h, values)?, gt)
    };

    println!("MAE {:.4}", mae(&map, &gt)?);
    let curve = PrCurve::compute(&map, &gt)?;
    for p in curve.points().iter().step_by(32) {
        println!(
            "tau {:3}: precision {:.3} recall {:.3} F {:.3}",
            p.threshold,
            p.precision,
            p.recall,
            f_beta(p.precision, p.recall, BETA_SQ)
        );
    }
    let (f, tau) = best_fbeta(&map, &gt)?;
    println!("best F_beta {f:.4} at tau {tau}");
    Ok(())
}
