//! LBP and LTP codes, from a single neighborhood up to the nine opposing-pair
//! texture maps of an image.
//!
//! ```bash
//! cargo run --example ltp_codes
//! ```

use ltp_saliency::colorspace::{convert, enumerate_pairs, ColorSpace};
use ltp_saliency::ltp::{adaptive_threshold, code_pair, lbp_code, ltp_code, NeighborhoodSpec};
use ltp_saliency::synthetic::textured_scene;

fn main() {
    let spec = NeighborhoodSpec::default();
    println!("P = {}, R = {}", spec.points(), spec.radius());
    for (p, (dx, dy)) in spec.offsets().iter().enumerate() {
        println!("  neighbor {p}: ({dx:+.3}, {dy:+.3})");
    }

    let center = 239.0;
    let neighbors = [200.0, 245.0, 251.0, 262.0, 180.0];
    let t = adaptive_threshold(center);
    println!("\ncenter {center}, neighbors {neighbors:?}");
    println!("LBP code: {}", lbp_code(center, &neighbors));
    println!("LTP code (t = {t:.1}): {}", ltp_code(center, &neighbors, t));

    let scene = textured_scene(96, 72, 3);
    let rgb = convert(&scene.image, ColorSpace::Rgb);
    println!("\nopposing-pair code maps on a 96x72 scene:");
    for pair in enumerate_pairs() {
        let codes = code_pair(&rgb, pair, &spec);
        let distinct = {
            let mut c = codes.codes().to_vec();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        let mean =
            codes.codes().iter().map(|&c| f64::from(c)).sum::<f64>() / codes.codes().len() as f64;
        println!(
            "  {}: {distinct:3} distinct codes, mean code {mean:6.1}",
            pair.name(ColorSpace::Rgb)
        );
    }
}
