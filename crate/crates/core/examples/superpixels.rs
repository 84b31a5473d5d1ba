//! SLICO superpixels with a boundary overlay.
//!
//! ```bash
//! cargo run --release --example superpixels -- photo.jpg 200 overlay.png
//! cargo run --release --example superpixels     # synthetic two-tone + scene
//! ```

use ltp_saliency::synthetic::{textured_scene, two_tone};
use ltp_saliency::{load_image, segment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Some(path) = args.first() {
        let k = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(100);
        let out = args
            .get(2)
            .cloned()
            .unwrap_or_else(|| "superpixels.png".into());
        let img = load_image(path)?;
        let lab = segment(&img, k)?;
        println!("requested {k}, got {} superpixels", lab.count());
        lab.boundary_overlay(&img, [255, 0, 0]).save(&out)?;
        println!("overlay written to {out}");
        return Ok(());
    }

    let step = two_tone(64, 64);
    let lab = segment(&step, 4)?;
    println!(
        "two-tone 64x64, k=4 -> {} superpixels, sizes {:?}",
        lab.count(),
        lab.superpixel_sizes()
    );

    let scene = textured_scene(200, 150, 11);
    for k in [50, 100, 200] {
        let lab = segment(&scene.image, k)?;
        let sizes = lab.superpixel_sizes();
        println!(
            "scene 200x150, k={k:3} -> K'={:3}, smallest {:4}, largest {:4}",
            lab.count(),
            sizes.iter().min().unwrap(),
            sizes.iter().max().unwrap()
        );
    }
    Ok(())
}
