//! The four working color spaces and their rescaled planes.
//!
//! ```bash
//! cargo run --example color_spaces
//! ```

use ltp_saliency::colorspace::{
    convert_pixel, enumerate_pairs, rgb_to_hsl, rgb_to_luv, ColorSpace,
};

fn main() {
    let samples = [[255, 0, 0], [0, 128, 255], [30, 30, 30], [250, 240, 200]];
    for rgb in samples {
        println!("sRGB {rgb:?}");
        let [h, s, l] = rgb_to_hsl(rgb);
        let [lum, u, v] = rgb_to_luv(rgb);
        println!("  HSL  H={h:.1}° S={s:.3} L={l:.3}");
        println!("  LUV  L*={lum:.2} u*={u:.2} v*={v:.2}");
        for space in ColorSpace::ALL {
            let p = convert_pixel(rgb, space);
            println!(
                "  {space} planes: [{:7.2}, {:7.2}, {:7.2}]",
                p[0], p[1], p[2]
            );
        }
    }

    for space in ColorSpace::ALL {
        let names: Vec<String> = enumerate_pairs().iter().map(|p| p.name(space)).collect();
        println!("{space} pairs: {}", names.join(" "));
    }
}
