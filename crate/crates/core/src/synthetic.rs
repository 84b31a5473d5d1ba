//! Reproducible synthetic scenes with known ground truth.
//!
//! Used by the examples and tests when no benchmark data is at hand: a
//! textured background with a differently colored, differently textured
//! object near the middle of the frame.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::imageio::{GroundTruth, RasterU8};

#[derive(Debug, Clone)]
pub struct Scene {
    pub image: RasterU8,
    pub ground_truth: GroundTruth,
}

/// Left half black, right half white.
pub fn two_tone(width: usize, height: usize) -> RasterU8 {
    RasterU8::from_fn_rgb(width, height, |x, _| {
        if x < width / 2 {
            [0, 0, 0]
        } else {
            [255, 255, 255]
        }
    })
    .expect("caller passes sides of at least 3")
}

fn clamp_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Background with fine noise, central ellipse with a striped pattern in a
/// contrasting color. Deterministic in `seed`.
pub fn textured_scene(width: usize, height: usize, seed: u64) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bg: [f64; 3] = std::array::from_fn(|_| rng.random_range(40.0..200.0));
    let fg: [f64; 3] = std::array::from_fn(|i| {
        let shift = rng.random_range(70.0..120.0);
        if bg[i] > 127.0 {
            bg[i] - shift
        } else {
            bg[i] + shift
        }
    });
    let (w, h) = (width as f64, height as f64);
    let cx = w * rng.random_range(0.4..0.6);
    let cy = h * rng.random_range(0.4..0.6);
    let rx = w * rng.random_range(0.15..0.3);
    let ry = h * rng.random_range(0.15..0.3);
    let period = rng.random_range(3.0..7.0);
    let angle: f64 = rng.random_range(0.0..std::f64::consts::PI);
    let (ca, sa) = (angle.cos(), angle.sin());
    let bg_noise = rng.random_range(4.0..12.0);

    let noise: Vec<f64> = (0..width * height)
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    let inside = |x: usize, y: usize| {
        let dx = (x as f64 - cx) / rx;
        let dy = (y as f64 - cy) / ry;
        dx * dx + dy * dy <= 1.0
    };

    let image = RasterU8::from_fn_rgb(width, height, |x, y| {
        let n = noise[y * width + x];
        if inside(x, y) {
            let phase = (x as f64 * ca + y as f64 * sa) / period * std::f64::consts::TAU;
            let stripe = 25.0 * phase.sin();
            fg.map(|c| clamp_u8(c + stripe + 4.0 * n))
        } else {
            bg.map(|c| clamp_u8(c + bg_noise * n))
        }
    })
    .expect("caller passes sides of at least 3");
    let ground_truth = GroundTruth::from_fn(width, height, inside);
    Scene {
        image,
        ground_truth,
    }
}

/// Uniform random pixels, useful for stress tests.
pub fn noise_image(width: usize, height: usize, seed: u64) -> RasterU8 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RasterU8::from_fn_rgb(width, height, |_, _| rng.random())
        .expect("caller passes sides of at least 3")
}

/// Random axis-aligned color blocks with mild noise.
pub fn block_image(width: usize, height: usize, seed: u64) -> RasterU8 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks: Vec<(usize, usize, usize, usize, [u8; 3])> = (0..rng.random_range(3..12))
        .map(|_| {
            let x0 = rng.random_range(0..width);
            let y0 = rng.random_range(0..height);
            let x1 = rng.random_range(x0..=width);
            let y1 = rng.random_range(y0..=height);
            (x0, y0, x1, y1, rng.random())
        })
        .collect();
    let base: [u8; 3] = rng.random();
    let noise: Vec<i16> = (0..width * height)
        .map(|_| rng.random_range(-6..=6))
        .collect();
    RasterU8::from_fn_rgb(width, height, |x, y| {
        let mut c = base;
        for &(x0, y0, x1, y1, color) in &blocks {
            if (x0..x1).contains(&x) && (y0..y1).contains(&y) {
                c = color;
            }
        }
        let n = noise[y * width + x];
        c.map(|v| (i16::from(v) + n).clamp(0, 255) as u8)
    })
    .expect("caller passes sides of at least 3")
}
