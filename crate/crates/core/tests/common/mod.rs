#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::Path;

use ltp_saliency::synthetic::textured_scene;
use ltp_saliency::{ColorImage, RasterU8, SuperpixelLabeling};

/// Horizontal two-pixel stripes everywhere except a centered square of
/// one-pixel checkerboard in another color.
pub fn two_texture(size: usize, patch: std::ops::Range<usize>) -> RasterU8 {
    RasterU8::from_fn_rgb(size, size, |x, y| {
        if patch.contains(&x) && patch.contains(&y) {
            if (x + y) % 2 == 0 {
                [200, 60, 60]
            } else {
                [90, 20, 20]
            }
        } else if (y / 2) % 2 == 0 {
            [40, 140, 170]
        } else {
            [20, 90, 110]
        }
    })
    .unwrap()
}

/// Square blocks of side `block` labeled in raster order.
pub fn grid_labeling(width: usize, height: usize, block: usize) -> SuperpixelLabeling {
    let cols = width.div_ceil(block);
    let labels = (0..width * height)
        .map(|i| ((i / width / block) * cols + (i % width) / block) as u32)
        .collect();
    SuperpixelLabeling::from_labels(width, height, labels).unwrap()
}

pub fn write_scene_set(images: &Path, masks: &Path, count: u64, width: usize, height: usize) {
    std::fs::create_dir_all(images).unwrap();
    std::fs::create_dir_all(masks).unwrap();
    for i in 0..count {
        let scene = textured_scene(width, height, 1000 + i);
        scene
            .image
            .to_rgb_image()
            .save(images.join(format!("img{i:03}.png")))
            .unwrap();
        let mask: Vec<u8> = scene.ground_truth.mask().iter().map(|&m| m * 255).collect();
        image::GrayImage::from_raw(width as u32, height as u32, mask)
            .unwrap()
            .save(masks.join(format!("img{i:03}.png")))
            .unwrap();
    }
}

/// Bilinear value at a real position, written with explicit corner weights.
pub fn oracle_sample(plane: &[f64], w: usize, h: usize, x: f64, y: f64) -> f64 {
    let x = x.max(0.0).min((w - 1) as f64);
    let y = y.max(0.0).min((h - 1) as f64);
    let (x0, y0) = (x.floor(), y.floor());
    let (ax, ay) = (x - x0, y - y0);
    let mut acc = 0.0;
    for (cx, wx) in [(x0, 1.0 - ax), (x0 + 1.0, ax)] {
        for (cy, wy) in [(y0, 1.0 - ay), (y0 + 1.0, ay)] {
            let xi = (cx as usize).min(w - 1);
            let yi = (cy as usize).min(h - 1);
            acc += wx * wy * plane[yi * w + xi];
        }
    }
    acc
}

/// Basic ternary code written out digit by digit, P = 5, R = 1.
pub fn oracle_code(center: &[f64], neigh: &[f64], w: usize, h: usize, x: usize, y: usize) -> u32 {
    let gc = center[y * w + x];
    let t = gc / 10.0;
    let mut code = 0;
    let mut weight = 1;
    for p in 0..5 {
        let theta = std::f64::consts::TAU * p as f64 / 5.0;
        let g = oracle_sample(neigh, w, h, x as f64 + theta.cos(), y as f64 - theta.sin());
        let digit = if g - gc >= t {
            2
        } else if g - gc <= -t {
            0
        } else {
            1
        };
        code += digit * weight;
        weight *= 3;
    }
    code
}

/// Counts 4-connected regions of every label by breadth-first flood fill.
pub fn regions_per_label(lab: &SuperpixelLabeling) -> Vec<usize> {
    let (w, h) = (lab.width(), lab.height());
    let mut seen = vec![false; w * h];
    let mut regions = vec![0; lab.count()];
    for start in 0..w * h {
        if seen[start] {
            continue;
        }
        let l = lab.labels()[start];
        regions[l as usize] += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let (x, y) = (i % w, i / w);
            let mut next = Vec::new();
            if x > 0 {
                next.push(i - 1);
            }
            if x + 1 < w {
                next.push(i + 1);
            }
            if y > 0 {
                next.push(i - w);
            }
            if y + 1 < h {
                next.push(i + w);
            }
            for j in next {
                if !seen[j] && lab.labels()[j] == l {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    regions
}

/// Exhaustive threshold sweep written from the definitions.
pub fn oracle_best(map: &[f64], gt: &[bool]) -> (f64, u8) {
    let positives = gt.iter().filter(|&&g| g).count();
    let mut best = (-1.0, 0u8);
    for tau in 0..=255u32 {
        let predicted: Vec<bool> = map
            .iter()
            .map(|s| (255.0 * s + 0.5).floor() as u32 >= tau)
            .collect();
        let tp = predicted.iter().zip(gt).filter(|(p, g)| **p && **g).count();
        let np = predicted.iter().filter(|&&p| p).count();
        let p = if np == 0 { 0.0 } else { tp as f64 / np as f64 };
        let r = if positives == 0 {
            1.0
        } else {
            tp as f64 / positives as f64
        };
        let denom = 0.3 * p + r;
        let f = if denom == 0.0 {
            0.0
        } else {
            1.3 * p * r / denom
        };
        if f > best.0 {
            best = (f, tau as u8);
        }
    }
    best
}

/// Per-region histograms built pixel by pixel from directly evaluated codes.
pub fn oracle_field(
    img: &ColorImage,
    region: &[usize],
    regions: usize,
    bins: usize,
) -> Vec<Vec<f64>> {
    let (w, h) = (img.width(), img.height());
    let mut out = vec![Vec::new(); regions];
    for c in 0..3 {
        for n in 0..3 {
            let mut counts = vec![vec![0.0; bins]; regions];
            let mut sizes = vec![0.0; regions];
            for y in 0..h {
                for x in 0..w {
                    let code = oracle_code(img.plane(c), img.plane(n), w, h, x, y);
                    let r = region[y * w + x];
                    counts[r][code as usize * bins / 243] += 1.0;
                    sizes[r] += 1.0;
                }
            }
            for r in 0..regions {
                out[r].extend(counts[r].iter().map(|v| v / sizes[r]));
            }
        }
    }
    out
}
