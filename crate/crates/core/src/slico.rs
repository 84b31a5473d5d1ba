//! SLICO superpixels.
//!
//! Zero-parameter SLIC: seeds on a regular grid of interval `S = √(N/K)`,
//! moved to the lowest-gradient position of their 3×3 neighborhood, then ten
//! rounds of local k-means in CIELAB + xy. Each cluster normalizes color
//! distance by the largest color distance it saw in the previous round, so
//! the only user parameter is `K`:
//!
//! ```text
//! D² = (d_color / m_c)² + (d_xy / S)²
//! ```
//!
//! A final pass keeps the largest 4-connected component of every label and
//! merges the remaining fragments into the largest adjacent label.

use std::collections::VecDeque;

use image::{Rgb, RgbImage};

use crate::colorspace::rgb_to_lab;
use crate::error::{Error, Result};
use crate::imageio::RasterU8;

pub const ITERATIONS: usize = 10;

/// Initial color normalizer `m_c` before any cluster has been observed.
pub const INITIAL_COLOR_SCALE: f64 = 10.0;

/// Lower bound on `m_c²` once clusters have members.
const MIN_COLOR_SCALE_SQ: f64 = 1.0;

const UNASSIGNED: u32 = u32::MAX;

/// Dense partition of an image into `count` labeled regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperpixelLabeling {
    width: usize,
    height: usize,
    count: usize,
    labels: Vec<u32>,
}

impl SuperpixelLabeling {
    /// Wraps a raw label map. Ids must be dense: every id in `0..=max` used.
    pub fn from_labels(width: usize, height: usize, labels: Vec<u32>) -> Result<Self> {
        if labels.len() != width * height || labels.is_empty() {
            return Err(Error::Invalid(format!(
                "label map needs {} entries, got {}",
                width * height,
                labels.len()
            )));
        }
        let count = *labels.iter().max().expect("non-empty") as usize + 1;
        let mut seen = vec![false; count];
        for &l in &labels {
            seen[l as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::EmptyLabel(missing));
        }
        Ok(Self {
            width,
            height,
            count,
            labels,
        })
    }

    /// Single region covering the whole image.
    pub fn single(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            count: 1,
            labels: vec![0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of superpixels `K'`.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, x: usize, y: usize) -> usize {
        self.labels[y * self.width + x] as usize
    }

    pub fn superpixel_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// Applies `mapping[old] = new` to every label. `mapping` must be a permutation.
    pub fn relabeled(&self, mapping: &[u32]) -> Result<Self> {
        if mapping.len() != self.count {
            return Err(Error::Invalid(
                "mapping length must equal label count".into(),
            ));
        }
        let labels = self.labels.iter().map(|&l| mapping[l as usize]).collect();
        let out = Self::from_labels(self.width, self.height, labels)?;
        if out.count != self.count {
            return Err(Error::Invalid("mapping is not a permutation".into()));
        }
        Ok(out)
    }

    /// Number of 4-connected components of each label.
    pub fn components_per_label(&self) -> Vec<usize> {
        let comps = components(self.width, self.height, &self.labels);
        let mut per_label = vec![0; self.count];
        for c in &comps.list {
            per_label[c.label as usize] += 1;
        }
        per_label
    }

    /// Copy of `img` with label boundaries painted in `color`.
    pub fn boundary_overlay(&self, img: &RasterU8, color: [u8; 3]) -> RgbImage {
        let mut out = img.to_rgb_image();
        for y in 0..self.height {
            for x in 0..self.width {
                let l = self.labels[y * self.width + x];
                let edge = (x + 1 < self.width && self.labels[y * self.width + x + 1] != l)
                    || (y + 1 < self.height && self.labels[(y + 1) * self.width + x] != l);
                if edge {
                    out.put_pixel(x as u32, y as u32, Rgb(color));
                }
            }
        }
        out
    }
}

/// Per-cluster k-means state.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterState {
    pub x: f64,
    pub y: f64,
    pub color: [f64; 3],
    /// Squared adaptive color normalizer `m_c²`.
    pub color_scale_sq: f64,
}

/// Seed grid dimensions `(columns, rows)` for `k` superpixels.
pub fn seed_grid(width: usize, height: usize, k: usize) -> (usize, usize) {
    let cols =
        ((k as f64 * width as f64 / height as f64).sqrt().round() as usize).clamp(1, k.min(width));
    let rows = ((k as f64 / cols as f64).round() as usize).clamp(1, height);
    (cols, rows)
}

/// Segments `img` into about `k` superpixels.
pub fn segment(img: &RasterU8, k: usize) -> Result<SuperpixelLabeling> {
    let (w, h) = (img.width(), img.height());
    let n = w * h;
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, pixels: n });
    }
    if k == 1 {
        return Ok(SuperpixelLabeling::single(w, h));
    }

    let lab: Vec<[f64; 3]> = (0..n).map(|i| rgb_to_lab(img.rgb(i % w, i / w))).collect();
    let step = (n as f64 / k as f64).sqrt();
    let inv_step_sq = 1.0 / (step * step);

    let mut clusters = seed_clusters(&lab, w, h, k);
    let (cols, rows) = seed_grid(w, h, k);
    let reach = step
        .max(w as f64 / cols as f64)
        .max(h as f64 / rows as f64)
        .ceil() as isize;

    let mut labels = vec![UNASSIGNED; n];
    let mut dist = vec![f64::INFINITY; n];
    let mut color_dist = vec![0.0; n];

    for _ in 0..ITERATIONS {
        labels.fill(UNASSIGNED);
        dist.fill(f64::INFINITY);

        // Lowest cluster id wins ties: later clusters must be strictly closer.
        for (id, c) in clusters.iter().enumerate() {
            let cx = c.x.round() as isize;
            let cy = c.y.round() as isize;
            let x0 = (cx - reach).max(0) as usize;
            let x1 = ((cx + reach) as usize).min(w - 1);
            let y0 = (cy - reach).max(0) as usize;
            let y1 = ((cy + reach) as usize).min(h - 1);
            for y in y0..=y1 {
                let dy = y as f64 - c.y;
                for x in x0..=x1 {
                    let i = y * w + x;
                    let dc = sq_dist(&lab[i], &c.color);
                    let dx = x as f64 - c.x;
                    let d = dc / c.color_scale_sq + (dx * dx + dy * dy) * inv_step_sq;
                    if d < dist[i] {
                        dist[i] = d;
                        labels[i] = id as u32;
                        color_dist[i] = dc;
                    }
                }
            }
        }

        let mut sums = vec![[0.0f64; 5]; clusters.len()];
        let mut counts = vec![0usize; clusters.len()];
        let mut max_dc = vec![0.0f64; clusters.len()];
        for (i, &l) in labels.iter().enumerate() {
            if l == UNASSIGNED {
                continue;
            }
            let l = l as usize;
            let s = &mut sums[l];
            s[0] += lab[i][0];
            s[1] += lab[i][1];
            s[2] += lab[i][2];
            s[3] += (i % w) as f64;
            s[4] += (i / w) as f64;
            counts[l] += 1;
            max_dc[l] = max_dc[l].max(color_dist[i]);
        }
        for (id, c) in clusters.iter_mut().enumerate() {
            if counts[id] == 0 {
                continue;
            }
            let m = counts[id] as f64;
            let s = sums[id];
            c.color = [s[0] / m, s[1] / m, s[2] / m];
            c.x = s[3] / m;
            c.y = s[4] / m;
            c.color_scale_sq = max_dc[id].max(MIN_COLOR_SCALE_SQ);
        }
    }

    let labels = enforce_connectivity(w, h, &labels);
    SuperpixelLabeling::from_labels(w, h, labels)
}

fn sq_dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let d0 = a[0] - b[0];
    let d1 = a[1] - b[1];
    let d2 = a[2] - b[2];
    d0 * d0 + d1 * d1 + d2 * d2
}

fn seed_clusters(lab: &[[f64; 3]], w: usize, h: usize, k: usize) -> Vec<ClusterState> {
    let (cols, rows) = seed_grid(w, h, k);
    let cell_w = w as f64 / cols as f64;
    let cell_h = h as f64 / rows as f64;
    let perturb = cell_w >= 3.0 && cell_h >= 3.0;

    let at = |x: isize, y: isize| {
        lab[y.clamp(0, h as isize - 1) as usize * w + x.clamp(0, w as isize - 1) as usize]
    };
    let gradient = |x: isize, y: isize| {
        sq_dist(&at(x + 1, y), &at(x - 1, y)) + sq_dist(&at(x, y + 1), &at(x, y - 1))
    };

    let mut clusters = Vec::with_capacity(cols * rows);
    for j in 0..rows {
        for i in 0..cols {
            let mut sx = ((i as f64 + 0.5) * cell_w).floor() as isize;
            let mut sy = ((j as f64 + 0.5) * cell_h).floor() as isize;
            if perturb {
                let (mut bx, mut by) = (sx, sy);
                let mut best = gradient(sx, sy);
                for dy in -1..=1 {
                    for dx in -1..=1 {
                        let (x, y) = (sx + dx, sy + dy);
                        if x < 0 || y < 0 || x >= w as isize || y >= h as isize {
                            continue;
                        }
                        let g = gradient(x, y);
                        if g < best {
                            best = g;
                            bx = x;
                            by = y;
                        }
                    }
                }
                sx = bx;
                sy = by;
            }
            clusters.push(ClusterState {
                x: sx as f64,
                y: sy as f64,
                color: lab[sy as usize * w + sx as usize],
                color_scale_sq: INITIAL_COLOR_SCALE * INITIAL_COLOR_SCALE,
            });
        }
    }
    clusters
}

struct Component {
    label: u32,
    pixels: Vec<usize>,
}

struct Components {
    list: Vec<Component>,
    /// Component index of every pixel.
    owner: Vec<usize>,
}

fn components(w: usize, h: usize, labels: &[u32]) -> Components {
    let n = w * h;
    let mut owner = vec![usize::MAX; n];
    let mut list = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if owner[start] != usize::MAX {
            continue;
        }
        let id = list.len();
        let label = labels[start];
        let mut pixels = Vec::new();
        owner[start] = id;
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            pixels.push(p);
            for q in neighbors4(p, w, h) {
                if owner[q] == usize::MAX && labels[q] == label {
                    owner[q] = id;
                    queue.push_back(q);
                }
            }
        }
        list.push(Component { label, pixels });
    }
    Components { list, owner }
}

fn neighbors4(p: usize, w: usize, h: usize) -> impl Iterator<Item = usize> {
    let (x, y) = (p % w, p / w);
    [
        (x > 0).then(|| p - 1),
        (x + 1 < w).then(|| p + 1),
        (y > 0).then(|| p - w),
        (y + 1 < h).then(|| p + w),
    ]
    .into_iter()
    .flatten()
}

/// Keeps the largest component of each label, merges every other fragment
/// into its largest adjacent region, and renumbers labels densely in raster
/// order of first appearance.
fn enforce_connectivity(w: usize, h: usize, labels: &[u32]) -> Vec<u32> {
    let comps = components(w, h, labels);
    let max_label = labels.iter().filter(|&&l| l != UNASSIGNED).max().copied();
    let Some(max_label) = max_label else {
        return vec![0; w * h];
    };

    let mut keeper: Vec<Option<usize>> = vec![None; max_label as usize + 1];
    for (ci, c) in comps.list.iter().enumerate() {
        if c.label == UNASSIGNED {
            continue;
        }
        let slot = &mut keeper[c.label as usize];
        match *slot {
            Some(k) if comps.list[k].pixels.len() >= c.pixels.len() => {}
            _ => *slot = Some(ci),
        }
    }

    // Final label per component; fragments start unresolved.
    let mut resolved: Vec<Option<u32>> = vec![None; comps.list.len()];
    let mut region_size = vec![0usize; max_label as usize + 1];
    for (l, k) in keeper.iter().enumerate() {
        if let Some(k) = *k {
            resolved[k] = Some(l as u32);
            region_size[l] = comps.list[k].pixels.len();
        }
    }

    let mut pending: Vec<usize> = (0..comps.list.len())
        .filter(|&c| resolved[c].is_none())
        .collect();
    while !pending.is_empty() {
        let mut deferred = Vec::new();
        for &ci in &pending {
            let mut target: Option<u32> = None;
            for &p in &comps.list[ci].pixels {
                for q in neighbors4(p, w, h) {
                    let Some(l) = resolved[comps.owner[q]] else {
                        continue;
                    };
                    let better = match target {
                        None => true,
                        Some(t) => {
                            let (sl, st) = (region_size[l as usize], region_size[t as usize]);
                            sl > st || (sl == st && l < t)
                        }
                    };
                    if better {
                        target = Some(l);
                    }
                }
            }
            match target {
                Some(t) => {
                    resolved[ci] = Some(t);
                    region_size[t as usize] += comps.list[ci].pixels.len();
                }
                None => deferred.push(ci),
            }
        }
        if deferred.len() == pending.len() {
            // Only reachable when no component could be kept at all.
            for ci in deferred {
                resolved[ci] = Some(0);
            }
            break;
        }
        pending = deferred;
    }

    let mut dense = vec![u32::MAX; max_label as usize + 1];
    let mut next = 0u32;
    let mut out = vec![0u32; w * h];
    for (p, o) in out.iter_mut().enumerate() {
        let l = resolved[comps.owner[p]].expect("all components resolved") as usize;
        if dense[l] == u32::MAX {
            dense[l] = next;
            next += 1;
        }
        *o = dense[l];
    }
    out
}
