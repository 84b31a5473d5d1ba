//! FastMap embedding of a set of objects into `k` real coordinates.
//!
//! Each axis is spanned by two far-apart pivot objects `a` and `b`. Objects
//! are projected onto the pivot line by the cosine law
//!
//! ```text
//! x_i = (d²(a,i) + d²(a,b) − d²(b,i)) / (2 d(a,b))
//! ```
//!
//! and later axes work on the residual distance
//! `d'²(i,j) = d²(i,j) − (x_i − x_j)²`, clamped at zero. Pivots come from one
//! refinement of an arbitrary seed (object 0): `a` is the object furthest from
//! the seed, `b` the object furthest from `a`. Ties go to the lowest index.

use std::fmt;

/// Pairwise distances between `len()` objects.
pub trait Dissimilarity {
    fn len(&self) -> usize;

    fn distance(&self, i: usize, j: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Euclidean distance between rows of a row-major `n × dim` matrix.
#[derive(Debug, Clone, Copy)]
pub struct EuclideanRows<'a> {
    data: &'a [f64],
    dim: usize,
}

impl<'a> EuclideanRows<'a> {
    pub fn new(data: &'a [f64], dim: usize) -> Self {
        assert!(dim > 0, "rows need at least one dimension");
        assert_eq!(data.len() % dim, 0, "data length must be a multiple of dim");
        Self { data, dim }
    }

    pub fn row(&self, i: usize) -> &'a [f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }
}

impl Dissimilarity for EuclideanRows<'_> {
    fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl<F: Fn(usize, usize) -> f64> Dissimilarity for (usize, F) {
    fn len(&self) -> usize {
        self.0
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        (self.1)(i, j)
    }
}

/// All pairwise distances vanish, so no axis can be spanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegenerateSet;

impl fmt::Display for DegenerateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("all pairwise distances are zero")
    }
}

impl std::error::Error for DegenerateSet {}

fn furthest_from<D: Dissimilarity + ?Sized>(dist: &D, from: usize) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..dist.len() {
        let d = dist.distance(from, i);
        if d > best.1 {
            best = (i, d);
        }
    }
    best
}

/// Pivot pair `(a, b)` for the current distance.
pub fn choose_pivots<D: Dissimilarity + ?Sized>(dist: &D) -> Result<(usize, usize), DegenerateSet> {
    if dist.len() < 2 {
        return Err(DegenerateSet);
    }
    let (a, _) = furthest_from(dist, 0);
    let (b, d_ab) = furthest_from(dist, a);
    if d_ab > 0.0 {
        Ok((a, b))
    } else {
        Err(DegenerateSet)
    }
}

/// Coordinates of every object on the axis through pivots `a` and `b`.
///
/// Panics if `d(a, b)` is zero.
pub fn project_axis<D: Dissimilarity + ?Sized>(dist: &D, a: usize, b: usize) -> Vec<f64> {
    let d_ab = dist.distance(a, b);
    assert!(d_ab > 0.0, "pivots must be distinct");
    (0..dist.len())
        .map(|i| {
            if i == a {
                return 0.0;
            }
            if i == b {
                return d_ab;
            }
            let d_ai = dist.distance(a, i);
            let d_bi = dist.distance(b, i);
            // factored difference of squares loses less to cancellation
            (d_ai - d_bi) * (d_ai + d_bi) / (2.0 * d_ab) + d_ab / 2.0
        })
        .collect()
}

/// Distance left once the separation `x_i − x_j` along an axis is removed.
#[inline]
pub fn residual_distance(d_ij: f64, x_i: f64, x_j: f64) -> f64 {
    let dx = x_i - x_j;
    (d_ij * d_ij - dx * dx).max(0.0).sqrt()
}

/// Distance after removing the first `axes` already computed coordinates.
struct Residual<'a, D: ?Sized> {
    base: &'a D,
    coords: &'a [f64],
    k: usize,
    axes: usize,
}

impl<D: Dissimilarity + ?Sized> Dissimilarity for Residual<'_, D> {
    fn len(&self) -> usize {
        self.base.len()
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        let mut d = self.base.distance(i, j);
        for axis in 0..self.axes {
            d = residual_distance(
                d,
                self.coords[i * self.k + axis],
                self.coords[j * self.k + axis],
            );
        }
        d
    }
}

/// Objects to embed and the number of output dimensions.
pub struct EmbeddingProblem<'a, D: ?Sized> {
    pub objects: &'a D,
    pub target_k: usize,
}

impl<'a, D: Dissimilarity + ?Sized> EmbeddingProblem<'a, D> {
    pub fn new(objects: &'a D, target_k: usize) -> Self {
        Self { objects, target_k }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    k: usize,
    coords: Vec<f64>,
    pivots: Vec<Option<(usize, usize)>>,
}

impl Embedding {
    pub fn dims(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.k).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.k..(i + 1) * self.k]
    }

    /// Coordinates of every object on one axis.
    pub fn axis(&self, axis: usize) -> Vec<f64> {
        self.coords
            .iter()
            .skip(axis)
            .step_by(self.k)
            .copied()
            .collect()
    }

    /// Pivot pair per axis; `None` for axes that collapsed to zero.
    pub fn pivots(&self) -> &[Option<(usize, usize)>] {
        &self.pivots
    }
}

/// Runs FastMap for `problem.target_k` axes. Once the residual distances all
/// vanish, the remaining axes are zero.
pub fn embed<D: Dissimilarity + ?Sized>(problem: &EmbeddingProblem<'_, D>) -> Embedding {
    let n = problem.objects.len();
    let k = problem.target_k.max(1);
    let mut coords = vec![0.0; n * k];
    let mut pivots = vec![None; k];

    for axis in 0..k {
        let residual = Residual {
            base: problem.objects,
            coords: &coords,
            k,
            axes: axis,
        };
        let Ok((a, b)) = choose_pivots(&residual) else {
            break;
        };
        let x = project_axis(&residual, a, b);
        for (i, xi) in x.into_iter().enumerate() {
            coords[i * k + axis] = xi;
        }
        pivots[axis] = Some((a, b));
    }

    Embedding { k, coords, pivots }
}

/// One-dimensional FastMap of the rows of an `n × dim` matrix.
pub fn embed_rows_1d(data: &[f64], dim: usize) -> Vec<f64> {
    let rows = EuclideanRows::new(data, dim);
    embed(&EmbeddingProblem::new(&rows, 1)).axis(0)
}
