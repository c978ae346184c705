//! Rectangles and multi-index iteration for dimensions 1..=3.

use crate::error::{Error, Result};

/// Axis-aligned rectangle `[lo_1, hi_1] x ... x [lo_d, hi_d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rect {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Rect {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Parameter("rectangle needs matching lo/hi".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a < b) || !a.is_finite() || !b.is_finite()) {
            return Err(Error::Parameter(format!(
                "degenerate rectangle: lo={lo:?} hi={hi:?}"
            )));
        }
        Ok(Rect { lo, hi })
    }

    /// Unit cube `[0,1]^d`.
    pub fn unit(d: usize) -> Self {
        Rect {
            lo: vec![0.0; d],
            hi: vec![1.0; d],
        }
    }

    /// Cube `[-r, 1+r]^d`, the standard simulation support box.
    pub fn padded_unit(d: usize, r: f64) -> Self {
        Rect {
            lo: vec![-r; d],
            hi: vec![1.0 + r; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    pub fn side(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&xi, (&lo, &hi))| xi >= lo && xi <= hi)
    }

    pub fn center(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| 0.5 * (a + b)).collect()
    }
}

/// Euclidean norm.
#[inline]
pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Iterate all multi-indices `0 <= i_k < shape_k` in row-major order
/// (last axis fastest), visiting `(flat, index)`.
pub fn for_each_index(shape: &[usize], mut f: impl FnMut(usize, &[usize])) {
    let d = shape.len();
    let total: usize = shape.iter().product();
    let mut idx = vec![0usize; d];
    for flat in 0..total {
        f(flat, &idx);
        for axis in (0..d).rev() {
            idx[axis] += 1;
            if idx[axis] < shape[axis] {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Row-major strides for `shape` (last axis has stride 1).
pub fn strides(shape: &[usize]) -> Vec<usize> {
    let d = shape.len();
    let mut s = vec![1usize; d];
    for axis in (0..d.saturating_sub(1)).rev() {
        s[axis] = s[axis + 1] * shape[axis + 1];
    }
    s
}

/// All corners `eps` of the unit hypercube `{0,1}^d` with the alternating
/// sign `(-1)^(d + sum eps)`, the signature of rectangular increments.
pub fn signed_corners(d: usize) -> Vec<(Vec<usize>, f64)> {
    let mut out = Vec::with_capacity(1 << d);
    for mask in 0..(1usize << d) {
        let eps: Vec<usize> = (0..d).map(|a| (mask >> a) & 1).collect();
        let ones: usize = eps.iter().sum();
        let sign = if (d + ones) % 2 == 0 { 1.0 } else { -1.0 };
        out.push((eps, sign));
    }
    out
}
