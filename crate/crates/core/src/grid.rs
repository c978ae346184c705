//! Field samples on regular grids and their rectangular increments.

use crate::error::{Error, Result};
use crate::geom::strides;

/// Metadata carried by a simulated grid for reproducibility.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridMeta {
    pub kernel: String,
    pub levy: String,
    pub method: String,
    pub seed: u64,
}

/// Samples X(i/n) on {0..n}^d, row-major with the last axis fastest.
#[derive(Debug, Clone)]
pub struct FieldGrid {
    pub d: usize,
    pub n: usize,
    pub values: Vec<f64>,
    pub meta: GridMeta,
}

/// Rectangular increments on {0..n-1}^d.
#[derive(Debug, Clone)]
pub struct IncrementGrid {
    pub d: usize,
    pub n: usize,
    pub values: Vec<f64>,
}

impl FieldGrid {
    pub fn new(d: usize, n: usize, values: Vec<f64>, meta: GridMeta) -> Result<Self> {
        let expect = (n + 1).pow(d as u32);
        if values.len() != expect {
            return Err(Error::Size(format!(
                "field grid needs (n+1)^d = {expect} values, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("field grid contains non-finite values".into()));
        }
        Ok(FieldGrid { d, n, values, meta })
    }

    pub fn shape(&self) -> Vec<usize> {
        vec![self.n + 1; self.d]
    }

    pub fn at(&self, idx: &[usize]) -> f64 {
        let st = strides(&self.shape());
        let flat: usize = idx.iter().zip(&st).map(|(i, s)| i * s).sum();
        self.values[flat]
    }
}

impl IncrementGrid {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// One-axis differencing pass with the given step: shrinks axis `axis` from
/// size m to m - step, out[i] = in[i + step e_axis] - in[i].
fn axis_difference(values: &[f64], shape: &[usize], axis: usize, step: usize) -> (Vec<f64>, Vec<usize>) {
    let mut out_shape = shape.to_vec();
    out_shape[axis] = shape[axis] - step;
    let in_strides = strides(shape);
    let out_total: usize = out_shape.iter().product();
    let mut out = vec![0.0f64; out_total];
    let d = shape.len();
    let mut idx = vec![0usize; d];
    for slot in out.iter_mut() {
        let base: usize = idx.iter().zip(&in_strides).map(|(i, s)| i * s).sum();
        *slot = values[base + step * in_strides[axis]] - values[base];
        for a in (0..d).rev() {
            idx[a] += 1;
            if idx[a] < out_shape[a] {
                break;
            }
            idx[a] = 0;
        }
    }
    (out, out_shape)
}

/// Rectangular increments of the field: d sequential one-axis differencing
/// passes, equivalent to the signed-corner sum at each site.
pub fn rect_increments(field: &FieldGrid) -> IncrementGrid {
    let mut values = field.values.clone();
    let mut shape = field.shape();
    for axis in 0..field.d {
        let (v, s) = axis_difference(&values, &shape, axis, 1);
        values = v;
        shape = s;
    }
    IncrementGrid {
        d: field.d,
        n: field.n,
        values,
    }
}

/// Step-2 rectangular increments on the same grid (change of frequency):
/// increments over boxes of side 2/n anchored at i/n, i in {0..n-2}^d.
pub fn rect_increments_coarse(field: &FieldGrid) -> Result<IncrementGrid> {
    if field.n < 2 {
        return Err(Error::Parameter("coarse increments need n >= 2".into()));
    }
    let mut values = field.values.clone();
    let mut shape = field.shape();
    for axis in 0..field.d {
        let (v, s) = axis_difference(&values, &shape, axis, 2);
        values = v;
        shape = s;
    }
    Ok(IncrementGrid {
        d: field.d,
        n: field.n,
        values,
    })
}

/// Coarse increments over the disjoint tiling: anchors at even indices
/// only, floor(n/2)^d entries. The alternative index convention to the
/// overlapping {0..n-2}^d one; the harness reports both at small n so
/// the boundary-truncation bias is visible.
pub fn coarsen_increments_disjoint(inc: &IncrementGrid) -> Result<IncrementGrid> {
    if inc.n < 2 {
        return Err(Error::Parameter("coarse increments need n >= 2".into()));
    }
    let d = inc.d;
    let shape = vec![inc.n; d];
    let st = strides(&shape);
    let half = inc.n / 2;
    let out_shape = vec![half; d];
    let out_total: usize = out_shape.iter().product();
    let mut out = vec![0.0f64; out_total];
    let mut idx = vec![0usize; d];
    for slot in out.iter_mut() {
        let base: usize = idx.iter().zip(&st).map(|(i, s)| 2 * i * s).sum();
        let mut sum = 0.0;
        for mask in 0..(1usize << d) {
            let mut off = 0usize;
            for a in 0..d {
                if (mask >> a) & 1 == 1 {
                    off += st[a];
                }
            }
            sum += inc.values[base + off];
        }
        *slot = sum;
        for a in (0..d).rev() {
            idx[a] += 1;
            if idx[a] < out_shape[a] {
                break;
            }
            idx[a] = 0;
        }
    }
    Ok(IncrementGrid {
        d,
        n: inc.n,
        values: out,
    })
}

/// Coarse increments derived from fine ones: the increment over a side-2
/// box is the sum of the 2^d fine increments tiling it.
pub fn coarsen_increments(inc: &IncrementGrid) -> Result<IncrementGrid> {
    if inc.n < 2 {
        return Err(Error::Parameter("coarse increments need n >= 2".into()));
    }
    let d = inc.d;
    let shape = vec![inc.n; d];
    let st = strides(&shape);
    let out_shape: Vec<usize> = vec![inc.n - 1; d];
    let out_total: usize = out_shape.iter().product();
    let mut out = vec![0.0f64; out_total];
    let mut idx = vec![0usize; d];
    for slot in out.iter_mut() {
        let base: usize = idx.iter().zip(&st).map(|(i, s)| i * s).sum();
        let mut sum = 0.0;
        for mask in 0..(1usize << d) {
            let mut off = 0usize;
            for a in 0..d {
                if (mask >> a) & 1 == 1 {
                    off += st[a];
                }
            }
            sum += inc.values[base + off];
        }
        *slot = sum;
        for a in (0..d).rev() {
            idx[a] += 1;
            if idx[a] < out_shape[a] {
                break;
            }
            idx[a] = 0;
        }
    }
    Ok(IncrementGrid {
        d,
        n: inc.n,
        values: out,
    })
}
