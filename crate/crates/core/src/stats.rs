//! Power variation, the change-of-frequency ratio statistic, the Hurst
//! estimator, and the scaling-exponent statistic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{coarsen_increments, rect_increments, FieldGrid, IncrementGrid};

/// Power variation value with the inputs that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct PVResult {
    pub p: f64,
    pub v: f64,
    pub n: usize,
    /// Exponent used when a normalized value was requested.
    pub rate_applied: Option<f64>,
}

/// Estimator output: the frequency ratio and the implied Hurst value.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateResult {
    pub r_n: f64,
    pub h_hat: f64,
    pub p: f64,
    pub d: usize,
}

/// Neumaier compensated summation; the p-th powers span many orders of
/// magnitude in heavy-tail regimes and naive accumulation loses digits.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sum of |x|^p over a slice with compensated accumulation.
pub fn abs_power_sum(values: &[f64], p: f64) -> f64 {
    let mut acc = CompensatedSum::default();
    for &v in values {
        acc.add(v.abs().powf(p));
    }
    acc.value()
}

/// V_n(p): sum of p-th absolute powers of the rectangular increments.
pub fn power_variation(inc: &IncrementGrid, p: f64) -> Result<PVResult> {
    if !(p > 0.0) {
        return Err(Error::Parameter(
            "power variation needs p > 0 (negative powers are out of scope)".into(),
        ));
    }
    Ok(PVResult {
        p,
        v: abs_power_sum(&inc.values, p),
        n: inc.n,
        rate_applied: None,
    })
}

/// Ratio statistic from an increment grid: coarse (step-2) power sum over
/// the fine one.
pub fn ratio_statistic_from_increments(inc: &IncrementGrid, p: f64) -> Result<f64> {
    if inc.n < 2 {
        return Err(Error::Parameter("ratio statistic needs n >= 2".into()));
    }
    let fine = power_variation(inc, p)?;
    if fine.v == 0.0 {
        return Err(Error::DegenerateSample(
            "denominator V_n(p) vanishes; all increments are zero".into(),
        ));
    }
    let coarse = coarsen_increments(inc)?;
    Ok(abs_power_sum(&coarse.values, p) / fine.v)
}

/// Change-of-frequency ratio on a field sample.
pub fn ratio_statistic(field: &FieldGrid, p: f64) -> Result<f64> {
    ratio_statistic_from_increments(&rect_increments(field), p)
}

/// The Hurst-type estimator log R_n / (d p log 2); raw, with no clamping
/// into (0,1).
pub fn estimate_h(field: &FieldGrid, p: f64) -> Result<EstimateResult> {
    estimate_h_from_increments(&rect_increments(field), field.d, p)
}

pub fn estimate_h_from_increments(
    inc: &IncrementGrid,
    d: usize,
    p: f64,
) -> Result<EstimateResult> {
    let r_n = ratio_statistic_from_increments(inc, p)?;
    Ok(EstimateResult {
        r_n,
        h_hat: r_n.ln() / (d as f64 * p * std::f64::consts::LN_2),
        p,
        d,
    })
}

/// Per-ladder-point record of the scaling statistic.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ScalingPoint {
    pub n: usize,
    pub v: f64,
    /// S_n(p) = log V_n(p) / log n.
    pub s_n: f64,
}

/// Scaling-exponent statistic over a geometric ladder of grid sizes:
/// the per-n values S_n(p) and the least-squares slope of log V_n against
/// log n (steadier than S_n itself, whose limit-constant bias decays only
/// like 1/log n).
pub fn scaling_exponent(ladder: &[(usize, f64)], p: f64) -> Result<(f64, Vec<ScalingPoint>)> {
    if ladder.len() < 3 {
        return Err(Error::Parameter("scaling exponent needs >= 3 ladder points".into()));
    }
    if !(p > 0.0) {
        return Err(Error::Parameter("p must be positive".into()));
    }
    let mut pts = Vec::with_capacity(ladder.len());
    for &(n, v) in ladder {
        if !(v > 0.0) {
            return Err(Error::DegenerateSample(format!("V_n = {v} at n = {n}")));
        }
        pts.push(ScalingPoint {
            n,
            v,
            s_n: v.ln() / (n as f64).ln(),
        });
    }
    let xs: Vec<f64> = pts.iter().map(|q| (q.n as f64).ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|q| q.v.ln()).collect();
    let m = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / m;
    let ybar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    Ok((sxy / sxx, pts))
}
