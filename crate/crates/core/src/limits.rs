//! Independent evaluation of every limit object of the first-order theory:
//! Poisson-integral limits of the jump regimes, ergodic limit constants,
//! and the derivative-field limit, each with explicit truncation
//! certificates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::Rect;
use crate::kernels::{classify, partial_d_g, Homogeneity, KernelSpec, Regime, Theorem};
use crate::lattice::{integral_of_h, lattice_sum_axis, lattice_sum_h};
use crate::levy::{
    sample_jump_configuration, sample_jump_configuration_floored, sas_abs_moment_exact,
    LevyMeasureSpec, PointConfiguration,
};
use crate::quad::{self, Singularities};
use crate::rng::RandomStream;

/// One draw of a Poisson-integral limit (or the exact value of an
/// almost-sure limit for a fixed configuration), with its truncation
/// certificates.
#[derive(Debug, Clone, Serialize)]
pub struct LimitSample {
    pub value: f64,
    /// Certified numerical error of the included terms.
    pub numeric_bound: f64,
    /// Bound on the bias from discarded small jumps / far locations.
    pub bias_bound: f64,
    pub regime: Theorem,
    pub jump_count: usize,
}

/// The deterministic ergodic limit constant and its factors.
#[derive(Debug, Clone, Serialize)]
pub struct LimitConstant {
    pub m_p: f64,
    /// E |L([0,1]^d)|^p.
    pub stable_moment: f64,
    /// One `\int |Delta_1 h_i|^beta` per fractional axis (a single entry
    /// for radial kernels).
    pub increment_integrals: Vec<f64>,
    /// One `\int |g_i'|^beta` per steep axis.
    pub derivative_integrals: Vec<f64>,
    pub numeric_bound: f64,
}

/// Monte Carlo absolute moment of the unit-scale stable law (the beta = 2
/// branch returns the closed-form normal moment). Returns (value, stderr).
pub fn stable_abs_moment(
    beta: f64,
    p: f64,
    n_draws: usize,
    rng: &mut RandomStream,
) -> Result<(f64, f64)> {
    if (beta - 2.0).abs() < 1e-12 {
        // L([0,1]^d) ~ N(0, 2) under the exp(-t^2) convention
        return Ok((gaussian_abs_moment(2.0f64.sqrt(), p), 0.0));
    }
    if !(p > 0.0 && p < beta) {
        return Err(Error::Parameter(format!(
            "absolute moment of order p={p} is infinite for beta={beta} \
             (finite only for 0 < q < theta)"
        )));
    }
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..n_draws {
        let x = crate::levy::sample_sas(beta, 1.0, rng)?.abs().powf(p);
        sum += x;
        sumsq += x * x;
    }
    let nf = n_draws as f64;
    let mean = sum / nf;
    let var = (sumsq / nf - mean * mean).max(0.0);
    Ok((mean, (var / nf).sqrt()))
}

/// E|N(0, sigma^2)|^p in closed form.
pub fn gaussian_abs_moment(sigma: f64, p: f64) -> f64 {
    use statrs::function::gamma::gamma;
    sigma.powf(p) * 2.0f64.powf(p / 2.0) * gamma((p + 1.0) / 2.0)
        / std::f64::consts::PI.sqrt()
}

/// E |L([0,1]^d)|^p for the measures admitted in the ergodic regime.
fn noise_abs_moment(spec: &LevyMeasureSpec, p: f64) -> Result<f64> {
    match spec {
        LevyMeasureSpec::Stable { beta } => sas_abs_moment_exact(*beta, p),
        LevyMeasureSpec::Gaussian { variance_rate } => {
            Ok(gaussian_abs_moment(variance_rate.sqrt(), p))
        }
        _ => Err(Error::UnsupportedRegime(
            "the ergodic limit needs stable or Gaussian noise".into(),
        )),
    }
}

/// `\int_R |Delta_1 h(s)|^beta ds` for h(s) = |s|^alpha, with certified
/// analytic tails from the two-sided envelope
/// |alpha|(v+1)^{alpha-1} <= |Delta_1 h(v)| <= |alpha| v^{alpha-1}.
pub fn increment_beta_integral(alpha: f64, beta: f64, tol: f64) -> Result<(f64, f64)> {
    let e = (alpha - 1.0) * beta;
    if e >= -1.0 {
        return Err(Error::Parameter(format!(
            "increment integral diverges: (alpha-1)*beta = {e} >= -1 \
             (needs alpha + 1/beta < 1)"
        )));
    }
    if !(alpha.abs() > 0.0) || alpha >= 1.0 {
        return Err(Error::Parameter("alpha must be nonzero and < 1".into()));
    }
    let c = alpha.abs().powf(beta);
    let tail_pair = |b: f64| -> (f64, f64) {
        // bracket of int_b^inf |Delta_1 h|^beta
        let hi = c * b.powf(e + 1.0) / (-(e + 1.0));
        let lo = c * (b + 1.0).powf(e + 1.0) / (-(e + 1.0));
        (0.5 * (hi + lo), 0.5 * (hi - lo))
    };
    let mut b = 8.0f64;
    loop {
        let (_, spread) = tail_pair(b);
        if 2.0 * spread < tol * 0.5 || b > 1e9 {
            break;
        }
        b *= 2.0;
    }
    let (tail_mid, tail_spread) = tail_pair(b);
    let f = |s: f64| ((s + 1.0).abs().powf(alpha) - s.abs().powf(alpha)).abs().powf(beta);
    let bulk = quad::integrate_1d_singular(f, -b - 1.0, b, tol * 0.5, &[-1.0, 0.0])?;
    Ok((
        bulk.value + 2.0 * tail_mid,
        bulk.error_bound + 2.0 * tail_spread,
    ))
}

/// `\int_R |g_i'(s)|^beta ds` for a tempered axis: adaptive bulk with the
/// singular origin declared, extended until the outermost shell is
/// negligible (the integrand decays exponentially).
fn derivative_beta_integral(
    kernel: &KernelSpec,
    axis: usize,
    beta: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let f = |s: f64| kernel.g11_axis_deriv(axis, s).abs().powf(beta);
    let mut b = 4.0f64;
    let mut inner = quad::integrate_1d_singular(&f, -b, b, tol * 0.4, &[0.0])?;
    loop {
        let shell_r = quad::integrate_1d(&f, b, 2.0 * b, tol * 0.1)?;
        let shell_l = quad::integrate_1d(&f, -2.0 * b, -b, tol * 0.1)?;
        let shell = shell_r.value + shell_l.value;
        if shell < tol * 0.25 {
            return Ok((
                inner.value + shell,
                inner.error_bound + shell + shell_r.error_bound + shell_l.error_bound,
            ));
        }
        inner.value += shell;
        inner.error_bound += shell_r.error_bound + shell_l.error_bound;
        b *= 2.0;
        if b > 1e6 {
            return Err(Error::NonConvergence(
                "derivative integral tail does not close".into(),
            ));
        }
    }
}

/// The ergodic limit constant of the p < beta regime:
/// E|L([0,1]^d)|^p times the beta-norm factors of the kernel.
pub fn ergodic_limit(
    kernel: &KernelSpec,
    spec: &LevyMeasureSpec,
    p: f64,
    tol: f64,
) -> Result<LimitConstant> {
    let regime = classify(kernel, p, spec);
    match regime.theorem {
        Theorem::T1ii | Theorem::T2ii => {}
        other => {
            return Err(Error::UnsupportedRegime(format!(
                "ergodic limit needs regime (ii), classification gave {other:?}: {}",
                regime.note
            )))
        }
    }
    let beta = if spec.is_gaussian() { 2.0 } else { spec.beta_index() };
    let stable_moment = noise_abs_moment(spec, p)?;
    let d = kernel.dim();
    let mut increment_integrals = Vec::new();
    let mut derivative_integrals = Vec::new();
    let mut numeric = 0.0;
    match kernel.homogeneity() {
        Homogeneity::Radial { alpha } => {
            if d == 1 {
                let (v, e) = increment_beta_integral(alpha, beta, tol)?;
                increment_integrals.push(v);
                numeric += e;
            } else {
                // d-dimensional integral of |Delta_1 h|^beta: bulk over a
                // cube with the corner singularities declared plus an
                // envelope tail.
                let k2 = kernel.clone();
                let f = move |x: &[f64]| crate::kernels::delta1_h(&k2, x).abs().powf(beta);
                let corners: Vec<Vec<f64>> = crate::geom::signed_corners(d)
                    .into_iter()
                    .map(|(eps, _)| eps.iter().map(|&e| -(e as f64)).collect())
                    .collect();
                let sing = Singularities::at_points(d, corners);
                let r = quad::integrate_rd_tail(
                    &f,
                    d,
                    24.0,
                    d as f64 * (alpha - 1.0) * beta,
                    tol,
                    &sing,
                )?;
                increment_integrals.push(r.value);
                numeric += r.error_bound;
            }
        }
        Homogeneity::Product { alphas } => {
            for (axis, &a) in alphas.iter().enumerate() {
                if a + 1.0 / beta < 1.0 {
                    let (v, e) = increment_beta_integral(a, beta, tol / d as f64)?;
                    increment_integrals.push(v);
                    numeric += e;
                } else {
                    let (v, e) = derivative_beta_integral(kernel, axis, beta, tol / d as f64)?;
                    derivative_integrals.push(v);
                    numeric += e;
                }
            }
        }
    }
    let mut m_p = stable_moment;
    for v in increment_integrals.iter().chain(&derivative_integrals) {
        m_p *= v.powf(p / beta);
    }
    Ok(LimitConstant {
        m_p,
        stable_moment,
        increment_integrals,
        derivative_integrals,
        numeric_bound: numeric,
    })
}

/// One draw of the jump-regime limit
/// Z = sum_k |J_k|^p H(U_k) over the Poisson configuration on [0,1]^d.
/// Infinite-activity measures are floored at `jump_floor`, with the
/// discarded mass certified via the small-jump moment.
pub fn sample_limit_z_thm1i(
    kernel: &KernelSpec,
    spec: &LevyMeasureSpec,
    p: f64,
    jump_floor: Option<f64>,
    tol: f64,
    rng: &mut RandomStream,
) -> Result<LimitSample> {
    let regime = classify(kernel, p, spec);
    let ok = matches!(regime.theorem, Theorem::T1i)
        || (matches!(regime.theorem, Theorem::T2i) && regime.k == kernel.dim());
    if !ok {
        return Err(Error::UnsupportedRegime(format!(
            "limit draw needs the jump regime with every axis fractional; got {:?}: {}",
            regime.theorem, regime.note
        )));
    }
    let d = kernel.dim();
    let unit = Rect::unit(d);
    let (points, bias_bound) = match jump_floor {
        None => {
            if !spec.finite_activity() {
                return Err(Error::UnsupportedRegime(
                    "infinite-activity noise needs a jump floor".into(),
                ));
            }
            (sample_jump_configuration(&unit, spec, rng)?.points, 0.0)
        }
        Some(eps) => {
            let cfg = sample_jump_configuration_floored(&unit, spec, eps, rng)?;
            // E of the discarded terms: int_{|y|<=eps} |y|^p nu(dy) * int H
            let small = spec.abs_moment_below(p, eps)?;
            let int_h = integral_of_h(kernel, p, 1e-4).unwrap_or(f64::NAN);
            (cfg.points, small * int_h)
        }
    };
    let mut value = 0.0;
    let mut numeric = 0.0;
    for (_, j) in &points {
        // Fresh uniform mark, independent of the jump (the limit measure
        // re-marks the jump sizes with independent uniforms).
        let u: Vec<f64> = (0..d).map(|_| rng.uniform_open()).collect();
        let h = lattice_sum_h(kernel, &u, p, tol)?;
        value += j.abs().powf(p) * h.value;
        numeric += j.abs().powf(p) * h.tail_bound;
    }
    Ok(LimitSample {
        value,
        numeric_bound: numeric,
        bias_bound,
        regime: regime.theorem,
        jump_count: points.len(),
    })
}

/// `\int_0^1 |g_i'(t - x)|^p dt` with the kink/singularity at t = x
/// declared when it falls inside the unit interval.
pub fn line_derivative_integral(
    kernel: &KernelSpec,
    axis: usize,
    x: f64,
    p: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let f = move |t: f64| kernel.g11_axis_deriv(axis, t - x).abs().powf(p);
    let sing: &[f64] = &[x];
    let r = if x > 0.0 && x < 1.0 {
        quad::integrate_1d_singular(f, 0.0, 1.0, tol, sing)?
    } else {
        quad::integrate_1d(f, 0.0, 1.0, tol)?
    };
    Ok((r.value, r.error_bound))
}

/// One draw of the mixed jump-regime limit of product kernels: fractional
/// axes carry lattice sums of their marks, steep axes carry line integrals
/// of g_i' at spatial locations on [-m, m].
pub fn sample_limit_z_thm2i(
    kernel: &KernelSpec,
    spec: &LevyMeasureSpec,
    p: f64,
    spatial_radius: f64,
    jump_floor: Option<f64>,
    tol: f64,
    rng: &mut RandomStream,
) -> Result<LimitSample> {
    let regime = classify(kernel, p, spec);
    if !matches!(regime.theorem, Theorem::T2i) {
        return Err(Error::UnsupportedRegime(format!(
            "mixed limit draw needs regime T2(i); got {:?}: {}",
            regime.theorem, regime.note
        )));
    }
    let alphas = match kernel.homogeneity() {
        Homogeneity::Product { alphas } => alphas,
        _ => {
            return Err(Error::UnsupportedRegime(
                "mixed limit draw needs a product kernel".into(),
            ))
        }
    };
    let d = kernel.dim();
    let k = regime.k;
    if k == d {
        return sample_limit_z_thm1i(kernel, spec, p, jump_floor, tol, rng);
    }
    // axes in ascending-alpha order: first k fractional, rest steep
    let frac_axes: Vec<usize> = regime.permutation[..k].to_vec();
    let steep_axes: Vec<usize> = regime.permutation[k..].to_vec();
    let m = spatial_radius;
    if !(m > 0.0) {
        return Err(Error::Parameter("spatial radius must be positive".into()));
    }
    let vol = (2.0 * m).powi((d - k) as i32);
    // jump sizes on the region [0,1]^k x [-m,m]^{d-k}
    let (jumps, mut bias) = match jump_floor {
        None => {
            let mass = spec.total_mass().ok_or_else(|| {
                Error::UnsupportedRegime("infinite-activity noise needs a jump floor".into())
            })?;
            let kcount = rng.poisson(mass * vol);
            let mut js = Vec::with_capacity(kcount as usize);
            for _ in 0..kcount {
                js.push(spec_jump(spec, rng)?);
            }
            (js, 0.0)
        }
        Some(eps) => {
            let mass = spec.levy_tail(eps);
            let kcount = rng.poisson(mass * vol);
            let mut js = Vec::with_capacity(kcount as usize);
            for _ in 0..kcount {
                js.push(floored_jump(spec, eps, rng)?);
            }
            // small-jump bias certificate as in the all-fractional case,
            // with the steep-axis line-integral mass folded in below
            let small = spec.abs_moment_below(p, eps)?;
            let mut int_h = 1.0;
            for &a in &frac_axes {
                let f = |u: f64| {
                    lattice_sum_axis(alphas[a], u, p, 1e-7)
                        .map(|s| s.value)
                        .unwrap_or(f64::NAN)
                };
                int_h *= quad::integrate_1d_singular(f, 0.0, 1.0, 1e-4, &[0.0, 1.0])?.value;
            }
            (js, small * int_h * line_mass_bound(kernel, &steep_axes, p, m)?)
        }
    };
    let mut value = 0.0;
    let mut numeric = 0.0;
    for j in &jumps {
        let mut w = j.abs().powf(p);
        let mut werr = 0.0;
        for &a in &frac_axes {
            let u = rng.uniform_open();
            let s = lattice_sum_axis(alphas[a], u, p, tol)?;
            werr = werr * s.value.abs() + w * s.tail_bound;
            w *= s.value;
        }
        for &a in &steep_axes {
            let x = rng.uniform_in(-m, m);
            let (v, e) = line_derivative_integral(kernel, a, x, p, tol)?;
            werr = werr * v.abs() + w * e;
            w *= v;
        }
        value += w;
        numeric += werr;
    }
    // spatial truncation remainder: jumps outside [-m,m] on steep axes
    // contribute at most |g'(x/2)|^p per unit, integrated analytically.
    let remainder_rate = steep_tail_mass(kernel, &steep_axes, p, m)?;
    bias += remainder_rate;
    Ok(LimitSample {
        value,
        numeric_bound: numeric,
        bias_bound: bias,
        regime: regime.theorem,
        jump_count: jumps.len(),
    })
}

/// Total mass proxy `prod_i \int_{-m}^{m} ||g_i'(.-x)||_p^p dx` used in the
/// small-jump bias certificate.
fn line_mass_bound(kernel: &KernelSpec, steep_axes: &[usize], p: f64, m: f64) -> Result<f64> {
    let mut out = 1.0;
    for &a in steep_axes {
        let f = |x: f64| {
            line_derivative_integral(kernel, a, x, p, 1e-6)
                .map(|(v, _)| v)
                .unwrap_or(f64::NAN)
        };
        out *= quad::integrate_1d_singular(f, -m, m, 1e-4, &[0.0, 1.0])?.value;
    }
    Ok(out)
}

/// Upper bound on the expected contribution of steep-axis locations beyond
/// the spatial box, via ||g_i'(. - x)||_p^p <= |g_i'(x/2)|^p for |x| >= m.
fn steep_tail_mass(kernel: &KernelSpec, steep_axes: &[usize], p: f64, m: f64) -> Result<f64> {
    let mut out = 0.0;
    for &a in steep_axes {
        let f = |x: f64| kernel.g11_axis_deriv(a, x / 2.0).abs().powf(p);
        let right = quad::integrate_tail_1d(&f, m, 1e-9)?;
        out += 2.0 * right.value + right.error_bound;
    }
    Ok(out)
}

fn spec_jump(spec: &LevyMeasureSpec, rng: &mut RandomStream) -> Result<f64> {
    match spec {
        LevyMeasureSpec::CompoundPoisson { jump_law, .. } => Ok(jump_law.sample(rng)),
        _ => Err(Error::UnsupportedRegime("finite activity required".into())),
    }
}

fn floored_jump(spec: &LevyMeasureSpec, eps: f64, rng: &mut RandomStream) -> Result<f64> {
    match spec {
        LevyMeasureSpec::CompoundPoisson { jump_law, .. } => {
            // rejection against the floor
            for _ in 0..10_000 {
                let j = jump_law.sample(rng);
                if j.abs() > eps {
                    return Ok(j);
                }
            }
            Err(Error::DegenerateSample("jump floor rejects everything".into()))
        }
        LevyMeasureSpec::Stable { beta } => {
            Ok(rng.sign() * eps * rng.uniform_open().powf(-1.0 / beta))
        }
        LevyMeasureSpec::TruncatedStable { beta, cutoff } => {
            let kb = cutoff.powf(-beta);
            let fb = eps.powf(-beta);
            let u = rng.uniform();
            Ok(rng.sign() * ((1.0 - u) * (fb - kb) + kb).powf(-1.0 / beta))
        }
        LevyMeasureSpec::Gaussian { .. } => {
            Err(Error::UnsupportedRegime("Gaussian noise has no jumps".into()))
        }
    }
}

/// `\int_{[0,1]^d} |Y(t)|^p dt` for the derivative field
/// Y(t) = sum_k J_k d^d g(t - V_k) over a fixed configuration, by adaptive
/// quadrature with the jump coordinates declared as singular axes.
pub fn derivative_pv_from_config(
    kernel: &KernelSpec,
    cfg: &PointConfiguration,
    p: f64,
    quad_tol: f64,
) -> Result<LimitSample> {
    let d = kernel.dim();
    let field = |t: &[f64]| -> f64 {
        let mut acc = 0.0;
        let mut arg = vec![0.0; d];
        for (v, j) in &cfg.points {
            for a in 0..d {
                arg[a] = t[a] - v[a];
            }
            acc += j * partial_d_g(kernel, &arg);
        }
        acc.abs().powf(p)
    };
    // d^d g is singular (or kinked) where any coordinate of t - V_k is 0
    let mut axis_coords = vec![Vec::new(); d];
    for (v, _) in &cfg.points {
        for a in 0..d {
            if v[a] > 0.0 && v[a] < 1.0 {
                axis_coords[a].push(v[a]);
            }
        }
    }
    let sing = Singularities::at_axis_coords(axis_coords);
    let r = quad::integrate_box(&field, &Rect::unit(d), quad_tol, &sing)?;
    Ok(LimitSample {
        value: r.value,
        numeric_bound: r.error_bound,
        bias_bound: 0.0,
        regime: Theorem::T1iii,
        jump_count: cfg.points.len(),
    })
}

/// Draw a configuration and evaluate the derivative-field limit
/// `\int |Y|^p` for the regime (iii) comparison.
pub fn sample_derivative_pv_limit(
    kernel: &KernelSpec,
    spec: &LevyMeasureSpec,
    p: f64,
    support_radius: f64,
    quad_tol: f64,
    rng: &mut RandomStream,
) -> Result<LimitSample> {
    let regime = classify(kernel, p, spec);
    if !matches!(regime.theorem, Theorem::T1iii | Theorem::T2iii) {
        return Err(Error::UnsupportedRegime(format!(
            "derivative limit needs regime (iii); got {:?}: {}",
            regime.theorem, regime.note
        )));
    }
    let region = Rect::padded_unit(kernel.dim(), support_radius);
    let cfg = sample_jump_configuration(&region, spec, rng)?;
    let mut out = derivative_pv_from_config(kernel, &cfg, p, quad_tol)?;
    out.regime = regime.theorem;
    Ok(out)
}

/// Convenience: the classification the oracles act on.
pub fn regime_of(kernel: &KernelSpec, p: f64, spec: &LevyMeasureSpec) -> Regime {
    classify(kernel, p, spec)
}
