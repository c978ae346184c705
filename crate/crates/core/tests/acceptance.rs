//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured numbers (run with `--nocapture` to see them).
//!
//! The criteria pin exact-algebra identities, sampler laws, FFT/direct
//! equivalence, and desk-scale Monte Carlo checks of the three limit
//! regimes, the estimator, and the rate-identification statistic.

use std::time::Instant;

use fracfield::geom::{for_each_index, signed_corners, strides, Rect};
use fracfield::grid::{rect_increments, FieldGrid, GridMeta};
use fracfield::harness::ks_distance;
use fracfield::kernels::{
    eval_g_full, rect_increment_fn, CorrectionSpec, KernelSpec,
};
use fracfield::lattice::{integral_of_h, lattice_sum_axis};
use fracfield::levy::{sample_sas, JumpLaw, LevyMeasureSpec};
use fracfield::limits::{
    derivative_pv_from_config, ergodic_limit, sample_limit_z_thm1i, sample_limit_z_thm2i,
};
use fracfield::quad;
use fracfield::sim::{
    fft_increment_field, shot_noise_configuration, shot_noise_increments, simulate_grid,
    SimMethod,
};
use fracfield::stats::{estimate_h_from_increments, power_variation};
use fracfield::RandomStream;

fn lfsm(h: f64, beta: f64) -> KernelSpec {
    KernelSpec::Lfss { hs: vec![h], beta }
}

fn tempered_h1(alpha: f64, d: usize, lambda: f64) -> KernelSpec {
    KernelSpec::H1Radial {
        alpha,
        d,
        f: CorrectionSpec::ExpTemper { lambda },
    }
}

fn two_point_cp(rate: f64) -> LevyMeasureSpec {
    LevyMeasureSpec::CompoundPoisson {
        rate,
        jump_law: JumpLaw::TwoPoint { a: 1.0 },
    }
}

fn random_field(d: usize, n: usize, seed: u64) -> FieldGrid {
    let mut rng = RandomStream::from_seed(seed);
    let shape = vec![n + 1; d];
    let total: usize = shape.iter().product();
    let values: Vec<f64> = (0..total).map(|_| rng.uniform_in(-2.0, 2.0)).collect();
    FieldGrid::new(d, n, values, GridMeta::default()).unwrap()
}

#[test]
fn criterion_01_exact_algebra() {
    let t0 = Instant::now();

    // corner formula vs iterated differencing on random grids, d = 1,2,3
    for d in 1..=3usize {
        let n = [64, 12, 5][d - 1];
        let field = random_field(d, n, 100 + d as u64);
        let inc = rect_increments(&field);
        let shape = vec![n + 1; d];
        let st = strides(&shape);
        let mut k = 0usize;
        for_each_index(&vec![n; d], |_, idx| {
            let mut corner = 0.0;
            for (eps, sign) in signed_corners(d) {
                let flat: usize = idx
                    .iter()
                    .zip(&eps)
                    .zip(&st)
                    .map(|((i, e), s)| (i + e) * s)
                    .sum();
                corner += sign * field.values[flat];
            }
            assert!(
                (inc.values[k] - corner).abs() <= 1e-12,
                "corner mismatch at {idx:?}"
            );
            k += 1;
        });
    }

    // additive-function annihilation, exact
    for d in 2..=3usize {
        let n = 6;
        let shape = vec![n + 1; d];
        let mut values = Vec::new();
        for_each_index(&shape, |_, idx| {
            values.push(idx.iter().map(|&i| i as f64 * 0.37).sum::<f64>());
        });
        let f = FieldGrid::new(d, n, values, GridMeta::default()).unwrap();
        let inc = rect_increments(&f);
        assert!(inc.values.iter().all(|v| v.abs() <= 1e-12));
    }

    // anchor-piece cancellation under increments at random boxes
    let kernels = [
        KernelSpec::Mafsf {
            h: 0.7,
            beta: 1.5,
            d: 2,
        },
        KernelSpec::Lfss {
            hs: vec![0.3, 0.8],
            beta: 1.5,
        },
    ];
    let mut rng = RandomStream::from_seed(7);
    for kernel in &kernels {
        for _ in 0..20 {
            let s: Vec<f64> = (0..2).map(|_| rng.uniform_in(-1.5, 1.5)).collect();
            if s.iter().any(|v| v.abs() < 1e-3) {
                continue;
            }
            let lo: Vec<f64> = (0..2).map(|_| rng.uniform_in(0.05, 0.6)).collect();
            let hi: Vec<f64> = lo.iter().map(|v| v + rng.uniform_in(0.1, 0.39)).collect();
            let full = rect_increment_fn(
                |t| eval_g_full(kernel, t, &s).unwrap(),
                &lo,
                &hi,
            )
            .unwrap();
            let translated = rect_increment_fn(
                |t| {
                    let arg: Vec<f64> = t.iter().zip(&s).map(|(a, b)| a - b).collect();
                    kernel.g11(&arg)
                },
                &lo,
                &hi,
            )
            .unwrap();
            let scale = full.abs().max(translated.abs()).max(1e-12);
            assert!(
                (full - translated).abs() / scale <= 1e-9,
                "{kernel:?}: anchored {full} vs translation {translated}"
            );
        }
    }

    // power-variation scale equivariance, exact to 1e-12 relative
    let field = random_field(2, 10, 321);
    let inc = rect_increments(&field);
    let scaled: Vec<f64> = inc.values.iter().map(|v| -3.7 * v).collect();
    let scaled_inc = fracfield::grid::IncrementGrid {
        d: 2,
        n: 10,
        values: scaled,
    };
    for p in [0.5, 1.0, 2.0, 3.3] {
        let a = power_variation(&inc, p).unwrap().v;
        let b = power_variation(&scaled_inc, p).unwrap().v;
        assert!(((b - 3.7f64.powf(p) * a) / b).abs() <= 1e-12);
    }

    let dt = t0.elapsed().as_secs_f64();
    assert!(dt < 10.0, "exact algebra suite took {dt:.1} s");
    println!("ACCEPTANCE 1 (exact algebra): PASS in {dt:.2} s");
}


#[test]
fn criterion_02_stable_sampler_cf() {
    let t0 = Instant::now();
    let n = 100_000usize;
    let bound = 4.0 / (n as f64).sqrt();
    let mut worst: f64 = 0.0;
    for (i, &beta) in [0.8f64, 1.2, 1.8].iter().enumerate() {
        let mut rng = RandomStream::from_seed(1000 + i as u64);
        let xs: Vec<f64> = (0..n)
            .map(|_| sample_sas(beta, 1.0, &mut rng).unwrap())
            .collect();
        for &t in &[0.5f64, 1.0, 2.0] {
            let emp = xs.iter().map(|x| (t * x).cos()).sum::<f64>() / n as f64;
            let truth = (-(t.abs().powf(beta))).exp();
            let dev = (emp - truth).abs();
            worst = worst.max(dev);
            assert!(
                dev < bound,
                "beta={beta} t={t}: |emp - exp(-|t|^b)| = {dev} >= {bound}"
            );
        }
    }
    let dt = t0.elapsed().as_secs_f64();
    assert!(dt < 30.0, "CF check took {dt:.1} s");
    println!(
        "ACCEPTANCE 2 (stable sampler CF): PASS, worst |dev| {worst:.5} < {bound:.5}, {dt:.1} s"
    );
}

#[test]
fn criterion_03_fft_direct_equivalence_and_speedup() {
    let spec = LevyMeasureSpec::Stable { beta: 1.5 };
    let mut worst: f64 = 0.0;
    for d in 1..=2usize {
        let kernel = if d == 1 {
            lfsm(0.7, 1.5)
        } else {
            KernelSpec::Mafsf {
                h: 0.7,
                beta: 1.5,
                d: 2,
            }
        };
        for &n in &[32usize, 64] {
            let stream = RandomStream::from_seed(5000 + (d * 100 + n) as u64);
            let os = if d == 1 { 2 } else { 1 };
            let field = simulate_grid(
                &kernel,
                &spec,
                n,
                &SimMethod::Discretized {
                    oversample: os,
                    support_radius: 0.5,
                },
                &stream,
            )
            .unwrap();
            let direct = rect_increments(&field);
            let fft = fft_increment_field(&kernel, &spec, n, os, 0.5, &stream).unwrap();
            let scale = direct.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (a, b) in fft.values.iter().zip(&direct.values) {
                worst = worst.max((a - b).abs() / scale);
            }
        }
    }
    assert!(worst < 1e-9, "max relative deviation {worst}");

    // measured speedup of the FFT path, growing super-linearly with size
    let kernel = lfsm(0.7, 1.5);
    let time_pair = |n: usize| -> (f64, f64) {
        let stream = RandomStream::from_seed(77);
        let t0 = Instant::now();
        let f = simulate_grid(
            &kernel,
            &spec,
            n,
            &SimMethod::Discretized {
                oversample: 1,
                support_radius: 0.5,
            },
            &stream,
        )
        .unwrap();
        let _ = rect_increments(&f);
        let direct = t0.elapsed().as_secs_f64();
        let t1 = Instant::now();
        let _ = fft_increment_field(&kernel, &spec, n, 1, 0.5, &stream).unwrap();
        let fft = t1.elapsed().as_secs_f64();
        (direct, fft)
    };
    let (d10, f10) = time_pair(1 << 10);
    let (d14, f14) = time_pair(1 << 14);
    let r10 = d10 / f10;
    let r14 = d14 / f14;
    assert!(
        r14 > 8.0 && r14 > 2.0 * r10,
        "speedup did not grow super-linearly: {r10:.1}x at 2^10, {r14:.1}x at 2^14"
    );
    println!(
        "ACCEPTANCE 3 (FFT/direct): PASS, max rel dev {worst:.2e}; speedup {r10:.0}x @2^10 -> {r14:.0}x @2^14"
    );
}

#[test]
fn criterion_04_ergodic_regime() {
    let t0 = Instant::now();
    let reps = 50usize;

    // (a) d=1 LFSM, beta=1.5, H=0.7, p=1, n=2^14
    let kernel = lfsm(0.7, 1.5);
    let spec = LevyMeasureSpec::Stable { beta: 1.5 };
    let n = 1 << 14;
    let p = 1.0;
    let rate = 0.7 * p - 1.0; // d(Hp-1)
    let limit = ergodic_limit(&kernel, &spec, p, 1e-7).unwrap();
    let mut mean = 0.0;
    for rep in 0..reps {
        let inc = fft_increment_field(
            &kernel,
            &spec,
            n,
            4,
            8.0,
            &RandomStream::from_seed(41_000 + rep as u64),
        )
        .unwrap();
        mean += (n as f64).powf(rate) * power_variation(&inc, p).unwrap().v;
    }
    mean /= reps as f64;
    let dev_stable = (mean / limit.m_p - 1.0).abs();
    assert!(
        dev_stable < 0.05,
        "stable ergodic mean {mean} vs constant {} (dev {dev_stable:.4})",
        limit.m_p
    );

    // (b) Gaussian beta=2 analogue, p=2
    let gk = KernelSpec::GaussianFractional { h: 0.7, d: 1 };
    let gs = LevyMeasureSpec::Gaussian { variance_rate: 1.0 };
    let p2 = 2.0;
    let grate = 0.7 * p2 - 1.0;
    let glimit = ergodic_limit(&gk, &gs, p2, 1e-7).unwrap();
    let mut gmean = 0.0;
    for rep in 0..reps {
        let inc = fft_increment_field(
            &gk,
            &gs,
            n,
            4,
            8.0,
            &RandomStream::from_seed(42_000 + rep as u64),
        )
        .unwrap();
        gmean += (n as f64).powf(grate) * power_variation(&inc, p2).unwrap().v;
    }
    gmean /= reps as f64;
    let dev_gauss = (gmean / glimit.m_p - 1.0).abs();
    assert!(
        dev_gauss < 0.03,
        "gaussian ergodic mean {gmean} vs constant {} (dev {dev_gauss:.4})",
        glimit.m_p
    );

    let dt = t0.elapsed().as_secs_f64();
    assert!(dt < 600.0, "ergodic criterion took {dt:.0} s");
    println!(
        "ACCEPTANCE 4 (ergodic regime): PASS, stable dev {dev_stable:.4} < 0.05, gaussian dev {dev_gauss:.4} < 0.03, {dt:.0} s"
    );
}

#[test]
fn criterion_05_estimator_consistency() {
    let t0 = Instant::now();
    let reps = 50usize;

    // (a) LFSM H=0.7, p=1, n=2^14
    let kernel = lfsm(0.7, 1.5);
    let spec = LevyMeasureSpec::Stable { beta: 1.5 };
    let n = 1 << 14;
    let mut err_sum = 0.0;
    for rep in 0..reps {
        let inc = fft_increment_field(
            &kernel,
            &spec,
            n,
            4,
            8.0,
            &RandomStream::from_seed(51_000 + rep as u64),
        )
        .unwrap();
        let est = estimate_h_from_increments(&inc, 1, 1.0).unwrap();
        err_sum += (est.h_hat - 0.7).abs();
    }
    let mean_err_lfsm = err_sum / reps as f64;
    assert!(
        mean_err_lfsm < 0.05,
        "LFSM estimator mean abs error {mean_err_lfsm}"
    );

    // (b) Gaussian d=2 fractional field with estimator target H = 0.3
    // (the ratio statistic estimates alpha + 1/2 = H_kernel/d, so the
    // kernel exponent carries H_kernel = 0.6). The field's covariance is
    // (||t||^{2H} + ||s||^{2H} - ||t-s||^{2H})/2, so its increment lattice
    // is exactly samplable by 2-d circulant embedding -- the appropriate
    // oracle: the singular kernel makes discretized synthesis resolve the
    // increment energy only at unaffordable oversampling in d = 2.
    let n2 = 256usize;
    let mut err2 = 0.0;
    for rep in 0..reps {
        let inc = exact_gaussian_fractional_increments_2d(
            0.6,
            n2,
            &mut RandomStream::from_seed(52_000 + rep as u64),
        );
        let est = estimate_h_from_increments(&inc, 2, 2.0).unwrap();
        err2 += (est.h_hat - 0.3).abs();
    }
    let mean_err_gauss = err2 / reps as f64;
    assert!(
        mean_err_gauss < 0.05,
        "gaussian d=2 estimator mean abs error {mean_err_gauss}"
    );

    let dt = t0.elapsed().as_secs_f64();
    println!(
        "ACCEPTANCE 5 (estimator): PASS, LFSM err {mean_err_lfsm:.4}, gaussian d=2 err {mean_err_gauss:.4}, {dt:.0} s"
    );
}

/// Exact rectangular-increment lattice of the isotropic H-fractional
/// Gaussian field in d = 2 by circulant embedding: the increment
/// covariance is the double rectangular difference of -||.||^{2H}/2
/// (the one-argument covariance terms cancel under increments), which is
/// short-ranged and embeds nonnegatively on the 2n torus. Overall scale
/// is irrelevant to the ratio statistic.
fn exact_gaussian_fractional_increments_2d(
    hh: f64,
    n: usize,
    rng: &mut RandomStream,
) -> fracfield::grid::IncrementGrid {
    use rustfft::num_complex::Complex;
    use rustfft::FftPlanner;
    let m = 2 * n;
    let gamma = |j0: f64, j1: f64| -> f64 {
        let mut acc = 0.0;
        for (e0, e1, s) in [
            (0.0, 0.0, 1.0),
            (1.0, 1.0, 1.0),
            (1.0, 0.0, -1.0),
            (0.0, 1.0, -1.0),
        ] {
            for (f0, f1, t) in [
                (0.0, 0.0, 1.0),
                (1.0, 1.0, 1.0),
                (1.0, 0.0, -1.0),
                (0.0, 1.0, -1.0),
            ] {
                let dx = j0 + e0 - f0;
                let dy = j1 + e1 - f1;
                acc += s * t * (dx * dx + dy * dy).powf(hh) * (-0.5f64);
            }
        }
        acc
    };
    // wrapped covariance on the torus
    let mut lam: Vec<Complex<f64>> = Vec::with_capacity(m * m);
    for k0 in 0..m {
        let w0 = if k0 <= n { k0 as f64 } else { k0 as f64 - m as f64 };
        for k1 in 0..m {
            let w1 = if k1 <= n { k1 as f64 } else { k1 as f64 - m as f64 };
            lam.push(Complex::new(gamma(w0, w1), 0.0));
        }
    }
    // 2-d FFT by axis passes
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    let mut line = vec![Complex::new(0.0, 0.0); m];
    for row in 0..m {
        fft.process(&mut lam[row * m..(row + 1) * m]);
    }
    for col in 0..m {
        for (r, slot) in line.iter_mut().enumerate() {
            *slot = lam[r * m + col];
        }
        fft.process(&mut line);
        for (r, &v) in line.iter().enumerate() {
            lam[r * m + col] = v;
        }
    }
    let max_lam = lam.iter().fold(0.0f64, |a, c| a.max(c.re));
    // tiny negative eigenvalues are clipped: the covariance perturbation is
    // of their relative size, orders below the estimator tolerance
    let mut field: Vec<Complex<f64>> = lam
        .iter()
        .map(|c| {
            let l = c.re;
            assert!(l > -1e-4 * max_lam, "embedding eigenvalue {l} vs max {max_lam}");
            let s = l.max(0.0).sqrt();
            Complex::new(s * rng.normal(), s * rng.normal()) * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect();
    let ifft = planner.plan_fft_inverse(m);
    for row in 0..m {
        ifft.process(&mut field[row * m..(row + 1) * m]);
    }
    for col in 0..m {
        for (r, slot) in line.iter_mut().enumerate() {
            *slot = field[r * m + col];
        }
        ifft.process(&mut line);
        for (r, &v) in line.iter().enumerate() {
            field[r * m + col] = v;
        }
    }
    let scale = (2.0f64).sqrt() / m as f64;
    let mut values = Vec::with_capacity(n * n);
    for i0 in 0..n {
        for i1 in 0..n {
            values.push(field[i0 * m + i1].re * scale);
        }
    }
    fracfield::grid::IncrementGrid { d: 2, n, values }
}

#[test]
fn criterion_06_jump_regime_law() {
    let t0 = Instant::now();
    // d=1, compound Poisson rate 2 with +-1 jumps, alpha = 0.5, p = 3.
    // The tempering only has to decay eventually; a weak rate keeps the
    // finite-n lattice sums close to the pure-power limit sums. Jumps are
    // drawn on [0,1] itself: the limit law has an atom of mass e^{-2} at 0
    // (no jumps), which a field carrying boundary jumps can never imitate
    // at finite n.
    let kernel = tempered_h1(0.5, 1, 0.05);
    let spec = two_point_cp(2.0);
    let p = 3.0;
    let n = 512usize;
    let reps = 2000usize;
    let rate_exp = 0.5 * p; // d alpha p = 1.5

    let mut vs = Vec::with_capacity(reps);
    for rep in 0..reps {
        let stream = RandomStream::from_seed(61_000 + rep as u64);
        let cfg = shot_noise_configuration(&spec, 1, 0.0, None, &stream).unwrap();
        let inc = shot_noise_increments(&kernel, &cfg, n).unwrap();
        vs.push((n as f64).powf(rate_exp) * power_variation(&inc, p).unwrap().v);
    }
    let mut zs = Vec::with_capacity(reps);
    let mut zrng = RandomStream::from_seed(62_000);
    for _ in 0..reps {
        zs.push(
            sample_limit_z_thm1i(&kernel, &spec, p, None, 1e-7, &mut zrng)
                .unwrap()
                .value,
        );
    }
    let ks = ks_distance(&vs, &zs).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    // Known red at n = 512: the finite-size corrections to this law decay
    // like 1/sqrt(n) and are still sizable here -- single-jump draws carry
    // the lattice-window deficit of V_n against the full lattice sum
    // (about -5%, amplified in sup-norm by the sharply peaked density of
    // H(U)), and K >= 2 configurations a +13% interaction inflation of the
    // |.|^3 sums (superadditivity). A tempering sweep (0.05..5) is
    // monotone worse, pure power kernels are inadmissible (alpha =
    // 1 - 1/theta exactly), and no other family reaches alpha = 0.5 at
    // d = 1, so KS ~ 0.099 is the floor at these pinned parameters. The
    // same comparison measures 0.085 at n = 2048, 0.057 at n = 4096 and
    // 0.033 at n = 65536: the law converges as claimed, just not to
    // within 0.08 by n = 512.
    assert!(ks < 0.08, "two-sample KS {ks} (expected ~0.099; see comment)");
    assert!(dt < 900.0, "jump-regime criterion took {dt:.0} s");
    println!("ACCEPTANCE 6 (jump regime law): PASS, KS {ks:.4} < 0.08, {dt:.0} s");
}

#[test]
fn criterion_07_mixed_regime_law() {
    let t0 = Instant::now();
    // d=2, k=1: alpha = (0.5, 1.8) with tempered corrections, p = 3.
    // Weak tempering on the fractional axis (to keep its lattice sums near
    // the pure-power limit), stronger on the steep axis (so the spatial
    // box stays small); the jump box is widened per axis accordingly.
    let kernel = KernelSpec::H2Product {
        alphas: vec![0.5, 1.8],
        fs: vec![
            CorrectionSpec::ExpTemper { lambda: 0.05 },
            CorrectionSpec::ExpTemper { lambda: 2.0 },
        ],
    };
    // A modest jump rate keeps jump-interaction corrections (which die
    // like 1/sqrt(n) and scale with rate^2) inside the tolerance at n=128.
    let spec = two_point_cp(0.5);
    let p = 3.0;
    let n = 128usize;
    let reps = 2000usize;
    // n^{(d-k)(p-1) + alpha_1 p} = n^{2 + 1.5}
    let rate_exp = 1.0 * (p - 1.0) + 0.5 * p;

    // Jump box: tight [0,1] on the fractional axis (the limit only carries
    // jumps with u in [0,1]; boundary terms die too slowly to admit any
    // padding at this n), padded on the steep axis where the tempered g_2'
    // actually reaches.
    let region = Rect::new(vec![0.0, -3.0], vec![1.0, 4.0]).unwrap();
    let mut vs = Vec::with_capacity(reps);
    for rep in 0..reps {
        let mut rng = RandomStream::from_seed(71_000 + rep as u64).child(1);
        let cfg =
            fracfield::levy::sample_jump_configuration(&region, &spec, &mut rng).unwrap();
        let inc = shot_noise_increments(&kernel, &cfg, n).unwrap();
        vs.push((n as f64).powf(rate_exp) * power_variation(&inc, p).unwrap().v);
    }
    let mut zs = Vec::with_capacity(reps);
    let mut zrng = RandomStream::from_seed(72_000);
    for _ in 0..reps {
        zs.push(
            sample_limit_z_thm2i(&kernel, &spec, p, 3.0, None, 1e-6, &mut zrng)
                .unwrap()
                .value,
        );
    }
    let ks = ks_distance(&vs, &zs).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    assert!(ks < 0.12, "two-sample KS {ks}");
    assert!(dt < 1800.0, "mixed-regime criterion took {dt:.0} s");
    println!("ACCEPTANCE 7 (mixed regime law): PASS, KS {ks:.4} < 0.12, {dt:.0} s");
}

#[test]
fn criterion_08_derivative_regime_same_realization() {
    let t0 = Instant::now();
    let kernel = KernelSpec::H2Product {
        alphas: vec![1.6, 1.6],
        fs: vec![
            CorrectionSpec::ExpTemper { lambda: 1.0 },
            CorrectionSpec::ExpTemper { lambda: 1.0 },
        ],
    };
    let spec = two_point_cp(0.5);
    let p = 1.0;
    let configs = 6usize;
    let mut gap_128 = 0.0;
    let mut gap_256 = 0.0;
    for rep in 0..configs {
        let stream = RandomStream::from_seed(81_000 + rep as u64);
        let cfg = shot_noise_configuration(&spec, 2, 6.0, None, &stream).unwrap();
        if cfg.points.is_empty() {
            continue;
        }
        let q = derivative_pv_from_config(&kernel, &cfg, p, 1e-5).unwrap();
        for (n, gap_acc) in [(128usize, &mut gap_128), (256usize, &mut gap_256)] {
            let inc = shot_noise_increments(&kernel, &cfg, n).unwrap();
            // n^{d(p-1)} = 1 at p = 1
            let v = (n as f64).powf(2.0 * (p - 1.0)) * power_variation(&inc, p).unwrap().v;
            *gap_acc += (v - q.value).abs() / q.value;
        }
    }
    gap_128 /= configs as f64;
    gap_256 /= configs as f64;
    let ratio = gap_256 / gap_128;
    let dt = t0.elapsed().as_secs_f64();
    assert!(
        gap_256 < 0.02,
        "relative gap at n=256 is {gap_256:.4} (n=128: {gap_128:.4})"
    );
    // Shot-noise increments are exact cell integrals of Y, so the gap
    // comes from sign-straddling cells only and decays quadratically;
    // doubling n must shrink it at least as fast as halving-with-slack.
    assert!(
        ratio < 0.65,
        "gap ratio n=256/n=128 is {ratio:.3}, must at least halve (with 30% slack)"
    );
    println!(
        "ACCEPTANCE 8 (derivative regime): PASS, gap {gap_128:.5} -> {gap_256:.5} (ratio {ratio:.3}), {dt:.0} s"
    );
}

#[test]
fn criterion_09_rate_identification() {
    let t0 = Instant::now();
    let kernel = lfsm(0.7, 1.5);
    let spec = LevyMeasureSpec::Stable { beta: 1.5 };
    let ladder: Vec<usize> = (10..=14).map(|e| 1usize << e).collect();
    let reps = 64usize;

    // log-mean V per ladder point, shared sims for both powers
    let mut logv_p1 = vec![0.0f64; ladder.len()];
    let mut logv_p3 = vec![0.0f64; ladder.len()];
    for (idx, &n) in ladder.iter().enumerate() {
        for rep in 0..reps {
            let inc = fft_increment_field(
                &kernel,
                &spec,
                n,
                4,
                8.0,
                &RandomStream::from_seed(91_000 + (idx * 1000 + rep) as u64),
            )
            .unwrap();
            logv_p1[idx] += power_variation(&inc, 1.0).unwrap().v.ln();
            logv_p3[idx] += power_variation(&inc, 3.0).unwrap().v.ln();
        }
        logv_p1[idx] /= reps as f64;
        logv_p3[idx] /= reps as f64;
    }
    let slope = |ys: &[f64]| -> f64 {
        let xs: Vec<f64> = ladder.iter().map(|&n| (n as f64).ln()).collect();
        let xb = xs.iter().sum::<f64>() / xs.len() as f64;
        let yb = ys.iter().sum::<f64>() / ys.len() as f64;
        let sxx: f64 = xs.iter().map(|x| (x - xb) * (x - xb)).sum();
        let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - xb) * (y - yb)).sum();
        sxy / sxx
    };
    let s1 = slope(&logv_p1);
    let s3 = slope(&logv_p3);
    // ergodic phase at p=1: slope -> -d(Hp-1) = 0.3
    let target1 = 0.3;
    // jump phase at p=3: slope -> -d alpha p with alpha = H - 1/beta
    let target3 = -(0.7 - 1.0 / 1.5) * 3.0;
    let dt = t0.elapsed().as_secs_f64();
    assert!(
        (s1 - target1).abs() < 0.05,
        "p=1 slope {s1:.4} vs {target1}"
    );
    assert!(
        (s3 - target3).abs() < 0.1,
        "p=3 slope {s3:.4} vs {target3:.4}"
    );
    println!(
        "ACCEPTANCE 9 (rate identification): PASS, slope(p=1) {s1:.3} ~ {target1}, slope(p=3) {s3:.3} ~ {target3:.2}, phase transition visible, {dt:.0} s"
    );
}

#[test]
fn criterion_10_oracle_self_consistency() {
    let t0 = Instant::now();

    // Campbell mean identity: E[Z] = nu(R_0) E|J|^p int_0^1 H(u) du
    let kernel = tempered_h1(0.5, 1, 1.0);
    let spec = two_point_cp(2.0);
    let p = 3.0;
    let mut rng = RandomStream::from_seed(10_100);
    let n = 10_000usize;
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..n {
        let z = sample_limit_z_thm1i(&kernel, &spec, p, None, 1e-6, &mut rng)
            .unwrap()
            .value;
        sum += z;
        sumsq += z * z;
    }
    let mean = sum / n as f64;
    let se = ((sumsq / n as f64 - mean * mean).max(0.0) / n as f64).sqrt();
    let truth = 2.0 * 1.0 * integral_of_h(&kernel, p, 1e-7).unwrap();
    assert!(
        (mean - truth).abs() < 3.0 * se,
        "Campbell identity: mean {mean} vs {truth} (se {se})"
    );

    // quadrature certificate battery: |value - truth| <= error_bound on
    // twenty closed forms
    type Case = (Box<dyn Fn(&[f64]) -> f64>, Rect, Vec<Vec<f64>>, f64);
    let e = std::f64::consts::E;
    let pi = std::f64::consts::PI;
    let cases: Vec<Case> = vec![
        (Box::new(|_| 1.0), Rect::unit(1), vec![], 1.0),
        (Box::new(|x| x[0]), Rect::unit(1), vec![], 0.5),
        (Box::new(|x| x[0] * x[0]), Rect::unit(1), vec![], 1.0 / 3.0),
        (Box::new(|x| x[0].exp()), Rect::unit(1), vec![], e - 1.0),
        (Box::new(|x| x[0].sin()), Rect::new(vec![0.0], vec![pi]).unwrap(), vec![], 2.0),
        (Box::new(|x| 1.0 / (1.0 + x[0] * x[0])), Rect::new(vec![-1.0], vec![1.0]).unwrap(), vec![], pi / 2.0),
        (Box::new(|x| x[0].powf(2.5)), Rect::unit(1), vec![], 1.0 / 3.5),
        (Box::new(|x| (-x[0]).exp()), Rect::new(vec![0.0], vec![20.0]).unwrap(), vec![], 1.0 - (-20.0f64).exp()),
        (Box::new(|x| x[0].abs()), Rect::new(vec![-1.0], vec![1.0]).unwrap(), vec![], 1.0),
        (Box::new(|x| x[0].cos().powi(2)), Rect::new(vec![0.0], vec![pi]).unwrap(), vec![], pi / 2.0),
        (Box::new(|x| x[0].powf(-0.5)), Rect::unit(1), vec![vec![0.0]], 2.0),
        (Box::new(|x| x[0].powf(-0.25)), Rect::unit(1), vec![vec![0.0]], 4.0 / 3.0),
        (Box::new(|x| (1.0 - x[0]).powf(-0.5)), Rect::unit(1), vec![vec![1.0]], 2.0),
        (Box::new(|x| x[0].powf(-0.9)), Rect::unit(1), vec![vec![0.0]], 10.0),
        (Box::new(|x| x[0].abs().powf(-0.5)), Rect::new(vec![-1.0], vec![1.0]).unwrap(), vec![vec![0.0]], 4.0),
        (Box::new(|_| 1.0), Rect::unit(2), vec![], 1.0),
        (Box::new(|x| x[0] * x[1]), Rect::unit(2), vec![], 0.25),
        (Box::new(|x| (x[0] + x[1]).exp()), Rect::unit(2), vec![], (e - 1.0) * (e - 1.0)),
        (Box::new(|x| (x[0] * x[1]).sqrt()), Rect::unit(2), vec![vec![0.0], vec![0.0]], 4.0 / 9.0),
        (Box::new(|x| x[0] * x[1] * x[2]), Rect::unit(3), vec![], 0.125),
    ];
    assert_eq!(cases.len(), 20);
    for (i, (f, rect, sing_axes, truth)) in cases.iter().enumerate() {
        let d = rect.dim();
        let sing = if sing_axes.is_empty() {
            quad::Singularities::none(d)
        } else {
            let mut coords = vec![Vec::new(); d];
            for (a, c) in sing_axes.iter().enumerate() {
                coords[a] = c.clone();
            }
            quad::Singularities::at_axis_coords(coords)
        };
        let r = quad::integrate_box(f, rect, 1e-8, &sing).unwrap();
        assert!(
            (r.value - truth).abs() <= r.error_bound.max(1e-11) * 2.0,
            "battery case {i}: value {} truth {truth} bound {}",
            r.value,
            r.error_bound
        );
    }

    // lattice tail certificates valid under 4x extension: on fast-decaying
    // cases a 4x-extended direct sum is exact to ~1e-11, and it must sit
    // inside the reported certificate of the returned value.
    for (a, u, p) in [(0.45, 0.3, 8.0), (0.2, 0.8, 6.0), (-0.05, 0.5, 7.0)] {
        let s = lattice_sum_axis(a, u, p, 1e-8).unwrap();
        let brute: f64 = {
            let mut acc = 0.0;
            let big = ((s.terms as i64) * 2).max(200_000); // >= 4x direct range
            for j in -big..=big {
                let y = j as f64 - u;
                let d = (y + 1.0).abs().powf(a) - y.abs().powf(a);
                acc += d.abs().powf(p);
            }
            acc
        };
        assert!(
            (s.value - brute).abs() <= s.tail_bound + 1e-10 * brute.abs().max(1.0),
            "a={a}: extended sum {brute} outside certificate {} +- {}",
            s.value,
            s.tail_bound
        );
    }

    let dt = t0.elapsed().as_secs_f64();
    println!(
        "ACCEPTANCE 10 (oracle self-consistency): PASS, Campbell dev {:.2e} (3se {:.2e}), battery 20/20, {dt:.0} s",
        (mean - truth).abs(),
        3.0 * se
    );
}
