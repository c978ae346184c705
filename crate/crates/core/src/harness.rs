//! Config-driven experiment runner: simulate fields across (n, p) grids,
//! compare statistics against the independently computed limit objects,
//! and emit reproducible CSV/JSON reports.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grid::IncrementGrid;
use crate::kernels::{classify, KernelSpec, Theorem};
use crate::levy::LevyMeasureSpec;
use crate::limits::{
    derivative_pv_from_config, ergodic_limit, sample_limit_z_thm1i, sample_limit_z_thm2i,
};
use crate::rng::RandomStream;
use crate::sim::{
    check_truncation, shot_noise_configuration, shot_noise_increments, simulate_increments,
    SimMethod,
};
use crate::stats::{estimate_h_from_increments, power_variation, scaling_exponent, ScalingPoint};

/// Output destinations of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct OutputSpec {
    /// Directory for report.json and results.csv ("" disables file output).
    #[serde(default)]
    pub dir: String,
}

/// A complete experiment description; serializes to/from the JSON config
/// file consumed by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kernel: KernelSpec,
    pub levy: LevyMeasureSpec,
    pub d: usize,
    pub n_ladder: Vec<usize>,
    pub p_grid: Vec<f64>,
    pub reps: usize,
    pub seed: u64,
    pub method: SimMethod,
    #[serde(default)]
    pub outputs: OutputSpec,
    #[serde(default)]
    pub strict: bool,
    /// Draws of the limit variable for distributional comparisons
    /// (defaults to `reps`).
    #[serde(default)]
    pub limit_draws: usize,
    /// Spatial box radius for the mixed-regime limit sampler.
    #[serde(default = "default_spatial_radius")]
    pub spatial_radius: f64,
    /// Jump floor handed to the limit samplers for infinite-activity noise.
    #[serde(default)]
    pub jump_floor: Option<f64>,
    /// Same-realization derivative-regime comparisons per n (they cost one
    /// adaptive quadrature each).
    #[serde(default = "default_derivative_reps")]
    pub derivative_reps: usize,
}

fn default_spatial_radius() -> f64 {
    6.0
}

fn default_derivative_reps() -> usize {
    4
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.kernel.validate()?;
        self.levy.validate()?;
        if self.kernel.dim() != self.d {
            return Err(Error::Config(format!(
                "d = {} does not match the kernel dimension {}",
                self.d,
                self.kernel.dim()
            )));
        }
        if self.n_ladder.is_empty() || self.n_ladder.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("n_ladder must be strictly increasing".into()));
        }
        if self.p_grid.is_empty() || self.p_grid.iter().any(|p| !(*p > 0.0)) {
            return Err(Error::Config("p_grid must hold positive powers".into()));
        }
        if self.reps == 0 {
            return Err(Error::Config("reps must be >= 1".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let mut h = Sha256::new();
        h.update(json.as_bytes());
        hex_string(&h.finalize())
    }

    /// Stream for replication `rep` of ladder point `n_idx`; shared across
    /// the p-grid so every power sees the same sample path.
    pub fn stream_for(&self, n_idx: usize, rep: usize) -> RandomStream {
        RandomStream::from_seed(self.seed)
            .child(n_idx as u64)
            .child(rep as u64)
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Per-(p, n, rep) record of the raw statistics.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PvRow {
    pub p: f64,
    pub n: usize,
    pub rep: usize,
    pub v: f64,
    pub s_n: f64,
    pub r_n: Option<f64>,
    pub h_hat: Option<f64>,
    /// The ratio under the disjoint-tiling index convention, reported at
    /// n <= 64 where the boundary truncation of the overlapping convention
    /// could plausibly bias the estimator.
    pub r_n_disjoint: Option<f64>,
}

/// Classification outcome per power.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RegimeRow {
    pub p: f64,
    pub theorem: Theorem,
    pub k: usize,
    pub rate_exponent: f64,
    pub skipped: bool,
    pub note: String,
}

/// One limit comparison.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ComparisonRow {
    pub p: f64,
    pub n: usize,
    /// "ergodic_mean", "jump_law_ks", or "derivative_gap".
    pub kind: String,
    /// The measured statistic (mean normalized V, KS distance, relative gap).
    pub statistic: f64,
    /// The reference value it was compared against (limit constant, 0, 0).
    pub reference: f64,
    pub note: String,
}

/// Slope of log V_n against log n per power.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SlopeRow {
    pub p: f64,
    pub slope: f64,
    pub predicted: f64,
    pub per_n: Vec<ScalingPoint>,
}

/// Everything an experiment produced; serializes to report.json.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub config_hash: String,
    pub seed: u64,
    pub regimes: Vec<RegimeRow>,
    pub rows: Vec<PvRow>,
    pub slopes: Vec<SlopeRow>,
    pub comparisons: Vec<ComparisonRow>,
    pub warnings: Vec<String>,
}

/// Two-sample Kolmogorov-Smirnov distance: the sup-distance between the
/// empirical distribution functions.
pub fn ks_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Parameter("KS distance needs nonempty samples".into()));
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|u, v| u.partial_cmp(v).unwrap());
    ys.sort_by(|u, v| u.partial_cmp(v).unwrap());
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let mut i = 0usize;
    let mut j = 0usize;
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let t = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= t {
            i += 1;
        }
        while j < ys.len() && ys[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Run the whole experiment: simulate across the ladder, classify each
/// power, compare against the matching limit object, and assemble the
/// report. Worker count only affects wall time, never values.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let hash = config.hash();
    let mut warnings = Vec::new();

    if let SimMethod::Discretized { support_radius, .. } = &config.method {
        let n_max = *config.n_ladder.last().unwrap();
        let rep = check_truncation(&config.kernel, &config.levy, n_max, *support_radius)?;
        if !rep.acceptable {
            let msg = format!(
                "support radius {} keeps only 1 - {:.2e} of the increment energy",
                support_radius, rep.tail_share
            );
            if config.strict {
                return Err(Error::Truncation(msg));
            }
            warnings.push(msg);
        }
    }

    // classify every power first; unsupported combinations never simulate
    let mut regimes = Vec::new();
    let mut active: Vec<f64> = Vec::new();
    for &p in &config.p_grid {
        let r = classify(&config.kernel, p, &config.levy);
        let skipped = matches!(r.theorem, Theorem::Unsupported | Theorem::Boundary);
        regimes.push(RegimeRow {
            p,
            theorem: r.theorem,
            k: r.k,
            rate_exponent: r.rate_exponent,
            skipped,
            note: r.note.clone(),
        });
        if !skipped {
            active.push(p);
        }
    }
    if active.is_empty() {
        warnings.push("no supported (kernel, p, noise) combination".into());
    }

    // simulate: per (n, rep) increments shared by all powers
    let mut rows: Vec<PvRow> = Vec::new();
    let mut v_table: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); config.n_ladder.len()]; config.p_grid.len()];
    for (n_idx, &n) in config.n_ladder.iter().enumerate() {
        let incs: Vec<Result<IncrementGrid>> = (0..config.reps)
            .into_par_iter()
            .map(|rep| {
                simulate_increments(
                    &config.kernel,
                    &config.levy,
                    n,
                    &config.method,
                    &config.stream_for(n_idx, rep),
                )
            })
            .collect();
        for (rep, inc) in incs.into_iter().enumerate() {
            let inc = inc?;
            for (p_idx, &p) in config.p_grid.iter().enumerate() {
                if regimes[p_idx].skipped {
                    continue;
                }
                let v = power_variation(&inc, p)?.v;
                v_table[p_idx][n_idx].push(v);
                let est = estimate_h_from_increments(&inc, config.d, p).ok();
                let r_n_disjoint = if n <= 64 && v > 0.0 {
                    crate::grid::coarsen_increments_disjoint(&inc)
                        .ok()
                        .map(|c| crate::stats::abs_power_sum(&c.values, p) / v)
                } else {
                    None
                };
                rows.push(PvRow {
                    p,
                    n,
                    rep,
                    v,
                    s_n: if v > 0.0 { v.ln() / (n as f64).ln() } else { f64::NAN },
                    r_n: est.as_ref().map(|e| e.r_n),
                    h_hat: est.as_ref().map(|e| e.h_hat),
                    r_n_disjoint,
                });
            }
        }
    }

    // slopes from geometric means across reps (log-mean is robust to the
    // heavy-tailed fluctuations of the jump regimes)
    let mut slopes = Vec::new();
    for (p_idx, &p) in config.p_grid.iter().enumerate() {
        if regimes[p_idx].skipped || config.n_ladder.len() < 3 {
            continue;
        }
        if v_table[p_idx].iter().any(|vs| vs.iter().any(|v| *v == 0.0)) {
            warnings.push(format!(
                "degenerate sample (some V_n = 0) at p={p}; slope skipped"
            ));
            continue;
        }
        let ladder: Vec<(usize, f64)> = config
            .n_ladder
            .iter()
            .enumerate()
            .map(|(n_idx, &n)| {
                let vs = &v_table[p_idx][n_idx];
                let logmean = vs.iter().map(|v| v.ln()).sum::<f64>() / vs.len().max(1) as f64;
                (n, logmean.exp())
            })
            .collect();
        let (slope, per_n) = scaling_exponent(&ladder, p)?;
        slopes.push(SlopeRow {
            p,
            slope,
            predicted: -regimes[p_idx].rate_exponent,
            per_n,
        });
    }

    // limit comparisons at the top of the ladder
    let mut comparisons = Vec::new();
    let n_max = *config.n_ladder.last().unwrap();
    let n_max_idx = config.n_ladder.len() - 1;
    let limit_draws = if config.limit_draws == 0 {
        config.reps
    } else {
        config.limit_draws
    };
    for (p_idx, &p) in config.p_grid.iter().enumerate() {
        let reg = &regimes[p_idx];
        if reg.skipped {
            continue;
        }
        let vs = &v_table[p_idx][n_max_idx];
        let norm: Vec<f64> = vs
            .iter()
            .map(|v| (n_max as f64).powf(reg.rate_exponent) * v)
            .collect();
        match reg.theorem {
            Theorem::T1ii | Theorem::T2ii => {
                let limit = ergodic_limit(&config.kernel, &config.levy, p, 1e-6)?;
                let mean = norm.iter().sum::<f64>() / norm.len() as f64;
                comparisons.push(ComparisonRow {
                    p,
                    n: n_max,
                    kind: "ergodic_mean".into(),
                    statistic: mean,
                    reference: limit.m_p,
                    note: format!("relative deviation {:+.4}", mean / limit.m_p - 1.0),
                });
            }
            Theorem::T1i | Theorem::T2i => {
                let mut zrng = RandomStream::from_seed(config.seed ^ 0x5a5a_5a5a).child(9999);
                let mut zs = Vec::with_capacity(limit_draws);
                let mut failed = None;
                for _ in 0..limit_draws {
                    let draw = if reg.k == config.d {
                        sample_limit_z_thm1i(
                            &config.kernel,
                            &config.levy,
                            p,
                            config.jump_floor,
                            1e-6,
                            &mut zrng,
                        )
                    } else {
                        sample_limit_z_thm2i(
                            &config.kernel,
                            &config.levy,
                            p,
                            config.spatial_radius,
                            config.jump_floor,
                            1e-6,
                            &mut zrng,
                        )
                    };
                    match draw {
                        Ok(z) => zs.push(z.value),
                        Err(e) => {
                            failed = Some(e.to_string());
                            break;
                        }
                    }
                }
                if let Some(msg) = failed {
                    warnings.push(format!("limit draws unavailable at p={p}: {msg}"));
                } else {
                    let ks = ks_distance(&norm, &zs)?;
                    comparisons.push(ComparisonRow {
                        p,
                        n: n_max,
                        kind: "jump_law_ks".into(),
                        statistic: ks,
                        reference: 0.0,
                        note: format!("{} vs {} draws", norm.len(), zs.len()),
                    });
                }
            }
            Theorem::T1iii | Theorem::T2iii => {
                let (radius, floor) = match &config.method {
                    SimMethod::ShotNoise {
                        support_radius,
                        jump_floor,
                    } => (*support_radius, *jump_floor),
                    _ => {
                        warnings.push(format!(
                            "derivative-regime comparison at p={p} needs the shot-noise method"
                        ));
                        continue;
                    }
                };
                let mut gaps = Vec::new();
                for rep in 0..config.derivative_reps.min(config.reps) {
                    let stream = config.stream_for(n_max_idx, rep);
                    let cfg = shot_noise_configuration(
                        &config.levy,
                        config.d,
                        radius,
                        floor,
                        &stream,
                    )?;
                    let inc = shot_noise_increments(&config.kernel, &cfg, n_max)?;
                    let v = power_variation(&inc, p)?.v
                        * (n_max as f64).powf(config.d as f64 * (p - 1.0));
                    let q = derivative_pv_from_config(&config.kernel, &cfg, p, 1e-6)?;
                    if q.value > 0.0 {
                        gaps.push((v - q.value).abs() / q.value);
                    }
                }
                if !gaps.is_empty() {
                    let mean_gap = gaps.iter().sum::<f64>() / gaps.len() as f64;
                    comparisons.push(ComparisonRow {
                        p,
                        n: n_max,
                        kind: "derivative_gap".into(),
                        statistic: mean_gap,
                        reference: 0.0,
                        note: format!("{} same-realization comparisons", gaps.len()),
                    });
                }
            }
            _ => {}
        }
    }

    let report = Report {
        config_hash: hash,
        seed: config.seed,
        regimes,
        rows,
        slopes,
        comparisons,
        warnings,
    };
    if !config.outputs.dir.is_empty() {
        write_outputs(config, &report)?;
    }
    Ok(report)
}

/// results.csv + report.json in the configured directory.
fn write_outputs(config: &ExperimentConfig, report: &Report) -> Result<()> {
    let dir = PathBuf::from(&config.outputs.dir);
    std::fs::create_dir_all(&dir)?;
    write_results_csv(&dir.join("results.csv"), config, report)?;
    let f = File::create(dir.join("report.json"))?;
    serde_json::to_writer_pretty(BufWriter::new(f), report)
        .map_err(|e| Error::Config(e.to_string()))?;
    Ok(())
}

/// CSV schema v1: one row per (p, n, rep).
pub fn write_results_csv(path: &Path, config: &ExperimentConfig, report: &Report) -> Result<()> {
    let f = File::create(path)?;
    let mut w = BufWriter::new(f);
    writeln!(w, "# fracfield results v1")?;
    writeln!(w, "kernel,levy,d,n,p,v,s_n,r_n,h_hat,seed")?;
    let kernel = serde_json::to_string(&config.kernel).unwrap_or_default();
    let levy = serde_json::to_string(&config.levy).unwrap_or_default();
    let esc = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
    for row in &report.rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            esc(&kernel),
            esc(&levy),
            config.d,
            row.n,
            row.p,
            row.v,
            row.s_n,
            row.r_n.map_or(String::new(), |x| x.to_string()),
            row.h_hat.map_or(String::new(), |x| x.to_string()),
            config.seed,
        )?;
    }
    w.flush()?;
    Ok(())
}
