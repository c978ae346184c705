//! Command-line front end: simulate fields, compute power-variation
//! statistics, evaluate limit objects, and run full verification
//! experiments from a JSON config.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use fracfield::grid::rect_increments;
use fracfield::harness::{run_experiment, ExperimentConfig};
use fracfield::io::{read_field_binary, write_field_binary, write_field_csv};
use fracfield::kernels::Theorem;
use fracfield::levy::LevyMeasureSpec;
use fracfield::limits::{
    ergodic_limit, regime_of, sample_derivative_pv_limit, sample_limit_z_thm1i,
    sample_limit_z_thm2i,
};
use fracfield::sim::{fft_increment_field, simulate_grid, SimMethod};
use fracfield::stats::{estimate_h, power_variation};
use fracfield::{Error, RandomStream};

#[derive(Parser)]
#[command(name = "fracfield", version, about = "fractional random field laboratory")]
struct Cli {
    /// Override the seed from the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (values never depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Escalate truncation warnings to errors.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one field grid and write it in the binary layout.
    Simulate(SimulateArgs),
    /// Power variation of a stored field grid.
    Pv(PvArgs),
    /// Change-of-frequency ratio and Hurst estimate of a stored grid.
    Estimate(PvArgs),
    /// Evaluate the limit objects for every supported power in the config.
    Limit(LimitArgs),
    /// Run the full experiment and write report.json / results.csv.
    Verify(VerifyArgs),
    /// Time the FFT increment path against the direct reference path.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output path for the binary grid.
    #[arg(long)]
    out: PathBuf,
    /// Also write a CSV copy (small grids only).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Grid size; defaults to the last ladder entry of the config.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct PvArgs {
    /// Binary grid produced by `simulate`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    p: f64,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long)]
    config: PathBuf,
    /// Number of limit draws for the distributional regimes.
    #[arg(long, default_value_t = 200)]
    draws: usize,
    /// Write the JSON rows here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides the config's outputs.dir).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// log2 lattice sizes to time.
    #[arg(long, value_delimiter = ',', default_values_t = vec![10usize, 14usize])]
    size_exp: Vec<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized");
        }
    }
    let result = match &cli.command {
        Command::Simulate(a) => cmd_simulate(&cli, a),
        Command::Pv(a) => cmd_pv(a),
        Command::Estimate(a) => cmd_estimate(a),
        Command::Limit(a) => cmd_limit(&cli, a),
        Command::Verify(a) => cmd_verify(&cli, a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_config(cli: &Cli, path: &PathBuf) -> Result<ExperimentConfig, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut cfg = ExperimentConfig::from_json(&text)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.strict {
        cfg.strict = true;
    }
    Ok(cfg)
}

fn cmd_simulate(cli: &Cli, args: &SimulateArgs) -> Result<(), Error> {
    let cfg = load_config(cli, &args.config)?;
    let n = args.n.unwrap_or(*cfg.n_ladder.last().unwrap());
    let stream = RandomStream::from_seed(cfg.seed).child(0).child(0);
    let mut field = simulate_grid(&cfg.kernel, &cfg.levy, n, &cfg.method, &stream)?;
    field.meta.seed = cfg.seed;
    write_field_binary(&args.out, &field)?;
    println!(
        "wrote {} ({}^{} + boundary sites, {} bytes)",
        args.out.display(),
        n,
        cfg.d,
        12 + 8 * field.values.len()
    );
    if let Some(csv) = &args.csv {
        write_field_csv(csv, &field)?;
        println!("wrote {}", csv.display());
    }
    Ok(())
}

fn cmd_pv(args: &PvArgs) -> Result<(), Error> {
    let field = read_field_binary(&args.input)?;
    let inc = rect_increments(&field);
    let pv = power_variation(&inc, args.p)?;
    let s_n = if pv.v > 0.0 {
        pv.v.ln() / (field.n as f64).ln()
    } else {
        f64::NAN
    };
    println!("# fracfield pv v1");
    println!("d,n,p,v,s_n");
    println!("{},{},{},{},{}", field.d, field.n, args.p, pv.v, s_n);
    Ok(())
}

fn cmd_estimate(args: &PvArgs) -> Result<(), Error> {
    let field = read_field_binary(&args.input)?;
    let est = estimate_h(&field, args.p)?;
    println!("# fracfield estimate v1");
    println!("d,n,p,r_n,h_hat");
    println!(
        "{},{},{},{},{}",
        field.d, field.n, args.p, est.r_n, est.h_hat
    );
    Ok(())
}

#[derive(Serialize)]
struct LimitRow {
    p: f64,
    regime: Theorem,
    kind: String,
    value: f64,
    stderr: Option<f64>,
    numeric_bound: f64,
    bias_bound: f64,
    draws: usize,
    note: String,
}

fn cmd_limit(cli: &Cli, args: &LimitArgs) -> Result<(), Error> {
    let cfg = load_config(cli, &args.config)?;
    let mut rows: Vec<LimitRow> = Vec::new();
    for &p in &cfg.p_grid {
        let regime = regime_of(&cfg.kernel, p, &cfg.levy);
        match regime.theorem {
            Theorem::T1ii | Theorem::T2ii => {
                let c = ergodic_limit(&cfg.kernel, &cfg.levy, p, 1e-6)?;
                rows.push(LimitRow {
                    p,
                    regime: regime.theorem,
                    kind: "ergodic_constant".into(),
                    value: c.m_p,
                    stderr: None,
                    numeric_bound: c.numeric_bound,
                    bias_bound: 0.0,
                    draws: 0,
                    note: format!(
                        "stable_moment={} increment_integrals={:?} derivative_integrals={:?}",
                        c.stable_moment, c.increment_integrals, c.derivative_integrals
                    ),
                });
            }
            Theorem::T1i | Theorem::T2i => {
                let mut rng = RandomStream::from_seed(cfg.seed ^ 0x5a5a_5a5a).child(9999);
                let mut values = Vec::with_capacity(args.draws);
                let mut numeric: f64 = 0.0;
                let mut bias: f64 = 0.0;
                for _ in 0..args.draws {
                    let z = if regime.k == cfg.d {
                        sample_limit_z_thm1i(
                            &cfg.kernel,
                            &cfg.levy,
                            p,
                            cfg.jump_floor,
                            1e-6,
                            &mut rng,
                        )?
                    } else {
                        sample_limit_z_thm2i(
                            &cfg.kernel,
                            &cfg.levy,
                            p,
                            cfg.spatial_radius,
                            cfg.jump_floor,
                            1e-6,
                            &mut rng,
                        )?
                    };
                    numeric = numeric.max(z.numeric_bound);
                    bias = bias.max(z.bias_bound);
                    values.push(z.value);
                }
                let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
                let var = values
                    .iter()
                    .map(|v| (v - mean) * (v - mean))
                    .sum::<f64>()
                    / values.len().max(1) as f64;
                rows.push(LimitRow {
                    p,
                    regime: regime.theorem,
                    kind: "jump_limit_draws".into(),
                    value: mean,
                    stderr: Some((var / values.len().max(1) as f64).sqrt()),
                    numeric_bound: numeric,
                    bias_bound: bias,
                    draws: values.len(),
                    note: "mean of Z draws".into(),
                });
            }
            Theorem::T1iii | Theorem::T2iii => {
                let radius = match &cfg.method {
                    SimMethod::ShotNoise { support_radius, .. } => *support_radius,
                    _ => 2.0,
                };
                let mut rng = RandomStream::from_seed(cfg.seed ^ 0x5a5a_5a5a).child(4242);
                let z =
                    sample_derivative_pv_limit(&cfg.kernel, &cfg.levy, p, radius, 1e-6, &mut rng)?;
                rows.push(LimitRow {
                    p,
                    regime: regime.theorem,
                    kind: "derivative_pv_sample".into(),
                    value: z.value,
                    stderr: None,
                    numeric_bound: z.numeric_bound,
                    bias_bound: z.bias_bound,
                    draws: 1,
                    note: format!("{} jumps", z.jump_count),
                });
            }
            Theorem::Boundary | Theorem::Unsupported => {
                rows.push(LimitRow {
                    p,
                    regime: regime.theorem,
                    kind: "skipped".into(),
                    value: f64::NAN,
                    stderr: None,
                    numeric_bound: 0.0,
                    bias_bound: 0.0,
                    draws: 0,
                    note: regime.note.clone(),
                });
            }
        }
    }
    let json = serde_json::to_string_pretty(&rows).map_err(|e| Error::Config(e.to_string()))?;
    match &args.out {
        Some(path) => std::fs::write(path, json)?,
        None => println!("{json}"),
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<(), Error> {
    let mut cfg = load_config(cli, &args.config)?;
    if let Some(dir) = &args.out {
        cfg.outputs.dir = dir.to_string_lossy().into_owned();
    }
    let report = run_experiment(&cfg)?;
    println!("config {}", &report.config_hash[..16]);
    for r in &report.regimes {
        if r.skipped {
            println!("p={}: skipped ({:?}: {})", r.p, r.theorem, r.note);
        } else {
            println!(
                "p={}: {:?} k={} rate_exponent={:.4}",
                r.p, r.theorem, r.k, r.rate_exponent
            );
        }
    }
    for s in &report.slopes {
        println!(
            "p={}: slope {:.4} predicted {:.4} (gap {:+.4})",
            s.p,
            s.slope,
            s.predicted,
            s.slope - s.predicted
        );
    }
    for c in &report.comparisons {
        println!(
            "p={} n={} {}: statistic {:.5} reference {:.5} {}",
            c.p, c.n, c.kind, c.statistic, c.reference, c.note
        );
    }
    for w in &report.warnings {
        println!("warning: {w}");
    }
    if !cfg.outputs.dir.is_empty() {
        println!("report written to {}", cfg.outputs.dir);
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Error> {
    let kernel = fracfield::kernels::KernelSpec::Lfss {
        hs: vec![0.7],
        beta: 1.5,
    };
    let spec = LevyMeasureSpec::Stable { beta: 1.5 };
    println!("n,direct_ms,fft_ms,speedup");
    for &e in &args.size_exp {
        let n = 1usize << e;
        let stream = RandomStream::from_seed(1);
        let t0 = Instant::now();
        let field = simulate_grid(
            &kernel,
            &spec,
            n,
            &SimMethod::Discretized {
                oversample: 1,
                support_radius: 0.5,
            },
            &stream,
        )?;
        let _ = rect_increments(&field);
        let direct = t0.elapsed().as_secs_f64() * 1e3;
        let t1 = Instant::now();
        let _ = fft_increment_field(&kernel, &spec, n, 1, 0.5, &stream)?;
        let fft = t1.elapsed().as_secs_f64() * 1e3;
        println!("{n},{direct:.2},{fft:.2},{:.1}", direct / fft);
    }
    Ok(())
}
