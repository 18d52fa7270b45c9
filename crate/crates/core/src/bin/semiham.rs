use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use semiham::harness::{
    monte_carlo, read_json, run, structure_report, verify_run, write_checkpoints_csv, write_json,
    write_trajectory_csv, RunConfig,
};
use semiham::lowerbound::{eval_f, find_beta};
use semiham::ode::{
    compute_alpha_star, compute_sigma_chain, AlphaOptions, ChainOptions, DEFAULT_MARGINS,
};
use semiham::strategy::{CutoffRule, StrategyConfig, StrategyKind};
use semiham::Error;

const EXIT_THRESHOLD: u8 = 2;
const EXIT_CLEANUP: u8 = 3;
const EXIT_CONFIG: u8 = 4;

#[derive(Parser)]
#[command(
    name = "semiham",
    version,
    about = "Hamiltonian cycles in the semi-random graph process"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a strategy, once or as seeded replicas.
    Simulate(SimulateArgs),
    /// Integrate the randomized system or the degree-greedy phase chain.
    Ode(OdeArgs),
    /// Evaluate the lower-bound function or count wasting structures.
    Bound(BoundArgs),
    /// Run a strategy with a full consistency audit after every step.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long, default_value = "three_stage")]
    strategy: String,
    /// Number of degree-greedy phases.
    #[arg(long = "N", default_value_t = StrategyConfig::default().n_phases)]
    n_phases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    replicas: usize,
    /// `.csv` writes the checkpoint table of a single run, anything else JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Steps between checkpoints (default max(1, n/1000)).
    #[arg(long)]
    record_every: Option<u64>,
    /// n_over_ln_n, sqrt_n, quarter_power_n or a vertex count.
    #[arg(long, default_value = "1")]
    cutoff: String,
    #[arg(long, default_value_t = StrategyConfig::default().safety_multiplier)]
    safety: f64,
    /// Length of a uniform_baseline run in units of n.
    #[arg(long, default_value_t = 1.0)]
    baseline_steps_per_n: f64,
    /// Read the whole configuration from a file written by --dump-config.
    #[arg(long, conflicts_with_all = ["n", "strategy", "n_phases", "seed", "replicas", "out", "record_every", "cutoff", "safety", "baseline_steps_per_n"])]
    config: Option<PathBuf>,
    /// Write the effective configuration and exit.
    #[arg(long)]
    dump_config: Option<PathBuf>,
}

/// Everything `simulate` needs; what `--dump-config` writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulateConfig {
    run: RunConfig,
    replicas: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OdeSystemArg {
    Randomized,
    Chain,
}

#[derive(Args)]
struct OdeArgs {
    #[arg(long, value_enum)]
    system: OdeSystemArg,
    #[arg(long = "N", default_value_t = 0)]
    n_phases: usize,
    /// Saturation margin: x stops at 1 - margin.
    #[arg(long, default_value_t = 1e-6)]
    margin: f64,
    #[arg(long, default_value_t = 1e-5)]
    step: f64,
    /// `.csv` writes the trajectory (randomized) or the phase ends (chain).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "what")]
struct BoundChoice {
    /// The root of f(s) = 1.
    #[arg(long)]
    beta: bool,
    /// f at the given s.
    #[arg(long, value_name = "S")]
    f: Option<f64>,
    /// Count wasting structures on uniform-baseline histories.
    #[arg(long)]
    structures: bool,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    what: BoundChoice,
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    t_over_n: f64,
    #[arg(long, default_value_t = 50)]
    replicas: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Audit every step (the only check available).
    #[arg(long, required = true)]
    invariants: bool,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "three_stage")]
    strategy: String,
    #[arg(long = "N", default_value_t = StrategyConfig::default().n_phases)]
    n_phases: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Ode(a) => ode(a),
        Command::Bound(a) => bound(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidConfig(_) | Error::Bracket { .. } => EXIT_CONFIG,
                Error::CleanupFailed { .. } => EXIT_CLEANUP,
                _ => 1,
            })
        }
    }
}

fn simulate(a: SimulateArgs) -> semiham::Result<u8> {
    let config = match &a.config {
        Some(path) => read_json::<SimulateConfig>(path)?,
        None => {
            let mut run = RunConfig::new(a.n, a.seed, a.strategy.parse::<StrategyKind>()?);
            run.n_phases = a.n_phases;
            run.record_every = a.record_every;
            run.stage2_cutoff = a.cutoff.parse::<CutoffRule>()?;
            run.safety_multiplier = a.safety;
            run.baseline_steps_per_n = a.baseline_steps_per_n;
            run.out = a.out.clone();
            SimulateConfig {
                run: run.effective(),
                replicas: a.replicas,
            }
        }
    };
    config.run.validate()?;
    if let Some(path) = &a.dump_config {
        write_json(path, &config)?;
        println!("wrote {}", path.display());
        return Ok(0);
    }
    let out = config.run.out.as_deref();
    if config.replicas == 1 {
        match run(&config.run) {
            Ok(summary) => {
                println!(
                    "n={} strategy={} N={} seed={} steps/n={:.6} hamiltonian={}",
                    config.run.n,
                    config.run.strategy,
                    config.run.n_phases,
                    config.run.seed,
                    summary.steps_per_n,
                    summary.hamiltonian
                );
                if let Some(path) = out {
                    if is_csv(path) {
                        write_checkpoints_csv(path, &summary.checkpoints)?;
                    } else {
                        write_json(path, &summary)?;
                    }
                }
                Ok(0)
            }
            Err(failure) => {
                if let (Some(path), Some(partial)) = (out, failure.partial.as_ref()) {
                    if is_csv(path) {
                        write_checkpoints_csv(path, &partial.checkpoints)?;
                    } else {
                        write_json(path, partial)?;
                    }
                }
                Err(failure.error)
            }
        }
    } else {
        let report = monte_carlo(&config.run, config.replicas)?;
        println!(
            "n={} strategy={} N={} replicas={} succeeded={} mean steps/n={:.6} sd={:.6} all hamiltonian={}",
            config.run.n,
            config.run.strategy,
            config.run.n_phases,
            config.replicas,
            report.succeeded,
            report.mean_steps_per_n,
            report.sd_steps_per_n,
            report.all_hamiltonian
        );
        for r in report.replicas.iter().filter(|r| r.error.is_some()) {
            eprintln!(
                "replica {} (seed {}): {}",
                r.index,
                r.seed,
                r.error.as_deref().unwrap_or("")
            );
        }
        if let Some(path) = out {
            write_json(path, &report)?;
        }
        let failed_cleanup = report.replicas.iter().any(|r| {
            r.error
                .as_deref()
                .is_some_and(|e| e.starts_with("clean-up failed"))
        });
        Ok(if failed_cleanup { EXIT_CLEANUP } else { 0 })
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn ode(a: OdeArgs) -> semiham::Result<u8> {
    if !(a.margin > 0.0 && a.margin < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "margin {} outside (0, 1)",
            a.margin
        )));
    }
    match a.system {
        OdeSystemArg::Randomized => {
            let mut margins: Vec<f64> = DEFAULT_MARGINS
                .iter()
                .copied()
                .filter(|&m| m > a.margin)
                .collect();
            margins.push(a.margin);
            let opts = AlphaOptions {
                step: a.step,
                ..AlphaOptions::default()
            };
            let alpha = compute_alpha_star(a.n_phases, &margins, opts)?;
            println!(
                "N={} alpha*={:.7} exit={:?} sigma_N={:.7} x(sigma_N)={:.7}",
                a.n_phases,
                alpha.value,
                alpha.exit_reason,
                alpha.chain.last_sigma(),
                alpha.chain.x
            );
            for (m, s) in &alpha.sweep {
                println!("  margin {m:e}: exit s = {s:.7}");
            }
            if let Some(x) = alpha.extrapolated {
                println!("  extrapolated to margin 0: {x:.7}");
            }
            if let Some(path) = &a.out {
                if is_csv(path) {
                    write_trajectory_csv(path, &alpha.trajectory)?;
                } else {
                    write_json(path, &alpha)?;
                }
            }
        }
        OdeSystemArg::Chain => {
            let opts = ChainOptions {
                step: a.step,
                margin: a.margin,
                ..ChainOptions::default()
            };
            let chain = compute_sigma_chain(a.n_phases, opts)?;
            println!(
                "N={} phases completed={} sigma_N={:.7} x={:.7} r={:.7} stopped={:?}",
                a.n_phases,
                chain.sigma.len(),
                chain.last_sigma(),
                chain.x,
                chain.r,
                chain.stopped
            );
            if let Some(path) = &a.out {
                if is_csv(path) {
                    let file = std::fs::File::create(path).map_err(|source| Error::Io {
                        path: path.clone(),
                        source,
                    })?;
                    let mut w = csv::Writer::from_writer(file);
                    let row_err = |e: csv::Error| Error::Format {
                        path: path.clone(),
                        message: e.to_string(),
                    };
                    w.write_record(["q", "sigma"]).map_err(row_err)?;
                    for (i, s) in chain.sigma.iter().enumerate() {
                        w.write_record([(i + 1).to_string(), format!("{s:.16e}")])
                            .map_err(row_err)?;
                    }
                    w.flush().map_err(|source| Error::Io {
                        path: path.clone(),
                        source,
                    })?;
                } else {
                    write_json(path, &chain)?;
                }
            }
        }
    }
    Ok(0)
}

fn bound(a: BoundArgs) -> semiham::Result<u8> {
    if a.what.beta {
        let b = find_beta()?;
        println!("beta={b:.10} f(beta)-1={:e}", eval_f(b) - 1.0);
    } else if let Some(s) = a.what.f {
        if !(s >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "s = {s} must be non-negative"
            )));
        }
        println!("f({s})={:.15}", eval_f(s));
    } else {
        let report = structure_report(a.n, a.t_over_n, a.replicas, a.seed)?;
        println!("n={} t/n={} replicas={}", a.n, a.t_over_n, a.replicas);
        println!(
            "{:<4} {:>12} {:>12} {:>12} {:>8}",
            "", "mean/n", "std err", "limit", "z"
        );
        for row in &report.rows {
            println!(
                "{:<4} {:>12.6} {:>12.6} {:>12.6} {:>8.2}",
                format!("{:?}", row.structure),
                row.mean,
                row.std_err,
                row.closed_form,
                row.z_score()
            );
        }
        if let Some(path) = &a.out {
            write_json(path, &report)?;
        }
    }
    Ok(0)
}

fn verify(a: VerifyArgs) -> semiham::Result<u8> {
    debug_assert!(a.invariants);
    let config =
        RunConfig::new(a.n, a.seed, a.strategy.parse::<StrategyKind>()?).with_phases(a.n_phases);
    let report = verify_run(&config)?;
    println!(
        "n={} seed={} steps={} hamiltonian={} violations={}",
        report.n, report.seed, report.steps, report.hamiltonian, report.violation_count
    );
    for (t, msg) in &report.violations {
        println!("  step {t}: {msg}");
    }
    if let Some(path) = &a.out {
        write_json(path, &report)?;
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
        return Ok(EXIT_CLEANUP);
    }
    Ok(if report.violation_count == 0 {
        0
    } else {
        EXIT_THRESHOLD
    })
}
