use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use neutralwalk::config::{parse_config, ExperimentConfig};
use neutralwalk::experiments::{
    run_models, run_single, sweep_alpha, sweep_fleet_size, SweepCell, SweepParameter,
};
use neutralwalk::oracle::oracle_check;
use neutralwalk::output::{describe, write_aggregate, write_run, write_sweep};
use neutralwalk::{Alpha, Error, ModelKind, MutationMode, Result};

/// Explore neutral networks of redundant and degenerate fleets.
///
/// Worker threads for batches and sweeps can be capped with NEUTRALWALK_THREADS.
#[derive(Parser)]
#[command(name = "neutralwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// One exploration per model; writes series.csv, summary.json, edges.csv.
    Explore,
    /// Independent runs per model; writes mean series, summaries and sweep.csv.
    Batch,
    /// Batches over the configured fleet sizes (excess vehicles); writes sweep.csv.
    SweepSize,
    /// Batches over the configured neutrality margins; writes sweep.csv.
    SweepAlpha,
    /// Compares walks and adaptation against brute-force oracles.
    OracleCheck,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Redundant,
    Degenerate,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    Replace,
    Delete,
}

#[derive(Args)]
struct Common {
    /// TOML file with experiment settings; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    model: Option<ModelArg>,
    /// Master seed [default: 12345].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Mutation attempts per exploration [default: 20000].
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// Runs per batch or sweep cell [default: 50].
    #[arg(long, global = true)]
    runs: Option<usize>,
    /// Neutrality margin in percent [default: 5].
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Number of vehicles; those beyond twice the task count start idle.
    #[arg(long, global = true)]
    fleet_size: Option<usize>,
    #[arg(long, global = true, default_value = "results")]
    out: PathBuf,
    #[arg(long, global = true, value_enum)]
    mutation: Option<MutationArg>,
}

fn load(common: &Common) -> Result<ExperimentConfig> {
    let mut cfg = match &common.config {
        Some(path) => parse_config(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(m) = common.model {
        cfg.set_models(match m {
            ModelArg::Redundant => vec![ModelKind::Redundant],
            ModelArg::Degenerate => vec![ModelKind::Degenerate],
            ModelArg::Both => ModelKind::ALL.to_vec(),
        });
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(steps) = common.steps {
        cfg.max_steps = steps;
    }
    if let Some(runs) = common.runs {
        cfg.runs = runs;
    }
    if let Some(a) = common.alpha {
        cfg.alpha = Alpha::from_f64(a).map_err(|e| Error::config("alpha", e.to_string()))?;
    }
    if let Some(v) = common.fleet_size {
        cfg.set_fleet_size(v);
    }
    if let Some(m) = common.mutation {
        cfg.fleet.mutation_mode = match m {
            MutationArg::Replace => MutationMode::TypeReplacement,
            MutationArg::Delete => MutationMode::Deletion,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

fn report_written(paths: &[PathBuf]) {
    for p in paths {
        eprintln!("wrote {}", p.display());
    }
}

fn explore_cmd(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    for &model in &cfg.models {
        let fleet = cfg.fleet.with_model(model);
        let (result, run) = run_single(&fleet, cfg.alpha, cfg.max_steps, cfg.seed)?;
        println!(
            "{:<10} nn_size={} evolvability={} steps={} duplicates={}",
            model.name(),
            run.nn_size,
            run.evolvability,
            run.steps_executed,
            run.duplicates
        );
        let dir = out.join(model.name());
        report_written(&write_run(&dir, &fleet, cfg.alpha, cfg.max_steps, &result, &run)?);
    }
    Ok(())
}

fn batch_cmd(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let aggregates = run_models(&cfg.fleet, &cfg.models, cfg.alpha, cfg.max_steps, cfg.runs, cfg.seed)?;
    let mut cells = Vec::new();
    for a in aggregates {
        println!("{}", describe(&a));
        report_written(&write_aggregate(&out.join(a.config.model.name()), &a)?);
        cells.push(SweepCell {
            model: a.config.model,
            parameter: SweepParameter::Alpha,
            value: a.alpha.to_string(),
            aggregate: a,
        });
    }
    report_written(&[write_sweep(out, &cells)?]);
    Ok(())
}

fn print_cells(cells: &[SweepCell]) {
    for c in cells {
        println!("{}={:<6} {}", c.parameter.name(), c.value, describe(&c.aggregate));
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Command::OracleCheck = cli.command {
        let report = oracle_check();
        for c in &report.checks {
            println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        if !failed.is_empty() {
            eprintln!("failing fixtures: {}", failed.join(", "));
        }
        return Ok(failed.is_empty());
    }

    let cfg = load(&cli.common)?;
    let out = cli.common.out.as_path();
    match cli.command {
        Command::Explore => explore_cmd(&cfg, out)?,
        Command::Batch => batch_cmd(&cfg, out)?,
        Command::SweepSize => {
            let cells = sweep_fleet_size(
                &cfg.fleet,
                &cfg.models,
                &cfg.fleet_sizes,
                cfg.alpha,
                cfg.max_steps,
                cfg.runs,
                cfg.seed,
            )?;
            print_cells(&cells);
            report_written(&[write_sweep(out, &cells)?]);
        }
        Command::SweepAlpha => {
            let cells = sweep_alpha(&cfg.fleet, &cfg.models, &cfg.alphas, cfg.max_steps, cfg.runs, cfg.seed)?;
            print_cells(&cells);
            report_written(&[write_sweep(out, &cells)?]);
        }
        Command::OracleCheck => unreachable!("handled above"),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
