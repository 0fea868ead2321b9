//! Batch runs and parameter sweeps.
//!
//! Every run of a batch gets its own random stream seeded from
//! `(master_seed, run_index)`. Both fleet models and every sweep cell reuse
//! the same per-run seeds, so model contrasts are paired.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explorer::{evolvability, explore, nn_size, topology_metrics, ExplorationResult};
use crate::model::Alpha;
use crate::space::{FleetConfig, ModelKind};

/// Environment variable capping the number of worker threads for batches.
pub const THREADS_ENV: &str = "NEUTRALWALK_THREADS";

/// Path-length sample size used for per-run topology in batches.
pub const BATCH_TOPOLOGY_PAIRS: usize = 100;

/// Seed of run `run_index` under `master_seed`.
///
/// SplitMix64 finalizer over `master_seed + (run_index + 1) * golden`. The
/// finalizer is a bijection, so distinct run indices get distinct seeds.
pub fn derive_run_seed(master_seed: u64, run_index: u64) -> u64 {
    let mut z = master_seed.wrapping_add(run_index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mean, sample standard deviation, min and max.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn from_values(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self {
                mean: f64::NAN,
                std: f64::NAN,
                min: f64::NAN,
                max: f64::NAN,
            };
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self {
            mean,
            std,
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// Standard error of the mean over `n` samples.
    pub fn standard_error(&self, n: usize) -> f64 {
        if n == 0 {
            f64::NAN
        } else {
            self.std / (n as f64).sqrt()
        }
    }
}

/// Final numbers of one exploration run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub run_index: usize,
    pub seed: u64,
    pub nn_size: usize,
    pub evolvability: usize,
    pub steps_executed: usize,
    pub duplicates: usize,
    pub degree_average: f64,
    pub path_length_average: Option<f64>,
}

/// Per-step means of the cumulative discovery counters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStep {
    pub step: usize,
    pub nn_size: f64,
    pub unique_boundary_phenotypes: f64,
    pub duplicates: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunAggregate {
    pub config: FleetConfig,
    pub alpha: Alpha,
    pub max_steps: usize,
    pub master_seed: u64,
    pub run_count: usize,
    pub nn_size: Stats,
    pub evolvability: Stats,
    pub steps_executed: Stats,
    pub degree_average: Stats,
    /// Over the runs where a path length was defined.
    pub path_length_average: Option<Stats>,
    pub mean_series: Vec<MeanStep>,
    pub runs: Vec<RunSummary>,
}

struct RunOutput {
    summary: RunSummary,
    // (neutral, unique boundary phenotypes, duplicates) per step.
    series: Vec<[u32; 3]>,
}

/// One exploration with its derived seed, reduced to the numbers a batch keeps.
pub fn run_single(
    config: &FleetConfig,
    alpha: Alpha,
    max_steps: usize,
    seed: u64,
) -> Result<(ExplorationResult, RunSummary)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = explore(config, alpha, max_steps, &mut rng)?;
    let topology = topology_metrics(&result, BATCH_TOPOLOGY_PAIRS, &mut rng);
    let summary = RunSummary {
        run_index: 0,
        seed,
        nn_size: nn_size(&result),
        evolvability: evolvability(&result),
        steps_executed: result.steps_executed(),
        duplicates: result.duplicates(),
        degree_average: topology.degree_average,
        path_length_average: topology.path_length_average,
    };
    Ok((result, summary))
}

fn run_indexed(
    config: &FleetConfig,
    alpha: Alpha,
    max_steps: usize,
    master_seed: u64,
    run_index: usize,
) -> Result<RunOutput> {
    let seed = derive_run_seed(master_seed, run_index as u64);
    let (result, mut summary) =
        run_single(config, alpha, max_steps, seed).map_err(|e| Error::Run {
            run_index,
            seed,
            source: Box::new(e),
        })?;
    summary.run_index = run_index;
    let series = result
        .series()
        .iter()
        .map(|r| {
            [
                r.neutral_count as u32,
                r.unique_boundary_phenotypes as u32,
                r.duplicates as u32,
            ]
        })
        .collect();
    Ok(RunOutput { summary, series })
}

/// Thread pool honoring [`THREADS_ENV`]; falls back to rayon's default size.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::config(THREADS_ENV, format!("expected a positive integer, got {raw:?}")))?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start worker threads: {e}")))
}

/// Runs `runs` independent explorations and aggregates them. The result does
/// not depend on thread count or completion order.
pub fn run_batch(
    config: &FleetConfig,
    alpha: Alpha,
    max_steps: usize,
    runs: usize,
    master_seed: u64,
) -> Result<RunAggregate> {
    if runs == 0 {
        return Err(Error::Parameter("runs must be at least 1".into()));
    }
    if max_steps == 0 {
        return Err(Error::Parameter("max_steps must be at least 1".into()));
    }
    config.validate()?;
    let pool = thread_pool()?;
    let outputs: Vec<RunOutput> = pool.install(|| {
        (0..runs)
            .into_par_iter()
            .map(|i| run_indexed(config, alpha, max_steps, master_seed, i))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(aggregate(config, alpha, max_steps, master_seed, outputs))
}

fn aggregate(
    config: &FleetConfig,
    alpha: Alpha,
    max_steps: usize,
    master_seed: u64,
    outputs: Vec<RunOutput>,
) -> RunAggregate {
    let stat = |f: &dyn Fn(&RunSummary) -> f64| {
        Stats::from_values(&outputs.iter().map(|o| f(&o.summary)).collect::<Vec<_>>())
    };
    let path_lengths: Vec<f64> = outputs
        .iter()
        .filter_map(|o| o.summary.path_length_average)
        .collect();

    // Early-stopped runs hold their final counts for the remaining steps.
    let rows = outputs.iter().map(|o| o.series.len()).max().unwrap_or(0);
    let n = outputs.len() as f64;
    let mean_series = (0..rows)
        .map(|step| {
            let mut sums = [0f64; 3];
            for o in &outputs {
                let row = o.series.get(step).or_else(|| o.series.last()).expect("non-empty series");
                for k in 0..3 {
                    sums[k] += f64::from(row[k]);
                }
            }
            MeanStep {
                step,
                nn_size: sums[0] / n,
                unique_boundary_phenotypes: sums[1] / n,
                duplicates: sums[2] / n,
            }
        })
        .collect();

    RunAggregate {
        config: config.clone(),
        alpha,
        max_steps,
        master_seed,
        run_count: outputs.len(),
        nn_size: stat(&|s| s.nn_size as f64),
        evolvability: stat(&|s| s.evolvability as f64),
        steps_executed: stat(&|s| s.steps_executed as f64),
        degree_average: stat(&|s| s.degree_average),
        path_length_average: (!path_lengths.is_empty()).then(|| Stats::from_values(&path_lengths)),
        mean_series,
        runs: outputs.into_iter().map(|o| o.summary).collect(),
    }
}

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    FleetSize,
    Alpha,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::FleetSize => "fleet_size",
            SweepParameter::Alpha => "alpha",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub model: ModelKind,
    pub parameter: SweepParameter,
    /// The parameter value, formatted for output.
    pub value: String,
    pub aggregate: RunAggregate,
}

/// Both models at their base configuration: the paired baseline contrast.
pub fn run_models(
    base: &FleetConfig,
    models: &[ModelKind],
    alpha: Alpha,
    max_steps: usize,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<RunAggregate>> {
    models
        .iter()
        .map(|&m| run_batch(&base.with_model(m), alpha, max_steps, runs, master_seed))
        .collect()
}

fn check_ascending<T: PartialOrd + std::fmt::Debug>(key: &str, values: &[T]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::config(key, "sweep needs at least one value"));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::config(key, format!("values must be strictly ascending: {values:?}")));
    }
    Ok(())
}

/// Adds excess vehicles while demand stays fixed: vehicles beyond
/// `base.base_fleet_size` start unallocated.
pub fn sweep_fleet_size(
    base: &FleetConfig,
    models: &[ModelKind],
    sizes: &[usize],
    alpha: Alpha,
    max_steps: usize,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<SweepCell>> {
    check_ascending("fleet_sizes", sizes)?;
    if let Some(&s) = sizes.iter().find(|&&s| s < base.base_fleet_size) {
        return Err(Error::config(
            "fleet_sizes",
            format!("size {s} is below the base fleet size {}", base.base_fleet_size),
        ));
    }
    let mut configs = Vec::new();
    for &model in models {
        for &size in sizes {
            let config = FleetConfig {
                fleet_size: size,
                ..base.with_model(model)
            };
            config.validate()?;
            configs.push((model, size, config));
        }
    }
    configs
        .into_iter()
        .map(|(model, size, config)| {
            Ok(SweepCell {
                model,
                parameter: SweepParameter::FleetSize,
                value: size.to_string(),
                aggregate: run_batch(&config, alpha, max_steps, runs, master_seed)?,
            })
        })
        .collect()
}

pub fn sweep_alpha(
    base: &FleetConfig,
    models: &[ModelKind],
    alphas: &[Alpha],
    max_steps: usize,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<SweepCell>> {
    check_ascending("alphas", alphas)?;
    let mut cells = Vec::new();
    for &model in models {
        let config = base.with_model(model);
        for &alpha in alphas {
            cells.push(SweepCell {
                model,
                parameter: SweepParameter::Alpha,
                value: alpha.to_string(),
                aggregate: run_batch(&config, alpha, max_steps, runs, master_seed)?,
            });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(model: ModelKind) -> FleetConfig {
        FleetConfig {
            task_count: 6,
            fleet_size: 6,
            base_fleet_size: 6,
            capacity: 10,
            init_state_max: 5,
            ..FleetConfig::standard(model)
        }
    }

    #[test]
    fn run_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> = (0..10_000).map(|i| derive_run_seed(42, i)).collect();
        assert_eq!(seeds.len(), 10_000);
        assert_eq!(derive_run_seed(42, 7), derive_run_seed(42, 7));
        assert_ne!(derive_run_seed(42, 7), derive_run_seed(43, 7));
    }

    #[test]
    fn stats_basics() {
        let s = Stats::from_values(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.std - 1.290_994_448_735_805_6).abs() < 1e-12);
        assert_eq!((s.min, s.max), (1.0, 4.0));
        assert_eq!(Stats::from_values(&[7.0]).std, 0.0);
    }

    #[test]
    fn single_run_batch_has_zero_spread() {
        let c = small(ModelKind::Degenerate);
        let agg = run_batch(&c, Alpha::percent(5), 200, 1, 9).unwrap();
        let (result, _) = run_single(&c, Alpha::percent(5), 200, derive_run_seed(9, 0)).unwrap();
        assert_eq!(agg.run_count, 1);
        assert_eq!(agg.nn_size.mean, nn_size(&result) as f64);
        assert_eq!(agg.nn_size.std, 0.0);
        assert_eq!(agg.evolvability.mean, evolvability(&result) as f64);
        assert_eq!(agg.evolvability.std, 0.0);
        assert_eq!(agg.mean_series.len(), 201);
    }

    #[test]
    fn batches_are_reproducible() {
        let c = small(ModelKind::Redundant);
        let a = run_batch(&c, Alpha::percent(5), 150, 6, 1234).unwrap();
        let b = run_batch(&c, Alpha::percent(5), 150, 6, 1234).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_value_sweeps_reduce_to_batches() {
        let c = small(ModelKind::Redundant);
        let cells = sweep_fleet_size(&c, &ModelKind::ALL, &[6], Alpha::percent(5), 100, 3, 5).unwrap();
        assert_eq!(cells.len(), 2);
        for cell in &cells {
            let direct = run_batch(&c.with_model(cell.model), Alpha::percent(5), 100, 3, 5).unwrap();
            assert_eq!(cell.aggregate, direct);
        }
        let cells = sweep_alpha(&c, &[ModelKind::Degenerate], &[Alpha::percent(5)], 100, 3, 5).unwrap();
        assert_eq!(
            cells[0].aggregate,
            run_batch(&c.with_model(ModelKind::Degenerate), Alpha::percent(5), 100, 3, 5).unwrap()
        );
    }

    #[test]
    fn sweep_argument_checks() {
        let c = small(ModelKind::Degenerate);
        assert!(sweep_fleet_size(&c, &ModelKind::ALL, &[8, 7], Alpha::percent(5), 10, 1, 0).is_err());
        assert!(sweep_fleet_size(&c, &ModelKind::ALL, &[5], Alpha::percent(5), 10, 1, 0).is_err());
        // 6 tasks have only 15 distinct pairs.
        assert!(matches!(
            sweep_fleet_size(&c, &[ModelKind::Degenerate], &[6, 16], Alpha::percent(5), 10, 1, 0),
            Err(Error::Config { .. })
        ));
        assert!(sweep_alpha(&c, &ModelKind::ALL, &[Alpha::percent(5), Alpha::percent(2)], 10, 1, 0).is_err());
        assert!(run_batch(&c, Alpha::percent(5), 10, 0, 0).is_err());
    }
}
