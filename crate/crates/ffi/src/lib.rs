//! C interface to `neutralwalk`.
//!
//! Every fallible call returns an [`NwStatus`]; on failure the message is
//! available from [`nw_last_error_message`] on the same thread. Handles are
//! opaque and must be released with their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use neutralwalk::config::{parse_config, ExperimentConfig};
use neutralwalk::experiments::{run_batch, run_single, RunAggregate, RunSummary};
use neutralwalk::explorer::ExplorationResult;
use neutralwalk::oracle::oracle_check;
use neutralwalk::output::{write_aggregate, write_run};
use neutralwalk::{Alpha, Error, ModelKind, MutationMode};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Run = 4,
    Io = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NwModel {
    Redundant = 0,
    Degenerate = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NwMutation {
    Replace = 0,
    Delete = 1,
}

/// One row of the exploration series.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NwStep {
    pub step: u64,
    pub nn_size: u64,
    pub unique_boundary_phenotypes: u64,
    pub duplicates: u64,
}

/// Per-run numbers; the path length is NaN when no pair was connected.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NwRunSummary {
    pub nn_size: u64,
    pub evolvability: u64,
    pub steps_executed: u64,
    pub duplicates: u64,
    pub degree_average: f64,
    pub path_length_average: f64,
}

/// Batch means and standard deviations over runs.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NwBatchSummary {
    pub runs: u64,
    pub nn_size_mean: f64,
    pub nn_size_std: f64,
    pub evolvability_mean: f64,
    pub evolvability_std: f64,
    pub steps_executed_mean: f64,
    pub degree_average_mean: f64,
    pub path_length_average_mean: f64,
}

/// Experiment settings.
pub struct NwConfig(ExperimentConfig);

/// A finished exploration.
pub struct NwExploration {
    config: neutralwalk::FleetConfig,
    alpha: Alpha,
    max_steps: usize,
    result: ExplorationResult,
    summary: RunSummary,
}

/// Aggregated independent runs.
pub struct NwBatch(RunAggregate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NwStatus {
    match e {
        Error::Config { .. } => NwStatus::Config,
        Error::Io { .. } => NwStatus::Io,
        Error::Structure(_) | Error::Parameter(_) => NwStatus::InvalidArgument,
        _ => NwStatus::Run,
    }
}

fn fail(status: NwStatus, message: impl Into<String>) -> NwStatus {
    set_error(message.into());
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), NwStatus>) -> NwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NwStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(NwStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: neutralwalk::Result<T>) -> Result<T, NwStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, NwStatus> {
    p.as_ref().ok_or_else(|| fail(NwStatus::NullPointer, format!("{what} is null")))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, NwStatus> {
    p.as_mut().ok_or_else(|| fail(NwStatus::NullPointer, format!("{what} is null")))
}

unsafe fn path_arg<'a>(p: *const c_char, what: &str) -> Result<&'a Path, NwStatus> {
    if p.is_null() {
        return Err(fail(NwStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Path::new)
        .map_err(|_| fail(NwStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

fn model_kind(m: NwModel) -> ModelKind {
    match m {
        NwModel::Redundant => ModelKind::Redundant,
        NwModel::Degenerate => ModelKind::Degenerate,
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn nw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Default settings (seed 12345, 50 runs, 20000 steps, alpha 5%).
#[no_mangle]
pub extern "C" fn nw_config_new() -> *mut NwConfig {
    Box::into_raw(Box::new(NwConfig(ExperimentConfig::default())))
}

/// Reads a TOML configuration file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nw_config_from_file(path: *const c_char, out: *mut *mut NwConfig) -> NwStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = ptr::null_mut();
        let cfg = lib(parse_config(path_arg(path, "path")?))?;
        *out = Box::into_raw(Box::new(NwConfig(cfg)));
        Ok(())
    })
}

/// # Safety
/// `config` must come from `nw_config_new` or `nw_config_from_file`, or be null.
#[no_mangle]
pub unsafe extern "C" fn nw_config_free(config: *mut NwConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nw_config_set_seed(config: *mut NwConfig, seed: u64) -> NwStatus {
    guard(|| {
        deref_mut(config, "config")?.0.seed = seed;
        Ok(())
    })
}

/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nw_config_set_steps(config: *mut NwConfig, steps: u64) -> NwStatus {
    guard(|| {
        let cfg = &mut deref_mut(config, "config")?.0;
        cfg.max_steps = steps as usize;
        lib(cfg.validate())
    })
}

/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nw_config_set_runs(config: *mut NwConfig, runs: u64) -> NwStatus {
    guard(|| {
        let cfg = &mut deref_mut(config, "config")?.0;
        cfg.runs = runs as usize;
        lib(cfg.validate())
    })
}

/// Neutrality margin in percent, e.g. 5.0.
///
/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nw_config_set_alpha(config: *mut NwConfig, percent: f64) -> NwStatus {
    guard(|| {
        let cfg = &mut deref_mut(config, "config")?.0;
        cfg.alpha = lib(Alpha::from_f64(percent))?;
        Ok(())
    })
}

/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nw_config_set_fleet_size(config: *mut NwConfig, size: u64) -> NwStatus {
    guard(|| {
        let cfg = &mut deref_mut(config, "config")?.0;
        let previous = cfg.clone();
        cfg.set_fleet_size(size as usize);
        if let Err(e) = cfg.validate() {
            *cfg = previous;
            return lib(Err(e));
        }
        Ok(())
    })
}

/// # Safety
/// `config` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nw_config_set_mutation(config: *mut NwConfig, mutation: NwMutation) -> NwStatus {
    guard(|| {
        deref_mut(config, "config")?.0.fleet.mutation_mode = match mutation {
            NwMutation::Replace => MutationMode::TypeReplacement,
            NwMutation::Delete => MutationMode::Deletion,
        };
        Ok(())
    })
}

/// One exploration of `model` seeded with the configured seed.
///
/// # Safety
/// `config` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nw_explore(
    config: *const NwConfig,
    model: NwModel,
    out: *mut *mut NwExploration,
) -> NwStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = ptr::null_mut();
        let cfg = &deref(config, "config")?.0;
        let fleet = cfg.fleet.with_model(model_kind(model));
        let (result, summary) = lib(run_single(&fleet, cfg.alpha, cfg.max_steps, cfg.seed))?;
        *out = Box::into_raw(Box::new(NwExploration {
            config: fleet,
            alpha: cfg.alpha,
            max_steps: cfg.max_steps,
            result,
            summary,
        }));
        Ok(())
    })
}

/// # Safety
/// `exploration` must come from `nw_explore`, or be null.
#[no_mangle]
pub unsafe extern "C" fn nw_exploration_free(exploration: *mut NwExploration) {
    if !exploration.is_null() {
        drop(Box::from_raw(exploration));
    }
}

/// # Safety
/// `exploration` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nw_exploration_summary(
    exploration: *const NwExploration,
    out: *mut NwRunSummary,
) -> NwStatus {
    guard(|| {
        let s = &deref(exploration, "exploration")?.summary;
        *deref_mut(out, "out")? = NwRunSummary {
            nn_size: s.nn_size as u64,
            evolvability: s.evolvability as u64,
            steps_executed: s.steps_executed as u64,
            duplicates: s.duplicates as u64,
            degree_average: s.degree_average,
            path_length_average: s.path_length_average.unwrap_or(f64::NAN),
        };
        Ok(())
    })
}

/// Number of series rows (steps executed plus the initial row); 0 for null.
///
/// # Safety
/// `exploration` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nw_exploration_series_len(exploration: *const NwExploration) -> u64 {
    exploration.as_ref().map_or(0, |e| e.result.series().len() as u64)
}

/// # Safety
/// `exploration` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nw_exploration_series_at(
    exploration: *const NwExploration,
    index: u64,
    out: *mut NwStep,
) -> NwStatus {
    guard(|| {
        let series = deref(exploration, "exploration")?.result.series();
        let out = deref_mut(out, "out")?;
        let r = usize::try_from(index)
            .ok()
            .and_then(|i| series.get(i))
            .ok_or_else(|| fail(NwStatus::InvalidArgument, format!("index {index} out of range ({})", series.len())))?;
        *out = NwStep {
            step: r.step as u64,
            nn_size: r.neutral_count as u64,
            unique_boundary_phenotypes: r.unique_boundary_phenotypes as u64,
            duplicates: r.duplicates as u64,
        };
        Ok(())
    })
}

/// Writes series.csv, summary.json and edges.csv into `dir`.
///
/// # Safety
/// `exploration` must be a live handle and `dir` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nw_exploration_write(exploration: *const NwExploration, dir: *const c_char) -> NwStatus {
    guard(|| {
        let e = deref(exploration, "exploration")?;
        let dir = path_arg(dir, "dir")?;
        lib(write_run(dir, &e.config, e.alpha, e.max_steps, &e.result, &e.summary)).map(drop)
    })
}

/// Independent runs of `model`; honors NEUTRALWALK_THREADS.
///
/// # Safety
/// `config` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nw_batch(config: *const NwConfig, model: NwModel, out: *mut *mut NwBatch) -> NwStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = ptr::null_mut();
        let cfg = &deref(config, "config")?.0;
        let fleet = cfg.fleet.with_model(model_kind(model));
        let agg = lib(run_batch(&fleet, cfg.alpha, cfg.max_steps, cfg.runs, cfg.seed))?;
        *out = Box::into_raw(Box::new(NwBatch(agg)));
        Ok(())
    })
}

/// # Safety
/// `batch` must come from `nw_batch`, or be null.
#[no_mangle]
pub unsafe extern "C" fn nw_batch_free(batch: *mut NwBatch) {
    if !batch.is_null() {
        drop(Box::from_raw(batch));
    }
}

/// # Safety
/// `batch` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nw_batch_summary(batch: *const NwBatch, out: *mut NwBatchSummary) -> NwStatus {
    guard(|| {
        let a = &deref(batch, "batch")?.0;
        *deref_mut(out, "out")? = NwBatchSummary {
            runs: a.run_count as u64,
            nn_size_mean: a.nn_size.mean,
            nn_size_std: a.nn_size.std,
            evolvability_mean: a.evolvability.mean,
            evolvability_std: a.evolvability.std,
            steps_executed_mean: a.steps_executed.mean,
            degree_average_mean: a.degree_average.mean,
            path_length_average_mean: a.path_length_average.as_ref().map_or(f64::NAN, |s| s.mean),
        };
        Ok(())
    })
}

/// Writes the mean series.csv and summary.json into `dir`.
///
/// # Safety
/// `batch` must be a live handle and `dir` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nw_batch_write(batch: *const NwBatch, dir: *const c_char) -> NwStatus {
    guard(|| {
        let a = &deref(batch, "batch")?.0;
        lib(write_aggregate(path_arg(dir, "dir")?, a)).map(drop)
    })
}

/// Runs the brute-force oracle checks; `passed` receives 1 or 0.
///
/// # Safety
/// `passed` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nw_oracle_check(passed: *mut i32) -> NwStatus {
    guard(|| {
        let passed = deref_mut(passed, "passed")?;
        let report = oracle_check();
        *passed = i32::from(report.passed());
        if !report.passed() {
            let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            set_error(format!("failing checks: {}", names.join(", ")));
        }
        Ok(())
    })
}
