//! CSV and JSON result files.
//!
//! Formatting never depends on the locale, floats carry 6 significant digits
//! and every file ends with exactly one newline. Files are written to a
//! temporary sibling and renamed into place, so a failed write leaves no
//! partial file behind.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::experiments::{RunAggregate, RunSummary, Stats, SweepCell};
use crate::explorer::ExplorationResult;
use crate::model::Alpha;
use crate::space::FleetConfig;

pub const SERIES_FILE: &str = "series.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const EDGES_FILE: &str = "edges.csv";
pub const SWEEP_FILE: &str = "sweep.csv";

pub const SERIES_HEADER: [&str; 4] = ["step", "nn_size", "unique_boundary_phenotypes", "duplicates"];
pub const EDGES_HEADER: [&str; 3] = ["src_id", "dst_id", "target_class"];

/// `%g`-style rendering with 6 significant digits: trailing zeros dropped,
/// exponent form outside `1e-4 ..= 1e6`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    // Rounding to 6 digits first fixes the exponent, 9.999995 -> 1e1 included.
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A float rounded to 6 significant digits, as a JSON number.
fn json_float(x: f64) -> Value {
    let rounded: f64 = format_float(x).parse().unwrap_or(f64::NAN);
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

/// Writes `contents` to `path` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn csv_bytes<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn json_bytes(value: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("plain JSON value");
    s.push('\n');
    s.into_bytes()
}

pub fn series_csv(result: &ExplorationResult) -> Vec<u8> {
    csv_bytes(
        &SERIES_HEADER,
        result.series().iter().map(|r| {
            [r.step, r.neutral_count, r.unique_boundary_phenotypes, r.duplicates].map(|v| v.to_string())
        }),
    )
}

/// Step-wise means over the runs of a batch.
pub fn mean_series_csv(aggregate: &RunAggregate) -> Vec<u8> {
    csv_bytes(
        &SERIES_HEADER,
        aggregate.mean_series.iter().map(|r| {
            [
                r.step.to_string(),
                format_float(r.nn_size),
                format_float(r.unique_boundary_phenotypes),
                format_float(r.duplicates),
            ]
        }),
    )
}

pub fn edges_csv(result: &ExplorationResult) -> Vec<u8> {
    csv_bytes(
        &EDGES_HEADER,
        result.edges().iter().map(|e| {
            [
                e.src.to_string(),
                e.dst.to_string(),
                result.node(e.dst).class.name().to_string(),
            ]
        }),
    )
}

fn summary_head(config: &FleetConfig, alpha: Alpha, max_steps: usize, seed: u64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("model".into(), json!(config.model.name()));
    m.insert("task_count".into(), json!(config.task_count));
    m.insert("fleet_size".into(), json!(config.fleet_size));
    m.insert("alpha".into(), json_float(alpha.as_f64()));
    m.insert("max_steps".into(), json!(max_steps));
    m.insert("seed".into(), json!(seed));
    m
}

/// Summary of a single exploration.
pub fn run_summary_json(config: &FleetConfig, alpha: Alpha, max_steps: usize, run: &RunSummary) -> Vec<u8> {
    let mut m = summary_head(config, alpha, max_steps, run.seed);
    m.insert("nn_size".into(), json!(run.nn_size));
    m.insert("evolvability".into(), json!(run.evolvability));
    m.insert("steps_executed".into(), json!(run.steps_executed));
    m.insert("degree_average".into(), json_float(run.degree_average));
    m.insert(
        "path_length_average".into(),
        run.path_length_average.map_or(Value::Null, json_float),
    );
    json_bytes(&Value::Object(m))
}

/// Summary of a batch: run means, keyed like a single run; `seed` is the
/// master seed.
pub fn aggregate_summary_json(aggregate: &RunAggregate) -> Vec<u8> {
    let a = aggregate;
    let mut m = summary_head(&a.config, a.alpha, a.max_steps, a.master_seed);
    m.insert("nn_size".into(), json_float(a.nn_size.mean));
    m.insert("evolvability".into(), json_float(a.evolvability.mean));
    m.insert("steps_executed".into(), json_float(a.steps_executed.mean));
    m.insert("degree_average".into(), json_float(a.degree_average.mean));
    m.insert(
        "path_length_average".into(),
        a.path_length_average.map_or(Value::Null, |s| json_float(s.mean)),
    );
    json_bytes(&Value::Object(m))
}

const SWEEP_METRICS: [&str; 5] = [
    "nn_size",
    "evolvability",
    "steps_executed",
    "degree_average",
    "path_length_average",
];

pub fn sweep_csv(cells: &[SweepCell]) -> Vec<u8> {
    let mut header = vec!["model".to_string(), "parameter".into(), "value".into(), "runs".into()];
    for m in SWEEP_METRICS {
        header.push(format!("{m}_mean"));
        header.push(format!("{m}_std"));
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv_bytes(
        &header,
        cells.iter().map(|c| {
            let a = &c.aggregate;
            let mut row = vec![
                c.model.name().to_string(),
                c.parameter.name().to_string(),
                c.value.clone(),
                a.run_count.to_string(),
            ];
            let stats: [Option<&Stats>; 5] = [
                Some(&a.nn_size),
                Some(&a.evolvability),
                Some(&a.steps_executed),
                Some(&a.degree_average),
                a.path_length_average.as_ref(),
            ];
            for s in stats {
                match s {
                    Some(s) => {
                        row.push(format_float(s.mean));
                        row.push(format_float(s.std));
                    }
                    None => row.extend([String::new(), String::new()]),
                }
            }
            row
        }),
    )
}

/// Files of one exploration: `series.csv`, `summary.json`, `edges.csv`.
pub fn write_run(
    dir: &Path,
    config: &FleetConfig,
    alpha: Alpha,
    max_steps: usize,
    result: &ExplorationResult,
    run: &RunSummary,
) -> Result<Vec<PathBuf>> {
    let files = [
        (SERIES_FILE, series_csv(result)),
        (SUMMARY_FILE, run_summary_json(config, alpha, max_steps, run)),
        (EDGES_FILE, edges_csv(result)),
    ];
    write_all(dir, files)
}

/// Files of one batch: mean `series.csv` and `summary.json`.
pub fn write_aggregate(dir: &Path, aggregate: &RunAggregate) -> Result<Vec<PathBuf>> {
    write_all(
        dir,
        [
            (SERIES_FILE, mean_series_csv(aggregate)),
            (SUMMARY_FILE, aggregate_summary_json(aggregate)),
        ],
    )
}

pub fn write_sweep(dir: &Path, cells: &[SweepCell]) -> Result<PathBuf> {
    let path = dir.join(SWEEP_FILE);
    write_atomic(&path, &sweep_csv(cells))?;
    Ok(path)
}

fn write_all<const N: usize>(dir: &Path, files: [(&str, Vec<u8>); N]) -> Result<Vec<PathBuf>> {
    files
        .into_iter()
        .map(|(name, bytes)| {
            let path = dir.join(name);
            write_atomic(&path, &bytes)?;
            Ok(path)
        })
        .collect()
}

/// Human-readable one-liner per aggregate, for terminal output.
pub fn describe(aggregate: &RunAggregate) -> String {
    let a = aggregate;
    let mut s = String::new();
    let _ = write!(
        s,
        "{:<10} runs={} nn_size={} (sd {}) evolvability={} (sd {})",
        a.config.model.name(),
        a.run_count,
        format_float(a.nn_size.mean),
        format_float(a.nn_size.std),
        format_float(a.evolvability.mean),
        format_float(a.evolvability.std),
    );
    s
}
