use std::path::Path;
use std::process::{Command, Output};

fn neutralwalk(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_neutralwalk"));
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("NEUTRALWALK_THREADS", n),
        None => cmd.env_remove("NEUTRALWALK_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn ok(args: &[&str], threads: Option<&str>) {
    let out = neutralwalk(args, threads);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn read(p: impl AsRef<Path>) -> String {
    std::fs::read_to_string(p.as_ref()).unwrap_or_else(|e| panic!("{}: {e}", p.as_ref().display()))
}

fn single_trailing_newline(s: &str) -> bool {
    s.ends_with('\n') && !s.ends_with("\n\n")
}

#[test]
fn explore_writes_deterministic_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        ok(&["explore", "--steps", "800", "--seed", "3", "--out", out.to_str().unwrap()], None);
    }
    for model in ["redundant", "degenerate"] {
        for file in ["series.csv", "summary.json", "edges.csv"] {
            let (x, y) = (read(a.join(model).join(file)), read(b.join(model).join(file)));
            assert_eq!(x, y, "{model}/{file}");
            assert!(single_trailing_newline(&x));
        }
        let series = read(a.join(model).join("series.csv"));
        let mut lines = series.lines();
        assert_eq!(lines.next(), Some("step,nn_size,unique_boundary_phenotypes,duplicates"));
        assert_eq!(lines.count(), 801);
        let edges = read(a.join(model).join("edges.csv"));
        assert_eq!(edges.lines().next(), Some("src_id,dst_id,target_class"));
        assert!(edges.lines().skip(1).all(|l| l.ends_with(",neutral") || l.ends_with(",boundary")));

        let summary: serde_json::Value = serde_json::from_str(&read(a.join(model).join("summary.json"))).unwrap();
        let mut keys: Vec<&str> = summary.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            [
                "alpha", "degree_average", "evolvability", "fleet_size", "max_steps", "model", "nn_size",
                "path_length_average", "seed", "steps_executed", "task_count"
            ]
        );
        assert_eq!(summary["model"], model);
        assert_eq!(summary["seed"], 3);
        assert_eq!(summary["max_steps"], 800);
    }
}

#[test]
fn exhausted_fixture_gives_one_series_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tiny.toml");
    std::fs::write(
        &cfg,
        "model = \"redundant\"\ntask_count = 2\nfleet_size = 2\ncapacity = 4\ninit_state_max = 1\nmutation_mode = \"replace\"\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    ok(&["explore", "--config", cfg.to_str().unwrap(), "--steps", "1", "--out", out.to_str().unwrap()], None);
    let series = read(out.join("redundant").join("series.csv"));
    assert_eq!(series, "step,nn_size,unique_boundary_phenotypes,duplicates\n0,1,0,0\n");
    assert!(!out.join("degenerate").exists());
}

#[test]
fn batch_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        ok(&["batch", "--steps", "400", "--runs", "4", "--out", out.to_str().unwrap()], Some(threads));
        out
    };
    let (a, b) = (run("one", "1"), run("three", "3"));
    for f in ["sweep.csv", "redundant/series.csv", "redundant/summary.json", "degenerate/summary.json"] {
        assert_eq!(read(a.join(f)), read(b.join(f)), "{f}");
    }
    let sweep = read(a.join("sweep.csv"));
    let rows: Vec<&str> = sweep.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("model,parameter,value,runs,nn_size_mean,nn_size_std,evolvability_mean"));
    assert!(rows[1].starts_with("redundant,alpha,5,4,"));
    assert!(rows[2].starts_with("degenerate,alpha,5,4,"));
}

#[test]
fn sweeps_write_one_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(&cfg, "fleet_sizes = [32, 40]\nalphas = [0, 10]\nruns = 2\nmax_steps = 300\n").unwrap();
    for (cmd, param) in [("sweep-size", "fleet_size"), ("sweep-alpha", "alpha")] {
        let out = dir.path().join(cmd);
        ok(&[cmd, "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
        let sweep = read(out.join("sweep.csv"));
        let rows: Vec<&str> = sweep.lines().skip(1).collect();
        assert_eq!(rows.len(), 4, "{cmd}");
        assert!(rows.iter().all(|r| r.split(',').nth(1) == Some(param)));
    }
}

#[test]
fn bad_configuration_fails_with_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "runs = 3\nspeed = 9\n").unwrap();
    let out = neutralwalk(&["batch", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`speed`"));
    assert!(!dir.path().join("sweep.csv").exists());

    let out = neutralwalk(&["batch", "--alpha", "-3"], None);
    assert!(!out.status.success());
    let out = neutralwalk(&["batch", "--runs", "2", "--steps", "10"], Some("zero"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NEUTRALWALK_THREADS"));
}

#[test]
fn oracle_check_passes() {
    let out = neutralwalk(&["oracle-check"], None);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}
