use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use neutralwalk_ffi::*;

fn last_error() -> String {
    let p = nw_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn small_config() -> *mut NwConfig {
    let cfg = nw_config_new();
    unsafe {
        assert_eq!(nw_config_set_steps(cfg, 300), NwStatus::Ok);
        assert_eq!(nw_config_set_runs(cfg, 3), NwStatus::Ok);
        assert_eq!(nw_config_set_seed(cfg, 99), NwStatus::Ok);
    }
    cfg
}

#[test]
fn explore_round_trip() {
    let cfg = small_config();
    unsafe {
        let mut e = ptr::null_mut();
        assert_eq!(nw_explore(cfg, NwModel::Degenerate, &mut e), NwStatus::Ok);
        assert!(!e.is_null());
        let mut s = NwRunSummary::default();
        assert_eq!(nw_exploration_summary(e, &mut s), NwStatus::Ok);
        assert_eq!(s.steps_executed, 300);

        let len = nw_exploration_series_len(e);
        assert_eq!(len, 301);
        let mut last = NwStep::default();
        assert_eq!(nw_exploration_series_at(e, len - 1, &mut last), NwStatus::Ok);
        assert_eq!(last.step, 300);
        assert_eq!(last.nn_size, s.nn_size);
        assert_eq!(last.unique_boundary_phenotypes, s.evolvability);

        assert_eq!(nw_exploration_series_at(e, len, &mut last), NwStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));

        let dir = tempfile::tempdir().unwrap();
        let c_dir = CString::new(dir.path().to_str().unwrap()).unwrap();
        assert_eq!(nw_exploration_write(e, c_dir.as_ptr()), NwStatus::Ok);
        for f in ["series.csv", "summary.json", "edges.csv"] {
            assert!(dir.path().join(f).is_file(), "{f}");
        }

        // Same seed, same walk.
        let mut again = ptr::null_mut();
        assert_eq!(nw_explore(cfg, NwModel::Degenerate, &mut again), NwStatus::Ok);
        let mut t = NwRunSummary::default();
        nw_exploration_summary(again, &mut t);
        assert_eq!(s.nn_size, t.nn_size);
        assert_eq!(s.evolvability, t.evolvability);

        nw_exploration_free(e);
        nw_exploration_free(again);
        nw_config_free(cfg);
    }
}

#[test]
fn batch_round_trip() {
    let cfg = small_config();
    unsafe {
        let mut b = ptr::null_mut();
        assert_eq!(nw_batch(cfg, NwModel::Redundant, &mut b), NwStatus::Ok);
        let mut s = NwBatchSummary::default();
        assert_eq!(nw_batch_summary(b, &mut s), NwStatus::Ok);
        assert_eq!(s.runs, 3);
        assert_eq!(s.steps_executed_mean, 300.0);
        assert!(s.nn_size_mean >= 1.0);

        let dir = tempfile::tempdir().unwrap();
        let c_dir = CString::new(dir.path().to_str().unwrap()).unwrap();
        assert_eq!(nw_batch_write(b, c_dir.as_ptr()), NwStatus::Ok);
        assert!(dir.path().join("summary.json").is_file());
        nw_batch_free(b);
        nw_config_free(cfg);
    }
}

#[test]
fn errors_have_codes_and_messages() {
    unsafe {
        let mut e = ptr::null_mut();
        assert_eq!(nw_explore(ptr::null(), NwModel::Redundant, &mut e), NwStatus::NullPointer);
        assert!(e.is_null());
        assert!(last_error().contains("config"));

        let cfg = nw_config_new();
        assert_eq!(nw_config_set_alpha(cfg, -1.0), NwStatus::InvalidArgument);
        assert!(last_error().contains("alpha"));
        assert_eq!(nw_config_set_runs(cfg, 0), NwStatus::Config);
        assert_eq!(nw_config_set_runs(cfg, 2), NwStatus::Ok);
        assert!(nw_last_error_message().is_null());
        nw_config_free(cfg);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.toml");
        std::fs::write(&path, "speed = 3\n").unwrap();
        let c_path = CString::new(path.to_str().unwrap()).unwrap();
        let mut loaded = ptr::null_mut();
        assert_eq!(nw_config_from_file(c_path.as_ptr(), &mut loaded), NwStatus::Config);
        assert!(loaded.is_null());
        assert!(last_error().contains("speed"));

        let missing = CString::new(dir.path().join("none.toml").to_str().unwrap()).unwrap();
        assert_eq!(nw_config_from_file(missing.as_ptr(), &mut loaded), NwStatus::Io);

        // Null handles are accepted by the free functions.
        nw_config_free(ptr::null_mut());
        nw_exploration_free(ptr::null_mut());
        nw_batch_free(ptr::null_mut());
    }
}

#[test]
fn oracle_check_passes() {
    let mut passed = 0;
    assert_eq!(unsafe { nw_oracle_check(&mut passed) }, NwStatus::Ok);
    assert_eq!(passed, 1);
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "neutralwalk.h"

int main(void) {
    NwConfig *cfg = nw_config_new();
    if (nw_config_set_steps(cfg, 200) != NW_STATUS_OK) return 10;
    NwExploration *e = NULL;
    if (nw_explore(cfg, NW_MODEL_DEGENERATE, &e) != NW_STATUS_OK) return 11;
    NwRunSummary s;
    if (nw_exploration_summary(e, &s) != NW_STATUS_OK) return 12;
    if (s.steps_executed != 200 || s.nn_size < 1) return 13;
    if (nw_explore(NULL, NW_MODEL_REDUNDANT, &e) != NW_STATUS_NULL_POINTER) return 14;
    if (nw_last_error_message() == NULL) return 15;
    printf("%llu\n", (unsigned long long)s.nn_size);
    nw_exploration_free(e);
    nw_config_free(cfg);
    return 0;
}
"#;

fn find_cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
}

#[test]
fn header_compiles_and_links_from_c() {
    let Some(cc) = find_cc() else {
        eprintln!("no C compiler on PATH; skipping");
        return;
    };
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test-binary>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libneutralwalk_ffi.a");
    assert!(lib.is_file(), "static library missing at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    let nn: u64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!(nn >= 1);
}
