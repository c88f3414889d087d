//! Acceptance battery: each criterion runs as its own test, so the harness
//! prints one pass/fail line per criterion. Wall-clock limits are enforced
//! where stated. The group-enumeration cache lives under the target tmpdir
//! unless `TORELLI_CACHE_DIR` points elsewhere.

use std::path::PathBuf;

use torelli::battery::{run_criterion, time_limit};

fn cache_dir() -> PathBuf {
    if let Ok(dir) = std::env::var("TORELLI_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("torelli-cache")
}

fn run(id: usize) {
    let result = run_criterion(id, Some(&cache_dir()));
    println!("criterion {:>2}: {}", result.id, result.label);
    for check in &result.checks {
        println!(
            "  [{}] {}: expected {} got {}",
            if check.pass { "ok" } else { "FAIL" },
            check.name,
            check.expected,
            check.actual
        );
    }
    println!("  elapsed: {:.3?}", result.elapsed);
    assert!(
        result.passed(),
        "criterion {} ({}) failed: {:?}",
        result.id,
        result.label,
        result.failed_checks()
    );
    if let Some(limit) = time_limit(id) {
        assert!(
            result.elapsed <= limit,
            "criterion {} took {:.3?}, over the {:?} limit",
            result.id,
            result.elapsed,
            limit
        );
    }
}

#[test]
fn criterion_01_form_census() {
    run(1);
}

#[test]
fn criterion_02_orbit_count_and_enumeration() {
    run(2);
}

#[test]
fn criterion_03_involution_value_uniqueness() {
    run(3);
}

#[test]
fn criterion_04_witness_values_and_pairing() {
    run(4);
}

#[test]
fn criterion_05_reduction_suites() {
    run(5);
}

#[test]
fn criterion_06_invariance_batteries() {
    run(6);
}

#[test]
fn criterion_07_splitting_criterion() {
    run(7);
}

#[test]
fn criterion_08_independence_certificate() {
    run(8);
}

#[test]
fn criterion_09_generic_class() {
    run(9);
}

#[test]
fn criterion_10_torus_realizations() {
    run(10);
}
