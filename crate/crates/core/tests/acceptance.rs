//! One test per acceptance criterion; each prints its outcome line.

use equistat::harness::acceptance::{self, CriterionOutcome};

fn report(outcome: CriterionOutcome) {
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn criterion_01_table1_reproduction() {
    report(acceptance::criterion_table1());
}

#[test]
fn criterion_02_table2_reproduction() {
    report(acceptance::criterion_table2());
}

#[test]
fn criterion_03_table3_reproduction() {
    report(acceptance::criterion_table3());
}

#[test]
fn criterion_04_consistency_sweep() {
    report(acceptance::criterion_consistency());
}

#[test]
fn criterion_05_heavy_tail_contrast() {
    report(acceptance::criterion_heavy_tail());
}

#[test]
fn criterion_06_kernel_convergence() {
    report(acceptance::criterion_kernel());
}

#[test]
fn criterion_07_quantile_round_trip() {
    report(acceptance::criterion_round_trip());
}

#[test]
fn criterion_08_coin_group() {
    report(acceptance::criterion_coin_group());
}

#[test]
fn criterion_09_brute_force_oracles() {
    report(acceptance::criterion_oracles());
}

#[test]
fn criterion_10_determinism() {
    report(acceptance::criterion_determinism());
}
