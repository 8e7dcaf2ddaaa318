//! Acceptance suite: every claim group gets a pass/fail line. The same
//! checks back the `verify-paper` CLI subcommand.

use circulant::accept::{run_criterion, CriterionReport};

fn check(index: usize) {
    let report: CriterionReport = run_criterion(index).unwrap();
    println!(
        "[{}] criterion {}: {} ({:.2}s) {}",
        if report.pass { "PASS" } else { "FAIL" },
        report.index,
        report.name,
        report.seconds,
        report.detail
    );
    assert!(report.pass, "criterion {} failed: {}", report.index, report.detail);
}

#[test]
fn criterion_1_fixed_witness_identities() {
    check(1);
}

#[test]
fn criterion_2_p3_and_3power_families() {
    check(2);
}

#[test]
fn criterion_3_9p_25p_for_7_11_13() {
    check(3);
}

#[test]
fn criterion_4_goodbad_lists() {
    check(4);
}

#[test]
fn criterion_5_good_prime_witnesses() {
    check(5);
}

#[test]
fn criterion_6_prime_power_tags() {
    check(6);
}

#[test]
fn criterion_7_search_consistency() {
    check(7);
}

#[test]
fn criterion_8_property_suites() {
    check(8);
}

#[test]
fn criterion_9_unit_tables() {
    check(9);
}
