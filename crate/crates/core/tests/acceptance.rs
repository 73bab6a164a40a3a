//! End-to-end acceptance checks; one summary line per criterion.

use charcalc::verify::{
    check_adams_structure_law, check_blowup_identities, check_dim4_identity,
    check_kappa_equivalence, check_mi_search_soundness, check_mod_prime_power_mode,
    check_scheduler_end_to_end, check_steenrod_coefficient_chain, check_stch_dichotomy,
    check_toy_cross_validation, CheckResult,
};

fn report(index: usize, result: CheckResult) {
    println!(
        "criterion {:2}: {} — {} ({})",
        index,
        if result.pass { "PASS" } else { "FAIL" },
        result.name,
        result.detail
    );
    assert!(result.pass, "{}: {}", result.name, result.detail);
}

#[test]
fn criterion_01_kappa_formula_equivalence() {
    report(1, check_kappa_equivalence());
}

#[test]
fn criterion_02_steenrod_coefficient_chain() {
    report(2, check_steenrod_coefficient_chain());
}

#[test]
fn criterion_03_decomposability_dichotomy() {
    report(3, check_stch_dichotomy());
}

#[test]
fn criterion_04_mi_search_soundness() {
    report(4, check_mi_search_soundness());
}

#[test]
fn criterion_05_adams_structure_law() {
    report(5, check_adams_structure_law());
}

#[test]
fn criterion_06_blowup_identities() {
    report(6, check_blowup_identities());
}

#[test]
fn criterion_07_scheduler_end_to_end() {
    report(7, check_scheduler_end_to_end());
}

#[test]
fn criterion_08_mod_prime_power_mode() {
    report(8, check_mod_prime_power_mode());
}

#[test]
fn criterion_09_dim4_identity() {
    report(9, check_dim4_identity());
}

#[test]
fn criterion_10_toy_ring_cross_validation() {
    report(10, check_toy_cross_validation());
}
