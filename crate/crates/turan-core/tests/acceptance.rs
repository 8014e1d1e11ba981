//! Acceptance gate: one test per shipped guarantee, each printing a single
//! pass/fail line (run with `--nocapture` to see them). Every check is an
//! exact comparison; there are no tolerances anywhere.

use turan_core::sweeps::{
    edge_extremal_sweep, extremal_value_sweep, four_cycle_value_sweep, four_cycle_window_sweep,
    interop_sweep, matching_audit_sweep, recurrence_identity_sweep, remainder_slope_sweep,
    shape_sweep, switching_safety_sweep, unique_turan_sweep, SweepOutcome,
};

/// Candidate catalog: one graph6 line per isomorphism class on 8 vertices,
/// as a graph generator would emit it.
const CATALOG_8: &str = include_str!("data/graphs8.g6");

fn gate(tag: &str, outcomes: &[SweepOutcome]) {
    let cases: u64 = outcomes.iter().map(|o| o.cases).sum();
    let failed: u64 = outcomes.iter().map(|o| o.failed).sum();
    let verdict = if failed == 0 { "PASS" } else { "FAIL" };
    println!("{tag}: {verdict} [{cases} cases, {failed} failed]");
    if failed > 0 {
        let details: Vec<&String> = outcomes.iter().flat_map(|o| o.failures.iter()).collect();
        panic!("{tag} failed:\n{details:#?}");
    }
}

#[test]
fn criterion_01_search_matches_formula_under_matching_cap() {
    let out = extremal_value_sweep(7, true).unwrap();
    gate("criterion 01 — search vs formula, forbidden clique + matching cap", &[out]);
}

#[test]
fn criterion_02_balanced_blowup_is_the_unique_optimum() {
    let out = unique_turan_sweep(7).unwrap();
    gate("criterion 02 — forbidden clique alone: value and unique witness", &[out]);
}

#[test]
fn criterion_03_edge_count_regression() {
    let out = edge_extremal_sweep(7).unwrap();
    gate("criterion 03 — edge-count regression (r = 2)", &[out]);
}

#[test]
fn criterion_04_recurrences_growth_and_convexity() {
    let rec = recurrence_identity_sweep(50, 10).unwrap();
    let shape = shape_sweep(200, 8, 40).unwrap();
    gate("criterion 04 — count recurrences, growth, convexity", &[rec, shape]);
}

#[test]
fn criterion_05_blossom_agrees_with_dual_brute_force() {
    let out = matching_audit_sweep(7, 500, 0xbe26e).unwrap();
    gate("criterion 05 — blossom vs dual brute force + certificates", &[out]);
}

#[test]
fn criterion_06_four_cycle_with_one_edge_cap_matches_cap_only_formula() {
    let out = four_cycle_value_sweep(7).unwrap();
    gate("criterion 06 — four-cycle under one-edge matching cap", &[out]);
}

#[test]
fn criterion_07_four_cycle_window_has_zero_slope() {
    let out = four_cycle_window_sweep().unwrap();
    gate("criterion 07 — four-cycle bounded window, zero slope", &[out]);
}

#[test]
fn criterion_08_remainder_family_slope_matches_blowup_count() {
    let out = remainder_slope_sweep(7).unwrap();
    gate("criterion 08 — remainder-family slope coefficient", &[out]);
}

#[test]
fn criterion_09_switching_engine_safety() {
    let out = switching_safety_sweep(1000, 0x57ab1e, 7).unwrap();
    gate("criterion 09 — switching engine safety on 1000 random inputs", &[out]);
}

#[test]
fn criterion_10_graph6_interop_and_stream_reproduction() {
    let out = interop_sweep(1000, 0x6ea4, CATALOG_8).unwrap();
    gate("criterion 10 — graph6 round trips + stream spot values", &[out]);
}
