//! Grid verification sweeps.
//!
//! Every driver here walks a parameter grid and compares two independent
//! routes to the same quantity: exhaustive search against closed formulas,
//! the blossom matcher against a brute-force dual, committed switching steps
//! against the constraints they must preserve. Results come back as a
//! [`SweepOutcome`] holding printable counterexamples, so the CLI and the
//! test suite share one implementation.

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::turan_graph;
use crate::error::Result;
use crate::formulas::{
    clique_matching_extremal, matching_extremal, monotonicity_convexity_check,
    turan_clique_count, turan_count_recurrence_check,
};
use crate::graph::Graph;
use crate::graph6::{decode, encode};
use crate::iso::{is_isomorphic, mask_to_graph};
use crate::matching::{
    berge_certificate, matching_number_by_deficiency, max_matching, verify_certificate,
};
use crate::oracle::{
    color_family, extremal_search, extremal_search_stream, is_family_free, ForbiddenSet,
};
use crate::symmetrize::symmetrize;

/// How many counterexample strings an outcome retains; the `failed` counter
/// is exact even when the list is truncated.
const FAILURE_DETAIL_CAP: usize = 50;

/// Aggregated result of one sweep: how many grid points ran, how many
/// disagreed, and printable details for the first few disagreements.
#[derive(Clone, Debug, Serialize)]
pub struct SweepOutcome {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl SweepOutcome {
    fn new(name: &str) -> Self {
        SweepOutcome {
            name: name.to_string(),
            cases: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < FAILURE_DETAIL_CAP {
                self.failures.push(detail());
            }
        }
    }

    /// Merge a batch produced in parallel: `cases` ran, `fails` disagreed.
    fn absorb(&mut self, cases: u64, fails: Vec<String>) {
        self.cases += cases;
        self.failed += fails.len() as u64;
        for f in fails {
            if self.failures.len() >= FAILURE_DETAIL_CAP {
                break;
            }
            self.failures.push(f);
        }
    }
}

/// Spot cases `(k, r, s)` exercised at n = 8 by [`extremal_value_sweep`] and
/// reproduced through the stream decoder by [`interop_sweep`].
pub const N8_SPOT_GRID: [(usize, usize, usize); 6] =
    [(3, 3, 2), (3, 3, 3), (4, 3, 3), (4, 4, 2), (5, 4, 2), (5, 5, 1)];

fn clique_matching_family(k: usize, s: usize) -> Result<ForbiddenSet> {
    ForbiddenSet::new(vec![Graph::complete(k + 1)?], Some(s))
}

// ---------------------------------------------------------------------------
// Search vs closed forms
// ---------------------------------------------------------------------------

/// Exhaustive search against the two-sided maximum formula over the full
/// desk-scale grid: 3 <= r <= k <= 5, 1 <= s <= 3, max(2s+1, k) <= n <=
/// `n_max`, plus the n = 8 spot grid when `include_spots` is set.
pub fn extremal_value_sweep(n_max: usize, include_spots: bool) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("clique count under matching cap: search vs formula");
    let mut grid: Vec<(usize, usize, usize, usize)> = Vec::new();
    for k in 3..=5 {
        for r in 3..=k {
            for s in 1..=3 {
                for n in (2 * s + 1).max(k)..=n_max {
                    grid.push((n, k, r, s));
                }
            }
        }
    }
    if include_spots {
        for (k, r, s) in N8_SPOT_GRID {
            grid.push((8, k, r, s));
        }
    }
    for (n, k, r, s) in grid {
        let fam = clique_matching_family(k, s)?;
        let report = extremal_search(n, r, &fam)?;
        let expect = clique_matching_extremal(n, k, r, s)?;
        out.record(report.value == expect.value, || {
            format!(
                "n={n} k={k} r={r} s={s}: search found {}, formula says {}",
                report.value, expect.value
            )
        });
    }
    Ok(out)
}

/// Exhaustive search against the balanced blow-up count for a forbidden
/// clique alone, including uniqueness of the optimizer: for 3 <= r <= k <=
/// n <= `n_max` the witness list must be exactly one isomorphism class, the
/// balanced complete k-partite graph.
pub fn unique_turan_sweep(n_max: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("forbidden clique alone: value and unique optimizer");
    for n in 3..=n_max {
        for k in 3..=n {
            for r in 3..=k {
                let fam = ForbiddenSet::new(vec![Graph::complete(k + 1)?], None)?;
                let report = extremal_search(n, r, &fam)?;
                let expect = turan_clique_count(n, k, r)?;
                let value_ok = report.value == expect;
                let witness_ok = report.witnesses.len() == 1
                    && is_isomorphic(&decode(&report.witnesses[0])?, &turan_graph(n, k)?);
                out.record(value_ok && witness_ok, || {
                    format!(
                        "n={n} k={k} r={r}: search {} (witnesses {}), formula {}",
                        report.value,
                        report.witnesses.len(),
                        expect
                    )
                });
            }
        }
    }
    Ok(out)
}

/// The r = 2 regression: edge counts under a forbidden clique and the
/// matching cap, k from 2, same grid shape as [`extremal_value_sweep`].
pub fn edge_extremal_sweep(n_max: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("edge count under matching cap: search vs formula");
    for k in 2..=5 {
        for s in 1..=3 {
            for n in (2 * s + 1).max(k)..=n_max {
                let fam = clique_matching_family(k, s)?;
                let report = extremal_search(n, 2, &fam)?;
                let expect = clique_matching_extremal(n, k, 2, s)?;
                out.record(report.value == expect.value, || {
                    format!(
                        "n={n} k={k} s={s}: search found {}, formula says {}",
                        report.value, expect.value
                    )
                });
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Identity and shape audits
// ---------------------------------------------------------------------------

/// Both clique-count recurrences over r <= k <= `k_max`, k <= t <= `t_max`.
pub fn recurrence_identity_sweep(t_max: usize, k_max: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("clique-count recurrences");
    let report = turan_count_recurrence_check(t_max, k_max)?;
    out.cases = report.cases_checked;
    if let Some(f) = report.first_failure {
        out.failed = 1;
        out.failures.push(format!(
            "{:?} at t={} k={} r={}: lhs {} vs rhs {}",
            f.identity, f.t, f.k, f.r, f.lhs, f.rhs
        ));
    }
    Ok(out)
}

/// Growth and convexity of the two bound families across a wide grid:
/// strict growth of the join-side count in the core size, non-decreasing
/// first differences of the split bound, endpoint dominance.
pub fn shape_sweep(n_max: usize, k_max: usize, s_max: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("growth and convexity of bound families");
    for k in 3..=k_max {
        for r in 3..=k {
            for s in 1..=s_max {
                let lo = 2 * s + 1;
                if lo > n_max {
                    continue;
                }
                let mut ns = vec![lo, lo + 4, (lo + n_max) / 2, n_max];
                ns.retain(|&n| (lo..=n_max).contains(&n));
                ns.sort_unstable();
                ns.dedup();
                for n in ns {
                    let report = monotonicity_convexity_check(n, k, r, s)?;
                    out.record(report.pass(), || {
                        format!("n={n} k={k} r={r} s={s}: {:?}", report.first_failure)
                    });
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Matching cross-validation
// ---------------------------------------------------------------------------

/// Compare the blossom matcher against the subset brute-force dual optimum
/// and round-trip the certificate, returning a failure string on any
/// disagreement.
fn audit_matching(g: &Graph) -> Option<String> {
    let nu = max_matching(g).size();
    let check = || -> Result<Option<String>> {
        let dual = matching_number_by_deficiency(g)?;
        if nu != dual {
            return Ok(Some(format!(
                "{g:?}: blossom {nu} vs dual brute force {dual}"
            )));
        }
        match berge_certificate(g, nu)? {
            None => Ok(Some(format!("{g:?}: no certificate at its own bound {nu}"))),
            Some(cert) => {
                if verify_certificate(g, &cert, nu)? && cert.s_witness == nu {
                    Ok(None)
                } else {
                    Ok(Some(format!("{g:?}: certificate failed verification")))
                }
            }
        }
    };
    match check() {
        Ok(v) => v,
        Err(e) => Some(format!("{g:?}: internal error {e}")),
    }
}

/// Blossom vs brute force: every graph on up to `n_exhaustive` vertices by
/// edge mask, then `random_cases` seeded graphs on 8..=16 vertices.
pub fn matching_audit_sweep(
    n_exhaustive: usize,
    random_cases: usize,
    seed: u64,
) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("matching number: blossom vs dual brute force");
    for n in 0..=n_exhaustive {
        let pairs = n * n.saturating_sub(1) / 2;
        let total = 1u64 << pairs;
        let fails: Vec<String> = (0..total)
            .into_par_iter()
            .filter_map(|mask| audit_matching(&mask_to_graph(n, u128::from(mask))))
            .collect();
        out.absorb(total, fails);
    }

    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..random_cases {
        let n = rng.random_range(8..=16usize);
        let p: f64 = rng.random();
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        let fail = audit_matching(&g);
        out.record(fail.is_none(), || fail.clone().unwrap());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Bounded-pattern sweeps
// ---------------------------------------------------------------------------

/// Four-cycle forbidden with a one-edge matching cap: the cap already rules
/// the four-cycle out, so the search must match the cap-only formula.
pub fn four_cycle_value_sweep(n_max: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("four-cycle under one-edge matching cap");
    let c4 = Graph::cycle(4)?;
    for n in 3..=n_max {
        let fam = ForbiddenSet::new(vec![c4.clone()], Some(1))?;
        let report = extremal_search(n, 3, &fam)?;
        let expect = matching_extremal(n, 3, 1)?;
        out.record(report.value == expect.value, || {
            format!(
                "n={n}: search found {}, cap-only formula says {}",
                report.value, expect.value
            )
        });
    }
    Ok(out)
}

/// Four-cycle forbidden with a two-edge matching cap over n in {6,7,8}: the
/// triangle count must not grow with n (zero per-vertex slope); the constant
/// itself is observed, not asserted.
pub fn four_cycle_window_sweep() -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("four-cycle bounded window: zero slope");
    let c4 = Graph::cycle(4)?;
    let mut values = Vec::new();
    for n in [6usize, 7, 8] {
        let fam = ForbiddenSet::new(vec![c4.clone()], Some(2))?;
        values.push((n, extremal_search(n, 3, &fam)?.value));
    }
    let baseline = values[0].1;
    for (n, v) in values {
        out.record(v == baseline, || {
            format!("n={n}: value {v} deviates from the n=6 value {baseline}")
        });
    }
    Ok(out)
}

/// The slope coefficient of the linear regime ties back to a balanced
/// blow-up count: searching with the one-class-deleted remainders of a
/// forbidden clique K_{k+1} must reproduce the (k-1)-part count exactly.
pub fn remainder_slope_sweep(s_max: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("remainder-family slope coefficient");
    for k in [3usize, 4] {
        let family = color_family(&Graph::complete(k + 1)?)?;
        let mut orders = vec![3usize, k];
        orders.dedup();
        for r in orders {
            for s in 1..=s_max {
                let fam = ForbiddenSet::new(family.members.clone(), None)?;
                let report = extremal_search(s, r - 1, &fam)?;
                let expect = turan_clique_count(s, k - 1, r - 1)?;
                out.record(report.value == expect, || {
                    format!(
                        "k={k} r={r} s={s}: search found {}, blow-up count {}",
                        report.value, expect
                    )
                });
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Switching safety
// ---------------------------------------------------------------------------

/// Seeded random constraint-preservation audit of the switching engine:
/// every committed step must keep the graph family-free and the count
/// non-decreasing, and where exhaustive search is cheap the final count may
/// not beat the true optimum.
pub fn switching_safety_sweep(cases: usize, seed: u64, oracle_cap: usize) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("switching engine safety");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut optimum_memo: HashMap<(usize, usize, usize), u128> = HashMap::new();
    let mut done = 0usize;
    while done < cases {
        let n = rng.random_range(3..=10usize);
        let k = if rng.random_bool(0.5) { 3 } else { 4 };
        let s = rng.random_range(2..=3usize);
        let pairs = n * (n - 1) / 2;
        let mask: u128 = rng.random_range(0..(1u128 << pairs));
        let g = mask_to_graph(n, mask);
        let fam = clique_matching_family(k, s)?;
        if !is_family_free(&g, &fam) {
            continue;
        }
        done += 1;

        let start = g.count_cliques(3).value;
        let (final_graph, trace) = symmetrize(&g, &fam, 3, 64)?;
        let mut violation: Option<String> = None;
        let mut prev = start;
        for (i, step) in trace.steps.iter().enumerate() {
            if step.count_before != prev || step.count_after < step.count_before {
                violation = Some(format!("step {i}: counts {prev} -> {} broken", step.count_after));
                break;
            }
            match decode(&step.graph6) {
                Ok(snapshot) if is_family_free(&snapshot, &fam) => {}
                _ => {
                    violation = Some(format!("step {i}: snapshot violates the family"));
                    break;
                }
            }
            prev = step.count_after;
        }
        if violation.is_none() && final_graph.count_cliques(3).value != prev {
            violation = Some("final count disagrees with the last step".into());
        }
        if violation.is_none() && n <= oracle_cap {
            let best = match optimum_memo.get(&(n, k, s)) {
                Some(&v) => v,
                None => {
                    let v = extremal_search(n, 3, &fam)?.value;
                    optimum_memo.insert((n, k, s), v);
                    v
                }
            };
            if prev > best {
                violation = Some(format!("final count {prev} exceeds the optimum {best}"));
            }
        }
        out.record(violation.is_none(), || {
            format!("n={n} k={k} s={s} mask={mask:#x}: {}", violation.clone().unwrap())
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Interop
// ---------------------------------------------------------------------------

/// graph6 round-trips on seeded random graphs up to 62 vertices, then the
/// n = 8 spot values recomputed through the stream decoder over a candidate
/// catalog (one line per isomorphism class on 8 vertices).
pub fn interop_sweep(round_trips: usize, seed: u64, catalog8: &str) -> Result<SweepOutcome> {
    let mut out = SweepOutcome::new("graph6 interop");
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..round_trips {
        let n = rng.random_range(0..=62usize);
        let p: f64 = rng.random();
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        let back = decode(&encode(&g)?)?;
        out.record(back == g, || format!("round trip broke a graph on {n} vertices"));
    }

    for (k, r, s) in N8_SPOT_GRID {
        let fam = clique_matching_family(k, s)?;
        let report = extremal_search_stream(8, r, &fam, catalog8)?;
        let expect = clique_matching_extremal(8, k, r, s)?;
        out.record(report.value == expect.value, || {
            format!(
                "k={k} r={r} s={s}: stream found {}, formula says {}",
                report.value, expect.value
            )
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_sweep_passes_at_small_scale() {
        let out = extremal_value_sweep(6, false).unwrap();
        assert!(out.pass(), "{:?}", out.failures);
        assert!(out.cases > 0);
    }

    #[test]
    fn unique_turan_sweep_passes_at_small_scale() {
        let out = unique_turan_sweep(6).unwrap();
        assert!(out.pass(), "{:?}", out.failures);
        assert_eq!(out.cases, 1 + 3 + 6 + 10);
    }

    #[test]
    fn edge_sweep_passes_at_small_scale() {
        let out = edge_extremal_sweep(6).unwrap();
        assert!(out.pass(), "{:?}", out.failures);
    }

    #[test]
    fn recurrence_and_shape_sweeps_pass_reduced() {
        let rec = recurrence_identity_sweep(20, 6).unwrap();
        assert!(rec.pass(), "{:?}", rec.failures);
        let shape = shape_sweep(60, 6, 10).unwrap();
        assert!(shape.pass(), "{:?}", shape.failures);
    }

    #[test]
    fn matching_audit_passes_reduced() {
        let out = matching_audit_sweep(5, 60, 7).unwrap();
        assert!(out.pass(), "{:?}", out.failures);
        assert_eq!(out.cases, 1 + 1 + 2 + 8 + 64 + 1024 + 60);
    }

    #[test]
    fn bounded_pattern_sweeps_pass_reduced() {
        let a = four_cycle_value_sweep(6).unwrap();
        assert!(a.pass(), "{:?}", a.failures);
        let b = remainder_slope_sweep(5).unwrap();
        assert!(b.pass(), "{:?}", b.failures);
    }

    #[test]
    fn switching_safety_passes_reduced() {
        let out = switching_safety_sweep(60, 0xbead, 6).unwrap();
        assert!(out.pass(), "{:?}", out.failures);
        assert_eq!(out.cases, 60);
    }

    #[test]
    fn interop_sweep_passes_reduced() {
        let catalog: Vec<Graph> = crate::iso::enumerate_nonisomorphic(8).unwrap();
        let text = crate::graph6::encode_lines(&catalog).unwrap();
        let out = interop_sweep(120, 0x9000, &text).unwrap();
        assert!(out.pass(), "{:?}", out.failures);
        assert_eq!(out.cases, 120 + N8_SPOT_GRID.len() as u64);
    }
}
