//! Exact integer evaluation of the clique-count formulas behind the
//! extremal results: balanced-multipartite clique counts, the value of the
//! independent-join construction, the per-split upper bound used in the
//! matching argument, and the max-of-two-candidates extremal values.
//!
//! Everything here is checked u128 arithmetic. Domain violations and
//! overflow surface as typed errors, never as clamped or wrapped values.

use serde::{Deserialize, Serialize};

use crate::constructions::{balanced_partition, matching_turan_partition, PartitionSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::smallest_color_class;

// ---------------------------------------------------------------------------
// Elementary counts
// ---------------------------------------------------------------------------

/// Binomial coefficient with overflow detection. Zero when `k > n`.
pub fn binomial(n: u128, k: u128) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // exact at every step: i consecutive integers divide by i!
        acc = acc
            .checked_mul(n - k + i)
            .ok_or(Error::Overflow { context: "binomial coefficient" })?
            / i;
    }
    Ok(acc)
}

/// Number of cliques of order `r` in the balanced complete `k`-partite
/// graph on `t` vertices: with q = ⌊t/k⌋ and m = t mod k, sum over the
/// number i of large parts used, binom(m,i)·binom(k−m,r−i)·(q+1)^i·q^(r−i).
/// Degenerate indices follow the graph: 1 when r = 0, else 0 when r > k
/// or t < r.
pub fn turan_clique_count(t: usize, k: usize, r: usize) -> Result<u128> {
    if r == 0 {
        return Ok(1);
    }
    if r > k || t < r {
        return Ok(0);
    }
    let over = || Error::Overflow { context: "balanced split clique count" };
    let (q, m) = ((t / k) as u128, (t % k) as u128);
    let (k, r) = (k as u128, r as u128);
    let mut total: u128 = 0;
    for i in 0..=r.min(m) {
        let exp_big = u32::try_from(i).map_err(|_| over())?;
        let exp_small = u32::try_from(r - i).map_err(|_| over())?;
        let term = binomial(m, i)?
            .checked_mul(binomial(k - m, r - i)?)
            .and_then(|x| x.checked_mul((q + 1).checked_pow(exp_big)?))
            .and_then(|x| x.checked_mul(q.checked_pow(exp_small)?))
            .ok_or_else(over)?;
        total = total.checked_add(term).ok_or_else(over)?;
    }
    Ok(total)
}

/// Clique count of the graph joining an independent set of `n - t`
/// vertices to the balanced complete `(k-1)`-partite graph on `t`
/// vertices: each clique either stays inside the split or extends one of
/// its `(r-1)`-cliques by an independent vertex.
pub fn matching_turan_count(n: usize, k: usize, r: usize, t: usize) -> Result<u128> {
    if n < t {
        return Err(Error::domain("independent part would have negative size"));
    }
    if k < 2 {
        return Err(Error::domain("need at least two parts: one independent, one split"));
    }
    if r == 0 {
        return Ok(1);
    }
    let cross = ((n - t) as u128)
        .checked_mul(turan_clique_count(t, k - 1, r - 1)?)
        .ok_or(Error::Overflow { context: "independent-join clique count" })?;
    cross
        .checked_add(turan_clique_count(t, k - 1, r)?)
        .ok_or(Error::Overflow { context: "independent-join clique count" })
}

/// Upper bound on the clique count of a graph split by a Berge set of
/// size `b`: a balanced part on the 2s−b+1 core vertices plus extensions
/// of the set's own cliques into the n−(2s−b+1) remaining vertices.
pub fn berge_split_bound(n: usize, k: usize, r: usize, s: usize, b: usize) -> Result<u128> {
    if b > s {
        return Err(Error::domain("split size cannot exceed the matching bound"));
    }
    if n < 2 * s + 1 {
        return Err(Error::domain("need n at least 2s + 1"));
    }
    if r == 0 {
        return Ok(1);
    }
    let core = turan_clique_count(2 * s - b + 1, k, r)?;
    let ext = ((n - (2 * s - b + 1)) as u128)
        .checked_mul(turan_clique_count(b, k - 1, r - 1)?)
        .ok_or(Error::Overflow { context: "split bound" })?;
    core.checked_add(ext)
        .ok_or(Error::Overflow { context: "split bound" })
}

// ---------------------------------------------------------------------------
// Extremal values
// ---------------------------------------------------------------------------

/// Which of the two candidate constructions attains the extremal value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalSide {
    Turan,
    Join,
    Tie,
}

impl std::fmt::Display for ExtremalSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExtremalSide::Turan => "turan-side",
            ExtremalSide::Join => "join-side",
            ExtremalSide::Tie => "tie",
        })
    }
}

/// An extremal count together with the construction(s) attaining it.
/// Witness partitions with totals below the ambient vertex count are
/// padded with isolated vertices when materialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalValue {
    pub value: u128,
    pub dominant: ExtremalSide,
    pub witnesses: Vec<PartitionSpec>,
}

fn pick_side(
    turan_term: u128,
    join_term: u128,
    turan_spec: PartitionSpec,
    join_spec: PartitionSpec,
) -> ExtremalValue {
    match turan_term.cmp(&join_term) {
        std::cmp::Ordering::Greater => ExtremalValue {
            value: turan_term,
            dominant: ExtremalSide::Turan,
            witnesses: vec![turan_spec],
        },
        std::cmp::Ordering::Less => ExtremalValue {
            value: join_term,
            dominant: ExtremalSide::Join,
            witnesses: vec![join_spec],
        },
        std::cmp::Ordering::Equal => {
            let mut witnesses = vec![turan_spec];
            if witnesses[0] != join_spec {
                witnesses.push(join_spec);
            }
            ExtremalValue { value: turan_term, dominant: ExtremalSide::Tie, witnesses }
        }
    }
}

/// Most cliques of order `r` in an `n`-vertex graph with no clique on
/// `k + 1` vertices and no matching of `s + 1` edges: the larger of the
/// balanced graph on 2s+1 vertices (plus isolated vertices) and the
/// independent-join construction.
pub fn clique_matching_extremal(n: usize, k: usize, r: usize, s: usize) -> Result<ExtremalValue> {
    if n < 2 * s + 1 {
        return Err(Error::domain("need n at least 2s + 1"));
    }
    if r < 2 || k < r {
        return Err(Error::domain("need k at least r at least 2"));
    }
    let turan_term = turan_clique_count(2 * s + 1, k, r)?;
    let join_term = matching_turan_count(n, k, r, s)?;
    Ok(pick_side(
        turan_term,
        join_term,
        balanced_partition(2 * s + 1, k)?,
        matching_turan_partition(n, k, s)?,
    ))
}

/// Most cliques of order `r` in an `n`-vertex graph with no matching of
/// `s + 1` edges and no clique bound at all: the larger of the complete
/// graph on 2s+1 vertices and the join of an independent set with K_s.
pub fn matching_extremal(n: usize, r: usize, s: usize) -> Result<ExtremalValue> {
    if n < 2 * s + 1 {
        return Err(Error::domain("need n at least 2s + 1"));
    }
    if r < 2 {
        return Err(Error::domain("need r at least 2"));
    }
    let over = || Error::Overflow { context: "matching-only extremal value" };
    let clique_term = binomial((2 * s + 1) as u128, r as u128)?;
    let join_term = binomial(s as u128, r as u128)?
        .checked_add(
            ((n - s) as u128)
                .checked_mul(binomial(s as u128, (r - 1) as u128)?)
                .ok_or_else(over)?,
        )
        .ok_or_else(over)?;
    let mut join_parts = vec![n - s];
    join_parts.extend(std::iter::repeat_n(1, s));
    Ok(pick_side(
        clique_term,
        join_term,
        balanced_partition(2 * s + 1, 2 * s + 1)?,
        PartitionSpec::new(join_parts)?,
    ))
}

/// Leading per-vertex coefficient of the r-clique count when a two-colorable
/// pattern `h` with smallest color class of size p is forbidden alongside the
/// matching cap: `binomial(p - 1, r - 1)`. Zero means the count stays bounded
/// as n grows.
pub fn bipartite_slope(h: &Graph, r: usize) -> Result<u128> {
    if r < 1 {
        return Err(Error::domain("clique order must be at least 1"));
    }
    let p = smallest_color_class(h)?;
    binomial((p - 1) as u128, (r - 1) as u128)
}

// ---------------------------------------------------------------------------
// Crossover analysis
// ---------------------------------------------------------------------------

/// Where the extremal maximum switches from the small balanced core to
/// the independent-join construction as `n` grows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Crossover {
    /// Smallest n ≥ 2s+1 where the join term reaches the balanced term.
    At(u128),
    /// The join term never catches up: its slope in n is zero and its
    /// constant part falls short.
    Never,
}

impl std::fmt::Display for Crossover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Crossover::At(n) => write!(f, "n = {n}"),
            Crossover::Never => f.write_str("never"),
        }
    }
}

/// Locates the smallest `n ≥ 2s+1` at which the independent-join value
/// reaches the balanced-core value, exploiting that the join value is
/// affine in `n` with slope `turan_clique_count(s, k-1, r-1)`.
pub fn crossover(k: usize, r: usize, s: usize) -> Result<Crossover> {
    if r < 2 || k < r {
        return Err(Error::domain("need k at least r at least 2"));
    }
    if s < 1 {
        return Err(Error::domain("need a positive matching bound"));
    }
    let floor_n = (2 * s + 1) as u128;
    let slope = turan_clique_count(s, k - 1, r - 1)?;
    let intercept = turan_clique_count(s, k - 1, r)?;
    let target = turan_clique_count(2 * s + 1, k, r)?;
    // join value at n is (n - s)·slope + intercept
    if intercept >= target {
        return Ok(Crossover::At(floor_n));
    }
    if slope == 0 {
        return Ok(Crossover::Never);
    }
    let need = target - intercept;
    let n = (s as u128) + need.div_ceil(slope);
    Ok(Crossover::At(n.max(floor_n)))
}

// ---------------------------------------------------------------------------
// Identity and shape audits
// ---------------------------------------------------------------------------

/// The two recurrences tying balanced clique counts across sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecurrenceIdentity {
    /// Adding a vertex to a smallest part grows the count by the number
    /// of (r-1)-cliques avoiding that part.
    StepDifference,
    /// Peeling one largest part expresses the count through the k-1
    /// remaining parts.
    PartPeeling,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceFailure {
    pub identity: RecurrenceIdentity,
    pub t: usize,
    pub k: usize,
    pub r: usize,
    pub lhs: u128,
    pub rhs: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityReport {
    pub cases_checked: u64,
    pub first_failure: Option<RecurrenceFailure>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks both recurrences for every r ≤ k ≤ t inside the given bounds,
/// stopping at the first mismatch.
pub fn turan_count_recurrence_check(t_max: usize, k_max: usize) -> Result<IdentityReport> {
    let mut cases = 0u64;
    for k in 1..=k_max {
        for t in k..=t_max {
            let peeled = t - t / k;
            for r in 1..=k {
                cases += 1;
                let grown = turan_clique_count(t + 1, k, r)?;
                let here = turan_clique_count(t, k, r)?;
                let step = turan_clique_count(peeled, k - 1, r - 1)?;
                // compare additively so a violated identity cannot underflow
                let step_rhs = here
                    .checked_add(step)
                    .ok_or(Error::Overflow { context: "step identity" })?;
                if grown != step_rhs {
                    return Ok(IdentityReport {
                        cases_checked: cases,
                        first_failure: Some(RecurrenceFailure {
                            identity: RecurrenceIdentity::StepDifference,
                            t,
                            k,
                            r,
                            lhs: grown,
                            rhs: step_rhs,
                        }),
                    });
                }
                let inner = turan_clique_count(peeled, k - 1, r)?;
                let peel_rhs = inner
                    .checked_add((t / k) as u128 * step)
                    .ok_or(Error::Overflow { context: "peeling identity" })?;
                if here != peel_rhs {
                    return Ok(IdentityReport {
                        cases_checked: cases,
                        first_failure: Some(RecurrenceFailure {
                            identity: RecurrenceIdentity::PartPeeling,
                            t,
                            k,
                            r,
                            lhs: here,
                            rhs: peel_rhs,
                        }),
                    });
                }
            }
        }
    }
    Ok(IdentityReport { cases_checked: cases, first_failure: None })
}

/// Shape checks on the two curves the extremal argument leans on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeCheck {
    /// Join value strictly grows with the split size on [k, s].
    StrictGrowth,
    /// Split-bound first differences never decrease on [0, s-1].
    DifferenceMonotone,
    /// Every split bound is dominated by one of the two endpoints.
    EndpointDominance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeFailure {
    pub check: ShapeCheck,
    pub at: usize,
    pub lhs: u128,
    pub rhs: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShapeReport {
    pub cases_checked: u64,
    pub first_failure: Option<ShapeFailure>,
}

impl ShapeReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Audits the growth and convexity facts used by the extremal argument:
/// the join value strictly increases in the split size t on [k, s], the
/// split bound has non-decreasing first differences in b on [0, s-1]
/// (checked additively as f(b) + f(b+2) ≥ 2·f(b+1)), and every value of
/// the split bound is at most max(f(0), f(s)).
pub fn monotonicity_convexity_check(n: usize, k: usize, r: usize, s: usize) -> Result<ShapeReport> {
    if n < 2 * s + 1 {
        return Err(Error::domain("need n at least 2s + 1"));
    }
    if r < 3 || k < r {
        return Err(Error::domain("need k at least r at least 3"));
    }
    let over = || Error::Overflow { context: "shape audit" };
    let mut cases = 0u64;
    let fail = |cases: u64, check: ShapeCheck, at: usize, lhs: u128, rhs: u128| {
        Ok(ShapeReport {
            cases_checked: cases,
            first_failure: Some(ShapeFailure { check, at, lhs, rhs }),
        })
    };

    for t in k..s {
        cases += 1;
        let low = matching_turan_count(n, k, r, t)?;
        let high = matching_turan_count(n, k, r, t + 1)?;
        if high <= low {
            return fail(cases, ShapeCheck::StrictGrowth, t, high, low);
        }
    }

    let f: Vec<u128> = (0..=s)
        .map(|b| berge_split_bound(n, k, r, s, b))
        .collect::<Result<_>>()?;
    for b in 0..s.saturating_sub(1) {
        cases += 1;
        let sides = f[b].checked_add(f[b + 2]).ok_or_else(over)?;
        let middle = f[b + 1].checked_mul(2).ok_or_else(over)?;
        if sides < middle {
            return fail(cases, ShapeCheck::DifferenceMonotone, b, sides, middle);
        }
    }
    let cap = f[0].max(f[s]);
    for (b, &value) in f.iter().enumerate() {
        cases += 1;
        if value > cap {
            return fail(cases, ShapeCheck::EndpointDominance, b, value, cap);
        }
    }
    Ok(ShapeReport { cases_checked: cases, first_failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{matching_turan_graph, turan_graph};

    #[test]
    fn binomial_agrees_with_pascal() {
        let mut row = vec![1u128];
        for n in 0..=40u128 {
            for (j, &entry) in row.iter().enumerate() {
                assert_eq!(binomial(n, j as u128).unwrap(), entry);
            }
            assert_eq!(binomial(n, n + 1).unwrap(), 0);
            let mut next = vec![1u128];
            next.extend(row.windows(2).map(|w| w[0] + w[1]));
            next.push(1);
            row = next;
        }
        assert!(binomial(u128::MAX, 3).is_err());
    }

    #[test]
    fn turan_count_fixed_values() {
        assert_eq!(turan_clique_count(6, 3, 3).unwrap(), 8);
        assert_eq!(turan_clique_count(7, 3, 2).unwrap(), 16);
        assert_eq!(turan_clique_count(5, 3, 4).unwrap(), 0);
        assert_eq!(turan_clique_count(5, 3, 3).unwrap(), 4);
        assert_eq!(turan_clique_count(7, 3, 3).unwrap(), 12);
        assert_eq!(turan_clique_count(0, 3, 0).unwrap(), 1);
        assert_eq!(turan_clique_count(9, 0, 0).unwrap(), 1);
        assert_eq!(turan_clique_count(9, 0, 1).unwrap(), 0);
        assert_eq!(turan_clique_count(2, 5, 3).unwrap(), 0);
    }

    #[test]
    fn turan_count_matches_generated_graphs() {
        for t in 0..=20 {
            for k in 1..=t.max(1) {
                let g = turan_graph(t, k).unwrap();
                for r in 0..=k + 1 {
                    assert_eq!(
                        turan_clique_count(t, k, r).unwrap(),
                        g.count_cliques(r).value,
                        "t={t} k={k} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn join_count_fixed_values_and_graph_agreement() {
        assert_eq!(matching_turan_count(7, 3, 3, 2).unwrap(), 5);
        assert_eq!(matching_turan_count(10, 3, 3, 4).unwrap(), 24);
        assert_eq!(matching_turan_count(9, 4, 2, 0).unwrap(), 0);
        // with r = 1 the value is the vertex count, not zero
        assert_eq!(matching_turan_count(9, 4, 1, 0).unwrap(), 9);
        assert!(matching_turan_count(3, 3, 3, 4).is_err());
        assert!(matching_turan_count(5, 1, 2, 2).is_err());

        for n in 0..=20 {
            for k in 2..=6 {
                for s in 0..=n / 2 {
                    let g = matching_turan_graph(n, k, s).unwrap();
                    for r in 0..=k {
                        assert_eq!(
                            matching_turan_count(n, k, r, s).unwrap(),
                            g.count_cliques(r).value,
                            "n={n} k={k} r={r} s={s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn split_bound_fixed_values() {
        assert_eq!(berge_split_bound(7, 3, 3, 2, 0).unwrap(), 4);
        assert_eq!(berge_split_bound(7, 3, 3, 2, 1).unwrap(), 2);
        assert_eq!(berge_split_bound(7, 3, 3, 2, 2).unwrap(), 5);
        assert!(berge_split_bound(7, 3, 3, 2, 3).is_err());
        assert!(berge_split_bound(4, 3, 3, 2, 0).is_err());
    }

    #[test]
    fn extremal_value_under_both_bounds() {
        let join = clique_matching_extremal(7, 3, 3, 2).unwrap();
        assert_eq!(join.value, 5);
        assert_eq!(join.dominant, ExtremalSide::Join);
        assert_eq!(join.witnesses.len(), 1);
        assert_eq!(join.witnesses[0].to_string(), "K[5,1,1]");

        let turan = clique_matching_extremal(5, 3, 3, 2).unwrap();
        assert_eq!(turan.value, 4);
        assert_eq!(turan.dominant, ExtremalSide::Turan);
        assert_eq!(turan.witnesses[0].to_string(), "K[2,2,1]");

        // identical candidate constructions collapse to a single witness
        let tie = clique_matching_extremal(3, 2, 2, 1).unwrap();
        assert_eq!((tie.value, tie.dominant), (2, ExtremalSide::Tie));
        assert_eq!(tie.witnesses.len(), 1);
        assert_eq!(tie.witnesses[0].to_string(), "K[2,1]");

        assert!(clique_matching_extremal(4, 3, 3, 2).is_err());
        assert!(clique_matching_extremal(7, 2, 3, 2).is_err());
    }

    #[test]
    fn extremal_value_edge_count_specialization() {
        // r = 2 counts edges; compare against materialized witnesses
        let v = clique_matching_extremal(6, 2, 2, 2).unwrap();
        assert_eq!((v.value, v.dominant), (8, ExtremalSide::Join));
        assert_eq!(v.witnesses[0].to_string(), "K[4,2]");
        assert_eq!(v.witnesses[0].clique_count(2).unwrap(), 8);
    }

    #[test]
    fn matching_only_extremal_values() {
        let small = matching_extremal(7, 3, 2).unwrap();
        assert_eq!((small.value, small.dominant), (10, ExtremalSide::Turan));
        assert_eq!(small.witnesses[0].to_string(), "K[1,1,1,1,1]");

        let large = matching_extremal(20, 3, 2).unwrap();
        assert_eq!((large.value, large.dominant), (18, ExtremalSide::Join));
        assert_eq!(large.witnesses[0].to_string(), "K[18,1,1]");

        let empty = matching_extremal(9, 3, 0).unwrap();
        assert_eq!((empty.value, empty.dominant), (0, ExtremalSide::Tie));

        assert!(matching_extremal(4, 3, 2).is_err());
        assert!(matching_extremal(7, 1, 2).is_err());
    }

    #[test]
    fn matching_only_value_agrees_with_join_formula() {
        for s in 1..=6 {
            for n in (2 * s + 1)..=(2 * s + 15) {
                for r in 2..=5 {
                    let via_extremal = matching_extremal(n, r, s).unwrap().value;
                    let join = matching_turan_count(n, s + 1, r, s).unwrap();
                    let clique = binomial((2 * s + 1) as u128, r as u128).unwrap();
                    assert_eq!(via_extremal, join.max(clique), "n={n} r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn crossover_fixed_points() {
        assert_eq!(crossover(3, 3, 2).unwrap(), Crossover::At(6));
        assert_eq!(crossover(2, 2, 1).unwrap(), Crossover::At(3));
        // matching bound too small for any (r-1)-clique in the split:
        // zero slope, zero intercept, positive balanced term
        assert_eq!(crossover(3, 3, 1).unwrap(), Crossover::Never);
        assert!(crossover(3, 3, 0).is_err());
        assert!(crossover(2, 3, 1).is_err());
    }

    #[test]
    fn crossover_is_the_exact_threshold() {
        for k in 2..=5 {
            for r in 2..=k {
                for s in 1..=5 {
                    let target = turan_clique_count(2 * s + 1, k, r).unwrap();
                    let at = |n: usize| matching_turan_count(n, k, r, s).unwrap();
                    match crossover(k, r, s).unwrap() {
                        Crossover::At(n) => {
                            let n = n as usize;
                            assert!(at(n) >= target, "k={k} r={r} s={s}");
                            if n > 2 * s + 1 {
                                assert!(at(n - 1) < target, "k={k} r={r} s={s}");
                            }
                        }
                        Crossover::Never => {
                            for n in (2 * s + 1)..(2 * s + 200) {
                                assert!(at(n) < target, "k={k} r={r} s={s} n={n}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn recurrences_hold_on_the_sweep_grid() {
        let report = turan_count_recurrence_check(50, 10).unwrap();
        assert!(report.pass(), "{:?}", report.first_failure);
        assert_eq!(report.cases_checked, {
            let mut c = 0u64;
            for k in 1..=10u64 {
                c += k * (50 - k + 1);
            }
            c
        });

        // one case by hand: adding a vertex to T_3(6) gains 4 edges
        let grown = turan_clique_count(7, 3, 2).unwrap();
        let here = turan_clique_count(6, 3, 2).unwrap();
        assert_eq!(grown - here, 4);
        assert_eq!(turan_clique_count(4, 2, 1).unwrap(), 4);
    }

    #[test]
    fn shape_audit_passes_and_guards_domain() {
        let r = monotonicity_convexity_check(12, 3, 3, 4).unwrap();
        assert!(r.pass(), "{:?}", r.first_failure);

        // small s leaves the growth interval empty but the split-bound
        // checks still run
        let r = monotonicity_convexity_check(7, 3, 3, 2).unwrap();
        assert!(r.pass());
        assert_eq!(r.cases_checked, 4);

        assert!(monotonicity_convexity_check(7, 3, 2, 2).is_err());
        assert!(monotonicity_convexity_check(6, 3, 3, 3).is_err());
    }

    #[test]
    fn shape_audit_wide_grid() {
        for k in 3..=6 {
            for r in 3..=k {
                for s in 1..=8 {
                    for n in [2 * s + 1, 2 * s + 2, 3 * s + 5, 40] {
                        let rep = monotonicity_convexity_check(n, k, r, s).unwrap();
                        assert!(rep.pass(), "n={n} k={k} r={r} s={s} {:?}", rep.first_failure);
                    }
                }
            }
        }
    }

    #[test]
    fn bipartite_slope_counts_cliques_through_the_small_side() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(bipartite_slope(&c4, 3).unwrap(), 0);

        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert_eq!(bipartite_slope(&k33, 3).unwrap(), 1);
        assert_eq!(bipartite_slope(&k33, 2).unwrap(), 2);

        let p3 = Graph::path(3).unwrap();
        assert_eq!(bipartite_slope(&p3, 3).unwrap(), 0);

        let k3 = Graph::complete(3).unwrap();
        assert!(matches!(bipartite_slope(&k3, 3), Err(Error::Domain { .. })));
    }
}
