//! Greedy neighborhood-switching engine.
//!
//! Starting from a graph that avoids a [`ForbiddenSet`], the engine repeatedly
//! redirects a vertex (or a whole neighborhood class) to copy the neighborhood
//! of a better-connected peer, committing a move only when the constraint still
//! holds and the r-clique count does not drop. The result is a constraint-
//! preserving local search that pushes a graph toward a small number of
//! neighborhood classes without ever losing cliques.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::oracle::{is_family_free, ForbiddenSet};

// ---------------------------------------------------------------------------
// Trace types
// ---------------------------------------------------------------------------

/// Which switching operation a committed step applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// A whole neighborhood class adopted another class's neighborhood.
    ClassSwitch,
    /// A single vertex adopted another vertex's neighborhood.
    VertexSwitch,
}

/// One committed move: every vertex in `source` adopted the common
/// neighborhood of `target`.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetrizeStep {
    pub kind: StepKind,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub count_before: u128,
    pub count_after: u128,
    /// graph6 snapshot taken right after the move, so a run can be replayed.
    pub graph6: String,
}

/// Why the engine stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// A full scan found no committable move.
    FixedPoint,
    /// The step budget ran out before a scan could certify a fixed point.
    Budget,
}

/// Full record of a run: committed steps plus endpoints for replay.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetrizeTrace {
    pub initial_graph6: String,
    pub final_graph6: String,
    pub steps: Vec<SymmetrizeStep>,
    /// Scan rounds executed, including the final round that found no move
    /// when the run ended at a fixed point.
    pub iterations: u64,
    pub terminated_by: Termination,
}

// ---------------------------------------------------------------------------
// Candidate moves
// ---------------------------------------------------------------------------

/// A directed switch proposal. `gap` is the clique-degree-sum advantage of
/// the target side; proposals are tried in decreasing `gap` order.
struct Candidate {
    kind: StepKind,
    source: VertexSet,
    target: VertexSet,
    gap: u128,
}

/// Enumerate directed switch proposals for one scan, class moves first.
///
/// Class proposals pair neighborhood classes with no edge between them (such
/// classes are independent and internally uniform by construction) and point
/// toward the side with the larger (r-1)-clique-degree sum; equal sums yield
/// both directions. Vertex proposals do the same for non-adjacent pairs.
/// Within each kind, proposals are ordered by gap descending, then by the
/// smallest source and target members, so runs are deterministic.
fn candidates(g: &Graph, r: usize) -> Vec<Candidate> {
    let n = g.n();
    let classes = g.neighborhood_classes(g.vertices());
    let class_sums: Vec<u128> = classes
        .iter()
        .map(|c| g.clique_degree_sum(*c, r - 1))
        .collect();

    let mut class_moves: Vec<Candidate> = Vec::new();
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            let (ci, cj) = (classes[i], classes[j]);
            let (vi, vj) = (ci.smallest().unwrap(), cj.smallest().unwrap());
            if g.has_edge(vi, vj) {
                continue;
            }
            let forward = Candidate {
                kind: StepKind::ClassSwitch,
                source: ci,
                target: cj,
                gap: class_sums[j].saturating_sub(class_sums[i]),
            };
            let backward = Candidate {
                kind: StepKind::ClassSwitch,
                source: cj,
                target: ci,
                gap: class_sums[i].saturating_sub(class_sums[j]),
            };
            match class_sums[i].cmp(&class_sums[j]) {
                std::cmp::Ordering::Less => class_moves.push(forward),
                std::cmp::Ordering::Greater => class_moves.push(backward),
                std::cmp::Ordering::Equal => {
                    class_moves.push(forward);
                    class_moves.push(backward);
                }
            }
        }
    }

    let degree: Vec<u128> = (0..n).map(|v| g.clique_degree(v, r - 1).value).collect();
    let mut vertex_moves: Vec<Candidate> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || g.has_edge(u, v) || degree[v] < degree[u] {
                continue;
            }
            vertex_moves.push(Candidate {
                kind: StepKind::VertexSwitch,
                source: VertexSet::singleton(u),
                target: VertexSet::singleton(v),
                gap: degree[v] - degree[u],
            });
        }
    }

    let order = |a: &Candidate, b: &Candidate| {
        b.gap
            .cmp(&a.gap)
            .then(a.source.smallest().cmp(&b.source.smallest()))
            .then(a.target.smallest().cmp(&b.target.smallest()))
    };
    class_moves.sort_by(order);
    vertex_moves.sort_by(order);
    class_moves.extend(vertex_moves);
    class_moves
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

/// Run the switching engine on `g` for at most `budget` committed steps.
///
/// Each scan tries the current proposals in order and commits the first one
/// whose result (a) still avoids `fam`, and (b) has at least as many
/// r-cliques — with equal counts accepted only when the number of
/// neighborhood classes strictly drops, which makes every committed step
/// shrink the pair (cliques lost, classes left) and forces termination even
/// without a budget.
///
/// Errors: `g` must avoid `fam` (the trace invariant "every intermediate
/// graph is family-free" needs a free start), `r` must be at least 2, and
/// the order must fit graph6 so snapshots can be recorded.
pub fn symmetrize(
    g: &Graph,
    fam: &ForbiddenSet,
    r: usize,
    budget: usize,
) -> Result<(Graph, SymmetrizeTrace)> {
    if r < 2 {
        return Err(Error::Domain {
            reason: format!("switching needs clique order at least 2, got {r}"),
        });
    }
    if !is_family_free(g, fam) {
        return Err(Error::Domain {
            reason: "switching input must avoid the forbidden family".into(),
        });
    }
    let initial_graph6 = graph6::encode(g)?;

    let mut current = g.clone();
    let mut count = current.count_cliques(r).value;
    let mut class_count = current.neighborhood_classes(current.vertices()).len();
    let mut steps: Vec<SymmetrizeStep> = Vec::new();
    let mut iterations = 0u64;

    let terminated_by = loop {
        if steps.len() >= budget {
            break Termination::Budget;
        }
        iterations += 1;
        let mut committed = false;
        for cand in candidates(&current, r) {
            let next = match cand.kind {
                StepKind::ClassSwitch => current.switch_class(cand.source, cand.target)?,
                StepKind::VertexSwitch => current.switch_vertex(
                    cand.source.smallest().unwrap(),
                    cand.target.smallest().unwrap(),
                )?,
            };
            let next_count = next.count_cliques(r).value;
            if next_count < count {
                continue;
            }
            let next_classes = next.neighborhood_classes(next.vertices()).len();
            if next_count == count && next_classes >= class_count {
                continue;
            }
            if !is_family_free(&next, fam) {
                continue;
            }
            steps.push(SymmetrizeStep {
                kind: cand.kind,
                source: cand.source.iter().collect(),
                target: cand.target.iter().collect(),
                count_before: count,
                count_after: next_count,
                graph6: graph6::encode(&next)?,
            });
            current = next;
            count = next_count;
            class_count = next_classes;
            committed = true;
            break;
        }
        if !committed {
            break Termination::FixedPoint;
        }
    };

    let trace = SymmetrizeTrace {
        initial_graph6,
        final_graph6: graph6::encode(&current)?,
        steps,
        iterations,
        terminated_by,
    };
    Ok((current, trace))
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{matching_turan_graph, turan_graph};
    use crate::formulas::clique_matching_extremal;
    use crate::iso::mask_to_graph;
    use crate::oracle::extremal_search;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn clique_fam(k: usize, s: usize) -> ForbiddenSet {
        ForbiddenSet::new(vec![Graph::complete(k + 1).unwrap()], Some(s)).unwrap()
    }

    #[test]
    fn split_construction_is_already_a_fixed_point() {
        let g = matching_turan_graph(7, 3, 2).unwrap();
        let (out, trace) = symmetrize(&g, &clique_fam(3, 2), 3, 64).unwrap();
        assert_eq!(trace.terminated_by, Termination::FixedPoint);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.initial_graph6, trace.final_graph6);
        assert_eq!(out.count_cliques(3).value, g.count_cliques(3).value);
    }

    #[test]
    fn isolated_vertices_stay_put_when_joins_break_the_matching_cap() {
        // Balanced 3-part graph on 5 vertices plus two isolated vertices:
        // every join of an isolate raises the matching number past the cap,
        // so the engine must leave the graph alone.
        let base = turan_graph(5, 3).unwrap();
        let g = base.disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        let fam = clique_fam(3, 2);
        let (out, trace) = symmetrize(&g, &fam, 3, 64).unwrap();
        assert_eq!(trace.terminated_by, Termination::FixedPoint);
        assert!(trace.steps.is_empty());
        let value = out.count_cliques(3).value;
        assert_eq!(value, 4);
        let best = clique_matching_extremal(7, 3, 3, 2).unwrap().value;
        assert!(value <= best);
    }

    #[test]
    fn empty_graph_is_inert() {
        let g = Graph::empty(6).unwrap();
        let (out, trace) = symmetrize(&g, &clique_fam(3, 2), 3, 64).unwrap();
        assert_eq!(trace.terminated_by, Termination::FixedPoint);
        assert!(trace.steps.is_empty());
        assert_eq!(out.edge_count(), 0);
        assert_eq!(trace.iterations, 1);
    }

    #[test]
    fn engine_moves_an_isolate_onto_a_star_center() {
        // Single edge 0-1 plus isolated vertex 2, forbidding triangles and a
        // 2-matching, counting edges. Redirecting 2 onto the class of 0 makes
        // a star with 2 edges: the optimum for these constraints on 3 points.
        let g = mask_to_graph(3, 0b001); // edge 0-1 only
        let fam = ForbiddenSet::new(vec![Graph::complete(3).unwrap()], Some(1)).unwrap();
        let (out, trace) = symmetrize(&g, &fam, 2, 64).unwrap();
        assert_eq!(trace.terminated_by, Termination::FixedPoint);
        assert_eq!(trace.steps.len(), 1);
        let step = &trace.steps[0];
        assert_eq!(step.kind, StepKind::ClassSwitch);
        assert_eq!(step.count_before, 1);
        assert_eq!(step.count_after, 2);
        assert_eq!(out.edge_count(), 2);
        assert_eq!(graph6::decode(&step.graph6).unwrap().edge_count(), 2);
    }

    #[test]
    fn budget_zero_stops_before_any_scan() {
        let g = mask_to_graph(3, 0b001);
        let fam = ForbiddenSet::new(vec![Graph::complete(3).unwrap()], Some(1)).unwrap();
        let (out, trace) = symmetrize(&g, &fam, 2, 0).unwrap();
        assert_eq!(trace.terminated_by, Termination::Budget);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.iterations, 0);
        assert_eq!(out.edge_count(), 1);
    }

    #[test]
    fn constrained_input_is_rejected() {
        let g = Graph::complete(4).unwrap();
        let fam = ForbiddenSet::new(vec![Graph::complete(3).unwrap()], None).unwrap();
        let err = symmetrize(&g, &fam, 3, 8).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn trace_serializes_with_kebab_case_tags() {
        let g = mask_to_graph(3, 0b001);
        let fam = ForbiddenSet::new(vec![Graph::complete(3).unwrap()], Some(1)).unwrap();
        let (_, trace) = symmetrize(&g, &fam, 2, 64).unwrap();
        let json = serde_json::to_string(&trace).unwrap();
        assert!(json.contains("\"class-switch\""));
        assert!(json.contains("\"fixed-point\""));
        assert!(json.contains("\"initial_graph6\""));
    }

    #[test]
    fn random_runs_commit_only_safe_steps() {
        let mut rng = StdRng::seed_from_u64(0x5e_17);
        let mut runs = 0;
        while runs < 150 {
            let n = rng.random_range(3..=8usize);
            let k = rng.random_range(3..=4usize);
            let s = rng.random_range(2..=3usize);
            let pairs = n * (n - 1) / 2;
            let mask: u128 = rng.random_range(0..(1u128 << pairs));
            let g = mask_to_graph(n, mask);
            let fam = clique_fam(k, s);
            if !is_family_free(&g, &fam) {
                continue;
            }
            runs += 1;
            let before = g.count_cliques(3).value;
            let (out, trace) = symmetrize(&g, &fam, 3, 64).unwrap();

            let mut prev = before;
            for step in &trace.steps {
                assert_eq!(step.count_before, prev);
                assert!(step.count_after >= step.count_before);
                let snapshot = graph6::decode(&step.graph6).unwrap();
                assert!(is_family_free(&snapshot, &fam));
                prev = step.count_after;
            }
            assert_eq!(out.count_cliques(3).value, prev);
            assert!(is_family_free(&out, &fam));

            if n <= 6 {
                let oracle = extremal_search(n, 3, &fam).unwrap();
                assert!(prev <= oracle.value);
            }
        }
    }

    #[test]
    fn fixed_points_admit_no_count_raising_class_switch() {
        // At a fixed point the scan itself proves no class move commits, so
        // re-enumerate the pairs independently and check the stronger claim:
        // no family-preserving class switch strictly raises the count.
        let mut rng = StdRng::seed_from_u64(0xc1a55);
        let mut runs = 0;
        while runs < 40 {
            let n = rng.random_range(4..=8usize);
            let pairs = n * (n - 1) / 2;
            let mask: u128 = rng.random_range(0..(1u128 << pairs));
            let g = mask_to_graph(n, mask);
            let fam = clique_fam(3, 2);
            if !is_family_free(&g, &fam) {
                continue;
            }
            runs += 1;
            let (out, trace) = symmetrize(&g, &fam, 3, 256).unwrap();
            assert_eq!(trace.terminated_by, Termination::FixedPoint);
            let count = out.count_cliques(3).value;
            for cand in candidates(&out, 3) {
                if cand.kind != StepKind::ClassSwitch {
                    continue;
                }
                let next = out.switch_class(cand.source, cand.target).unwrap();
                if is_family_free(&next, &fam) {
                    assert!(next.count_cliques(3).value <= count);
                }
            }
        }
    }
}
