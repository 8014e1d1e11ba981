//! Maximum matchings and Tutte-Berge certificates.
//!
//! Two independent routes to the matching number are kept deliberately
//! separate: the blossom algorithm ([`max_matching`]) and a subset sweep over
//! the Tutte-Berge deficiency ([`matching_number_by_deficiency`]). Tests and
//! the verification suites cross-check them against each other.

use crate::error::{CertificateFault, Error, Result};
use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};

/// Budget for the exhaustive certificate search.
pub const MAX_CERTIFICATE_ORDER: usize = 20;

const NONE: usize = usize::MAX;

/// A matching: pairwise disjoint edges, each `(u, v)` with `u < v`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// Maximum matching via Edmonds' blossom algorithm, O(n^3).
///
/// Augments from each exposed vertex in ascending order; blossoms are handled
/// by path contraction over base pointers rather than explicit shrinking.
pub fn max_matching(g: &Graph) -> Matching {
    let n = g.n();
    let mut mate = vec![NONE; n];

    // Greedy seed keeps the number of augmenting phases small.
    for u in 0..n {
        if mate[u] != NONE {
            continue;
        }
        for v in g.neighbors(u).iter() {
            if mate[v] == NONE {
                mate[u] = v;
                mate[v] = u;
                break;
            }
        }
    }

    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        if let Some((end, parent)) = find_augmenting_path(g, &mate, root) {
            // Flip matched and unmatched edges along the alternating path,
            // walking parent pointers back from the exposed endpoint.
            let mut v = end;
            while v != NONE {
                let pv = parent[v];
                let next = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = next;
            }
        }
    }

    let mut edges: Vec<(usize, usize)> = (0..n)
        .filter(|&u| mate[u] != NONE && u < mate[u])
        .map(|u| (u, mate[u]))
        .collect();
    edges.sort_unstable();
    Matching { edges }
}

struct PathState {
    parent: Vec<usize>,
    base: Vec<usize>,
}

/// Breadth-first alternating-tree search from an exposed root. Odd cycles
/// are contracted by redirecting base pointers; the returned parent vector
/// threads an augmenting path to the returned exposed endpoint.
fn find_augmenting_path(g: &Graph, mate: &[usize], root: usize) -> Option<(usize, Vec<usize>)> {
    let n = g.n();
    let mut st = PathState {
        parent: vec![NONE; n],
        base: (0..n).collect(),
    };
    let mut in_queue = vec![false; n];
    let mut in_blossom = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(root);
    in_queue[root] = true;

    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u).iter() {
            if st.base[u] == st.base[v] || mate[u] == v {
                continue;
            }
            if v == root || (mate[v] != NONE && st.parent[mate[v]] != NONE) {
                // Edge closing an odd cycle: contract the blossom.
                let b = lowest_common_base(&st, mate, u, v);
                in_blossom.iter_mut().for_each(|x| *x = false);
                mark_blossom_path(&mut st, mate, u, b, v, &mut in_blossom);
                mark_blossom_path(&mut st, mate, v, b, u, &mut in_blossom);
                for w in 0..n {
                    if in_blossom[st.base[w]] {
                        st.base[w] = b;
                        if !in_queue[w] {
                            in_queue[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
            } else if st.parent[v] == NONE {
                st.parent[v] = u;
                if mate[v] == NONE {
                    return Some((v, st.parent));
                }
                let w = mate[v];
                if !in_queue[w] {
                    in_queue[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    None
}

/// First common ancestor of the bases of `u` and `v` in the alternating
/// tree, found by marking one root path and walking the other.
fn lowest_common_base(st: &PathState, mate: &[usize], mut u: usize, mut v: usize) -> usize {
    let n = st.base.len();
    let mut seen = vec![false; n];
    loop {
        u = st.base[u];
        seen[u] = true;
        if mate[u] == NONE {
            break;
        }
        u = st.parent[mate[u]];
    }
    loop {
        v = st.base[v];
        if seen[v] {
            return v;
        }
        v = st.parent[mate[v]];
    }
}

/// Mark every base on the path from `v` down to the blossom base `b`,
/// rethreading parent pointers so later augmentation can cross the blossom.
fn mark_blossom_path(
    st: &mut PathState,
    mate: &[usize],
    mut v: usize,
    b: usize,
    mut child: usize,
    in_blossom: &mut [bool],
) {
    while st.base[v] != b {
        in_blossom[st.base[v]] = true;
        in_blossom[st.base[mate[v]]] = true;
        st.parent[v] = child;
        child = mate[v];
        v = st.parent[mate[v]];
    }
}

/// Bounded matching test on raw adjacency rows: does the graph restricted to
/// `alive` contain a matching with `want` edges? Exponential in the worst
/// case but with branch pruning it is fast at search scale (n <= 8).
pub(crate) fn has_matching_rows(rows: &[u64], alive: u64, want: usize) -> bool {
    if want == 0 {
        return true;
    }
    if (alive.count_ones() as usize) < 2 * want {
        return false;
    }
    let mut rest = alive;
    loop {
        if rest == 0 {
            return false;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let nbrs = rows[v] & rest;
        if nbrs == 0 {
            // v cannot be matched; drop it and keep looking.
            continue;
        }
        // Either v is matched to one of its neighbors...
        let mut cand = nbrs;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if has_matching_rows(rows, rest & !(1u64 << u), want - 1) {
                return true;
            }
        }
        // ...or v stays unmatched.
        return has_matching_rows(rows, rest, want);
    }
}

/// Matching number by brute force over the Tutte-Berge deficiency:
/// `nu = (n - max_B (odd(G - B) - |B|)) / 2`. Independent of the blossom
/// implementation; exponential, capped at certificate scale.
pub fn matching_number_by_deficiency(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > MAX_CERTIFICATE_ORDER {
        return Err(Error::Budget {
            what: "deficiency sweep",
            limit: MAX_CERTIFICATE_ORDER,
            requested: n,
        });
    }
    let all = g.vertices().bits();
    let mut best: isize = isize::MIN;
    for b in 0..(1u64 << n) {
        let mut odd = 0isize;
        for comp in components_of(g.rows(), all & !b) {
            if comp.count_ones() % 2 == 1 {
                odd += 1;
            }
        }
        best = best.max(odd - b.count_ones() as isize);
    }
    Ok(((n as isize - best) / 2) as usize)
}

/// Connected components of the sub graph induced on `alive`, as bit masks in
/// ascending order of their smallest vertex.
pub(crate) fn components_of(rows: &[u64], alive: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = alive;
    while rest != 0 {
        let seed = rest & rest.wrapping_neg();
        let mut comp = seed;
        loop {
            let mut frontier = 0u64;
            let mut scan = comp;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                frontier |= rows[v];
            }
            let grown = (comp | frontier) & alive;
            if grown == comp {
                break;
            }
            comp = grown;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// One component of a Tutte-Berge certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateComponent {
    pub vertices: VertexSet,
    pub odd: bool,
}

/// Witness that a graph has no matching larger than `s_witness`.
///
/// Removing the head `b` leaves exactly the listed components, all of odd
/// order, and every matching is then bounded by
/// `|b| + sum (|component| - 1) / 2 = s_witness`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeCertificate {
    pub b: VertexSet,
    pub components: Vec<CertificateComponent>,
    pub s_witness: usize,
}

/// Search for the tightest certificate: `s_witness` equals the matching
/// number exactly. Returns `None` when the matching number already exceeds
/// `s` (no certificate for the requested bound exists).
///
/// Among head sets achieving the optimum with all components odd, the result
/// prefers the smallest head, then the lexicographically smallest vertex
/// list.
pub fn berge_certificate(g: &Graph, s: usize) -> Result<Option<BergeCertificate>> {
    let n = g.n();
    if n > MAX_CERTIFICATE_ORDER {
        return Err(Error::Budget {
            what: "certificate search",
            limit: MAX_CERTIFICATE_ORDER,
            requested: n,
        });
    }
    let nu = max_matching(g).size();
    if nu > s {
        return Ok(None);
    }
    let all = g.vertices().bits();
    // (value, |B|) minimized, then lexicographically smallest B.
    let mut best: Option<(usize, u32, u64)> = None;
    for b in 0..(1u64 << n) {
        let mut value = b.count_ones() as usize;
        let mut all_odd = true;
        for comp in components_of(g.rows(), all & !b) {
            let size = comp.count_ones() as usize;
            if size.is_multiple_of(2) {
                all_odd = false;
                break;
            }
            value += (size - 1) / 2;
        }
        if !all_odd {
            continue;
        }
        let key = (value, b.count_ones(), b);
        let better = match best {
            None => true,
            Some((bv, bc, bb)) => {
                (value, b.count_ones()) < (bv, bc)
                    || (value == bv && b.count_ones() == bc && set_lex_less(b, bb))
            }
        };
        if better {
            best = Some(key);
        }
    }
    let (value, _, head) = best.expect("B = V always yields an all-odd decomposition");
    assert_eq!(
        value, nu,
        "certificate optimum must equal the matching number"
    );
    let components = components_of(g.rows(), all & !head)
        .into_iter()
        .map(|comp| CertificateComponent {
            vertices: VertexSet::from_bits(comp),
            odd: true,
        })
        .collect();
    Ok(Some(BergeCertificate {
        b: VertexSet::from_bits(head),
        components,
        s_witness: value,
    }))
}

/// Lexicographic order on vertex sets viewed as ascending index lists: the
/// set owning the smallest element of the symmetric difference comes first.
fn set_lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    if d == 0 {
        return false;
    }
    a & (d & d.wrapping_neg()) != 0
}

/// Check a certificate against a graph and a claimed bound `s`.
///
/// Structurally malformed certificates (vertices out of range, overlapping
/// fields, a witness value that contradicts its own components) are errors.
/// A well-formed certificate verifies iff its components are exactly the
/// components of `G - B`, all of odd order, and `s_witness <= s`.
pub fn verify_certificate(g: &Graph, cert: &BergeCertificate, s: usize) -> Result<bool> {
    let all = g.vertices();
    let mut covered = cert.b;
    if !cert.b.is_subset_of(all) {
        return Err(Error::Certificate {
            fault: CertificateFault::VertexOutOfRange,
        });
    }
    let mut recomputed = cert.b.len();
    for comp in &cert.components {
        if !comp.vertices.is_subset_of(all) {
            return Err(Error::Certificate {
                fault: CertificateFault::VertexOutOfRange,
            });
        }
        if !comp.vertices.is_disjoint_from(covered) {
            return Err(Error::Certificate {
                fault: CertificateFault::Overlap,
            });
        }
        if comp.odd != (comp.vertices.len() % 2 == 1) {
            return Err(Error::Certificate {
                fault: CertificateFault::ParityFlag,
            });
        }
        covered = covered.union(comp.vertices);
        recomputed += (comp.vertices.len().saturating_sub(1)) / 2;
    }
    if recomputed != cert.s_witness {
        return Err(Error::Certificate {
            fault: CertificateFault::WitnessArithmetic,
        });
    }

    let actual = components_of(g.rows(), all.bits() & !cert.b.bits());
    let mut claimed: Vec<u64> = cert.components.iter().map(|c| c.vertices.bits()).collect();
    claimed.sort_unstable();
    let mut found = actual.clone();
    found.sort_unstable();
    if claimed != found {
        return Ok(false);
    }
    if cert.components.iter().any(|c| !c.odd) {
        return Ok(false);
    }
    Ok(cert.s_witness <= s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_graph(n: usize, p: f64, rng: &mut StdRng) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Straightforward recursive maximum matching, the third independent
    /// route used to pin down the other two.
    fn brute_matching_number(g: &Graph) -> usize {
        fn rec(g: &Graph, alive: u64) -> usize {
            if alive == 0 {
                return 0;
            }
            let v = alive.trailing_zeros() as usize;
            let rest = alive & !(1u64 << v);
            let mut best = rec(g, rest);
            for u in g.neighbors(v).iter() {
                if rest & (1u64 << u) != 0 {
                    best = best.max(1 + rec(g, rest & !(1u64 << u)));
                }
            }
            best
        }
        rec(g, g.vertices().bits())
    }

    #[test]
    fn matching_on_fixed_graphs() {
        assert_eq!(max_matching(&Graph::cycle(5).unwrap()).size(), 2);
        assert_eq!(max_matching(&Graph::complete(4).unwrap()).size(), 2);
        assert_eq!(max_matching(&Graph::empty(6).unwrap()).size(), 0);
        assert_eq!(max_matching(&Graph::path(7).unwrap()).size(), 3);
        // Join of an independent 5-set with an edge: the edge plus one
        // cross pair.
        let g = Graph::empty(5).unwrap().join(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!(max_matching(&g).size(), 2);
    }

    #[test]
    fn matching_agrees_with_independent_routes() {
        let mut rng = StdRng::seed_from_u64(314);
        for n in 0..=9 {
            for _ in 0..25 {
                let g = random_graph(n, 0.4, &mut rng);
                let nu = max_matching(&g).size();
                assert_eq!(nu, brute_matching_number(&g), "{g:?}");
                assert_eq!(nu, matching_number_by_deficiency(&g).unwrap(), "{g:?}");
            }
        }
    }

    #[test]
    fn matching_edges_are_disjoint_and_real() {
        let mut rng = StdRng::seed_from_u64(2718);
        for _ in 0..50 {
            let g = random_graph(10, 0.5, &mut rng);
            let m = max_matching(&g);
            let mut seen = 0u64;
            for &(u, v) in &m.edges {
                assert!(u < v && g.has_edge(u, v));
                assert_eq!(seen & (1 << u), 0);
                assert_eq!(seen & (1 << v), 0);
                seen |= (1 << u) | (1 << v);
            }
        }
    }

    #[test]
    fn bounded_matching_probe_matches_blossom() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..60 {
            let g = random_graph(8, 0.5, &mut rng);
            let nu = max_matching(&g).size();
            for want in 0..=5 {
                assert_eq!(
                    has_matching_rows(g.rows(), g.vertices().bits(), want),
                    want <= nu
                );
            }
        }
    }

    #[test]
    fn certificate_for_a_star() {
        // Star K_{1,3}: removing the center leaves three isolated vertices.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let cert = berge_certificate(&star, 1).unwrap().unwrap();
        assert_eq!(cert.b, VertexSet::singleton(0));
        assert_eq!(cert.components.len(), 3);
        assert_eq!(cert.s_witness, 1);
        assert!(verify_certificate(&star, &cert, 1).unwrap());
    }

    #[test]
    fn certificate_with_empty_head() {
        // Triangle plus an isolated vertex: both components are already odd.
        let g = Graph::complete(3).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        let cert = berge_certificate(&g, 1).unwrap().unwrap();
        assert!(cert.b.is_empty());
        assert_eq!(cert.s_witness, 1);
        let sizes: Vec<usize> = cert.components.iter().map(|c| c.vertices.len()).collect();
        assert_eq!(sizes, vec![3, 1]);
        assert!(verify_certificate(&g, &cert, 1).unwrap());
    }

    #[test]
    fn certificate_absent_when_bound_is_exceeded() {
        // Two disjoint edges have matching number 2.
        let m2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(berge_certificate(&m2, 1).unwrap().is_none());
        assert!(berge_certificate(&m2, 2).unwrap().is_some());
    }

    #[test]
    fn verification_rejects_wrong_or_malformed_certificates() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        // Wrong decomposition: an empty head leaves one even component.
        let wrong = BergeCertificate {
            b: VertexSet::EMPTY,
            components: vec![CertificateComponent {
                vertices: VertexSet::from_indices(&[0, 1, 2, 3]),
                odd: false,
            }],
            s_witness: 1,
        };
        assert!(!verify_certificate(&star, &wrong, 1).unwrap());

        // Structural faults are errors, not mere failures.
        let out_of_range = BergeCertificate {
            b: VertexSet::singleton(9),
            components: vec![],
            s_witness: 1,
        };
        assert!(matches!(
            verify_certificate(&star, &out_of_range, 1),
            Err(Error::Certificate {
                fault: CertificateFault::VertexOutOfRange
            })
        ));

        let bad_arithmetic = BergeCertificate {
            b: VertexSet::singleton(0),
            components: vec![
                CertificateComponent { vertices: VertexSet::singleton(1), odd: true },
                CertificateComponent { vertices: VertexSet::singleton(2), odd: true },
                CertificateComponent { vertices: VertexSet::singleton(3), odd: true },
            ],
            s_witness: 7,
        };
        assert!(matches!(
            verify_certificate(&star, &bad_arithmetic, 7),
            Err(Error::Certificate {
                fault: CertificateFault::WitnessArithmetic
            })
        ));
    }

    #[test]
    fn certificates_round_trip_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(123);
        for _ in 0..100 {
            let n = rng.random_range(1..=10);
            let g = random_graph(n, 0.45, &mut rng);
            let nu = max_matching(&g).size();
            let cert = berge_certificate(&g, nu).unwrap().unwrap();
            assert_eq!(cert.s_witness, nu);
            assert!(verify_certificate(&g, &cert, nu).unwrap());
            assert!(verify_certificate(&g, &cert, nu + 1).unwrap());
            if nu > 0 {
                assert!(berge_certificate(&g, nu - 1).unwrap().is_none());
                assert!(!verify_certificate(&g, &cert, nu - 1).unwrap());
            }
        }
    }

    #[test]
    fn certificate_search_respects_budget() {
        let big = Graph::empty(21).unwrap();
        assert!(matches!(
            berge_certificate(&big, 0),
            Err(Error::Budget { .. })
        ));
    }
}
