//! Canonical forms and isomorphism-free enumeration for small graphs.
//!
//! The canonical form of a graph is the relabeling that minimizes the packed
//! upper-triangle edge mask (column-major order, earlier bits more
//! significant, matching the graph6 bit order). Minimization runs as a
//! depth-first search over partial vertex orderings: at each depth only the
//! vertices producing the lexicographically smallest next column are viable,
//! tied twins are collapsed, and prefixes that already exceed the best known
//! mask are cut. Exact but factorial in the worst case, so callers are capped
//! at small orders.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::HashSet;

/// Largest order accepted by the canonical-form search.
pub const MAX_CANONICAL: usize = 16;

/// Largest order accepted by the catalog generator.
pub const MAX_CATALOG: usize = 8;

/// Pack the upper triangle into an integer, column-major: bit for pair
/// `(i, j)`, `i < j`, at position `T - 1 - (binom(j,2) + i)` where
/// `T = binom(n,2)`. Integer order on masks equals lexicographic order on
/// the bit strings.
pub fn graph_to_mask(g: &Graph) -> u128 {
    let n = g.n();
    debug_assert!(n <= MAX_CANONICAL);
    let mut mask = 0u128;
    for j in 1..n {
        for i in 0..j {
            mask <<= 1;
            if g.has_edge(i, j) {
                mask |= 1;
            }
        }
    }
    mask
}

/// Inverse of [`graph_to_mask`] for a known vertex count.
pub fn mask_to_graph(n: usize, mask: u128) -> Graph {
    debug_assert!(n <= MAX_CANONICAL);
    let total = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut t = 0;
    for j in 1..n {
        for i in 0..j {
            if (mask >> (total - 1 - t)) & 1 == 1 {
                edges.push((i, j));
            }
            t += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("mask bits map to valid edges")
}

struct CanonSearch<'a> {
    rows: &'a [u64],
    n: usize,
    total_bits: usize,
    best: u128,
}

impl CanonSearch<'_> {
    /// Column bits contributed by placing `u` after `placed`, most
    /// significant bit first.
    fn column(&self, placed: &[usize], u: usize) -> u128 {
        let mut col = 0u128;
        for &p in placed {
            col <<= 1;
            col |= u128::from((self.rows[p] >> u) & 1);
        }
        col
    }

    fn dfs(&mut self, placed: &mut Vec<usize>, used: u64, prefix: u128, prefix_bits: usize) {
        let d = placed.len();
        if d == self.n {
            if prefix < self.best {
                self.best = prefix;
            }
            return;
        }
        let mut min_col = u128::MAX;
        let mut candidates: Vec<usize> = Vec::new();
        for u in 0..self.n {
            if used & (1 << u) != 0 {
                continue;
            }
            let col = self.column(placed, u);
            if col < min_col {
                min_col = col;
                candidates.clear();
                candidates.push(u);
            } else if col == min_col {
                candidates.push(u);
            }
        }
        let new_prefix = (prefix << d) | min_col;
        let new_bits = prefix_bits + d;
        if new_bits > 0 && self.best >> (self.total_bits - new_bits) < new_prefix {
            return;
        }
        // Tied twins reach identical leaf masks; keep one representative.
        let mut reps: Vec<usize> = Vec::new();
        'cand: for &c in &candidates {
            for &k in &reps {
                let twins = (self.rows[c] & !(1u64 << k)) == (self.rows[k] & !(1u64 << c));
                if twins {
                    continue 'cand;
                }
            }
            reps.push(c);
        }
        for &u in &reps {
            placed.push(u);
            self.dfs(placed, used | (1 << u), new_prefix, new_bits);
            placed.pop();
        }
    }
}

/// Minimum edge mask over all vertex relabelings.
pub fn canonical_mask(g: &Graph) -> Result<u128> {
    let n = g.n();
    if n > MAX_CANONICAL {
        return Err(Error::Budget {
            what: "canonical form",
            limit: MAX_CANONICAL,
            requested: n,
        });
    }
    if n <= 1 {
        return Ok(0);
    }
    let mut search = CanonSearch {
        rows: g.rows(),
        n,
        total_bits: n * (n - 1) / 2,
        best: u128::MAX,
    };
    search.dfs(&mut Vec::with_capacity(n), 0, 0, 0);
    Ok(search.best)
}

/// The canonically relabeled copy of `g`.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    Ok(mask_to_graph(g.n(), canonical_mask(g)?))
}

/// Exact isomorphism test. Uses canonical masks at catalog scale and a
/// degree-pruned backtracking bijection search above it.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    if a.n() <= MAX_CATALOG {
        return canonical_mask(a).unwrap() == canonical_mask(b).unwrap();
    }
    map_onto(a, b, &mut vec![usize::MAX; a.n()], 0, 0)
}

/// Backtracking search for an edge-preserving bijection of `a` onto `b`.
/// With equal vertex and edge counts, such a map is an isomorphism.
fn map_onto(a: &Graph, b: &Graph, image: &mut Vec<usize>, next: usize, used: u64) -> bool {
    if next == a.n() {
        return true;
    }
    for cand in 0..b.n() {
        if used & (1 << cand) != 0 || b.degree(cand) != a.degree(next) {
            continue;
        }
        let consistent = (0..next).all(|prev| {
            a.has_edge(prev, next) == b.has_edge(image[prev], cand)
        });
        if consistent {
            image[next] = cand;
            if map_onto(a, b, image, next + 1, used | (1 << cand)) {
                return true;
            }
            image[next] = usize::MAX;
        }
    }
    false
}

/// All graphs on `n` vertices up to isomorphism, as canonical forms sorted by
/// mask. Built by extending each (n-1)-vertex class with every possible
/// neighborhood for one new vertex and deduplicating canonically.
pub fn enumerate_nonisomorphic(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_CATALOG {
        return Err(Error::Budget {
            what: "isomorphism-free catalog",
            limit: MAX_CATALOG,
            requested: n,
        });
    }
    if n == 0 {
        return Ok(vec![Graph::empty(0).unwrap()]);
    }
    let mut level: Vec<u128> = vec![0]; // the single 1-vertex graph
    for m in 2..=n {
        let mut seen: HashSet<u128> = HashSet::new();
        for &mask in &level {
            let base = mask_to_graph(m - 1, mask);
            for nb in 0u64..(1 << (m - 1)) {
                let mut rows: Vec<u64> = base.rows().to_vec();
                for (v, row) in rows.iter_mut().enumerate() {
                    if (nb >> v) & 1 == 1 {
                        *row |= 1 << (m - 1);
                    }
                }
                rows.push(nb);
                let g = Graph::from_rows_unchecked(m, rows);
                seen.insert(canonical_mask(&g)?);
            }
        }
        level = seen.into_iter().collect();
        level.sort_unstable();
    }
    Ok(level.into_iter().map(|mask| mask_to_graph(n, mask)).collect())
}
