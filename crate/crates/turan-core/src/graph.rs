//! Compact undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bit row per vertex, so neighborhood
//! intersections, independence checks, and clique counting all reduce to a
//! handful of word operations. Graphs are immutable: every operation that
//! changes structure returns a fresh value, which keeps search code free of
//! aliasing bugs at the cost of a small copy (at most 64 words).

use crate::error::{Error, Result, SwitchSide};
use std::collections::HashMap;
use std::fmt;

/// Hard capacity of the bit-row representation.
pub const MAX_VERTICES: usize = 64;

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

/// A set of vertex indices, packed into a single word.
///
/// The set itself does not know which graph it belongs to; operations that
/// take a `VertexSet` validate membership against their own vertex range.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All vertices `0..n`.
    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_VERTICES, "vertex set capacity is {MAX_VERTICES}");
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> VertexSet {
        assert!(v < MAX_VERTICES);
        VertexSet(bit(v))
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn from_indices(indices: &[usize]) -> VertexSet {
        indices.iter().copied().collect()
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_VERTICES);
        self.0 |= bit(v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < MAX_VERTICES {
            self.0 &= !bit(v);
        }
    }

    /// Smallest member, if any.
    pub fn smallest(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint_from(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> serde::Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        for &v in &indices {
            if v >= MAX_VERTICES {
                return Err(serde::de::Error::custom(format!(
                    "vertex {v} exceeds capacity {MAX_VERTICES}"
                )));
            }
        }
        Ok(VertexSet::from_indices(&indices))
    }
}

// ---------------------------------------------------------------------------
// CliqueCount
// ---------------------------------------------------------------------------

/// An exact count of cliques of a fixed order.
///
/// At 64 vertices the count of r-cliques is at most C(64, 32) < 2^61, so the
/// 128-bit value can never saturate; the wide type exists so downstream
/// closed-form arithmetic can mix counts without conversions.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CliqueCount {
    /// Clique order r.
    pub order: usize,
    /// Number of r-cliques.
    pub value: u128,
}

/// Number of `r`-cliques whose vertices all lie in `cand`.
///
/// `rows` are adjacency bit rows. The accumulator cannot overflow: every
/// partial sum is bounded by C(64, 32) < 2^61.
pub(crate) fn count_cliques_rows(rows: &[u64], cand: u64, r: usize) -> u64 {
    if r == 0 {
        return 1;
    }
    if (r as u32) > cand.count_ones() {
        return 0;
    }
    if r == 1 {
        return u64::from(cand.count_ones());
    }
    let mut total = 0u64;
    let mut rest = cand;
    if r == 2 {
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += u64::from((rows[v] & rest).count_ones());
        }
        return total;
    }
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total += count_cliques_rows(rows, rows[v] & rest, r - 1);
    }
    total
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// An undirected simple graph on `n <= 64` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    fn check_capacity(n: usize) -> Result<()> {
        if n > MAX_VERTICES {
            Err(Error::Capacity {
                requested: n,
                limit: MAX_VERTICES,
            })
        } else {
            Ok(())
        }
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        Self::check_capacity(n)?;
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Graph> {
        Self::check_capacity(n)?;
        let all = low_mask(n);
        Ok(Graph {
            n,
            adj: (0..n).map(|v| all & !bit(v)).collect(),
        })
    }

    /// Path on `n` vertices with edges `i -- i+1`.
    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.set_edge(v - 1, v);
        }
        Ok(g)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::domain(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Graph::path(n)?;
        g.set_edge(n - 1, 0);
        Ok(g)
    }

    /// Complete bipartite graph with sides `a` and `b`; side `a` comes first.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        let n = a + b;
        Self::check_capacity(n)?;
        let side_a = low_mask(a);
        let side_b = low_mask(n) & !side_a;
        let adj = (0..n)
            .map(|v| if v < a { side_b } else { side_a })
            .collect();
        Ok(Graph { n, adj })
    }

    /// Build from an explicit edge list. Rejects self-loops and out-of-range
    /// endpoints; duplicate edges are harmless.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "edge ({u}, {v}) outside vertex range 0..{n}"
                )));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Build from raw adjacency rows, validating symmetry and irreflexivity.
    pub fn from_adj_rows(adj: Vec<u64>) -> Result<Graph> {
        let n = adj.len();
        Self::check_capacity(n)?;
        let all = low_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !all != 0 {
                return Err(Error::domain(format!("row {v} references vertices >= {n}")));
            }
            if row & bit(v) != 0 {
                return Err(Error::domain(format!("self-loop at vertex {v}")));
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if (adj[u] >> v) & 1 != (adj[v] >> u) & 1 {
                    return Err(Error::domain(format!("rows {u} and {v} are asymmetric")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    /// Internal constructor for callers that maintain the invariants
    /// themselves (hot search loops). Checked in debug builds only.
    pub(crate) fn from_rows_unchecked(n: usize, adj: Vec<u64>) -> Graph {
        debug_assert!(Graph::from_adj_rows(adj.clone()).is_ok());
        debug_assert_eq!(adj.len(), n);
        Graph { n, adj }
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet(low_mask(self.n))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        assert!(v < self.n);
        self.adj[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        assert!(v < self.n);
        VertexSet(self.adj[v])
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut rest = self.adj[u] & !low_mask(u + 1);
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// Copy with the edge `u -- v` present.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u == v {
            return Err(Error::domain(format!("self-loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::domain(format!(
                "edge ({u}, {v}) outside vertex range 0..{}",
                self.n
            )));
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    /// Copy with the edge `u -- v` absent.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.n || v >= self.n {
            return Err(Error::domain(format!(
                "edge ({u}, {v}) outside vertex range 0..{}",
                self.n
            )));
        }
        let mut g = self.clone();
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        Ok(g)
    }

    // -----------------------------------------------------------------------
    // Clique counting
    // -----------------------------------------------------------------------

    /// Exact number of r-cliques. `r = 0` counts the empty clique once,
    /// `r = 1` counts vertices, `r = 2` counts edges.
    pub fn count_cliques(&self, r: usize) -> CliqueCount {
        CliqueCount {
            order: r,
            value: u128::from(count_cliques_rows(&self.adj, low_mask(self.n), r)),
        }
    }

    /// Number of r-cliques inside the open neighborhood of `v`, i.e. the
    /// number of (r+1)-cliques through `v`.
    pub fn clique_degree(&self, v: usize, r: usize) -> CliqueCount {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        CliqueCount {
            order: r,
            value: u128::from(count_cliques_rows(&self.adj, self.adj[v], r)),
        }
    }

    /// Sum of `clique_degree(v, r)` over a set of vertices.
    pub fn clique_degree_sum(&self, set: VertexSet, r: usize) -> u128 {
        set.iter().map(|v| self.clique_degree(v, r).value).sum()
    }

    // -----------------------------------------------------------------------
    // Switching
    // -----------------------------------------------------------------------

    /// Redirect `u` to copy the neighborhood of `v`: drop every edge at `u`,
    /// then join `u` to `N(v)`. Requires `u != v` and `u` not adjacent to `v`,
    /// which keeps the result simple and loop-free.
    pub fn switch_vertex(&self, u: usize, v: usize) -> Result<Graph> {
        assert!(u < self.n && v < self.n);
        if u == v {
            return Err(Error::SwitchSameVertex { v });
        }
        if self.has_edge(u, v) {
            return Err(Error::SwitchAdjacent { u, v });
        }
        let mut adj = self.adj.clone();
        for row in adj.iter_mut() {
            *row &= !bit(u);
        }
        let target = self.adj[v];
        adj[u] = target;
        let mut rest = target;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            adj[w] |= bit(u);
        }
        Ok(Graph { n: self.n, adj })
    }

    /// Redirect every vertex of `source` to copy the common neighborhood of
    /// `target`. Both sets must be independent, internally uniform (all
    /// members share one neighborhood), mutually disjoint, and joined by no
    /// edge. Equivalent to applying `switch_vertex` from each source vertex
    /// toward any target vertex.
    pub fn switch_class(&self, source: VertexSet, target: VertexSet) -> Result<Graph> {
        let all = self.vertices();
        assert!(
            source.is_subset_of(all) && target.is_subset_of(all),
            "class switch sets must lie inside the vertex range"
        );
        if !source.is_disjoint_from(target) {
            return Err(Error::SwitchClassNotDisjoint);
        }
        self.validate_uniform_independent(source, SwitchSide::Source)?;
        self.validate_uniform_independent(target, SwitchSide::Target)?;
        if let Some(s0) = source.smallest() {
            if self.adj[s0] & target.bits() != 0 {
                return Err(Error::SwitchClassCrossEdge);
            }
        }
        let new_neighborhood = match target.smallest() {
            Some(t0) => self.adj[t0],
            None => 0,
        };
        let mut adj = self.adj.clone();
        for row in adj.iter_mut() {
            *row &= !source.bits();
        }
        for s in source.iter() {
            adj[s] = new_neighborhood;
        }
        let mut rest = new_neighborhood;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            adj[w] |= source.bits();
        }
        Ok(Graph { n: self.n, adj })
    }

    fn validate_uniform_independent(&self, set: VertexSet, side: SwitchSide) -> Result<()> {
        for v in set.iter() {
            if self.adj[v] & set.bits() != 0 {
                return Err(Error::SwitchClassNotIndependent { side });
            }
        }
        if let Some(first) = set.smallest() {
            for v in set.iter() {
                if self.adj[v] != self.adj[first] {
                    return Err(Error::SwitchClassUnequalNeighborhoods { side });
                }
            }
        }
        Ok(())
    }

    /// Partition `within` by exact neighborhood equality. Classes are ordered
    /// by their smallest member, so the result is deterministic.
    pub fn neighborhood_classes(&self, within: VertexSet) -> Vec<VertexSet> {
        assert!(
            within.is_subset_of(self.vertices()),
            "class partition set must lie inside the vertex range"
        );
        let mut index: HashMap<u64, usize> = HashMap::new();
        let mut classes: Vec<VertexSet> = Vec::new();
        for v in within.iter() {
            let row = self.adj[v];
            match index.get(&row) {
                Some(&i) => classes[i].insert(v),
                None => {
                    index.insert(row, classes.len());
                    classes.push(VertexSet::singleton(v));
                }
            }
        }
        classes
    }

    // -----------------------------------------------------------------------
    // Composition
    // -----------------------------------------------------------------------

    /// Subgraph induced on `keep`, relabeled to `0..keep.len()` preserving
    /// the relative vertex order.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Graph {
        assert!(
            keep.is_subset_of(self.vertices()),
            "induced set must lie inside the vertex range"
        );
        let old: Vec<usize> = keep.to_vec();
        let m = old.len();
        let mut adj = vec![0u64; m];
        for (new_u, &old_u) in old.iter().enumerate() {
            for (new_v, &old_v) in old.iter().enumerate() {
                if self.adj[old_u] & bit(old_v) != 0 {
                    adj[new_u] |= bit(new_v);
                }
            }
        }
        Graph { n: m, adj }
    }

    /// Disjoint union; `other`'s vertices are relabeled to follow `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        Self::check_capacity(n)?;
        let mut adj = Vec::with_capacity(n);
        adj.extend_from_slice(&self.adj);
        adj.extend(other.adj.iter().map(|&row| row << self.n));
        Ok(Graph { n, adj })
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        Self::check_capacity(n)?;
        let left = low_mask(self.n);
        let right = low_mask(n) & !left;
        let mut adj = Vec::with_capacity(n);
        adj.extend(self.adj.iter().map(|&row| row | right));
        adj.extend(other.adj.iter().map(|&row| (row << self.n) | left));
        Ok(Graph { n, adj })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

// ===========================================================================
// Tests
// ===========================================================================
