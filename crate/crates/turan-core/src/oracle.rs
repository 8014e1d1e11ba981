//! Ground-truth answers by brute force: subgraph containment, chromatic
//! numbers, color-class deletion families, and exhaustive extremal search
//! over all graphs on up to eight vertices (or an externally supplied
//! graph6 candidate stream).
//!
//! Nothing here trusts the closed-form evaluators; the point of this
//! module is to check them from a fully independent direction.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{count_cliques_rows, Graph};
use crate::graph6::{decode_lines, encode};
use crate::iso::{canonical_mask, is_isomorphic, mask_to_graph};
use crate::matching::{components_of, has_matching_rows, max_matching};

/// Hard cap for exhaustive extremal search.
pub const MAX_EXHAUSTIVE: usize = 8;
/// Vertex budget for chromatic-number and color-family computations.
pub const MAX_COLORING: usize = 12;

// ---------------------------------------------------------------------------
// Subgraph containment
// ---------------------------------------------------------------------------

/// Embedding order for the vertices of a pattern: start from a seed set,
/// then repeatedly take the vertex with the most already-placed neighbors
/// (ties to the higher degree) so candidate sets shrink early.
fn embedding_order(h: &Graph, seed: &[usize]) -> Vec<usize> {
    let n = h.n();
    let mut order: Vec<usize> = seed.to_vec();
    let mut placed = vec![false; n];
    for &v in seed {
        placed[v] = true;
    }
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let anchored = order.iter().filter(|&&u| h.has_edge(u, v)).count();
                (anchored, h.degree(v))
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Backtracking embedding of `h` into the graph given by `rows`, with the
/// first `fixed` positions of `order` already mapped in `image`. Edges of
/// `h` must map to edges; non-edges are unconstrained.
fn embed(
    rows: &[u64],
    h: &Graph,
    order: &[usize],
    image: &mut Vec<usize>,
    used: u64,
) -> bool {
    if image.len() == order.len() {
        return true;
    }
    let hv = order[image.len()];
    let needed = h.degree(hv);
    // candidates must be adjacent to the images of all placed h-neighbors
    let mut cand = !used & if rows.len() == 64 { u64::MAX } else { (1u64 << rows.len()) - 1 };
    for (idx, &hu) in order[..image.len()].iter().enumerate() {
        if h.has_edge(hu, hv) {
            cand &= rows[image[idx]];
        }
    }
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if (rows[v].count_ones() as usize) < needed {
            continue;
        }
        image.push(v);
        if embed(rows, h, order, image, used | (1 << v)) {
            return true;
        }
        image.pop();
    }
    false
}

/// Does `g` contain a (not necessarily induced) copy of `h`? An injective
/// vertex map must send every edge of `h` to an edge of `g`.
pub fn contains_subgraph(g: &Graph, h: &Graph) -> bool {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return h.n() == 0;
    }
    if h.n() == 0 {
        return true;
    }
    let seed = (0..h.n()).max_by_key(|&v| h.degree(v)).expect("nonempty pattern");
    let order = embedding_order(h, &[seed]);
    let mut image = Vec::with_capacity(h.n());
    embed(g.rows(), h, &order, &mut image, 0)
}

// ---------------------------------------------------------------------------
// Forbidden families
// ---------------------------------------------------------------------------

/// What a graph must avoid: a list of forbidden subgraphs (each with at
/// least one edge) and, optionally, a cap on the maximum matching size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenSet {
    subgraphs: Vec<Graph>,
    matching_bound: Option<usize>,
}

impl ForbiddenSet {
    pub fn new(subgraphs: Vec<Graph>, matching_bound: Option<usize>) -> Result<Self> {
        if subgraphs.iter().any(|h| h.edge_count() == 0) {
            return Err(Error::EdgelessForbidden);
        }
        Ok(Self { subgraphs, matching_bound })
    }

    /// No constraints at all; every graph is free.
    pub fn none() -> Self {
        Self { subgraphs: Vec::new(), matching_bound: None }
    }

    /// Only the matching cap: no matching with more than `s` edges.
    pub fn matching_only(s: usize) -> Self {
        Self { subgraphs: Vec::new(), matching_bound: Some(s) }
    }

    pub fn subgraphs(&self) -> &[Graph] {
        &self.subgraphs
    }

    pub fn matching_bound(&self) -> Option<usize> {
        self.matching_bound
    }
}

impl Serialize for ForbiddenSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let encoded: Vec<String> = self
            .subgraphs
            .iter()
            .map(|h| encode(h).map_err(serde::ser::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        let mut st = serializer.serialize_struct("ForbiddenSet", 2)?;
        st.serialize_field("subgraphs", &encoded)?;
        st.serialize_field("matching_bound", &self.matching_bound)?;
        st.end()
    }
}

/// True when `g` contains none of the forbidden subgraphs and respects
/// the matching cap if one is set.
pub fn is_family_free(g: &Graph, fam: &ForbiddenSet) -> bool {
    if fam.subgraphs.iter().any(|h| contains_subgraph(g, h)) {
        return false;
    }
    match fam.matching_bound {
        Some(s) => max_matching(g).size() <= s,
        None => true,
    }
}

// ---------------------------------------------------------------------------
// Chromatic number and color families
// ---------------------------------------------------------------------------

fn coloring_budget(h: &Graph) -> Result<()> {
    if h.n() == 0 {
        return Err(Error::domain("coloring needs at least one vertex"));
    }
    if h.n() > MAX_COLORING {
        return Err(Error::Budget {
            what: "coloring enumeration",
            limit: MAX_COLORING,
            requested: h.n(),
        });
    }
    Ok(())
}

fn colorable_with(h: &Graph, k: usize, order: &[usize], classes: &mut Vec<u64>, at: usize) -> bool {
    if at == order.len() {
        return true;
    }
    let v = order[at];
    let bit = 1u64 << v;
    for c in 0..classes.len().min(k) {
        if h.rows()[v] & classes[c] == 0 {
            classes[c] |= bit;
            if colorable_with(h, k, order, classes, at + 1) {
                return true;
            }
            classes[c] &= !bit;
        }
    }
    // symmetry break: only the first untouched class may be opened
    if classes.len() < k {
        classes.push(bit);
        if colorable_with(h, k, order, classes, at + 1) {
            return true;
        }
        classes.pop();
    }
    false
}

/// Exact chromatic number by branch and bound: clique number below,
/// greedy coloring above, k-colorability tested in between.
pub fn chromatic_number(h: &Graph) -> Result<usize> {
    coloring_budget(h)?;
    if h.edge_count() == 0 {
        return Ok(1);
    }
    let n = h.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));

    let mut upper = 0;
    let mut greedy: Vec<u64> = Vec::new();
    for &v in &order {
        match greedy.iter_mut().find(|class| h.rows()[v] & **class == 0) {
            Some(class) => *class |= 1 << v,
            None => greedy.push(1 << v),
        }
        upper = upper.max(greedy.len());
    }
    let mut lower = 1;
    while lower < n && h.count_cliques(lower + 1).value > 0 {
        lower += 1;
    }
    for k in lower..upper {
        if colorable_with(h, k, &order, &mut Vec::new(), 0) {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// What remains of a graph after deleting one color class of a proper
/// coloring with the fewest possible colors, collected over all such
/// colorings up to isomorphism. For 2-chromatic graphs the deletion
/// family is degenerate and the minimum class size `p` is reported
/// instead.
#[derive(Clone, Debug)]
pub struct ColorFamily {
    pub chi: usize,
    pub members: Vec<Graph>,
    pub p: Option<usize>,
}

/// Smallest color class achievable in a proper 2-coloring: per connected
/// component the lighter side counts (so isolated vertices contribute 0).
fn two_coloring_min_class(h: &Graph) -> usize {
    let n = h.n();
    let alive = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut total = 0;
    for comp in components_of(h.rows(), alive) {
        let seed = comp.trailing_zeros() as usize;
        let mut side = [0u64; 2];
        side[0] = 1 << seed;
        let mut frontier = side[0];
        let mut parity = 0;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= h.rows()[v] & comp & !(side[0] | side[1]);
            }
            parity ^= 1;
            side[parity] |= next;
            frontier = next;
        }
        debug_assert_eq!(side[0] | side[1], comp, "component must be bipartite here");
        total += (side[0].count_ones().min(side[1].count_ones())) as usize;
    }
    total
}

fn partitions_into_independent_classes(
    h: &Graph,
    chi: usize,
    v: usize,
    classes: &mut Vec<u64>,
    out: &mut dyn FnMut(&[u64]),
) {
    if v == h.n() {
        if classes.len() == chi {
            out(classes);
        }
        return;
    }
    let bit = 1u64 << v;
    for c in 0..classes.len() {
        if h.rows()[v] & classes[c] == 0 {
            classes[c] |= bit;
            partitions_into_independent_classes(h, chi, v + 1, classes, out);
            classes[c] &= !bit;
        }
    }
    if classes.len() < chi {
        classes.push(bit);
        partitions_into_independent_classes(h, chi, v + 1, classes, out);
        classes.pop();
    }
}

/// Computes the chromatic number, and for graphs needing at least three
/// colors the family of all class-deletion remainders over all proper
/// colorings with exactly that many classes, deduplicated up to
/// isomorphism. For bipartite graphs the minimum class size is computed
/// instead.
pub fn color_family(h: &Graph) -> Result<ColorFamily> {
    let chi = chromatic_number(h)?;
    if chi < 3 {
        let p = (chi == 2).then(|| two_coloring_min_class(h));
        return Ok(ColorFamily { chi, members: Vec::new(), p });
    }
    let mut seen = HashSet::new();
    let mut members: Vec<(usize, u128)> = Vec::new();
    let full = (1u64 << h.n()) - 1;
    let mut classes = Vec::new();
    let mut collect_err = None;
    partitions_into_independent_classes(h, chi, 0, &mut classes, &mut |classes| {
        for &class in classes {
            let rest = h.induced_subgraph(crate::graph::VertexSet::from_bits(full & !class));
            match canonical_mask(&rest) {
                Ok(mask) => {
                    if seen.insert((rest.n(), mask)) {
                        members.push((rest.n(), mask));
                    }
                }
                Err(e) => collect_err = Some(e),
            }
        }
    });
    if let Some(e) = collect_err {
        return Err(e);
    }
    members.sort_unstable();
    let members = members.into_iter().map(|(n, mask)| mask_to_graph(n, mask)).collect();
    Ok(ColorFamily { chi, members, p: None })
}

/// Minimum size of a color class over proper 2-colorings. Errors unless
/// the graph is exactly 2-chromatic.
pub fn smallest_color_class(h: &Graph) -> Result<usize> {
    if chromatic_number(h)? != 2 {
        return Err(Error::domain("minimum color class needs a 2-chromatic graph"));
    }
    Ok(two_coloring_min_class(h))
}

// ---------------------------------------------------------------------------
// Exhaustive extremal search
// ---------------------------------------------------------------------------

/// Where the candidate graphs of an extremal search came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchSource {
    /// Every graph on n vertices, walked as edge-subset decisions.
    Exhaustive,
    /// Externally supplied graph6 lines; completeness is the caller's claim.
    Graph6Stream,
}

/// Result of an extremal search: the maximum clique count over all
/// family-free candidates, with every attaining graph up to isomorphism.
#[derive(Clone, Debug)]
pub struct ExtremalReport {
    pub n: usize,
    pub r: usize,
    pub forbidden: ForbiddenSet,
    pub value: u128,
    /// Attaining graphs in graph6 form, isomorph-free, sorted.
    pub witnesses: Vec<String>,
    pub graphs_examined: u64,
    pub elapsed: Duration,
    pub source: SearchSource,
}

impl Serialize for ExtremalReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ExtremalReport", 8)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("forbidden", &self.forbidden)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("witnesses", &self.witnesses)?;
        st.serialize_field("graphs_examined", &self.graphs_examined)?;
        st.serialize_field("elapsed_ms", &self.elapsed.as_millis())?;
        st.serialize_field("source", &self.source)?;
        st.end()
    }
}

/// One forbidden subgraph preprocessed for incremental rejection: for
/// every oriented edge of the pattern, an embedding order starting at
/// that edge, so a newly added graph edge anchors the only copies that
/// could not have existed before.
struct Pattern {
    h: Graph,
    /// complete patterns get a common-neighborhood shortcut
    clique_order: Option<usize>,
    anchored_orders: Vec<Vec<usize>>,
}

impl Pattern {
    fn compile(h: &Graph) -> Pattern {
        let n = h.n();
        let is_clique = n >= 2 && h.edge_count() == n * (n - 1) / 2;
        let mut anchored_orders = Vec::new();
        if !is_clique {
            for (a, b) in h.edges() {
                anchored_orders.push(embedding_order(h, &[a, b]));
                anchored_orders.push(embedding_order(h, &[b, a]));
            }
        }
        Pattern { h: h.clone(), clique_order: is_clique.then_some(n), anchored_orders }
    }

    /// Does the graph in `rows` contain a copy of the pattern that uses
    /// the edge (u, v)? Assumes the graph was copy-free before that edge
    /// was added.
    fn hit_by_edge(&self, rows: &[u64], u: usize, v: usize) -> bool {
        if let Some(m) = self.clique_order {
            // a new clique through (u,v) is a (m-2)-clique of common neighbors
            return count_cliques_rows(rows, rows[u] & rows[v], m - 2) > 0;
        }
        for order in &self.anchored_orders {
            let mut image = vec![u, v];
            if embed(rows, &self.h, order, &mut image, (1 << u) | (1 << v)) {
                return true;
            }
        }
        false
    }
}

struct SearchSpace {
    n: usize,
    r: usize,
    edges: Vec<(usize, usize)>,
    patterns: Vec<Pattern>,
    /// reject when a matching with this many edges appears
    matching_probe: Option<usize>,
    best: AtomicU64,
    examined: AtomicU64,
}

#[derive(Clone, Copy)]
struct Node {
    decided: [u64; MAX_EXHAUSTIVE],
    optimistic: [u64; MAX_EXHAUSTIVE],
    depth: usize,
}

/// Per-worker collection of best-value witnesses, deduplicated by
/// canonical form as they arrive so pathological searches with millions
/// of co-optimal leaves stay bounded.
struct WitnessPool {
    best: u64,
    masks: HashSet<u128>,
}

impl SearchSpace {
    fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// Would adding edge (u, v) to the decided graph break freeness?
    fn edge_rejected(&self, decided: &[u64], u: usize, v: usize) -> bool {
        if self.patterns.iter().any(|p| p.hit_by_edge(decided, u, v)) {
            return true;
        }
        match self.matching_probe {
            Some(want) => has_matching_rows(decided, self.full(), want),
            None => false,
        }
    }

    fn leaf(&self, node: &Node, pool: &mut WitnessPool) -> Result<()> {
        self.examined.fetch_add(1, Ordering::Relaxed);
        let count = count_cliques_rows(&node.decided[..self.n], self.full(), self.r);
        let prev = self.best.fetch_max(count, Ordering::Relaxed);
        if count < prev || count < pool.best {
            return Ok(());
        }
        if count > pool.best {
            pool.best = count;
            pool.masks.clear();
        }
        let g = Graph::from_rows_unchecked(self.n, node.decided[..self.n].to_vec());
        pool.masks.insert(canonical_mask(&g)?);
        Ok(())
    }

    fn dfs(&self, node: Node, pool: &mut WitnessPool) -> Result<()> {
        if node.depth == self.edges.len() {
            return self.leaf(&node, pool);
        }
        // optimistic bound: every undecided edge present
        let reachable = count_cliques_rows(&node.optimistic[..self.n], self.full(), self.r);
        if reachable < self.best.load(Ordering::Relaxed) {
            return Ok(());
        }
        let (u, v) = self.edges[node.depth];
        let mut with = node;
        with.depth += 1;
        with.decided[u] |= 1 << v;
        with.decided[v] |= 1 << u;
        if !self.edge_rejected(&with.decided[..self.n], u, v) {
            self.dfs(with, pool)?;
        }
        let mut without = node;
        without.depth += 1;
        without.optimistic[u] &= !(1 << v);
        without.optimistic[v] &= !(1 << u);
        self.dfs(without, pool)
    }

    /// Splits the first `depth` edge decisions into independent subtree
    /// roots, applying the same rejection rules along the way.
    fn prefixes(&self, depth: usize, node: Node, out: &mut Vec<Node>) {
        if node.depth == depth {
            out.push(node);
            return;
        }
        let (u, v) = self.edges[node.depth];
        let mut with = node;
        with.depth += 1;
        with.decided[u] |= 1 << v;
        with.decided[v] |= 1 << u;
        if !self.edge_rejected(&with.decided[..self.n], u, v) {
            self.prefixes(depth, with, out);
        }
        let mut without = node;
        without.depth += 1;
        without.optimistic[u] &= !(1 << v);
        without.optimistic[v] &= !(1 << u);
        self.prefixes(depth, without, out);
    }
}

#[allow(clippy::too_many_arguments)] // one-call assembler mirroring the report fields
fn assemble_report(
    n: usize,
    r: usize,
    fam: &ForbiddenSet,
    value: u128,
    witnesses: Vec<Graph>,
    graphs_examined: u64,
    started: Instant,
    source: SearchSource,
) -> Result<ExtremalReport> {
    // self-audit: every witness must be free and attain the value
    for w in &witnesses {
        assert_eq!(w.n(), n, "witness on the wrong vertex count");
        assert!(is_family_free(w, fam), "witness violates the forbidden family");
        assert_eq!(w.count_cliques(r).value, value, "witness misses the extremal value");
    }
    let mut encoded = witnesses.iter().map(encode).collect::<Result<Vec<_>>>()?;
    encoded.sort_unstable();
    Ok(ExtremalReport {
        n,
        r,
        forbidden: fam.clone(),
        value,
        witnesses: encoded,
        graphs_examined,
        elapsed: started.elapsed(),
        source,
    })
}

/// Maximum number of r-cliques over every family-free graph on `n`
/// vertices, with all attaining graphs up to isomorphism. Walks the full
/// edge-subset space depth first, preferring present edges, rejecting a
/// branch as soon as a forbidden copy or an oversized matching appears in
/// the decided part, and pruning when even the all-undecided-edges
/// completion cannot reach the best value seen.
pub fn extremal_search(n: usize, r: usize, fam: &ForbiddenSet) -> Result<ExtremalReport> {
    let started = Instant::now();
    if n > MAX_EXHAUSTIVE {
        return Err(Error::Budget { what: "exhaustive search", limit: MAX_EXHAUSTIVE, requested: n });
    }
    if r == 0 {
        return Err(Error::domain("counted clique order must be positive"));
    }

    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let complete_count = {
        let rows: Vec<u64> = (0..n).map(|v| full & !(1u64 << v)).collect();
        count_cliques_rows(&rows, full, r)
    };
    if complete_count == 0 {
        // not even the complete graph has an r-clique: every free graph
        // attains 0, so report the whole free catalog instead of walking
        // edge subsets to rediscover it
        let witnesses: Vec<Graph> = crate::iso::enumerate_nonisomorphic(n)?
            .into_iter()
            .filter(|g| is_family_free(g, fam))
            .collect();
        let examined = witnesses.len() as u64;
        return assemble_report(n, r, fam, 0, witnesses, examined, started, SearchSource::Exhaustive);
    }

    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            edges.push((i, j));
        }
    }
    let total = edges.len();
    let space = SearchSpace {
        n,
        r,
        edges,
        patterns: fam.subgraphs.iter().map(Pattern::compile).collect(),
        matching_probe: fam.matching_bound.map(|s| s + 1),
        best: AtomicU64::new(0),
        examined: AtomicU64::new(0),
    };

    let mut optimistic = [0u64; MAX_EXHAUSTIVE];
    for (v, row) in optimistic.iter_mut().enumerate().take(n) {
        *row = full & !(1u64 << v);
    }
    let root = Node { decided: [0; MAX_EXHAUSTIVE], optimistic, depth: 0 };

    let split = total.saturating_sub(16).min(12);
    let mut roots = Vec::new();
    space.prefixes(split, root, &mut roots);

    let pools = roots
        .into_par_iter()
        .map(|node| {
            let mut pool = WitnessPool { best: 0, masks: HashSet::new() };
            space.dfs(node, &mut pool)?;
            Ok(pool)
        })
        .collect::<Result<Vec<_>>>()?;

    let value = space.best.load(Ordering::Relaxed);
    let mut masks: Vec<u128> = pools
        .into_iter()
        .filter(|p| p.best == value)
        .flat_map(|p| p.masks.into_iter())
        .collect();
    masks.sort_unstable();
    masks.dedup();
    let witnesses: Vec<Graph> = masks.into_iter().map(|mask| mask_to_graph(n, mask)).collect();
    let examined = space.examined.load(Ordering::Relaxed);
    assemble_report(n, r, fam, value as u128, witnesses, examined, started, SearchSource::Exhaustive)
}

/// Extremal value over an externally supplied candidate list in graph6
/// form, one graph per line. Completeness of the answer is only as good
/// as the stream; the report records the source. Every line must decode
/// to a graph on exactly `n` vertices.
pub fn extremal_search_stream(
    n: usize,
    r: usize,
    fam: &ForbiddenSet,
    text: &str,
) -> Result<ExtremalReport> {
    let started = Instant::now();
    if r == 0 {
        return Err(Error::domain("counted clique order must be positive"));
    }
    let candidates = decode_lines(text)?;
    let mut examined = 0u64;
    let mut value = 0u128;
    let mut witnesses: Vec<Graph> = Vec::new();
    let mut any_free = false;
    for (idx, g) in candidates.into_iter().enumerate() {
        if g.n() != n {
            return Err(Error::StreamOrderMismatch { index: idx + 1, expected: n, got: g.n() });
        }
        examined += 1;
        if !is_family_free(&g, fam) {
            continue;
        }
        let count = g.count_cliques(r).value;
        if !any_free || count > value {
            any_free = true;
            value = count;
            witnesses.clear();
        }
        if count == value {
            let duplicate = witnesses.iter().any(|w| is_isomorphic(w, &g));
            if !duplicate {
                witnesses.push(g);
            }
        }
    }
    if !any_free {
        return Err(Error::domain("stream contained no family-free candidate"));
    }
    assemble_report(n, r, fam, value, witnesses, examined, started, SearchSource::Graph6Stream)
}
