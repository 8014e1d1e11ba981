//! Generators for the structured graph families the library reasons about:
//! complete multipartite graphs, balanced (Turán) splits, the join of an
//! independent set with a balanced split, and plain matchings.
//!
//! Every generator is deterministic: parts are laid out in the order given,
//! vertices numbered part by part, so snapshot tests and graph6 output are
//! stable across runs.

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6::decode;
use crate::iso::canonical_mask;
use crate::oracle::{color_family, extremal_search, ForbiddenSet};

// ---------------------------------------------------------------------------
// Partition specifications
// ---------------------------------------------------------------------------

/// An ordered list of positive part sizes describing a complete
/// multipartite graph. A `PartitionSpec` value carries no capacity bound;
/// limits apply only when it is materialized into a concrete [`Graph`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PartitionSpec {
    parts: Vec<usize>,
}

impl PartitionSpec {
    /// Builds a spec from part sizes. Every part must be positive; an
    /// empty list is the spec of the null graph.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of cliques of the given order in the complete multipartite
    /// graph this spec describes: one vertex from each of `r` distinct
    /// parts, i.e. the elementary symmetric polynomial of the part sizes.
    /// Exact for any total, including specs too large to materialize.
    pub fn clique_count(&self, r: usize) -> Result<u128> {
        if r > self.parts.len() {
            return Ok(0);
        }
        // dp[j] = e_j(parts seen so far)
        let mut dp = vec![0u128; r + 1];
        dp[0] = 1;
        for &p in &self.parts {
            for j in (1..=r).rev() {
                let term = dp[j - 1]
                    .checked_mul(p as u128)
                    .ok_or(Error::Overflow { context: "multipartite clique count" })?;
                dp[j] = dp[j]
                    .checked_add(term)
                    .ok_or(Error::Overflow { context: "multipartite clique count" })?;
            }
        }
        Ok(dp[r])
    }
}

impl std::fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "K[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl<'de> Deserialize<'de> for PartitionSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        PartitionSpec::new(parts).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Complete multipartite graph over the spec's parts: vertices grouped
/// part by part in order, edges exactly between distinct parts.
pub fn complete_multipartite(spec: &PartitionSpec) -> Result<Graph> {
    let n = spec.total();
    if n > MAX_VERTICES {
        return Err(Error::Capacity { requested: n, limit: MAX_VERTICES });
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rows = vec![0u64; n];
    let mut start = 0usize;
    for &p in spec.parts() {
        let part_mask = ((1u64 << p) - 1) << start;
        let row = full & !part_mask;
        rows[start..start + p].fill(row);
        start += p;
    }
    Ok(Graph::from_rows_unchecked(n, rows))
}

/// Splits `n` into `k` parts as equally as possible, largest part first.
/// Parts that would be empty (when `k > n`) are dropped.
pub fn balanced_partition(n: usize, k: usize) -> Result<PartitionSpec> {
    if k == 0 && n > 0 {
        return Err(Error::domain("cannot split a nonempty vertex set into zero parts"));
    }
    if n == 0 {
        return PartitionSpec::new(Vec::new());
    }
    let q = n / k;
    let m = n % k;
    let mut parts = vec![q + 1; m];
    if q > 0 {
        parts.extend(std::iter::repeat_n(q, k - m));
    }
    PartitionSpec::new(parts)
}

/// The balanced complete `k`-partite graph on `n` vertices. It has the
/// most cliques of every order among graphs with no clique on `k + 1`
/// vertices.
pub fn turan_graph(n: usize, k: usize) -> Result<Graph> {
    complete_multipartite(&balanced_partition(n, k)?)
}

/// Partition underlying [`matching_turan_graph`]: one independent part of
/// size `n - s` followed by a balanced split of `s` into `k - 1` parts.
pub fn matching_turan_partition(n: usize, k: usize, s: usize) -> Result<PartitionSpec> {
    if n < s {
        return Err(Error::domain("independent part would have negative size"));
    }
    if k < 2 {
        return Err(Error::domain("need at least two parts: one independent, one split"));
    }
    let mut parts = Vec::new();
    if n - s > 0 {
        parts.push(n - s);
    }
    parts.extend_from_slice(balanced_partition(s, k - 1)?.parts());
    PartitionSpec::new(parts)
}

/// Joins an independent set of `n - s` vertices to every vertex of the
/// balanced complete `(k-1)`-partite graph on `s` vertices. The result is
/// complete `k`-partite, has no clique on `k + 1` vertices, and no
/// matching with more than `min(s, n / 2)` edges: every edge meets the
/// `s`-vertex side or pairs two of its vertices.
pub fn matching_turan_graph(n: usize, k: usize, s: usize) -> Result<Graph> {
    complete_multipartite(&matching_turan_partition(n, k, s)?)
}

/// `s` disjoint edges on `2s` vertices: vertex `2i` matched to `2i + 1`.
pub fn matching_graph(s: usize) -> Result<Graph> {
    let n = 2 * s;
    if n > MAX_VERTICES {
        return Err(Error::Capacity { requested: n, limit: MAX_VERTICES });
    }
    Graph::from_edges(n, &(0..s).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>())
}

/// Join an independent set of `n - s` vertices to a densest small core: a
/// graph `D` on `s` vertices holding the most (r-1)-cliques among graphs
/// avoiding every one-class-deleted remainder of `h`. The output avoids `h`
/// and has no matching with more than `s` edges, yet carries a linear-in-n
/// share of r-cliques through the core.
///
/// `h` must need at least 3 colors (two-colorable graphs leave no usable
/// remainder family), and `s` must be small enough to search exhaustively.
/// Among co-optimal cores the one with the smallest canonical edge mask is
/// chosen, so output is deterministic.
pub fn asymptotic_extremal_graph(h: &Graph, n: usize, s: usize, r: usize) -> Result<Graph> {
    if r < 2 {
        return Err(Error::Domain {
            reason: format!("core is chosen by (r-1)-clique count, so r must be at least 2, got {r}"),
        });
    }
    if n < s {
        return Err(Error::Domain {
            reason: format!("need n >= s, got n = {n}, s = {s}"),
        });
    }
    let family = color_family(h)?;
    if family.chi < 3 {
        return Err(Error::Domain {
            reason: format!("remainder family needs chromatic number >= 3, got {}", family.chi),
        });
    }
    let fam = ForbiddenSet::new(family.members, None)?;
    let report = extremal_search(s, r - 1, &fam)?;
    let core = report
        .witnesses
        .iter()
        .map(|line| {
            let g = decode(line)?;
            Ok((canonical_mask(&g)?, g))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min_by_key(|(mask, _)| *mask)
        .map(|(_, g)| g)
        .expect("search always reports at least one witness");
    Graph::empty(n - s)?.join(&core)
}
