//! Finite simple graphs on at most 64 vertices.
//!
//! Vertices carry arbitrary string labels but every computation uses their index
//! in the fixed construction order; downstream sign conventions depend on it.
//! Vertex subsets are bit masks, and subset sweeps run in increasing mask order so
//! results are deterministic.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A subset of the vertex index range `0..n`, `n <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub const fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = VertexSet::empty();
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < 64, "vertex index {v} exceeds the 64-vertex limit");
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < 64 {
            self.0 &= !(1 << v);
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest member plus one, i.e. the smallest `n` with `self ⊆ 0..n`.
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

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

    /// Lexicographic order on the increasing index lists.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Mask of the indices strictly above `v`.
fn above(v: usize) -> u64 {
    u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0)
}

/// Iterates all `k`-element subsets of `0..n` in increasing mask order (Gosper's hack).
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << n;
    let mut next: Option<u64> = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(((1u128 << k) - 1) as u64)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur as u128 + c as u128;
            let nxt = ((((r as u64) ^ cur) >> 2) / c) as u128 | r;
            if nxt < limit {
                Some(nxt as u64)
            } else {
                None
            }
        };
        Some(cur)
    })
}

/// A finite simple graph with a fixed vertex order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from labels and index pairs. Rejects loops, duplicate edges,
    /// duplicate labels and out-of-range endpoints.
    pub fn new(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n > 64 {
            return Err(Error::TooManyVertices(n));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut adj = vec![0u64; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(Error::Loop(a));
            }
            let (u, w) = if a < b { (a, b) } else { (b, a) };
            if adj[u] >> w & 1 == 1 {
                return Err(Error::DuplicateEdge(u, w));
            }
            adj[u] |= 1 << w;
            adj[w] |= 1 << u;
            list.push((u, w));
        }
        list.sort_unstable();
        Ok(Graph {
            labels,
            adj,
            edges: list,
        })
    }

    /// Graph on vertices labelled `1..=n` with 0-based index pairs as edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new((1..=n).map(|i| i.to_string()).collect(), edges.iter().copied())
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_edges(n, &[]).expect("edgeless graph")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path graph")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle graph")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_edges(n, &edges).expect("complete graph")
    }

    /// Complete multipartite graph with the given part sizes, parts laid out consecutively.
    pub fn complete_multipartite(parts: &[usize]) -> Self {
        let mut part_of = Vec::new();
        for (p, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(p, size));
        }
        let n = part_of.len();
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| part_of[i] != part_of[j])
            .collect();
        Graph::from_edges(n, &edges).expect("multipartite graph")
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Edges as `(u, w)` with `u < w`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        u < self.n() && w < 64 && self.adj[u] >> w & 1 == 1
    }

    /// Position of `{u, w}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, w: usize) -> Option<usize> {
        let key = if u < w { (u, w) } else { (w, u) };
        self.edges.binary_search(&key).ok()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    fn check_subset(&self, w: VertexSet) -> Result<()> {
        if w.is_subset(self.vertex_set()) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: w.bound() - 1,
                n: self.n(),
            })
        }
    }

    /// Induced subgraph on `w`, keeping the inherited vertex order and labels.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<Graph> {
        self.check_subset(w)?;
        let keep = w.to_vec();
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| w.contains(u) && w.contains(v))
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect();
        Graph::new(keep.iter().map(|&v| self.labels[v].clone()).collect(), edges)
    }

    /// Connected components of the induced subgraph on `mask`, ordered by least vertex.
    pub fn components_within(&self, mask: VertexSet) -> Vec<VertexSet> {
        let mut rest = mask.0;
        let mut out = Vec::new();
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & mask.0 & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            out.push(VertexSet(comp));
        }
        out
    }

    pub(crate) fn component_count_within(&self, mask: u64) -> usize {
        let mut rest = mask;
        let mut count = 0;
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & mask & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            count += 1;
        }
        count
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertex_set())
    }

    pub fn is_connected(&self) -> bool {
        self.component_count_within(self.vertex_set().0) == 1
    }

    /// Number of components minus one; `-1` for the graph with no vertices.
    pub fn reduced_b0(&self) -> i64 {
        self.component_count_within(self.vertex_set().0) as i64 - 1
    }

    /// Vertex connectivity κ: the largest `r` such that deleting fewer than `r`
    /// vertices always leaves a connected graph. Complete graphs get `n - 1`;
    /// disconnected (and empty) graphs get 0.
    pub fn connectivity(&self) -> usize {
        let n = self.n();
        if n == 0 || !self.is_connected() {
            return 0;
        }
        let full = self.vertex_set().0;
        for s in 1..n.saturating_sub(1) {
            for removed in subsets_of_size(n, s) {
                if self.component_count_within(full & !removed) >= 2 {
                    return s;
                }
            }
        }
        n - 1
    }

    /// All cliques grouped by size: entry `k` lists the `k`-cliques as increasing
    /// index tuples in lexicographic order. Entry 0 holds the empty clique.
    pub fn cliques(&self) -> Vec<Vec<Vec<usize>>> {
        let mut by_size: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
        let mut stack = Vec::new();
        for v in 0..self.n() {
            stack.push(v);
            self.extend_clique(&mut stack, self.adj[v] & above(v), &mut by_size);
            stack.pop();
        }
        for level in by_size.iter_mut() {
            level.sort();
        }
        by_size
    }

    fn extend_clique(&self, stack: &mut Vec<usize>, candidates: u64, out: &mut Vec<Vec<Vec<usize>>>) {
        let k = stack.len();
        if out.len() <= k {
            out.push(Vec::new());
        }
        out[k].push(stack.clone());
        let mut rest = candidates;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            stack.push(w);
            self.extend_clique(stack, candidates & self.adj[w] & above(w), out);
            stack.pop();
        }
    }

    /// `(f_0, f_1, …, f_ω)` with `f_k` the number of `k`-cliques and `f_0 = 1`.
    pub fn clique_counts(&self) -> Vec<u64> {
        self.cliques().iter().map(|c| c.len() as u64).collect()
    }

    /// Pairs of distinct non-adjacent vertices, `(u, w)` with `u < w`, lexicographic.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
            .filter(|&(u, w)| !self.has_edge(u, w))
            .collect()
    }

    /// Cut coefficients `c_j = Σ_{|W| = j} b̃_0(Γ_W)`. With `max_size = Some(m)` only
    /// `j <= m` is computed and the result is flagged truncated when `m < n`.
    pub fn cut_coefficients(&self, max_size: Option<usize>) -> CutCoefficients {
        let n = self.n();
        let upto = max_size.map_or(n, |m| m.min(n));
        let mut coeffs = vec![0u64; upto.max(1) + 1];
        for (j, slot) in coeffs.iter_mut().enumerate().take(upto + 1).skip(2) {
            *slot = subsets_of_size(n, j)
                .map(|m| self.component_count_within(m) as u64 - 1)
                .sum();
        }
        coeffs.truncate(upto + 1);
        CutCoefficients {
            n_vertices: n,
            coeffs,
            truncated: upto < n,
        }
    }

    /// Vertex subsets `W` whose induced graph is disconnected while every proper
    /// superset induces a connected graph, in canonical order.
    pub fn maximal_disconnected_subsets(&self) -> Vec<VertexSet> {
        let n = self.n();
        if n < 2 {
            return Vec::new();
        }
        assert!(n <= 30, "maximal disconnected subset sweep is limited to 30 vertices");
        let size = 1usize << n;
        let mut disconnected = vec![false; size];
        let mut below = vec![false; size];
        for m in (0..size).rev() {
            disconnected[m] = self.component_count_within(m as u64) >= 2;
            let mut free = !(m as u64) & VertexSet::full(n).0;
            let mut covered = false;
            while free != 0 && !covered {
                let bit = free & free.wrapping_neg();
                free &= free - 1;
                let sup = m | bit as usize;
                covered = disconnected[sup] || below[sup];
            }
            below[m] = covered;
        }
        let mut out: Vec<VertexSet> = (0..size)
            .filter(|&m| disconnected[m] && !below[m])
            .map(|m| VertexSet(m as u64))
            .collect();
        out.sort_by(VertexSet::canonical_cmp);
        out
    }

    /// `Some(v)` when `v` is adjacent to every other vertex.
    pub fn cone_point(&self) -> Option<usize> {
        let full = self.vertex_set().0;
        (0..self.n()).find(|&v| self.adj[v] | (1 << v) == full)
    }
}

/// Result of [`Graph::cut_coefficients`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCoefficients {
    pub n_vertices: usize,
    /// `coeffs[j] = c_j` for `j <= computed_up_to()`.
    pub coeffs: Vec<u64>,
    pub truncated: bool,
}

impl CutCoefficients {
    pub fn computed_up_to(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `c_j`, or `None` when `j` lies beyond a truncation cap.
    pub fn get(&self, j: usize) -> Option<u64> {
        if j < self.coeffs.len() {
            Some(self.coeffs[j])
        } else if j > self.n_vertices || !self.truncated {
            Some(0)
        } else {
            None
        }
    }
}

/// A graph with an integer weight `m(e) >= 2` on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<u32>,
}

impl WeightedGraph {
    /// `weights` is parallel to `graph.edges()`.
    pub fn new(graph: Graph, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != graph.edge_count() {
            let (u, w) = graph
                .edges()
                .get(weights.len())
                .copied()
                .unwrap_or((0, 0));
            return Err(Error::BadWeight(u, w));
        }
        for (&(u, w), &m) in graph.edges().iter().zip(&weights) {
            if m < 2 {
                return Err(Error::BadWeight(u, w));
            }
        }
        Ok(WeightedGraph { graph, weights })
    }

    /// Every edge weighted 2, i.e. the right-angled case.
    pub fn right_angled(graph: Graph) -> Self {
        let weights = vec![2; graph.edge_count()];
        WeightedGraph { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, u: usize, w: usize) -> Option<u32> {
        self.graph.edge_index(u, w).map(|i| self.weights[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::cycle(4)
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(Error::Loop(0)));
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { index: 2, n: 2 })
        ));
        assert!(Graph::new(vec!["a".into(), "a".into()], []).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let h = c4().induced_subgraph(VertexSet::from_indices([0, 2])).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(h.labels(), ["1", "3"]);
        let g = Graph::complete(4);
        assert_eq!(g.induced_subgraph(g.vertex_set()).unwrap(), g);
        assert_eq!(
            g.induced_subgraph(VertexSet::from_indices([0, 1, 2])).unwrap(),
            Graph::complete(3)
        );
        assert!(g.induced_subgraph(VertexSet::from_indices([5])).is_err());
    }

    #[test]
    fn components_and_reduced_b0() {
        assert_eq!(Graph::path(3).reduced_b0(), 0);
        let h = c4().induced_subgraph(VertexSet::from_indices([0, 2])).unwrap();
        assert_eq!(h.connected_components().len(), 2);
        assert_eq!(h.reduced_b0(), 1);
        assert_eq!(Graph::empty(3).reduced_b0(), 2);
        assert_eq!(Graph::empty(0).reduced_b0(), -1);
    }

    #[test]
    fn connectivity_values() {
        assert_eq!(Graph::path(3).connectivity(), 1);
        assert_eq!(c4().connectivity(), 2);
        assert_eq!(Graph::complete(4).connectivity(), 3);
        assert_eq!(Graph::empty(3).connectivity(), 0);
        assert_eq!(Graph::complete_multipartite(&[2, 2, 2]).connectivity(), 4);
    }

    #[test]
    fn clique_counts_and_non_edges() {
        assert_eq!(Graph::path(3).clique_counts(), vec![1, 3, 2]);
        assert_eq!(Graph::complete(4).clique_counts(), vec![1, 4, 6, 4, 1]);
        assert_eq!(c4().clique_counts(), vec![1, 4, 4]);
        assert_eq!(Graph::path(3).non_edges(), vec![(0, 2)]);
        assert!(Graph::complete(4).non_edges().is_empty());
        assert_eq!(c4().non_edges(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn cut_coefficient_examples() {
        assert_eq!(Graph::path(3).cut_coefficients(None).coeffs, vec![0, 0, 1, 0]);
        assert_eq!(c4().cut_coefficients(None).coeffs, vec![0, 0, 2, 0, 0]);
        assert!(Graph::complete(5).cut_coefficients(None).coeffs.iter().all(|&c| c == 0));
        let capped = c4().cut_coefficients(Some(2));
        assert!(capped.truncated);
        assert_eq!(capped.get(2), Some(2));
        assert_eq!(capped.get(3), None);
        assert_eq!(capped.get(9), Some(0));
    }

    #[test]
    fn maximal_disconnected_examples() {
        let sets = |g: &Graph| -> Vec<Vec<usize>> {
            g.maximal_disconnected_subsets().into_iter().map(VertexSet::to_vec).collect()
        };
        assert_eq!(sets(&Graph::path(3)), vec![vec![0, 2]]);
        assert_eq!(sets(&c4()), vec![vec![0, 2], vec![1, 3]]);
        assert!(sets(&Graph::complete(4)).is_empty());
        assert_eq!(sets(&Graph::empty(3)), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn gosper_enumeration() {
        let all: Vec<u64> = subsets_of_size(5, 2).collect();
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(subsets_of_size(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(64, 64).count(), 1);
    }

    #[test]
    fn weighted_graph_validation() {
        let g = Graph::path(3);
        assert!(WeightedGraph::new(g.clone(), vec![2, 1]).is_err());
        assert!(WeightedGraph::new(g.clone(), vec![2]).is_err());
        let wg = WeightedGraph::new(g, vec![3, 2]).unwrap();
        assert_eq!(wg.weight(1, 0), Some(3));
    }
}
