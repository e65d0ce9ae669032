//! Simple undirected graphs with a canonical directed-edge index.
//!
//! Each undirected edge `{u, v}` appears as two directed edges `u->v` and
//! `v->u`. Directed edges are stored grouped by their tail vertex, with heads
//! sorted, so edge ids `offsets[u]..offsets[u + 1]` are the edges leaving `u`.
//! The reverse of every directed edge is precomputed.

mod census;
mod config_model;
mod corpus;
mod io;
mod sbm;

use std::collections::HashSet;
use std::ops::Range;

pub use census::{component_census, ComponentInfo, ComponentKind};
pub use config_model::{config_model_sample, DegreeSeqParams};
pub use corpus::{erdos_renyi, random_regular, random_tree, small_corpus, CorpusGraph};
pub use io::{
    load_edge_list, load_edge_list_reindexed, load_labels, load_weighted_edge_list, parse_edge_list,
    parse_weighted_edge_list, read_labels, write_edge_list, write_labels, ReindexedGraph,
};
pub use sbm::{sbm_sample, SbmParams};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    heads: Vec<usize>,
    tails: Vec<usize>,
    reverse: Vec<usize>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Rejects self-loops, duplicates (in
    /// either orientation) and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidParams(format!(
                    "edge {i} ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: i + 1,
                    vertex: u,
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge { line: i + 1, u, v });
            }
        }
        Ok(Self::from_simple_edges(n, edges))
    }

    /// Caller guarantees the edge list is simple and in range.
    pub(crate) fn from_simple_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = offsets[n];
        let mut heads = vec![0usize; total];
        let mut fill = offsets[..n].to_vec();
        for &(u, v) in edges {
            heads[fill[u]] = v;
            fill[u] += 1;
            heads[fill[v]] = u;
            fill[v] += 1;
        }
        let mut tails = vec![0usize; total];
        for u in 0..n {
            heads[offsets[u]..offsets[u + 1]].sort_unstable();
            tails[offsets[u]..offsets[u + 1]].fill(u);
        }
        let mut g = Graph {
            offsets,
            heads,
            tails,
            reverse: Vec::new(),
        };
        g.reverse = (0..total)
            .map(|e| {
                g.edge_id(g.heads[e], g.tails[e])
                    .expect("every directed edge has a reverse")
            })
            .collect();
        g
    }

    pub fn empty(n: usize) -> Self {
        Self::from_simple_edges(n, &[])
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.heads.len() / 2
    }

    pub fn num_directed(&self) -> usize {
        self.heads.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.heads[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Ids of the directed edges leaving `v`, in increasing head order.
    pub fn out_edges(&self, v: usize) -> Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tails[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.heads[e]
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.tails[e], self.heads[e])
    }

    pub fn reverse(&self, e: usize) -> usize {
        self.reverse[e]
    }

    pub(crate) fn reverse_slice(&self) -> &[usize] {
        &self.reverse
    }

    pub(crate) fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub(crate) fn heads(&self) -> &[usize] {
        &self.heads
    }

    /// Id of the directed edge `u->v`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n() {
            return None;
        }
        let lo = self.offsets[u];
        self.neighbors(u).binary_search(&v).ok().map(|i| lo + i)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Undirected edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_directed())
            .map(|e| self.endpoints(e))
            .filter(|&(u, v)| u < v)
    }

    /// Subgraph induced by `keep` (distinct vertex ids), relabeled so that
    /// `keep[i]` becomes vertex `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut map = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter(|&(u, v)| map[u] != usize::MAX && map[v] != usize::MAX)
            .map(|(u, v)| (map[u], map[v]))
            .collect();
        Graph::from_simple_edges(keep.len(), &edges)
    }

    /// Vertices with at least one neighbour, ascending.
    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.degree(v) > 0).collect()
    }

    /// Vertices left after repeatedly deleting degree-one vertices,
    /// ascending. Every survivor has degree 0 or at least 2 in the induced
    /// subgraph.
    pub fn strip_leaves(&self) -> Vec<usize> {
        let mut alive = vec![true; self.n()];
        let mut deg = self.degrees();
        let mut stack: Vec<usize> = (0..self.n()).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] || deg[v] != 1 {
                continue;
            }
            alive[v] = false;
            for &u in self.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        stack.push(u);
                    }
                }
            }
        }
        (0..self.n()).filter(|&v| alive[v]).collect()
    }

    /// `(mean degree, branching ratio)` with branching ratio
    /// `sum d^2 / sum d - 1`.
    pub fn degree_stats(&self) -> Result<(f64, f64)> {
        if self.m() == 0 {
            return Err(Error::EmptyGraph);
        }
        let (mut s1, mut s2) = (0.0, 0.0);
        for v in 0..self.n() {
            let d = self.degree(v) as f64;
            s1 += d;
            s2 += d * d;
        }
        Ok((s1 / self.n() as f64, s2 / s1 - 1.0))
    }
}

/// A graph together with planted group labels in `0..q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<usize>,
    pub q: usize,
}

impl LabeledGraph {
    pub fn new(graph: Graph, labels: Vec<usize>, q: usize) -> Result<Self> {
        if labels.len() != graph.n() {
            return Err(Error::LengthMismatch(labels.len(), graph.n()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= q) {
            return Err(Error::InvalidParams(format!("label {bad} >= q = {q}")));
        }
        Ok(LabeledGraph { graph, labels, q })
    }

    /// Vertex count per group.
    pub fn group_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.q];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }
}

/// Small named graphs used throughout the tests and examples.
pub mod families {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_simple_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_simple_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_simple_edges(n, &edges)
    }

    /// `K_{1,k}` with the center at vertex 0.
    pub fn star(k: usize) -> Graph {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_simple_edges(k + 1, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degree_stats_regular_and_star() {
        assert_eq!(complete(4).degree_stats().unwrap(), (3.0, 2.0));
        assert_eq!(star(3).degree_stats().unwrap(), (1.5, 1.0));
        assert!(matches!(Graph::empty(5).degree_stats(), Err(Error::EmptyGraph)));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let h = g.induced(&[1, 2, 4]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let g = Graph::from_edges(4, &[(0, 2)]).unwrap();
        assert_eq!(g.non_isolated(), vec![0, 2]);
    }

    #[test]
    fn strip_leaves_keeps_cycles() {
        // triangle 0-1-2 with a pendant path 2-3-4 and an isolated vertex 5
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.strip_leaves(), vec![0, 1, 2, 5]);
        // a path peels down to one isolated vertex
        assert_eq!(path(5).strip_leaves().len(), 1);
        assert_eq!(cycle(5).strip_leaves().len(), 5);
    }

    #[test]
    fn rejects_non_simple_input() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(Error::SelfLoop { line: 1, vertex: 0 })
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge { line: 2, .. })
        ));
    }

    #[test]
    fn labeled_graph_validates_labels() {
        assert!(LabeledGraph::new(path(3), vec![0, 1, 2], 2).is_err());
        assert!(LabeledGraph::new(path(3), vec![0, 1], 2).is_err());
        let lg = LabeledGraph::new(path(3), vec![0, 1, 1], 2).unwrap();
        assert_eq!(lg.group_sizes(), vec![1, 2]);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..30).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
                let mut seen = HashSet::new();
                let edges: Vec<_> = pairs
                    .into_iter()
                    .filter(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
                    .collect();
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn edge_index_round_trip(g in arb_graph()) {
            for e in 0..g.num_directed() {
                let (u, v) = g.endpoints(e);
                prop_assert_eq!(g.edge_id(u, v), Some(e));
                let r = g.reverse(e);
                prop_assert_eq!(g.endpoints(r), (v, u));
                prop_assert_eq!(g.reverse(r), e);
            }
            for v in 0..g.n() {
                let incoming = (0..g.num_directed()).filter(|&e| g.head(e) == v).count();
                prop_assert_eq!(incoming, g.degree(v));
                prop_assert!(g.neighbors(v).windows(2).all(|w| w[0] < w[1]));
            }
            prop_assert_eq!(g.edges().count(), g.m());
        }
    }
}
