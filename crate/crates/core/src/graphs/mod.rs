//! Simple undirected graphs on `0..n` and the combinatorial machinery around
//! them: random models, connectivity, cores, orientability, expansion and a
//! few explicit constructions.

mod constructions;
mod cores;
mod expansion;
mod io;
mod oracles;
mod orient;
mod random;

pub use constructions::{
    complete_minus_edge, cycle, disjoint_union, gadget_graph, henneberg_minimally_rigid, path,
    star,
};
pub use cores::{extended_core, kcore};
pub use expansion::{dichotomy_violator, expansion_violator, ExpansionMode, EXHAUSTIVE_MAX_N};
pub use io::{format_edge_list, parse_edge_list, read_edge_list, write_edge_list};
pub use oracles::{graph_oracles, is_2_connected, is_connected, GraphOracles};
pub use orient::{is_d_orientable, Orientability};
pub use random::{gnm, gnp, EvolutionStream};

use crate::error::{Error, Result};

/// Number of unordered pairs on `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{u, v}` in colexicographic order:
/// (0,1), (0,2), (1,2), (0,3), ...
pub fn pair_index(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    v * (v - 1) / 2 + u
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(k: usize) -> (usize, usize) {
    let mut v = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0) as usize;
    while v * (v - 1) / 2 > k {
        v -= 1;
    }
    while (v + 1) * v / 2 <= k {
        v += 1;
    }
    (k - v * (v - 1) / 2, v)
}

/// A simple undirected graph on the vertex set `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted; neighbor lists are
/// sorted as well. Graphs are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_sorted_unique(n, edges.collect())
    }

    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated
    /// pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "repeated edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj }
    }

    /// Builds a graph from distinct pairs in arbitrary orientation and order.
    pub(crate) fn from_distinct_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut list: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        list.sort_unstable();
        debug_assert!(list.windows(2).all(|w| w[0] != w[1]));
        Self::from_sorted_unique(n, list)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Minimum degree; zero for the graph with no vertices.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == pair_count(self.n)
    }

    /// Pairs `u < v` that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| self.adj[u].binary_search(&v).is_err())
                .map(move |v| (u, v))
        })
    }

    /// The subgraph induced on `vertices`, relabelled to `0..k` in the order
    /// given.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut label = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            label[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = label[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Graph::from_sorted_unique(vertices.len(), edges)
    }

    /// Number of edges with both endpoints in `vertices`.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        self.edges
            .iter()
            .filter(|&&(u, v)| inside[u] && inside[v])
            .count()
    }

    /// This graph plus the given pairs; pairs already present are ignored.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut all = self.edges.clone();
        for (a, b) in extra {
            if a == b || a >= self.n || b >= self.n {
                return Err(Error::InvalidGraph(format!("bad pair ({a}, {b})")));
            }
            all.push((a.min(b), a.max(b)));
        }
        all.sort_unstable();
        all.dedup();
        Ok(Graph::from_sorted_unique(self.n, all))
    }

    /// Whether every edge of `self` is an edge of `other` (same vertex set).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges.iter().all(|&(u, v)| other.has_edge(u, v))
    }

    /// Neighbor sets as bitmasks; only for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }
}
