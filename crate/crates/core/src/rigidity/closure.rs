use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Framework;
use crate::error::{invalid, Result};
use crate::graphs::{pair_count, pair_from_index, Graph};

/// The `d`-rigidity closure of a graph: every pair whose rigidity row lies in
/// the span of the graph's rows.
#[derive(Clone, Debug)]
pub struct ClosureGraph {
    base: Graph,
    d: usize,
    rank: usize,
    closure: Graph,
}

impl ClosureGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Rank of the base graph, which is also the rank of the closure.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The closure as a graph on the base's vertex set.
    pub fn graph(&self) -> &Graph {
        &self.closure
    }

    /// All closure pairs, sorted, including the base edges.
    pub fn edges(&self) -> &[(usize, usize)] {
        self.closure.edges()
    }

    pub fn len(&self) -> usize {
        self.closure.edge_count()
    }

    pub fn is_empty(&self) -> bool {
        self.closure.edge_count() == 0
    }

    /// Closure pairs that are not base edges.
    pub fn new_edges(&self) -> Vec<(usize, usize)> {
        self.closure
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| !self.base.has_edge(u, v))
            .collect()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.closure.has_edge(u, v)
    }

    pub fn is_complete(&self) -> bool {
        self.closure.is_complete()
    }

    /// Fraction of all `C(n, 2)` pairs in the closure (1 when `n < 2`).
    pub fn density(&self) -> f64 {
        let total = pair_count(self.base.n());
        if total == 0 {
            1.0
        } else {
            self.len() as f64 / total as f64
        }
    }

    /// Splits the vertices by closure degree and checks, on at most
    /// `max_pairs` pairs of the high-degree side, that a greedy chain
    /// `v_3, .., v_{d+2}` of common closure neighbors exists and that the pair
    /// is itself a closure edge.
    ///
    /// `B` holds the vertices with closure degree at most
    /// `(1 - 1/(4d)) (n - 1)`; `A` is the rest. When `A` has more than
    /// `max_pairs` pairs, a uniform sample of that many is checked.
    pub fn clique_trace<R: Rng + ?Sized>(&self, max_pairs: usize, rng: &mut R) -> CliqueTrace {
        let n = self.base.n();
        let d = self.d;
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for v in 0..n {
            // d_v <= (1 - 1/(4d)) (n - 1), kept in integers
            if 4 * d * self.closure.degree(v) <= (4 * d - 1) * n.saturating_sub(1) {
                b.push(v);
            } else {
                a.push(v);
            }
        }

        let words = n.div_ceil(64);
        let mut adj = vec![0u64; n * words];
        for &(u, v) in self.closure.edges() {
            adj[u * words + v / 64] |= 1 << (v % 64);
            adj[v * words + u / 64] |= 1 << (u % 64);
        }
        let mut in_a = vec![0u64; words];
        for &v in &a {
            in_a[v / 64] |= 1 << (v % 64);
        }

        let total = pair_count(a.len());
        let picks: Vec<usize> = if total <= max_pairs {
            (0..total).collect()
        } else {
            let mut s = index::sample(rng, total, max_pairs).into_vec();
            s.sort_unstable();
            s
        };

        let mut failures = 0;
        let mut chain = Vec::with_capacity(d + 2);
        let mut common = vec![0u64; words];
        for &k in &picks {
            let (i, j) = pair_from_index(k);
            let (v1, v2) = (a[i], a[j]);
            chain.clear();
            chain.extend([v1, v2]);
            common.copy_from_slice(&in_a);
            for &v in &chain {
                for w in 0..words {
                    common[w] &= adj[v * words + w];
                }
            }
            let mut ok = true;
            while chain.len() < d + 2 {
                let next = common
                    .iter()
                    .enumerate()
                    .find(|(_, &w)| w != 0)
                    .map(|(w, &bits)| w * 64 + bits.trailing_zeros() as usize);
                let Some(v) = next else {
                    ok = false;
                    break;
                };
                chain.push(v);
                for w in 0..words {
                    common[w] &= adj[v * words + w];
                }
            }
            if !ok || !self.contains(v1, v2) {
                failures += 1;
            }
        }

        CliqueTrace {
            a,
            b,
            pairs_checked: picks.len(),
            failures,
            witness_ok: failures == 0,
        }
    }
}

/// Outcome of [`ClosureGraph::clique_trace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueTrace {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub pairs_checked: usize,
    pub failures: usize,
    /// Every checked pair had a full greedy chain and lies in the closure.
    pub witness_ok: bool,
}

/// Computes the closure from one frozen basis of `g`, testing the non-edges
/// in parallel.
pub fn closure<R: Rng + ?Sized>(g: &Graph, d: usize, rng: &mut R) -> Result<ClosureGraph> {
    if d == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    let n = g.n();
    if n < 2 {
        return Ok(ClosureGraph {
            base: g.clone(),
            d,
            rank: 0,
            closure: g.clone(),
        });
    }
    let fw = Framework::for_graph(g, d, rng)?;
    let closure = if fw.is_full() {
        Graph::complete(n)
    } else {
        let candidates: Vec<(usize, usize)> = g.non_edges().collect();
        let added: Vec<(usize, usize)> = candidates
            .into_par_iter()
            .filter(|&(u, v)| fw.spans(u, v))
            .collect();
        g.with_edges(added)?
    };
    Ok(ClosureGraph {
        base: g.clone(),
        d,
        rank: fw.rank(),
        closure,
    })
}

/// Default pair budget for [`clique_in_closure`].
pub const DEFAULT_CLIQUE_PAIRS: usize = 2000;

/// Closure of `g` followed by [`ClosureGraph::clique_trace`] with
/// [`DEFAULT_CLIQUE_PAIRS`].
pub fn clique_in_closure<R: Rng + ?Sized>(g: &Graph, d: usize, rng: &mut R) -> Result<CliqueTrace> {
    let c = closure(g, d, rng)?;
    Ok(c.clique_trace(DEFAULT_CLIQUE_PAIRS, rng))
}
