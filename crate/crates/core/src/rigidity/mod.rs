//! The generic rigidity matroid, realized by rigidity matrices at random
//! points of `F_q^d`.
//!
//! A uniformly random embedding plays the role of a generic one. Ranks can
//! only drop under specialization, so every rank computed here is at most the
//! generic rank, and equals it except with probability at most `dn/q`
//! (about `10^-15` at the sizes this crate is used for).

mod closure;
mod components;
mod global;

pub use closure::{clique_in_closure, closure, CliqueTrace, ClosureGraph, DEFAULT_CLIQUE_PAIRS};
pub use components::{rigid_components, ComponentMode, EXACT_COMPONENTS_MAX_N};
pub use global::{is_globally_rigid, is_globally_rigid_with, stress_matrix_rank, DEFAULT_GLOBAL_REPS};

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;

use crate::error::{invalid, Result};
use crate::graphs::Graph;
use crate::primefield::{FieldElement, Insertion, RowBasis, SparseVector};

pub(crate) fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Generic rank of the rigidity matrix of `K_n` in dimension `d`:
/// `C(n, 2)` while `n <= d + 1`, and `dn - C(d+1, 2)` from there on.
pub fn full_rank(n: usize, d: usize) -> usize {
    if n <= d + 1 {
        binom2(n)
    } else {
        d * n - binom2(d + 1)
    }
}

/// Coordinates for `n` points in `F_q^d`, drawn uniformly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    n: usize,
    d: usize,
    coords: Vec<FieldElement>,
}

impl Embedding {
    pub fn sample<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(invalid(format!("embedding needs n >= 1 and d >= 1, got n = {n}, d = {d}")));
        }
        let coords = (0..n * d).map(|_| FieldElement::random(rng)).collect();
        Ok(Self { n, d, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn point(&self, v: usize) -> &[FieldElement] {
        &self.coords[v * self.d..(v + 1) * self.d]
    }

    /// The points of `vertices`, relabelled `0..k` in the order given.
    pub fn restrict(&self, vertices: &[usize]) -> Embedding {
        let coords = vertices.iter().flat_map(|&v| self.point(v).iter().copied()).collect();
        Embedding {
            n: vertices.len(),
            d: self.d,
            coords,
        }
    }
}

/// Row of the rigidity matrix for the pair `{u, v}`: `p(u) - p(v)` in the
/// columns `u*d .. u*d + d` and `p(v) - p(u)` in those of `v`.
pub fn edge_row(emb: &Embedding, u: usize, v: usize) -> Result<SparseVector> {
    if u == v {
        return Err(invalid(format!("edge row needs two distinct vertices, got {u} twice")));
    }
    if u >= emb.n || v >= emb.n {
        return Err(invalid(format!("vertex out of range for n = {}", emb.n)));
    }
    let d = emb.d;
    let entries = (0..d).flat_map(|k| {
        let diff = emb.point(u)[k] - emb.point(v)[k];
        [(u * d + k, diff), (v * d + k, -diff)]
    });
    SparseVector::new(d * emb.n, entries)
}

/// An embedding together with the row space of the edges inserted so far.
///
/// Vertex blocks may be laid out in any column order; rank and span
/// membership do not depend on it, but the amount of fill-in in the reduced
/// basis does.
#[derive(Clone, Debug)]
pub struct Framework {
    emb: Embedding,
    block: Vec<usize>,
    basis: RowBasis,
}

impl Framework {
    /// Vertex `v` in columns `v*d ..`.
    pub fn new(emb: Embedding) -> Self {
        let block = (0..emb.n).collect();
        Self::with_blocks(emb, block)
    }

    /// Lays vertices out so that the last vertex of `order` occupies the
    /// leftmost block. Inserting edges in the same order then places every
    /// new pivot in a block no stored row touches yet.
    pub fn with_order(emb: Embedding, order: &[usize]) -> Self {
        let n = emb.n;
        let mut block = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            block[v] = n - 1 - pos;
        }
        Self::with_blocks(emb, block)
    }

    fn with_blocks(emb: Embedding, block: Vec<usize>) -> Self {
        let basis = RowBasis::new(emb.n * emb.d);
        Self { emb, block, basis }
    }

    /// Builds the framework of `g` at a fresh random embedding.
    pub fn for_graph<R: Rng + ?Sized>(g: &Graph, d: usize, rng: &mut R) -> Result<Self> {
        let emb = Embedding::sample(g.n().max(1), d, rng)?;
        Ok(Self::for_graph_at(g, emb))
    }

    /// Builds the framework of `g` at the given embedding, inserting edges
    /// along a maximum-cardinality search order.
    pub fn for_graph_at(g: &Graph, emb: Embedding) -> Self {
        let order = insertion_order(g);
        let mut pos = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = g.edges().to_vec();
        edges.sort_by_key(|&(u, v)| pos[u].max(pos[v]));
        let mut fw = Self::with_order(emb, &order);
        let target = fw.full_rank();
        for (u, v) in edges {
            if fw.rank() == target {
                break;
            }
            fw.insert_edge(u, v);
        }
        fw
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn basis(&self) -> &RowBasis {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn full_rank(&self) -> usize {
        full_rank(self.emb.n, self.emb.d)
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.full_rank()
    }

    /// Rigidity row of `{u, v}` in this framework's column layout.
    pub fn row(&self, u: usize, v: usize) -> SparseVector {
        let d = self.emb.d;
        let (bu, bv) = (self.block[u] * d, self.block[v] * d);
        let entries = (0..d).flat_map(|k| {
            let diff = self.emb.point(u)[k] - self.emb.point(v)[k];
            [(bu + k, diff), (bv + k, -diff)]
        });
        SparseVector::new(d * self.emb.n, entries).expect("block columns are in range")
    }

    pub fn insert_edge(&mut self, u: usize, v: usize) -> Insertion {
        let row = self.row(u, v);
        self.basis.try_insert(&row).expect("row width matches basis")
    }

    /// Whether the row of `{u, v}` lies in the current span.
    pub fn spans(&self, u: usize, v: usize) -> bool {
        self.basis.in_span(&self.row(u, v)).expect("row width matches basis")
    }
}

/// Maximum-cardinality search: start from a vertex of largest degree, then
/// always take the unvisited vertex with the most visited neighbors (ties go
/// to larger degree, then smaller index).
fn insertion_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut visited = vec![false; n];
    let mut count = vec![0usize; n];
    let mut heap: BinaryHeap<(usize, usize, Reverse<usize>)> =
        (0..n).map(|v| (0, g.degree(v), Reverse(v))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some((c, _, Reverse(v))) = heap.pop() {
        if visited[v] || c != count[v] {
            continue;
        }
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                count[w] += 1;
                heap.push((count[w], g.degree(w), Reverse(w)));
            }
        }
    }
    order
}

/// Rank of the rigidity matrix of `g` at a fresh random embedding.
pub fn rigidity_rank<R: Rng + ?Sized>(g: &Graph, d: usize, rng: &mut R) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    Ok(Framework::for_graph(g, d, rng)?.rank())
}

/// Whether `g` is `d`-rigid. With at most `d + 1` vertices this means
/// complete; otherwise the rank must reach `dn - C(d+1, 2)`.
///
/// A `false` answer is wrong with probability at most `dn/q`; a `true`
/// answer is never wrong, since specialization only lowers rank.
pub fn is_rigid<R: Rng + ?Sized>(g: &Graph, d: usize, rng: &mut R) -> Result<bool> {
    is_rigid_with(g, d, 1, rng)
}

/// [`is_rigid`] repeated with `reps` independent embeddings, OR-combined.
pub fn is_rigid_with<R: Rng + ?Sized>(g: &Graph, d: usize, reps: usize, rng: &mut R) -> Result<bool> {
    if d == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    if g.n() <= d + 1 {
        return Ok(g.is_complete());
    }
    for _ in 0..reps.max(1) {
        if Framework::for_graph(g, d, rng)?.is_full() {
            return Ok(true);
        }
    }
    Ok(false)
}
