use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Geometric;

use super::{pair_count, pair_from_index, Graph};
use crate::error::{invalid, Result};

/// Erdős–Rényi `G(n, p)`: every pair independently with probability `p`.
///
/// Uses geometric skips between successive present pairs, so the cost is
/// linear in the number of edges rather than in `n^2`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("edge probability {p} outside [0, 1]")));
    }
    if p == 0.0 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let total = pair_count(n) as u64;
    let skips = Geometric::new(p).map_err(|e| invalid(e.to_string()))?;
    let mut edges = Vec::new();
    let mut next: u64 = 0;
    loop {
        next = match next.checked_add(rng.sample(skips)) {
            Some(k) if k < total => k,
            _ => break,
        };
        edges.push(pair_from_index(next as usize));
        next += 1;
    }
    Ok(Graph::from_sorted_unique(n, sorted(edges)))
}

/// Uniform random graph with exactly `m` edges.
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    let total = pair_count(n);
    if m > total {
        return Err(invalid(format!("{m} edges requested but only {total} pairs exist")));
    }
    let edges = index::sample(rng, total, m)
        .into_iter()
        .map(pair_from_index)
        .collect();
    Ok(Graph::from_sorted_unique(n, sorted(edges)))
}

fn sorted(mut edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    edges.sort_unstable();
    edges
}

/// A uniformly random ordering of all pairs on `n` vertices. Its prefix of
/// length `M` is distributed as `G(n, M)`, for all `M` at once.
#[derive(Clone, Debug)]
pub struct EvolutionStream {
    n: usize,
    seed: u64,
    order: Vec<(usize, usize)>,
}

impl EvolutionStream {
    /// Fisher–Yates shuffle of every pair, driven by a generator seeded
    /// from `seed`.
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("evolution needs at least one vertex"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<_> = (0..pair_count(n)).map(pair_from_index).collect();
        order.shuffle(&mut rng);
        Ok(Self { n, seed, order })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[(usize, usize)] {
        &self.order
    }

    /// `G(n, m)`: the graph on the first `m` edges of the stream.
    pub fn prefix(&self, m: usize) -> Graph {
        let m = m.min(self.order.len());
        Graph::from_distinct_pairs(self.n, self.order[..m].iter().copied())
    }
}
