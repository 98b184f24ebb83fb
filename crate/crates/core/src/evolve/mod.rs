//! The random graph process: hitting times of minimum degree, rigidity and
//! global rigidity along one edge stream, and the two couplings used to
//! relate them.

mod coupling;
mod hitting;
mod sandwich;

pub use coupling::{coupled_closure_sampler, CouplingTrace};
pub use hitting::{hitting_times, hitting_times_on, HittingTimes};
pub use sandwich::{sandwich_coupling, sandwich_probabilities, Sandwich, SANDWICH_MIN_N};

/// Minimum degree of a growing graph, updated in O(1) amortized per edge.
#[derive(Clone, Debug)]
pub(crate) struct MinDegreeTracker {
    degree: Vec<usize>,
    // count[k]: vertices of degree exactly k
    count: Vec<usize>,
    min: usize,
}

impl MinDegreeTracker {
    pub(crate) fn new(n: usize) -> Self {
        let mut count = vec![0; n.max(1)];
        count[0] = n;
        Self {
            degree: vec![0; n],
            count,
            min: 0,
        }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        for w in [u, v] {
            let k = self.degree[w];
            self.count[k] -= 1;
            self.count[k + 1] += 1;
            self.degree[w] = k + 1;
        }
        while self.min + 1 < self.count.len() && self.count[self.min] == 0 {
            self.min += 1;
        }
    }

    pub(crate) fn min(&self) -> usize {
        self.min
    }
}
