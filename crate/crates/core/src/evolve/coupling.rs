use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graphs::{pair_count, pair_from_index, Graph};
use crate::rigidity::{full_rank, Embedding, Framework};

/// One run of the closure-driven sampler of `G(n, M)`.
#[derive(Clone, Debug, Serialize)]
pub struct CouplingTrace {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    /// The uniforms `r_1 .. r_M`; every choice the sampler makes is a
    /// function of them.
    pub r: Vec<f64>,
    /// Edges in arrival order.
    pub order: Vec<(usize, usize)>,
    #[serde(skip)]
    pub graph: Graph,
    /// Steps whose `r_i` fell below that step's threshold.
    pub low_count: usize,
    pub final_rank: usize,
    pub closure_size: usize,
}

/// Growing index set with O(1) insertion, removal and uniform access.
struct IndexedSet {
    items: Vec<usize>,
    slot: Vec<usize>,
}

const ABSENT: usize = usize::MAX;

impl IndexedSet {
    fn new(universe: usize) -> Self {
        Self {
            items: Vec::new(),
            slot: vec![ABSENT; universe],
        }
    }

    fn len(&self) -> usize {
        self.items.len()
    }

    fn insert(&mut self, x: usize) {
        self.slot[x] = self.items.len();
        self.items.push(x);
    }

    fn remove(&mut self, x: usize) {
        let at = self.slot[x];
        let last = self.items.pop().expect("remove from non-empty set");
        if last != x {
            self.items[at] = last;
            self.slot[last] = at;
        }
        self.slot[x] = ABSENT;
    }
}

/// Samples `G(n, M)` one edge at a time. With `N = C(n, 2)` and closure
/// `C` of the current graph, step `i` compares `r_i` with
/// `t_i = (N - |C|) / (N - (i - 1))`: below it, the edge is uniform among
/// pairs outside `C`; otherwise uniform among closure pairs not yet used.
/// Each step is therefore uniform over all unused pairs.
///
/// A low step always raises the rank, so `low_count` equals the final rank
/// and never exceeds `dn - C(d+1, 2)`; both are checked and reported as
/// [`Error::Integrity`] if broken.
pub fn coupled_closure_sampler<R: Rng + ?Sized>(n: usize, m: usize, d: usize, rng: &mut R) -> Result<CouplingTrace> {
    let total = pair_count(n);
    if d == 0 || n < 2 {
        return Err(invalid(format!("sampler needs n >= 2 and d >= 1, got n = {n}, d = {d}")));
    }
    if m > total {
        return Err(invalid(format!("{m} edges requested but only {total} pairs exist")));
    }
    let mut fw = Framework::new(Embedding::sample(n, d, rng)?);
    let mut outside = IndexedSet::new(total);
    for k in 0..total {
        outside.insert(k);
    }
    let mut spare = IndexedSet::new(total);
    let mut r = Vec::with_capacity(m);
    let mut order = Vec::with_capacity(m);
    let mut low_count = 0;

    for i in 0..m {
        let ri: f64 = rng.random();
        r.push(ri);
        let unused = total - i;
        let t = outside.len() as f64 / unused as f64;
        let k = if ri < t {
            if outside.len() == 0 {
                return Err(Error::Integrity(format!("step {}: low draw with closure complete", i + 1)));
            }
            let k = outside.items[pick(ri / t, outside.len())];
            outside.remove(k);
            let (u, v) = pair_from_index(k);
            if fw.insert_edge(u, v) != crate::primefield::Insertion::Increased {
                return Err(Error::Integrity(format!("pair ({u}, {v}) outside the closure is dependent")));
            }
            low_count += 1;
            let now_spanned: Vec<usize> = outside
                .items
                .iter()
                .copied()
                .filter(|&x| {
                    let (a, b) = pair_from_index(x);
                    fw.spans(a, b)
                })
                .collect();
            for x in now_spanned {
                outside.remove(x);
                spare.insert(x);
            }
            k
        } else {
            if spare.len() == 0 {
                return Err(Error::Integrity(format!("step {}: high draw with no spare closure pair", i + 1)));
            }
            let k = spare.items[pick((ri - t) / (1.0 - t), spare.len())];
            spare.remove(k);
            k
        };
        order.push(pair_from_index(k));
    }

    let final_rank = fw.rank();
    if low_count != final_rank {
        return Err(Error::Integrity(format!("low_count {low_count} differs from rank {final_rank}")));
    }
    if low_count > full_rank(n, d) {
        return Err(Error::Integrity(format!("low_count {low_count} exceeds the rank cap")));
    }
    let graph = Graph::from_edges(n, order.iter().copied())?;
    Ok(CouplingTrace {
        n,
        m,
        d,
        r,
        order,
        graph,
        low_count,
        final_rank,
        closure_size: total - outside.len(),
    })
}

/// Index in `0..len` from a value uniform in `[0, 1)`.
fn pick(x: f64, len: usize) -> usize {
    ((x * len as f64) as usize).min(len - 1)
}
