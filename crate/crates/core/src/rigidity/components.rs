use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{full_rank, Embedding, Framework};
use crate::error::{invalid, Error, Result};
use crate::graphs::{is_connected, Graph};

/// Largest vertex count accepted by [`ComponentMode::Exact`].
pub const EXACT_COMPONENTS_MAX_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentMode {
    /// Subset enumeration; returns every inclusion-maximal rigid set.
    Exact,
    /// Grow-and-merge fixpoint; every returned set is rigid, but some
    /// maximal rigid sets may be missed or split.
    Heuristic,
}

/// Inclusion-maximal vertex sets inducing `d`-rigid subgraphs. A single edge
/// counts as a rigid set; isolated vertices belong to no set. Sets are sorted
/// and listed in lexicographic order.
pub fn rigid_components<R: Rng + ?Sized>(
    g: &Graph,
    d: usize,
    mode: ComponentMode,
    rng: &mut R,
) -> Result<Vec<Vec<usize>>> {
    if d == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    if g.edge_count() == 0 {
        return Ok(Vec::new());
    }
    let emb = Embedding::sample(g.n(), d, rng)?;
    let mut out = match mode {
        ComponentMode::Exact => exact(g, d, &emb)?,
        ComponentMode::Heuristic => heuristic(g, d, &emb),
    };
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    Ok(out)
}

/// Rank test of the subgraph induced by `set` at the restricted embedding.
fn induces_rigid(g: &Graph, d: usize, emb: &Embedding, set: &[usize]) -> bool {
    let k = set.len();
    let h = g.induced(set);
    if k <= d + 1 {
        return h.is_complete();
    }
    let fw = Framework::for_graph_at(&h, emb.restrict(set));
    fw.rank() == full_rank(k, d)
}

fn exact(g: &Graph, d: usize, emb: &Embedding) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n > EXACT_COMPONENTS_MAX_N {
        return Err(Error::TooLarge {
            what: "exact rigid components",
            n,
            limit: EXACT_COMPONENTS_MAX_N,
        });
    }
    let masks = g.adjacency_masks();
    let mut found: Vec<u64> = Vec::new();
    // Largest sets first: anything inside a found set cannot be maximal.
    for k in (2..=n).rev() {
        let mut s: u64 = (1 << k) - 1;
        while s < 1 << n {
            if !found.iter().any(|&f| s & f == s) && passes_counts(&masks, s, k, d) {
                let set = members(s);
                if is_connected(&g.induced(&set)) && induces_rigid(g, d, emb, &set) {
                    found.push(s);
                }
            }
            // next mask with the same popcount
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    Ok(found.into_iter().map(members).collect())
}

/// Edge-count and minimum-degree necessities for rigidity of the set `s`.
fn passes_counts(masks: &[u64], s: u64, k: usize, d: usize) -> bool {
    let mut twice_edges = 0;
    let mut rest = s;
    let need_deg = d.min(k - 1) as u32;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        let deg = (masks[v] & s).count_ones();
        if deg < need_deg {
            return false;
        }
        twice_edges += deg as usize;
        rest &= rest - 1;
    }
    twice_edges / 2 >= full_rank(k, d)
}

fn members(s: u64) -> Vec<usize> {
    (0..64).filter(|&v| s >> v & 1 == 1).collect()
}

fn heuristic(g: &Graph, d: usize, emb: &Embedding) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut sets: Vec<Vec<bool>> = Vec::new();
    for &(u, v) in g.edges() {
        if sets.iter().any(|s| s[u] && s[v]) {
            continue;
        }
        let mut s = vec![false; n];
        s[u] = true;
        s[v] = true;
        absorb(g, d, &mut s);
        sets.push(s);
    }

    loop {
        let mut merged = None;
        'search: for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let shared = (0..n).filter(|&v| sets[i][v] && sets[j][v]).count();
                if shared >= d.min(n) {
                    let union: Vec<usize> = (0..n).filter(|&v| sets[i][v] || sets[j][v]).collect();
                    if induces_rigid(g, d, emb, &union) {
                        merged = Some((i, j));
                        break 'search;
                    }
                }
            }
        }
        let Some((i, j)) = merged else { break };
        let other = sets.swap_remove(j);
        for v in 0..n {
            sets[i][v] |= other[v];
        }
        absorb(g, d, &mut sets[i]);
        let keep = sets[i].clone();
        let mut idx = 0;
        sets.retain(|s| {
            let this = idx;
            idx += 1;
            this == i || !(0..n).all(|v| !s[v] || keep[v])
        });
    }

    let lists: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| (0..n).filter(|&v| s[v]).collect())
        .collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, s) in lists.iter().enumerate() {
        let contained = lists.iter().enumerate().any(|(j, t)| {
            j != i && t.len() >= s.len() && (t.len() > s.len() || j < i) && s.iter().all(|v| t.binary_search(v).is_ok())
        });
        if !contained && induces_rigid(g, d, emb, s) {
            out.push(s.clone());
        }
    }
    out
}

/// Adds, to a fixpoint, every vertex with at least `min(d, |S|)` neighbors
/// in `S`. Each such step preserves rigidity.
fn absorb(g: &Graph, d: usize, set: &mut [bool]) {
    let n = g.n();
    let mut size = set.iter().filter(|&&b| b).count();
    let mut inside = vec![0usize; n];
    for v in (0..n).filter(|&v| set[v]) {
        for &w in g.neighbors(v) {
            inside[w] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&w| !set[w] && inside[w] >= d.min(size)).collect();
    while let Some(w) = queue.pop_front() {
        if set[w] || inside[w] < d.min(size) {
            continue;
        }
        set[w] = true;
        size += 1;
        for &x in g.neighbors(w) {
            inside[x] += 1;
            if !set[x] && inside[x] >= d.min(size) {
                queue.push_back(x);
            }
        }
    }
}
