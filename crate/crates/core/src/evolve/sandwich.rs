use rand::Rng;
use rand_distr::Geometric;

use super::MinDegreeTracker;
use crate::error::{invalid, Result};
use crate::graphs::{pair_count, pair_from_index, Graph};

/// Smallest `n` for which `ln ln ln n > 0`.
pub const SANDWICH_MIN_N: usize = 16;

/// `G_- <= G(n, M_d) <= G_+`, all read off one family of i.i.d. uniform
/// pair ranks.
#[derive(Clone, Debug)]
pub struct Sandwich {
    pub n: usize,
    pub d: usize,
    pub p_minus: f64,
    pub p_plus: f64,
    /// Length of the rank-order prefix at which minimum degree reaches `d`.
    pub m_d: usize,
    pub g_minus: Graph,
    pub g_star: Graph,
    pub g_plus: Graph,
    /// `g_minus` is a subgraph of `g_star`, which is a subgraph of `g_plus`.
    pub valid: bool,
}

/// `(ln n + (d-1) ln ln n -+ ln ln ln n) / n`.
pub fn sandwich_probabilities(n: usize, d: usize) -> Result<(f64, f64)> {
    if n < SANDWICH_MIN_N || d == 0 {
        return Err(invalid(format!(
            "sandwich needs n >= {SANDWICH_MIN_N} and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let l = (n as f64).ln();
    let ll = l.ln();
    let lll = ll.ln();
    let base = l + (d as f64 - 1.0) * ll;
    let (lo, hi) = ((base - lll) / n as f64, (base + lll) / n as f64);
    if !(lo > 0.0 && hi < 1.0) {
        return Err(invalid(format!("sandwich probabilities ({lo}, {hi}) leave (0, 1)")));
    }
    Ok((lo, hi))
}

/// Samples the coupling lazily: only pairs with rank below `p_+` are drawn
/// up front (ranks uniform on `[0, p_+)`). If `G_+` still has a vertex of
/// degree below `d`, further ranks are revealed in bands `[t, 2t)` until the
/// minimum degree reaches `d`.
pub fn sandwich_coupling<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Sandwich> {
    let (p_minus, p_plus) = sandwich_probabilities(n, d)?;
    let total = pair_count(n);
    let mut seen = vec![false; total];
    let mut ranked: Vec<(f64, usize)> = Vec::new();

    let mut lo = 0.0;
    let mut hi = p_plus;
    loop {
        reveal(lo, hi, &mut seen, &mut ranked, rng)?;
        ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
        if let Some(m_d) = hitting_prefix(n, d, &ranked) {
            let prefix = |len: usize| Graph::from_distinct_pairs(n, ranked[..len].iter().map(|&(_, k)| pair_from_index(k)));
            let below = |p: f64| ranked.partition_point(|&(r, _)| r < p);
            let (n_minus, n_plus) = (below(p_minus), below(p_plus));
            return Ok(Sandwich {
                n,
                d,
                p_minus,
                p_plus,
                m_d,
                g_minus: prefix(n_minus),
                g_star: prefix(m_d),
                g_plus: prefix(n_plus),
                valid: n_minus <= m_d && m_d <= n_plus,
            });
        }
        lo = hi;
        hi = (2.0 * hi).min(1.0);
        if lo >= 1.0 {
            return Err(crate::error::Error::Integrity("complete graph below minimum degree d".into()));
        }
    }
}

/// Draws, for every pair not yet revealed, whether its rank lies in
/// `[lo, hi)` given that it is at least `lo`, and a rank for those that do.
fn reveal<R: Rng + ?Sized>(
    lo: f64,
    hi: f64,
    seen: &mut [bool],
    ranked: &mut Vec<(f64, usize)>,
    rng: &mut R,
) -> Result<()> {
    let q = (hi - lo) / (1.0 - lo);
    let total = seen.len();
    let mut take = |k: usize, rng: &mut R| {
        if !seen[k] {
            seen[k] = true;
            ranked.push((lo + (hi - lo) * rng.random::<f64>(), k));
        }
    };
    if q >= 1.0 {
        for k in 0..total {
            take(k, rng);
        }
        return Ok(());
    }
    let skips = Geometric::new(q).map_err(|e| invalid(e.to_string()))?;
    let total = total as u64;
    let mut next: u64 = 0;
    loop {
        next = match next.checked_add(rng.sample(skips)) {
            Some(k) if k < total => k,
            _ => break,
        };
        take(next as usize, rng);
        next += 1;
    }
    Ok(())
}

/// First prefix length of `ranked` with minimum degree at least `d`.
fn hitting_prefix(n: usize, d: usize, ranked: &[(f64, usize)]) -> Option<usize> {
    let mut t = MinDegreeTracker::new(n);
    if t.min() >= d {
        return Some(0);
    }
    for (i, &(_, k)) in ranked.iter().enumerate() {
        let (u, v) = pair_from_index(k);
        t.add_edge(u, v);
        if t.min() >= d {
            return Some(i + 1);
        }
    }
    None
}
