use rand::Rng;

use super::Graph;
use crate::error::{invalid, Error, Result};

/// Largest vertex count accepted by the exhaustive subset scans.
pub const EXHAUSTIVE_MAX_N: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionMode {
    /// Every subset `B` with `1 <= |B| <= n/2`; a `None` answer proves the
    /// expansion property.
    Exhaustive,
    /// Simulated annealing for at most `budget` moves; a `None` answer
    /// proves nothing.
    Search { budget: u64 },
}

/// Looks for a set `B` with `1 <= |B| <= n/2` in which every vertex has at
/// most `d - 1` neighbors outside `B`.
pub fn expansion_violator<R: Rng + ?Sized>(
    g: &Graph,
    d: usize,
    mode: ExpansionMode,
    rng: &mut R,
) -> Result<Option<Vec<usize>>> {
    if d == 0 {
        return Err(invalid("expansion degree d must be at least 1"));
    }
    match mode {
        ExpansionMode::Exhaustive => {
            guard(g.n())?;
            let masks = g.adjacency_masks();
            Ok(scan_subsets(g.n(), |b| {
                all_members(b, |v| ((masks[v] & !b).count_ones() as usize) < d)
            }))
        }
        ExpansionMode::Search { budget } => Ok(anneal(g, d, budget, rng)),
    }
}

/// Exhaustive search for a set `B` with `1 <= |B| <= n/2` that breaks both
/// alternatives of the sandwich dichotomy: no vertex of `B` has `d`
/// neighbors outside `B` in `lower`, and `B` spans an edge of `upper`.
pub fn dichotomy_violator(lower: &Graph, upper: &Graph, d: usize) -> Result<Option<Vec<usize>>> {
    if lower.n() != upper.n() {
        return Err(invalid("graphs must share a vertex set"));
    }
    if d == 0 {
        return Err(invalid("expansion degree d must be at least 1"));
    }
    guard(lower.n())?;
    let low = lower.adjacency_masks();
    let up = upper.adjacency_masks();
    Ok(scan_subsets(lower.n(), |b| {
        let spans_edge = !all_members(b, |v| up[v] & b == 0);
        spans_edge && all_members(b, |v| ((low[v] & !b).count_ones() as usize) < d)
    }))
}

fn guard(n: usize) -> Result<()> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge {
            what: "exhaustive subset scan",
            n,
            limit: EXHAUSTIVE_MAX_N,
        });
    }
    Ok(())
}

fn all_members(mut b: u64, mut pred: impl FnMut(usize) -> bool) -> bool {
    while b != 0 {
        let v = b.trailing_zeros() as usize;
        if !pred(v) {
            return false;
        }
        b &= b - 1;
    }
    true
}

/// First subset (in increasing mask order) of size `1..=n/2` satisfying
/// `bad`.
fn scan_subsets(n: usize, mut bad: impl FnMut(u64) -> bool) -> Option<Vec<usize>> {
    let half = (n / 2) as u32;
    if half == 0 {
        return None;
    }
    for b in 1u64..(1u64 << n) {
        if b.count_ones() <= half && bad(b) {
            return Some((0..n).filter(|&v| b >> v & 1 == 1).collect());
        }
    }
    None
}

fn anneal<R: Rng + ?Sized>(g: &Graph, d: usize, budget: u64, rng: &mut R) -> Option<Vec<usize>> {
    let n = g.n();
    let half = n / 2;
    if half == 0 {
        return None;
    }
    let mut in_b = vec![false; n];
    // outside[v]: neighbors of v not in B.
    let mut outside = g.degrees();
    let mut size = 0usize;
    let mut bad = 0usize; // members of B with >= d outside neighbors

    let start = (0..n).min_by_key(|&v| g.degree(v)).unwrap();
    flip(g, d, start, &mut in_b, &mut outside, &mut size, &mut bad);

    let t0 = 2.0f64;
    let t1 = 0.05f64;
    for step in 0..budget {
        if bad == 0 && (1..=half).contains(&size) {
            return Some((0..n).filter(|&v| in_b[v]).collect());
        }
        let v = rng.random_range(0..n);
        let entering = !in_b[v];
        if (entering && size == half) || (!entering && size == 1) {
            continue;
        }
        let before = bad;
        flip(g, d, v, &mut in_b, &mut outside, &mut size, &mut bad);
        let delta = bad as f64 - before as f64;
        let frac = step as f64 / budget.max(1) as f64;
        let temp = t0 * (t1 / t0).powf(frac);
        if delta > 0.0 && rng.random::<f64>() >= (-delta / temp).exp() {
            flip(g, d, v, &mut in_b, &mut outside, &mut size, &mut bad);
        }
    }
    (bad == 0 && (1..=half).contains(&size)).then(|| (0..n).filter(|&v| in_b[v]).collect())
}

fn flip(
    g: &Graph,
    d: usize,
    v: usize,
    in_b: &mut [bool],
    outside: &mut [usize],
    size: &mut usize,
    bad: &mut usize,
) {
    let entering = !in_b[v];
    if entering {
        in_b[v] = true;
        *size += 1;
        if outside[v] >= d {
            *bad += 1;
        }
        for &w in g.neighbors(v) {
            let was = outside[w] >= d;
            outside[w] -= 1;
            if in_b[w] && was && outside[w] < d {
                *bad -= 1;
            }
        }
    } else {
        if outside[v] >= d {
            *bad -= 1;
        }
        in_b[v] = false;
        *size -= 1;
        for &w in g.neighbors(v) {
            let was = outside[w] >= d;
            outside[w] += 1;
            if in_b[w] && !was && outside[w] >= d {
                *bad += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{disjoint_union, star};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn star_has_a_leaf_violator() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let b = expansion_violator(&star(5), 2, ExpansionMode::Exhaustive, &mut rng)
            .unwrap()
            .unwrap();
        assert_eq!(b, vec![1]);
        let found = expansion_violator(&star(5), 2, ExpansionMode::Search { budget: 1000 }, &mut rng)
            .unwrap();
        assert!(found.is_some());
    }

    #[test]
    fn complete_graph_expands() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let k6 = Graph::complete(6);
        assert_eq!(expansion_violator(&k6, 2, ExpansionMode::Exhaustive, &mut rng).unwrap(), None);
        let k16 = Graph::complete(16);
        assert_eq!(expansion_violator(&k16, 2, ExpansionMode::Exhaustive, &mut rng).unwrap(), None);
        assert_eq!(
            expansion_violator(&k16, 2, ExpansionMode::Search { budget: 2000 }, &mut rng).unwrap(),
            None
        );
    }

    #[test]
    fn exhaustive_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = Graph::empty(25);
        assert!(matches!(
            expansion_violator(&g, 2, ExpansionMode::Exhaustive, &mut rng),
            Err(Error::TooLarge { .. })
        ));
        assert!(dichotomy_violator(&g, &g, 1).is_err());
    }

    #[test]
    fn search_finds_a_hidden_weak_block() {
        // Two K_8's joined by one edge: either half is a violator for d = 2.
        let g = disjoint_union(&Graph::complete(8), &Graph::complete(8));
        let g = g.with_edges([(0, 8)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let exact = expansion_violator(&g, 2, ExpansionMode::Exhaustive, &mut rng).unwrap();
        assert!(exact.is_some());
        let found = expansion_violator(&g, 2, ExpansionMode::Search { budget: 200_000 }, &mut rng)
            .unwrap()
            .expect("annealing should find a half");
        for &v in &found {
            let out = g.neighbors(v).iter().filter(|w| !found.contains(w)).count();
            assert!(out < 2);
        }
        assert!(found.len() <= 8);
    }

    #[test]
    fn dichotomy_requires_an_inside_edge() {
        // K_4 with a pendant path: {4,5} (and a few other sets) span an edge
        // while having at most one outside neighbor per vertex.
        let g = Graph::from_edges(
            6,
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)],
        )
        .unwrap();
        let empty = Graph::empty(6);
        let b = dichotomy_violator(&g, &g, 2).unwrap().unwrap();
        assert!(b.len() <= 3);
        assert!(g.induced_edge_count(&b) > 0);
        for &v in &b {
            assert!(g.neighbors(v).iter().filter(|w| !b.contains(w)).count() < 2);
        }
        // Nothing spans an edge of the empty graph.
        assert_eq!(dichotomy_violator(&g, &empty, 2).unwrap(), None);
    }
}
