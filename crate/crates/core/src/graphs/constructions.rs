use rand::seq::index;
use rand::Rng;

use super::Graph;
use crate::error::{invalid, Result};

pub fn path(n: usize) -> Graph {
    Graph::from_sorted_unique(n, (1..n).map(|v| (v - 1, v)).collect())
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    edges.sort_unstable();
    Graph::from_sorted_unique(n, edges)
}

/// `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_sorted_unique(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
}

/// `K_k` without the edge `{0, 1}`.
pub fn complete_minus_edge(k: usize) -> Graph {
    let edges = (0..k)
        .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
        .filter(|&e| e != (0, 1))
        .collect();
    Graph::from_sorted_unique(k, edges)
}

/// Vertex-disjoint union; `b`'s vertices are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    let mut edges = a.edges().to_vec();
    edges.extend(b.edges().iter().map(|&(u, v)| (u + off, v + off)));
    Graph::from_sorted_unique(a.n() + b.n(), edges)
}

/// A graph on `a` vertices with `d*a - C(d+1, 2)` edges built by vertex
/// additions: `K_{d+1}` first, then every new vertex joined to `d` distinct
/// earlier vertices chosen uniformly. Generic minimal rigidity of the output
/// is a property to be checked with the rank oracle, not assumed.
pub fn henneberg_minimally_rigid<R: Rng + ?Sized>(a: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if d == 0 || a < d + 1 {
        return Err(invalid(format!(
            "need d >= 1 and at least d + 1 vertices, got a = {a}, d = {d}"
        )));
    }
    let mut edges: Vec<(usize, usize)> =
        (0..=d).flat_map(|u| (u + 1..=d).map(move |v| (u, v))).collect();
    for v in d + 1..a {
        edges.extend(index::sample(rng, v, d).into_iter().map(|u| (u, v)));
    }
    Graph::from_edges(a, edges)
}

/// Glues a copy of `K_{d+2}` minus the edge `xy` onto every edge `xy` of
/// `h`, each copy with `d` fresh vertices. Returns the union (without the
/// edges of `h`) and the original vertex set `0..h.n()`.
pub fn gadget_graph(h: &Graph, d: usize) -> (Graph, Vec<usize>) {
    let a = h.n();
    let mut edges = Vec::new();
    let mut next = a;
    for &(x, y) in h.edges() {
        let fresh: Vec<usize> = (next..next + d).collect();
        next += d;
        for (i, &w) in fresh.iter().enumerate() {
            edges.push((x, w));
            edges.push((y, w));
            for &z in &fresh[i + 1..] {
                edges.push((w, z));
            }
        }
    }
    edges.sort_unstable();
    (Graph::from_sorted_unique(next, edges), (0..a).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn binom2(k: usize) -> usize {
        k * k.saturating_sub(1) / 2
    }

    #[test]
    fn henneberg_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for d in 1..=3 {
            assert_eq!(henneberg_minimally_rigid(d + 1, d, &mut rng).unwrap(), Graph::complete(d + 1));
            let g = henneberg_minimally_rigid(d + 2, d, &mut rng).unwrap();
            assert_eq!(g.edge_count(), d * (d + 2) - binom2(d + 1));
            assert_eq!(g.degree(d + 1), d);
            for a in d + 1..=10 {
                let g = henneberg_minimally_rigid(a, d, &mut rng).unwrap();
                assert_eq!(g.edge_count(), d * a - binom2(d + 1));
            }
            assert!(henneberg_minimally_rigid(d, d, &mut rng).is_err());
        }
    }

    #[test]
    fn gadget_counts() {
        let single = Graph::complete(2);
        let (g, a) = gadget_graph(&single, 2);
        assert_eq!(a, vec![0, 1]);
        assert_eq!(g, complete_minus_edge(4));

        let (g, a) = gadget_graph(&Graph::complete(3), 2);
        assert_eq!(g.n(), 9);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.induced_edge_count(&a), 0);
        for v in 3..9 {
            assert_eq!(g.degree(v), 3);
        }
    }

    #[test]
    fn small_families() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(5).min_degree(), 2);
        assert_eq!(star(5).degree(0), 5);
        assert_eq!(complete_minus_edge(4).edge_count(), 5);
        assert!(!complete_minus_edge(4).has_edge(0, 1));
        assert_eq!(disjoint_union(&path(2), &path(2)).edges(), &[(0, 1), (2, 3)]);
    }
}
