use rand::Rng;

use super::Embedding;
use crate::error::{invalid, Result};
use crate::graphs::Graph;
use crate::primefield::{FieldElement, RowBasis, SparseVector};

/// Independent stress draws per [`is_globally_rigid`] call; all must pass.
pub const DEFAULT_GLOBAL_REPS: usize = 2;

/// Whether `g` is globally `d`-rigid, by the stress-matrix rank test with
/// [`DEFAULT_GLOBAL_REPS`] independent draws.
pub fn is_globally_rigid<R: Rng + ?Sized>(g: &Graph, d: usize, rng: &mut R) -> Result<bool> {
    is_globally_rigid_with(g, d, DEFAULT_GLOBAL_REPS, rng)
}

/// With at most `d + 1` vertices, globally rigid means complete. Otherwise
/// each of `reps` draws samples an embedding and a random equilibrium stress
/// and requires the stress matrix to have rank `n - d - 1`.
pub fn is_globally_rigid_with<R: Rng + ?Sized>(g: &Graph, d: usize, reps: usize, rng: &mut R) -> Result<bool> {
    if d == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    let n = g.n();
    if n <= d + 1 {
        return Ok(g.is_complete());
    }
    for _ in 0..reps.max(1) {
        if stress_matrix_rank(g, d, rng)? != n - d - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of the stress matrix of one random equilibrium stress of `g` at one
/// random embedding. The stress is a uniform element of the left kernel of
/// the rigidity matrix; the zero stress gives rank 0.
pub fn stress_matrix_rank<R: Rng + ?Sized>(g: &Graph, d: usize, rng: &mut R) -> Result<usize> {
    let n = g.n();
    let m = g.edge_count();
    if n == 0 || m == 0 {
        return Ok(0);
    }
    let emb = Embedding::sample(n, d, rng)?;

    // Rows of R^T, one per (vertex, coordinate); the left kernel of R is the
    // orthogonal complement of their span in F^m.
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push((e, v));
        incident[v].push((e, u));
    }
    let mut span = RowBasis::new(m);
    for (v, around) in incident.iter().enumerate() {
        for k in 0..d {
            let entries = around
                .iter()
                .map(|&(e, w)| (e, emb.point(v)[k] - emb.point(w)[k]));
            span.try_insert(&SparseVector::new(m, entries)?)?;
        }
    }

    // Kernel vector: free coordinates uniform, each pivot coordinate fixed so
    // that its reduced row is orthogonal to the result.
    let mut stress = vec![FieldElement::ZERO; m];
    for (e, s) in stress.iter_mut().enumerate() {
        if !span.is_pivot(e) {
            *s = FieldElement::random(rng);
        }
    }
    let mut pivots = Vec::with_capacity(span.rank());
    span.for_each_row(|row| {
        let (p, _) = row[0];
        let acc = row[1..]
            .iter()
            .fold(FieldElement::ZERO, |acc, &(f, x)| acc + x * stress[f as usize]);
        pivots.push((p as usize, -acc));
    });
    for (p, x) in pivots {
        stress[p] = x;
    }

    let mut diag = vec![FieldElement::ZERO; n];
    let mut off: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let w = stress[e];
        diag[u] += w;
        diag[v] += w;
        off[u].push((v, -w));
        off[v].push((u, -w));
    }
    let mut omega = RowBasis::new(n);
    for v in 0..n {
        let entries = off[v].iter().copied().chain([(v, diag[v])]);
        omega.try_insert(&SparseVector::new(n, entries)?)?;
    }
    Ok(omega.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, path};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for d in 1..=4 {
            assert!(is_globally_rigid(&Graph::complete(d + 2), d, &mut rng).unwrap());
        }
        assert!(is_globally_rigid(&cycle(5), 1, &mut rng).unwrap());
        assert!(!is_globally_rigid(&path(5), 1, &mut rng).unwrap());
        let mut edges = Graph::complete(5).edges().to_vec();
        edges.extend([(0, 5), (1, 5)]);
        let g = Graph::from_edges(6, edges).unwrap();
        assert!(!is_globally_rigid(&g, 2, &mut rng).unwrap());
    }

    #[test]
    fn small_cases_follow_completeness() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(is_globally_rigid(&Graph::complete(3), 2, &mut rng).unwrap());
        assert!(!is_globally_rigid(&path(3), 2, &mut rng).unwrap());
        assert!(!is_globally_rigid(&Graph::empty(6), 2, &mut rng).unwrap());
    }

    #[test]
    fn stress_of_complete_graph_has_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in 1..=3 {
            for n in d + 2..=9 {
                assert_eq!(stress_matrix_rank(&Graph::complete(n), d, &mut rng).unwrap(), n - d - 1);
            }
        }
    }

    #[test]
    fn stress_is_in_equilibrium() {
        // Rank of a stress matrix never exceeds n - d - 1.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = crate::graphs::gnp(9, 0.6, &mut rng).unwrap();
            for d in 1..=2 {
                assert!(stress_matrix_rank(&g, d, &mut rng).unwrap() < 9 - d);
            }
        }
    }
}
