use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidity::evolve::{coupled_closure_sampler, hitting_times_on};
use rigidity::graphs::{
    extended_core, gadget_graph, gnm, gnp, henneberg_minimally_rigid, is_2_connected, is_connected, kcore,
    pair_count, EvolutionStream,
};
use rigidity::rigidity::{
    closure, full_rank, is_globally_rigid, is_rigid, rigid_components, rigidity_rank, ComponentMode, Embedding,
    Framework, EXACT_COMPONENTS_MAX_N,
};
use rigidity::Graph;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, M)` with `M` uniform over all edge counts.
fn graph(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let m = r.random_range(0..=pair_count(n));
    gnm(n, m, &mut r).unwrap()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rank_increments_are_zero_or_one_and_match_closure(n in 2usize..=12, d in 1usize..=3, seed in any::<u64>()) {
        let g = graph(n, seed);
        let mut r = rng(seed ^ 1);
        let c = closure(&g, d, &mut r).unwrap();
        let fw = Framework::for_graph_at(&g, Embedding::sample(n, d, &mut r).unwrap());
        prop_assert!(fw.rank() <= full_rank(n, d).min(g.edge_count()));
        for (u, v) in g.non_edges() {
            let mut plus = fw.clone();
            plus.insert_edge(u, v);
            let inc = plus.rank() - fw.rank();
            prop_assert!(inc <= 1);
            prop_assert_eq!(inc == 0, c.contains(u, v));
        }
    }

    #[test]
    fn closure_is_a_matroid_closure(n in 2usize..=12, d in 1usize..=3, seed in any::<u64>()) {
        let g = graph(n, seed);
        let mut r = rng(seed ^ 2);
        let c = closure(&g, d, &mut r).unwrap();
        prop_assert!(g.is_subgraph_of(c.graph()));
        prop_assert_eq!(c.rank(), rigidity_rank(&g, d, &mut r).unwrap());
        let again = closure(c.graph(), d, &mut r).unwrap();
        prop_assert_eq!(again.graph(), c.graph());
        let extra: Vec<_> = g.non_edges().filter(|_| r.random_bool(0.25)).collect();
        let h = g.with_edges(extra).unwrap();
        prop_assert!(c.graph().is_subgraph_of(closure(&h, d, &mut r).unwrap().graph()));
        prop_assert_eq!(c.is_complete(), is_rigid(&g, d, &mut r).unwrap());
    }

    #[test]
    fn clique_propagation(n in 4usize..=11, d in 1usize..=3, seed in any::<u64>()) {
        // A d-clique of the closure plus two common neighbours x, y forces xy.
        let g = graph(n, seed);
        let mut r = rng(seed ^ 3);
        let c = closure(&g, d, &mut r).unwrap();
        let cg = c.graph();
        for mask in 1u32..(1 << n) {
            if mask.count_ones() as usize != d {
                continue;
            }
            let clique: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if !clique.iter().enumerate().all(|(i, &a)| clique[i + 1..].iter().all(|&b| cg.has_edge(a, b))) {
                continue;
            }
            let common: Vec<usize> = (0..n)
                .filter(|&x| mask >> x & 1 == 0 && clique.iter().all(|&u| cg.has_edge(u, x)))
                .collect();
            for (i, &x) in common.iter().enumerate() {
                for &y in &common[i + 1..] {
                    prop_assert!(cg.has_edge(x, y), "clique {:?}, pair ({}, {})", clique, x, y);
                }
            }
        }
    }

    #[test]
    fn rigid_graphs_have_min_degree_d(n in 2usize..=12, d in 1usize..=3, seed in any::<u64>()) {
        let g = graph(n, seed);
        let mut r = rng(seed ^ 4);
        if n > d && is_rigid(&g, d, &mut r).unwrap() {
            prop_assert!(g.min_degree() >= d);
        }
    }

    #[test]
    fn implication_chain(n in 2usize..=10, d in 1usize..=2, seed in any::<u64>()) {
        let g = graph(n, seed);
        let mut r = rng(seed ^ 5);
        let rigid_up = is_rigid(&g, d + 1, &mut r).unwrap();
        let global = is_globally_rigid(&g, d, &mut r).unwrap();
        let rigid = is_rigid(&g, d, &mut r).unwrap();
        prop_assert!(!rigid_up || global);
        prop_assert!(!global || rigid);
        if global && n >= d + 2 {
            prop_assert!(g.min_degree() > d);
        }
    }

    #[test]
    fn dimension_one_matches_connectivity(n in 1usize..=40, seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = (r.random_range(0.5..3.0) * (n.max(2) as f64).ln() / n.max(2) as f64).min(1.0);
        let g = gnp(n, p, &mut r).unwrap();
        prop_assert_eq!(is_rigid(&g, 1, &mut r).unwrap(), is_connected(&g));
        if n >= 3 {
            prop_assert_eq!(is_globally_rigid(&g, 1, &mut r).unwrap(), is_2_connected(&g));
        }
    }

    #[test]
    fn same_seed_same_answers(n in 2usize..=10, d in 1usize..=3, seed in any::<u64>()) {
        let g = graph(n, seed);
        let run = || {
            let mut r = rng(seed);
            (
                rigidity_rank(&g, d, &mut r).unwrap(),
                closure(&g, d, &mut r).unwrap().graph().clone(),
                is_globally_rigid(&g, d, &mut r).unwrap(),
                rigid_components(&g, d, ComponentMode::Exact, &mut r).unwrap(),
            )
        };
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn components_are_rigid_and_maximal(n in 2usize..=9, d in 1usize..=2, seed in any::<u64>()) {
        let g = graph(n, seed);
        let mut r = rng(seed ^ 6);
        let comps = rigid_components(&g, d, ComponentMode::Exact, &mut r).unwrap();
        for s in &comps {
            let h = g.induced(s);
            prop_assert!(is_rigid(&h, d, &mut r).unwrap() || (s.len() <= d + 1 && h.is_complete()));
            for &(u, v) in g.edges() {
                let covered = comps.iter().any(|t| t.contains(&u) && t.contains(&v));
                prop_assert!(covered, "edge ({}, {}) outside every component", u, v);
            }
            for t in &comps {
                prop_assert!(std::ptr::eq(s, t) || !s.iter().all(|v| t.contains(v)));
            }
        }
        let heuristic = rigid_components(&g, d, ComponentMode::Heuristic, &mut r).unwrap();
        for s in &heuristic {
            prop_assert!(comps.iter().any(|t| s.iter().all(|v| t.contains(v))));
        }
    }

    #[test]
    fn cores(n in 1usize..=30, k in 1usize..=4, seed in any::<u64>()) {
        let g = graph(n, seed);
        let core = kcore(&g, k);
        let h = g.induced(&core);
        prop_assert!(core.is_empty() || h.min_degree() >= k);
        for v in (0..n).filter(|v| !core.contains(v)) {
            let mut bigger = core.clone();
            bigger.push(v);
            bigger.sort_unstable();
            prop_assert!(kcore(&g.induced(&bigger), k).len() < bigger.len());
        }
        // The extension grows from the (k+1)-core.
        let ext = extended_core(&g, k);
        prop_assert!(kcore(&g, k + 1).iter().all(|v| ext.contains(v)));
        prop_assert!(ext.iter().all(|v| core.contains(v)));
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn evolution_rank_steps_and_sharp_hitting_time(n in 4usize..=24, d in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(n >= d + 2);
        let stream = EvolutionStream::new(n, seed).unwrap();
        let mut r = rng(seed ^ 7);
        let mut fw = Framework::new(Embedding::sample(n, d, &mut r).unwrap());
        let mut first_full = None;
        for (i, &(u, v)) in stream.order().iter().enumerate() {
            let before = fw.rank();
            fw.insert_edge(u, v);
            prop_assert!(fw.rank() - before <= 1);
            if first_full.is_none() && fw.is_full() {
                first_full = Some(i + 1);
            }
        }
        let m = first_full.unwrap();
        let h = hitting_times_on(&stream, d, false, &mut r).unwrap();
        prop_assert_eq!(h.m_rigid_d, m);
        prop_assert!(is_rigid(&stream.prefix(m), d, &mut r).unwrap());
        prop_assert!(!is_rigid(&stream.prefix(m - 1), d, &mut r).unwrap());
        prop_assert!(h.m_rigid_d >= h.m_d && h.m_rigid_d1 >= h.m_d1);
    }

    #[test]
    fn dimension_one_hitting_times_match_oracles(n in 3usize..=40, seed in any::<u64>()) {
        let stream = EvolutionStream::new(n, seed).unwrap();
        let mut r = rng(seed);
        let h = hitting_times_on(&stream, 1, true, &mut r).unwrap();
        let first = |p: &dyn Fn(&Graph) -> bool| (0..=stream.len()).find(|&m| p(&stream.prefix(m))).unwrap();
        prop_assert_eq!(h.m_rigid_d, first(&is_connected));
        prop_assert_eq!(h.m_gr_d.unwrap(), first(&is_2_connected));
    }

    #[test]
    fn coupling_low_count_is_rank(n in 4usize..=20, d in 1usize..=3, frac in 0.0f64..1.0, seed in any::<u64>()) {
        let m = (frac * pair_count(n) as f64) as usize;
        let mut r = rng(seed);
        let t = coupled_closure_sampler(n, m, d, &mut r).unwrap();
        prop_assert_eq!(t.low_count, t.final_rank);
        prop_assert!(t.low_count <= full_rank(n, d));
        prop_assert_eq!(t.graph.edge_count(), m);
        prop_assert_eq!(t.final_rank, rigidity_rank(&t.graph, d, &mut r).unwrap());
    }
}

#[test]
fn gadget_structure_over_flexible_frames() {
    let mut r = rng(9);
    let mut checked = 0;
    for d in 2..=3 {
        // A minimally rigid frame of dimension d - 1 is flexible in dimension d.
        let frames = [
            rigidity::graphs::path(4),
            rigidity::graphs::star(3),
            henneberg_minimally_rigid(d + 2, d.max(2) - 1, &mut r).unwrap(),
        ];
        for h in frames {
            if is_rigid(&h, d, &mut r).unwrap() {
                continue;
            }
            let (g, a) = gadget_graph(&h, d);
            for v in 0..g.n() {
                if !a.contains(&v) {
                    assert_eq!(g.degree(v), d + 1);
                }
            }
            assert_eq!(g.induced_edge_count(&a), 0);
            let c = closure(&g, d, &mut r).unwrap();
            assert!(h.edges().iter().all(|&(x, y)| c.contains(a[x], a[y])));
            if g.n() > EXACT_COMPONENTS_MAX_N {
                continue;
            }
            for comp in rigid_components(&g, d, ComponentMode::Exact, &mut r).unwrap() {
                assert_eq!(comp.len(), d + 2, "d = {d}, frame {:?}", h.edges());
            }
            checked += 1;
        }
    }
    assert!(checked >= 4);
}
