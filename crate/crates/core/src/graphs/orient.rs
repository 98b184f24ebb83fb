use std::collections::VecDeque;

use serde::Serialize;

use super::Graph;
use crate::error::{invalid, Result};

/// Answer of [`is_d_orientable`] together with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Orientability {
    /// Arcs `(tail, head)`; every vertex is the head of at most `d` arcs.
    Orientable { arcs: Vec<(usize, usize)> },
    /// A vertex set inducing more than `d` edges per vertex.
    Obstructed { witness: Vec<usize> },
}

impl Orientability {
    pub fn is_orientable(&self) -> bool {
        matches!(self, Self::Orientable { .. })
    }
}

/// Decides whether the edges of `g` can be oriented with every in-degree at
/// most `d`, by max-flow on the network
/// `source -> edge (1) -> endpoint (1) -> sink (d)`.
///
/// If the flow saturates every edge it gives the orientation; otherwise the
/// vertices on the source side of the residual cut induce more than
/// `d * |A|` edges.
pub fn is_d_orientable(g: &Graph, d: usize) -> Result<Orientability> {
    if d == 0 {
        return Err(invalid("orientability bound d must be at least 1"));
    }
    let m = g.edge_count();
    let n = g.n();
    let source = 0;
    let sink = m + n + 1;
    let vertex_node = |v: usize| 1 + m + v;

    let mut net = Dinic::new(m + n + 2);
    let mut to_tail = Vec::with_capacity(m);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        net.add_arc(source, 1 + i, 1);
        let a = net.add_arc(1 + i, vertex_node(u), 1);
        net.add_arc(1 + i, vertex_node(v), 1);
        to_tail.push(a);
    }
    for v in 0..n {
        net.add_arc(vertex_node(v), sink, d as i64);
    }
    let flow = net.max_flow(source, sink);

    if flow as usize == m {
        let arcs = g
            .edges()
            .iter()
            .zip(&to_tail)
            .map(|(&(u, v), &a)| if net.flow_on(a) == 1 { (v, u) } else { (u, v) })
            .collect();
        return Ok(Orientability::Orientable { arcs });
    }
    let reach = net.residual_reachable(source);
    let witness = (0..n).filter(|&v| reach[vertex_node(v)]).collect();
    Ok(Orientability::Obstructed { witness })
}

struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Self {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    /// Returns the arc id; its reverse is `id ^ 1`.
    fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.head[from].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.head[to].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
        id
    }

    fn flow_on(&self, arc: usize) -> i64 {
        self.cap[arc ^ 1]
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &a in &self.head[v] {
                let w = self.to[a];
                if self.cap[a] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    q.push_back(w);
                }
            }
        }
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: i64) -> i64 {
        if v == t {
            return pushed;
        }
        while self.iter[v] < self.head[v].len() {
            let a = self.head[v][self.iter[v]];
            let w = self.to[a];
            if self.cap[a] > 0 && self.level[w] == self.level[v] + 1 {
                let got = self.dfs(w, t, pushed.min(self.cap[a]));
                if got > 0 {
                    self.cap[a] -= got;
                    self.cap[a ^ 1] += got;
                    return got;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return total;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in &self.head[v] {
                let w = self.to[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::path;

    fn check_certificate(g: &Graph, d: usize, ans: &Orientability) {
        match ans {
            Orientability::Orientable { arcs } => {
                assert_eq!(arcs.len(), g.edge_count());
                let mut indeg = vec![0; g.n()];
                for &(t, h) in arcs {
                    assert!(g.has_edge(t, h));
                    indeg[h] += 1;
                }
                assert!(indeg.iter().all(|&k| k <= d));
            }
            Orientability::Obstructed { witness } => {
                assert!(g.induced_edge_count(witness) > d * witness.len());
            }
        }
    }

    // Backtracking over orientations, pruning as soon as a head exceeds d.
    fn brute_orientable(g: &Graph, d: usize) -> bool {
        fn go(edges: &[(usize, usize)], i: usize, indeg: &mut [usize], d: usize) -> bool {
            if i == edges.len() {
                return true;
            }
            let (u, v) = edges[i];
            for h in [u, v] {
                if indeg[h] < d {
                    indeg[h] += 1;
                    if go(edges, i + 1, indeg, d) {
                        return true;
                    }
                    indeg[h] -= 1;
                }
            }
            false
        }
        go(g.edges(), 0, &mut vec![0; g.n()], d)
    }

    #[test]
    fn named_examples() {
        let forest = path(7);
        let ans = is_d_orientable(&forest, 1).unwrap();
        assert!(ans.is_orientable());
        check_certificate(&forest, 1, &ans);

        let k4 = Graph::complete(4);
        let ans = is_d_orientable(&k4, 1).unwrap();
        assert_eq!(ans, Orientability::Obstructed { witness: vec![0, 1, 2, 3] });

        let k5 = Graph::complete(5);
        let ans = is_d_orientable(&k5, 2).unwrap();
        assert!(ans.is_orientable());
        check_certificate(&k5, 2, &ans);

        assert!(is_d_orientable(&k5, 0).is_err());
        assert!(is_d_orientable(&Graph::empty(3), 1).unwrap().is_orientable());
    }

    #[test]
    fn flow_matches_backtracking_on_all_graphs_up_to_six_vertices() {
        for n in 1..=6 {
            let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let g = Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap();
                for d in 1..=2 {
                    let ans = is_d_orientable(&g, d).unwrap();
                    assert_eq!(ans.is_orientable(), brute_orientable(&g, d));
                    check_certificate(&g, d, &ans);
                }
            }
        }
    }

    #[test]
    fn flow_matches_backtracking_on_random_graphs_up_to_nine_vertices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..400 {
            let n = rng.random_range(7..=9);
            let p = rng.random_range(0.2..0.9);
            let g = crate::graphs::gnp(n, p, &mut rng).unwrap();
            for d in 1..=3 {
                let ans = is_d_orientable(&g, d).unwrap();
                assert_eq!(ans.is_orientable(), brute_orientable(&g, d));
                check_certificate(&g, d, &ans);
            }
        }
    }
}
