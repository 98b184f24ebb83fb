use serde::Serialize;

use super::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphOracles {
    pub min_degree: usize,
    pub is_connected: bool,
    pub is_2_connected: bool,
}

pub fn graph_oracles(g: &Graph) -> GraphOracles {
    GraphOracles {
        min_degree: g.min_degree(),
        is_connected: is_connected(g),
        is_2_connected: is_2_connected(g),
    }
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Connected, at least three vertices, and no cut vertex.
pub fn is_2_connected(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 || !is_connected(g) {
        return false;
    }
    // Iterative Hopcroft–Tarjan low-link search from vertex 0.
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut parent = vec![usize::MAX; n];
    let mut next_child = vec![0usize; n];
    let mut time = 0;
    let mut root_children = 0;

    disc[0] = time;
    low[0] = time;
    time += 1;
    let mut stack = vec![0usize];
    while let Some(&v) = stack.last() {
        let nbrs = g.neighbors(v);
        if next_child[v] < nbrs.len() {
            let w = nbrs[next_child[v]];
            next_child[v] += 1;
            if disc[w] == usize::MAX {
                parent[w] = v;
                disc[w] = time;
                low[w] = time;
                time += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push(w);
            } else if w != parent[v] {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            let p = parent[v];
            if p != usize::MAX {
                low[p] = low[p].min(low[v]);
                if p != 0 && low[v] >= disc[p] {
                    return false;
                }
            }
        }
    }
    root_children < 2
}
