use std::collections::VecDeque;

use super::Graph;

/// Vertex set of the `k`-core: the largest induced subgraph with minimum
/// degree at least `k`, found by repeatedly deleting low-degree vertices.
pub fn kcore(g: &Graph, k: usize) -> Vec<usize> {
    let n = g.n();
    let mut deg = g.degrees();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| deg[v] < k).collect();
    for &v in &queue {
        removed[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] < k {
                    removed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

/// The `((d+1)+d)`-core: the `(d+1)`-core, then repeatedly any vertex with at
/// least `d` neighbors in the current set. The result does not depend on the
/// order of additions, since adding vertices only raises the counts.
pub fn extended_core(g: &Graph, d: usize) -> Vec<usize> {
    let n = g.n();
    let mut inside = vec![false; n];
    for v in kcore(g, d + 1) {
        inside[v] = true;
    }
    let mut count = vec![0usize; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if inside[v] {
            continue;
        }
        count[v] = g.neighbors(v).iter().filter(|&&w| inside[w]).count();
        if count[v] >= d && any_inside(&inside) {
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        if inside[v] {
            continue;
        }
        inside[v] = true;
        for &w in g.neighbors(v) {
            if !inside[w] {
                count[w] += 1;
                if count[w] == d {
                    queue.push_back(w);
                }
            }
        }
    }
    (0..n).filter(|&v| inside[v]).collect()
}

// An empty core stays empty; without this guard `d = 0` would pull in
// every vertex.
fn any_inside(inside: &[bool]) -> bool {
    inside.iter().any(|&b| b)
}
