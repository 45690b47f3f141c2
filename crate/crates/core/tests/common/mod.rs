//! Random instances and brute-force reference computations shared by the
//! integration tests. Nothing here calls into the library's own closure or
//! guard code.

#![allow(dead_code)]

use std::collections::VecDeque;

use fedcomp::{Instance, UsageGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Competing edges with probability `p_compete` (the complete graph is
/// avoided), benefit entries present with probability `density`.
pub fn random_instance(rng: &mut impl Rng, n: usize, p_compete: f64, density: f64) -> Instance {
    loop {
        let mut competing = vec![vec![false; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                if rng.random_bool(p_compete) {
                    competing[a][b] = true;
                    competing[b][a] = true;
                }
            }
        }
        let mut benefit = vec![vec![0.0; n]; n];
        for j in 0..n {
            for i in 0..n {
                if i != j && rng.random_bool(density) {
                    // Coarse weights so exact ties show up regularly.
                    benefit[j][i] = if rng.random_bool(0.3) {
                        rng.random_range(1..=4) as f64
                    } else {
                        rng.random_range(0.01..5.0)
                    };
                }
            }
        }
        if let Ok(inst) = Instance::new(competing, benefit) {
            return inst;
        }
    }
}

/// Random usage graph drawn from the benefit edges of `inst`, without any
/// feasibility requirement.
pub fn random_usage(rng: &mut impl Rng, inst: &Instance, p_edge: f64) -> UsageGraph {
    let edges: Vec<(usize, usize)> = inst
        .benefit_edges()
        .into_iter()
        .filter(|_| rng.random_bool(p_edge))
        .map(|(j, i, _)| (j, i))
        .collect();
    UsageGraph::from_edges(inst.n(), &edges, Some(inst)).unwrap()
}

/// Reflexive-transitive closure by Floyd–Warshall.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut c = vec![vec![false; n]; n];
    for (v, row) in c.iter_mut().enumerate() {
        row[v] = true;
    }
    for &(a, b) in edges {
        c[a][b] = true;
    }
    for k in 0..n {
        for a in 0..n {
            if c[a][k] {
                for b in 0..n {
                    if c[k][b] {
                        c[a][b] = true;
                    }
                }
            }
        }
    }
    c
}

/// Nodes reachable from `start` (including itself), following edges
/// backwards when `reverse` is set.
pub fn bfs(n: usize, edges: &[(usize, usize)], start: usize, reverse: bool) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if reverse {
            adj[b].push(a);
        } else {
            adj[a].push(b);
        }
    }
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    (0..n).filter(|&v| seen[v]).collect()
}

/// Closure-free feasibility: no competing pair is joined by a directed path
/// of usage edges.
pub fn feasible_by_bfs(inst: &Instance, edges: &[(usize, usize)]) -> bool {
    let n = inst.n();
    (0..n).all(|a| {
        bfs(n, edges, a, false)
            .into_iter()
            .all(|b| a == b || !inst.competes(a, b))
    })
}

/// Relabels an instance so that old node `v` becomes `perm[v]`.
pub fn permute_instance(inst: &Instance, perm: &[usize]) -> Instance {
    let n = inst.n();
    let mut competing = vec![vec![false; n]; n];
    let mut benefit = vec![vec![0.0; n]; n];
    for a in 0..n {
        for b in 0..n {
            competing[perm[a]][perm[b]] = inst.competes(a, b);
            benefit[perm[a]][perm[b]] = inst.benefit(a, b);
        }
    }
    Instance::new(competing, benefit).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
