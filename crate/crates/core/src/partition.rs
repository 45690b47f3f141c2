//! Baseline groupings: a clique cover of the non-competing graph, optionally
//! refined into strongly connected coalitions of the benefit graph.
//!
//! A clique cover of the complement of the competing graph is the same thing
//! as a proper colouring of the competing graph, so the exact mode searches
//! colourings with 1, 2, ... colours and returns the first one found. Nodes
//! are coloured in index order with colours tried in ascending order, which
//! makes the result the lexicographically smallest colour assignment among
//! minimum colourings.

use serde::{Deserialize, Serialize};

use crate::graph::Instance;

/// Instances up to this size get an exact minimum cover.
pub const EXACT_COVER_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionKind {
    CliqueCover,
    SccCoalitions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMode {
    Exact,
    Greedy,
}

/// Disjoint groups covering every participant. Groups are sorted ascending
/// and ordered by their smallest member, except that SCC coalitions keep the
/// order of the cover they refine.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Partition {
    pub groups: Vec<Vec<usize>>,
    pub kind: PartitionKind,
    pub mode: CoverMode,
}

impl Partition {
    /// Group index of every node.
    pub fn membership(&self) -> Vec<usize> {
        let n = self.groups.iter().map(Vec::len).sum();
        let mut out = vec![usize::MAX; n];
        for (g, members) in self.groups.iter().enumerate() {
            for &v in members {
                out[v] = g;
            }
        }
        out
    }

    /// Every node appears in exactly one group.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for &v in self.groups.iter().flatten() {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// No two members of a group compete.
    pub fn is_conflict_free(&self, instance: &Instance) -> bool {
        self.groups.iter().all(|g| {
            g.iter()
                .enumerate()
                .all(|(a, &u)| g[a + 1..].iter().all(|&v| !instance.competes(u, v)))
        })
    }
}

/// Adjacency of the complement of the competing graph, diagonal false.
pub fn complement(instance: &Instance) -> Vec<Vec<bool>> {
    let n = instance.n();
    (0..n)
        .map(|i| (0..n).map(|j| i != j && !instance.competes(i, j)).collect())
        .collect()
}

fn colour_classes(colours: &[usize]) -> Vec<Vec<usize>> {
    let k = colours.iter().copied().max().map_or(0, |c| c + 1);
    let mut groups = vec![Vec::new(); k];
    for (v, &c) in colours.iter().enumerate() {
        groups[c].push(v);
    }
    groups.retain(|g| !g.is_empty());
    groups.sort_by_key(|g| g[0]);
    groups
}

fn try_colour(
    instance: &Instance,
    k: usize,
    v: usize,
    used: usize,
    colours: &mut Vec<usize>,
) -> bool {
    let n = instance.n();
    if v == n {
        return true;
    }
    // A fresh colour is interchangeable with any other unused one.
    let limit = k.min(used + 1);
    for c in 0..limit {
        if instance
            .competitors(v)
            .iter()
            .any(|u| u < v && colours[u] == c)
        {
            continue;
        }
        colours[v] = c;
        if try_colour(instance, k, v + 1, used.max(c + 1), colours) {
            return true;
        }
    }
    colours[v] = usize::MAX;
    false
}

fn exact_colouring(instance: &Instance) -> Vec<usize> {
    let n = instance.n();
    let upper = greedy_colouring(instance).into_iter().max().map_or(1, |c| c + 1);
    for k in 1..=upper {
        let mut colours = vec![usize::MAX; n];
        if try_colour(instance, k, 0, 0, &mut colours) {
            return colours;
        }
    }
    unreachable!("a greedy colouring with {upper} colours exists")
}

/// Largest-degree-first colouring, ties by ascending index.
fn greedy_colouring(instance: &Instance) -> Vec<usize> {
    let n = instance.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(instance.competitors(v).len()), v));
    let mut colours = vec![usize::MAX; n];
    for v in order {
        let mut taken = vec![false; n + 1];
        for u in instance.competitors(v).iter() {
            if colours[u] != usize::MAX {
                taken[colours[u]] = true;
            }
        }
        colours[v] = taken.iter().position(|&t| !t).expect("n + 1 colours suffice");
    }
    colours
}

/// Clique cover of the complement graph with an explicit mode.
pub fn clique_cover(instance: &Instance, mode: CoverMode) -> Partition {
    let colours = match mode {
        CoverMode::Exact => exact_colouring(instance),
        CoverMode::Greedy => greedy_colouring(instance),
    };
    Partition {
        groups: colour_classes(&colours),
        kind: PartitionKind::CliqueCover,
        mode,
    }
}

/// Minimum clique cover for small instances, greedy beyond
/// [`EXACT_COVER_LIMIT`] participants.
pub fn min_clique_cover(instance: &Instance) -> Partition {
    let mode = if instance.n() <= EXACT_COVER_LIMIT {
        CoverMode::Exact
    } else {
        CoverMode::Greedy
    };
    clique_cover(instance, mode)
}

/// Tarjan's algorithm on the benefit graph restricted to `nodes`.
fn tarjan(instance: &Instance, nodes: &[usize]) -> Vec<Vec<usize>> {
    let m = nodes.len();
    let adj: Vec<Vec<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| instance.benefits(nodes[a], nodes[b]))
                .collect()
        })
        .collect();

    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; m];
    let mut low = vec![0; m];
    let mut on_stack = vec![false; m];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next_index = 0;

    for root in 0..m {
        if index[root] != UNSEEN {
            continue;
        }
        // (node, next neighbour position)
        let mut work = vec![(root, 0usize)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = work.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("v is on the stack");
                    on_stack[w] = false;
                    comp.push(nodes[w]);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Splits every group of `within` into strongly connected components of the
/// benefit graph restricted to that group.
pub fn scc_coalitions(instance: &Instance, within: &Partition) -> Partition {
    Partition {
        groups: within
            .groups
            .iter()
            .flat_map(|g| tarjan(instance, g))
            .collect(),
        kind: PartitionKind::SccCoalitions,
        mode: within.mode,
    }
}
