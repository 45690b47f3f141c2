//! Brute-force references for the selection algorithm.
//!
//! Both checks here are exponential and guarded by hard size limits; they
//! exist to cross-examine the closure-based machinery on small instances.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Instance, PathWitness, UsageGraph};
use crate::selector::{candidate_set, solve_step};

/// Largest instance accepted by the simple-path enumeration.
pub const MAX_PATH_NODES: usize = 12;
/// Largest candidate set accepted by the subset enumeration.
pub const MAX_CANDIDATES: usize = 20;

fn check_path_size(instance: &Instance, usage: &UsageGraph) -> Result<()> {
    if instance.n() > MAX_PATH_NODES {
        return Err(Error::TooLarge {
            what: "instance",
            size: instance.n(),
            limit: MAX_PATH_NODES,
        });
    }
    if usage.n() != instance.n() {
        return Err(Error::InvalidInstance(format!(
            "usage graph has {} nodes, instance has {}",
            usage.n(),
            instance.n()
        )));
    }
    for (from, to) in usage.edges() {
        if !instance.benefits(from, to) {
            return Err(Error::EdgeNotInBenefitGraph { from, to });
        }
    }
    Ok(())
}

/// Walks simple benefit-graph paths from `node` towards `target`. A prefix
/// that already contains an unselected edge satisfies the constraint for
/// every extension, so only fully selected prefixes are extended.
fn dfs_selected(
    instance: &Instance,
    usage: &UsageGraph,
    node: usize,
    target: usize,
    on_path: &mut Vec<bool>,
    path: &mut Vec<usize>,
) -> bool {
    if node == target {
        return true;
    }
    for next in 0..instance.n() {
        if on_path[next] || !instance.benefits(node, next) || !usage.x(node, next) {
            continue;
        }
        on_path[next] = true;
        path.push(next);
        if dfs_selected(instance, usage, next, target, on_path, path) {
            return true;
        }
        path.pop();
        on_path[next] = false;
    }
    false
}

/// First benefit-graph path between a competing pair whose edges are all
/// selected, scanning ordered pairs `(from, to)` ascending.
pub fn violating_path(instance: &Instance, usage: &UsageGraph) -> Result<Option<PathWitness>> {
    check_path_size(instance, usage)?;
    let n = instance.n();
    for from in 0..n {
        for to in instance.competitors(from).iter() {
            let mut on_path = vec![false; n];
            on_path[from] = true;
            let mut path = vec![from];
            if dfs_selected(instance, usage, from, to, &mut on_path, &mut path) {
                return Ok(Some(PathWitness { nodes: path }));
            }
        }
    }
    Ok(None)
}

/// Checks every simple benefit-graph path between competitors for at least
/// one unselected edge.
pub fn feasible_by_paths(instance: &Instance, usage: &UsageGraph) -> Result<bool> {
    Ok(violating_path(instance, usage)?.is_none())
}

/// Greedy step compared with the exhaustive per-step optimum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleVerdict {
    pub participant: usize,
    /// Whether the greedy result satisfies the constraint.
    pub feasible: bool,
    pub optimal_value: f64,
    pub optimal_set: Vec<usize>,
    pub greedy_value: f64,
    pub greedy_set: Vec<usize>,
    pub gap_ratio: f64,
}

/// Enumerates every subset of the candidates of `i`, keeping the heaviest
/// one that stays feasible, and runs the greedy step on the same state.
pub fn optimal_step(instance: &Instance, usage: &UsageGraph, i: usize) -> Result<OracleVerdict> {
    check_path_size(instance, usage)?;
    if i >= instance.n() {
        return Err(Error::NodeOutOfRange {
            node: i,
            n: instance.n(),
        });
    }
    if !feasible_by_paths(instance, usage)? {
        return Err(Error::InfeasibleUsage);
    }
    let cands: Vec<usize> = candidate_set(instance, i)
        .into_iter()
        .filter(|&j| !usage.x(j, i))
        .collect();
    if cands.len() > MAX_CANDIDATES {
        return Err(Error::TooLarge {
            what: "candidate set",
            size: cands.len(),
            limit: MAX_CANDIDATES,
        });
    }

    let mut optimal_value = 0.0;
    let mut optimal_mask = 0u32;
    for mask in 1u32..(1 << cands.len()) {
        let value: f64 = cands
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &j)| instance.benefit(j, i))
            .sum();
        if value <= optimal_value {
            continue;
        }
        let mut trial = usage.clone();
        for (b, &j) in cands.iter().enumerate() {
            if mask & (1 << b) != 0 {
                trial.add_edge(j, i)?;
            }
        }
        if feasible_by_paths(instance, &trial)? {
            optimal_value = value;
            optimal_mask = mask;
        }
    }
    let mut optimal_set: Vec<usize> = cands
        .iter()
        .enumerate()
        .filter(|(b, _)| optimal_mask & (1 << b) != 0)
        .map(|(_, &j)| j)
        .collect();
    optimal_set.sort_unstable();

    let mut greedy = usage.clone();
    let step = solve_step(instance, &mut greedy, i);
    let feasible = feasible_by_paths(instance, &greedy)?;
    let mut greedy_set = step.accepted();
    greedy_set.sort_unstable();
    let greedy_value = step.objective;
    let gap_ratio = if optimal_value == 0.0 {
        1.0
    } else {
        greedy_value / optimal_value
    };
    Ok(OracleVerdict {
        participant: i,
        feasible,
        optimal_value,
        optimal_set,
        greedy_value,
        greedy_set,
        gap_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::assumption_holds;

    #[test]
    fn identity_is_feasible() {
        let inst = Instance::from_edges(4, &[(0, 1), (2, 3)], &[(0, 2, 1.0)]).unwrap();
        assert!(feasible_by_paths(&inst, &UsageGraph::identity(4)).unwrap());
    }

    #[test]
    fn figure_pattern_is_infeasible() {
        // j = 0 competes with i = 2, path 0 -> 1 -> 2 fully selected
        let inst =
            Instance::from_edges(3, &[(0, 2)], &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let g = UsageGraph::from_edges(3, &[(0, 1), (1, 2)], Some(&inst)).unwrap();
        assert!(!feasible_by_paths(&inst, &g).unwrap());
        assert_eq!(
            violating_path(&inst, &g).unwrap().unwrap().nodes,
            vec![0, 1, 2]
        );
        assert!(!assumption_holds(&inst, &g));
    }

    #[test]
    fn size_guard_is_an_error() {
        let inst = Instance::from_edges(13, &[], &[]).unwrap();
        let g = UsageGraph::identity(13);
        assert!(matches!(
            feasible_by_paths(&inst, &g),
            Err(Error::TooLarge { limit: 12, .. })
        ));
    }

    #[test]
    fn optimal_step_without_competition_takes_everything() {
        let inst = Instance::from_edges(4, &[], &[(1, 0, 1.0), (2, 0, 2.0), (3, 0, 0.5)])
            .unwrap();
        let v = optimal_step(&inst, &UsageGraph::identity(4), 0).unwrap();
        assert_eq!(v.optimal_set, vec![1, 2, 3]);
        assert_eq!(v.greedy_set, vec![1, 2, 3]);
        assert_eq!(v.gap_ratio, 1.0);
        assert!(v.feasible);
    }

    #[test]
    fn optimal_step_single_node() {
        let inst = Instance::from_edges(1, &[], &[]).unwrap();
        let v = optimal_step(&inst, &UsageGraph::identity(1), 0).unwrap();
        assert_eq!(v.optimal_value, 0.0);
        assert_eq!(v.gap_ratio, 1.0);
    }

    #[test]
    fn blocked_candidate_is_excluded_by_both() {
        // 4 already reaches 2 and competes with 0's only reachable node 5.
        let inst = Instance::from_edges(
            6,
            &[(4, 5)],
            &[(1, 0, 1.0), (2, 0, 3.0), (4, 2, 1.0), (0, 5, 1.0)],
        )
        .unwrap();
        let g = UsageGraph::from_edges(6, &[(4, 2), (0, 5)], Some(&inst)).unwrap();
        let v = optimal_step(&inst, &g, 0).unwrap();
        assert_eq!(v.greedy_set, vec![1]);
        assert_eq!(v.optimal_set, vec![1]);
        assert_eq!(v.optimal_value, 1.0);
        assert_eq!(v.gap_ratio, 1.0);
        assert!(v.feasible);
    }

    #[test]
    fn optimal_step_rejects_infeasible_prior_state() {
        let inst =
            Instance::from_edges(3, &[(0, 2)], &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let g = UsageGraph::from_edges(3, &[(0, 1), (1, 2)], Some(&inst)).unwrap();
        assert_eq!(optimal_step(&inst, &g, 1), Err(Error::InfeasibleUsage));
    }
}
