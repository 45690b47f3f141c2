//! Greedy collaborator selection.
//!
//! Participants are processed in non-increasing order of their level of
//! potential. For each participant `i`, candidates are taken in
//! non-increasing order of their benefit to `i`, and `j` is accepted only if
//! adding `(j, i)` cannot make any participant reachable to a competitor in
//! the usage graph. Ties are broken by ascending node index throughout.

use std::cmp::Ordering;

use crate::graph::{assumption_holds, guard_bits, lop, Instance, UsageGraph};

/// Outcome of considering one candidate.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Accepted,
    /// Rejected with the guard sets observed at the time, at least one of
    /// which is non-empty.
    Rejected {
        s_plus: Vec<usize>,
        s_minus: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CandidateDecision {
    pub node: usize,
    pub weight: f64,
    pub verdict: Verdict,
}

impl CandidateDecision {
    pub fn accepted(&self) -> bool {
        matches!(self.verdict, Verdict::Accepted)
    }
}

/// Everything decided while processing one participant.
#[derive(Clone, Debug, PartialEq)]
pub struct StepTrace {
    pub participant: usize,
    pub candidates: Vec<CandidateDecision>,
    /// Total benefit of the accepted collaborators.
    pub objective: f64,
}

impl StepTrace {
    pub fn accepted(&self) -> Vec<usize> {
        self.candidates
            .iter()
            .filter(|c| c.accepted())
            .map(|c| c.node)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelectionTrace {
    pub lop: Vec<f64>,
    pub order: Vec<usize>,
    pub steps: Vec<StepTrace>,
}

impl SelectionTrace {
    /// Realized objective per participant, indexed by node.
    pub fn objective(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.order.len()];
        for s in &self.steps {
            out[s.participant] = s.objective;
        }
        out
    }
}

fn by_weight_desc(a: (usize, f64), b: (usize, f64)) -> Ordering {
    b.1.partial_cmp(&a.1)
        .unwrap_or(Ordering::Equal)
        .then(a.0.cmp(&b.0))
}

/// Possible collaborators of `i`: non-competitors with positive benefit to
/// `i`, sorted by that benefit, heaviest first.
pub fn candidate_set(instance: &Instance, i: usize) -> Vec<usize> {
    let mut cands: Vec<(usize, f64)> = (0..instance.n())
        .filter(|&j| instance.benefits(j, i) && !instance.competes(j, i))
        .map(|j| (j, instance.benefit(j, i)))
        .collect();
    cands.sort_by(|&a, &b| by_weight_desc(a, b));
    cands.into_iter().map(|(j, _)| j).collect()
}

/// Processing order: non-increasing level of potential.
pub fn processing_order(lop: &[f64]) -> Vec<usize> {
    let mut order: Vec<(usize, f64)> = lop.iter().copied().enumerate().collect();
    order.sort_by(|&a, &b| by_weight_desc(a, b));
    order.into_iter().map(|(i, _)| i).collect()
}

/// Chooses the collaborators of `i` against the current usage graph.
///
/// Guard sets are evaluated after each acceptance, so later candidates see
/// edges accepted earlier in the same step.
///
/// # Panics
///
/// If `usage` already violates the competition constraint on entry.
pub fn solve_step(instance: &Instance, usage: &mut UsageGraph, i: usize) -> StepTrace {
    assert!(
        assumption_holds(instance, usage),
        "solve_step called on an infeasible usage graph"
    );
    let mut candidates = Vec::new();
    let mut objective = 0.0;
    for j in candidate_set(instance, i) {
        let weight = instance.benefit(j, i);
        let (minus, plus) = guard_bits(instance, usage, i, j);
        let verdict = if minus.is_empty() && plus.is_empty() && !usage.x(j, i) {
            usage
                .add_edge(j, i)
                .expect("candidate edge is new and off-diagonal");
            objective += weight;
            Verdict::Accepted
        } else {
            Verdict::Rejected {
                s_plus: plus.to_vec(),
                s_minus: minus.to_vec(),
            }
        };
        candidates.push(CandidateDecision {
            node: j,
            weight,
            verdict,
        });
    }
    StepTrace {
        participant: i,
        candidates,
        objective,
    }
}

/// Runs the full selection from an empty usage graph.
pub fn select_all(instance: &Instance) -> (UsageGraph, SelectionTrace) {
    let lop = lop(instance);
    let order = processing_order(&lop);
    let mut usage = UsageGraph::identity(instance.n());
    let steps = order
        .iter()
        .map(|&i| solve_step(instance, &mut usage, i))
        .collect();
    (usage, SelectionTrace { lop, order, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_sorted_by_weight() {
        let inst = Instance::from_edges(3, &[], &[(1, 0, 0.2), (2, 0, 0.9)]).unwrap();
        assert_eq!(candidate_set(&inst, 0), vec![2, 1]);
        assert!(candidate_set(&inst, 1).is_empty());
    }

    #[test]
    fn candidate_ties_by_index() {
        let inst =
            Instance::from_edges(4, &[], &[(3, 0, 1.0), (1, 0, 1.0), (2, 0, 1.0)]).unwrap();
        assert_eq!(candidate_set(&inst, 0), vec![1, 2, 3]);
    }

    #[test]
    fn zero_benefit_has_no_candidates() {
        let inst = Instance::new(vec![vec![false; 3]; 3], vec![vec![0.0; 3]; 3]).unwrap();
        for i in 0..3 {
            assert!(candidate_set(&inst, i).is_empty());
        }
    }

    #[test]
    fn competitors_are_not_candidates() {
        let inst = Instance::from_edges(3, &[(0, 1)], &[(1, 0, 5.0), (2, 0, 1.0)]).unwrap();
        assert_eq!(candidate_set(&inst, 0), vec![2]);
    }

    #[test]
    fn order_ties_by_index() {
        assert_eq!(processing_order(&[1.0, 3.0, 1.0, 3.0]), vec![1, 3, 0, 2]);
    }

    #[test]
    fn single_participant() {
        let inst = Instance::from_edges(1, &[], &[]).unwrap();
        let (g, trace) = select_all(&inst);
        assert_eq!(g.x_matrix(), vec![vec![true]]);
        assert_eq!(trace.order, vec![0]);
        assert!(trace.steps[0].candidates.is_empty());
    }

    #[test]
    fn no_competition_gives_all_to_all() {
        let n = 4;
        let edges: Vec<_> = (0..n)
            .flat_map(|j| (0..n).map(move |i| (j, i)))
            .filter(|(j, i)| j != i)
            .map(|(j, i)| (j, i, 1.0 + (j * n + i) as f64))
            .collect();
        let inst = Instance::from_edges(n, &[], &edges).unwrap();
        let (g, _) = select_all(&inst);
        assert!(g.x_matrix().iter().flatten().all(|&x| x));
    }

    #[test]
    fn rejects_friend_of_enemy() {
        // 0 competes with 2; 2 benefits 1, 1 benefits 0.
        let inst =
            Instance::from_edges(3, &[(0, 2)], &[(1, 0, 1.0), (2, 1, 1.0)]).unwrap();
        let (g, trace) = select_all(&inst);
        // node 2 has the highest LoP, then 1, then 0
        assert_eq!(trace.order, vec![1, 2, 0]);
        assert!(g.x(2, 1));
        let last = trace.steps.last().unwrap();
        assert_eq!(last.participant, 0);
        assert_eq!(
            last.candidates[0].verdict,
            Verdict::Rejected {
                s_plus: vec![2],
                s_minus: vec![0]
            }
        );
        assert!(assumption_holds(&inst, &g));
    }

    #[test]
    #[should_panic(expected = "infeasible")]
    fn solve_step_on_infeasible_input_panics() {
        let inst =
            Instance::from_edges(3, &[(0, 2)], &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let mut g = UsageGraph::from_edges(3, &[(0, 1), (1, 2)], Some(&inst)).unwrap();
        solve_step(&inst, &mut g, 0);
    }
}
