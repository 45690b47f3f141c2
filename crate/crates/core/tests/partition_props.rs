mod common;

use common::*;
use fedcomp::fedsim::{preset_instance, Preset, TrainConfig};
use fedcomp::partition::{complement, CoverMode, EXACT_COVER_LIMIT};
use fedcomp::{clique_cover, min_clique_cover, scc_coalitions, Instance, PartitionKind};
use proptest::prelude::*;

fn preset_graph(preset: Preset) -> Instance {
    Instance::from_edges(8, &preset.competing_edges(), &[]).unwrap()
}

#[test]
fn weak_preset_cover() {
    let p = min_clique_cover(&preset_graph(Preset::WeakNonIid));
    assert_eq!(p.groups, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
}

#[test]
fn strong_preset_cover() {
    let p = min_clique_cover(&preset_graph(Preset::StrongNonIid));
    assert_eq!(p.groups, vec![vec![0, 1, 4, 5], vec![2, 3, 6, 7]]);
}

#[test]
fn complement_is_an_involution() {
    let mut r = rng(8);
    for n in 2..9 {
        let inst = random_instance(&mut r, n, 0.4, 0.0);
        let c = complement(&inst);
        let back: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| a != b && !c[a][b]).collect())
            .collect();
        assert_eq!(back, inst.competing_matrix());
    }
}

#[test]
fn small_participants_do_not_join_large_ones() {
    let inst = preset_instance(Preset::WeakNonIid, 0, &TrainConfig::default()).unwrap();
    let cover = min_clique_cover(&inst);
    let ce = scc_coalitions(&inst, &cover);
    let small = [2, 3, 6, 7];
    for g in &ce.groups {
        if g.iter().any(|v| small.contains(v)) {
            assert!(g.iter().all(|v| small.contains(v)), "{:?}", ce.groups);
        }
    }
}

/// Restricted-growth strings of length `n`: every set partition exactly once,
/// labelled by first appearance.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max {
            cur.push(c);
            rec(n, cur, max.max(c + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), 0, &mut out);
    out
}

fn valid_labels(inst: &Instance, labels: &[usize]) -> bool {
    let n = inst.n();
    (0..n).all(|a| (a + 1..n).all(|b| labels[a] != labels[b] || !inst.competes(a, b)))
}

/// Mutual reachability in the benefit graph restricted to `group`.
fn mutual_reach_classes(inst: &Instance, group: &[usize]) -> Vec<Vec<usize>> {
    let m = group.len();
    let edges: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && inst.benefits(group[a], group[b]))
        .collect();
    let c = floyd_warshall(m, &edges);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..m {
        if classes.iter().any(|cl| cl.contains(&group[a])) {
            continue;
        }
        let mut cl: Vec<usize> = (0..m).filter(|&b| c[a][b] && c[b][a]).map(|b| group[b]).collect();
        cl.sort_unstable();
        classes.push(cl);
    }
    classes.sort();
    classes
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_cover_is_minimum_and_lexicographically_first(n in 1usize..9, seed in any::<u64>(), p in 0.1f64..0.8) {
        let inst = random_instance(&mut rng(seed), n, p, 0.0);
        let cover = min_clique_cover(&inst);
        prop_assert_eq!(cover.mode, CoverMode::Exact);
        prop_assert_eq!(cover.kind, PartitionKind::CliqueCover);
        prop_assert!(cover.is_partition_of(n));
        prop_assert!(cover.is_conflict_free(&inst));
        let valid: Vec<Vec<usize>> = set_partitions(n).into_iter().filter(|l| valid_labels(&inst, l)).collect();
        let best = valid.iter().map(|l| l.iter().max().unwrap() + 1).min().unwrap();
        prop_assert_eq!(cover.groups.len(), best);
        let first = valid.iter().filter(|l| l.iter().max().unwrap() + 1 == best).min().unwrap();
        prop_assert_eq!(&cover.membership(), first);
    }

    #[test]
    fn greedy_cover_is_valid(n in 1usize..40, seed in any::<u64>(), p in 0.0f64..0.6) {
        let inst = random_instance(&mut rng(seed), n, p, 0.0);
        let cover = clique_cover(&inst, CoverMode::Greedy);
        prop_assert!(cover.is_partition_of(n));
        prop_assert!(cover.is_conflict_free(&inst));
        prop_assert_eq!(cover, clique_cover(&inst, CoverMode::Greedy));
        if n > EXACT_COVER_LIMIT {
            prop_assert_eq!(min_clique_cover(&inst).mode, CoverMode::Greedy);
        }
    }

    #[test]
    fn coalitions_are_mutual_reachability_classes(n in 1usize..12, seed in any::<u64>(), d in 0.05f64..0.6) {
        let inst = random_instance(&mut rng(seed), n, 0.3, d);
        let cover = min_clique_cover(&inst);
        let ce = scc_coalitions(&inst, &cover);
        prop_assert_eq!(ce.kind, PartitionKind::SccCoalitions);
        prop_assert!(ce.is_partition_of(n));
        for g in &ce.groups {
            prop_assert!(cover.groups.iter().any(|c| g.iter().all(|v| c.contains(v))));
        }
        let mut expected: Vec<Vec<usize>> = cover.groups.iter().flat_map(|g| mutual_reach_classes(&inst, g)).collect();
        let mut got = ce.groups.clone();
        expected.sort();
        got.sort();
        prop_assert_eq!(got, expected);
    }
}
