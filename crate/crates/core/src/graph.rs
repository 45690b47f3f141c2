//! Competing, benefit and data-usage graphs.
//!
//! The competing graph is undirected and stored as symmetric adjacency rows.
//! The benefit graph is a dense weight matrix where `benefit(j, i)` is how much
//! participant `i` gains from participant `j`'s data. The usage graph keeps its
//! decision matrix together with the reflexive-transitive closure, both as
//! bitset rows; the closure is also kept column-wise so that "who reaches `j`"
//! is a row lookup rather than a column scan.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Fixed-capacity set of node indices backed by 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    words: Vec<u64>,
    capacity: usize,
}

impl NodeSet {
    pub fn new(capacity: usize) -> Self {
        Self {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn singleton(capacity: usize, node: usize) -> Self {
        let mut s = Self::new(capacity);
        s.insert(node);
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn insert(&mut self, node: usize) {
        debug_assert!(node < self.capacity);
        self.words[node / 64] |= 1 << (node % 64);
    }

    #[inline]
    pub fn remove(&mut self, node: usize) {
        self.words[node / 64] &= !(1 << (node % 64));
    }

    #[inline]
    pub fn contains(&self, node: usize) -> bool {
        node < self.capacity && self.words[node / 64] & (1 << (node % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        NodeSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            capacity: self.capacity,
        }
    }

    pub fn intersects(&self, other: &NodeSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

fn check_node(node: usize, n: usize) -> Result<()> {
    if node < n {
        Ok(())
    } else {
        Err(Error::NodeOutOfRange { node, n })
    }
}

/// The full problem input: who competes with whom, and who benefits whom.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    n: usize,
    competing: Vec<NodeSet>,
    /// Row-major, `benefit[j * n + i]` is the gain of `i` from `j`.
    benefit: Vec<f64>,
}

impl Instance {
    /// Builds an instance from a dense competing adjacency and benefit matrix.
    pub fn new(competing: Vec<Vec<bool>>, benefit: Vec<Vec<f64>>) -> Result<Self> {
        let n = competing.len();
        if n == 0 {
            return Err(Error::InvalidInstance("no participants".into()));
        }
        if benefit.len() != n {
            return Err(Error::InvalidInstance(format!(
                "benefit matrix has {} rows, expected {n}",
                benefit.len()
            )));
        }
        let mut rows = vec![NodeSet::new(n); n];
        for (i, row) in competing.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "competing row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &c) in row.iter().enumerate() {
                if c {
                    rows[i].insert(j);
                }
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for (j, row) in benefit.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "benefit row {j} has {} entries, expected {n}",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        let inst = Self {
            n,
            competing: rows,
            benefit: flat,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Builds an instance from edge lists. Competing edges are unordered
    /// pairs; benefit edges are `(from, to, weight)` with a positive weight.
    pub fn from_edges(
        n: usize,
        competing_edges: &[(usize, usize)],
        benefit_edges: &[(usize, usize, f64)],
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("no participants".into()));
        }
        let mut competing = vec![vec![false; n]; n];
        for &(a, b) in competing_edges {
            check_node(a, n)?;
            check_node(b, n)?;
            if a == b {
                return Err(Error::SelfEdge(a));
            }
            if competing[a][b] {
                return Err(Error::DuplicateEdge(a.min(b), a.max(b)));
            }
            competing[a][b] = true;
            competing[b][a] = true;
        }
        let mut benefit = vec![vec![0.0; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for &(j, i, w) in benefit_edges {
            check_node(j, n)?;
            check_node(i, n)?;
            if j == i {
                return Err(Error::SelfEdge(j));
            }
            if seen[j][i] {
                return Err(Error::DuplicateEdge(j, i));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidInstance(format!(
                    "benefit edge ({j}, {i}) has non-positive or non-finite weight {w}"
                )));
            }
            seen[j][i] = true;
            benefit[j][i] = w;
        }
        Self::new(competing, benefit)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if self.competing[i].contains(i) {
                return Err(Error::InvalidInstance(format!(
                    "participant {i} competes with itself"
                )));
            }
            for j in self.competing[i].iter() {
                if !self.competing[j].contains(i) {
                    return Err(Error::InvalidInstance(format!(
                        "competing relation is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        if n >= 2 && (0..n).all(|i| self.competing[i].len() == n - 1) {
            return Err(Error::InvalidInstance(
                "competing graph is complete".into(),
            ));
        }
        for j in 0..n {
            for i in 0..n {
                let w = self.benefit[j * n + i];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::InvalidInstance(format!(
                        "benefit weight ({j}, {i}) = {w} is not a finite nonnegative number"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn competes(&self, a: usize, b: usize) -> bool {
        self.competing[a].contains(b)
    }

    /// Competitors of `node`.
    pub fn competitors(&self, node: usize) -> &NodeSet {
        &self.competing[node]
    }

    /// Gain of `to` from the data of `from`. The diagonal is never read by
    /// the algorithms.
    #[inline]
    pub fn benefit(&self, from: usize, to: usize) -> f64 {
        self.benefit[from * self.n + to]
    }

    /// Whether `(from, to)` is an edge of the benefit graph.
    #[inline]
    pub fn benefits(&self, from: usize, to: usize) -> bool {
        from != to && self.benefit(from, to) > 0.0
    }

    pub fn competing_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.competes(i, j)).collect())
            .collect()
    }

    pub fn benefit_matrix(&self) -> Vec<Vec<f64>> {
        self.benefit.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// Unordered competing pairs `(a, b)` with `a < b`, ascending.
    pub fn competing_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| {
                self.competing[a]
                    .iter()
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    /// Benefit edges `(from, to, weight)` in row-major order.
    pub fn benefit_edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n;
        (0..n)
            .flat_map(|j| (0..n).map(move |i| (j, i)))
            .filter(|&(j, i)| self.benefits(j, i))
            .map(|(j, i)| (j, i, self.benefit(j, i)))
            .collect()
    }

    /// Same graph with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let mut out = self.clone();
        for w in &mut out.benefit {
            *w *= factor;
        }
        out.validate()?;
        Ok(out)
    }
}

/// Level of potential: how much each participant's data is worth to everyone
/// else, i.e. row sums of the benefit matrix without the diagonal.
pub fn lop(instance: &Instance) -> Vec<f64> {
    let n = instance.n();
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| instance.benefit(i, j))
                .sum()
        })
        .collect()
}

/// Data-usage graph: the decision matrix plus its reflexive-transitive closure.
///
/// An edge `(from, to)` means `to` consumes the model updates of `from`. The
/// only mutation is [`UsageGraph::add_edge`], which keeps the closure exact.
#[derive(Clone, PartialEq, Eq)]
pub struct UsageGraph {
    n: usize,
    out_edges: Vec<NodeSet>,
    reach_from: Vec<NodeSet>,
    reach_to: Vec<NodeSet>,
}

impl fmt::Debug for UsageGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UsageGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl UsageGraph {
    /// No collaboration: the decision matrix and closure are both the identity.
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            out_edges: vec![NodeSet::new(n); n],
            reach_from: (0..n).map(|i| NodeSet::singleton(n, i)).collect(),
            reach_to: (0..n).map(|i| NodeSet::singleton(n, i)).collect(),
        }
    }

    /// Builds a usage graph edge by edge. When an instance is given, every
    /// edge must also be a benefit edge.
    pub fn from_edges(
        n: usize,
        edges: &[(usize, usize)],
        instance: Option<&Instance>,
    ) -> Result<Self> {
        let mut g = Self::identity(n);
        for &(from, to) in edges {
            if let Some(inst) = instance {
                check_node(from, n)?;
                check_node(to, n)?;
                if from != to && !inst.benefits(from, to) {
                    return Err(Error::EdgeNotInBenefitGraph { from, to });
                }
            }
            g.add_edge(from, to)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Decision variable: true on the diagonal, otherwise whether the edge
    /// `(from, to)` has been selected.
    #[inline]
    pub fn x(&self, from: usize, to: usize) -> bool {
        from == to || self.out_edges[from].contains(to)
    }

    /// Closure entry: whether `from` reaches `to` (reflexive).
    #[inline]
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        self.reach_from[from].contains(to)
    }

    /// Nodes reachable from `node`, including itself.
    pub fn reachable_from(&self, node: usize) -> Result<Vec<usize>> {
        check_node(node, self.n)?;
        Ok(self.reach_from[node].to_vec())
    }

    /// Nodes that reach `node`, including itself.
    pub fn reachable_to(&self, node: usize) -> Result<Vec<usize>> {
        check_node(node, self.n)?;
        Ok(self.reach_to[node].to_vec())
    }

    pub(crate) fn reach_from_set(&self, node: usize) -> &NodeSet {
        &self.reach_from[node]
    }

    pub(crate) fn reach_to_set(&self, node: usize) -> &NodeSet {
        &self.reach_to[node]
    }

    /// Nodes whose updates `node` consumes directly.
    pub fn collaborators(&self, node: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| j != node && self.out_edges[j].contains(node))
            .collect()
    }

    /// Off-diagonal edges `(from, to)` in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|j| self.out_edges[j].iter().map(move |i| (j, i)))
            .collect()
    }

    pub fn x_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.x(j, i)).collect())
            .collect()
    }

    pub fn closure_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.reaches(j, i)).collect())
            .collect()
    }

    /// Selects the edge `(from, to)` and propagates reachability: every node
    /// reaching `from` now reaches everything `to` reaches.
    pub fn add_edge(&mut self, from: usize, to: usize) -> Result<()> {
        check_node(from, self.n)?;
        check_node(to, self.n)?;
        if from == to {
            return Err(Error::SelfEdge(from));
        }
        if self.out_edges[from].contains(to) {
            return Err(Error::DuplicateEdge(from, to));
        }
        self.out_edges[from].insert(to);

        // Snapshots: when `to` already reaches `from` the two sets alias.
        let sources = self.reach_to[from].clone();
        let targets = self.reach_from[to].clone();
        for p in sources.iter() {
            self.reach_from[p].union_with(&targets);
        }
        for q in targets.iter() {
            self.reach_to[q].union_with(&sources);
        }
        Ok(())
    }

    /// Shortest path along selected edges, preferring low indices.
    pub fn path(&self, from: usize, to: usize) -> Option<PathWitness> {
        if from == to || !self.reaches(from, to) {
            return None;
        }
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::from([from]);
        parent[from] = from;
        while let Some(u) = queue.pop_front() {
            for v in self.out_edges[u].iter() {
                if parent[v] != usize::MAX {
                    continue;
                }
                parent[v] = u;
                if v == to {
                    let mut nodes = vec![to];
                    let mut cur = to;
                    while cur != from {
                        cur = parent[cur];
                        nodes.push(cur);
                    }
                    nodes.reverse();
                    return Some(PathWitness { nodes });
                }
                queue.push_back(v);
            }
        }
        None
    }
}

/// A directed path between two distinct nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWitness {
    pub nodes: Vec<usize>,
}

impl PathWitness {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }
}

impl fmt::Display for PathWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.nodes.iter().map(|v| format!("v{}", v + 1)).collect();
        f.write_str(&labels.join(" -> "))
    }
}

/// Guard sets for a prospective edge `(j, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuardSets {
    /// Competitors of anything reaching `j` that `i` already reaches.
    pub minus: Vec<usize>,
    /// Competitors of anything `i` reaches that already reach `j`.
    pub plus: Vec<usize>,
}

impl GuardSets {
    pub fn is_clear(&self) -> bool {
        self.minus.is_empty() && self.plus.is_empty()
    }
}

/// Union of the competitors of every member of `nodes`.
pub(crate) fn competitors_of(instance: &Instance, nodes: &NodeSet) -> NodeSet {
    let mut out = NodeSet::new(instance.n());
    for p in nodes.iter() {
        out.union_with(instance.competitors(p));
    }
    out
}

/// Bitset form of the guard sets, `(minus, plus)`.
pub(crate) fn guard_bits(
    instance: &Instance,
    usage: &UsageGraph,
    i: usize,
    j: usize,
) -> (NodeSet, NodeSet) {
    let minus = competitors_of(instance, usage.reach_to_set(j)).intersection(usage.reach_from_set(i));
    let plus = competitors_of(instance, usage.reach_from_set(i)).intersection(usage.reach_to_set(j));
    (minus, plus)
}

/// Guard sets that block `i` from consuming `j`'s updates.
pub fn competitor_sets(
    instance: &Instance,
    usage: &UsageGraph,
    i: usize,
    j: usize,
) -> Result<GuardSets> {
    let n = instance.n();
    check_node(i, n)?;
    check_node(j, n)?;
    if usage.n() != n {
        return Err(Error::InvalidInstance(format!(
            "usage graph has {} nodes, instance has {n}",
            usage.n()
        )));
    }
    if i == j {
        return Err(Error::SelfEdge(i));
    }
    let (minus, plus) = guard_bits(instance, usage, i, j);
    Ok(GuardSets {
        minus: minus.to_vec(),
        plus: plus.to_vec(),
    })
}

/// True when no participant reaches any of its competitors in the usage
/// graph, in either direction.
pub fn assumption_holds(instance: &Instance, usage: &UsageGraph) -> bool {
    (0..instance.n()).all(|p| !usage.reach_from_set(p).intersects(instance.competitors(p)))
}

/// Ordered competing pairs `(from, to)` where `from` reaches `to`.
pub fn violations(instance: &Instance, usage: &UsageGraph) -> Vec<(usize, usize)> {
    (0..instance.n())
        .flat_map(|p| {
            usage
                .reach_from_set(p)
                .intersection(instance.competitors(p))
                .to_vec()
                .into_iter()
                .map(move |q| (p, q))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> UsageGraph {
        UsageGraph::from_edges(3, &[(0, 1), (1, 2)], None).unwrap()
    }

    #[test]
    fn nodeset_basics() {
        let mut s = NodeSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        s.remove(64);
        assert!(!s.contains(64));
        assert!(!s.contains(500));
    }

    #[test]
    fn lop_edge_cases() {
        let zero = Instance::new(vec![vec![false; 3]; 3], vec![vec![0.0; 3]; 3]).unwrap();
        assert_eq!(lop(&zero), vec![0.0, 0.0, 0.0]);
        let single = Instance::from_edges(2, &[], &[(0, 1, 2.5)]).unwrap();
        assert_eq!(lop(&single), vec![2.5, 0.0]);
    }

    #[test]
    fn lop_ignores_diagonal() {
        let inst = Instance::new(
            vec![vec![false; 2]; 2],
            vec![vec![9.0, 1.0], vec![0.5, 9.0]],
        )
        .unwrap();
        assert_eq!(lop(&inst), vec![1.0, 0.5]);
    }

    #[test]
    fn instance_rejects_bad_input() {
        assert!(matches!(
            Instance::from_edges(3, &[(1, 1)], &[]),
            Err(Error::SelfEdge(1))
        ));
        assert!(matches!(
            Instance::from_edges(3, &[(0, 1), (1, 0)], &[]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Instance::from_edges(3, &[], &[(0, 1, 1.0), (0, 1, 2.0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(Instance::from_edges(3, &[], &[(0, 1, 0.0)]).is_err());
        assert!(Instance::from_edges(3, &[], &[(0, 1, f64::NAN)]).is_err());
        assert!(matches!(
            Instance::from_edges(3, &[(0, 3)], &[]),
            Err(Error::NodeOutOfRange { node: 3, n: 3 })
        ));
        // complete competing graph
        assert!(Instance::from_edges(2, &[(0, 1)], &[]).is_err());
        // asymmetric matrix
        assert!(Instance::new(
            vec![vec![false, true, false], vec![false; 3], vec![false; 3]],
            vec![vec![0.0; 3]; 3]
        )
        .is_err());
        let mut w = vec![vec![0.0; 2]; 2];
        w[0][1] = f64::INFINITY;
        assert!(Instance::new(vec![vec![false; 2]; 2], w).is_err());
        assert!(Instance::new(vec![], vec![]).is_err());
    }

    #[test]
    fn single_participant_is_valid() {
        let inst = Instance::from_edges(1, &[], &[]).unwrap();
        assert_eq!(inst.n(), 1);
    }

    #[test]
    fn reachability_identity_and_chain() {
        let id = UsageGraph::identity(3);
        for i in 0..3 {
            assert_eq!(id.reachable_from(i).unwrap(), vec![i]);
            assert_eq!(id.reachable_to(i).unwrap(), vec![i]);
        }
        let g = chain3();
        assert_eq!(g.reachable_from(0).unwrap(), vec![0, 1, 2]);
        assert_eq!(g.reachable_to(2).unwrap(), vec![0, 1, 2]);
        assert!(matches!(
            g.reachable_from(3),
            Err(Error::NodeOutOfRange { .. })
        ));
        assert!(g.reachable_to(7).is_err());
    }

    #[test]
    fn add_edge_updates_closure() {
        let mut g = UsageGraph::identity(3);
        g.add_edge(0, 1).unwrap();
        let c = g.closure_matrix();
        let gained: Vec<_> = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && c[a][b])
            .collect();
        assert_eq!(gained, vec![(0, 1)]);
        g.add_edge(1, 2).unwrap();
        assert!(g.reaches(0, 2));
        assert!(!g.reaches(2, 0));
        assert_eq!(g.add_edge(1, 1), Err(Error::SelfEdge(1)));
        assert_eq!(g.add_edge(0, 1), Err(Error::DuplicateEdge(0, 1)));
    }

    #[test]
    fn add_edge_closing_a_cycle() {
        let mut g = chain3();
        g.add_edge(2, 0).unwrap();
        assert!(g.closure_matrix().iter().flatten().all(|&c| c));
    }

    #[test]
    fn usage_edges_must_be_benefit_edges() {
        let inst = Instance::from_edges(3, &[], &[(0, 1, 1.0)]).unwrap();
        assert!(UsageGraph::from_edges(3, &[(0, 1)], Some(&inst)).is_ok());
        assert_eq!(
            UsageGraph::from_edges(3, &[(1, 0)], Some(&inst)),
            Err(Error::EdgeNotInBenefitGraph { from: 1, to: 0 })
        );
    }

    #[test]
    fn guard_sets_without_competition_are_empty() {
        let inst = Instance::from_edges(4, &[], &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let g = UsageGraph::from_edges(4, &[(0, 1), (1, 2)], Some(&inst)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(competitor_sets(&inst, &g, i, j).unwrap().is_clear());
                }
            }
        }
    }

    #[test]
    fn guard_sets_two_competitors() {
        let inst = Instance::from_edges(3, &[(0, 1)], &[]).unwrap();
        let g = UsageGraph::identity(3);
        // competitors of {0} are {1}; node 1 reaches itself
        let gs = competitor_sets(&inst, &g, 1, 0).unwrap();
        assert_eq!(gs.minus, vec![1]);
        assert_eq!(gs.plus, vec![0]);
        assert_eq!(competitor_sets(&inst, &g, 1, 1), Err(Error::SelfEdge(1)));
    }

    #[test]
    fn friend_of_enemy_pattern() {
        let inst =
            Instance::from_edges(3, &[(0, 2)], &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert!(assumption_holds(&inst, &UsageGraph::identity(3)));
        let g = UsageGraph::from_edges(3, &[(0, 1), (1, 2)], Some(&inst)).unwrap();
        assert!(!assumption_holds(&inst, &g));
        assert_eq!(violations(&inst, &g), vec![(0, 2)]);
        let w = g.path(0, 2).unwrap();
        assert_eq!(w.nodes, vec![0, 1, 2]);
        assert_eq!(w.length(), 2);
        assert_eq!(w.to_string(), "v1 -> v2 -> v3");
    }
}
