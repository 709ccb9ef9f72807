use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use m0n_core::trees::{enumerate_by_grade, enumerate_stable_trees, TreeError};
use m0n_core::{LabelSet, StableTree};
use proptest::prelude::*;

fn set(n: u32) -> LabelSet<u32> {
    LabelSet::range(n).unwrap()
}

/// All trees on `{1..n}` for `n <= 8`, enumerated once per test binary.
fn all_trees(n: u32) -> &'static [StableTree<u32>] {
    static CACHE: OnceLock<Vec<Vec<StableTree<u32>>>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        (0..=8)
            .map(|k| {
                if k < 3 {
                    Vec::new()
                } else {
                    enumerate_stable_trees(&set(k), None)
                }
            })
            .collect()
    })[n as usize]
}

fn double_factorial(k: i64) -> u64 {
    if k <= 0 {
        1
    } else {
        (1..=k as u64).rev().step_by(2).product()
    }
}

/// Unrooted binary tree on leaves `0..n`, grown by attaching each new leaf to
/// the middle of an existing edge.
#[derive(Clone)]
struct Phylo {
    leaves: usize,
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl Phylo {
    fn star3() -> Self {
        Self {
            leaves: 3,
            nodes: 4,
            edges: vec![(0, 3), (1, 3), (2, 3)],
        }
    }

    /// Leaves are renumbered so that leaf ids stay `0..leaves`.
    fn attach(&self, edge: usize) -> Self {
        let k = self.leaves;
        let shift = |x: usize| if x >= k { x + 1 } else { x };
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (shift(a), shift(b))).collect();
        let w = self.nodes + 1;
        let (a, b) = edges.swap_remove(edge);
        edges.extend([(a, w), (w, b), (k, w)]);
        Self {
            leaves: k + 1,
            nodes: self.nodes + 2,
            edges,
        }
    }

    fn split_set(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a < self.leaves || b < self.leaves {
                continue;
            }
            let mut side = BTreeSet::from([b]);
            let mut stack = vec![b];
            while let Some(v) = stack.pop() {
                for (f, &(x, y)) in self.edges.iter().enumerate() {
                    if f == e {
                        continue;
                    }
                    let w = if x == v {
                        y
                    } else if y == v {
                        x
                    } else {
                        continue;
                    };
                    if side.insert(w) {
                        stack.push(w);
                    }
                }
            }
            let block: Vec<usize> = (0..self.leaves).filter(|l| side.contains(l)).collect();
            let block = if block.contains(&0) {
                (0..self.leaves).filter(|l| !block.contains(l)).collect()
            } else {
                block
            };
            out.insert(block);
        }
        out
    }
}

fn all_phylo(n: usize) -> Vec<Phylo> {
    let mut trees = vec![Phylo::star3()];
    for _ in 3..n {
        trees = trees
            .iter()
            .flat_map(|t| (0..t.edges.len()).map(move |e| t.attach(e)))
            .collect();
    }
    trees
}

#[test]
fn trivalent_trees_match_stepwise_addition() {
    for n in 3..=8u32 {
        let oracle: BTreeSet<_> = all_phylo(n as usize).iter().map(Phylo::split_set).collect();
        let top = enumerate_stable_trees(&set(n), Some(n as usize - 3));
        let ours: BTreeSet<_> = top.iter().map(StableTree::splits).collect();
        assert_eq!(oracle.len() as u64, double_factorial(2 * n as i64 - 5), "n = {n}");
        assert_eq!(ours, oracle, "n = {n}");
        assert!(top.iter().all(StableTree::is_trivalent));
    }
}

#[test]
fn one_edge_trees_match_two_block_partitions() {
    for n in 4..=9usize {
        let mut oracle = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let block: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if block.len() >= 2 && n - block.len() >= 2 && !block.contains(&0) {
                oracle.insert(BTreeSet::from([block]));
            }
        }
        let ours: BTreeSet<_> = enumerate_stable_trees(&set(n as u32), Some(1))
            .iter()
            .map(|t| t.splits().into_iter().collect::<BTreeSet<_>>())
            .collect();
        assert_eq!(oracle.len(), (1 << (n - 1)) - n - 1);
        assert_eq!(ours, oracle);
    }
}

#[test]
fn canonical_form_is_complete_invariant() {
    for n in 4..=7 {
        let all = enumerate_stable_trees(&set(n), None);
        let mut by_splits: BTreeMap<BTreeSet<Vec<usize>>, StableTree<u32>> = BTreeMap::new();
        for t in &all {
            assert!(t.is_canonical());
            assert!(
                by_splits.insert(t.splits(), t.clone()).is_none(),
                "two trees share splits"
            );
        }
    }
}

#[test]
fn split_then_contract_round_trips() {
    let all = enumerate_by_grade(&set(6));
    for t in all.iter().flatten() {
        for e in 0..t.edge_count() {
            let (c, v, part) = t.contract_with_partition(e).unwrap();
            assert_eq!(c.codim() + 1, t.codim());
            assert_eq!(&c.split(v, &part).unwrap(), t);
        }
        for v in 0..t.vertex_count() {
            for part in t.admissible_splits(v) {
                let s = t.split(v, &part).unwrap();
                assert!((0..s.edge_count()).any(|e| s.contract(e).as_ref() == Ok(t)));
            }
        }
    }
}

#[test]
fn contraction_order_does_not_matter() {
    for t in enumerate_stable_trees(&set(7), Some(3)) {
        let mut results = BTreeSet::new();
        for e in 0..3 {
            for f in 0..2 {
                results.insert(t.contract(e).unwrap().contract(f).unwrap().contract(0).unwrap());
            }
        }
        assert_eq!(results.len(), 1);
        assert_eq!(results.pop_first().unwrap(), StableTree::corolla(set(7)));
    }
}

#[test]
fn grafts_at_distinct_leaves_commute() {
    let host = StableTree::corolla(LabelSet::new([1u32, 2, 3, 4]).unwrap());
    let g1 = StableTree::corolla(LabelSet::new([10u32, 11, 12]).unwrap());
    let g2 = enumerate_stable_trees(&LabelSet::new([20u32, 21, 22, 23, 24]).unwrap(), Some(1)).swap_remove(3);
    let a = host.graft(&2, &g1, &10).unwrap().graft(&3, &g2, &22).unwrap();
    let b = host.graft(&3, &g2, &22).unwrap().graft(&2, &g1, &10).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.edge_count(), 1 + 2);
    assert_eq!(a.labels().len(), 4 + 3 + 5 - 4);
    // sequential composition is associative
    let inner = g1.graft(&11, &g2, &20).unwrap();
    let left = host.graft(&2, &g1, &10).unwrap().graft(&11, &g2, &20).unwrap();
    let right = host.graft(&2, &inner, &10).unwrap();
    assert_eq!(left, right);
}

#[test]
fn splits_of_too_small_vertices_are_refused() {
    let t = StableTree::corolla(set(3));
    assert!(t.admissible_splits(0).is_empty());
    let flags = t.flags(0);
    assert!(matches!(t.split(0, &flags[..1]), Err(TreeError::UnstableSplit { .. })));
}

fn shuffled(t: &StableTree<u32>, perm_seed: &[usize], flips: &[bool]) -> StableTree<u32> {
    let k = t.vertex_count();
    let mut order: Vec<usize> = (0..k).collect();
    for (i, s) in perm_seed.iter().enumerate().take(k) {
        order.swap(i, i + s % (k - i));
    }
    let mut edges: Vec<(usize, usize)> = t
        .edges()
        .iter()
        .zip(flips.iter().chain(std::iter::repeat(&false)))
        .map(|(&(a, b), &flip)| {
            if flip {
                (order[b], order[a])
            } else {
                (order[a], order[b])
            }
        })
        .collect();
    edges.reverse();
    let leaves = t.leaf_vertices().iter().map(|&v| order[v]).collect();
    StableTree::from_parts(t.labels().clone(), k, edges, leaves).unwrap()
}

proptest! {
    #[test]
    fn renumbered_trees_canonicalize_back(
        n in 4u32..=8,
        pick in any::<prop::sample::Index>(),
        perm in prop::collection::vec(0usize..64, 8),
        flips in prop::collection::vec(any::<bool>(), 8),
    ) {
        let t = pick.get(all_trees(n));
        let s = shuffled(t, &perm, &flips);
        prop_assert_eq!(s.splits(), t.splits());
        prop_assert_eq!(&s.canonical_form(), t);
    }

    #[test]
    fn grade_and_stability_invariants(n in 3u32..=7, pick in any::<prop::sample::Index>()) {
        let t = pick.get(all_trees(n));
        prop_assert_eq!(t.codim() + t.dim(), n as usize - 3);
        prop_assert!(t.vertex_valences().iter().all(|&k| k >= 3));
        prop_assert_eq!(t.splits().len(), t.edge_count());
        prop_assert_eq!(t.vertex_count(), t.edge_count() + 1);
        let total: usize = t.vertex_valences().iter().sum();
        prop_assert_eq!(total, n as usize + 2 * t.edge_count());
    }
}
