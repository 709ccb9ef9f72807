//! Stable labeled trees: the dual graphs of genus-zero stable curves.
//!
//! A [`StableTree`] over a [`LabelSet`] `S` has one leaf per label, internal
//! vertices of valence at least three, and internal edges stored as pairs of
//! half-edges. Edge `e` joins `edges[e].0` (half-edge `2e`) to `edges[e].1`
//! (half-edge `2e + 1`). The set of flags `F(v)` of a vertex is its leaves
//! together with the half-edges ending at it.
//!
//! Trees are compared through [`StableTree::canonical_form`]: two trees over
//! the same label set are isomorphic (by a map fixing the labels) exactly when
//! their canonical forms are equal. Every operation that builds a new tree
//! returns it in canonical form.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("a stable tree needs at least 3 labels, got {0}")]
    TooFewLabels(usize),
    #[error("duplicate label")]
    DuplicateLabel,
    #[error("label is not in the label set")]
    UnknownLabel,
    #[error("expected {expected} leaf assignments, got {got}")]
    LeafCount { expected: usize, got: usize },
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("edge {0} is a loop")]
    SelfLoop(usize),
    #[error("graph with {vertices} vertices and {edges} edges is not a tree")]
    NotATree { vertices: usize, edges: usize },
    #[error("vertex {vertex} has {flags} flags; stability needs at least 3")]
    Unstable { vertex: usize, flags: usize },
    #[error("flag is not incident to vertex {0}")]
    ForeignFlag(usize),
    #[error("split of vertex {vertex} into {left} + {right} flags is unstable; both sides need at least 2")]
    UnstableSplit { vertex: usize, left: usize, right: usize },
    #[error("grafting would give two leaves the same label")]
    OverlappingLabels,
}

/// A finite set of at least three distinct labels, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelSet<L> {
    labels: Arc<[L]>,
}

impl<L: Ord + Clone> LabelSet<L> {
    pub fn new(labels: impl IntoIterator<Item = L>) -> Result<Self, TreeError> {
        let mut v: Vec<L> = labels.into_iter().collect();
        v.sort();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(TreeError::DuplicateLabel);
        }
        if v.len() < 3 {
            return Err(TreeError::TooFewLabels(v.len()));
        }
        Ok(Self { labels: v.into() })
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    pub fn contains(&self, label: &L) -> bool {
        self.index_of(label).is_some()
    }
}

impl LabelSet<u32> {
    /// The labels `1..=n`.
    pub fn range(n: u32) -> Result<Self, TreeError> {
        Self::new(1..=n)
    }
}

impl<L> LabelSet<L> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, L> {
        self.labels.iter()
    }

    pub fn as_slice(&self) -> &[L] {
        &self.labels
    }

    /// Largest possible number of internal edges, `|S| - 3`.
    pub fn max_grade(&self) -> usize {
        self.labels.len() - 3
    }
}

impl<L> Index<usize> for LabelSet<L> {
    type Output = L;
    fn index(&self, i: usize) -> &L {
        &self.labels[i]
    }
}

impl<'a, L> IntoIterator for &'a LabelSet<L> {
    type Item = &'a L;
    type IntoIter = core::slice::Iter<'a, L>;
    fn into_iter(self) -> Self::IntoIter {
        self.labels.iter()
    }
}

/// A flag (half-edge) of a vertex: either the leaf carrying label index `i`
/// or one half of an internal edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    Leaf(usize),
    Half(usize),
}

impl Flag {
    pub fn edge(self) -> Option<usize> {
        match self {
            Flag::Half(h) => Some(h / 2),
            Flag::Leaf(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableTree<L> {
    labels: LabelSet<L>,
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    /// Vertex carrying each label, indexed like `labels`.
    leaves: Vec<usize>,
}

/// Where the vertices and edges of a tree went under canonicalization.
struct Relabeling {
    vertex: Vec<usize>,
    /// New index of each old edge and whether its two halves were swapped.
    edge: Vec<(usize, bool)>,
}

impl Relabeling {
    fn flag(&self, f: Flag) -> Flag {
        match f {
            Flag::Leaf(i) => Flag::Leaf(i),
            Flag::Half(h) => {
                let (e, swapped) = self.edge[h / 2];
                Flag::Half(2 * e + ((h % 2) ^ usize::from(swapped)))
            }
        }
    }
}

impl<L: Ord + Clone> StableTree<L> {
    /// The one-vertex tree whose flags are all of `labels`.
    pub fn corolla(labels: LabelSet<L>) -> Self {
        let n = labels.len();
        Self {
            labels,
            vertex_count: 1,
            edges: Vec::new(),
            leaves: vec![0; n],
        }
    }

    /// Builds a tree from explicit parts, with `leaves[i]` the vertex of the
    /// `i`-th smallest label. The result is validated but not canonicalized.
    pub fn from_parts(
        labels: LabelSet<L>,
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        leaves: Vec<usize>,
    ) -> Result<Self, TreeError> {
        let t = Self {
            labels,
            vertex_count,
            edges,
            leaves,
        };
        t.validate()?;
        Ok(t)
    }

    /// Like [`StableTree::from_parts`] with leaves given as `(label, vertex)`.
    pub fn from_leaf_map(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        leaf_map: impl IntoIterator<Item = (L, usize)>,
    ) -> Result<Self, TreeError> {
        let mut pairs: Vec<(L, usize)> = leaf_map.into_iter().collect();
        pairs.sort();
        let labels = LabelSet::new(pairs.iter().map(|(l, _)| l.clone()))?;
        let leaves = pairs.into_iter().map(|(_, v)| v).collect();
        Self::from_parts(labels, vertex_count, edges, leaves)
    }

    fn validate(&self) -> Result<(), TreeError> {
        if self.leaves.len() != self.labels.len() {
            return Err(TreeError::LeafCount {
                expected: self.labels.len(),
                got: self.leaves.len(),
            });
        }
        let n = self.vertex_count;
        if n == 0 || self.edges.len() + 1 != n {
            return Err(TreeError::NotATree {
                vertices: n,
                edges: self.edges.len(),
            });
        }
        if let Some(&v) = self.leaves.iter().find(|&&v| v >= n) {
            return Err(TreeError::NoSuchVertex(v));
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(TreeError::NoSuchVertex(a.max(b)));
            }
            if a == b {
                return Err(TreeError::SelfLoop(e));
            }
        }
        // |E| = |V| - 1, so connected means acyclic.
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(TreeError::NotATree {
                vertices: n,
                edges: self.edges.len(),
            });
        }
        let valence = self.valences();
        if let Some((v, &k)) = valence.iter().enumerate().find(|(_, &k)| k < 3) {
            return Err(TreeError::Unstable { vertex: v, flags: k });
        }
        Ok(())
    }

    /// Neighbors of each vertex as `(vertex, edge)`.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    fn valences(&self) -> Vec<usize> {
        let mut k = vec![0; self.vertex_count];
        for &v in &self.leaves {
            k[v] += 1;
        }
        for &(a, b) in &self.edges {
            k[a] += 1;
            k[b] += 1;
        }
        k
    }

    pub fn labels(&self) -> &LabelSet<L> {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Codimension of the stratum indexed by this tree.
    pub fn codim(&self) -> usize {
        self.edges.len()
    }

    /// Dimension of the stratum, `|S| - 3 - codim`.
    pub fn dim(&self) -> usize {
        self.labels.len() - 3 - self.edges.len()
    }

    /// Vertex of each label, indexed like [`StableTree::labels`].
    pub fn leaf_vertices(&self) -> &[usize] {
        &self.leaves
    }

    pub fn leaf_vertex(&self, label: &L) -> Option<usize> {
        self.labels.index_of(label).map(|i| self.leaves[i])
    }

    /// `F(v)`: the leaves at `v` followed by the half-edges at `v`.
    pub fn flags(&self, v: usize) -> Vec<Flag> {
        let mut f: Vec<Flag> = self
            .leaves
            .iter()
            .enumerate()
            .filter(|(_, &w)| w == v)
            .map(|(i, _)| Flag::Leaf(i))
            .collect();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                f.push(Flag::Half(2 * e));
            }
            if b == v {
                f.push(Flag::Half(2 * e + 1));
            }
        }
        f
    }

    pub fn valence(&self, v: usize) -> usize {
        self.flags(v).len()
    }

    /// Valence of every vertex.
    pub fn vertex_valences(&self) -> Vec<usize> {
        self.valences()
    }

    /// Every vertex has exactly three flags (a zero-dimensional stratum).
    pub fn is_trivalent(&self) -> bool {
        self.valences().iter().all(|&k| k == 3)
    }

    /// Label indices on the `edges[e].1` side of edge `e`, sorted.
    pub fn edge_split(&self, e: usize) -> Result<Vec<usize>, TreeError> {
        let &(a, b) = self.edges.get(e).ok_or(TreeError::NoSuchEdge(e))?;
        let adj = self.adjacency();
        let mut side = vec![false; self.vertex_count];
        side[b] = true;
        let mut stack = vec![b];
        while let Some(v) = stack.pop() {
            for &(w, f) in &adj[v] {
                if f != e && !side[w] && w != a {
                    side[w] = true;
                    stack.push(w);
                }
            }
        }
        Ok((0..self.leaves.len()).filter(|&i| side[self.leaves[i]]).collect())
    }

    /// The set of label bipartitions cut out by the edges, each recorded by
    /// the block that avoids the smallest label.
    pub fn splits(&self) -> BTreeSet<Vec<usize>> {
        (0..self.edges.len())
            .map(|e| {
                let s = self.edge_split(e).expect("edge index in range");
                if s.contains(&0) {
                    (0..self.leaves.len()).filter(|i| !s.contains(i)).collect()
                } else {
                    s
                }
            })
            .collect()
    }

    pub fn canonical_form(&self) -> Self {
        self.canonicalize().0
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_form()
    }

    /// Roots the tree at the vertex of the smallest label and numbers the
    /// vertices in preorder, visiting children by the smallest label below
    /// them. Edge `c - 1` joins vertex `c` to its parent.
    fn canonicalize(&self) -> (Self, Relabeling) {
        let n = self.vertex_count;
        let adj = self.adjacency();
        let root = self.leaves[0];

        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    stack.push(w);
                }
            }
        }

        let mut min_label = vec![usize::MAX; n];
        for (i, &v) in self.leaves.iter().enumerate() {
            min_label[v] = min_label[v].min(i);
        }
        for &v in order.iter().rev() {
            if let Some((p, _)) = parent[v] {
                min_label[p] = min_label[p].min(min_label[v]);
            }
        }

        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, up) in parent.iter().enumerate() {
            if let Some((p, _)) = *up {
                children[p].push(v);
            }
        }
        for c in children.iter_mut() {
            c.sort_by_key(|&w| min_label[w]);
        }

        let mut new_id = vec![0; n];
        let mut next = 0;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            new_id[v] = next;
            next += 1;
            stack.extend(children[v].iter().rev());
        }

        let mut edges = vec![(0, 0); n - 1];
        let mut edge_map = vec![(0, false); n - 1];
        for v in 0..n {
            if let Some((p, e)) = parent[v] {
                let c = new_id[v];
                edges[c - 1] = (new_id[p], c);
                // the old first endpoint is now the child iff it was `v`
                edge_map[e] = (c - 1, self.edges[e].0 == v);
            }
        }
        let leaves = self.leaves.iter().map(|&v| new_id[v]).collect();
        (
            Self {
                labels: self.labels.clone(),
                vertex_count: n,
                edges,
                leaves,
            },
            Relabeling {
                vertex: new_id,
                edge: edge_map,
            },
        )
    }

    /// Replaces `v` by two vertices joined by a new edge; `part` (`F'`) stays
    /// at `v` and the remaining flags (`F''`) move to the new vertex.
    pub fn split(&self, v: usize, part: &[Flag]) -> Result<Self, TreeError> {
        Ok(self.split_raw(v, part)?.canonical_form())
    }

    fn split_raw(&self, v: usize, part: &[Flag]) -> Result<Self, TreeError> {
        if v >= self.vertex_count {
            return Err(TreeError::NoSuchVertex(v));
        }
        let flags = self.flags(v);
        let keep: BTreeSet<Flag> = part.iter().copied().collect();
        if keep.iter().any(|f| !flags.contains(f)) {
            return Err(TreeError::ForeignFlag(v));
        }
        let left = keep.len();
        let right = flags.len() - left;
        if left < 2 || right < 2 {
            return Err(TreeError::UnstableSplit { vertex: v, left, right });
        }
        let mut t = self.clone();
        let w = t.vertex_count;
        t.vertex_count += 1;
        for f in flags.into_iter().filter(|f| !keep.contains(f)) {
            match f {
                Flag::Leaf(i) => t.leaves[i] = w,
                Flag::Half(h) if h % 2 == 0 => t.edges[h / 2].0 = w,
                Flag::Half(h) => t.edges[h / 2].1 = w,
            }
        }
        t.edges.push((v, w));
        Ok(t)
    }

    /// Every admissible split `F'` of vertex `v`, each unordered partition
    /// listed once (the side holding the first flag).
    pub fn admissible_splits(&self, v: usize) -> Vec<Vec<Flag>> {
        let flags = self.flags(v);
        let k = flags.len();
        if k < 4 {
            return Vec::new();
        }
        let rest = k - 1;
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << rest) {
            let size = 1 + mask.count_ones() as usize;
            if size < 2 || size > k - 2 {
                continue;
            }
            let mut part = vec![flags[0]];
            part.extend((0..rest).filter(|b| mask >> b & 1 == 1).map(|b| flags[b + 1]));
            out.push(part);
        }
        out
    }

    /// All trees obtained from this one by a single split, canonical and
    /// without repetition.
    pub fn one_step_splits(&self) -> BTreeSet<Self> {
        let mut out = BTreeSet::new();
        for v in 0..self.vertex_count {
            for part in self.admissible_splits(v) {
                out.insert(self.split(v, &part).expect("admissible split"));
            }
        }
        out
    }

    /// Merges the endpoints of edge `e`.
    pub fn contract(&self, e: usize) -> Result<Self, TreeError> {
        Ok(self.contract_with_partition(e)?.0)
    }

    /// Contracts `e` and also reports the merged vertex together with the
    /// flags it inherited from `edges[e].1`, both in the numbering of the
    /// returned canonical tree. Splitting the result along that partition
    /// gives back this tree.
    pub fn contract_with_partition(&self, e: usize) -> Result<(Self, usize, Vec<Flag>), TreeError> {
        let &(a, b) = self.edges.get(e).ok_or(TreeError::NoSuchEdge(e))?;
        let from_b: Vec<Flag> = self.flags(b).into_iter().filter(|f| f.edge() != Some(e)).collect();

        let renumber = |x: usize| -> usize {
            let x = if x == b { a } else { x };
            if x > b {
                x - 1
            } else {
                x
            }
        };
        let reedge = |j: usize| if j > e { j - 1 } else { j };
        let raw = Self {
            labels: self.labels.clone(),
            vertex_count: self.vertex_count - 1,
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != e)
                .map(|(_, &(x, y))| (renumber(x), renumber(y)))
                .collect(),
            leaves: self.leaves.iter().map(|&v| renumber(v)).collect(),
        };
        let moved: Vec<Flag> = from_b
            .into_iter()
            .map(|f| match f {
                Flag::Leaf(i) => Flag::Leaf(i),
                Flag::Half(h) => Flag::Half(2 * reedge(h / 2) + h % 2),
            })
            .collect();
        let (canon, map) = raw.canonicalize();
        let merged = map.vertex[renumber(a)];
        let moved = moved.into_iter().map(|f| map.flag(f)).collect();
        Ok((canon, merged, moved))
    }

    /// Operadic gluing: the leaf `leaf` of `self` and the leaf `root` of
    /// `guest` are fused into one internal edge.
    pub fn graft(&self, leaf: &L, guest: &Self, root: &L) -> Result<Self, TreeError> {
        let leaf_idx = self.labels.index_of(leaf).ok_or(TreeError::UnknownLabel)?;
        let root_idx = guest.labels.index_of(root).ok_or(TreeError::UnknownLabel)?;
        let offset = self.vertex_count;
        let mut leaf_map: Vec<(L, usize)> = Vec::with_capacity(self.labels.len() + guest.labels.len() - 2);
        for (i, l) in self.labels.iter().enumerate() {
            if i != leaf_idx {
                leaf_map.push((l.clone(), self.leaves[i]));
            }
        }
        for (i, l) in guest.labels.iter().enumerate() {
            if i != root_idx {
                leaf_map.push((l.clone(), guest.leaves[i] + offset));
            }
        }
        let mut edges = self.edges.clone();
        edges.extend(guest.edges.iter().map(|&(x, y)| (x + offset, y + offset)));
        edges.push((self.leaves[leaf_idx], guest.leaves[root_idx] + offset));
        let t = Self::from_leaf_map(offset + guest.vertex_count, edges, leaf_map).map_err(|err| match err {
            TreeError::DuplicateLabel => TreeError::OverlappingLabels,
            other => other,
        })?;
        Ok(t.canonical_form())
    }

    /// Renames every label through `f`, which must be injective on the label
    /// set; the result is canonical.
    pub fn relabel<M: Ord + Clone>(&self, f: impl Fn(&L) -> M) -> Result<StableTree<M>, TreeError> {
        let leaf_map = self.labels.iter().zip(&self.leaves).map(|(l, &v)| (f(l), v));
        Ok(StableTree::from_leaf_map(self.vertex_count, self.edges.clone(), leaf_map)?.canonical_form())
    }
}

/// All trees in `T((S))` graded by edge count: entry `i` lists `T_i((S))` in
/// canonical form and sorted order.
pub fn enumerate_by_grade<L: Ord + Clone>(labels: &LabelSet<L>) -> Vec<Vec<StableTree<L>>> {
    enumerate_filtered(labels, labels.max_grade(), |_, _, _| true)
}

/// Iterated splitting from the one-vertex tree up to `max_grade` edges,
/// keeping only the splits accepted by `accept(tree, vertex, part)`.
pub fn enumerate_filtered<L: Ord + Clone>(
    labels: &LabelSet<L>,
    max_grade: usize,
    accept: impl Fn(&StableTree<L>, usize, &[Flag]) -> bool,
) -> Vec<Vec<StableTree<L>>> {
    let max_grade = max_grade.min(labels.max_grade());
    let mut grades = vec![vec![StableTree::corolla(labels.clone())]];
    for _ in 0..max_grade {
        let mut next = BTreeSet::new();
        for t in grades.last().expect("non-empty") {
            for v in 0..t.vertex_count() {
                for part in t.admissible_splits(v) {
                    if accept(t, v, &part) {
                        next.insert(t.split(v, &part).expect("admissible split"));
                    }
                }
            }
        }
        grades.push(next.into_iter().collect());
    }
    grades
}

/// `T((S))`, or only `T_i((S))` when `grade = Some(i)`.
pub fn enumerate_stable_trees<L: Ord + Clone>(labels: &LabelSet<L>, grade: Option<usize>) -> Vec<StableTree<L>> {
    match grade {
        Some(g) if g > labels.max_grade() => Vec::new(),
        Some(g) => enumerate_filtered(labels, g, |_, _, _| true).swap_remove(g),
        None => enumerate_by_grade(labels).into_iter().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32) -> LabelSet<u32> {
        LabelSet::range(n).unwrap()
    }

    fn two_vertex(a: &[u32], b: &[u32]) -> StableTree<u32> {
        StableTree::from_leaf_map(
            2,
            vec![(0, 1)],
            a.iter().map(|&l| (l, 0)).chain(b.iter().map(|&l| (l, 1))),
        )
        .unwrap()
    }

    #[test]
    fn label_set_rules() {
        assert_eq!(LabelSet::new([1, 2]), Err(TreeError::TooFewLabels(2)));
        assert_eq!(LabelSet::new([1, 2, 2]), Err(TreeError::DuplicateLabel));
        let s = LabelSet::new([3, 1, 2]).unwrap();
        assert_eq!(s.as_slice(), &[1, 2, 3]);
    }

    #[test]
    fn corolla_is_canonical() {
        let t = StableTree::corolla(set(3));
        assert_eq!(t.canonical_form(), t);
        assert_eq!(t.codim(), 0);
        assert_eq!(enumerate_stable_trees(&set(3), None), vec![t]);
    }

    #[test]
    fn vertex_swap_gives_same_canonical_form() {
        let a = two_vertex(&[1, 2], &[3, 4]);
        let b = two_vertex(&[3, 4], &[1, 2]);
        assert_ne!(a, b);
        assert_eq!(a.canonical_form(), b.canonical_form());
        let c = two_vertex(&[1, 3], &[2, 4]);
        assert_ne!(a.canonical_form(), c.canonical_form());
    }

    #[test]
    fn rejects_malformed_input() {
        let labels = set(4);
        // vertex 1 has a single leaf plus the edge
        let unstable = StableTree::from_parts(labels.clone(), 2, vec![(0, 1)], vec![0, 0, 0, 1]);
        assert_eq!(unstable, Err(TreeError::Unstable { vertex: 1, flags: 2 }));
        let disconnected = StableTree::from_parts(labels.clone(), 3, vec![(0, 1), (0, 1)], vec![0, 0, 1, 2]);
        assert!(matches!(disconnected, Err(TreeError::NotATree { .. })));
        let looped = StableTree::from_parts(labels, 2, vec![(1, 1)], vec![0, 0, 1, 1]);
        assert_eq!(looped, Err(TreeError::SelfLoop(0)));
    }

    #[test]
    fn split_of_four_point_corolla() {
        let t = StableTree::corolla(set(4));
        let s = t.split(0, &[Flag::Leaf(0), Flag::Leaf(1)]).unwrap();
        assert_eq!(s, two_vertex(&[1, 2], &[3, 4]).canonical_form());
        assert_eq!(s.codim(), 1);
        assert_eq!(s.splits().into_iter().collect::<Vec<_>>(), vec![vec![2, 3]]);
    }

    #[test]
    fn three_point_corolla_cannot_split() {
        let t = StableTree::corolla(set(3));
        for part in [
            vec![Flag::Leaf(0)],
            vec![Flag::Leaf(0), Flag::Leaf(1)],
            vec![Flag::Leaf(0), Flag::Leaf(1), Flag::Leaf(2)],
        ] {
            assert!(matches!(t.split(0, &part), Err(TreeError::UnstableSplit { .. })));
        }
        assert!(t.admissible_splits(0).is_empty());
    }

    #[test]
    fn corolla_on_five_has_ten_splits() {
        let t = StableTree::corolla(set(5));
        assert_eq!(t.admissible_splits(0).len(), 10);
        assert_eq!(t.one_step_splits().len(), 10);
    }

    #[test]
    fn contract_two_vertex_tree() {
        let t = two_vertex(&[1, 2], &[3, 4]);
        assert_eq!(t.contract(0).unwrap(), StableTree::corolla(set(4)));
        assert_eq!(t.contract(1), Err(TreeError::NoSuchEdge(1)));
    }

    #[test]
    fn contraction_is_confluent_on_five_leaves() {
        let corolla = StableTree::corolla(set(5));
        for t in enumerate_stable_trees(&set(5), Some(2)) {
            let ab = t.contract(0).unwrap().contract(0).unwrap();
            let ba = t.contract(1).unwrap().contract(0).unwrap();
            assert_eq!(ab, corolla);
            assert_eq!(ba, corolla);
        }
    }

    #[test]
    fn graft_of_two_corollas() {
        let host = StableTree::corolla(LabelSet::new(["0", "1", "2"]).unwrap());
        let guest = StableTree::corolla(LabelSet::new(["0'", "a", "b"]).unwrap());
        let g = host.graft(&"2", &guest, &"0'").unwrap();
        let expected = StableTree::from_leaf_map(2, vec![(0, 1)], [("0", 0), ("1", 0), ("a", 1), ("b", 1)]).unwrap();
        assert_eq!(g, expected.canonical_form());
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn graft_errors() {
        let host = StableTree::corolla(set(3));
        let guest = StableTree::corolla(LabelSet::new([0, 2, 9]).unwrap());
        assert_eq!(host.graft(&3, &guest, &0), Err(TreeError::OverlappingLabels));
        assert_eq!(host.graft(&7, &guest, &0), Err(TreeError::UnknownLabel));
        assert_eq!(host.graft(&3, &guest, &5), Err(TreeError::UnknownLabel));
    }

    #[test]
    fn graft_with_three_point_corolla_keeps_arity() {
        let host = StableTree::corolla(set(5));
        let unit = StableTree::corolla(LabelSet::new([0, 100, 101]).unwrap());
        let g = host.graft(&5, &unit, &0).unwrap();
        assert_eq!(g.labels().len(), 5 - 1 + 2);
        let g2 = unit.graft(&100, &host, &1).unwrap();
        assert_eq!(g2.labels().len(), 3 - 1 + 4);
    }

    #[test]
    fn graft_edge_count_adds() {
        let host = enumerate_stable_trees(&set(6), Some(2)).remove(0);
        let guest = enumerate_stable_trees(&LabelSet::new(10..14).unwrap(), Some(1)).remove(0);
        let g = host.graft(&6, &guest, &10).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.labels().len(), 8);
    }
}
