//! Boundary stratification of the compactified moduli space by stable trees,
//! and Betti numbers extracted from point counts over the strata.
//!
//! The open stratum of a tree `τ` is a product of open moduli spaces, one per
//! vertex, and the open moduli space with `m` points has
//! `(q - 2)(q - 3)...(q - (m - 2))` points over a field with `q` elements.
//! Summing the products over all trees gives the point count of the
//! compactification. That space is smooth, projective, and has only even
//! cohomology of Tate type, so the coefficient of `q^k` is `b_{2k}`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::poly::IntPoly;
use crate::trees::{enumerate_by_grade, LabelSet, StableTree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrataError {
    #[error("the moduli space needs at least 3 marked points, got {0}")]
    TooFewPoints(usize),
}

/// The locally closed stratum `D(τ)` indexed by a canonical stable tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stratum<L> {
    tree: StableTree<L>,
}

impl<L: Ord + Clone> Stratum<L> {
    pub fn new(tree: &StableTree<L>) -> Self {
        Self {
            tree: tree.canonical_form(),
        }
    }

    pub fn tree(&self) -> &StableTree<L> {
        &self.tree
    }

    /// Number of internal edges.
    pub fn codim(&self) -> usize {
        self.tree.codim()
    }

    pub fn dim(&self) -> usize {
        self.tree.dim()
    }

    /// Point count of the open stratum: the product of the open-moduli
    /// counts of its vertices.
    pub fn count_poly(&self) -> IntPoly {
        stratum_count_poly(&self.tree)
    }
}

/// The strata of one compactified moduli space with their cover relations.
#[derive(Debug, Clone)]
pub struct StrataPoset<L> {
    labels: LabelSet<L>,
    strata: Vec<Stratum<L>>,
    /// `grade_start[i]..grade_start[i + 1]` are the strata of codimension `i`.
    grade_start: Vec<usize>,
    /// `(σ, τ)` with `τ` obtained from `σ` by one split.
    covers: Vec<(usize, usize)>,
}

impl<L: Ord + Clone> StrataPoset<L> {
    pub fn build(labels: &LabelSet<L>) -> Self {
        let grades = enumerate_by_grade(labels);
        let mut grade_start = vec![0];
        for g in &grades {
            grade_start.push(grade_start.last().unwrap() + g.len());
        }
        let mut covers = Vec::new();
        for (i, grade) in grades.iter().enumerate().take(grades.len() - 1) {
            let above = &grades[i + 1];
            for (j, t) in grade.iter().enumerate() {
                for s in t.one_step_splits() {
                    let k = above.binary_search(&s).expect("split lands in the next grade");
                    covers.push((grade_start[i] + j, grade_start[i + 1] + k));
                }
            }
        }
        let strata = grades.into_iter().flatten().map(|tree| Stratum { tree }).collect();
        Self {
            labels: labels.clone(),
            strata,
            grade_start,
            covers,
        }
    }

    pub fn labels(&self) -> &LabelSet<L> {
        &self.labels
    }

    pub fn strata(&self) -> &[Stratum<L>] {
        &self.strata
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// Strata of codimension `codim`.
    pub fn grade(&self, codim: usize) -> &[Stratum<L>] {
        match (self.grade_start.get(codim), self.grade_start.get(codim + 1)) {
            (Some(&a), Some(&b)) => &self.strata[a..b],
            _ => &[],
        }
    }

    pub fn counts_by_codim(&self) -> Vec<usize> {
        self.grade_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Index of the stratum of `tree`, if `tree` has the right labels.
    pub fn index_of(&self, tree: &StableTree<L>) -> Option<usize> {
        let t = tree.canonical_form();
        let g = t.codim();
        let (&a, &b) = (self.grade_start.get(g)?, self.grade_start.get(g + 1)?);
        self.strata[a..b]
            .binary_search_by(|s| s.tree.cmp(&t))
            .ok()
            .map(|k| a + k)
    }

    /// Indices of the strata in the closure of stratum `i`, including `i`.
    pub fn closure(&self, i: usize) -> BTreeSet<usize> {
        let mut up = vec![Vec::new(); self.strata.len()];
        for &(s, t) in &self.covers {
            up[s].push(t);
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![i];
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                stack.extend(up[s].iter().copied());
            }
        }
        seen
    }

    /// Every cover `(σ, τ)` raises codimension by one and some edge
    /// contraction of `τ` gives back `σ`.
    pub fn covers_are_consistent(&self) -> bool {
        self.covers.iter().all(|&(s, t)| {
            let (small, big) = (&self.strata[s].tree, &self.strata[t].tree);
            big.codim() == small.codim() + 1 && (0..big.edge_count()).any(|e| big.contract(e).as_ref() == Ok(small))
        })
    }

    pub fn count_poly(&self) -> IntPoly {
        self.strata
            .iter()
            .fold(IntPoly::zero(), |acc, s| &acc + &s.count_poly())
    }
}

/// The stratification poset of `\bar M_{0,S}`.
pub fn strata_poset<L: Ord + Clone>(labels: &LabelSet<L>) -> StrataPoset<L> {
    StrataPoset::build(labels)
}

/// The zero-dimensional strata; their trees are exactly the trivalent ones.
pub fn maximal_degenerations<L: Ord + Clone>(labels: &LabelSet<L>) -> Vec<Stratum<L>> {
    let g = labels.max_grade();
    crate::trees::enumerate_stable_trees(labels, Some(g))
        .into_iter()
        .map(|tree| Stratum { tree })
        .collect()
}

/// Point count of the open moduli space with `m` marked points:
/// `prod_{j=2}^{m-2} (q - j)`.
pub fn open_stratum_count_poly(m: usize) -> Result<IntPoly, StrataError> {
    if m < 3 {
        return Err(StrataError::TooFewPoints(m));
    }
    Ok((2..=m as i64 - 2).fold(IntPoly::one(), |acc, j| &acc * &IntPoly::linear_root(j)))
}

pub fn stratum_count_poly<L: Ord + Clone>(tree: &StableTree<L>) -> IntPoly {
    tree.vertex_valences().into_iter().fold(IntPoly::one(), |acc, k| {
        &acc * &open_stratum_count_poly(k).expect("stable vertices have valence >= 3")
    })
}

/// Point count of the compactified space, summed over all strata.
pub fn compactified_count_poly<L: Ord + Clone>(labels: &LabelSet<L>) -> IntPoly {
    enumerate_by_grade(labels)
        .iter()
        .flatten()
        .fold(IntPoly::zero(), |acc, t| &acc + &stratum_count_poly(t))
}

/// Betti numbers of a space with no odd cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiNumbers {
    even: Vec<u64>,
}

impl BettiNumbers {
    pub fn from_even(even: Vec<u64>) -> Self {
        Self { even }
    }

    /// `b_0, b_2, b_4, ...`
    pub fn even(&self) -> &[u64] {
        &self.even
    }

    /// `b_k`; zero for odd `k` and beyond the top degree.
    pub fn b(&self, k: usize) -> u64 {
        if k % 2 == 1 {
            0
        } else {
            self.even.get(k / 2).copied().unwrap_or(0)
        }
    }

    /// `b_0, b_1, ..., b_top`.
    pub fn all(&self) -> Vec<u64> {
        (0..2 * self.even.len().max(1) - 1).map(|k| self.b(k)).collect()
    }

    pub fn euler_characteristic(&self) -> u64 {
        self.even.iter().sum()
    }
}

pub fn betti_numbers<L: Ord + Clone>(labels: &LabelSet<L>) -> BettiNumbers {
    let p = compactified_count_poly(labels);
    BettiNumbers::from_even(
        p.coeffs()
            .iter()
            .map(|&c| u64::try_from(c).expect("point counts of strata are non-negative"))
            .collect(),
    )
}
