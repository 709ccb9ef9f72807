//! Keel's presentation of the cohomology ring of `\bar M_{0,S}`.
//!
//! Generators are the boundary divisors `D_T`, one for each bipartition
//! `S = T ⊔ T^c` with both blocks of size at least two (`D_T = D_{T^c}`).
//! The ideal of relations is generated by
//!
//! * the four-point relations: for distinct `i, j, k, l`,
//!   `Σ_{ij|kl} D_T = Σ_{ik|jl} D_T`;
//! * the vanishing products `D_T D_U = 0` for crossing bipartitions, i.e.
//!   when none of `T ∩ U`, `T ∩ U^c`, `T^c ∩ U`, `T^c ∩ U^c` is empty.
//!
//! Graded pieces are computed by exact sparse row reduction over the
//! rationals. Monomials containing a crossing pair are zero outright, so a
//! degree-`d` piece is spanned by the non-crossing monomials modulo the
//! four-point relations multiplied by non-crossing monomials of degree `d - 1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::linalg::{SparseEchelon, SparseRow};
use crate::rational::Rational;
use crate::trees::LabelSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeelError {
    #[error("boundary divisors need at least 4 labels, got {0}")]
    TooFewLabels(usize),
    #[error("at most 63 labels are supported, got {0}")]
    TooManyLabels(usize),
    #[error("degree {degree} is outside 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("divisor classes live over different label sets")]
    AmbientMismatch,
    #[error("a block of size {0} does not define a boundary divisor")]
    UnstableBlock(usize),
    #[error("the four labels of a relation must be distinct")]
    NotDistinct,
    #[error("label is not in the label set")]
    UnknownLabel,
    #[error("element is not homogeneous")]
    NotHomogeneous,
}

/// A boundary divisor `D_T`, stored by the block of the bipartition that
/// avoids the smallest label. Blocks are bit masks over label indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    ambient: usize,
    mask: u64,
}

impl DivisorClass {
    /// The class of the bipartition with one block `side` (label indices).
    pub fn new(ambient: usize, side: impl IntoIterator<Item = usize>) -> Result<Self, KeelError> {
        if ambient > 63 {
            return Err(KeelError::TooManyLabels(ambient));
        }
        let mut mask = 0u64;
        for i in side {
            if i >= ambient {
                return Err(KeelError::UnknownLabel);
            }
            mask |= 1 << i;
        }
        Self::from_mask(ambient, mask)
    }

    fn from_mask(ambient: usize, mask: u64) -> Result<Self, KeelError> {
        let full = full_mask(ambient);
        let mask = if mask & 1 == 1 { full & !mask } else { mask };
        let k = mask.count_ones() as usize;
        if k < 2 {
            return Err(KeelError::UnstableBlock(k));
        }
        if ambient - k < 2 {
            return Err(KeelError::UnstableBlock(ambient - k));
        }
        Ok(Self { ambient, mask })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Label indices of the normalized block (never contains index 0).
    pub fn rep(&self) -> Vec<usize> {
        (0..self.ambient).filter(|&i| self.mask >> i & 1 == 1).collect()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient).filter(|&i| self.mask >> i & 1 == 0).collect()
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Whether labels `a` and `b` lie in the same block.
    pub fn same_side(&self, a: usize, b: usize) -> bool {
        (self.mask >> a & 1) == (self.mask >> b & 1)
    }
}

impl PartialOrd for DivisorClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DivisorClass {
    /// By block size, then lexicographically on the sorted block.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.mask.count_ones().cmp(&other.mask.count_ones()))
            .then_with(|| self.rep().cmp(&other.rep()))
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `D_a D_b = 0`: the two bipartitions cross.
pub fn is_crossing(a: &DivisorClass, b: &DivisorClass) -> Result<bool, KeelError> {
    if a.ambient != b.ambient {
        return Err(KeelError::AmbientMismatch);
    }
    let full = full_mask(a.ambient);
    let (s, t) = (a.mask, b.mask);
    Ok(s & t != 0 && s & !t & full != 0 && !s & t & full != 0 && !s & !t & full != 0)
}

/// The vanishing condition read literally for one choice of blocks:
/// `S ∩ T ∉ {∅, S, T}` and `S ∪ T ≠` everything.
pub fn literal_vanishing_condition(ambient: usize, s: u64, t: u64) -> bool {
    let i = s & t;
    i != 0 && i != s && i != t && (s | t) != full_mask(ambient)
}

/// All boundary divisor classes over `labels`, sorted.
pub fn divisor_classes<L>(labels: &LabelSet<L>) -> Result<Vec<DivisorClass>, KeelError> {
    let n = labels.len();
    if n < 4 {
        return Err(KeelError::TooFewLabels(n));
    }
    if n > 63 {
        return Err(KeelError::TooManyLabels(n));
    }
    let mut out: Vec<DivisorClass> = (0..1u64 << (n - 1))
        .map(|m| m << 1)
        .filter_map(|mask| DivisorClass::from_mask(n, mask).ok())
        .collect();
    out.sort();
    Ok(out)
}

/// A sorted product of divisor classes; the empty monomial is `1`.
pub type Monomial = Vec<DivisorClass>;

/// A homogeneous element of the polynomial ring on the divisor classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeelElement {
    degree: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl KeelElement {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_terms(0, [(Vec::new(), Rational::one())]).expect("constant is homogeneous")
    }

    pub fn generator(d: DivisorClass) -> Self {
        Self::from_terms(1, [(vec![d], Rational::one())]).expect("degree one")
    }

    /// Sums the given terms; monomials are sorted and zero coefficients
    /// dropped.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self, KeelError> {
        let mut x = Self::zero(degree);
        for (mut m, c) in terms {
            if m.len() != degree {
                return Err(KeelError::NotHomogeneous);
            }
            m.sort();
            x.add_term(m, c);
        }
        Ok(x)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            let m = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(m) = m {
                self.terms.remove(&m);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, KeelError> {
        if self.degree != other.degree {
            return Err(KeelError::NotHomogeneous);
        }
        let mut x = self.clone();
        for (m, c) in &other.terms {
            x.add_term(m.clone(), c.clone());
        }
        Ok(x)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut x = Self::zero(self.degree);
        if !c.is_zero() {
            x.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        }
        x
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut x = Self::zero(self.degree + other.degree);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                m.sort();
                x.add_term(m, c * d);
            }
        }
        x
    }
}

/// The generators of the relation ideal.
#[derive(Debug, Clone)]
pub struct RelationSet {
    pub linear_relations: Vec<KeelElement>,
    pub vanishing_pairs: Vec<(DivisorClass, DivisorClass)>,
}

/// The ring `Q[D_T] / I` for one label set.
#[derive(Debug, Clone)]
pub struct KeelRing<L> {
    labels: LabelSet<L>,
    classes: Vec<DivisorClass>,
    index: BTreeMap<DivisorClass, usize>,
    compatible: Vec<Vec<bool>>,
}

/// One graded piece of the quotient: its spanning monomials and the echelon
/// form of the relations among them.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    degree: usize,
    monomials: Vec<Vec<usize>>,
    echelon: SparseEchelon,
}

impl GradedPiece {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len() - self.echelon.rank()
    }

    /// Number of non-crossing monomials of this degree.
    pub fn spanning_monomials(&self) -> usize {
        self.monomials.len()
    }
}

impl<L: Ord + Clone> KeelRing<L> {
    pub fn new(labels: &LabelSet<L>) -> Result<Self, KeelError> {
        let classes = divisor_classes(labels)?;
        let index = classes.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let compatible = classes
            .iter()
            .map(|a| {
                classes
                    .iter()
                    .map(|b| !is_crossing(a, b).expect("same ambient"))
                    .collect()
            })
            .collect();
        Ok(Self {
            labels: labels.clone(),
            classes,
            index,
            compatible,
        })
    }

    pub fn labels(&self) -> &LabelSet<L> {
        &self.labels
    }

    pub fn classes(&self) -> &[DivisorClass] {
        &self.classes
    }

    /// Labels of the normalized block of a class.
    pub fn class_labels(&self, c: &DivisorClass) -> Vec<L> {
        c.rep().into_iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Top degree, `|S| - 3`.
    pub fn top_degree(&self) -> usize {
        self.labels.len() - 3
    }

    fn check_degree(&self, degree: usize) -> Result<(), KeelError> {
        if degree > self.top_degree() {
            return Err(KeelError::DegreeOutOfRange {
                degree,
                max: self.top_degree(),
            });
        }
        Ok(())
    }

    /// Sum of the classes with `i, j` in one block and `k, l` in the other
    /// (label indices).
    fn pairing_sum(&self, i: usize, j: usize, k: usize, l: usize) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.same_side(i, j) && c.same_side(k, l) && !c.same_side(i, k))
            .map(|(n, _)| n)
            .collect()
    }

    fn relation_by_index(&self, i: usize, j: usize, k: usize, l: usize) -> Vec<(usize, Rational)> {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        for c in self.pairing_sum(i, j, k, l) {
            *row.entry(c).or_insert_with(Rational::zero) += Rational::one();
        }
        for c in self.pairing_sum(i, k, j, l) {
            *row.entry(c).or_insert_with(Rational::zero) -= Rational::one();
        }
        row.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// `Σ_{ij|kl} D_T - Σ_{ik|jl} D_T`.
    pub fn four_point_relation(&self, i: &L, j: &L, k: &L, l: &L) -> Result<KeelElement, KeelError> {
        let idx = |x: &L| self.labels.index_of(x).ok_or(KeelError::UnknownLabel);
        let (i, j, k, l) = (idx(i)?, idx(j)?, idx(k)?, idx(l)?);
        let mut s = [i, j, k, l];
        s.sort();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(KeelError::NotDistinct);
        }
        let terms = self
            .relation_by_index(i, j, k, l)
            .into_iter()
            .map(|(c, v)| (vec![self.classes[c]], v));
        KeelElement::from_terms(1, terms)
    }

    /// Two independent four-point relations per 4-element subset; the third
    /// pairing is their difference.
    fn linear_relation_rows(&self) -> Vec<Vec<(usize, Rational)>> {
        let n = self.labels.len();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        rows.push(self.relation_by_index(i, j, k, l));
                        rows.push(self.relation_by_index(i, j, l, k));
                    }
                }
            }
        }
        rows
    }

    pub fn relation_set(&self) -> RelationSet {
        let linear_relations = self
            .linear_relation_rows()
            .into_iter()
            .map(|row| {
                KeelElement::from_terms(1, row.into_iter().map(|(c, v)| (vec![self.classes[c]], v)))
                    .expect("degree one")
            })
            .collect();
        let mut vanishing_pairs = Vec::new();
        for a in 0..self.classes.len() {
            for b in a + 1..self.classes.len() {
                if !self.compatible[a][b] {
                    vanishing_pairs.push((self.classes[a], self.classes[b]));
                }
            }
        }
        RelationSet {
            linear_relations,
            vanishing_pairs,
        }
    }

    fn is_non_crossing(&self, m: &[usize]) -> bool {
        m.iter()
            .enumerate()
            .all(|(x, &a)| m[x + 1..].iter().all(|&b| self.compatible[a][b]))
    }

    /// Sorted multisets of class indices of size `degree` with no crossing
    /// pair, in lexicographic order.
    fn non_crossing_monomials(&self, degree: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(degree);
        self.extend_monomials(degree, 0, &mut current, &mut out);
        out
    }

    fn extend_monomials(&self, degree: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == degree {
            out.push(current.clone());
            return;
        }
        for c in start..self.classes.len() {
            if current.iter().all(|&a| self.compatible[a][c]) {
                current.push(c);
                self.extend_monomials(degree, c, current, out);
                current.pop();
            }
        }
    }

    pub fn graded_piece(&self, degree: usize) -> Result<GradedPiece, KeelError> {
        self.check_degree(degree)?;
        let monomials = self.non_crossing_monomials(degree);
        let mut echelon = SparseEchelon::new();
        if degree > 0 {
            let column: BTreeMap<&[usize], usize> =
                monomials.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
            let multipliers = self.non_crossing_monomials(degree - 1);
            let relations = self.linear_relation_rows();
            let mut scratch = Vec::with_capacity(degree);
            for mult in &multipliers {
                for rel in &relations {
                    let mut row = SparseRow::new();
                    for (c, v) in rel {
                        if mult.iter().all(|&a| self.compatible[a][*c]) {
                            scratch.clear();
                            scratch.extend_from_slice(mult);
                            scratch.push(*c);
                            scratch.sort_unstable();
                            let col = column[scratch.as_slice()];
                            let e = row.entry(col).or_insert_with(Rational::zero);
                            *e += v;
                        }
                    }
                    echelon.insert(row);
                    if echelon.rank() == monomials.len() {
                        break;
                    }
                }
            }
        }
        Ok(GradedPiece {
            degree,
            monomials,
            echelon,
        })
    }

    /// Dimension of the degree-`degree` piece of the quotient ring.
    pub fn graded_dimension(&self, degree: usize) -> Result<usize, KeelError> {
        Ok(self.graded_piece(degree)?.dimension())
    }

    /// Dimensions of all graded pieces, degree `0..=|S| - 3`.
    pub fn graded_dimensions(&self) -> Vec<usize> {
        (0..=self.top_degree())
            .map(|d| self.graded_dimension(d).expect("degree in range"))
            .collect()
    }

    /// Image of `x` in the quotient, written in the basis of monomials that
    /// are not pivots of the relation echelon form.
    pub fn normal_form(&self, x: &KeelElement) -> Result<KeelElement, KeelError> {
        let piece = self.graded_piece(x.degree)?;
        self.normal_form_in(&piece, x)
    }

    pub fn normal_form_in(&self, piece: &GradedPiece, x: &KeelElement) -> Result<KeelElement, KeelError> {
        if x.degree != piece.degree {
            return Err(KeelError::NotHomogeneous);
        }
        let column: BTreeMap<&[usize], usize> = piece
            .monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.as_slice(), i))
            .collect();
        let mut row = SparseRow::new();
        for (m, v) in &x.terms {
            let idx: Option<Vec<usize>> = m.iter().map(|c| self.index.get(c).copied()).collect();
            let mut idx = idx.ok_or(KeelError::AmbientMismatch)?;
            idx.sort_unstable();
            if !self.is_non_crossing(&idx) {
                continue;
            }
            let e = row.entry(column[idx.as_slice()]).or_insert_with(Rational::zero);
            *e += v;
        }
        let reduced = piece.echelon.reduce(&row);
        KeelElement::from_terms(
            x.degree,
            reduced.into_iter().map(|(col, v)| {
                let m = piece.monomials[col].iter().map(|&c| self.classes[c]).collect();
                (m, v)
            }),
        )
    }

    /// Basis monomials of the quotient in degree `degree`.
    pub fn basis(&self, degree: usize) -> Result<Vec<Monomial>, KeelError> {
        let piece = self.graded_piece(degree)?;
        Ok(piece
            .monomials
            .iter()
            .enumerate()
            .filter(|(i, _)| !piece.echelon.is_pivot(*i))
            .map(|(_, m)| m.iter().map(|&c| self.classes[c]).collect())
            .collect())
    }
}
