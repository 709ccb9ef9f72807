//! The involution `ρ: x -> 1 - x` and the paired configuration spaces built
//! from it.
//!
//! A paired configuration with `p` pairs marks the points
//! `z_1..z_p, ρz_1..ρz_p, 0, 1, ∞`. `ρ` swaps `0` and `1`, fixes `∞`, and has
//! the single finite fixed point `1/2`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arrangements::Flat;
use crate::linalg::rank;
use crate::rational::{half, q, Rational};
use crate::trees::{enumerate_filtered, LabelSet, StableTree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvolutionError {
    #[error("label set is not a paired label set")]
    NotPaired,
    #[error("{0} is not a z-label of the host")]
    BadSlot(PairedLabel),
    #[error("configuration has no collision")]
    NotInFatDiagonal,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("coordinate {0} must be finite")]
    NotFinite(usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A point of the rational projective line.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjectivePoint {
    Finite(Rational),
    Infinity,
}

impl ProjectivePoint {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Self::Finite(x) => Some(x),
            Self::Infinity => None,
        }
    }

    pub fn rho(&self) -> Self {
        match self {
            Self::Finite(x) => Self::Finite(Rational::one() - x),
            Self::Infinity => Self::Infinity,
        }
    }

    pub fn is_fixed(&self) -> bool {
        self.finite() == Some(&half())
    }
}

impl From<Rational> for ProjectivePoint {
    fn from(x: Rational) -> Self {
        Self::Finite(x)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(x) => write!(f, "{x}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

pub fn rho_point(x: &ProjectivePoint) -> ProjectivePoint {
    x.rho()
}

/// Result of `(x_1..x_p) -> (x_1..x_p, 1 - x_1..1 - x_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Doubling {
    pub values: Vec<Rational>,
    /// Some `x_i + x_j = 1`, `i = j` allowed: the tuple meets its own
    /// `ρ`-image, which includes landing on `1/2`.
    pub degenerate: bool,
    /// Some `x_i = x_j` with `i != j`.
    pub collision: bool,
}

pub fn doubling_map(c: &[Rational]) -> Doubling {
    let mut values = c.to_vec();
    values.extend(c.iter().map(|x| Rational::one() - x));
    let one = Rational::one();
    let degenerate = (0..c.len()).any(|i| (i..c.len()).any(|j| &c[i] + &c[j] == one));
    let collision = (0..c.len()).any(|i| (i + 1..c.len()).any(|j| c[i] == c[j]));
    Doubling {
        values,
        degenerate,
        collision,
    }
}

/// Labels of a paired configuration. The derived order puts `z_1` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairedLabel {
    Z(u32),
    RhoZ(u32),
    Zero,
    One,
    Infinity,
}

impl PairedLabel {
    pub fn involute(self) -> Self {
        match self {
            Self::Z(i) => Self::RhoZ(i),
            Self::RhoZ(i) => Self::Z(i),
            Self::Zero => Self::One,
            Self::One => Self::Zero,
            Self::Infinity => Self::Infinity,
        }
    }

    pub fn is_frame(self) -> bool {
        matches!(self, Self::Zero | Self::One | Self::Infinity)
    }
}

impl fmt::Display for PairedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Z(i) => write!(f, "z{i}"),
            Self::RhoZ(i) => write!(f, "rz{i}"),
            Self::Zero => f.write_str("0"),
            Self::One => f.write_str("1"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse paired label {0:?}")]
pub struct ParseLabelError(pub String);

impl FromStr for PairedLabel {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseLabelError(s.to_string());
        let index = |t: &str| t.parse::<u32>().ok().filter(|&i| i > 0).ok_or_else(err);
        match s {
            "0" => Ok(Self::Zero),
            "1" => Ok(Self::One),
            "inf" => Ok(Self::Infinity),
            _ if s.starts_with("rz") => Ok(Self::RhoZ(index(&s[2..])?)),
            _ if s.starts_with('z') => Ok(Self::Z(index(&s[1..])?)),
            _ => Err(err()),
        }
    }
}

/// `z_1..z_p, ρz_1..ρz_p, 0, 1, ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedLabelSet {
    pairs: u32,
    labels: LabelSet<PairedLabel>,
}

impl PairedLabelSet {
    pub fn new(pairs: u32) -> Self {
        let labels = (1..=pairs)
            .map(PairedLabel::Z)
            .chain((1..=pairs).map(PairedLabel::RhoZ))
            .chain([PairedLabel::Zero, PairedLabel::One, PairedLabel::Infinity]);
        Self {
            pairs,
            labels: LabelSet::new(labels).expect("distinct labels"),
        }
    }

    /// Recognizes a label set of the form produced by [`PairedLabelSet::new`].
    pub fn from_labels(labels: &LabelSet<PairedLabel>) -> Result<Self, InvolutionError> {
        let n = labels.len();
        if n.is_multiple_of(2) {
            return Err(InvolutionError::NotPaired);
        }
        let s = Self::new(((n - 3) / 2) as u32);
        if &s.labels == labels {
            Ok(s)
        } else {
            Err(InvolutionError::NotPaired)
        }
    }

    pub fn pairs(&self) -> u32 {
        self.pairs
    }

    pub fn labels(&self) -> &LabelSet<PairedLabel> {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn z_labels(&self) -> impl Iterator<Item = PairedLabel> {
        (1..=self.pairs).map(PairedLabel::Z)
    }
}

/// A permutation of the labels of a [`PairedLabelSet`], by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionOnLabels {
    labels: PairedLabelSet,
    perm: Vec<usize>,
}

impl InvolutionOnLabels {
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn image(&self, l: &PairedLabel) -> Option<PairedLabel> {
        let i = self.labels.labels.index_of(l)?;
        Some(self.labels.labels[self.perm[i]])
    }

    pub fn compose(&self, other: &Self) -> Vec<usize> {
        other.perm.iter().map(|&i| self.perm[i]).collect()
    }

    pub fn is_identity_squared(&self) -> bool {
        self.compose(self).iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> Vec<PairedLabel> {
        (0..self.perm.len())
            .filter(|&i| self.perm[i] == i)
            .map(|i| self.labels.labels[i])
            .collect()
    }

    /// The 2-cycles, each listed once with the smaller label first.
    pub fn transpositions(&self) -> Vec<(PairedLabel, PairedLabel)> {
        (0..self.perm.len())
            .filter(|&i| self.perm[i] > i)
            .map(|i| (self.labels.labels[i], self.labels.labels[self.perm[i]]))
            .collect()
    }
}

pub fn label_involution(labels: &PairedLabelSet) -> InvolutionOnLabels {
    let perm = labels
        .labels
        .iter()
        .map(|l| labels.labels.index_of(&l.involute()).expect("closed under involution"))
        .collect();
    InvolutionOnLabels {
        labels: labels.clone(),
        perm,
    }
}

/// `ρ` applied to the labels of `t`; the result is canonical.
pub fn induced_tree_action(t: &StableTree<PairedLabel>) -> Result<StableTree<PairedLabel>, InvolutionError> {
    PairedLabelSet::from_labels(t.labels())?;
    Ok(t.relabel(|l| l.involute())?)
}

/// `ρ`-orbits of the trees with `grade` edges, each orbit sorted, orbits in
/// order of their first tree.
pub fn tree_orbits(labels: &PairedLabelSet, grade: usize) -> Vec<Vec<StableTree<PairedLabel>>> {
    let trees = crate::trees::enumerate_stable_trees(labels.labels(), Some(grade));
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for t in trees {
        if seen.contains(&t) {
            continue;
        }
        let image = induced_tree_action(&t).expect("paired labels");
        let mut orbit = vec![t.clone()];
        if image != t {
            orbit.push(image.clone());
        }
        orbit.sort();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    orbits
}

/// Coordinates `z_1..z_p` of a paired configuration; the other values are
/// determined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedConfig {
    z: Vec<ProjectivePoint>,
}

impl PairedConfig {
    pub fn new(z: Vec<ProjectivePoint>) -> Self {
        Self { z }
    }

    pub fn finite(z: impl IntoIterator<Item = Rational>) -> Self {
        Self {
            z: z.into_iter().map(ProjectivePoint::Finite).collect(),
        }
    }

    pub fn pairs(&self) -> usize {
        self.z.len()
    }

    pub fn coordinates(&self) -> &[ProjectivePoint] {
        &self.z
    }

    pub fn label_set(&self) -> PairedLabelSet {
        PairedLabelSet::new(self.z.len() as u32)
    }

    /// The value at a label; `None` for a `z`-index out of range.
    pub fn value(&self, l: &PairedLabel) -> Option<ProjectivePoint> {
        let at = |i: u32| self.z.get((i as usize).checked_sub(1)?).cloned();
        match *l {
            PairedLabel::Z(i) => at(i),
            PairedLabel::RhoZ(i) => at(i).map(|x| x.rho()),
            PairedLabel::Zero => Some(ProjectivePoint::Finite(Rational::zero())),
            PairedLabel::One => Some(ProjectivePoint::Finite(Rational::one())),
            PairedLabel::Infinity => Some(ProjectivePoint::Infinity),
        }
    }

    pub fn values(&self) -> Vec<(PairedLabel, ProjectivePoint)> {
        self.label_set()
            .labels()
            .iter()
            .map(|l| (*l, self.value(l).expect("label in range")))
            .collect()
    }

    /// All `2p + 3` values pairwise distinct.
    pub fn is_generic(&self) -> bool {
        let v: BTreeSet<ProjectivePoint> = self.values().into_iter().map(|(_, x)| x).collect();
        v.len() == 2 * self.z.len() + 3
    }

    /// `ρ` applied coordinatewise.
    pub fn rho(&self) -> Self {
        Self {
            z: self.z.iter().map(ProjectivePoint::rho).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FramePoint {
    Zero,
    One,
    Infinity,
}

/// The stratum of the NY base space containing a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NyStratumDescriptor {
    pub codim: usize,
    /// Coordinates grouped by equal value, every block sorted, blocks sorted.
    pub collision_pattern: Vec<Vec<usize>>,
    pub half_incidences: Vec<usize>,
    pub frame_incidences: Vec<(usize, FramePoint)>,
    /// `x_i + x_j = 1` with `x_i != x_j`.
    pub mirror_pairs: Vec<(usize, usize)>,
    /// Name of the matching row of [`NY_TABLE`], if any.
    pub table_row: Option<&'static str>,
}

impl NyStratumDescriptor {
    /// `(size of the distinguished block, whether it sits at 1/2)` for the
    /// configurations the table describes: at most one collision block, no
    /// frame or mirror incidences, and `1/2` used by at most that block.
    pub fn table_pattern(&self) -> Option<(usize, bool)> {
        if !self.frame_incidences.is_empty() || !self.mirror_pairs.is_empty() {
            return None;
        }
        let big: Vec<&Vec<usize>> = self.collision_pattern.iter().filter(|b| b.len() > 1).collect();
        match (big.as_slice(), self.half_incidences.as_slice()) {
            ([], []) => Some((1, false)),
            ([], [_]) => Some((1, true)),
            ([b], []) => Some((b.len(), false)),
            ([b], h) if h == b.as_slice() => Some((b.len(), true)),
            _ => None,
        }
    }
}

/// One row of the table of low-codimension strata. A witness puts `block`
/// equal coordinates at `1/2` or at a generic value and the remaining ones
/// at distinct generic values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NyTableRow {
    pub name: &'static str,
    pub codim: usize,
    pub block: usize,
    pub block_at_half: bool,
}

pub const NY_TABLE: [NyTableRow; 9] = [
    NyTableRow {
        name: "0",
        codim: 0,
        block: 1,
        block_at_half: false,
    },
    NyTableRow {
        name: "1a",
        codim: 1,
        block: 1,
        block_at_half: true,
    },
    NyTableRow {
        name: "1b",
        codim: 1,
        block: 2,
        block_at_half: false,
    },
    NyTableRow {
        name: "2a",
        codim: 2,
        block: 3,
        block_at_half: false,
    },
    NyTableRow {
        name: "2b",
        codim: 2,
        block: 2,
        block_at_half: true,
    },
    NyTableRow {
        name: "3a",
        codim: 3,
        block: 4,
        block_at_half: false,
    },
    NyTableRow {
        name: "3b",
        codim: 3,
        block: 3,
        block_at_half: true,
    },
    NyTableRow {
        name: "4a",
        codim: 4,
        block: 2,
        block_at_half: false,
    },
    NyTableRow {
        name: "4b",
        codim: 4,
        block: 5,
        block_at_half: false,
    },
];

/// Values below `1/2`, pairwise distinct, with no two summing to 1.
fn generic_values() -> [Rational; 6] {
    [q(1, 7), q(1, 5), q(2, 9), q(3, 13), q(4, 17), q(5, 19)]
}

impl NyTableRow {
    pub const WITNESS_PAIRS: usize = 6;

    pub fn witness(&self) -> PairedConfig {
        let g = generic_values();
        let shared = if self.block_at_half { half() } else { g[0].clone() };
        let z = (0..Self::WITNESS_PAIRS).map(|i| if i < self.block { shared.clone() } else { g[i].clone() });
        PairedConfig::finite(z)
    }
}

pub fn classify_ny_config(c: &PairedConfig) -> NyStratumDescriptor {
    let z = c.coordinates();
    let p = z.len();
    let mut collision_pattern: Vec<Vec<usize>> = Vec::new();
    for i in 0..p {
        match collision_pattern.iter_mut().find(|b| z[b[0]] == z[i]) {
            Some(b) => b.push(i),
            None => collision_pattern.push(vec![i]),
        }
    }
    let h = half();
    let one = Rational::one();
    let half_incidences: Vec<usize> = (0..p).filter(|&i| z[i].finite() == Some(&h)).collect();
    let mut frame_incidences = Vec::new();
    for (i, x) in z.iter().enumerate() {
        match x.finite() {
            None => frame_incidences.push((i, FramePoint::Infinity)),
            Some(v) if v.is_zero() => frame_incidences.push((i, FramePoint::Zero)),
            Some(v) if v == &one => frame_incidences.push((i, FramePoint::One)),
            _ => {}
        }
    }
    let mut mirror_pairs = Vec::new();
    // Incidences among finite coordinates are the NY hyperplanes through the
    // point; each coordinate at ∞ adds one more condition.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let unit = |i: usize, s: i64, j: usize| {
        let mut r = vec![Rational::zero(); p];
        r[i] += Rational::one();
        r[j] += Rational::from_integer(s.into());
        r
    };
    for i in 0..p {
        let Some(x) = z[i].finite() else { continue };
        if x.is_zero() || x == &one || x == &h {
            let mut r = vec![Rational::zero(); p];
            r[i] = Rational::one();
            rows.push(r);
        }
        for (j, w) in z.iter().enumerate().skip(i + 1) {
            let Some(y) = w.finite() else { continue };
            if x == y {
                rows.push(unit(i, -1, j));
            }
            if x + y == one {
                rows.push(unit(i, 1, j));
                if x != y {
                    mirror_pairs.push((i, j));
                }
            }
        }
    }
    let at_infinity = z.iter().filter(|x| x.finite().is_none()).count();
    let codim = rank(&rows) + at_infinity;
    let mut d = NyStratumDescriptor {
        codim,
        collision_pattern,
        half_incidences,
        frame_incidences,
        mirror_pairs,
        table_row: None,
    };
    d.table_row = d.table_pattern().and_then(|(block, at_half)| {
        NY_TABLE
            .iter()
            .find(|r| r.block == block && r.block_at_half == at_half && r.codim == codim)
            .map(|r| r.name)
    });
    d
}

/// Depth of a fat-diagonal configuration in the filtration by clusters near
/// `1/2`: the largest number of mutually equal coordinates within `eps` of
/// `1/2`, or `0` when no coordinate is that close.
///
/// The fat diagonal is the collision locus of the doubled tuple, so a
/// coordinate at `1/2` or a mirror pair also counts as a collision.
pub fn epsilon_stratify(c: &PairedConfig, eps: &Rational) -> Result<usize, InvolutionError> {
    if !eps.is_positive() {
        return Err(InvolutionError::NonPositiveEpsilon);
    }
    let mut finite = Vec::with_capacity(c.pairs());
    for (i, x) in c.coordinates().iter().enumerate() {
        finite.push(x.finite().cloned().ok_or(InvolutionError::NotFinite(i))?);
    }
    let d = doubling_map(&finite);
    if !d.degenerate && !d.collision {
        return Err(InvolutionError::NotInFatDiagonal);
    }
    let h = half();
    let near: Vec<&Rational> = finite.iter().filter(|x| (*x - &h).abs() < *eps).collect();
    Ok(near
        .iter()
        .map(|x| near.iter().filter(|y| **y == *x).count())
        .max()
        .unwrap_or(0))
}

/// The flat contains the point `(1/2, ..., 1/2)`, the only fixed point of
/// `ρ` acting on coordinates.
pub fn flat_meets_fixed_locus(f: &Flat) -> bool {
    f.contains_point(&vec![half(); f.ambient_dim()])
}

/// The flat meets its own `ρ`-image.
pub fn flat_meets_rho_image(f: &Flat) -> bool {
    f.meet(&f.rho_image()).is_some()
}

/// The paired label set and boundary tree produced by composing at a slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NyComposition {
    pub labels: PairedLabelSet,
    /// Three vertices: the host, the guest grafted at the slot `z_i` and
    /// its mirror grafted at `ρz_i`. The guest's `y_k` become
    /// `z_{p+k}`, and its `0, 1` become the new pair `z_{p+p'+1}`,
    /// `ρz_{p+p'+1}`.
    pub tree: StableTree<PairedLabel>,
    /// Marked points under the alternative arity rule with `p + p' + 2`
    /// pairs; reported for comparison only.
    pub alternative_label_count: usize,
}

pub fn ny_compose(
    a: &PairedLabelSet,
    slot: &PairedLabel,
    b: &PairedLabelSet,
) -> Result<NyComposition, InvolutionError> {
    let (p, pb) = (a.pairs, b.pairs);
    let i = match *slot {
        PairedLabel::Z(i) if i >= 1 && i <= p => i,
        other => return Err(InvolutionError::BadSlot(other)),
    };
    let host = StableTree::corolla(a.labels.clone());
    let new_pair = p + pb + 1;
    let guest_labels = |side: fn(u32) -> PairedLabel| {
        LabelSet::new(
            [side(i), side(new_pair), PairedLabel::Infinity]
                .into_iter()
                .chain((1..=pb).map(|k| side(p + k))),
        )
    };
    let guest = StableTree::corolla(guest_labels(PairedLabel::Z)?);
    let mirror = StableTree::corolla(guest_labels(PairedLabel::RhoZ)?);
    let tree = host.graft(&PairedLabel::Z(i), &guest, &PairedLabel::Infinity)?.graft(
        &PairedLabel::RhoZ(i),
        &mirror,
        &PairedLabel::Infinity,
    )?;
    let labels = PairedLabelSet::new(new_pair);
    debug_assert_eq!(tree.labels(), labels.labels());
    Ok(NyComposition {
        labels,
        tree,
        alternative_label_count: 2 * (p + pb + 2) as usize + 3,
    })
}

/// `p` pairs composed with `p'` pairs.
pub fn composed_pairs(p: u32, pb: u32) -> u32 {
    p + pb + 1
}

/// Deterministic grid of `n` rationals with mixed signs and denominators.
pub fn rational_grid(n: usize) -> Vec<Rational> {
    (0..n as i64).map(|k| q(k * 7919 % 2003 - 1001, k % 97 + 1)).collect()
}

/// Outcome of the involution laws, each part checked separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonadReport {
    pub points: bool,
    pub labels: bool,
    pub trees: bool,
    pub grades: bool,
}

impl MonadReport {
    pub fn all(&self) -> bool {
        self.points && self.labels && self.trees && self.grades
    }
}

/// `ρ² = id` on a grid of 1000 rationals and on `∞`, on labels for
/// `p <= label_pairs`, and on all trees of grade at most 2 for
/// `p <= tree_pairs` (which must also preserve grade).
pub fn monad_report(label_pairs: u32, tree_pairs: u32) -> MonadReport {
    let points = rational_grid(1000)
        .into_iter()
        .map(ProjectivePoint::Finite)
        .chain([ProjectivePoint::Infinity])
        .all(|x| x.rho().rho() == x);
    let labels = (0..=label_pairs).all(|p| label_involution(&PairedLabelSet::new(p)).is_identity_squared());
    let mut trees = true;
    let mut grades = true;
    for p in 0..=tree_pairs {
        let set = PairedLabelSet::new(p);
        for t in enumerate_filtered(set.labels(), 2, |_, _, _| true).iter().flatten() {
            let once = induced_tree_action(t).expect("paired labels");
            grades &= once.codim() == t.codim();
            trees &= induced_tree_action(&once).expect("paired labels") == t.canonical_form();
        }
    }
    MonadReport {
        points,
        labels,
        trees,
        grades,
    }
}

pub fn monad_law_check() -> bool {
    monad_report(4, 2).all()
}

/// Short text for a label list, e.g. `{z1, rz1, 0, 1, inf}`.
pub fn format_labels(labels: &LabelSet<PairedLabel>) -> String {
    let parts: Vec<String> = labels.iter().map(|l| format!("{l}")).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn fin(x: Rational) -> ProjectivePoint {
        ProjectivePoint::Finite(x)
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_point(&fin(int(0))), fin(int(1)));
        assert_eq!(rho_point(&fin(half())), fin(half()));
        assert_eq!(rho_point(&ProjectivePoint::Infinity), ProjectivePoint::Infinity);
        assert!(fin(half()).is_fixed());
        assert!(!fin(q(1, 3)).is_fixed());
    }

    #[test]
    fn doubling_examples() {
        let d = doubling_map(&[q(3, 10)]);
        assert_eq!(d.values, vec![q(3, 10), q(7, 10)]);
        assert!(!d.degenerate);
        let d = doubling_map(&[half()]);
        assert_eq!(d.values, vec![half(), half()]);
        assert!(d.degenerate);
        let d = doubling_map(&[q(1, 4), q(1, 3)]);
        assert_eq!(d.values, vec![q(1, 4), q(1, 3), q(3, 4), q(2, 3)]);
        assert!(doubling_map(&[q(1, 4), q(3, 4)]).degenerate);
        assert!(doubling_map(&[q(1, 4), q(1, 4)]).collision);
    }

    #[test]
    fn label_sets() {
        let s = PairedLabelSet::new(2);
        assert_eq!(s.len(), 7);
        assert_eq!(s.labels()[0], PairedLabel::Z(1));
        assert_eq!(PairedLabelSet::from_labels(s.labels()).unwrap(), s);
        let odd = LabelSet::new([PairedLabel::Z(1), PairedLabel::Zero, PairedLabel::One]).unwrap();
        assert_eq!(PairedLabelSet::from_labels(&odd), Err(InvolutionError::NotPaired));
        for l in s.labels() {
            assert_eq!(l.to_string().parse::<PairedLabel>().unwrap(), *l);
        }
        assert!("z0".parse::<PairedLabel>().is_err());
        assert!("x".parse::<PairedLabel>().is_err());
    }

    #[test]
    fn label_involution_shapes() {
        let inv = label_involution(&PairedLabelSet::new(1));
        assert_eq!(
            inv.transpositions(),
            vec![
                (PairedLabel::Z(1), PairedLabel::RhoZ(1)),
                (PairedLabel::Zero, PairedLabel::One)
            ]
        );
        assert_eq!(inv.fixed_points(), vec![PairedLabel::Infinity]);
        let inv0 = label_involution(&PairedLabelSet::new(0));
        assert_eq!(inv0.transpositions(), vec![(PairedLabel::Zero, PairedLabel::One)]);
        assert!(label_involution(&PairedLabelSet::new(2)).is_identity_squared());
    }

    #[test]
    fn tree_action_example() {
        use PairedLabel::*;
        let t = StableTree::from_leaf_map(
            2,
            vec![(0, 1)],
            [(Z(1), 0), (Zero, 0), (RhoZ(1), 1), (One, 1), (Infinity, 1)],
        )
        .unwrap();
        let expected = StableTree::from_leaf_map(
            2,
            vec![(0, 1)],
            [(RhoZ(1), 0), (One, 0), (Z(1), 1), (Zero, 1), (Infinity, 1)],
        )
        .unwrap()
        .canonical_form();
        assert_eq!(induced_tree_action(&t).unwrap(), expected);
        let corolla = StableTree::corolla(PairedLabelSet::new(1).labels().clone());
        assert_eq!(induced_tree_action(&corolla).unwrap(), corolla);
    }

    #[test]
    fn orbits_partition_grade_one() {
        let set = PairedLabelSet::new(1);
        let orbits = tree_orbits(&set, 1);
        let total: usize = orbits.iter().map(Vec::len).sum();
        assert_eq!(total, 10);
        assert!(orbits.iter().all(|o| o.len() == 1 || o.len() == 2));
    }

    #[test]
    fn classify_basic_rows() {
        let generic = PairedConfig::finite([q(1, 7), q(1, 5)]);
        assert_eq!(classify_ny_config(&generic).codim, 0);
        assert!(generic.is_generic());
        let at_half = PairedConfig::finite([half(), q(1, 5)]);
        assert_eq!(classify_ny_config(&at_half).codim, 1);
        let collide = PairedConfig::finite([q(1, 5), q(1, 5)]);
        let d = classify_ny_config(&collide);
        assert_eq!(d.codim, 1);
        assert_eq!(d.collision_pattern, vec![vec![0, 1]]);
        assert_eq!(d.table_row, Some("1b"));
        let frame = PairedConfig::new(vec![fin(int(0)), ProjectivePoint::Infinity]);
        let d = classify_ny_config(&frame);
        assert_eq!(d.codim, 2);
        assert_eq!(
            d.frame_incidences,
            vec![(0, FramePoint::Zero), (1, FramePoint::Infinity)]
        );
        assert_eq!(d.table_row, None);
        let mirror = PairedConfig::finite([q(1, 3), q(2, 3)]);
        let d = classify_ny_config(&mirror);
        assert_eq!(d.codim, 1);
        assert_eq!(d.mirror_pairs, vec![(0, 1)]);
    }

    #[test]
    fn epsilon_examples() {
        let eps = q(1, 10);
        let near = PairedConfig::finite([half() + q(1, 20), half() + q(1, 20), q(1, 7)]);
        assert_eq!(epsilon_stratify(&near, &eps).unwrap(), 2);
        let far = PairedConfig::finite([q(9, 10), q(9, 10), q(1, 7)]);
        assert_eq!(epsilon_stratify(&far, &eps).unwrap(), 0);
        let lone = PairedConfig::finite([q(9, 10), q(9, 10), q(51, 100)]);
        assert_eq!(epsilon_stratify(&lone, &eps).unwrap(), 1);
        let all = PairedConfig::finite(vec![half(); 4]);
        assert_eq!(epsilon_stratify(&all, &eps).unwrap(), 4);
        let generic = PairedConfig::finite([q(1, 7), q(1, 5)]);
        assert_eq!(epsilon_stratify(&generic, &eps), Err(InvolutionError::NotInFatDiagonal));
        assert_eq!(
            epsilon_stratify(&all, &int(0)),
            Err(InvolutionError::NonPositiveEpsilon)
        );
    }

    #[test]
    fn fixed_locus_flats() {
        use crate::arrangements::Hyperplane;
        let half_flat = Flat::intersect(1, &[Hyperplane::coordinate(1, 0, half())]).unwrap();
        assert!(flat_meets_fixed_locus(&half_flat));
        let zero_flat = Flat::intersect(1, &[Hyperplane::coordinate(1, 0, int(0))]).unwrap();
        assert!(!flat_meets_fixed_locus(&zero_flat));
        assert!(!flat_meets_rho_image(&zero_flat));
        let mirror = Flat::intersect(2, &[Hyperplane::mirror(2, 0, 1)]).unwrap();
        assert!(flat_meets_fixed_locus(&mirror));
        assert!(flat_meets_rho_image(&mirror));
    }

    #[test]
    fn composition_arity() {
        let c = ny_compose(&PairedLabelSet::new(1), &PairedLabel::Z(1), &PairedLabelSet::new(2)).unwrap();
        assert_eq!(c.labels.pairs(), 4);
        assert_eq!(c.labels.len(), 11);
        assert_eq!(c.alternative_label_count, 13);
        assert_eq!(c.tree.vertex_count(), 3);
        assert_eq!(induced_tree_action(&c.tree).unwrap(), c.tree);
        assert_eq!(
            ny_compose(&PairedLabelSet::new(0), &PairedLabel::Z(1), &PairedLabelSet::new(1)),
            Err(InvolutionError::BadSlot(PairedLabel::Z(1)))
        );
        assert!(ny_compose(&PairedLabelSet::new(1), &PairedLabel::RhoZ(1), &PairedLabelSet::new(1)).is_err());
        let c0 = ny_compose(&PairedLabelSet::new(2), &PairedLabel::Z(2), &PairedLabelSet::new(0)).unwrap();
        assert_eq!(c0.labels.pairs(), 3);
    }

    #[test]
    fn monad_laws() {
        assert!(monad_law_check());
        assert_eq!(rational_grid(1000).len(), 1000);
    }
}
