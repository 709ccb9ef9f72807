//! Affine hyperplane arrangements over the rationals: intersection poset,
//! Möbius function, characteristic polynomial and the Betti numbers of the
//! complement.
//!
//! The open moduli space `M_{0,m}` is the complement of the arrangement
//! `x_i = 0`, `x_i = 1`, `x_i = x_j` in `m - 3` affine coordinates (three
//! points fixed at `0, 1, ∞`), so its cohomology is read off from the
//! intersection poset.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::{rank, rref};
use crate::poly::IntPoly;
use crate::rational::{half, mod_prime, Rational};
use crate::strata::stratum_count_poly;
use crate::trees::StableTree;

/// Hyperplanes are tracked by `u128` masks.
pub const MAX_HYPERPLANES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("hyperplane normal is zero")]
    ZeroNormal,
    #[error("hyperplane lives in dimension {got}, arrangement in dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("hyperplane {0} is listed twice")]
    Duplicate(usize),
    #[error("at most {MAX_HYPERPLANES} hyperplanes are supported, got {0}")]
    TooMany(usize),
    #[error("{builder} needs a parameter of at least {min}, got {got}")]
    ParameterTooSmall {
        builder: &'static str,
        min: usize,
        got: usize,
    },
    #[error("hyperplane is not in the arrangement")]
    NotMember,
    #[error("expected a tree with one internal edge, got {0} edges")]
    EdgeCount(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("a coefficient has a denominator divisible by {0}")]
    BadReduction(u64),
}

/// The locus `normal · x = offset`, scaled so that the first nonzero entry
/// of `normal` is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self, ArrangementError> {
        let lead = normal
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(ArrangementError::ZeroNormal)?;
        Ok(Self {
            normal: normal.into_iter().map(|c| c / &lead).collect(),
            offset: offset / lead,
        })
    }

    /// `x_i = c` in dimension `dim`.
    pub fn coordinate(dim: usize, i: usize, c: Rational) -> Self {
        let mut normal = vec![Rational::zero(); dim];
        normal[i] = Rational::one();
        Self { normal, offset: c }
    }

    /// `x_i - x_j = 0`.
    pub fn diagonal(dim: usize, i: usize, j: usize) -> Self {
        let mut normal = vec![Rational::zero(); dim];
        normal[i] += Rational::one();
        normal[j] -= Rational::one();
        Self::new(normal, Rational::zero()).expect("i != j")
    }

    /// `x_i + x_j = 1`.
    pub fn mirror(dim: usize, i: usize, j: usize) -> Self {
        let mut normal = vec![Rational::zero(); dim];
        normal[i] += Rational::one();
        normal[j] += Rational::one();
        Self::new(normal, Rational::one()).expect("nonzero normal")
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn ambient_dim(&self) -> usize {
        self.normal.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        dot(&self.normal, x) == self.offset
    }

    /// Augmented row `[normal | offset]`.
    fn row(&self) -> Vec<Rational> {
        let mut r = self.normal.clone();
        r.push(self.offset.clone());
        r
    }

    /// Image under `x -> 1 - x` in every coordinate.
    pub fn rho_image(&self) -> Self {
        let sum: Rational = self.normal.iter().sum();
        Self::new(self.normal.clone(), sum - &self.offset).expect("same normal")
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        if hyperplanes.len() > MAX_HYPERPLANES {
            return Err(ArrangementError::TooMany(hyperplanes.len()));
        }
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.ambient_dim() != dim {
                return Err(ArrangementError::DimensionMismatch {
                    expected: dim,
                    got: h.ambient_dim(),
                });
            }
            if hyperplanes[..i].contains(h) {
                return Err(ArrangementError::Duplicate(i));
            }
        }
        Ok(Self { dim, hyperplanes })
    }

    /// Like [`Arrangement::new`] but silently drops repeated hyperplanes.
    pub fn deduplicated(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        let mut kept: Vec<Hyperplane> = Vec::with_capacity(hyperplanes.len());
        for h in hyperplanes {
            if !kept.contains(&h) {
                kept.push(h);
            }
        }
        Self::new(dim, kept)
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn position(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|g| g == h)
    }

    /// The arrangement with hyperplane `i` removed.
    pub fn deletion(&self, i: usize) -> Self {
        let mut hs = self.hyperplanes.clone();
        hs.remove(i);
        Self {
            dim: self.dim,
            hyperplanes: hs,
        }
    }

    /// The arrangement induced on hyperplane `i`, in coordinates obtained by
    /// solving its equation for its first nonzero coordinate.
    pub fn restriction(&self, i: usize) -> Self {
        let h = &self.hyperplanes[i];
        let k = h.normal.iter().position(|c| !c.is_zero()).expect("nonzero normal");
        let mut out = Vec::new();
        for (j, g) in self.hyperplanes.iter().enumerate() {
            if j == i {
                continue;
            }
            let gk = &g.normal[k];
            let normal: Vec<Rational> = (0..self.dim)
                .filter(|&c| c != k)
                .map(|c| &g.normal[c] - gk * &h.normal[c])
                .collect();
            let offset = &g.offset - gk * &h.offset;
            if let Ok(r) = Hyperplane::new(normal, offset) {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        Self {
            dim: self.dim - 1,
            hyperplanes: out,
        }
    }

    /// Image under `x -> 1 - x` in every coordinate.
    pub fn rho_image(&self) -> Self {
        Self {
            dim: self.dim,
            hyperplanes: self.hyperplanes.iter().map(Hyperplane::rho_image).collect(),
        }
    }

    /// Same hyperplanes regardless of order.
    pub fn same_hyperplanes(&self, other: &Self) -> bool {
        let mut a = self.hyperplanes.clone();
        let mut b = other.hyperplanes.clone();
        a.sort();
        b.sort();
        self.dim == other.dim && a == b
    }

    /// The product arrangement in `A`'s coordinates followed by `B`'s.
    pub fn product(&self, other: &Self) -> Result<Self, ArrangementError> {
        let dim = self.dim + other.dim;
        let left = self.hyperplanes.iter().map(|h| {
            let mut n = h.normal.clone();
            n.resize(dim, Rational::zero());
            Hyperplane {
                normal: n,
                offset: h.offset.clone(),
            }
        });
        let right = other.hyperplanes.iter().map(|h| {
            let mut n = vec![Rational::zero(); self.dim];
            n.extend(h.normal.iter().cloned());
            Hyperplane {
                normal: n,
                offset: h.offset.clone(),
            }
        });
        Self::new(dim, left.chain(right).collect())
    }

    pub fn intersection_poset(&self) -> IntersectionPoset {
        IntersectionPoset::build(self)
    }

    pub fn characteristic_polynomial(&self) -> IntPoly {
        self.intersection_poset().characteristic_polynomial()
    }

    pub fn poincare_complement(&self) -> GradedDims {
        self.intersection_poset().poincare()
    }

    /// Whether `point` lies on no hyperplane.
    pub fn in_complement(&self, point: &[Rational]) -> bool {
        self.hyperplanes.iter().all(|h| !h.contains(point))
    }
}

/// A nonempty intersection of hyperplanes of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    /// Reduced row echelon form of the augmented system `[normal | offset]`.
    equations: Vec<Vec<Rational>>,
    basepoint: Vec<Rational>,
    directions: Vec<Vec<Rational>>,
    containing: u128,
}

impl Flat {
    fn from_rows(dim: usize, mut rows: Vec<Vec<Rational>>) -> Option<Self> {
        let pivots = rref(&mut rows);
        if pivots.last() == Some(&dim) {
            return None;
        }
        let mut basepoint = vec![Rational::zero(); dim];
        for (r, &p) in rows.iter().zip(&pivots) {
            basepoint[p] = r[dim].clone();
        }
        let directions = (0..dim)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut d = vec![Rational::zero(); dim];
                d[free] = Rational::one();
                for (r, &p) in rows.iter().zip(&pivots) {
                    d[p] = -r[free].clone();
                }
                d
            })
            .collect();
        Some(Self {
            equations: rows,
            basepoint,
            directions,
            containing: 0,
        })
    }

    /// The flat cut out by `hyperplanes`, if nonempty.
    pub fn intersect(dim: usize, hyperplanes: &[Hyperplane]) -> Option<Self> {
        Self::from_rows(dim, hyperplanes.iter().map(Hyperplane::row).collect())
    }

    pub fn equations(&self) -> &[Vec<Rational>] {
        &self.equations
    }

    pub fn basepoint(&self) -> &[Rational] {
        &self.basepoint
    }

    pub fn directions(&self) -> &[Vec<Rational>] {
        &self.directions
    }

    pub fn ambient_dim(&self) -> usize {
        self.basepoint.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn codim(&self) -> usize {
        self.equations.len()
    }

    /// Bit `i` is set when hyperplane `i` contains the flat.
    pub fn containing(&self) -> u128 {
        self.containing
    }

    pub fn containing_indices(&self) -> Vec<usize> {
        (0..MAX_HYPERPLANES)
            .filter(|&i| self.containing >> i & 1 == 1)
            .collect()
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        let d = self.ambient_dim();
        self.equations.iter().all(|r| dot(&r[..d], x) == r[d])
    }

    pub fn lies_in(&self, h: &Hyperplane) -> bool {
        h.contains(&self.basepoint) && self.directions.iter().all(|d| dot(&h.normal, d).is_zero())
    }

    /// Intersection with another flat of the same ambient space.
    pub fn meet(&self, other: &Self) -> Option<Self> {
        let rows = self.equations.iter().chain(&other.equations).cloned().collect();
        Self::from_rows(self.ambient_dim(), rows)
    }

    /// Image under `x -> 1 - x` in every coordinate.
    pub fn rho_image(&self) -> Self {
        let d = self.ambient_dim();
        let rows = self
            .equations
            .iter()
            .map(|r| {
                let sum: Rational = r[..d].iter().sum();
                let mut s = r.clone();
                s[d] = sum - &r[d];
                s
            })
            .collect();
        Self::from_rows(d, rows).expect("image of a nonempty flat")
    }
}

/// All flats of an arrangement with the Möbius function from the ambient
/// space. Flats are sorted by codimension, then by their equations.
#[derive(Debug, Clone)]
pub struct IntersectionPoset {
    dim: usize,
    flats: Vec<Flat>,
    mobius: Vec<i64>,
}

impl IntersectionPoset {
    pub fn build(a: &Arrangement) -> Self {
        let dim = a.dim;
        let mut ambient = Flat::from_rows(dim, Vec::new()).expect("ambient space");
        ambient.containing = 0;
        let mut by_key: BTreeMap<Vec<Vec<Rational>>, Flat> = BTreeMap::new();
        let mut frontier = vec![ambient.clone()];
        by_key.insert(Vec::new(), ambient);
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for (i, h) in a.hyperplanes.iter().enumerate() {
                    if f.containing >> i & 1 == 1 {
                        continue;
                    }
                    let mut rows = f.equations.clone();
                    rows.push(h.row());
                    let Some(mut g) = Flat::from_rows(dim, rows) else {
                        continue;
                    };
                    if by_key.contains_key(&g.equations) {
                        continue;
                    }
                    g.containing = a
                        .hyperplanes
                        .iter()
                        .enumerate()
                        .filter(|(_, h)| g.lies_in(h))
                        .fold(0u128, |m, (j, _)| m | 1 << j);
                    by_key.insert(g.equations.clone(), g.clone());
                    next.push(g);
                }
            }
            frontier = next;
        }
        let mut flats: Vec<Flat> = by_key.into_values().collect();
        flats.sort_by(|x, y| x.codim().cmp(&y.codim()).then_with(|| x.equations.cmp(&y.equations)));
        let mut mobius = vec![0i64; flats.len()];
        for i in 0..flats.len() {
            if i == 0 {
                mobius[0] = 1;
                continue;
            }
            let m = flats[i].containing;
            let below: i64 = (0..i)
                .filter(|&j| flats[j].codim() < flats[i].codim() && flats[j].containing & !m == 0)
                .map(|j| mobius[j])
                .sum();
            mobius[i] = -below;
        }
        Self { dim, flats, mobius }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// `μ(ambient, flat)` for every flat, in the order of [`flats`](Self::flats).
    pub fn mobius(&self) -> &[i64] {
        &self.mobius
    }

    pub fn counts_by_codim(&self) -> Vec<usize> {
        let top = self.flats.iter().map(Flat::codim).max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for f in &self.flats {
            out[f.codim()] += 1;
        }
        out
    }

    /// `χ(q) = Σ μ(flat) q^{dim flat}`.
    pub fn characteristic_polynomial(&self) -> IntPoly {
        let mut c = vec![0i64; self.dim + 1];
        for (f, m) in self.flats.iter().zip(&self.mobius) {
            c[f.dim()] += m;
        }
        IntPoly::new(c)
    }

    /// Betti numbers of the complement: `b_k = Σ_{codim = k} |μ|`.
    pub fn poincare(&self) -> GradedDims {
        let mut dims = vec![0u64; self.dim + 1];
        for (f, m) in self.flats.iter().zip(&self.mobius) {
            dims[f.codim()] += m.unsigned_abs();
        }
        GradedDims::new(dims)
    }
}

/// Graded dimensions with bookkeeping for a degree shift (suspension,
/// residue) and a weight shift (Tate twist). The shifts never change `dims`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDims {
    dims: Vec<u64>,
    pub degree_shift: i32,
    pub weight_shift: i32,
}

impl GradedDims {
    /// Trailing zeros are dropped, keeping at least one entry.
    pub fn new(mut dims: Vec<u64>) -> Self {
        while dims.len() > 1 && dims.last() == Some(&0) {
            dims.pop();
        }
        if dims.is_empty() {
            dims.push(0);
        }
        Self {
            dims,
            degree_shift: 0,
            weight_shift: 0,
        }
    }

    pub fn point() -> Self {
        Self::new(vec![1])
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn with_degree_shift(mut self, s: i32) -> Self {
        self.degree_shift = s;
        self
    }

    pub fn with_weight_shift(mut self, w: i32) -> Self {
        self.weight_shift = w;
        self
    }

    /// Generating polynomial `Σ dims[k] t^k`.
    pub fn poly(&self) -> IntPoly {
        IntPoly::new(self.dims.iter().map(|&d| d as i64).collect())
    }

    /// Graded tensor product; shifts add.
    pub fn tensor(&self, other: &Self) -> Self {
        let p = &self.poly() * &other.poly();
        let mut out = Self::new(p.coeffs().iter().map(|&c| c as u64).collect());
        out.degree_shift = self.degree_shift + other.degree_shift;
        out.weight_shift = self.weight_shift + other.weight_shift;
        out
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }
}

fn check_min(builder: &'static str, min: usize, got: usize) -> Result<(), ArrangementError> {
    if got < min {
        Err(ArrangementError::ParameterTooSmall { builder, min, got })
    } else {
        Ok(())
    }
}

/// `x_i = x_j` for `1 <= i < j <= n` in dimension `n`.
pub fn braid_arrangement(n: usize) -> Result<Arrangement, ArrangementError> {
    check_min("braid", 2, n)?;
    let mut hs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            hs.push(Hyperplane::diagonal(n, i, j));
        }
    }
    Arrangement::deduplicated(n, hs)
}

fn m0n_hyperplanes(m: usize) -> Vec<Hyperplane> {
    let d = m - 3;
    let mut hs = Vec::new();
    for i in 0..d {
        hs.push(Hyperplane::coordinate(d, i, Rational::zero()));
        hs.push(Hyperplane::coordinate(d, i, Rational::one()));
    }
    for i in 0..d {
        for j in i + 1..d {
            hs.push(Hyperplane::diagonal(d, i, j));
        }
    }
    hs
}

/// `x_i = 0`, `x_i = 1`, `x_i = x_j` in dimension `m - 3`; the complement is
/// the open moduli space with `m` marked points.
pub fn m0n_arrangement(m: usize) -> Result<Arrangement, ArrangementError> {
    check_min("m0n", 4, m)?;
    Arrangement::deduplicated(m - 3, m0n_hyperplanes(m))
}

/// The `m0n` arrangement with the hyperplanes `x_i = 1/2` added: the
/// complement avoids the fixed point of `x -> 1 - x` in every coordinate.
pub fn m0n_half_arrangement(m: usize) -> Result<Arrangement, ArrangementError> {
    check_min("m0n-half", 4, m)?;
    let d = m - 3;
    let mut hs = m0n_hyperplanes(m);
    hs.extend((0..d).map(|i| Hyperplane::coordinate(d, i, half())));
    Arrangement::deduplicated(d, hs)
}

/// `z_i = 0, 1, 1/2`, `z_i = z_j`, `z_i + z_j = 1` in dimension `p`: the
/// values `z_i, 1 - z_i, 0, 1, ∞` are pairwise distinct off this locus.
pub fn ny_arrangement(p: usize) -> Result<Arrangement, ArrangementError> {
    check_min("ny", 1, p)?;
    let mut hs = Vec::new();
    for i in 0..p {
        hs.push(Hyperplane::coordinate(p, i, Rational::zero()));
        hs.push(Hyperplane::coordinate(p, i, Rational::one()));
        hs.push(Hyperplane::coordinate(p, i, half()));
    }
    for i in 0..p {
        for j in i + 1..p {
            hs.push(Hyperplane::diagonal(p, i, j));
            hs.push(Hyperplane::mirror(p, i, j));
        }
    }
    Arrangement::deduplicated(p, hs)
}

/// `χ_A = χ_{A - H} - χ_{A | H}`.
pub fn deletion_restriction_check(a: &Arrangement, h: &Hyperplane) -> Result<bool, ArrangementError> {
    let i = a.position(h).ok_or(ArrangementError::NotMember)?;
    let lhs = a.characteristic_polynomial();
    let rhs = &a.deletion(i).characteristic_polynomial() - &a.restriction(i).characteristic_polynomial();
    Ok(lhs == rhs)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Number of points of `F_p^d` on no hyperplane, by exhaustive search.
pub fn fp_complement_count(a: &Arrangement, p: u64) -> Result<u64, ArrangementError> {
    if !is_prime(p) {
        return Err(ArrangementError::NotPrime(p));
    }
    let reduce = |x: &Rational| mod_prime(x, p).ok_or(ArrangementError::BadReduction(p));
    let mut hs = Vec::with_capacity(a.len());
    for h in &a.hyperplanes {
        let n: Vec<u64> = h.normal.iter().map(reduce).collect::<Result<_, _>>()?;
        hs.push((n, reduce(&h.offset)?));
    }
    // The hyperplanes whose last nonzero coordinate is `k` can be tested as
    // soon as coordinate `k` is fixed.
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); a.dim];
    let mut constant_hit = false;
    for (i, (n, c)) in hs.iter().enumerate() {
        match n.iter().rposition(|&x| x != 0) {
            Some(k) => by_last[k].push(i),
            None => constant_hit |= *c == 0,
        }
    }
    if constant_hit {
        return Ok(0);
    }
    let mut point = vec![0u64; a.dim];
    Ok(count_rec(&hs, &by_last, &mut point, 0, p))
}

fn count_rec(hs: &[(Vec<u64>, u64)], by_last: &[Vec<usize>], point: &mut Vec<u64>, k: usize, p: u64) -> u64 {
    if k == point.len() {
        return 1;
    }
    let mut total = 0;
    for v in 0..p {
        point[k] = v;
        let hit = by_last[k].iter().any(|&i| {
            let (n, c) = &hs[i];
            let s = n[..=k]
                .iter()
                .zip(&point[..=k])
                .fold(0u64, |acc, (a, b)| (acc + a * b) % p);
            s == *c
        });
        if !hit {
            total += count_rec(hs, by_last, point, k + 1, p);
        }
    }
    total
}

/// `χ(p)` reduced to an integer, for comparison with
/// [`fp_complement_count`].
pub fn chi_at(a: &Arrangement, p: u64) -> i128 {
    a.characteristic_polynomial().eval(p as i64)
}

/// Cohomology dimensions of the open moduli space with `m` marked points;
/// `M_{0,3}` is a point.
pub fn open_moduli_dims(m: usize) -> Result<GradedDims, ArrangementError> {
    check_min("open moduli", 3, m)?;
    if m == 3 {
        return Ok(GradedDims::point());
    }
    Ok(m0n_arrangement(m)?.poincare_complement())
}

/// Gravity operad dimensions in arity `n`: the suspended cohomology of
/// `M_{0,n}`.
pub fn grav_dims(n: usize) -> Result<GradedDims, ArrangementError> {
    check_min("grav", 3, n)?;
    Ok(open_moduli_dims(n)?.with_degree_shift(1))
}

/// Where the suspension goes in a tensor square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SuspensionConvention {
    /// One shift for the product.
    #[default]
    Once,
    /// One shift per factor.
    PerFactor,
}

/// Cohomology of `M_{0,n}` minus the fixed locus of `x -> 1 - x`.
pub fn grav_ny_factor(n: usize) -> Result<GradedDims, ArrangementError> {
    check_min("grav-ny", 3, n)?;
    if n == 3 {
        return Ok(GradedDims::point());
    }
    Ok(m0n_half_arrangement(n)?.poincare_complement())
}

/// Graded dimensions of the NY gravity piece in arity `n`: the tensor square
/// of [`grav_ny_factor`], the second factor being the `ρ`-twisted copy.
pub fn grav_ny_dims(n: usize, convention: SuspensionConvention) -> Result<GradedDims, ArrangementError> {
    check_min("grav-ny", 3, n)?;
    let first = grav_ny_factor(n)?;
    let second = if n == 3 {
        GradedDims::point()
    } else {
        let a = m0n_half_arrangement(n)?;
        let twisted = a.rho_image();
        debug_assert!(twisted.same_hyperplanes(&a));
        twisted.poincare_complement()
    };
    let shift = match convention {
        SuspensionConvention::Once => 1,
        SuspensionConvention::PerFactor => 2,
    };
    Ok(first.tensor(&second).with_degree_shift(shift))
}

/// The three computations of the cohomology of a one-edge stratum
/// `M_{0,F(v')} × M_{0,F(v'')}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueReport {
    pub valences: (usize, usize),
    /// Künneth product of the two vertex moduli dims.
    pub kunneth: GradedDims,
    /// The arrangement engine run on the product arrangement.
    pub product_arrangement: GradedDims,
    /// Betti numbers from the stratum's point count via purity.
    pub from_point_count: GradedDims,
}

impl ResidueReport {
    pub fn passes(&self) -> bool {
        self.kunneth.dims() == self.product_arrangement.dims() && self.kunneth.dims() == self.from_point_count.dims()
    }
}

fn open_moduli_arrangement(m: usize) -> Result<Arrangement, ArrangementError> {
    if m == 3 {
        Ok(Arrangement::empty(0))
    } else {
        m0n_arrangement(m)
    }
}

/// Cohomology of the one-edge stratum computed three ways. The reported
/// dims carry the residue bookkeeping: degree shift `-1`, weight shift `+1`.
pub fn residue_dims<L: Ord + Clone>(tree: &StableTree<L>) -> Result<ResidueReport, ArrangementError> {
    if tree.edge_count() != 1 {
        return Err(ArrangementError::EdgeCount(tree.edge_count()));
    }
    let (a, b) = (tree.valence(0), tree.valence(1));
    let tag = |g: GradedDims| g.with_degree_shift(-1).with_weight_shift(1);
    let kunneth = open_moduli_dims(a)?.tensor(&open_moduli_dims(b)?);
    let product = open_moduli_arrangement(a)?
        .product(&open_moduli_arrangement(b)?)?
        .poincare_complement();
    // The count polynomial of a pure Tate complement is Σ (-1)^k b_k q^{d-k}.
    let count = stratum_count_poly(tree);
    let d = tree.dim();
    let from_count: Vec<u64> = (0..=d)
        .map(|k| {
            let c = count.coeff(d - k);
            let signed = if k % 2 == 0 { c } else { -c };
            u64::try_from(signed).unwrap_or(u64::MAX)
        })
        .collect();
    Ok(ResidueReport {
        valences: (a, b),
        kunneth: tag(kunneth),
        product_arrangement: tag(product),
        from_point_count: tag(GradedDims::new(from_count)),
    })
}

pub fn residue_dim_check<L: Ord + Clone>(tree: &StableTree<L>) -> Result<bool, ArrangementError> {
    Ok(residue_dims(tree)?.passes())
}

/// Number of independent hyperplanes through `x`.
pub fn rank_at(a: &Arrangement, x: &[Rational]) -> usize {
    let rows: Vec<Vec<Rational>> = a
        .hyperplanes
        .iter()
        .filter(|h| h.contains(x))
        .map(|h| h.normal.clone())
        .collect();
    rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::new(c.to_vec())
    }

    #[test]
    fn normalization() {
        let h = Hyperplane::new(vec![int(2), int(4)], int(6)).unwrap();
        assert_eq!(h.normal(), &[int(1), int(2)]);
        assert_eq!(h.offset(), &int(3));
        assert_eq!(Hyperplane::new(vec![int(0)], int(1)), Err(ArrangementError::ZeroNormal));
    }

    #[test]
    fn rejects_duplicates_and_mismatch() {
        let h = Hyperplane::coordinate(2, 0, int(0));
        assert_eq!(
            Arrangement::new(2, vec![h.clone(), h.clone()]),
            Err(ArrangementError::Duplicate(1))
        );
        assert_eq!(
            Arrangement::new(3, vec![h]),
            Err(ArrangementError::DimensionMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn single_hyperplane() {
        let a = Arrangement::new(2, vec![Hyperplane::coordinate(2, 0, int(0))]).unwrap();
        let p = a.intersection_poset();
        assert_eq!(p.len(), 2);
        assert_eq!(a.characteristic_polynomial(), poly(&[0, -1, 1]));
        assert!(deletion_restriction_check(&a, &a.hyperplanes()[0]).unwrap());
    }

    #[test]
    fn empty_arrangement() {
        assert_eq!(Arrangement::empty(3).characteristic_polynomial(), IntPoly::monomial(3));
        assert_eq!(Arrangement::empty(0).poincare_complement().dims(), &[1]);
    }

    #[test]
    fn three_punctures() {
        let a = Arrangement::new(
            1,
            vec![
                Hyperplane::coordinate(1, 0, int(0)),
                Hyperplane::coordinate(1, 0, int(1)),
                Hyperplane::coordinate(1, 0, q(7, 3)),
            ],
        )
        .unwrap();
        assert_eq!(a.characteristic_polynomial(), poly(&[-3, 1]));
    }

    #[test]
    fn braid_three() {
        let a = braid_arrangement(3).unwrap();
        assert_eq!(a.intersection_poset().counts_by_codim(), vec![1, 3, 1]);
        assert_eq!(a.characteristic_polynomial(), poly(&[0, 2, -3, 1]));
        assert_eq!(a.poincare_complement().dims(), &[1, 3, 2]);
    }

    #[test]
    fn m0n_five() {
        let a = m0n_arrangement(5).unwrap();
        assert_eq!(a.len(), 5);
        let p = a.intersection_poset();
        assert_eq!(p.counts_by_codim(), vec![1, 5, 4]);
        let point_mobius: i64 = p
            .flats()
            .iter()
            .zip(p.mobius())
            .filter(|(f, _)| f.dim() == 0)
            .map(|(_, m)| m)
            .sum();
        assert_eq!(point_mobius, 6);
        assert_eq!(a.characteristic_polynomial(), poly(&[6, -5, 1]));
        assert_eq!(a.poincare_complement().dims(), &[1, 5, 6]);
    }

    #[test]
    fn builder_sizes() {
        assert_eq!(m0n_arrangement(4).unwrap().len(), 2);
        assert_eq!(ny_arrangement(1).unwrap().len(), 3);
        assert_eq!(ny_arrangement(2).unwrap().len(), 8);
        assert_eq!(ny_arrangement(1).unwrap().poincare_complement().dims(), &[1, 3]);
        assert!(matches!(
            m0n_arrangement(3),
            Err(ArrangementError::ParameterTooSmall { .. })
        ));
        assert!(matches!(
            ny_arrangement(0),
            Err(ArrangementError::ParameterTooSmall { .. })
        ));
        assert!(matches!(
            braid_arrangement(1),
            Err(ArrangementError::ParameterTooSmall { .. })
        ));
    }

    #[test]
    fn mirror_meets_half() {
        let a = ny_arrangement(2).unwrap();
        let x = vec![half(), half()];
        assert_eq!(rank_at(&a, &x), 2);
        assert!(!a.in_complement(&x));
        assert!(a.in_complement(&[q(1, 7), q(1, 5)]));
    }

    #[test]
    fn deletion_restriction_braid_four() {
        let a = braid_arrangement(4).unwrap();
        for h in a.hyperplanes() {
            assert!(deletion_restriction_check(&a, h).unwrap());
        }
        let stranger = Hyperplane::coordinate(4, 0, int(5));
        assert_eq!(
            deletion_restriction_check(&a, &stranger),
            Err(ArrangementError::NotMember)
        );
    }

    #[test]
    fn fp_count_small() {
        let a = m0n_arrangement(5).unwrap();
        assert_eq!(fp_complement_count(&a, 7).unwrap() as i128, chi_at(&a, 7));
        assert_eq!(fp_complement_count(&a, 8), Err(ArrangementError::NotPrime(8)));
        assert_eq!(
            fp_complement_count(&ny_arrangement(1).unwrap(), 2),
            Err(ArrangementError::BadReduction(2))
        );
    }

    #[test]
    fn grav_small() {
        assert_eq!(grav_dims(3).unwrap().dims(), &[1]);
        assert_eq!(grav_dims(3).unwrap().degree_shift, 1);
        assert_eq!(grav_dims(4).unwrap().dims(), &[1, 2]);
        assert_eq!(grav_dims(5).unwrap().dims(), &[1, 5, 6]);
        assert!(grav_dims(2).is_err());
        assert_eq!(grav_ny_factor(4).unwrap().dims(), &[1, 3]);
        assert_eq!(grav_ny_dims(4, SuspensionConvention::Once).unwrap().dims(), &[1, 6, 9]);
        assert_eq!(
            grav_ny_dims(4, SuspensionConvention::PerFactor).unwrap().degree_shift,
            2
        );
        assert_eq!(grav_ny_dims(3, SuspensionConvention::Once).unwrap().dims(), &[1]);
    }

    #[test]
    fn residue_examples() {
        let t = StableTree::from_leaf_map(2, vec![(0, 1)], [(1u32, 0), (2, 0), (3, 1), (4, 1), (5, 1)]).unwrap();
        let r = residue_dims(&t).unwrap();
        assert!(r.passes());
        assert_eq!(r.kunneth.dims(), &[1, 2]);
        assert_eq!(r.kunneth.degree_shift, -1);
        assert_eq!(r.kunneth.weight_shift, 1);
        let t6 =
            StableTree::from_leaf_map(2, vec![(0, 1)], [(1u32, 0), (2, 0), (3, 0), (4, 1), (5, 1), (6, 1)]).unwrap();
        assert_eq!(residue_dims(&t6).unwrap().kunneth.dims(), &[1, 4, 4]);
        let corolla = StableTree::corolla(crate::trees::LabelSet::range(5).unwrap());
        assert_eq!(residue_dim_check(&corolla), Err(ArrangementError::EdgeCount(0)));
    }

    #[test]
    fn flat_geometry() {
        let a = ny_arrangement(2).unwrap();
        let m = Hyperplane::mirror(2, 0, 1);
        let f = Flat::intersect(2, core::slice::from_ref(&m)).unwrap();
        assert_eq!(f.dim(), 1);
        assert!(f.contains_point(&[half(), half()]));
        assert!(f.lies_in(&m));
        assert_eq!(f.rho_image(), f);
        let z0 = Flat::intersect(2, &[Hyperplane::coordinate(2, 0, int(0))]).unwrap();
        assert!(z0.meet(&z0.rho_image()).is_none());
        assert!(a.position(&m).is_some());
    }
}
