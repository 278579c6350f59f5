//! Grassmann's exterior algebra over an orthonormal frame `e1 … en`.
//!
//! A [`Multivector`] is a sparse map from canonical [`Blade`]s (strictly
//! ascending index sets) to exact rationals. All reordering signs are folded
//! into the coefficients, so two multivectors are equal iff their term maps
//! are equal.
//!
//! The complement `|E` of a unit blade `E = e_I` is the signed product of
//! the units missing from `E`, normalized so that `E ∧ |E = e1 ∧ … ∧ en`:
//!
//! ```text
//! |e_I = sg(I, J) e_J        J = {1..n} \ I, both ascending
//! ```
//!
//! The unit convention `[e1 … en] = 1` is applied only by the regressive and
//! interior products; [`Multivector::wedge`] never lowers grade.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, ParseError, Result};
use crate::grammar;

/// Exact scalar type used throughout the crate.
pub type Scalar = BigRational;

/// Largest frame dimension supported by the bit-mask blade encoding.
pub const MAX_DIM: usize = 32;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(value.into())
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(num.into(), den.into())
}

/// Sign (+1, -1) of reordering `e_a ∧ e_b` into ascending order, or 0 when
/// the index sets overlap.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> j).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn full_mask(dim: usize) -> u32 {
    if dim == 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    }
}

/// Sign of the permutation `(I, J)` where `J` is the ascending complement of
/// `I` in `0..dim` (bit positions).
pub fn complement_sign(mask: u32, dim: usize) -> i32 {
    wedge_sign(mask, full_mask(dim) & !mask)
}

/// A canonical unit of the `k`-th level: `[e_{i1} … e_{ik}]`, `i1 < … < ik`.
///
/// Stored as a bit mask (bit `i-1` set for `e_i`) together with the frame
/// dimension.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade {
    mask: u32,
    dim: u8,
}

impl Blade {
    /// Builds a blade from strictly ascending 1-based indices.
    pub fn new(indices: &[usize], dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut mask = 0u32;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            if i == last {
                return Err(Error::RepeatedIndex(i));
            }
            if i < last {
                return Err(ParseError::new(format!(
                    "blade indices must be strictly ascending, found {i} after {last}"
                ))
                .into());
            }
            mask |= 1 << (i - 1);
            last = i;
        }
        Ok(Self { mask, dim: dim as u8 })
    }

    /// Builds a blade from 1-based indices in any order, returning the
    /// permutation sign, or `None` if an index repeats.
    pub fn from_unordered(indices: &[usize], dim: usize) -> Result<Option<(i32, Self)>> {
        check_dim(dim)?;
        let mut mask = 0u32;
        let mut sign = 1;
        for &i in indices {
            if i == 0 || i > dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            let bit = 1u32 << (i - 1);
            match wedge_sign(mask, bit) {
                0 => return Ok(None),
                s => sign *= s,
            }
            mask |= bit;
        }
        Ok(Some((sign, Self { mask, dim: dim as u8 })))
    }

    pub fn from_mask(mask: u32, dim: usize) -> Self {
        assert!(dim <= MAX_DIM && mask & !full_mask(dim) == 0, "mask outside frame");
        Self { mask, dim: dim as u8 }
    }

    pub fn scalar(dim: usize) -> Self {
        Self::from_mask(0, dim)
    }

    pub fn pseudoscalar(dim: usize) -> Self {
        Self::from_mask(full_mask(dim), dim)
    }

    /// The unit `e_i` (1-based).
    pub fn unit(i: usize, dim: usize) -> Result<Self> {
        Self::new(&[i], dim)
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn grade(self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Ascending 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        (0..self.dim as usize).filter(|&b| self.mask >> b & 1 == 1).map(|b| b + 1).collect()
    }

    /// The blade of all units not in `self`, without sign.
    pub fn dual(self) -> Self {
        Self { mask: full_mask(self.dim()) & !self.mask, dim: self.dim }
    }

    /// `sg(I, J)` for `|e_I = sg(I, J) e_J`.
    pub fn complement_sign(self) -> i32 {
        complement_sign(self.mask, self.dim())
    }

    /// `e_self ∧ e_other = sign · e_result`, or `None` when they share an index.
    pub fn wedge(self, other: Self) -> Option<(i32, Self)> {
        debug_assert_eq!(self.dim, other.dim);
        match wedge_sign(self.mask, other.mask) {
            0 => None,
            s => Some((s, Self { mask: self.mask | other.mask, dim: self.dim })),
        }
    }

    /// Enumerates all `2^n` blades of the frame, grade by grade.
    pub fn all(dim: usize) -> Vec<Self> {
        let mut blades: Vec<Self> = (0..=full_mask(dim)).map(|m| Self::from_mask(m, dim)).collect();
        blades.sort();
        blades
    }

    /// All blades of the given grade, in canonical order.
    pub fn of_grade(dim: usize, grade: usize) -> Vec<Self> {
        Self::all(dim).into_iter().filter(|b| b.grade() == grade).collect()
    }

    /// Renders with the given symbol and label of the first axis, e.g.
    /// `label("dx", 0)` gives `dx0^dx2`. The scalar unit renders as `1`.
    pub fn label(self, symbol: &str, base: usize) -> String {
        if self.mask == 0 {
            return "1".to_string();
        }
        self.indices()
            .iter()
            .map(|i| format!("{symbol}{}", i - 1 + base))
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl Ord for Blade {
    /// Grade first, then lexicographic on the ascending index lists.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dim.cmp(&other.dim).then(self.grade().cmp(&other.grade())).then_with(|| {
            let diff = self.mask ^ other.mask;
            if diff == 0 {
                std::cmp::Ordering::Equal
            } else if self.mask & (diff & diff.wrapping_neg()) != 0 {
                // lowest differing index belongs to self
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.label("e", 1))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label("e", 1))
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::UnsupportedDimension(dim))
    } else {
        Ok(())
    }
}

/// A level `k` with `0 ≤ k ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(usize);

impl Grade {
    pub fn new(k: usize, dim: usize) -> Result<Self> {
        if k > dim {
            Err(Error::DegreeOutOfRange { degree: k, max: dim })
        } else {
            Ok(Self(k))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// A Grassmann quantity: a finite sum of rational multiples of blades.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    dim: usize,
    terms: BTreeMap<Blade, Scalar>,
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, value: Scalar) -> Self {
        Self::from_blade(Blade::scalar(dim), value)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Scalar::one())
    }

    pub fn from_blade(blade: Blade, coefficient: Scalar) -> Self {
        let mut mv = Self::zero(blade.dim());
        mv.add_term(blade, coefficient);
        mv
    }

    /// `e_i` (1-based).
    pub fn unit(i: usize, dim: usize) -> Result<Self> {
        Ok(Self::from_blade(Blade::unit(i, dim)?, Scalar::one()))
    }

    /// `[e_{i1} … e_{ik}]` from strictly ascending indices.
    pub fn blade(indices: &[usize], dim: usize) -> Result<Self> {
        Ok(Self::from_blade(Blade::new(indices, dim)?, Scalar::one()))
    }

    pub fn pseudoscalar(dim: usize) -> Self {
        Self::from_blade(Blade::pseudoscalar(dim), Scalar::one())
    }

    /// Grade-1 quantity `Σ c_i e_i`.
    pub fn vector(coefficients: &[Scalar]) -> Self {
        let dim = coefficients.len();
        let mut mv = Self::zero(dim);
        for (i, c) in coefficients.iter().enumerate() {
            mv.add_term(Blade::from_mask(1 << i, dim), c.clone());
        }
        mv
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Blade, Scalar)>) -> Result<Self> {
        let mut mv = Self::zero(dim);
        for (b, c) in terms {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: b.dim() });
            }
            mv.add_term(b, c);
        }
        Ok(mv)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: &Blade) -> Scalar {
        self.terms.get(blade).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coefficient · blade` in place, dropping cancelled terms.
    pub fn add_term(&mut self, blade: Blade, coefficient: Scalar) {
        debug_assert_eq!(blade.dim(), self.dim);
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(blade).or_insert_with(Scalar::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&blade);
        }
    }

    /// The set of grades present, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        g.dedup();
        g
    }

    /// `Some(k)` if every term has grade `k`. Zero has no grade.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        match self.grades().as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    /// True when every term has grade `k` (vacuously true for zero).
    pub fn is_pure_grade(&self, k: usize) -> bool {
        self.terms.keys().all(|b| b.grade() == k)
    }

    pub fn grade_part(&self, k: usize) -> Self {
        Self {
            dim: self.dim,
            terms: self.terms.iter().filter(|(b, _)| b.grade() == k).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.terms {
            out.add_term(*b, c * factor);
        }
        out
    }

    /// Multiplies each blade coefficient by `f(blade)`.
    pub fn map_blades(&self, mut f: impl FnMut(Blade) -> (i32, Blade)) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.terms {
            let (s, target) = f(*b);
            if s != 0 {
                out.add_term(target, c * int(s as i64));
            }
        }
        out
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch { left: self.dim, right: other.dim })
        } else {
            Ok(())
        }
    }

    fn bilinear(&self, other: &Self, mut f: impl FnMut(Blade, Blade) -> Option<(i32, Blade)>) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((s, blade)) = f(*a, *b) {
                    let c = ca * cb;
                    out.add_term(blade, if s < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Grassmann's combinatorial (exterior) product `[A B]`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.bilinear(other, |a, b| a.wedge(b))
    }

    /// Grassmann's complement `|A`, grade `k ↦ n − k`.
    pub fn complement(&self) -> Self {
        self.map_blades(|b| (b.complement_sign(), b.dual()))
    }

    /// Inverse of [`complement`](Self::complement); equals
    /// `(−1)^{k(n−k)} |A` on grade `k`.
    pub fn complement_inverse(&self) -> Self {
        self.map_blades(|b| {
            let pre = b.dual();
            (pre.complement_sign(), pre)
        })
    }

    /// Grassmann's regressive product.
    ///
    /// For homogeneous pieces of grades `k + l ≥ n` this is
    /// `|⁻¹[|A |B]`, which lands in grade `k + l − n` and absorbs the unit
    /// `[e1 … en] = 1`. For `k + l < n` the combinatorial product is the
    /// ordinary progressive one, so the result is `A ∧ B`. With this reading
    /// `|[A B] = [|A |B]` holds for every grade pair.
    pub fn regressive(&self, other: &Self) -> Result<Self> {
        let n = self.dim;
        self.bilinear(other, |a, b| {
            if a.grade() + b.grade() < n {
                return a.wedge(b);
            }
            let (sa, ca) = (a.complement_sign(), a.dual());
            let (sb, cb) = (b.complement_sign(), b.dual());
            let (sw, c) = ca.wedge(cb)?;
            let pre = c.dual();
            Some((sa * sb * sw * pre.complement_sign(), pre))
        })
    }

    /// Grassmann's interior product `[A |B]`.
    ///
    /// Grade `n + k − l` for `l > k` and `k − l` otherwise; equal grades give
    /// a number, and `[e_i |e_j] = δ_ij`.
    pub fn interior(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        self.regressive(&other.complement())
    }

    /// Folds the pseudoscalar coefficient into the scalar part, applying the
    /// unit convention `[e1 … en] = 1`.
    pub fn reduce_unit(&self) -> Self {
        let top = Blade::pseudoscalar(self.dim);
        let mut out = self.clone();
        if let Some(c) = out.terms.remove(&top) {
            out.add_term(Blade::scalar(self.dim), c);
        }
        out
    }

    /// Parses the text grammar with labels `e1 … en`.
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        Self::parse_labeled(text, dim, "e", 1)
    }

    /// Parses terms like `3/2*e1^e3 - e2^e4` with the given axis symbol and
    /// first label (`"e", 1` or `"dx", 0`). Blade indices must be strictly
    /// ascending; repeats are rejected.
    pub fn parse_labeled(text: &str, dim: usize, symbol: &str, base: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut mv = Self::zero(dim);
        for (negative, term) in grammar::split_terms(text)? {
            let mut coefficient = Scalar::one();
            let mut blade: Option<Blade> = None;
            for factor in grammar::split_factors(&term)? {
                let factor = factor.trim_start_matches('(').trim_end_matches(')');
                if let Some(r) = grammar::parse_rational(factor) {
                    coefficient *= r;
                } else if factor.starts_with(symbol) {
                    if blade.is_some() {
                        return Err(ParseError::new(format!("more than one blade in term '{term}'")).into());
                    }
                    blade = Some(parse_blade(factor, dim, symbol, base)?);
                } else {
                    return Err(ParseError::new(format!("unrecognized factor '{factor}'")).into());
                }
            }
            if negative {
                coefficient = -coefficient;
            }
            mv.add_term(blade.unwrap_or(Blade::scalar(dim)), coefficient);
        }
        Ok(mv)
    }

    /// Renders with an arbitrary axis symbol and first label.
    pub fn to_labeled(&self, symbol: &str, base: usize) -> String {
        format_terms(self.terms.iter().map(|(b, c)| (b.label(symbol, base), b.grade() == 0, c)))
    }
}

pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (String, bool, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (label, is_scalar, c) in terms {
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        if is_scalar {
            out.push_str(&abs.to_string());
        } else {
            out.push_str(&grammar::coefficient_prefix(&abs));
            out.push_str(&label);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn parse_blade(token: &str, dim: usize, symbol: &str, base: usize) -> Result<Blade> {
    let mut indices = Vec::new();
    for unit in token.split('^') {
        let label = unit
            .strip_prefix(symbol)
            .ok_or_else(|| ParseError::new(format!("expected '{symbol}<index>', found '{unit}'")))?;
        let i: usize = label
            .parse()
            .map_err(|_| ParseError::new(format!("bad index in '{unit}'")))?;
        if i < base || i - base >= dim {
            return Err(ParseError::new(format!("index {symbol}{i} outside the {dim}-dimensional frame")).into());
        }
        indices.push(i - base + 1);
    }
    Blade::new(&indices, dim).map_err(|e| match e {
        Error::RepeatedIndex(i) => ParseError::new(format!("repeated index {symbol}{} in '{token}'", i - 1 + base)).into(),
        other => other,
    })
}

/// The 3-D vector product `u × v = |[u v]`.
pub fn cross_product(u: &Multivector, v: &Multivector) -> Result<Multivector> {
    if u.dim() != 3 {
        return Err(Error::WrongDimension { expected: 3, found: u.dim() });
    }
    for w in [u, v] {
        if !w.is_pure_grade(1) {
            return Err(Error::WrongGrade { expected: "1".into(), found: format!("{:?}", w.grades()) });
        }
    }
    Ok(u.wedge(v)?.complement())
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_labeled("e", 1))
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(n={}, {})", self.dim, self)
    }
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl Add for Multivector {
    type Output = Multivector;

    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        Multivector { dim: self.dim, terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect() }
    }
}

impl Neg for Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        -&self
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        self + &(-rhs)
    }
}

impl Sub for Multivector {
    type Output = Multivector;

    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Mul<&Scalar> for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: &Scalar) -> Multivector {
        self.scale(rhs)
    }
}
