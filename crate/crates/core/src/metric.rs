//! Diagonal metrics of arbitrary signature and the Hodge star.
//!
//! Metrics are diagonal with entries ±1 in the distinguished frame, so
//! `√|det g| = 1`, raising an index only changes a sign, and every operation
//! stays in exact rational arithmetic. For a unit blade `e_I` the star is
//!
//! ```text
//! *e_I = orientation · (Π_{i∈I} g^{ii}) · sg(I, J) · e_J
//! ```
//!
//! which is the contraction `P*_J = (1/p!) √|g| ε_{I J} P^I` summed over
//! ascending `I` only. In Euclidean signature with positive orientation it is
//! exactly Grassmann's complement.

use std::fmt;

use num::{One, Zero};

use crate::algebra::{Blade, Grade, Multivector, Scalar};
use crate::error::{Error, ParseError, Result};

/// A constant diagonal metric `diag(±1, …, ±1)` with an orientation.
///
/// `label_base` is the index used when printing the first axis: Euclidean
/// frames print `e1 … en`, spacetime frames print `x0` for the time axis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Metric {
    signature: Vec<i8>,
    orientation: i8,
    label_base: usize,
}

impl Metric {
    pub fn new(signature: Vec<i8>, orientation: i8) -> Result<Self> {
        if signature.is_empty() || signature.len() > crate::algebra::MAX_DIM {
            return Err(Error::UnsupportedDimension(signature.len()));
        }
        if signature.iter().any(|s| *s != 1 && *s != -1) {
            return Err(ParseError::new("signature entries must be +1 or -1").into());
        }
        if orientation != 1 && orientation != -1 {
            return Err(ParseError::new("orientation must be +1 or -1").into());
        }
        let definite = signature.iter().all(|s| *s == signature[0]);
        Ok(Self { signature, orientation, label_base: if definite { 1 } else { 0 } })
    }

    pub fn euclidean(dim: usize) -> Self {
        Self::new(vec![1; dim], 1).expect("valid dimension")
    }

    /// `diag(+1, −1, −1, −1)` on `(x0, x1, x2, x3)` with `x0` timelike.
    pub fn minkowski() -> Self {
        Self::new(vec![1, -1, -1, -1], 1).expect("valid signature")
    }

    /// Parses `"+---"`, `"+++"`, … .
    pub fn from_signature(text: &str) -> Result<Self> {
        let signature = text
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(ParseError::new(format!("invalid signature character '{other}' in \"{text}\""))),
            })
            .collect::<std::result::Result<Vec<i8>, _>>()?;
        Self::new(signature, 1)
    }

    pub fn with_orientation(mut self, orientation: i8) -> Result<Self> {
        if orientation != 1 && orientation != -1 {
            return Err(ParseError::new("orientation must be +1 or -1").into());
        }
        self.orientation = orientation;
        Ok(self)
    }

    /// Overrides the printed label of the first axis.
    pub fn with_label_base(mut self, base: usize) -> Self {
        self.label_base = base;
        self
    }

    pub fn dim(&self) -> usize {
        self.signature.len()
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn label_base(&self) -> usize {
        self.label_base
    }

    /// `g_{ii}` for the 0-based axis `axis`.
    pub fn entry(&self, axis: usize) -> i32 {
        self.signature[axis] as i32
    }

    /// `sign(det g)`.
    pub fn det_sign(&self) -> i32 {
        self.signature.iter().map(|s| *s as i32).product()
    }

    /// `√|det g|`, exactly 1 in an orthonormal frame.
    pub fn sqrt_abs_det(&self) -> Scalar {
        Scalar::one()
    }

    pub fn is_riemannian(&self) -> bool {
        self.signature.iter().all(|s| *s == 1)
    }

    /// Product of the signature entries over the blade's indices; the factor
    /// picked up by raising (or lowering) all its indices.
    pub fn blade_sign(&self, blade: Blade) -> i32 {
        let mut sign = 1;
        let mut rest = blade.mask();
        while rest != 0 {
            sign *= self.entry(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        sign
    }

    /// Star of a single unit blade: `*e_I = sign · e_J`.
    pub fn star_blade(&self, blade: Blade) -> (i32, Blade) {
        (self.orientation as i32 * self.blade_sign(blade) * blade.complement_sign(), blade.dual())
    }

    /// Inverse star of a single unit blade.
    pub fn star_inverse_blade(&self, blade: Blade) -> (i32, Blade) {
        let k = blade.grade();
        let n = self.dim();
        let (s, target) = self.star_blade(blade);
        (s * double_star_sign_raw(n - k, n, self.det_sign()), target)
    }

    pub fn blade_label(&self, blade: Blade, symbol: &str) -> String {
        blade.label(symbol, self.label_base)
    }

    fn check(&self, mv: &Multivector) -> Result<()> {
        if mv.dim() != self.dim() {
            Err(Error::DimensionMismatch { left: mv.dim(), right: self.dim() })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Metric(\"{self}\", orientation {:+})", self.orientation)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signature {
            f.write_str(if *s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// `ε_{i1…ik}` on 1-based indices: the permutation sign when the sequence is
/// a permutation of `1..=n`, else 0.
pub fn epsilon(indices: &[usize], n: usize) -> Result<i32> {
    if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::IndexOutOfRange { index: bad, dim: n });
    }
    if indices.len() != n {
        return Ok(0);
    }
    Ok(match Blade::from_unordered(indices, n)? {
        Some((sign, _)) => sign,
        None => 0,
    })
}

/// Raises every index with `g^{ij}`; for a ±1 diagonal metric this is a sign
/// per blade.
pub fn raise(mv: &Multivector, g: &Metric) -> Result<Multivector> {
    g.check(mv)?;
    Ok(mv.map_blades(|b| (g.blade_sign(b), b)))
}

/// Lowers every index with `g_{ij}`; identical to [`raise`] for ±1 entries.
pub fn lower(mv: &Multivector, g: &Metric) -> Result<Multivector> {
    raise(mv, g)
}

/// The Hodge star, applied grade by grade.
pub fn hodge_star(p: &Multivector, g: &Metric) -> Result<Multivector> {
    g.check(p)?;
    Ok(p.map_blades(|b| g.star_blade(b)))
}

/// Inverse of [`hodge_star`].
pub fn hodge_star_inverse(p: &Multivector, g: &Metric) -> Result<Multivector> {
    g.check(p)?;
    Ok(p.map_blades(|b| g.star_inverse_blade(b)))
}

fn double_star_sign_raw(k: usize, n: usize, det_sign: i32) -> i32 {
    if (k * (n - k)).is_multiple_of(2) {
        det_sign
    } else {
        -det_sign
    }
}

/// `sign(det g) · (−1)^{k(n−k)}`, the scalar with `** = sign · id` on grade k.
pub fn double_star_sign(k: Grade, g: &Metric) -> i32 {
    double_star_sign_raw(k.get(), g.dim(), g.det_sign())
}

/// The duality pairing: coefficient of the volume form `√|g| e1∧…∧en` in
/// `α ∧ β`. Grade pairs not summing to `n` contribute nothing.
pub fn pairing(alpha: &Multivector, beta: &Multivector, g: &Metric) -> Result<Scalar> {
    g.check(alpha)?;
    g.check(beta)?;
    let n = g.dim();
    let mut total = Scalar::zero();
    for (a, ca) in alpha.terms() {
        for (b, cb) in beta.terms() {
            if a.grade() + b.grade() != n {
                continue;
            }
            if let Some((s, _)) = a.wedge(*b) {
                let c = ca * cb;
                total += if s < 0 { -c } else { c };
            }
        }
    }
    Ok(total / g.sqrt_abs_det())
}

/// Minkowski's dual matrix `f*_{ij} = sg(ijkl) f_{kl}`: a pure index swap with
/// the permutation sign, no metric factors. Requires `n = 4`, grade 2.
pub fn minkowski_dual(f: &Multivector) -> Result<Multivector> {
    if f.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, found: f.dim() });
    }
    if !f.is_pure_grade(2) {
        return Err(Error::WrongGrade { expected: "2".into(), found: format!("{:?}", f.grades()) });
    }
    Ok(f.map_blades(|b| {
        let (i, j) = (b.indices()[0], b.indices()[1]);
        let rest = b.dual();
        let (k, l) = (rest.indices()[0], rest.indices()[1]);
        (epsilon(&[i, j, k, l], 4).expect("indices in range"), rest)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn mv(s: &str, n: usize) -> Multivector {
        Multivector::parse(s, n).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&[1, 2, 3, 4], 4).unwrap(), 1);
        assert_eq!(epsilon(&[2, 1, 3, 4], 4).unwrap(), -1);
        assert_eq!(epsilon(&[1, 1, 3, 4], 4).unwrap(), 0);
        assert_eq!(epsilon(&[1, 2, 3], 4).unwrap(), 0);
        assert!(epsilon(&[1, 2, 3, 5], 4).is_err());
    }

    #[test]
    fn raise_examples() {
        let e = Metric::euclidean(4);
        let a = mv("3*e1^e2 - 1/2*e3 + 7", 4);
        assert_eq!(raise(&a, &e).unwrap(), a);

        let m = Metric::minkowski();
        let spatial = Multivector::parse_labeled("5*dx1^dx2", 4, "dx", 0).unwrap();
        assert_eq!(raise(&spatial, &m).unwrap(), spatial);
        let mixed = Multivector::parse_labeled("5*dx0^dx1", 4, "dx", 0).unwrap();
        assert_eq!(raise(&mixed, &m).unwrap(), -mixed.clone());
        assert_eq!(raise(&raise(&mixed, &m).unwrap(), &m).unwrap(), mixed);
        assert!(raise(&mv("e1", 3), &m).is_err());
    }

    #[test]
    fn star_examples() {
        let e3 = Metric::euclidean(3);
        assert_eq!(hodge_star(&mv("e1", 3), &e3).unwrap(), mv("e2^e3", 3));

        let m = Metric::minkowski();
        for b in Blade::of_grade(4, 2) {
            let p = Multivector::from_blade(b, int(3));
            assert_eq!(hodge_star(&hodge_star(&p, &m).unwrap(), &m).unwrap(), -p);
        }

        for sig in ["+++", "+---", "-+", "+-+-+"] {
            for orientation in [1, -1] {
                let g = Metric::from_signature(sig).unwrap().with_orientation(orientation).unwrap();
                let n = g.dim();
                let o = int(orientation as i64);
                assert_eq!(
                    hodge_star(&Multivector::one(n), &g).unwrap(),
                    Multivector::pseudoscalar(n).scale(&o)
                );
                assert_eq!(
                    hodge_star(&Multivector::pseudoscalar(n), &g).unwrap(),
                    Multivector::one(n).scale(&(o * int(g.det_sign() as i64)))
                );
            }
        }
    }

    #[test]
    fn double_star_sign_examples() {
        let k2 = Grade::new(2, 4).unwrap();
        assert_eq!(double_star_sign(k2, &Metric::euclidean(4)), 1);
        assert_eq!(double_star_sign(k2, &Metric::minkowski()), -1);
        for k in 0..=3 {
            assert_eq!(double_star_sign(Grade::new(k, 3).unwrap(), &Metric::euclidean(3)), 1);
        }
    }

    #[test]
    fn star_inverse_inverts() {
        for sig in ["+", "--", "+-+", "+---", "-+-+-"] {
            let g = Metric::from_signature(sig).unwrap();
            for b in Blade::all(g.dim()) {
                let p = Multivector::from_blade(b, int(2));
                assert_eq!(hodge_star_inverse(&hodge_star(&p, &g).unwrap(), &g).unwrap(), p);
            }
        }
    }

    #[test]
    fn orientation_reversal_flips_star() {
        let g = Metric::minkowski();
        let h = g.clone().with_orientation(-1).unwrap();
        let p = mv("e1 + 2*e1^e3 - e2^e3^e4", 4);
        assert_eq!(hodge_star(&p, &h).unwrap(), -hodge_star(&p, &g).unwrap());
    }

    #[test]
    fn pairing_examples() {
        let g4 = Metric::euclidean(4);
        assert_eq!(pairing(&mv("e1^e2", 4), &mv("e3^e4", 4), &g4).unwrap(), int(1));
        assert_eq!(pairing(&mv("e1^e2", 4), &mv("e1^e3", 4), &g4).unwrap(), int(0));
        assert_eq!(pairing(&mv("e1", 4), &mv("e1^e3", 4), &g4).unwrap(), int(0));
        let g3 = Metric::euclidean(3);
        let e1 = mv("e1", 3);
        assert_eq!(pairing(&e1, &hodge_star(&e1, &g3).unwrap(), &g3).unwrap(), int(1));
    }

    #[test]
    fn minkowski_dual_examples() {
        assert_eq!(minkowski_dual(&mv("e1^e2", 4)).unwrap(), mv("e3^e4", 4));
        assert_eq!(minkowski_dual(&mv("e1^e3", 4)).unwrap(), mv("-e2^e4", 4));
        assert!(minkowski_dual(&mv("e1", 4)).is_err());
        assert!(minkowski_dual(&mv("e1^e2", 3)).is_err());
    }

    #[test]
    fn minkowski_dual_is_involutive_on_all_basis_bivectors() {
        // each basis 2-blade is swapped with its complementary pair twice;
        // sg(ijkl) * sg(klij) = +1 since moving a pair past a pair is even
        for b in Blade::of_grade(4, 2) {
            let f = Multivector::from_blade(b, int(1));
            let once = minkowski_dual(&f).unwrap();
            let (i, j) = (b.indices()[0], b.indices()[1]);
            let rest = b.dual().indices();
            let s1 = epsilon(&[i, j, rest[0], rest[1]], 4).unwrap();
            let s2 = epsilon(&[rest[0], rest[1], i, j], 4).unwrap();
            assert_eq!(s1 * s2, 1);
            assert_eq!(minkowski_dual(&once).unwrap(), f);
        }
    }

    #[test]
    fn signature_parsing() {
        assert_eq!(Metric::from_signature("+---").unwrap(), Metric::minkowski());
        assert_eq!(Metric::from_signature("+++").unwrap(), Metric::euclidean(3));
        assert!(Metric::from_signature("+-+?").is_err());
        assert!(Metric::from_signature("").is_err());
        assert_eq!(Metric::minkowski().to_string(), "+---");
        assert_eq!(Metric::minkowski().label_base(), 0);
        assert_eq!(Metric::euclidean(3).label_base(), 1);
    }
}
