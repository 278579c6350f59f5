//! Differential forms with polynomial coefficients on a flat chart of ℝⁿ.
//!
//! A [`PolyForm`] is `Σ_I P_I(x) dx^I` over canonical ascending blades, tied
//! to a constant diagonal [`Metric`]. Exterior derivative, star, codifferential
//! and Laplacian are all exact.
//!
//! Sign convention (the only place it is fixed): on a `p`-form in dimension
//! `n` with `s = sign(det g)`,
//!
//! ```text
//! δ   = s · (−1)^{n(p+1)+1} · * d *
//! Δ_H = d δ + δ d
//! ```
//!
//! so `δ` is the formal adjoint of `d` and `Δ_H` is positive semidefinite in
//! Riemannian signature: on Euclidean scalars `Δ_H f = −Σ ∂_j² f`, and on
//! every form it acts componentwise as `−Σ_j g^{jj} ∂_j²`. For Riemannian
//! metrics this operator is exactly the negative of
//! `(−1)^{(p+1)n} d(*d*) + (−1)^{pn} (*d*)d`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{One, Zero};

use crate::algebra::{int, Blade, Multivector, Scalar};
use crate::error::{Error, ParseError, Result};
use crate::grammar;
use crate::metric::Metric;
use crate::poly::Polynomial;

/// A differential form with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    metric: Metric,
    terms: BTreeMap<Blade, Polynomial>,
}

impl PolyForm {
    pub fn zero(metric: &Metric) -> Self {
        Self { metric: metric.clone(), terms: BTreeMap::new() }
    }

    /// A 0-form.
    pub fn function(metric: &Metric, f: Polynomial) -> Self {
        Self::monomial_form(metric, Blade::scalar(metric.dim()), f)
    }

    pub fn monomial_form(metric: &Metric, blade: Blade, coefficient: Polynomial) -> Self {
        let mut out = Self::zero(metric);
        out.add_term(blade, coefficient);
        out
    }

    /// The constant form with the multivector's coefficients.
    pub fn constant(metric: &Metric, mv: &Multivector) -> Result<Self> {
        if mv.dim() != metric.dim() {
            return Err(Error::DimensionMismatch { left: mv.dim(), right: metric.dim() });
        }
        let mut out = Self::zero(metric);
        for (b, c) in mv.terms() {
            out.add_term(*b, Polynomial::constant(metric.dim(), c.clone()));
        }
        Ok(out)
    }

    /// `Σ_i a_i dx^i` from component polynomials.
    pub fn one_form(metric: &Metric, components: &[Polynomial]) -> Result<Self> {
        if components.len() != metric.dim() {
            return Err(Error::DimensionMismatch { left: components.len(), right: metric.dim() });
        }
        let mut out = Self::zero(metric);
        for (i, a) in components.iter().enumerate() {
            out.add_term(Blade::from_mask(1 << i, metric.dim()), a.clone());
        }
        Ok(out)
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: &Blade) -> Polynomial {
        self.terms.get(blade).cloned().unwrap_or_else(|| Polynomial::zero(self.dim()))
    }

    /// Coefficient of `dx^{i1} ∧ …` for 0-based axes in any order, with the
    /// reordering sign; zero on repeated axes.
    pub fn component(&self, axes: &[usize]) -> Polynomial {
        let one_based: Vec<usize> = axes.iter().map(|a| a + 1).collect();
        match Blade::from_unordered(&one_based, self.dim()).expect("axes inside the chart") {
            None => Polynomial::zero(self.dim()),
            Some((s, b)) => self.coefficient(&b).scale(&int(s as i64)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        g.dedup();
        g
    }

    pub fn is_pure_grade(&self, k: usize) -> bool {
        self.terms.keys().all(|b| b.grade() == k)
    }

    pub fn grade_part(&self, k: usize) -> Self {
        Self {
            metric: self.metric.clone(),
            terms: self.terms.iter().filter(|(b, _)| b.grade() == k).map(|(b, p)| (*b, p.clone())).collect(),
        }
    }

    pub fn add_term(&mut self, blade: Blade, coefficient: Polynomial) {
        assert_eq!(blade.dim(), self.dim(), "blade outside the chart");
        if coefficient.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&blade) {
            Some(existing) => &existing + &coefficient,
            None => coefficient,
        };
        if !sum.is_zero() {
            self.terms.insert(blade, sum);
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        self.map_coefficients(|p| p.scale(factor))
    }

    /// Multiplies every coefficient by a function.
    pub fn mul_function(&self, f: &Polynomial) -> Self {
        self.map_coefficients(|p| p * f)
    }

    fn map_coefficients(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(&self.metric);
        for (b, p) in &self.terms {
            out.add_term(*b, f(p));
        }
        out
    }

    /// Applies a signed blade map `e_I ↦ s · e_J` to every term.
    pub fn map_blades(&self, mut f: impl FnMut(Blade) -> (i32, Blade)) -> Self {
        let mut out = Self::zero(&self.metric);
        for (b, p) in &self.terms {
            let (s, target) = f(*b);
            if s != 0 {
                out.add_term(target, p.scale(&int(s as i64)));
            }
        }
        out
    }

    fn same_chart(&self, other: &Self) -> Result<()> {
        if self.metric != other.metric {
            Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() })
        } else {
            Ok(())
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.same_chart(other)?;
        let mut out = Self::zero(&self.metric);
        for (a, pa) in &self.terms {
            for (b, pb) in &other.terms {
                if let Some((s, blade)) = a.wedge(*b) {
                    out.add_term(blade, (pa * pb).scale(&int(s as i64)));
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative `d(Σ P_I dx^I) = Σ_I Σ_j ∂_j P_I dx^j ∧ dx^I`.
    pub fn d(&self) -> Self {
        let n = self.dim();
        let mut out = Self::zero(&self.metric);
        for (blade, p) in &self.terms {
            for j in 0..n {
                let dp = p.derivative(j);
                if dp.is_zero() {
                    continue;
                }
                if let Some((s, target)) = Blade::from_mask(1 << j, n).wedge(*blade) {
                    out.add_term(target, dp.scale(&int(s as i64)));
                }
            }
        }
        out
    }

    /// The Hodge star of the attached metric, coefficient-wise.
    pub fn star(&self) -> Self {
        let g = self.metric.clone();
        self.map_blades(|b| g.star_blade(b))
    }

    pub fn star_inverse(&self) -> Self {
        let g = self.metric.clone();
        self.map_blades(|b| g.star_inverse_blade(b))
    }

    /// `δ = s · (−1)^{n(p+1)+1} * d *` on each grade `p`; scalars map to 0.
    pub fn codifferential(&self) -> Self {
        let n = self.dim();
        let s = self.metric.det_sign();
        let mut out = Self::zero(&self.metric);
        for p in self.grades() {
            if p == 0 {
                continue;
            }
            let sign = if (n * (p + 1) + 1).is_multiple_of(2) { s } else { -s };
            out = &out + &self.grade_part(p).star().d().star().scale(&int(sign as i64));
        }
        out
    }

    /// `Δ_H = dδ + δd`.
    pub fn hodge_laplacian(&self) -> Self {
        &self.codifferential().d() + &self.d().codifferential()
    }

    /// Flat-chart divergence `(div P)_{i1…i(p−1)} = Σ_j g^{jj} ∂_j P_{i1…i(p−1) j}`.
    ///
    /// For constant diagonal metrics `δP = (−1)^p div P`, so `d(*P) = 0` iff
    /// `div P = 0`.
    pub fn divergence(&self) -> Self {
        let n = self.dim();
        let mut out = Self::zero(&self.metric);
        for (blade, p) in &self.terms {
            let mut rest = blade.mask();
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let front = Blade::from_mask(blade.mask() & !(1 << j), n);
                let unit = Blade::from_mask(1 << j, n);
                // P_{front, j} = sign · P_blade
                let (s, _) = front.wedge(unit).expect("disjoint");
                let coeff = p.derivative(j).scale(&int((s * self.metric.entry(j)) as i64));
                out.add_term(front, coeff);
            }
        }
        out
    }

    /// Evaluates every coefficient at a point, giving a constant multivector.
    pub fn eval(&self, point: &[Scalar]) -> Multivector {
        let mut mv = Multivector::zero(self.dim());
        for (b, p) in &self.terms {
            mv.add_term(*b, p.eval(point));
        }
        mv
    }

    /// Sum of absolute values of all coefficients of all terms.
    pub fn l1_norm(&self) -> Scalar {
        self.terms.values().map(|p| p.l1_norm()).fold(Scalar::zero(), |a, b| a + b)
    }

    /// Parses `P = (x1)*dx0^dx1 + (2)*dx2^dx3`. The `NAME =` prefix is
    /// optional; blade indices must be strictly ascending.
    pub fn parse(text: &str, metric: &Metric) -> Result<Self> {
        let body = match text.split_once('=') {
            Some((name, rest)) if name.trim().chars().all(|c| c.is_alphanumeric() || c == '_') => rest,
            Some(_) => return Err(ParseError::new("malformed name before '='").into()),
            None => text,
        };
        let n = metric.dim();
        let base = metric.label_base();
        let mut out = Self::zero(metric);
        for (negative, term) in grammar::split_terms(body)? {
            let mut coefficient = Polynomial::one(n);
            let mut blade: Option<Blade> = None;
            for factor in grammar::split_factors(&term)? {
                if factor.starts_with("dx") {
                    if blade.is_some() {
                        return Err(ParseError::new(format!("more than one blade in term '{term}'")).into());
                    }
                    let mv = Multivector::parse_labeled(factor, n, "dx", base)?;
                    let (b, _) = mv.terms().next().expect("one blade");
                    blade = Some(*b);
                } else {
                    coefficient = &coefficient * &Polynomial::parse(factor, n, base)?;
                }
            }
            if negative {
                coefficient = -&coefficient;
            }
            out.add_term(blade.unwrap_or(Blade::scalar(n)), coefficient);
        }
        Ok(out)
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let base = self.metric.label_base();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, p)| {
                let coeff = format!("({})", p.to_labeled(base));
                if b.grade() == 0 {
                    coeff
                } else {
                    format!("{coeff}*{}", b.label("dx", base))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyForm[{}]({self})", self.metric)
    }
}

impl Add for &PolyForm {
    type Output = PolyForm;

    fn add(self, rhs: &PolyForm) -> PolyForm {
        assert_eq!(self.metric, rhs.metric, "forms live on different charts");
        let mut out = self.clone();
        for (b, p) in &rhs.terms {
            out.add_term(*b, p.clone());
        }
        out
    }
}

impl Neg for &PolyForm {
    type Output = PolyForm;

    fn neg(self) -> PolyForm {
        self.scale(&-Scalar::one())
    }
}

impl Sub for &PolyForm {
    type Output = PolyForm;

    fn sub(self, rhs: &PolyForm) -> PolyForm {
        self + &(-rhs)
    }
}

/// `Σ_i g^{ii} ∂_i² f`; the `√|det g|` factors are constant 1 here.
pub fn beltrami_laplace(f: &Polynomial, g: &Metric) -> Polynomial {
    let mut out = Polynomial::zero(f.nvars());
    for i in 0..g.dim() {
        let second = f.derivative(i).derivative(i);
        out = &out + &second.scale(&int(g.entry(i) as i64));
    }
    out
}

/// Residuals of Hodge's two harmonicity conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicCheck {
    /// `dP`
    pub closed_residual: PolyForm,
    /// `d(*P)`
    pub coclosed_residual: PolyForm,
}

impl HarmonicCheck {
    pub fn is_harmonic(&self) -> bool {
        self.closed_residual.is_zero() && self.coclosed_residual.is_zero()
    }
}

/// Checks `dP = 0` and `d(*P) = 0` exactly.
pub fn is_harmonic_hodge(p: &PolyForm) -> HarmonicCheck {
    HarmonicCheck { closed_residual: p.d(), coclosed_residual: p.star().d() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize) -> Metric {
        Metric::euclidean(n)
    }

    fn form(s: &str, g: &Metric) -> PolyForm {
        PolyForm::parse(s, g).unwrap()
    }

    #[test]
    fn d_examples() {
        let g = e(3);
        assert_eq!(form("x1*dx2", &g).d(), form("dx1^dx2", &g));
        assert_eq!(form("x1*x2*dx3", &g).d(), form("x2*dx1^dx3 + x1*dx2^dx3", &g));
        let w = form("x1^2*x3*dx1 + (x2 - x3^3)*dx2^dx3 + x1*x2*x3", &g);
        assert!(w.d().d().is_zero());
    }

    #[test]
    fn codifferential_examples() {
        let g = e(3);
        assert!(form("x1^2 + x2", &g).codifferential().is_zero());
        // δα = −div A for α = A_i dx^i
        let alpha = form("x1^2*x2*dx1 + x3*dx2 + x1*x3^2*dx3", &g);
        let div = Polynomial::parse("2*x1*x2 + 2*x1*x3", 3, 1).unwrap();
        assert_eq!(alpha.codifferential(), PolyForm::function(&g, -&div));
        assert!(alpha.codifferential().codifferential().is_zero());
    }

    #[test]
    fn laplacian_examples() {
        let g = e(3);
        assert_eq!(form("x1^2", &g).hodge_laplacian(), form("-2", &g));
        assert!(form("x1*x2*dx3", &g).hodge_laplacian().is_zero());
    }

    #[test]
    fn beltrami_examples() {
        let p2 = Polynomial::parse("x1^2 + x2^2", 2, 1).unwrap();
        assert_eq!(beltrami_laplace(&p2, &e(2)), Polynomial::constant(2, int(4)));
        let m = Metric::minkowski();
        let t2 = Polynomial::parse("x0^2", 4, 0).unwrap();
        let x2 = Polynomial::parse("x1^2", 4, 0).unwrap();
        assert_eq!(beltrami_laplace(&t2, &m), Polynomial::constant(4, int(2)));
        assert_eq!(beltrami_laplace(&x2, &m), Polynomial::constant(4, int(-2)));
        assert!(beltrami_laplace(&Polynomial::constant(4, int(5)), &m).is_zero());
    }

    #[test]
    fn harmonic_examples() {
        let g2 = e(2);
        assert!(is_harmonic_hodge(&form("dx1^dx2", &g2)).is_harmonic());

        let g3 = e(3);
        let check = is_harmonic_hodge(&form("x1*dx1", &g3));
        assert!(check.closed_residual.is_zero());
        assert_eq!(check.coclosed_residual, form("dx1^dx2^dx3", &g3));
        assert!(!check.is_harmonic());

        let check = is_harmonic_hodge(&form("x2*dx1 + x1*dx2", &g2));
        assert!(check.is_harmonic());
        assert_eq!(form("x2*dx1 + x1*dx2", &g2).star(), form("x2*dx2 - x1*dx1", &g2));
    }

    #[test]
    fn parse_rejects_bad_blades() {
        let g = Metric::minkowski();
        assert!(PolyForm::parse("x1*dx1^dx0", &g).is_err());
        assert!(PolyForm::parse("x1*dx1^dx1", &g).is_err());
        assert!(PolyForm::parse("dx0*dx1", &g).is_err());
        let f = form("P = (x1)*dx0^dx1 + (2)*dx2^dx3", &g);
        assert_eq!(f.to_string(), "(x1)*dx0^dx1 + (2)*dx2^dx3");
        assert_eq!(form(&f.to_string(), &g), f);
    }

    #[test]
    fn component_handles_order() {
        let g = e(3);
        let f = form("x1*dx1^dx3", &g);
        assert_eq!(f.component(&[2, 0]), Polynomial::parse("-x1", 3, 1).unwrap());
        assert!(f.component(&[0, 0]).is_zero());
    }
}
