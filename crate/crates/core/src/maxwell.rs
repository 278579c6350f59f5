//! Maxwell's equations in four historical formulations, checked exactly on
//! polynomial field configurations.
//!
//! # Conventions
//!
//! The chart is `(x0, x1, x2, x3)` with `x0 = c·t` timelike and metric
//! `diag(+1, −1, −1, −1)`, positive orientation `dx0∧dx1∧dx2∧dx3`. With
//! `x0 = c·t` the classical `(1/c) ∂_t` is simply `∂_0`.
//!
//! Cartan wrote time last, `[dx_i dt]`. The translation used here:
//!
//! | object | spatial part (cyclic `ijk`) | time part |
//! |--------|-----------------------------|-----------|
//! | `F` (field strength) | `B_i dx_j∧dx_k` | `E_i dx_i∧dx0` |
//! | `G` (excitation, Kottler's Maxwell tensor) | `D_i dx_j∧dx_k` | `H_i dx0∧dx_i` |
//! | `S` (current 3-form) | `ρ dx1∧dx2∧dx3` | `−J_i dx0∧dx_j∧dx_k` |
//!
//! so `F_{12} = B_3`, `F_{13} = −B_2`, `F_{23} = B_1`, `F_{0i} = −E_i`. The
//! time part of `G` carries the opposite orientation to that of `F`: this is
//! what makes the vacuum relation `G = *F` hold for `(D, H) = (E, B)` and
//! makes `dG = S` reproduce `div D = ρ`, `curl H − ∂_0 D = J`. The current
//! 3-form is `S = *j` for the covariant four-current `j = ρ dx0 − J_i dx^i`.
//!
//! Units: Heaviside–Lorentz by default. The Gaussian toggle multiplies every
//! source by `4π`. Since `π` is irrational, a residual is kept as a rational
//! part plus a `π` part, and vanishes only if both do.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{int, Blade, Multivector, Scalar};
use crate::error::{Error, ParseError, Result};
use crate::forms::PolyForm;
use crate::metric::{epsilon, Metric};
use crate::poly::Polynomial;

const DIM: usize = 4;

fn chart() -> Metric {
    Metric::minkowski()
}

fn axis_blade(axes: &[usize]) -> Blade {
    let one_based: Vec<usize> = axes.iter().map(|a| a + 1).collect();
    Blade::new(&one_based, DIM).expect("ascending axes")
}

/// Cyclic triples `(i, j, k)` of the spatial axes.
const CYCLIC: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

/// Adds `c · dx_a ∧ dx_b` for axes in any order.
fn add_pair(form: &mut PolyForm, a: usize, b: usize, c: &Polynomial) {
    let (s, blade) = if a < b { (1, axis_blade(&[a, b])) } else { (-1, axis_blade(&[b, a])) };
    form.add_term(blade, c.scale(&int(s)));
}

/// Physical constants; only `mu0` and the `4π` toggle enter the equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    pub c: Scalar,
    pub mu0: Scalar,
    pub eps0: Scalar,
    pub gaussian_4pi: bool,
}

impl Default for Constants {
    fn default() -> Self {
        Self { c: Scalar::one(), mu0: Scalar::one(), eps0: Scalar::one(), gaussian_4pi: false }
    }
}

impl Constants {
    pub fn source_factor(&self) -> SourceFactor {
        if self.gaussian_4pi {
            SourceFactor::FourPi
        } else {
            SourceFactor::One
        }
    }
}

/// The factor in front of every source term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SourceFactor {
    One,
    FourPi,
}

/// Electromagnetic data on the chart `(x0, x1, x2, x3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldConfig {
    pub e: [Polynomial; 3],
    pub b: [Polynomial; 3],
    pub d: [Polynomial; 3],
    pub h: [Polynomial; 3],
    pub rho: Polynomial,
    pub j: [Polynomial; 3],
    pub constants: Constants,
}

fn zero3() -> [Polynomial; 3] {
    [Polynomial::zero(DIM), Polynomial::zero(DIM), Polynomial::zero(DIM)]
}

impl FieldConfig {
    /// All fields zero, default constants.
    pub fn vacuum() -> Self {
        Self {
            e: zero3(),
            b: zero3(),
            d: zero3(),
            h: zero3(),
            rho: Polynomial::zero(DIM),
            j: zero3(),
            constants: Constants::default(),
        }
    }

    /// Sets `D = ε0 E` and `H = B / μ0`.
    pub fn with_vacuum_excitation(mut self) -> Self {
        let inv_mu = Scalar::one() / &self.constants.mu0;
        self.d = self.e.clone().map(|p| p.scale(&self.constants.eps0));
        self.h = self.b.clone().map(|p| p.scale(&inv_mu));
        self
    }

    /// Parses the sectioned text format:
    ///
    /// ```text
    /// [E]
    /// 1 = 2*x1
    /// [rho]
    /// 2
    /// [constants]
    /// mu0 = 1
    /// gaussian_4pi = false
    /// ```
    ///
    /// Components are named `1|2|3` or `x|y|z`; omitted ones are zero. A
    /// missing `[D]` defaults to `ε0 E`, a missing `[H]` to `B / μ0`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::vacuum();
        let mut section: Option<String> = None;
        let mut seen: Vec<String> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.trim().to_string();
                if !["E", "B", "D", "H", "rho", "J", "constants"].contains(&name.as_str()) {
                    return Err(ParseError::at(lineno, format!("unknown section [{name}]")).into());
                }
                if seen.contains(&name) {
                    return Err(ParseError::at(lineno, format!("duplicate section [{name}]")).into());
                }
                seen.push(name.clone());
                section = Some(name);
                continue;
            }
            let Some(sec) = section.as_deref() else {
                return Err(ParseError::at(lineno, "entry before any section").into());
            };
            let at = |e: Error| match e {
                Error::Parse(p) => Error::Parse(p.with_line(lineno)),
                other => other,
            };
            match sec {
                "rho" => {
                    let expr = line.strip_prefix("rho").map(|r| r.trim_start().trim_start_matches('=')).unwrap_or(line);
                    cfg.rho = Polynomial::parse(expr, DIM, 0).map_err(at)?;
                }
                "constants" => {
                    let (key, value) = line
                        .split_once('=')
                        .ok_or_else(|| ParseError::at(lineno, "expected 'key = value'"))?;
                    let value = value.trim();
                    let rational = || {
                        crate::grammar::parse_rational(value)
                            .ok_or_else(|| ParseError::at(lineno, format!("expected a rational, found '{value}'")))
                    };
                    match key.trim() {
                        "c" => cfg.constants.c = rational()?,
                        "mu0" => cfg.constants.mu0 = rational()?,
                        "eps0" => cfg.constants.eps0 = rational()?,
                        "gaussian_4pi" => {
                            cfg.constants.gaussian_4pi = match value {
                                "true" | "1" => true,
                                "false" | "0" => false,
                                _ => return Err(ParseError::at(lineno, format!("expected true/false, found '{value}'")).into()),
                            }
                        }
                        other => return Err(ParseError::at(lineno, format!("unknown constant '{other}'")).into()),
                    }
                    for (name, v) in [("c", &cfg.constants.c), ("mu0", &cfg.constants.mu0), ("eps0", &cfg.constants.eps0)] {
                        if v.is_zero() {
                            return Err(ParseError::at(lineno, format!("{name} must be nonzero")).into());
                        }
                    }
                }
                vector => {
                    let (key, value) = line
                        .split_once('=')
                        .ok_or_else(|| ParseError::at(lineno, "expected '<component> = <polynomial>'"))?;
                    let idx = match key.trim() {
                        "1" | "x" => 0,
                        "2" | "y" => 1,
                        "3" | "z" => 2,
                        other => return Err(ParseError::at(lineno, format!("unknown component '{other}'")).into()),
                    };
                    let poly = Polynomial::parse(value, DIM, 0).map_err(at)?;
                    let target = match vector {
                        "E" => &mut cfg.e,
                        "B" => &mut cfg.b,
                        "D" => &mut cfg.d,
                        "H" => &mut cfg.h,
                        _ => &mut cfg.j,
                    };
                    target[idx] = poly;
                }
            }
        }
        let inv_mu = Scalar::one() / &cfg.constants.mu0;
        if !seen.iter().any(|s| s == "D") {
            cfg.d = cfg.e.clone().map(|p| p.scale(&cfg.constants.eps0));
        }
        if !seen.iter().any(|s| s == "H") {
            cfg.h = cfg.b.clone().map(|p| p.scale(&inv_mu));
        }
        Ok(cfg)
    }
}

/// Cartan's `Ω`: the field-strength 2-form.
pub fn assemble_faraday(cfg: &FieldConfig) -> PolyForm {
    let mut f = PolyForm::zero(&chart());
    for (i, j, k) in CYCLIC {
        add_pair(&mut f, j, k, &cfg.b[i - 1]);
        add_pair(&mut f, i, 0, &cfg.e[i - 1]);
    }
    f
}

/// Cartan's `Ω̄` (Kottler's Maxwell tensor): the excitation 2-form.
pub fn assemble_excitation(cfg: &FieldConfig) -> PolyForm {
    let mut g = PolyForm::zero(&chart());
    for (i, j, k) in CYCLIC {
        add_pair(&mut g, j, k, &cfg.d[i - 1]);
        add_pair(&mut g, 0, i, &cfg.h[i - 1]);
    }
    g
}

/// The covariant four-current `j = ρ dx0 − J_i dx^i`.
pub fn current_one_form(cfg: &FieldConfig) -> PolyForm {
    let mut comps = vec![cfg.rho.clone()];
    comps.extend(cfg.j.iter().map(|p| -p));
    PolyForm::one_form(&chart(), &comps).expect("four components")
}

/// The current 3-form `S = ρ dx1∧dx2∧dx3 − Σ J_i dx0∧dx_j∧dx_k = *j`.
pub fn current_three_form(cfg: &FieldConfig) -> PolyForm {
    let mut s = PolyForm::zero(&chart());
    s.add_term(axis_blade(&[1, 2, 3]), cfg.rho.clone());
    for (i, j, k) in CYCLIC {
        let (sign, blade) = if j < k { (-1, axis_blade(&[0, j, k])) } else { (1, axis_blade(&[0, k, j])) };
        s.add_term(blade, cfg.j[i - 1].scale(&int(sign)));
    }
    s
}

/// A residual `rational + π · pi`, exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub rational: PolyForm,
    pub pi: PolyForm,
}

impl Residual {
    pub fn exact(form: PolyForm) -> Self {
        let pi = PolyForm::zero(form.metric());
        Self { rational: form, pi }
    }

    /// `lhs − κ · source`.
    pub fn source(lhs: PolyForm, source: &PolyForm, factor: SourceFactor) -> Self {
        match factor {
            SourceFactor::One => Self::exact(&lhs - source),
            SourceFactor::FourPi => Self { rational: lhs, pi: source.scale(&int(-4)) },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.pi.is_zero()
    }

    /// Sum of absolute values of the coefficients of `rational + π·pi`.
    pub fn norm(&self) -> f64 {
        let mut combined: BTreeMap<(Blade, Vec<u32>), (Scalar, Scalar)> = BTreeMap::new();
        for (b, p) in self.rational.terms() {
            for (e, c) in p.terms() {
                combined.entry((*b, e.clone())).or_default().0 += c;
            }
        }
        for (b, p) in self.pi.terms() {
            for (e, c) in p.terms() {
                combined.entry((*b, e.clone())).or_default().1 += c;
            }
        }
        combined
            .values()
            .map(|(r, p)| (r.to_f64().unwrap_or(f64::NAN) + std::f64::consts::PI * p.to_f64().unwrap_or(f64::NAN)).abs())
            .fold(0.0, |acc, x| acc + x)
    }

    /// Coefficient on one blade, as a residual of 0-forms.
    pub fn component(&self, blade: Blade) -> Residual {
        let g = self.rational.metric();
        Residual {
            rational: PolyForm::function(g, self.rational.coefficient(&blade)),
            pi: PolyForm::function(g, self.pi.coefficient(&blade)),
        }
    }

    pub fn scale(&self, factor: i64) -> Residual {
        Residual { rational: self.rational.scale(&int(factor)), pi: self.pi.scale(&int(factor)) }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi.is_zero() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} + pi*({})", self.rational, self.pi)
        }
    }
}

/// Residuals of Kottler's premetric system `dF = 0`, `dE = S`.
#[derive(Clone, Debug, PartialEq)]
pub struct PremetricResiduals {
    /// `dF`
    pub homogeneous: PolyForm,
    /// `dE − S`
    pub source: PolyForm,
    /// `dS`; must vanish for the source equation to be solvable
    pub continuity: PolyForm,
}

impl PremetricResiduals {
    pub fn vanish(&self) -> bool {
        self.homogeneous.is_zero() && self.source.is_zero()
    }
}

/// `dF = 0`, `dE = S` with no metric consulted.
pub fn check_maxwell_premetric(f: &PolyForm, excitation: &PolyForm, s: &PolyForm) -> Result<PremetricResiduals> {
    expect_grade(f, 2, "F")?;
    expect_grade(excitation, 2, "E")?;
    expect_grade(s, 3, "S")?;
    Ok(PremetricResiduals { homogeneous: f.d(), source: &excitation.d() - s, continuity: s.d() })
}

fn expect_grade(form: &PolyForm, k: usize, name: &str) -> Result<()> {
    if form.dim() != DIM {
        return Err(Error::WrongDimension { expected: DIM, found: form.dim() });
    }
    if !form.is_pure_grade(k) {
        return Err(Error::WrongGrade { expected: format!("{k} for {name}"), found: format!("{:?}", form.grades()) });
    }
    Ok(())
}

/// Residuals of `dF = 0`, `d(μ0⁻¹ *F) = [4π] S`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricResiduals {
    pub homogeneous: Residual,
    pub source: Residual,
    pub continuity: PolyForm,
}

/// The metric formulation with the constitutive relation `G = μ0⁻¹ *F`.
pub fn check_maxwell_metric(f: &PolyForm, cfg: &FieldConfig) -> Result<MetricResiduals> {
    expect_grade(f, 2, "F")?;
    let s = current_three_form(cfg);
    let excitation = constitutive_excitation(f, &cfg.constants);
    Ok(MetricResiduals {
        homogeneous: Residual::exact(f.d()),
        source: Residual::source(excitation.d(), &s, cfg.constants.source_factor()),
        continuity: s.d(),
    })
}

/// `μ0⁻¹ *F`.
pub fn constitutive_excitation(f: &PolyForm, constants: &Constants) -> PolyForm {
    f.star().scale(&(Scalar::one() / &constants.mu0))
}

/// Minkowski's dual matrix applied to a 2-form: `X*_{ij} = sg(ijkl) X_{kl}`.
pub fn minkowski_dual_form(x: &PolyForm) -> Result<PolyForm> {
    expect_grade(x, 2, "X")?;
    Ok(x.map_blades(|b| {
        let mut idx = b.indices();
        idx.extend(b.dual().indices());
        (epsilon(&idx, DIM).expect("in range"), b.dual())
    }))
}

/// Minkowski's matrix divergence `(div X)_i = Σ_j ∂_j X_{ij}`.
pub fn matrix_divergence(x: &PolyForm) -> [Polynomial; 4] {
    std::array::from_fn(|i| {
        (0..DIM).fold(Polynomial::zero(DIM), |acc, j| &acc + &x.component(&[i, j]).derivative(j))
    })
}

/// Reads a 3-form as the array `t_i = ε(i, J) T_J` (`J` the ascending
/// complement of `i`), the component layout of Minkowski's four-vectors.
pub fn three_form_components(t: &PolyForm) -> [Polynomial; 4] {
    std::array::from_fn(|i| {
        let blade = Blade::from_mask(1 << i, DIM);
        let rest = blade.dual();
        t.coefficient(&rest).scale(&int(blade.complement_sign() as i64))
    })
}

/// Generalized (Kottler) complement with respect to a volume coefficient
/// `e_{1234} = vol`: solves `E_{ij} = e_{ijkl} E*^{kl}` (ascending `k<l`) or
/// `S_{ijk} = e_{ijkl} S^l` for the contravariant components.
pub fn kottler_complement(xi: &Multivector, vol: &Scalar) -> Result<Multivector> {
    check_kottler(xi.dim(), &xi.grades(), vol)?;
    Ok(xi.map_blades(|b| (b.complement_sign(), b.dual())).scale(&(Scalar::one() / vol)))
}

/// [`kottler_complement`] on a polynomial form.
pub fn kottler_complement_form(xi: &PolyForm, vol: &Scalar) -> Result<PolyForm> {
    check_kottler(xi.dim(), &xi.grades(), vol)?;
    Ok(xi.map_blades(|b| (b.complement_sign(), b.dual())).scale(&(Scalar::one() / vol)))
}

fn check_kottler(dim: usize, grades: &[usize], vol: &Scalar) -> Result<()> {
    if dim != DIM {
        return Err(Error::WrongDimension { expected: DIM, found: dim });
    }
    if grades.len() > 1 || grades.iter().any(|k| *k != 2 && *k != 3) {
        return Err(Error::WrongGrade { expected: "2 or 3".into(), found: format!("{grades:?}") });
    }
    if vol.is_zero() {
        return Err(Error::ZeroVolume);
    }
    Ok(())
}

/// The four formulations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Classical,
    Minkowski,
    Premetric,
    Metric,
}

impl Formulation {
    pub const ALL: [Formulation; 4] = [Self::Classical, Self::Minkowski, Self::Premetric, Self::Metric];

    pub fn name(self) -> &'static str {
        match self {
            Self::Classical => "classical",
            Self::Minkowski => "minkowski",
            Self::Premetric => "premetric",
            Self::Metric => "metric",
        }
    }
}

impl std::str::FromStr for Formulation {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ParseError::new(format!("unknown formulation '{s}'")))
    }
}

/// One named residual of a formulation.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedResidual {
    pub name: String,
    pub residual: Residual,
}

/// Result of evaluating one formulation on a field configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulationReport {
    pub formulation: Formulation,
    pub residuals: Vec<NamedResidual>,
    /// `dS` (equivalently `∂_0 ρ + div J`).
    pub continuity: Residual,
}

impl FormulationReport {
    pub fn equations_hold(&self) -> bool {
        self.residuals.iter().all(|r| r.residual.is_zero())
    }

    pub fn continuity_holds(&self) -> bool {
        self.continuity.is_zero()
    }

    pub fn passes(&self) -> bool {
        self.equations_hold() && self.continuity_holds()
    }
}

fn named(name: impl Into<String>, residual: Residual) -> NamedResidual {
    NamedResidual { name: name.into(), residual }
}

fn scalar_residual(p: Polynomial) -> Residual {
    Residual::exact(PolyForm::function(&chart(), p))
}

fn curl(v: &[Polynomial; 3]) -> [Polynomial; 3] {
    std::array::from_fn(|a| {
        let (_, j, k) = CYCLIC[a];
        &v[k - 1].derivative(j) - &v[j - 1].derivative(k)
    })
}

fn div(v: &[Polynomial; 3]) -> Polynomial {
    (0..3).fold(Polynomial::zero(DIM), |acc, a| &acc + &v[a].derivative(a + 1))
}

/// Evaluates one formulation.
pub fn evaluate(cfg: &FieldConfig, formulation: Formulation) -> FormulationReport {
    let factor = cfg.constants.source_factor();
    let s = current_three_form(cfg);
    let continuity = Residual::exact(s.d());
    let residuals = match formulation {
        Formulation::Classical => {
            let classical = classical_residuals(cfg);
            let mut out = Vec::new();
            for (a, r) in classical.faraday.into_iter().enumerate() {
                out.push(named(format!("curl E + d0 B [{}]", a + 1), r));
            }
            out.push(named("div B", classical.gauss_b));
            for (a, r) in classical.ampere.into_iter().enumerate() {
                out.push(named(format!("curl H - d0 D - J [{}]", a + 1), r));
            }
            out.push(named("div D - rho", classical.gauss_d));
            out
        }
        Formulation::Minkowski => {
            let f = assemble_faraday(cfg);
            let g = assemble_excitation(cfg);
            let first = matrix_divergence(&minkowski_dual_form(&f).expect("grade 2"));
            let second = matrix_divergence(&minkowski_dual_form(&g).expect("grade 2"));
            let current = three_form_components(&s);
            let mut out = Vec::new();
            for (i, p) in first.into_iter().enumerate() {
                out.push(named(format!("div F* [{i}]"), scalar_residual(p)));
            }
            for (i, p) in second.into_iter().enumerate() {
                let lhs = PolyForm::function(&chart(), p);
                let src = PolyForm::function(&chart(), current[i].clone());
                out.push(named(format!("div f - s [{i}]"), Residual::source(lhs, &src, factor)));
            }
            out
        }
        Formulation::Premetric => {
            let f = assemble_faraday(cfg);
            let g = assemble_excitation(cfg);
            vec![named("dF", Residual::exact(f.d())), named("dE - S", Residual::source(g.d(), &s, factor))]
        }
        Formulation::Metric => {
            let m = check_maxwell_metric(&assemble_faraday(cfg), cfg).expect("F has grade 2");
            vec![named("dF", m.homogeneous), named("d*F - S", m.source)]
        }
    };
    let continuity = match formulation {
        Formulation::Classical => {
            let c = &cfg.rho.derivative(0) + &div(&cfg.j);
            let lhs = PolyForm::function(&chart(), c);
            debug_assert_eq!(lhs.coefficient(&Blade::scalar(DIM)), s.d().coefficient(&Blade::pseudoscalar(DIM)));
            Residual::exact(lhs)
        }
        _ => continuity,
    };
    FormulationReport { formulation, residuals, continuity }
}

/// The four classical vector equations, each as a residual.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalResiduals {
    /// `curl E + ∂_0 B`
    pub faraday: [Residual; 3],
    /// `div B`
    pub gauss_b: Residual,
    /// `curl H − ∂_0 D − [4π] J`
    pub ampere: [Residual; 3],
    /// `div D − [4π] ρ`
    pub gauss_d: Residual,
}

/// Evaluates the classical equations with 3-D vector calculus.
pub fn classical_residuals(cfg: &FieldConfig) -> ClassicalResiduals {
    let factor = cfg.constants.source_factor();
    let fn0 = |p: Polynomial| PolyForm::function(&chart(), p);
    let curl_e = curl(&cfg.e);
    let curl_h = curl(&cfg.h);
    ClassicalResiduals {
        faraday: std::array::from_fn(|a| scalar_residual(&curl_e[a] + &cfg.b[a].derivative(0))),
        gauss_b: scalar_residual(div(&cfg.b)),
        ampere: std::array::from_fn(|a| {
            Residual::source(fn0(&curl_h[a] - &cfg.d[a].derivative(0)), &fn0(cfg.j[a].clone()), factor)
        }),
        gauss_d: Residual::source(fn0(div(&cfg.d)), &fn0(cfg.rho.clone()), factor),
    }
}

/// Term-by-term comparison of the classical equations with the form
/// equations `dF = 0` and `dG = [4π] S`.
#[derive(Clone, Debug, PartialEq)]
pub struct Correspondence {
    pub classical: ClassicalResiduals,
    pub form_homogeneous: Residual,
    pub form_source: Residual,
    /// `(label, agrees)` per matched pair
    pub pairs: Vec<(String, bool)>,
}

impl Correspondence {
    pub fn all_agree(&self) -> bool {
        self.pairs.iter().all(|(_, ok)| *ok)
    }
}

/// Matches `dF` against Faraday's law and `div B = 0`, and `dG − [4π]S`
/// against Ampère–Maxwell and `div D = ρ`.
pub fn classical_correspondence(cfg: &FieldConfig) -> Correspondence {
    let classical = classical_residuals(cfg);
    let factor = cfg.constants.source_factor();
    let df = Residual::exact(assemble_faraday(cfg).d());
    let dg = Residual::source(assemble_excitation(cfg).d(), &current_three_form(cfg), factor);
    let mut pairs = Vec::new();
    let spatial = axis_blade(&[1, 2, 3]);
    pairs.push(("dF[dx1^dx2^dx3] = div B".to_string(), df.component(spatial) == classical.gauss_b));
    pairs.push(("dG - S [dx1^dx2^dx3] = div D - rho".to_string(), dg.component(spatial) == classical.gauss_d));
    for (i, j, k) in CYCLIC {
        let (s, blade) = if j < k { (1, axis_blade(&[0, j, k])) } else { (-1, axis_blade(&[0, k, j])) };
        let f_comp = df.component(blade).scale(s);
        let g_comp = dg.component(blade).scale(s);
        pairs.push((format!("dF[dx0^dx{j}^dx{k}] = (curl E + d0 B)_{i}"), f_comp == classical.faraday[i - 1]));
        pairs.push((
            format!("dG - S [dx0^dx{j}^dx{k}] = -(curl H - d0 D - J)_{i}"),
            g_comp == classical.ampere[i - 1].scale(-1),
        ));
    }
    Correspondence { classical, form_homogeneous: df, form_source: dg, pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, DIM, 0).unwrap()
    }

    fn form(s: &str) -> PolyForm {
        PolyForm::parse(s, &chart()).unwrap()
    }

    fn cfg(text: &str) -> FieldConfig {
        FieldConfig::parse(text).unwrap()
    }

    #[test]
    fn faraday_examples() {
        let c = cfg("[E]\n1 = 1\n");
        assert_eq!(assemble_faraday(&c), form("-dx0^dx1"));
        let c = cfg("[B]\nz = 1\n");
        assert_eq!(assemble_faraday(&c), form("dx1^dx2"));
        assert!(assemble_faraday(&FieldConfig::vacuum()).is_zero());
    }

    #[test]
    fn faraday_components_match_minkowski_layout() {
        let c = cfg("[B]\n1 = x1\n2 = x2\n3 = x3\n");
        let f = assemble_faraday(&c);
        assert_eq!(f.component(&[1, 2]), p("x3"));
        assert_eq!(f.component(&[1, 3]), p("-x2"));
        assert_eq!(f.component(&[2, 3]), p("x1"));
    }

    #[test]
    fn excitation_examples() {
        let c = cfg("[H]\n1 = 1\n[D]\n");
        assert_eq!(assemble_excitation(&c), form("dx0^dx1"));
        let c = cfg("[D]\n3 = 1\n[E]\n1 = 5\n");
        assert_eq!(assemble_excitation(&c), form("dx1^dx2"));
        assert!(assemble_excitation(&FieldConfig::vacuum()).is_zero());
    }

    #[test]
    fn current_three_form_is_star_of_current_one_form() {
        let c = cfg("[rho]\nx1*x2 + 3\n[J]\n1 = x0\n2 = x3^2\n3 = -7\n");
        assert_eq!(current_three_form(&c), current_one_form(&c).star());
    }

    #[test]
    fn premetric_examples() {
        // F = dA, E chosen as d of something plus a closed S
        let a = form("x0*x2^2*dx1 + x1*x3*dx3 - x0^3*dx0");
        let f = a.d();
        let e = form("x1^2*dx0^dx2 + x3*dx1^dx2");
        let s = e.d();
        let r = check_maxwell_premetric(&f, &e, &s).unwrap();
        assert!(r.vanish());
        assert!(r.continuity.is_zero());

        // dS ≠ 0: no E can satisfy dE = S
        let s_bad = form("x0*dx1^dx2^dx3");
        assert!(!s_bad.d().is_zero());
        let r = check_maxwell_premetric(&f, &e, &s_bad).unwrap();
        assert!(!r.vanish());
        assert!(!r.continuity.is_zero());

        // electrostatics: A = x1^2 dx0
        let f = form("x1^2*dx0").d();
        assert_eq!(f, form("-2*x1*dx0^dx1"));
        let e = f.star();
        let s = form("2*dx1^dx2^dx3");
        assert!(check_maxwell_premetric(&f, &e, &s).unwrap().vanish());
    }

    #[test]
    fn premetric_rejects_wrong_grades() {
        let f = form("dx0");
        assert!(check_maxwell_premetric(&f, &f, &f).is_err());
    }

    #[test]
    fn metric_examples() {
        let c = cfg("[E]\n1 = 3\n2 = -1/2\n[B]\n3 = 7\n");
        let m = check_maxwell_metric(&assemble_faraday(&c), &c).unwrap();
        assert!(m.homogeneous.is_zero() && m.source.is_zero());

        let c = cfg("[E]\n1 = 2*x1\n[rho]\n2\n");
        let m = check_maxwell_metric(&assemble_faraday(&c), &c).unwrap();
        assert!(m.homogeneous.is_zero());
        assert!(m.source.is_zero());
    }

    #[test]
    fn gaussian_sources_need_both_parts_zero() {
        let c = cfg("[E]\n1 = 2*x1\n[rho]\n2\n[constants]\ngaussian_4pi = true\n");
        let m = check_maxwell_metric(&assemble_faraday(&c), &c).unwrap();
        assert!(!m.source.is_zero());
        // residual is 2 - 4π·2 on the spatial volume
        assert!((m.source.norm() - (8.0 * std::f64::consts::PI - 2.0)).abs() < 1e-12);
        // source-free data still passes
        let c = cfg("[B]\n1 = 1\n[constants]\ngaussian_4pi = true\n");
        assert!(evaluate(&c, Formulation::Metric).passes());
    }

    #[test]
    fn kottler_examples() {
        let one = int(1);
        for b in Blade::of_grade(4, 2) {
            let xi = Multivector::from_blade(b, int(1));
            assert_eq!(kottler_complement(&xi, &one).unwrap(), xi.complement());
            assert_eq!(kottler_complement(&xi, &int(2)).unwrap(), xi.complement().scale(&ratio(1, 2)));
        }
        let s = Multivector::blade(&[1, 2, 3], 4).unwrap();
        // S_123 = e_1234 S^4 → S^4 = S_123 / vol
        assert_eq!(kottler_complement(&s, &int(3)).unwrap(), Multivector::unit(4, 4).unwrap().scale(&ratio(1, 3)));
        assert_eq!(kottler_complement(&s, &int(0)), Err(Error::ZeroVolume));
        assert!(kottler_complement(&Multivector::unit(1, 4).unwrap(), &one).is_err());
        assert!(kottler_complement(&Multivector::blade(&[1, 2], 3).unwrap(), &one).is_err());
    }

    #[test]
    fn config_parsing_errors_carry_lines() {
        let err = FieldConfig::parse("[E]\n1 = x9\n").unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { line: Some(2), .. })), "{err:?}");
        let err = FieldConfig::parse("1 = x1\n").unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { line: Some(1), .. })));
        let err = FieldConfig::parse("[Q]\n").unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { line: Some(1), .. })));
        let err = FieldConfig::parse("[constants]\nmu0 = 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { line: Some(2), .. })));
        let err = FieldConfig::parse("[E]\n4 = 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { line: Some(2), .. })));
    }

    #[test]
    fn vacuum_defaults_for_excitation() {
        let c = cfg("[E]\n1 = x2\n[B]\n2 = 3\n[constants]\nmu0 = 2\neps0 = 1/2\n");
        assert_eq!(c.d[0], p("1/2*x2"));
        assert_eq!(c.h[1], p("3/2"));
    }

    #[test]
    fn classical_examples() {
        let c = cfg("[B]\n3 = 1\n");
        let corr = classical_correspondence(&c);
        assert!(corr.all_agree());
        assert!(evaluate(&c, Formulation::Classical).passes());

        let c = cfg("[D]\n1 = x1\n[rho]\n1\n");
        assert!(classical_residuals(&c).gauss_d.is_zero());
        let c = cfg("[D]\n1 = x1\n");
        assert!(!classical_residuals(&c).gauss_d.is_zero());
    }

    #[test]
    fn continuity_failure_is_reported() {
        let c = cfg("[rho]\nx0\n");
        for f in Formulation::ALL {
            let r = evaluate(&c, f);
            assert!(!r.continuity_holds(), "{f:?}");
            assert!(!r.passes());
        }
    }
}
