//! Multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::algebra::{int, Scalar};
use crate::error::{ParseError, Result};
use crate::grammar;

/// Sparse polynomial in `nvars` variables: exponent tuple → coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, value: Scalar) -> Self {
        Self::monomial(vec![0; nvars], value)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// The coordinate function `x_var` (0-based variable position).
    pub fn var(var: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        Self::monomial(exps, Scalar::one())
    }

    pub fn monomial(exponents: Vec<u32>, coefficient: Scalar) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coefficient);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coefficient: Scalar) {
        assert_eq!(exponents.len(), self.nvars, "exponent tuple length");
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents.clone()).or_insert_with(Scalar::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect() }
    }

    /// `∂/∂x_var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut d = e.clone();
                d[var] -= 1;
                out.add_term(d, c * int(e[var] as i64));
            }
        }
        out
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut total = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, k) in point.iter().zip(e) {
                for _ in 0..*k {
                    term *= x;
                }
            }
            total += term;
        }
        total
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> Scalar {
        self.terms.values().map(|c| c.abs()).fold(Scalar::zero(), |a, b| a + b)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Parses `3/2*x0^2*x1 - x3`; variables are `x<base> … x<base+n-1>`.
    /// Parenthesized sub-expressions, optionally raised to a power, are
    /// accepted as factors.
    pub fn parse(text: &str, nvars: usize, base: usize) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (negative, term) in grammar::split_terms(text)? {
            let mut product = Self::one(nvars);
            for factor in grammar::split_factors(&term)? {
                product = &product * &parse_factor(factor, nvars, base)?;
            }
            out = if negative { &out - &product } else { &out + &product };
        }
        Ok(out)
    }

    pub fn to_labeled(&self, base: usize) -> String {
        let mut out = String::new();
        // highest total degree first reads more naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then(b.cmp(a))
        });
        for (e, c) in terms {
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { format!("x{}", i + base) } else { format!("x{}^{k}", i + base) })
                .collect();
            if vars.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&grammar::coefficient_prefix(&abs));
                out.push_str(&vars.join("*"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn parse_factor(factor: &str, nvars: usize, base: usize) -> Result<Polynomial> {
    if let Some(r) = grammar::parse_rational(factor) {
        return Ok(Polynomial::constant(nvars, r));
    }
    let (body, power) = split_power(factor)?;
    let p = if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        Polynomial::parse(inner, nvars, base)?
    } else if let Some(label) = body.strip_prefix('x') {
        let i: usize = label.parse().map_err(|_| ParseError::new(format!("bad variable '{body}'")))?;
        if i < base || i - base >= nvars {
            return Err(ParseError::new(format!("variable x{i} outside the chart x{base}..x{}", base + nvars - 1)).into());
        }
        Polynomial::var(i - base, nvars)
    } else {
        return Err(ParseError::new(format!("unrecognized factor '{factor}'")).into());
    };
    Ok(p.pow(power))
}

/// Splits `body^k` at a top-level caret.
fn split_power(factor: &str) -> Result<(&str, u32)> {
    let mut depth = 0i32;
    for (i, c) in factor.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '^' if depth == 0 => {
                let k: u32 = factor[i + 1..]
                    .parse()
                    .map_err(|_| ParseError::new(format!("bad exponent in '{factor}'")))?;
                return Ok((&factor[..i], k));
            }
            _ => {}
        }
    }
    Ok((factor, 1))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_labeled(0))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_labeled(0))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
