//! Seeded generators for multivectors, polynomials, forms and complexes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ratio, Blade, Multivector, Scalar};
use crate::complex::{Cochain, InnerProducts, SimplicialComplex};
use crate::forms::PolyForm;
use crate::metric::Metric;
use crate::poly::Polynomial;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with small numerator and denominator.
pub fn rational(rng: &mut impl Rng) -> Scalar {
    let mut n = rng.gen_range(-5..=5);
    if n == 0 {
        n = 1;
    }
    ratio(n, rng.gen_range(1..=3))
}

/// Random combination of `terms` grade-`k` blades.
pub fn homogeneous(rng: &mut impl Rng, dim: usize, k: usize, terms: usize) -> Multivector {
    let blades = Blade::of_grade(dim, k);
    let mut mv = Multivector::zero(dim);
    for _ in 0..terms.max(1) {
        mv.add_term(*blades.choose(rng).expect("nonempty grade"), rational(rng));
    }
    mv
}

/// Random multivector with pieces in several grades.
pub fn multivector(rng: &mut impl Rng, dim: usize) -> Multivector {
    let mut mv = Multivector::zero(dim);
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(0..=dim);
        mv = &mv + &homogeneous(rng, dim, k, 2);
    }
    mv
}

/// Random polynomial of total degree at most `max_degree`.
pub fn polynomial(rng: &mut impl Rng, nvars: usize, max_degree: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..terms {
        let mut exps = vec![0u32; nvars];
        let deg = rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        p.add_term(exps, rational(rng));
    }
    p
}

/// Random homogeneous form of grade `k` with polynomial coefficients.
pub fn form_of_grade(rng: &mut impl Rng, metric: &Metric, k: usize, max_degree: u32) -> PolyForm {
    let n = metric.dim();
    let blades = Blade::of_grade(n, k);
    let mut f = PolyForm::zero(metric);
    for _ in 0..rng.gen_range(1..=3) {
        let b = *blades.choose(rng).expect("nonempty grade");
        f.add_term(b, polynomial(rng, n, max_degree, 3));
    }
    f
}

/// Random form of a random grade.
pub fn form(rng: &mut impl Rng, metric: &Metric, max_degree: u32) -> PolyForm {
    let k = rng.gen_range(0..=metric.dim());
    form_of_grade(rng, metric, k, max_degree)
}

/// Random signature of length `dim` with random orientation.
pub fn metric(rng: &mut impl Rng, dim: usize) -> Metric {
    let sig = (0..dim).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let orientation = if rng.gen_bool(0.5) { 1 } else { -1 };
    Metric::new(sig, orientation).expect("valid signature")
}

/// Random complex on at most `max_vertices` vertices with simplices of
/// dimension at most 3.
pub fn complex(rng: &mut impl Rng, max_vertices: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let vertices: Vec<usize> = (0..n).collect();
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.gen_range(1..=2 * n) {
        let size = rng.gen_range(1..=4.min(n));
        let mut s: Vec<usize> = vertices.choose_multiple(rng, size).copied().collect();
        s.sort_unstable();
        if !chosen.contains(&s) {
            chosen.push(s);
        }
    }
    SimplicialComplex::from_simplices(&chosen).expect("distinct simplices without repeats")
}

/// Cochain with entries uniform in `[−1, 1]`.
pub fn cochain(rng: &mut impl Rng, k: &SimplicialComplex, degree: usize) -> Cochain {
    let values = (0..k.count(degree)).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    Cochain::new(k, degree, values).expect("length matches")
}

/// Positive rational diagonal weights for every simplex.
pub fn weights(rng: &mut impl Rng, k: &SimplicialComplex) -> InnerProducts {
    let mut ip = InnerProducts::identity(k);
    for ws in &mut ip.weights {
        for w in ws.iter_mut() {
            *w = ratio(rng.gen_range(1..=20), rng.gen_range(1..=20));
        }
    }
    ip
}
