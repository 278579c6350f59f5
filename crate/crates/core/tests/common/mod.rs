//! Independent oracles shared by the integration tests. Nothing here calls
//! the sign machinery of the library; signs come from explicit permutation
//! counting on index lists.

#![allow(dead_code)]

use std::path::PathBuf;

use hodgekit::algebra::{int, Blade, Multivector, Scalar};
use hodgekit::forms::PolyForm;
use hodgekit::maxwell::FieldConfig;
use hodgekit::metric::Metric;
use hodgekit::poly::Polynomial;
use hodgekit::random::{self, SeededRng};
use num::Zero;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Sign of the permutation sorting `seq` (bubble-sort swaps), 0 on repeats.
pub fn parity(seq: &[usize]) -> i32 {
    let mut v = seq.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len().saturating_sub(1 + i) {
            if v[j] == v[j + 1] {
                return 0;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

/// Levi-Civita symbol on `0..n` (0-based indices).
pub fn levi_civita(indices: &[usize]) -> i32 {
    parity(indices)
}

/// All ordered k-tuples of distinct elements of `0..n`.
pub fn ordered_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for i in 0..n {
                if !t.contains(&i) {
                    let mut u = t.clone();
                    u.push(i);
                    next.push(u);
                }
            }
        }
        out = next;
    }
    out
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Coefficient of a multivector as an antisymmetric tensor component at an
/// arbitrary ordered index tuple (0-based).
pub fn component(mv: &Multivector, tuple: &[usize]) -> Scalar {
    let s = parity(tuple);
    if s == 0 {
        return Scalar::zero();
    }
    let mut sorted: Vec<usize> = tuple.iter().map(|i| i + 1).collect();
    sorted.sort_unstable();
    let b = Blade::new(&sorted, mv.dim()).unwrap();
    mv.coefficient(&b) * int(s as i64)
}

/// Builds a multivector from a component function over ascending tuples.
pub fn from_components(n: usize, k: usize, f: impl Fn(&[usize]) -> Scalar) -> Multivector {
    let mut out = Multivector::zero(n);
    for b in Blade::of_grade(n, k) {
        let t: Vec<usize> = b.indices().iter().map(|i| i - 1).collect();
        out.add_term(b, f(&t));
    }
    out
}

/// Grassmann's complement from its defining property `[E |E] = [e1 … en]`:
/// the complement of `e_I` is `ε(I, J) e_J` with `J` the remaining indices.
pub fn complement_oracle(mv: &Multivector) -> Multivector {
    let n = mv.dim();
    let mut out = Multivector::zero(n);
    for (b, c) in mv.terms() {
        let i: Vec<usize> = b.indices();
        let j: Vec<usize> = (1..=n).filter(|x| !i.contains(x)).collect();
        let mut seq = i.clone();
        seq.extend(&j);
        out.add_term(Blade::new(&j, n).unwrap(), c * int(parity(&seq) as i64));
    }
    out
}

/// Wedge product through the antisymmetrization sum
/// `(A∧B)_{I} = Σ_σ sgn σ · A_{σ(1..k)} B_{σ(k+1..k+l)} / (k! l!)`.
pub fn wedge_oracle(a: &Multivector, ka: usize, b: &Multivector, kb: usize) -> Multivector {
    let n = a.dim();
    if ka + kb > n {
        return Multivector::zero(n);
    }
    from_components(n, ka + kb, |idx| {
        let mut total = Scalar::zero();
        for perm in ordered_tuples(ka + kb, ka + kb) {
            let s = parity(&perm);
            let t: Vec<usize> = perm.iter().map(|p| idx[*p]).collect();
            total += component(a, &t[..ka]) * component(b, &t[ka..]) * int(s as i64);
        }
        total / int(factorial(ka) * factorial(kb))
    })
}

/// Hodge star by the permutation-sum formula with raised indices:
/// `(*α)_{j…} = o · (1/k!) Σ_{i…} α^{i…} ε_{i… j…}` (here `√|det g| = 1`).
pub fn star_oracle(alpha: &Multivector, k: usize, g: &Metric) -> Multivector {
    let n = alpha.dim();
    let o = g.orientation() as i64;
    from_components(n, n - k, |j| {
        let mut total = Scalar::zero();
        for i in ordered_tuples(n, k) {
            let mut seq = i.clone();
            seq.extend_from_slice(j);
            let eps = levi_civita(&seq);
            if eps == 0 {
                continue;
            }
            let raise: i64 = i.iter().map(|x| g.signature()[*x] as i64).product();
            total += component(alpha, &i) * int(raise * eps as i64);
        }
        total * int(o) / int(factorial(k))
    })
}

/// `Σ_j g^{jj} ∂_j²` applied to one coefficient.
pub fn wave_operator(p: &Polynomial, g: &Metric) -> Polynomial {
    let mut out = Polynomial::zero(p.nvars());
    for j in 0..g.dim() {
        out = &out + &p.derivative(j).derivative(j).scale(&int(g.signature()[j] as i64));
    }
    out
}

/// 3-D vector calculus on polynomial triples (0-based variables).
pub fn grad(f: &Polynomial) -> [Polynomial; 3] {
    std::array::from_fn(|i| f.derivative(i))
}

pub fn div(v: &[Polynomial; 3]) -> Polynomial {
    &(&v[0].derivative(0) + &v[1].derivative(1)) + &v[2].derivative(2)
}

pub fn curl(v: &[Polynomial; 3]) -> [Polynomial; 3] {
    [
        &v[2].derivative(1) - &v[1].derivative(2),
        &v[0].derivative(2) - &v[2].derivative(0),
        &v[1].derivative(0) - &v[0].derivative(1),
    ]
}

/// Fields derived from a potential with sources read off from them by vector
/// calculus, so that every formulation must hold. Spatial derivatives use
/// variables 1..=3.
pub fn solution_from_potential(a: &PolyForm) -> FieldConfig {
    let f = a.d();
    let mut cfg = FieldConfig::vacuum();
    for i in 1..=3 {
        cfg.e[i - 1] = -&f.component(&[0, i]);
    }
    cfg.b = [f.component(&[2, 3]), f.component(&[3, 1]), f.component(&[1, 2])];
    cfg = cfg.with_vacuum_excitation();
    let div_d = (1..=3).fold(Polynomial::zero(4), |acc, i| &acc + &cfg.d[i - 1].derivative(i));
    let curl_h: [Polynomial; 3] = [
        &cfg.h[2].derivative(2) - &cfg.h[1].derivative(3),
        &cfg.h[0].derivative(3) - &cfg.h[2].derivative(1),
        &cfg.h[1].derivative(1) - &cfg.h[0].derivative(2),
    ];
    cfg.rho = div_d;
    cfg.j = std::array::from_fn(|i| &curl_h[i] - &cfg.d[i].derivative(0));
    cfg
}

pub fn random_potential(rng: &mut SeededRng) -> PolyForm {
    let comps: Vec<Polynomial> = (0..4).map(|_| random::polynomial(rng, 4, 3, 3)).collect();
    PolyForm::one_form(&Metric::minkowski(), &comps).unwrap()
}
