mod common;

use common::{component, from_components, levi_civita, star_oracle};
use hodgekit::algebra::{int, Blade, Grade, Multivector};
use hodgekit::maxwell::kottler_complement;
use hodgekit::metric::{self, double_star_sign, hodge_star, hodge_star_inverse, lower, pairing, Metric};
use hodgekit::random;
use num::Signed;
use proptest::prelude::*;

fn graded(n: usize, seed: u64) -> (usize, Multivector, Metric) {
    let mut rng = random::rng(seed);
    let g = random::metric(&mut rng, n);
    let k = (seed % (n as u64 + 1)) as usize;
    (k, random::homogeneous(&mut rng, n, k, 3), g)
}

proptest! {
    #[test]
    fn star_matches_permutation_sum(n in 1usize..=5, seed in any::<u64>()) {
        let (k, a, g) = graded(n, seed);
        prop_assert_eq!(hodge_star(&a, &g).unwrap(), star_oracle(&a, k, &g));
    }

    #[test]
    fn star_inverse_inverts(n in 1usize..=5, seed in any::<u64>()) {
        let (_, a, g) = graded(n, seed);
        prop_assert_eq!(hodge_star_inverse(&hodge_star(&a, &g).unwrap(), &g).unwrap(), a.clone());
        prop_assert_eq!(hodge_star(&hodge_star_inverse(&a, &g).unwrap(), &g).unwrap(), a);
    }

    #[test]
    fn orientation_reversal_flips_star(n in 1usize..=5, seed in any::<u64>()) {
        let (_, a, g) = graded(n, seed);
        let flipped = g.clone().with_orientation(-g.orientation()).unwrap();
        prop_assert_eq!(hodge_star(&a, &flipped).unwrap(), -&hodge_star(&a, &g).unwrap());
    }

    #[test]
    fn star_is_linear(n in 1usize..=5, seed in any::<u64>()) {
        let (k, a, g) = graded(n, seed);
        let mut rng = random::rng(seed ^ 0x5a5a);
        let b = random::homogeneous(&mut rng, n, k, 2);
        let c = random::rational(&mut rng);
        let lhs = hodge_star(&(&a + &b.scale(&c)), &g).unwrap();
        let rhs = &hodge_star(&a, &g).unwrap() + &hodge_star(&b, &g).unwrap().scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euclidean_pairing_is_positive(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let k = (seed % (n as u64 + 1)) as usize;
        let a = random::homogeneous(&mut rng, n, k, 3);
        let g = Metric::euclidean(n);
        let p = pairing(&a, &hodge_star(&a, &g).unwrap(), &g).unwrap();
        prop_assert!(a.is_zero() || p.is_positive());
        // α ∧ *α = ⟨α, α⟩ vol: the sum of squared coefficients
        let sq = a.terms().fold(int(0), |acc, (_, c)| acc + c * c);
        prop_assert_eq!(p, sq);
    }

    #[test]
    fn pairing_sign_pattern_follows_raising(n in 1usize..=5, seed in any::<u64>()) {
        let (_, a, g) = graded(n, seed);
        let p = pairing(&a, &hodge_star(&a, &g).unwrap(), &g).unwrap();
        let expected = a.terms().fold(int(0), |acc, (b, c)| {
            let s: i64 = b.indices().iter().map(|i| g.signature()[i - 1] as i64).product();
            acc + c * c * int(s * g.orientation() as i64)
        });
        prop_assert_eq!(p, expected);
    }
}

#[test]
fn euclidean_star_equals_complement() {
    for n in 1..=6 {
        let g = Metric::euclidean(n);
        for b in Blade::all(n) {
            let e = Multivector::from_blade(b, int(1));
            assert_eq!(hodge_star(&e, &g).unwrap(), e.complement(), "n={n} {b}");
        }
    }
}

#[test]
fn double_star_law_all_signatures() {
    for n in 1..=5 {
        for bits in 0u32..(1 << n) {
            let sig: Vec<i8> = (0..n).map(|i| if bits & (1 << i) != 0 { -1 } else { 1 }).collect();
            let det: i32 = sig.iter().map(|s| *s as i32).product();
            let g = Metric::new(sig, 1).unwrap();
            for b in Blade::all(n) {
                let k = b.grade();
                let e = Multivector::from_blade(b, int(1));
                let ss = hodge_star(&hodge_star(&e, &g).unwrap(), &g).unwrap();
                let sign = det * if (k * (n - k)) % 2 == 0 { 1 } else { -1 };
                assert_eq!(ss, e.scale(&int(sign as i64)));
                assert_eq!(double_star_sign(Grade::new(k, n).unwrap(), &g), sign);
            }
        }
    }
}

#[test]
fn minkowski_grade_two_double_star_is_minus_one() {
    let g = Metric::minkowski();
    assert_eq!(double_star_sign(Grade::new(2, 4).unwrap(), &g), -1);
}

/// Pauli's six-vector dual `ξ*_{ij} = ξ^{kl}` with `(ijkl)` an even
/// permutation, computed by summing over all such permutations.
#[test]
fn pauli_dual_agrees_with_star() {
    let g = Metric::euclidean(4);
    let mut rng = random::rng(17);
    for _ in 0..20 {
        let xi = random::homogeneous(&mut rng, 4, 2, 4);
        let pauli = from_components(4, 2, |ij| {
            let mut total = int(0);
            for k in 0..4 {
                for l in 0..4 {
                    let seq = [ij[0], ij[1], k, l];
                    if levi_civita(&seq) == 1 {
                        total += component(&xi, &[k, l]);
                    }
                }
            }
            // each unordered pair {k, l} with even (ijkl) appears once
            total
        });
        assert_eq!(hodge_star(&xi, &g).unwrap(), pauli);
    }
}

#[test]
fn minkowski_dual_is_euclidean_complement_on_components() {
    let mut rng = random::rng(23);
    for _ in 0..20 {
        let f = random::homogeneous(&mut rng, 4, 2, 4);
        assert_eq!(metric::minkowski_dual(&f).unwrap(), f.complement());
    }
}

#[test]
fn kottler_complement_with_unit_volume_lowers_to_star() {
    let mut rng = random::rng(29);
    for sig in ["+---", "++++", "-+++"] {
        let g = Metric::from_signature(sig).unwrap();
        for k in [2, 3] {
            for _ in 0..10 {
                let f = random::homogeneous(&mut rng, 4, k, 3);
                let contravariant = kottler_complement(&f, &int(1)).unwrap();
                let lowered = lower(&contravariant, &g).unwrap();
                let star = hodge_star(&f, &g).unwrap();
                assert_eq!(lowered, star.scale(&int(g.det_sign() as i64)), "{sig} k={k}");
            }
        }
    }
}

#[test]
fn kottler_complement_scales_inversely_with_volume() {
    let mut rng = random::rng(31);
    let f = random::homogeneous(&mut rng, 4, 2, 4);
    let one = kottler_complement(&f, &int(1)).unwrap();
    let two = kottler_complement(&f, &int(2)).unwrap();
    assert_eq!(two.scale(&int(2)), one);
    assert!(!one.is_zero() || f.is_zero());
    assert_eq!(two.len(), one.len());
}
