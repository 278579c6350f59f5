mod common;

use common::{curl, div, random_potential, solution_from_potential, wave_operator};
use hodgekit::algebra::{int, Blade, Multivector};
use hodgekit::forms::PolyForm;
use hodgekit::maxwell::{
    assemble_excitation, assemble_faraday, check_maxwell_metric, check_maxwell_premetric, classical_correspondence,
    current_one_form, current_three_form, evaluate, matrix_divergence, minkowski_dual_form, FieldConfig, Formulation,
};
use hodgekit::metric::Metric;
use hodgekit::poly::Polynomial;
use hodgekit::random::{self, SeededRng};
use proptest::prelude::*;

fn chart() -> Metric {
    Metric::minkowski()
}

fn poly(rng: &mut SeededRng, degree: u32) -> Polynomial {
    random::polynomial(rng, 4, degree, 3)
}

fn random_config(rng: &mut SeededRng) -> FieldConfig {
    let mut cfg = FieldConfig::vacuum();
    cfg.e = std::array::from_fn(|_| poly(rng, 2));
    cfg.b = std::array::from_fn(|_| poly(rng, 2));
    cfg.rho = poly(rng, 2);
    cfg.j = std::array::from_fn(|_| poly(rng, 2));
    cfg.with_vacuum_excitation()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn potentials_give_solutions_in_every_formulation(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cfg = solution_from_potential(&random_potential(&mut rng));
        for f in Formulation::ALL {
            let r = evaluate(&cfg, f);
            prop_assert!(r.passes(), "{:?}", f);
        }
        prop_assert!(classical_correspondence(&cfg).all_agree());
    }

    #[test]
    fn formulations_agree_on_arbitrary_data(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cfg = random_config(&mut rng);
        let verdicts: Vec<bool> = Formulation::ALL.iter().map(|f| evaluate(&cfg, *f).passes()).collect();
        prop_assert!(verdicts.iter().all(|v| *v == verdicts[0]));
        prop_assert!(classical_correspondence(&cfg).all_agree());
    }

    #[test]
    fn gauge_shift_leaves_residuals_unchanged(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = random_potential(&mut rng);
        let chi = PolyForm::function(&chart(), poly(&mut rng, 4));
        let shifted = &a + &chi.d();
        prop_assert_eq!(a.d(), shifted.d());
        let cfg = solution_from_potential(&a);
        let cfg_shifted = solution_from_potential(&shifted);
        prop_assert_eq!(&cfg, &cfg_shifted);
        let f = a.d();
        let s = current_three_form(&cfg);
        let r1 = check_maxwell_premetric(&f, &f.star(), &s).unwrap();
        let r2 = check_maxwell_premetric(&shifted.d(), &shifted.d().star(), &s).unwrap();
        prop_assert_eq!(r1, r2);
    }

    #[test]
    fn constitutive_consistency(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cfg = random_config(&mut rng);
        let f = assemble_faraday(&cfg);
        let metric = check_maxwell_metric(&f, &cfg).unwrap();
        let premetric = check_maxwell_premetric(&f, &f.star(), &current_three_form(&cfg)).unwrap();
        prop_assert_eq!(&metric.source.rational, &premetric.source);
        prop_assert!(metric.source.pi.is_zero());
        prop_assert_eq!(&metric.homogeneous.rational, &premetric.homogeneous);
    }

    #[test]
    fn continuity_follows_from_vanishing_residuals(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cfg = solution_from_potential(&random_potential(&mut rng));
        let g = assemble_excitation(&cfg);
        let s = current_three_form(&cfg);
        let r = check_maxwell_premetric(&assemble_faraday(&cfg), &g, &s).unwrap();
        prop_assert!(r.vanish());
        prop_assert!(r.continuity.is_zero());
        // ∂0 ρ + div J = 0 by vector calculus as well
        let dj = (1..=3).fold(Polynomial::zero(4), |acc, i| &acc + &cfg.j[i - 1].derivative(i));
        prop_assert!((&cfg.rho.derivative(0) + &dj).is_zero());
    }

    #[test]
    fn current_three_form_is_star_of_four_current(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cfg = random_config(&mut rng);
        prop_assert_eq!(current_three_form(&cfg), current_one_form(&cfg).star());
    }
}

#[test]
fn vacuum_excitation_is_star_of_faraday() {
    let mut rng = random::rng(41);
    for _ in 0..50 {
        let mut cfg = FieldConfig::vacuum();
        cfg.e = std::array::from_fn(|_| Polynomial::constant(4, random::rational(&mut rng)));
        cfg.b = std::array::from_fn(|_| Polynomial::constant(4, random::rational(&mut rng)));
        let cfg = cfg.with_vacuum_excitation();
        assert_eq!(assemble_excitation(&cfg), assemble_faraday(&cfg).star());
    }
}

/// On constant fields `div F*` and `dF` both vanish; on polynomial fields the
/// Minkowski components are a relabeling of the `dF` components.
#[test]
fn minkowski_divergence_matches_exterior_derivative() {
    let mut rng = random::rng(43);
    for _ in 0..30 {
        let cfg = random_config(&mut rng);
        let f = assemble_faraday(&cfg);
        let df = f.d();
        let div_dual = matrix_divergence(&minkowski_dual_form(&f).unwrap());
        for (i, lhs) in div_dual.iter().enumerate() {
            let rest = Blade::from_mask(0b1111 & !(1 << i), 4);
            let mut seq = vec![i];
            seq.extend(rest.indices().iter().map(|x| x - 1));
            let sign = common::levi_civita(&seq) as i64;
            assert_eq!(*lhs, df.coefficient(&rest).scale(&int(sign)));
        }
    }
    let constant = FieldConfig::parse("[E]\n1 = 2\n[B]\n2 = -3\n").unwrap();
    let f = assemble_faraday(&constant);
    assert!(matrix_divergence(&minkowski_dual_form(&f).unwrap()).iter().all(Polynomial::is_zero));
    assert!(f.d().is_zero());
}

/// `A = x0 x1 dx2` is in Lorenz gauge, so `δF = δdA` equals the componentwise
/// wave operator on `A` (with the codifferential's sign).
#[test]
fn wave_operator_oracle() {
    let g = chart();
    for text in ["x0*x1*dx2", "(x0 - x1)^3*dx2", "x0^2*x3*dx2 + x1*x2*dx3"] {
        let a = PolyForm::parse(text, &g).unwrap();
        assert!(a.codifferential().is_zero(), "{text} is not in Lorenz gauge");
        let f = a.d();
        assert!(f.d().is_zero());
        let delta_f = f.codifferential();
        for b in Blade::of_grade(4, 1) {
            assert_eq!(delta_f.coefficient(&b), wave_operator(&a.coefficient(&b), &g).scale(&int(-1)), "{text}");
        }
        // d*F vanishes exactly when the wave operator annihilates A
        let waves = Blade::of_grade(4, 1).into_iter().all(|b| wave_operator(&a.coefficient(&b), &g).is_zero());
        assert_eq!(f.star().d().is_zero(), waves, "{text}");
    }
}

/// The spatial part of `F` is the 3-D complement of the `B` vector.
#[test]
fn magnetic_two_form_is_complement_of_b() {
    let mut rng = random::rng(47);
    for _ in 0..20 {
        let mut cfg = FieldConfig::vacuum();
        let b: [_; 3] = std::array::from_fn(|_| random::rational(&mut rng));
        cfg.b = b.clone().map(|c| Polynomial::constant(4, c));
        let f = assemble_faraday(&cfg);
        let complement = Multivector::vector(&b).complement();
        for (blade, c) in complement.terms() {
            let axes: Vec<usize> = blade.indices();
            assert_eq!(f.component(&axes).constant_value().unwrap(), c.clone());
        }
    }
}

#[test]
fn classical_vector_calculus_oracle() {
    // helpers in `common` use variables 0..3; here a 3-variable chart
    let e = [
        Polynomial::parse("x0*x1", 3, 0).unwrap(),
        Polynomial::parse("x0^2", 3, 0).unwrap(),
        Polynomial::parse("x2", 3, 0).unwrap(),
    ];
    assert!(div(&curl(&e)).is_zero());
    assert_eq!(div(&e), Polynomial::parse("x1 + 1", 3, 0).unwrap());
}
