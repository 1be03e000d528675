use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qkadams::algebra_core::{rat, EqScalar, KClass};
use qkadams::expr::{parse_qrat, ExprContext};
use qkadams::lefschetz::{
    dual_summand, j_small, lefschetz_transform, telescoping_check, LefschetzMode,
};
use qkadams::loopspace::{apply_box, omega_r, LoopPoint, Membership};
use qkadams::oracle_hrr::{ch, chi_fake};
use qkadams::qcalc::{LaurentQ, QRat};
use qkadams::twistkit::{
    box_log_reflection, box_operator, box_symmetry_check, dilaton_vector, kappa_ratio,
    pairing_twist, serre_dual, twist_exponent, LineSummand, Support, TwistData,
};
use qkadams::verify::random;

fn rng(seed: u64) -> ChaCha8Rng {
    random::rng(seed)
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn serre_dual_is_an_involution(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = rng(seed);
        let data = random::finite_twist(n, 6, true, &mut g);
        prop_assert_eq!(serre_dual(&serre_dual(&data).unwrap()).unwrap(), data);
        let lines = vec![KClass::line(n, g.gen_range(-2..=2), EqScalar::param("lambda"))];
        let e = TwistData::eulerian_pi(n, lines).unwrap().with_support(Support::Positive);
        prop_assert_eq!(serre_dual(&serre_dual(&e).unwrap()).unwrap(), e);
    }

    #[test]
    fn box_symmetry_holds_for_every_k(seed in any::<u64>(), n in 1usize..=3, r in 1i64..=3) {
        let data = random::finite_twist(n, 6, true, &mut rng(seed));
        for k in (-6i64..=6).filter(|k| *k != 0) {
            prop_assert!(box_symmetry_check(r, k, &data).unwrap());
        }
    }

    #[test]
    fn dilaton_is_flat_on_constant_data(seed in any::<u64>(), n in 1usize..=3, r in 1i64..=4) {
        let data = random::finite_twist(n, 4, false, &mut rng(seed));
        let v = dilaton_vector(r, &data).unwrap();
        prop_assert_eq!(v, QRat::from_laurent(LaurentQ::one_minus(&KClass::one(n), 1)));
    }

    #[test]
    fn kappa_ratio_divides_exactly(seed in any::<u64>(), n in 1usize..=3, k in prop_oneof![-4i64..=-1, 1i64..=4]) {
        let e = random::laurent(n, -2, 3, &mut rng(seed));
        let quot = kappa_ratio(k, &e).unwrap();
        let lhs = &quot * &LaurentQ::one_minus(&KClass::one(n), k);
        let rhs = (&e - &LaurentQ::constant(e.at_one())).adams(k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn infinitesimal_pairing_twist(seed in any::<u64>(), n in 1usize..=3, r in 1i64..=3) {
        let data = random::infinitesimal_twist(n, 4, false, &mut rng(seed));
        let expo = twist_exponent(r, &data).unwrap();
        // eps^2 = 0, so exp is 1 + exponent
        prop_assert_eq!(pairing_twist(r, &data).unwrap(), &KClass::one(n) + &expo);
        let refl = box_log_reflection(r, &data).unwrap();
        prop_assert_eq!(refl, QRat::constant(expo));
    }

    #[test]
    fn isotropy(seed in any::<u64>(), n in 1usize..=3, r in 1i64..=3) {
        let mut g = rng(seed);
        let delta = random::kclass(n, &mut g);
        let (f, h) = (random::k_plus(n, &mut g), random::k_plus(n, &mut g));
        prop_assert!(omega_r(&f, &h, r, &delta).unwrap().is_zero());
        let (f, h) = (random::k_minus(n, &mut g), random::k_minus(n, &mut g));
        prop_assert!(omega_r(&f, &h, r, &delta).unwrap().is_zero());
    }

    #[test]
    fn box_untwists_the_form(seed in any::<u64>(), n in 1usize..=3, r in 1i64..=3) {
        let mut g = rng(seed);
        let data = random::infinitesimal_twist(n, 4, false, &mut g);
        let f = &random::k_plus(n, &mut g) + &random::k_minus(n, &mut g);
        let h = &random::k_plus(n, &mut g) + &random::k_minus(n, &mut g);
        let b = box_operator(r, &data).unwrap();
        let lhs = omega_r(&f, &h, r, &pairing_twist(r, &data).unwrap()).unwrap();
        let rhs = omega_r(&(&b * &f), &(&b * &h), r, &KClass::one(n)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let p = LoopPoint::single(r, random::k_minus(n, &mut g)).unwrap().claim(Membership::Minus).unwrap();
        prop_assert!(apply_box(&p, &data).unwrap().in_minus());
    }

    #[test]
    fn scalar_twists_scale_the_form(seed in any::<u64>(), n in 1usize..=3, c in -5i64..=5) {
        let mut g = rng(seed);
        let tau = &EqScalar::one() + &random::eps().scale(&rat(c));
        let f = &random::k_plus(n, &mut g) + &random::k_minus(n, &mut g);
        let h = &random::k_plus(n, &mut g) + &random::k_minus(n, &mut g);
        let plain = omega_r(&f, &h, 1, &KClass::one(n)).unwrap();
        let twisted = omega_r(&f, &h, 1, &KClass::scalar(n, tau.clone())).unwrap();
        prop_assert_eq!(twisted, &plain * &tau);
    }

    #[test]
    fn form_is_antisymmetric(seed in any::<u64>(), n in 1usize..=3, r in 1i64..=3) {
        let mut g = rng(seed);
        let delta = random::kclass(n, &mut g);
        let f = &random::k_plus(n, &mut g) + &random::k_minus(n, &mut g);
        let h = &random::k_plus(n, &mut g) + &random::k_minus(n, &mut g);
        let a = omega_r(&f, &h, r, &delta).unwrap();
        let b = omega_r(&h, &f, r, &delta).unwrap();
        prop_assert_eq!(a, -&b);
    }

    #[test]
    fn lefschetz_is_multiplicative(ms in proptest::collection::vec(-2i64..=2, 0..3), split in 0usize..3, dual in any::<bool>()) {
        let n = 2;
        let mode = if dual { LefschetzMode::Dual } else { LefschetzMode::Pi };
        let lines: Vec<LineSummand> = ms.iter().map(|m| LineSummand::weighted(vec![*m], EqScalar::param("lambda"))).collect();
        let split = split.min(lines.len());
        let j = j_small(n, 2).unwrap();
        let once = lefschetz_transform(&j, &lines, mode).unwrap();
        let first = lefschetz_transform(&j, &lines[..split], mode).unwrap();
        let twice = lefschetz_transform(&first, &lines[split..], mode).unwrap();
        for d in 0..=2 {
            prop_assert_eq!(once.coeff_at(d), twice.coeff_at(d));
        }
    }

    #[test]
    fn pi_then_dual_is_identity(m in -2i64..=2, n in 1usize..=3) {
        let line = LineSummand::weighted(vec![m], EqScalar::param("lambda"));
        let j = j_small(n, 2).unwrap();
        let there = lefschetz_transform(&j, std::slice::from_ref(&line), LefschetzMode::Pi).unwrap();
        let back = lefschetz_transform(&there, &[dual_summand(&line).unwrap()], LefschetzMode::Dual).unwrap();
        for d in 0..=2 {
            prop_assert_eq!(back.coeff_at(d), j.coeff_at(d));
        }
        prop_assert!(telescoping_check(&line.class(n).unwrap(), -4..=4).unwrap());
    }

    #[test]
    fn j_lies_in_the_negative_space(n in 2usize..=4, d in 1i64..=4) {
        prop_assert!(j_small(n, d).unwrap().coeff_at(d).project_plus().is_zero());
    }

    #[test]
    fn chern_character_is_a_ring_map(seed in any::<u64>(), n in 1usize..=5, k in prop_oneof![-3i64..=-1, 1i64..=3], j in -3i64..=3) {
        let mut g = rng(seed);
        let a = random::kclass(n, &mut g);
        let b = random::kclass(n, &mut g);
        prop_assert_eq!(ch(&(&a * &b)).unwrap(), &ch(&a).unwrap() * &ch(&b).unwrap());
        prop_assert_eq!(ch(&(&a + &b)).unwrap(), &ch(&a).unwrap() + &ch(&b).unwrap());
        let pj = KClass::hopf_pow(n, j);
        prop_assert_eq!(ch(&pj.adams(k).unwrap()).unwrap(), ch(&KClass::hopf_pow(n, k * j)).unwrap());
        prop_assert_eq!(EqScalar::rational(chi_fake(&a).unwrap()), a.chi());
    }

    #[test]
    fn rendering_parses_back(seed in any::<u64>(), n in 1usize..=3) {
        let mut g = rng(seed);
        let f = &random::k_plus(n, &mut g) + &random::k_minus(n, &mut g);
        let ctx = ExprContext::new(n);
        prop_assert_eq!(parse_qrat(&f.render(), &ctx).unwrap(), f);
    }
}

#[test]
fn point_target_has_no_negative_j() {
    // on a point P = 1 and (1-q)/(1-q) = 1
    let j = j_small(1, 1).unwrap();
    assert_eq!(j.coeff_at(1).project_plus(), LaurentQ::one(1));
}

#[test]
fn fake_chi_on_x_powers() {
    for n in 1..=6usize {
        for a in 0..=n + 1 {
            let expect = if a < n { rat(1) } else { rat(0) };
            assert_eq!(chi_fake(&KClass::x_pow(n, 1).pow_u(a as u32)).unwrap(), expect);
        }
    }
}
