mod common;

use common::{curve_row, strings, weight_two_row};
use k3cm::counting::{curve_euler_factor, Varieties};
use k3cm::hecke::{
    bound_exponents, enumerate_hecke, infinity_eval, max_char_order, root_of_unity_hp, unit_compatible, unit_phase,
    HeckeCharacter, InfinityType,
};
use k3cm::numfield::{galois_prime, shipped_field, split_prime, NFElement};
use k3cm::pipeline::{match_curve, match_surface, Config, Context};
use k3cm::resring::{char_conductor, FiniteCharacter};
use k3cm::util::hp::HpComplex;
use num_bigint::BigInt;
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

fn ctx() -> &'static Context {
    static C: OnceLock<Context> = OnceLock::new();
    C.get_or_init(|| Context::new(Config::default()).unwrap())
}

fn psi_a1() -> &'static HeckeCharacter {
    static C: OnceLock<HeckeCharacter> = OnceLock::new();
    C.get_or_init(|| match_curve(ctx(), 1).unwrap().character.unwrap())
}

fn psi_x1() -> &'static HeckeCharacter {
    static C: OnceLock<HeckeCharacter> = OnceLock::new();
    C.get_or_init(|| match_surface(ctx(), 1).unwrap().character.unwrap())
}

#[test]
fn infinity_type_on_rational_integers() {
    let k = shipped_field(2).unwrap();
    for (t, e) in [(InfinityType::psi_x(), 6u32), (InfinityType::psi_a(), 3), (InfinityType::psi_prime(), 6)] {
        let v = infinity_eval(&k, &t, &NFElement::from_int(7), 50).unwrap();
        assert!(v.close_to(&HpComplex::from_int(&BigInt::from(7).pow(e), v.bits), -60.0));
    }
}

#[test]
fn infinity_type_times_conjugate_is_norm() {
    let k = shipped_field(3).unwrap();
    let x = NFElement::from_i64(&[1, 2, -1, 0, 3, 1]);
    let t = InfinityType::psi_a();
    let a = infinity_eval(&k, &t, &x, 60).unwrap();
    let b = infinity_eval(&k, &t, &k.galois_apply(3, &x), 60).unwrap();
    let n = k.norm(&x).to_integer();
    assert!((&a * &b).close_to(&HpComplex::from_int(&n, a.bits), -80.0));
}

#[test]
fn types_must_have_constant_weight() {
    assert!(InfinityType::new([(0, 2), (1, 0), (1, 1)]).is_err());
    assert_eq!(InfinityType::psi_x().placements().len(), 6);
    assert_eq!(InfinityType::psi_a().placements().len(), 8);
}

// Bauer: a character of order n with values in K forces p = 1 mod n for
// every split p; tools/oracles.py finds n in {1, 2, 4}.
#[test]
fn admissible_orders() {
    for i in 1..=4 {
        assert_eq!(max_char_order(&shipped_field(i).unwrap()).orders, vec![1, 2, 4]);
    }
}

#[test]
fn tame_primes_need_exponent_one() {
    let cases = [(1, 5), (1, 3), (2, 7), (3, 19), (4, 31), (2, 13)];
    for (i, p) in cases {
        let k = shipped_field(i).unwrap();
        let bound = max_char_order(&k);
        for pr in split_prime(&k, p).unwrap() {
            assert_eq!(bound_exponents(&k, &pr, &bound).unwrap(), 1, "K{i} p={p}");
        }
    }
}

#[test]
fn wild_exponent_at_two_exceeds_one() {
    let k = shipped_field(1).unwrap();
    let bound = max_char_order(&k);
    let pr = &split_prime(&k, 2).unwrap()[0];
    assert!(bound_exponents(&k, pr, &bound).unwrap() > 1);
}

#[test]
fn matched_characters_are_unit_compatible() {
    for psi in [psi_a1(), psi_x1()] {
        assert!(unit_compatible(&psi.field, &psi.chi, &psi.infinity).unwrap());
    }
}

#[test]
fn unramified_weight_two_orbit() {
    let e = enumerate_hecke(shipped_field(1).unwrap(), &InfinityType::psi_prime(), &[]).unwrap();
    assert!(!e.orbits.is_empty());
    for i in 0..e.orbits.len() {
        for psi in e.orbit_characters(i).unwrap() {
            assert_eq!(psi.conductor_norm(), BigInt::from(1));
        }
    }
}

#[test]
fn orbits_are_closed_under_twisting() {
    let e = enumerate_hecke(shipped_field(1).unwrap(), &InfinityType::psi_prime(), &[]).unwrap();
    for orbit in &e.orbits {
        for c in orbit {
            for s in 1..6 {
                assert!(orbit.contains(&e.space.twist(c, s).unwrap()));
            }
        }
    }
}

#[test]
fn euler_factors_reproduce_table_rows() {
    assert_eq!(psi_a1().euler_factor_q(17).unwrap().coeffs_string(), strings(&curve_row(1).1));
    assert_eq!(psi_x1().euler_factor_q(17).unwrap().coeffs_string(), strings(&weight_two_row(1).1));
    assert_eq!(psi_a1().conductor_norm(), BigInt::from(curve_row(1).0));
    assert_eq!(psi_x1().conductor_norm(), BigInt::from(weight_two_row(1).0));
}

#[test]
fn values_at_split_primes_sum_to_the_trace() {
    let psi = psi_a1();
    let mut total = HpComplex::zero(200);
    for pr in split_prime(&psi.field, 17).unwrap() {
        let v = psi.eval_at_prime(&pr, 50).unwrap().value;
        assert!((v.to_c64().norm_sqr() - 17.0).abs() < 1e-9);
        total = &total + &v.with_bits(200);
    }
    assert!(total.close_to(&HpComplex::from_i64(6, 200), -100.0));
}

#[test]
fn inert_prime_matches_the_curve() {
    let psi = psi_a1();
    let ps = split_prime(&psi.field, 11).unwrap();
    assert_eq!(ps.len(), 1);
    assert_eq!(ps[0].f, 6);
    let e = psi.euler_factor_q(11).unwrap();
    let v = Varieties::load_default();
    assert_eq!(e, curve_euler_factor(v.curve(1).unwrap(), 11).unwrap());
    assert!(e.coeffs[1..6].iter().all(|c| c == &BigInt::from(0)));
    assert_eq!(e.coeffs[6].clone() * &e.coeffs[6], BigInt::from(11).pow(6));
}

#[test]
fn galois_twists_share_euler_factors() {
    let psi = psi_a1();
    assert_eq!(psi.galois_twist(0).unwrap().record(), psi.record());
    let twists: Vec<_> = (1..6).map(|e| psi.galois_twist(e).unwrap()).collect();
    for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let base = psi.euler_factor_q(p).unwrap();
        for t in &twists {
            assert_eq!(t.euler_factor_q(p).unwrap(), base, "p={p}");
        }
    }
}

#[test]
fn twist_is_composition_with_sigma() {
    let psi = psi_x1();
    let k = &psi.field;
    for e in [1u32, 3] {
        let t = psi.galois_twist(e).unwrap();
        for pr in split_prime(k, 37).unwrap() {
            let lhs = t.eval_at_prime(&pr, 40).unwrap().value;
            let rhs = psi.eval_at_prime(&galois_prime(k, e, &pr).unwrap(), 40).unwrap().value;
            assert!(lhs.close_to(&rhs, -60.0), "e={e}");
        }
    }
}

#[test]
fn value_does_not_depend_on_the_generator() {
    let psi = psi_x1();
    let k = &psi.field;
    let pr = &split_prime(k, 13).unwrap()[0];
    let want = psi.eval_at_prime(pr, 40).unwrap();
    let mut g = want.generator.clone();
    for j in 0..5 {
        g = k.mul(&g, &k.units[j % 2]);
        if j == 2 {
            g = k.mul(&g, &k.zeta);
        }
        let fin = psi.finite_value(&g).unwrap();
        let inf = infinity_eval(k, &psi.infinity, &g, 40).unwrap();
        let v = &root_of_unity_hp(fin, inf.bits).unwrap() * &inf;
        assert!(v.close_to(&want.value.with_bits(inf.bits), -60.0));
    }
}

#[test]
fn conductor_is_minimal() {
    for psi in [psi_a1(), psi_x1()] {
        let prim = psi.primitive().unwrap();
        assert_eq!(prim.group.modulus, psi.conductor);
        assert_eq!(char_conductor(prim).unwrap(), psi.conductor);
        assert!(psi.conductor.divides(psi.modulus()));
    }
}

#[test]
fn incompatible_finite_part_is_rejected() {
    let psi = psi_a1();
    let sq = psi.chi.mul(&psi.chi);
    assert!(HeckeCharacter::new(Arc::clone(&psi.field), sq, psi.infinity, vec![]).is_err());
    let triv = FiniteCharacter::trivial(Arc::clone(&psi.chi.group));
    let ok = unit_compatible(&psi.field, &triv, &psi.infinity).unwrap();
    assert_eq!(HeckeCharacter::new(Arc::clone(&psi.field), triv, psi.infinity, vec![]).is_ok(), ok);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn unit_phase_is_additive_in_the_type(i in 1u32..5, t in 0usize..8, u in 0usize..3) {
        let k = shipped_field(i).unwrap();
        let base = InfinityType::psi_a().placements()[t];
        let doubled = InfinityType::new(base.pairs.map(|(a, b)| (2 * a, 2 * b))).unwrap();
        let unit = if u == 2 { k.zeta.clone() } else { k.units[u].clone() };
        let once = unit_phase(&k, &base, &unit).unwrap();
        prop_assert_eq!(unit_phase(&k, &doubled, &unit).unwrap(), once.add(once));
    }

    #[test]
    fn absolute_value_is_the_weight(p in prop::sample::select(vec![13u64, 37, 61, 73, 97])) {
        let psi = psi_x1();
        for pr in split_prime(&psi.field, p).unwrap() {
            let v = psi.eval_at_prime(&pr, 40).unwrap().value.to_c64();
            let n = pr.norm() as f64;
            prop_assert!((v.norm() / n.powi(psi.weight() as i32).sqrt() - 1.0).abs() < 1e-9);
        }
    }
}
