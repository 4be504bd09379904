use k3cm::ffarith::{factor_poly_mod_p, ff_context, is_irreducible, quadratic_character, FpPoly};
use k3cm::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn prime_field_uses_trivial_modulus() {
    let k = ff_context(5, 1).unwrap();
    assert_eq!(k.modulus, vec![0, 1]);
    assert_eq!(k.q(), 5);
}

#[test]
fn extension_sizes() {
    assert_eq!(ff_context(5, 3).unwrap().q(), 125);
    assert_eq!(ff_context(3, 6).unwrap().q(), 729);
}

// Reference moduli from an exhaustive scan with an independent
// irreducibility test (tools/oracles.py).
#[test]
fn first_irreducible_moduli() {
    assert_eq!(ff_context(17, 2).unwrap().modulus, vec![3, 0, 1]);
    assert_eq!(ff_context(5, 3).unwrap().modulus, vec![1, 1, 0, 1]);
    assert_eq!(ff_context(3, 6).unwrap().modulus, vec![2, 1, 0, 0, 0, 0, 1]);
    assert_eq!(ff_context(7, 4).unwrap().modulus, vec![1, 1, 0, 0, 1]);
}

#[test]
fn bad_context_arguments() {
    assert!(matches!(ff_context(15, 1), Err(Error::NotPrime(15))));
    assert!(matches!(ff_context(5, 7), Err(Error::DegreeOutOfRange(7))));
    assert!(matches!(ff_context(5, 0), Err(Error::DegreeOutOfRange(0))));
}

#[test]
fn small_quadratic_characters() {
    let f17 = ff_context(17, 1).unwrap();
    assert_eq!(quadratic_character(&f17.from_int(4)).unwrap(), 1);
    assert_eq!(quadratic_character(&f17.zero()).unwrap(), 0);
    let f5 = ff_context(5, 1).unwrap();
    assert_eq!(quadratic_character(&f5.from_int(2)).unwrap(), -1);
}

#[test]
fn characteristic_two_is_rejected() {
    let f2 = ff_context(2, 1).unwrap();
    assert!(matches!(quadratic_character(&f2.one()), Err(Error::CharacteristicTwo)));
}

#[test]
fn character_sums_vanish() {
    for (p, m) in [(3, 1), (5, 2), (7, 3), (3, 4), (3, 5), (3, 6), (11, 2)] {
        let k = ff_context(p, m).unwrap();
        let s: i64 = k.elements().map(|x| quadratic_character(&x).unwrap() as i64).sum();
        assert_eq!(s, 0, "p={p} m={m}");
    }
}

#[test]
fn sum_of_squares_mod_5_and_7() {
    let f = factor_poly_mod_p(&big(&[1, 0, 1]), 5).unwrap();
    assert_eq!(f, vec![(FpPoly::new(5, vec![2, 1]), 1), (FpPoly::new(5, vec![3, 1]), 1)]);
    let g = factor_poly_mod_p(&big(&[1, 0, 1]), 7).unwrap();
    assert_eq!(g, vec![(FpPoly::new(7, vec![1, 0, 1]), 1)]);
}

#[test]
fn zero_polynomial_mod_p() {
    assert!(matches!(factor_poly_mod_p(&big(&[5, 10, 0, 15]), 5), Err(Error::ZeroModP(5))));
}

// Factor degrees of the first field polynomial, from tools/oracles.py.
#[test]
fn field_polynomial_splitting() {
    let f = big(&[1, 0, 9, 0, 6, 0, 1]);
    let degrees = |p| {
        let mut d: Vec<usize> = factor_poly_mod_p(&f, p)
            .unwrap()
            .iter()
            .flat_map(|(g, e)| std::iter::repeat_n(g.degree().unwrap(), *e as usize))
            .collect();
        d.sort();
        d
    };
    assert_eq!(degrees(17), vec![1; 6]);
    assert_eq!(degrees(37), vec![1; 6]);
    assert_eq!(degrees(5), vec![3, 3]);
    assert_eq!(degrees(13), vec![3, 3]);
}

#[test]
fn repeated_factor_multiplicity() {
    // (x - 1)^3 (x + 2) over F_7
    let f = big(&[-2, 5, -3, -1, 1]);
    let fac = factor_poly_mod_p(&f, 7).unwrap();
    assert_eq!(fac, vec![(FpPoly::new(7, vec![2, 1]), 1), (FpPoly::new(7, vec![6, 1]), 3)]);
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97, 101])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_resubstitutes(p in small_prime(), coeffs in prop::collection::vec(-1000i64..1000, 2..12)) {
        let f = big(&coeffs);
        let fp = FpPoly::from_bigint(&f, p);
        prop_assume!(fp.degree().is_some_and(|d| d >= 1));
        let fac = factor_poly_mod_p(&f, p).unwrap();
        let mut prod = FpPoly::one(p);
        for (g, e) in &fac {
            prop_assert_eq!(g.lead(), 1);
            prop_assert!(is_irreducible(g));
            for _ in 0..*e {
                prod = prod.mul(g);
            }
        }
        prop_assert_eq!(prod, fp.monic());
        prop_assert!(fac.windows(2).all(|w| w[0].0.degree() <= w[1].0.degree()));
    }

    #[test]
    fn quadratic_character_is_multiplicative(p in small_prime(), m in 1usize..4, a in any::<u64>(), b in any::<u64>()) {
        let k = ff_context(p, m).unwrap();
        let x = k.from_index(a % k.q());
        let y = k.from_index(b % k.q());
        prop_assume!(!x.is_zero() && !y.is_zero());
        let lhs = quadratic_character(&x.mul(&y)).unwrap();
        prop_assert_eq!(lhs, quadratic_character(&x).unwrap() * quadratic_character(&y).unwrap());
    }

    #[test]
    fn frobenius_fixes_the_field(p in small_prime(), m in 1usize..7, a in any::<u64>()) {
        prop_assume!((p as u128).pow(m as u32) < 1u128 << 40);
        let k = ff_context(p, m).unwrap();
        let x = k.from_index(a % k.q());
        prop_assert_eq!(x.pow(k.q() as u128), x);
    }

    #[test]
    fn inverses(p in small_prime(), m in 1usize..5, a in any::<u64>()) {
        let k = ff_context(p, m).unwrap();
        let x = k.from_index(a % k.q());
        match x.inv() {
            Some(y) => prop_assert_eq!(x.mul(&y), k.one()),
            None => prop_assert!(x.is_zero()),
        }
    }
}
