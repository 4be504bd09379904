use k3cm::numfield::{shipped_field, split_prime, NFElement};
use k3cm::resring::{
    char_conductor, enumerate_chars, unit_group, unit_group_with_budget, FiniteCharacter, Modulus, UnitGroupStructure,
};
use k3cm::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

fn modulus(i: u32, spec: &[(u64, usize, u32)]) -> Modulus {
    let k = shipped_field(i).unwrap();
    let f = spec.iter().map(|&(p, idx, e)| (split_prime(&k, p).unwrap()[idx].clone(), e)).collect();
    Modulus::new(f).unwrap()
}

fn group(i: u32, spec: &[(u64, usize, u32)]) -> Arc<UnitGroupStructure> {
    Arc::new(unit_group(shipped_field(i).unwrap(), &modulus(i, spec)).unwrap())
}

#[test]
fn unit_modulus_gives_trivial_group() {
    let g = unit_group(shipped_field(3).unwrap(), &Modulus::unit()).unwrap();
    assert_eq!(g.order(), 1);
    assert!(g.cyc.is_empty());
    assert_eq!(enumerate_chars(Arc::new(g), 4).count(), 1);
}

#[test]
fn degree_one_prime_and_its_square() {
    let g = group(1, &[(37, 0, 1)]);
    assert_eq!(g.cyc, vec![36]);
    let g2 = group(1, &[(37, 0, 2)]);
    assert_eq!(g2.cyc, vec![37 * 36]);
}

#[test]
fn residue_degree_three() {
    let g = group(1, &[(5, 0, 1)]);
    assert_eq!(g.cyc, vec![124]);
}

#[test]
fn two_adic_part() {
    let g = group(1, &[(2, 0, 6)]);
    assert_eq!(g.order(), g.order_formula());
    assert!(g.cyc.windows(2).all(|w| w[1] % w[0] == 0));
}

#[test]
fn generators_have_unit_vector_logs() {
    let g = group(3, &[(2, 0, 4), (7, 0, 1), (19, 0, 2)]);
    for (j, gen) in g.gens.iter().enumerate() {
        let mut e = vec![0; g.rank()];
        e[j] = 1;
        assert_eq!(g.discrete_log_res(gen).unwrap(), e);
    }
}

#[test]
fn logs_round_trip_on_random_units() {
    let g = group(2, &[(2, 0, 5), (7, 0, 2)]);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut hits = 0;
    while hits < 1000 {
        let v: Vec<i64> = (0..6).map(|_| rng.gen_range(-1000..1000)).collect();
        let x = NFElement::from_i64(&v);
        match g.discrete_log(&x) {
            Ok(l) => {
                assert_eq!(g.exp(&l), g.ring.from_element(&x).unwrap());
                hits += 1;
            }
            Err(Error::NotCoprime) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn non_unit_has_no_log() {
    let k = shipped_field(1).unwrap();
    let g = group(1, &[(37, 0, 1)]);
    assert!(matches!(g.discrete_log(&NFElement::from_int(37)), Err(Error::NotCoprime)));
    let p = &split_prime(&k, 37).unwrap()[0];
    assert!(matches!(g.discrete_log(&p.gen), Err(Error::NotCoprime)));
}

#[test]
fn norm_budget_is_enforced() {
    let k = shipped_field(1).unwrap();
    let m = modulus(1, &[(2, 0, 12)]);
    assert!(matches!(unit_group_with_budget(k, &m, 1000), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn character_counts() {
    let g = group(2, &[(2, 0, 5), (7, 0, 2)]);
    for n in [1u64, 2, 4] {
        let want: u64 = g.cyc.iter().map(|&d| num_integer::gcd(d, n)).product();
        let it = enumerate_chars(Arc::clone(&g), n);
        assert_eq!(it.total(), want as u128);
        let all: Vec<_> = it.collect();
        assert_eq!(all.len() as u64, want);
        assert!(all.iter().all(|c| n % c.order == 0));
    }
}

#[test]
fn conductors() {
    let g = group(1, &[(37, 0, 2)]);
    let m1 = modulus(1, &[(37, 0, 1)]);
    let trivial = FiniteCharacter::trivial(Arc::clone(&g));
    assert_eq!(char_conductor(&trivial).unwrap(), Modulus::unit());
    // characters factoring through (O/P)^x have conductor P
    let tame = FiniteCharacter::new(Arc::clone(&g), vec![37]);
    assert_eq!(tame.order, 36);
    assert_eq!(char_conductor(&tame).unwrap(), m1);
    let wild = FiniteCharacter::new(Arc::clone(&g), vec![36]);
    assert_eq!(wild.order, 37);
    assert_eq!(char_conductor(&wild).unwrap(), g.modulus);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn characters_are_multiplicative(a in prop::collection::vec(0u64..10_000, 3), x in prop::collection::vec(-300i64..300, 6), y in prop::collection::vec(-300i64..300, 6)) {
        let g = group(3, &[(2, 0, 4), (7, 0, 1), (19, 0, 2)]);
        let a = a.into_iter().take(g.rank()).chain(std::iter::repeat(0)).take(g.rank()).collect();
        let chi = FiniteCharacter::new(Arc::clone(&g), a);
        let k = shipped_field(3).unwrap();
        let (x, y) = (NFElement::from_i64(&x), NFElement::from_i64(&y));
        let (Ok(cx), Ok(cy)) = (chi.eval(&x), chi.eval(&y)) else { return Ok(()) };
        prop_assert_eq!(chi.eval(&k.mul(&x, &y)).unwrap(), cx.add(cy));
    }

    #[test]
    fn character_products_add_exponents(a in prop::collection::vec(0u64..1000, 2), b in prop::collection::vec(0u64..1000, 2), x in prop::collection::vec(-300i64..300, 6)) {
        let g = group(2, &[(2, 0, 5), (7, 0, 2)]);
        let pad = |v: Vec<u64>| v.into_iter().chain(std::iter::repeat(0)).take(g.rank()).collect::<Vec<_>>();
        let (c1, c2) = (FiniteCharacter::new(Arc::clone(&g), pad(a)), FiniteCharacter::new(Arc::clone(&g), pad(b)));
        let x = NFElement::from_i64(&x);
        let (Ok(v1), Ok(v2)) = (c1.eval(&x), c2.eval(&x)) else { return Ok(()) };
        prop_assert_eq!(c1.mul(&c2).eval(&x).unwrap(), v1.add(v2));
        prop_assert!(char_conductor(&c1.mul(&c2)).unwrap().divides(&g.modulus));
    }
}
