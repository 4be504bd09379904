use super::*;
use crate::numfield::{shipped_field, split_prime, NFElement};
use rand::{Rng, SeedableRng};
use std::sync::Arc;

fn modulus(i: u32, spec: &[(u64, usize, u32)]) -> Modulus {
    let k = shipped_field(i).unwrap();
    let f = spec
        .iter()
        .map(|&(p, idx, e)| (split_prime(&k, p).unwrap()[idx].clone(), e))
        .collect();
    Modulus::new(f).unwrap()
}

#[test]
fn trivial_modulus() {
    let g = unit_group(shipped_field(1).unwrap(), &Modulus::unit()).unwrap();
    assert_eq!(g.rank(), 0);
    assert_eq!(g.discrete_log(&NFElement::from_int(5)).unwrap(), Vec::<u64>::new());
}

#[test]
fn prime_and_square() {
    let k = shipped_field(1).unwrap();
    let ps = split_prime(&k, 37).unwrap();
    let p1 = ps.iter().position(|q| q.f == 1);
    if let Some(j) = p1 {
        let g = unit_group(Arc::clone(&k), &modulus(1, &[(37, j, 1)])).unwrap();
        assert_eq!(g.cyc, vec![36]);
        let g2 = unit_group(Arc::clone(&k), &modulus(1, &[(37, j, 2)])).unwrap();
        assert_eq!(g2.order(), 37 * 36);
    }
}

#[test]
fn orders_and_round_trip() {
    let cases: Vec<(u32, Vec<(u64, usize, u32)>)> = vec![
        (1, vec![(2, 0, 7)]),
        (1, vec![(2, 0, 4), (3, 0, 3)]),
        (2, vec![(2, 0, 5), (7, 0, 2)]),
        (3, vec![(2, 0, 3), (7, 0, 1), (19, 0, 2)]),
        (4, vec![(2, 0, 6), (31, 0, 2)]),
    ];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (i, spec) in cases {
        let k = shipped_field(i).unwrap();
        let m = modulus(i, &spec);
        let g = unit_group(Arc::clone(&k), &m).unwrap();
        assert_eq!(g.order(), g.order_formula());
        for w in g.cyc.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for (j, gen) in g.gens.iter().enumerate() {
            let mut e = vec![0; g.rank()];
            e[j] = 1;
            assert_eq!(g.discrete_log_res(gen).unwrap(), e);
            assert_eq!(g.ring.pow(gen, g.cyc[j] as u128), g.ring.one());
        }
        let mut hits = 0;
        while hits < 200 {
            let v: Vec<i64> = (0..6).map(|_| rng.gen_range(-500..500)).collect();
            let x = NFElement::from_i64(&v);
            match g.discrete_log(&x) {
                Ok(l) => {
                    assert_eq!(g.exp(&l), g.ring.from_element(&x).unwrap());
                    hits += 1;
                }
                Err(crate::Error::NotCoprime) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn characters_and_conductors() {
    let k = shipped_field(2).unwrap();
    let m = modulus(2, &[(2, 0, 5), (7, 0, 2)]);
    let g = Arc::new(unit_group(Arc::clone(&k), &m).unwrap());
    let all: Vec<_> = enumerate_chars(Arc::clone(&g), 4).collect();
    let want: u64 = g.cyc.iter().map(|&d| num_integer::gcd(d, 4)).product();
    assert_eq!(all.len() as u64, want);
    assert!(all[0].is_trivial());
    assert_eq!(char_conductor(&all[0]).unwrap(), Modulus::unit());
    for chi in all.iter().take(40) {
        let c = char_conductor(chi).unwrap();
        assert!(c.divides(&m));
        assert!(4 % chi.order == 0);
    }
    assert_eq!(enumerate_chars(Arc::clone(&g), 1).count(), 1);
}
