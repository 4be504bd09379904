use k3cm::numfield::{
    cubic_subfield_split, galois_prime, principal_generator, shipped_field, split_prime, IdealHNF, NFElement,
};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn degrees(i: u32, p: u64) -> Vec<u32> {
    let k = shipped_field(i).unwrap();
    let mut f: Vec<u32> = split_prime(&k, p).unwrap().iter().map(|q| q.f).collect();
    f.sort();
    f
}

#[test]
fn discriminants_and_class_groups() {
    let disc = [419904u64, 153664, 8340544, 59105344];
    for i in 1..=4u32 {
        let k = shipped_field(i).unwrap();
        assert_eq!(k.abs_disc, disc[i as usize - 1]);
        assert_eq!(k.torsion_order, 4);
        assert_eq!(k.units.len(), 2);
    }
    let k4 = shipped_field(4).unwrap();
    assert_eq!(k4.class_number, 4);
    assert_eq!(k4.class_cyc, vec![2, 2]);
    assert!(k4.class_gens.iter().all(|g| g.prime.p == 61 && g.order == 2));
    for i in 1..=3 {
        assert_eq!(shipped_field(i).unwrap().class_number, 1);
    }
}

#[test]
fn sigma_has_order_six_and_cube_is_conjugation() {
    let x = NFElement::from_i64(&[2, -1, 3, 1, 0, 4]);
    for i in 1..=4 {
        let k = shipped_field(i).unwrap();
        assert_eq!(k.galois_apply(6, &x), x);
        for j in 1..6 {
            assert_ne!(k.galois_apply(j, &x), x, "K{i} sigma^{j}");
        }
        let e = k.embed_f64(&x);
        let c = k.embed_f64(&k.galois_apply(3, &x));
        for s in 0..6 {
            assert!((c[s] - e[s].conj()).norm() < 1e-6 * e[s].norm().max(1.0));
        }
    }
}

// Factorization patterns from tools/oracles.py.
#[test]
fn splitting_matches_reference() {
    let linear: &[(u32, &[u64])] = &[(1, &[17, 37]), (2, &[13, 29]), (3, &[37]), (4, &[29, 61])];
    let cubic: &[(u32, &[u64])] = &[(1, &[5, 13, 29, 61]), (2, &[5, 17, 37, 61]), (3, &[5, 13, 17, 29, 61]), (4, &[5, 13, 17, 37])];
    for (i, ps) in linear {
        for &p in *ps {
            assert_eq!(degrees(*i, p), vec![1; 6], "K{i} p={p}");
        }
    }
    for (i, ps) in cubic {
        for &p in *ps {
            assert_eq!(degrees(*i, p), vec![3, 3], "K{i} p={p}");
        }
    }
}

#[test]
fn ramified_primes_of_the_first_field() {
    let k = shipped_field(1).unwrap();
    for p in [2, 3] {
        assert!(split_prime(&k, p).unwrap().iter().all(|q| q.e > 1), "p={p}");
    }
    assert!(split_prime(&k, 5).unwrap().iter().all(|q| q.e == 1));
}

#[test]
fn inert_in_cubic_subfield() {
    let k = shipped_field(1).unwrap();
    assert_eq!(cubic_subfield_split(&k, 5).unwrap(), vec![(1, 3)]);
    assert_eq!(cubic_subfield_split(&k, 17).unwrap(), vec![(1, 1); 3]);
}

#[test]
fn galois_acts_on_primes_above_split_prime() {
    let k = shipped_field(1).unwrap();
    let ps = split_prime(&k, 37).unwrap();
    let orbit: Vec<usize> = (0..6)
        .map(|e| galois_prime(&k, e, &ps[0]).unwrap().index)
        .collect();
    let mut sorted = orbit.clone();
    sorted.sort();
    assert_eq!(sorted, (0..6).collect::<Vec<_>>());
}

#[test]
fn generators_of_split_primes() {
    for i in 1..=3 {
        let k = shipped_field(i).unwrap();
        for q in split_prime(&k, 13).unwrap() {
            let a = principal_generator(&q.ideal, &k).unwrap();
            assert_eq!(IdealHNF::principal(&k, &a), q.ideal);
            assert_eq!(k.norm(&a).to_integer().abs(), BigInt::from(q.norm()));
        }
    }
}

#[test]
fn non_principal_prime_in_class_number_four() {
    let k = shipped_field(4).unwrap();
    let g = &k.class_gens[0];
    assert!(principal_generator(&g.prime.ideal, &k).is_err());
    let sq = g.prime.ideal.pow(&k, 2);
    assert_eq!(IdealHNF::principal(&k, &g.principalization), sq);
}

fn element() -> impl Strategy<Value = NFElement> {
    prop::collection::vec(-6i64..7, 6).prop_map(|v| NFElement::from_i64(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_is_multiplicative(i in 1u32..5, a in element(), b in element()) {
        let k = shipped_field(i).unwrap();
        prop_assert_eq!(k.norm(&k.mul(&a, &b)), k.norm(&a) * k.norm(&b));
    }

    #[test]
    fn primes_above_p_multiply_to_p(i in 1u32..5, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43])) {
        let k = shipped_field(i).unwrap();
        let ps = split_prime(&k, p).unwrap();
        let mut prod = IdealHNF::unit();
        for q in &ps {
            prod = prod.mul(&k, &q.ideal.pow(&k, q.e));
        }
        prop_assert_eq!(&prod.norm, &BigInt::from(p).pow(6));
        prop_assert_eq!(prod, IdealHNF::principal(&k, &NFElement::from_int(p as i64)));
    }

    #[test]
    fn generator_spans_the_ideal(i in 1u32..4, a in element(), u in 0usize..2, e in 1u64..3) {
        let k = shipped_field(i).unwrap();
        prop_assume!(!a.is_zero());
        let b = k.mul(&a, &k.pow(&k.units[u], e));
        let ideal = IdealHNF::principal(&k, &b);
        prop_assert_eq!(&ideal, &IdealHNF::principal(&k, &a));
        let g = principal_generator(&ideal, &k).unwrap();
        prop_assert_eq!(IdealHNF::principal(&k, &g), ideal);
    }

    #[test]
    fn galois_orbits_of_primes(i in 1u32..5, p in prop::sample::select(vec![5u64, 13, 17, 29, 37, 61])) {
        let k = shipped_field(i).unwrap();
        let ps = split_prime(&k, p).unwrap();
        for q in &ps {
            let mut orbit: Vec<usize> = (0..6).map(|e| galois_prime(&k, e, q).unwrap().index).collect();
            orbit.sort();
            orbit.dedup();
            prop_assert_eq!(orbit.len(), ps.len());
        }
    }

    #[test]
    fn sigma_permutes_embeddings(i in 1u32..5, a in element()) {
        let k = shipped_field(i).unwrap();
        let e = k.embed_f64(&a);
        let s = k.embed_f64(&k.galois_apply(1, &a));
        for j in 0..6 {
            let d = (s[j] - e[k.sigma_perm[j]]).norm();
            prop_assert!(d < 1e-6 * e[k.sigma_perm[j]].norm().max(1.0));
        }
    }
}
