use super::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

#[test]
fn shipped_fields_verify() {
    let want = [419904u64, 153664, 8340544, 59105344];
    for i in 1..=4u32 {
        let k = load_field(i).unwrap();
        assert_eq!(k.abs_disc, want[i as usize - 1]);
        assert_eq!(k.torsion_order, 4);
        let theta = k.from_power_basis(&[BigRational::from_integer(0.into()), BigRational::one()]);
        assert_eq!(k.galois_apply(6, &theta), theta);
    }
    assert_eq!(load_field(4).unwrap().class_number, 4);
}

#[test]
fn split_and_generate() {
    for i in 1..=4u32 {
        let k = shipped_field(i).unwrap();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 29, 31, 37, 61] {
            let ps = split_prime(&k, p).unwrap();
            let total: u32 = ps.iter().map(|q| q.e * q.f).sum();
            assert_eq!(total, 6, "K{i} p={p}");
            let mut prod = IdealHNF::unit();
            for q in &ps {
                assert_eq!(q.ideal.norm, BigInt::from(q.p).pow(q.f));
                prod = prod.mul(&k, &q.ideal.pow(&k, q.e));
            }
            assert_eq!(prod, IdealHNF::principal(&k, &NFElement::from_int(p as i64)));
            let ef: u32 = cubic_subfield_split(&k, p).unwrap().iter().map(|(e, f)| e * f).sum();
            assert_eq!(ef, 3);
            if k.class_number == 1 {
                for q in &ps {
                    let a = principal_generator(&q.ideal, &k).unwrap();
                    assert_eq!(IdealHNF::principal(&k, &a), q.ideal);
                }
            }
        }
    }
}

#[test]
fn embeddings_and_norms() {
    let k = shipped_field(3).unwrap();
    let x = NFElement::from_i64(&[3, -1, 2, 0, 5, 1]);
    let e = k.embed(&x, 40).unwrap();
    let mut prod = num_complex::Complex64::new(1.0, 0.0);
    for (a, b) in &e {
        prod *= a.to_c64() * b.to_c64();
        assert!((a.to_c64() - b.to_c64().conj()).norm() < 1e-20 * a.to_c64().norm().max(1.0));
    }
    let n = k.norm(&x).to_integer();
    assert!((prod.re - n.to_string().parse::<f64>().unwrap()).abs() < 1e-6 * n.abs().to_string().parse::<f64>().unwrap());
}
