mod common;

use common::{curve_row, factor, strings, weight_two_row};
use k3cm::counting::{
    algebraic_part_factor, count_curve, count_curve_with, count_surface, count_surface_with, curve_euler_factor,
    divide, exterior_square, surface_bad_primes, surface_bad_primes_with_bound, weil_from_traces,
    weil_from_traces_any_sign, Channel, KernelRegistry, NaiveKernel, TraceData, Varieties, WorkBudget, ZechKernel,
};
use k3cm::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn varieties() -> Varieties {
    Varieties::load_default()
}

// Brute-force counts from tools/oracles.py.
#[test]
fn curve_counts_match_reference() {
    let v = varieties();
    let cases: &[(u32, u64, u32, i128)] = &[
        (1, 13, 1, 14),
        (1, 13, 2, 170),
        (1, 17, 1, 12),
        (1, 17, 2, 284),
        (1, 29, 1, 30),
        (1, 37, 1, 32),
        (2, 13, 1, 18),
        (2, 13, 2, 168),
        (2, 17, 1, 18),
        (2, 17, 2, 290),
        (2, 29, 1, 32),
        (2, 37, 1, 38),
        (3, 13, 1, 14),
        (3, 13, 2, 170),
        (3, 37, 1, 42),
        (4, 17, 2, 290),
        (4, 29, 1, 34),
        (4, 37, 1, 38),
    ];
    for &(i, p, m, n) in cases {
        let c = count_curve(v.curve(i).unwrap(), p, m).unwrap();
        assert_eq!(c.n, n, "C{i} p={p} m={m}");
        assert_eq!(c.t as i128, (p as i128).pow(m) + 1 - n);
    }
}

#[test]
fn surface_sums_match_reference() {
    let v = varieties();
    for &(i, p, s) in &[(1, 13, 0), (1, 17, 6), (1, 37, -66), (2, 13, 2), (2, 17, 0), (2, 37, 0), (3, 13, 0), (3, 17, 0), (3, 37, -14)] {
        let c = count_surface(v.surface(i).unwrap(), p, 1, WorkBudget::Default).unwrap();
        assert_eq!(c.s, s, "X{i} p={p}");
        let q = p as i128;
        assert_eq!(c.n, q * q + q + 1 + s as i128 + q * c.nodes as i128);
    }
}

#[test]
fn surface_bad_primes_are_known() {
    let v = varieties();
    assert_eq!(surface_bad_primes(v.surface(1).unwrap()).unwrap(), vec![2, 3]);
    assert_eq!(surface_bad_primes(v.surface(2).unwrap()).unwrap(), vec![2, 7]);
    assert_eq!(surface_bad_primes(v.surface(3).unwrap()).unwrap(), vec![2, 7, 11, 19]);
}

#[test]
fn bad_primes_stable_under_larger_trial_bound() {
    let v = varieties();
    for i in 1..=3 {
        let s = v.surface(i).unwrap();
        assert_eq!(
            surface_bad_primes_with_bound(s, 5_000_000).unwrap(),
            surface_bad_primes(s).unwrap()
        );
    }
}

#[test]
fn counting_rejects_bad_input() {
    let v = varieties();
    let x1 = v.surface(1).unwrap();
    assert!(matches!(count_surface(x1, 3, 1, WorkBudget::Default), Err(Error::BadReduction(3))));
    assert!(matches!(count_surface(x1, 15, 1, WorkBudget::Default), Err(Error::NotPrime(15))));
    assert!(matches!(count_surface(x1, 5, 4, WorkBudget::Default), Err(Error::DegreeOutOfRange(4))));
    assert!(matches!(
        count_surface(x1, 101, 2, WorkBudget::MaxPoints(1000)),
        Err(Error::BudgetExceeded { .. })
    ));
    assert!(matches!(count_curve(v.curve(1).unwrap(), 3, 1), Err(Error::BadReduction(3))));
}

#[test]
fn zero_traces_give_the_trivial_shape() {
    let td = TraceData { p: 5, traces: vec![(1, 0), (2, 0), (3, 0)], channel: Channel::CurveH1 };
    let e = weil_from_traces(&td, 1, 1).unwrap();
    assert_eq!(e.coeffs_string(), strings(&[1, 0, 0, 0, 0, 0, 125]));
}

#[test]
fn missing_trace_is_reported() {
    let td = TraceData { p: 5, traces: vec![(1, 0), (2, 0)], channel: Channel::CurveH1 };
    assert!(matches!(weil_from_traces(&td, 1, 1), Err(Error::InvalidTraces(_))));
}

#[test]
fn curve_factors_reproduce_table() {
    let v = varieties();
    for i in 1..=4 {
        let (_, row) = curve_row(i);
        let p = common::table_prime(i);
        let e = curve_euler_factor(v.curve(i).unwrap(), p).unwrap();
        assert_eq!(e.coeffs_string(), strings(&row), "C{i}");
    }
}

#[test]
fn table_row_round_trips_through_traces() {
    let (_, row) = curve_row(1);
    let e = factor(17, 1, &row);
    let s = e.power_sums(3);
    let traces = (1..=3).map(|m| (m as u32, i64::try_from(&s[m - 1]).unwrap())).collect();
    let td = TraceData { p: 17, traces, channel: Channel::CurveH1 };
    assert_eq!(weil_from_traces_any_sign(&td, 1).unwrap(), e);
}

#[test]
fn surface_factor_from_two_counts_and_table() {
    let v = varieties();
    let x3 = v.surface(3).unwrap();
    let (_, row) = weight_two_row(3);
    let s = factor(37, 2, &row).power_sums(3);
    let t: Vec<i64> = s.iter().map(|x| i64::try_from(x).unwrap()).collect();
    let t1 = count_surface(x3, 37, 1, WorkBudget::Default).unwrap().s;
    let t2 = count_surface(x3, 37, 2, WorkBudget::Default).unwrap().s;
    assert_eq!((t1, t2), (t[0], t[1]));
    let td = TraceData { p: 37, traces: vec![(1, t1), (2, t2), (3, t[2])], channel: Channel::TranscendentalK3 };
    assert_eq!(weil_from_traces(&td, 2, 1).unwrap().coeffs_string(), strings(&row));
}

#[test]
fn exterior_square_of_split_product() {
    // (1 - 2T)(1 - 3T)(1 - 5T)
    let e = factor(7, 1, &[1, -10, 31, -30]);
    let w = exterior_square(&e);
    // (1 - 6T)(1 - 10T)(1 - 15T)
    assert_eq!(w.coeffs_string(), strings(&[1, -31, 300, -900]));
}

#[test]
fn exterior_square_splits_into_table_rows() {
    let (_, a1) = curve_row(1);
    let (_, x1) = weight_two_row(1);
    let (_, pp) = common::psi_prime_row(1);
    let w = exterior_square(&factor(17, 1, &a1));
    assert_eq!(w.degree(), 15);
    let alg = algebraic_part_factor(&[(1, 1), (1, 1), (1, 1)], 17).unwrap();
    let rest = divide(&divide(&w, &alg).unwrap(), &factor(17, 2, &x1)).unwrap();
    assert_eq!(rest.coeffs_string(), strings(&pp));
}

#[test]
fn algebraic_part_examples() {
    assert_eq!(algebraic_part_factor(&[(1, 3)], 5).unwrap().coeffs_string(), strings(&[1, 0, 0, -125]));
    assert_eq!(algebraic_part_factor(&[(1, 1), (1, 2)], 3).unwrap().coeffs_string(), strings(&[1, -3, -9, 27]));
    assert!(matches!(algebraic_part_factor(&[(3, 1)], 3), Err(Error::Ramified(3))));
}

#[test]
fn division_remainder_is_an_error() {
    let a = factor(5, 1, &[1, 0, 1]);
    let b = factor(5, 1, &[1, 1]);
    assert!(matches!(divide(&a, &b), Err(Error::DivisionRemainder(5))));
}

#[test]
fn registry_lists_both_kernels() {
    let r = KernelRegistry::default();
    assert_eq!(r.names(), vec!["naive", "zech"]);
    assert!(r.get("naive").is_ok());
    assert!(r.get("fft").is_err());
}

fn good_surface_prime() -> impl Strategy<Value = (u32, u64)> {
    prop_oneof![
        prop::sample::select(vec![5u64, 7, 11, 13, 17, 19, 23, 29]).prop_map(|p| (1, p)),
        prop::sample::select(vec![3u64, 5, 11, 13, 17, 19, 23, 29]).prop_map(|p| (2, p)),
        prop::sample::select(vec![3u64, 5, 13, 17, 23, 29]).prop_map(|p| (3, p)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernels_agree_on_surfaces((i, p) in good_surface_prime(), m in 1u32..3) {
        prop_assume!(m == 1 || p <= 13);
        let v = varieties();
        let s = v.surface(i).unwrap();
        let a = count_surface_with(&NaiveKernel, s, p, m, WorkBudget::Default).unwrap();
        let b = count_surface_with(&ZechKernel, s, p, m, WorkBudget::Default).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn kernels_agree_on_curves(i in 1u32..5, p in prop::sample::select(vec![5u64, 13, 17, 29, 37, 41]), m in 1u32..4) {
        let v = varieties();
        let c = v.curve(i).unwrap();
        prop_assume!(!c.bad_primes().contains(&p));
        prop_assume!(m < 3 || p <= 17);
        prop_assert_eq!(count_curve_with(&NaiveKernel, c, p, m).unwrap(), count_curve_with(&ZechKernel, c, p, m).unwrap());
    }

    #[test]
    fn traces_respect_weil_bounds((i, p) in good_surface_prime(), j in 1u32..5, q in prop::sample::select(vec![13u64, 17, 29, 37, 41, 53])) {
        let v = varieties();
        let s = count_surface(v.surface(i).unwrap(), p, 1, WorkBudget::Default).unwrap().s;
        prop_assert!(s.unsigned_abs() <= 6 * p);
        let c = v.curve(j).unwrap();
        prop_assume!(!c.bad_primes().contains(&q));
        let t = count_curve(c, q, 1).unwrap().t;
        prop_assert!((t as f64).abs() <= 6.0 * (q as f64).sqrt());
        let e = curve_euler_factor(c, q).unwrap();
        prop_assert_eq!(e.coeff(6), BigInt::from(q).pow(3));
    }
}
