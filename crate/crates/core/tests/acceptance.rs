//! End-to-end acceptance run: builds the full report for all four cases and
//! checks each criterion against it. One line per criterion is printed; run
//! with `--nocapture` to see them.

mod common;

use common::{curve_row, psi_prime_row, strings, weight_two_row};
use k3cm::counting::{surface_bad_primes, EulerFactor};
use k3cm::ffarith::{factor_poly_mod_p, ff_context, is_irreducible, quadratic_character, FpPoly};
use k3cm::hecke::{infinity_eval, root_of_unity_hp, HeckeCharacter};
use k3cm::numfield::{shipped_field, split_prime, IdealHNF, NFElement};
use k3cm::pipeline::{build_report, match_curve, Config, Context, FullReport, MatchReport, PrimeRecord};
use k3cm::resring::{unit_group, Modulus};
use k3cm::Error;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Duration;

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn report_line(n: u32, title: &str, o: &Outcome) -> bool {
    if o.failures.is_empty() {
        println!("criterion {n}: PASS  {title}");
        true
    } else {
        println!("criterion {n}: FAIL  {title}: {}", o.failures.join("; "));
        false
    }
}

fn secs(t: &BTreeMap<String, Duration>, key: &str) -> f64 {
    t.get(key).map(|d| d.as_secs_f64()).unwrap_or(f64::MAX)
}

fn check_match(o: &mut Outcome, r: Option<&MatchReport>, label: &str, norm: u64, row: &[i64]) {
    let Some(r) = r else {
        o.check(false, format!("{label}: no report"));
        return;
    };
    o.check(r.verdict.is_success(), format!("{label}: verdict {}", r.verdict.as_str()));
    o.check(r.orbits_after == 1, format!("{label}: {} orbits", r.orbits_after));
    o.check(
        r.conductor_norm.as_deref() == Some(norm.to_string().as_str()),
        format!("{label}: conductor norm {:?}", r.conductor_norm),
    );
    o.check(r.table_row.as_deref() == Some(strings(row).as_slice()), format!("{label}: factor {:?}", r.table_row));
}

/// Every good prime up to `bound` is in the log with exact agreement, and
/// carries at least `m(p)` traces.
fn check_traces(o: &mut Outcome, label: &str, log: &[PrimeRecord], good: &[u64], bound: u64, m: impl Fn(u64) -> usize) {
    for &p in good.iter().filter(|&&p| p <= bound) {
        match log.iter().find(|r| r.p == p) {
            None => o.check(false, format!("{label}: p = {p} not compared")),
            Some(r) => {
                o.check(r.counted.len() >= m(p), format!("{label}: p = {p} has {} traces", r.counted.len()));
                o.check(r.counted == r.character && r.verdict == "match", format!("{label}: p = {p} {}", r.verdict));
            }
        }
    }
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn property_suite(ctx: &Context, psi: &HeckeCharacter, first: &str) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    for (p, m) in [(3, 2), (5, 3), (7, 2), (11, 1), (13, 2)] {
        let k = ff_context(p, m).unwrap();
        let sum: i64 = k.elements().map(|x| quadratic_character(&x).unwrap() as i64).sum();
        o.check(sum == 0, format!("character sum over F_{p}^{m}"));
        for _ in 0..50 {
            let x = k.from_index(rng.gen_range(1..k.q()));
            let y = k.from_index(rng.gen_range(1..k.q()));
            let lhs = quadratic_character(&x.mul(&y)).unwrap();
            let rhs = quadratic_character(&x).unwrap() * quadratic_character(&y).unwrap();
            o.check(lhs == rhs, format!("multiplicativity over F_{p}^{m}"));
        }
    }

    for _ in 0..50 {
        let p = [3u64, 5, 7, 11, 13, 101][rng.gen_range(0..6)];
        let coeffs: Vec<BigInt> = (0..rng.gen_range(3..10)).map(|_| BigInt::from(rng.gen_range(-50..50))).collect();
        let fp = FpPoly::from_bigint(&coeffs, p);
        if fp.degree().is_none_or(|d| d == 0) {
            continue;
        }
        let mut prod = FpPoly::one(p);
        for (g, e) in factor_poly_mod_p(&coeffs, p).unwrap() {
            o.check(is_irreducible(&g), "irreducible factor");
            for _ in 0..e {
                prod = prod.mul(&g);
            }
        }
        o.check(prod == fp.monic(), format!("resubstitution mod {p}"));
    }

    for i in 1..=4 {
        let k = shipped_field(i).unwrap();
        for _ in 0..20 {
            let a = NFElement::from_i64(&(0..6).map(|_| rng.gen_range(-9..10)).collect::<Vec<_>>());
            let b = NFElement::from_i64(&(0..6).map(|_| rng.gen_range(-9..10)).collect::<Vec<_>>());
            o.check(k.norm(&k.mul(&a, &b)) == k.norm(&a) * k.norm(&b), format!("norm multiplicativity in K{i}"));
        }
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 29, 31, 37, 61] {
            let mut prod = IdealHNF::unit();
            let mut norm = BigInt::from(1);
            for q in split_prime(&k, p).unwrap() {
                norm *= BigInt::from(q.norm()).pow(q.e);
                prod = prod.mul(&k, &q.ideal.pow(&k, q.e));
            }
            o.check(norm == BigInt::from(p).pow(6), format!("K{i} p = {p} norm identity"));
            o.check(prod == IdealHNF::principal(&k, &NFElement::from_int(p as i64)), format!("K{i} p = {p} product"));
        }
    }

    let k = &psi.field;
    for pr in split_prime(k, 37).unwrap() {
        let want = psi.eval_at_prime(&pr, 40).unwrap();
        for _ in 0..5 {
            let mut g = k.mul(&want.generator, &k.pow(&k.zeta, rng.gen_range(0..4)));
            for u in &k.units {
                let v = if rng.gen_bool(0.5) { k.inverse(u).unwrap() } else { u.clone() };
                g = k.mul(&g, &k.pow(&v, rng.gen_range(0..3)));
            }
            let inf = infinity_eval(k, &psi.infinity, &g, 40).unwrap();
            let v = &root_of_unity_hp(psi.finite_value(&g).unwrap(), inf.bits).unwrap() * &inf;
            o.check(v.close_to(&want.value.with_bits(inf.bits), -60.0), "generator independence");
        }
    }

    let twists: Vec<_> = (1..6).map(|e| psi.galois_twist(e).unwrap()).collect();
    for p in primes_up_to(50).into_iter().filter(|&p| psi.good_at(p)) {
        let base = psi.euler_factor_q(p).unwrap();
        o.check(base.check_weil().is_ok(), format!("Weil bound at {p}"));
        for t in &twists {
            o.check(t.euler_factor_q(p).unwrap() == base, format!("twist invariance at {p}"));
        }
    }

    let k2 = shipped_field(2).unwrap();
    let m = Modulus::new(vec![
        (split_prime(&k2, 2).unwrap()[0].clone(), 5),
        (split_prime(&k2, 7).unwrap()[0].clone(), 2),
    ])
    .unwrap();
    let g = unit_group(Arc::clone(&k2), &m).unwrap();
    let mut hits = 0;
    while hits < 1000 {
        let x = NFElement::from_i64(&(0..6).map(|_| rng.gen_range(-1000..1000)).collect::<Vec<_>>());
        match g.discrete_log(&x) {
            Ok(l) => {
                o.check(g.exp(&l) == g.ring.from_element(&x).unwrap(), "discrete-log round trip");
                hits += 1;
            }
            Err(Error::NotCoprime) => {}
            Err(e) => o.check(false, format!("discrete log: {e}")),
        }
    }

    let again = build_report(ctx, &[1], |_, _| {}).unwrap().to_json();
    o.check(again == first, "repeated report differs");
    o
}

fn weil_checks(o: &mut Outcome, report: &FullReport) {
    let tables = [(&report.weight_two_table, 2), (&report.curve_table, 1), (&report.psi_prime_table, 2)];
    for (table, w) in tables {
        for row in table.iter() {
            if let Some(c) = &row.coefficients {
                let f = EulerFactor::new(row.prime, w, c.iter().map(|x| x.parse().unwrap()).collect());
                o.check(f.check_weil().is_ok(), format!("Weil bound for case {} weight {w}", row.case));
            }
        }
    }
}

#[test]
fn acceptance() {
    let ctx = Context::new(Config::default()).unwrap();
    let start = std::time::Instant::now();
    let mut timing = BTreeMap::new();
    let report = build_report(&ctx, &[1, 2, 3, 4], |stage, d| {
        timing.insert(stage.to_string(), d);
    })
    .unwrap();
    let total = start.elapsed();
    for (stage, d) in &timing {
        println!("  {stage:<18} {:>8.1}s", d.as_secs_f64());
    }
    let case = |i: u32| report.cases.iter().find(|c| c.case == i).unwrap();
    let mut passed = Vec::new();

    let mut o = Outcome::new();
    for i in 1..=3 {
        let (norm, row) = weight_two_row(i);
        check_match(&mut o, case(i).surface.as_ref(), &format!("X{i}"), norm, &row);
        o.check(secs(&timing, &format!("surface {i}")) < 300.0, format!("X{i} over 5 min"));
    }
    o.check(case(4).surface.is_none() && case(4).surface_note.as_deref() == Some("no surface known"), "case 4 note");
    o.check(report.weight_two_table[3].rendered.contains("no surface known"), "case 4 table row");
    passed.push(report_line(1, "weight-two characters of the surfaces", &o));

    let mut o = Outcome::new();
    for i in 1..=4 {
        let (norm, row) = curve_row(i);
        check_match(&mut o, case(i).curve.as_ref(), &format!("A{i}"), norm, &row);
        o.check(secs(&timing, &format!("curve {i}")) < 120.0, format!("A{i} over 2 min"));
    }
    passed.push(report_line(2, "weight-one characters of the curves", &o));

    let mut o = Outcome::new();
    for i in 1..=4 {
        let (norm, row) = psi_prime_row(i);
        let pc = case(i).part_c.as_ref();
        check_match(&mut o, pc.and_then(|p| p.psi_prime.as_ref()), &format!("psi'{i}"), norm, &row);
        o.check(secs(&timing, &format!("wedge square {i}")) < 300.0, format!("case {i} over 5 min"));
    }
    passed.push(report_line(3, "conductor-one characters", &o));

    let mut o = Outcome::new();
    for (i, want) in [(1, vec![2, 3]), (2, vec![2, 7]), (3, vec![2, 7, 11, 19])] {
        let got = surface_bad_primes(ctx.varieties.surface(i).unwrap()).unwrap();
        o.check(got == want, format!("X{i}: {got:?}"));
    }
    passed.push(report_line(4, "bad primes of the surfaces", &o));

    let mut o = Outcome::new();
    for i in 1..=3 {
        let bad = surface_bad_primes(ctx.varieties.surface(i).unwrap()).unwrap();
        let good: Vec<u64> = primes_up_to(60).into_iter().filter(|p| !bad.contains(p)).collect();
        let log = &case(i).surface.as_ref().unwrap().comparisons;
        check_traces(&mut o, &format!("X{i}"), log, &good, 60, |p| if p <= 20 { 3 } else { 2 });
    }
    for i in 1..=4 {
        let bad = ctx.varieties.curve(i).unwrap().bad_primes();
        let good: Vec<u64> = primes_up_to(60).into_iter().filter(|p| !bad.contains(p)).collect();
        let log = &case(i).curve.as_ref().unwrap().comparisons;
        check_traces(&mut o, &format!("A{i}"), log, &good, 60, |p| if p <= 20 { 3 } else { 2 });
    }
    o.check(total.as_secs_f64() < 900.0, format!("full run took {:.0}s", total.as_secs_f64()));
    passed.push(report_line(5, "counted traces against character power sums", &o));

    let mut o = Outcome::new();
    for i in 1..=4 {
        let bad = ctx.varieties.curve(i).unwrap().bad_primes();
        let pc = case(i).part_c.as_ref().unwrap();
        for p in primes_up_to(60).into_iter().filter(|p| !bad.contains(p)) {
            match pc.decomposition.iter().find(|d| d.p == p) {
                Some(d) => o.check(d.exact && d.degrees == [15, 3, 6, 6], format!("case {i} p = {p}")),
                None => o.check(false, format!("case {i} p = {p} missing")),
            }
        }
    }
    passed.push(report_line(6, "exterior-square decomposition", &o));

    let mut o = Outcome::new();
    for i in 1..=3 {
        match &case(i).sigma {
            Some(s) => {
                o.check(s.verdict.is_success(), format!("case {i}: {}", s.verdict.as_str()));
                o.check(s.degree_one_primes >= 50, format!("case {i}: {} primes", s.degree_one_primes));
                o.check(s.digits >= 120, format!("case {i}: {} digits", s.digits));
                o.check(s.max_residual_log10.is_none_or(|r| r < -30), format!("case {i}: residual {:?}", s.max_residual_log10));
            }
            None => o.check(false, format!("case {i}: not run")),
        }
    }
    passed.push(report_line(7, "sigma relation at degree-one primes", &o));

    let first = build_report(&ctx, &[1], |_, _| {}).unwrap().to_json();
    let psi = match_curve(&ctx, 1).unwrap().character.unwrap();
    let mut o = property_suite(&ctx, &psi, &first);
    weil_checks(&mut o, &report);
    passed.push(report_line(8, "property checks", &o));

    assert!(passed.iter().all(|&p| p), "acceptance criteria failed");
}
