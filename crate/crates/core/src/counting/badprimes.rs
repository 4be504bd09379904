use super::spec::SurfaceSpec;
use crate::ffarith::{ff_context, FFElement, FqPoly};
use crate::util::poly::{discriminant_q, q_divrem, q_invmod, q_mul, QPoly};
use crate::util::primes::prime_support_big;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// Trial-division bound used to factor the integer invariant.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The cubic restricted to a line, as a polynomial in `t`:
/// `point(t) = (a0 + a1 t, b0 + b1 t, c0 + c1 t)` in integer coordinates.
fn restrict(monos: &[(i64, u32, u32, u32)], line: [[i64; 2]; 3]) -> QPoly {
    let mut out = vec![BigRational::zero(); 4];
    for &(c, ex, ey, ez) in monos {
        let mut term: QPoly = vec![rat(c)];
        for (k, e) in [ex, ey, ez].into_iter().enumerate() {
            for _ in 0..e {
                term = q_mul(&term, &[rat(line[k][0]), rat(line[k][1])]);
            }
        }
        for (i, x) in term.into_iter().enumerate() {
            out[i] += x;
        }
    }
    crate::util::poly::trim(&mut out);
    out
}

fn monos_of(spec: &SurfaceSpec) -> Vec<(i64, u32, u32, u32)> {
    spec.cubic.iter().map(|m| (m.coeff, m.ex, m.ey, m.ez)).collect()
}

fn partial(monos: &[(i64, u32, u32, u32)], var: usize) -> Vec<(i64, u32, u32, u32)> {
    monos
        .iter()
        .filter_map(|&(c, ex, ey, ez)| {
            let e = [ex, ey, ez];
            (e[var] > 0).then(|| {
                let mut f = e;
                f[var] -= 1;
                (c * e[var] as i64, f[0], f[1], f[2])
            })
        })
        .collect()
}

/// Rational factors of the integer invariant whose prime support contains
/// every odd prime of bad reduction: vertex values, discriminants of the cubic
/// on the three coordinate lines, and the concurrency coefficient of its lines.
pub fn bad_prime_invariant(spec: &SurfaceSpec) -> Result<Vec<BigRational>> {
    let g = monos_of(spec);
    let mut parts = Vec::new();
    for (x, y, z) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
        parts.push(BigRational::from_integer(BigInt::from(spec.eval_cubic_i128(x, y, z))));
    }
    // g(0, t, 1), g(t, 0, 1), g(t, 1, 0)
    let lines = [[[0, 0], [0, 1], [1, 0]], [[0, 1], [0, 0], [1, 0]], [[0, 1], [1, 0], [0, 0]]];
    for l in lines {
        parts.push(discriminant_q(&restrict(&g, l)));
    }
    let h = restrict(&g, lines[2]);
    let gx = restrict(&partial(&g, 0), lines[2]);
    let gz = restrict(&partial(&g, 2), lines[2]);
    let inv = q_invmod(&gx, &h).ok_or_else(|| Error::Internal("g_x not invertible modulo g(t,1,0)".into()))?;
    let s = q_divrem(&q_mul(&gz, &inv), &h).1;
    let c2 = s.get(2).cloned().unwrap_or_default();
    if c2.is_zero() {
        return Err(Error::InvalidArgument(format!("surface {}: the three lines of g are concurrent", spec.id)));
    }
    parts.push(c2);
    if parts.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidArgument(format!("surface {}: degenerate line configuration", spec.id)));
    }
    Ok(parts)
}

/// Odd primes dividing a numerator or denominator of the invariant.
pub fn candidate_primes(spec: &SurfaceSpec, trial_bound: u64) -> Result<Vec<u64>> {
    let mut out = BTreeSet::new();
    for x in bad_prime_invariant(spec)? {
        for n in [x.numer().abs(), x.denom().abs()] {
            if n.is_one() {
                continue;
            }
            let (ps, rest) = prime_support_big(&n, trial_bound);
            out.extend(ps);
            if let Some(r) = rest {
                let r64 = r.to_u64().ok_or_else(|| {
                    Error::Internal(format!("unfactored cofactor {r} in the bad-prime invariant"))
                })?;
                out.insert(r64);
            }
        }
    }
    out.remove(&2);
    Ok(out.into_iter().collect())
}

fn det3(a: &[FFElement; 3], b: &[FFElement; 3], c: &[FFElement; 3]) -> FFElement {
    let t1 = a[0].mul(&b[1].mul(&c[2]).sub(&b[2].mul(&c[1])));
    let t2 = a[1].mul(&b[0].mul(&c[2]).sub(&b[2].mul(&c[0])));
    let t3 = a[2].mul(&b[0].mul(&c[1]).sub(&b[1].mul(&c[0])));
    t1.sub(&t2).add(&t3)
}

/// Direct test modulo an odd prime: the branch sextic reduces to six distinct
/// lines with no three through a point.
pub fn is_good_surface_prime(spec: &SurfaceSpec, p: u64) -> Result<bool> {
    if p == 2 {
        return Ok(false);
    }
    let k = ff_context(p, 6)?;
    let g = monos_of(spec);
    let pi = p as i128;
    for (x, y, z) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
        if spec.eval_cubic_i128(x, y, z).rem_euclid(pi) == 0 {
            return Ok(false);
        }
    }
    let poly_on = |monos: &[(i64, u32, u32, u32)]| -> FqPoly {
        let mut c = vec![0i64; 4];
        for &(coef, ex, ey, ez) in monos {
            if ez == 0 && ey + ex <= 3 {
                c[ex as usize] += coef;
            }
        }
        FqPoly::from_ints(&k, &c)
    };
    let h = poly_on(&g);
    let roots = crate::ffarith::roots_in(&h)?;
    if roots.len() != 3 || h.degree() != Some(3) {
        return Ok(false);
    }
    let gx = poly_on(&partial(&g, 0));
    let gz = poly_on(&partial(&g, 2));
    let mut lines: Vec<[FFElement; 3]> = vec![
        [k.one(), k.zero(), k.zero()],
        [k.zero(), k.one(), k.zero()],
        [k.zero(), k.zero(), k.one()],
    ];
    for t in &roots {
        let dx = gx.eval(t);
        let Some(inv) = dx.inv() else { return Ok(false) };
        lines.push([k.one(), t.neg(), gz.eval(t).mul(&inv)]);
    }
    // g = a * prod (x - t_k y + c_k z)
    let lead = k.from_int(spec.eval_cubic_i128(1, 0, 0).rem_euclid(pi) as i64);
    let mut prod: std::collections::BTreeMap<(u32, u32, u32), FFElement> = Default::default();
    prod.insert((0, 0, 0), lead);
    for l in &lines[3..] {
        let mut next: std::collections::BTreeMap<(u32, u32, u32), FFElement> = Default::default();
        for (&(a, b, c), v) in &prod {
            for (var, coef) in l.iter().enumerate() {
                let key = match var {
                    0 => (a + 1, b, c),
                    1 => (a, b + 1, c),
                    _ => (a, b, c + 1),
                };
                let e = next.entry(key).or_insert_with(|| k.zero());
                *e = e.add(&v.mul(coef));
            }
        }
        prod = next;
    }
    for ex in 0..=3u32 {
        for ey in 0..=3 - ex {
            let ez = 3 - ex - ey;
            let want: i64 = g
                .iter()
                .filter(|m| (m.1, m.2, m.3) == (ex, ey, ez))
                .map(|m| m.0)
                .sum();
            let got = prod.get(&(ex, ey, ez)).cloned().unwrap_or_else(|| k.zero());
            if got != k.from_int(want) {
                return Ok(false);
            }
        }
    }
    for i in 0..6 {
        for j in i + 1..6 {
            for l in j + 1..6 {
                if det3(&lines[i], &lines[j], &lines[l]).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `{2}` together with every candidate odd prime that fails the direct test.
pub fn surface_bad_primes_with_bound(spec: &SurfaceSpec, trial_bound: u64) -> Result<Vec<u64>> {
    let mut out = vec![2u64];
    for p in candidate_primes(spec, trial_bound)? {
        if !is_good_surface_prime(spec, p)? {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn surface_bad_primes(spec: &SurfaceSpec) -> Result<Vec<u64>> {
    surface_bad_primes_with_bound(spec, DEFAULT_TRIAL_BOUND)
}

