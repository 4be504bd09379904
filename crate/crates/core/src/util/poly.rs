//! Dense univariate polynomials over Z and Q, coefficients constant term first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub fn zpoly(c: &[i64]) -> ZPoly {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

/// Division of polynomials with constant term 1 treated as power series:
/// returns `(q, r)` with `a = b q + r` where `deg q = deg a - deg b` and the
/// remainder collects everything above that degree. Exact iff `r` is zero.
pub fn series_divrem(a: &[BigInt], b: &[BigInt]) -> Option<(ZPoly, ZPoly)> {
    let da = degree(a)?;
    let db = degree(b)?;
    if !b[0].abs().is_one() || da < db {
        return None;
    }
    let n = da - db + 1;
    let mut rest: ZPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); n];
    for k in 0..n {
        let c = &rest[k] * &b[0];
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                if k + j < rest.len() {
                    rest[k + j] -= &c * bj;
                }
            }
        }
        q[k] = c;
    }
    let mut r: ZPoly = rest;
    for x in r.iter_mut().take(n) {
        debug_assert!(x.is_zero());
        *x = BigInt::zero();
    }
    trim(&mut r);
    trim(&mut q);
    Some((q, r))
}

/// Exact quotient `a / b` if `b` divides `a` in Z[T] (with `b(0) = ±1`).
pub fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = series_divrem(a, b)?;
    r.is_empty().then_some(q)
}

/// Power sums `s_1..s_n` of the reciprocal roots of `1 + c_1 T + ... + c_d T^d`.
pub fn power_sums(c: &[BigInt], n: usize) -> Vec<BigInt> {
    // Newton: s_k = -k c_k - sum_{i=1}^{k-1} c_i s_{k-i}
    let coeff = |i: usize| c.get(i).cloned().unwrap_or_default();
    let mut s: Vec<BigInt> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut v = -BigInt::from(k) * coeff(k);
        for i in 1..k {
            v -= coeff(i) * &s[k - i - 1];
        }
        s.push(v);
    }
    s
}

/// Inverse of [`power_sums`]: the coefficients `1, c_1..c_n` determined by
/// `s_1..s_n`. `None` when a division by `k` is not exact.
pub fn coeffs_from_power_sums(s: &[BigInt]) -> Option<ZPoly> {
    let n = s.len();
    let mut c: ZPoly = vec![BigInt::one()];
    for k in 1..=n {
        let mut acc = s[k - 1].clone();
        for i in 1..k {
            acc += &c[i] * &s[k - i - 1];
        }
        let kk = BigInt::from(k);
        if !(&acc % &kk).is_zero() {
            return None;
        }
        c.push(-acc / kk);
    }
    Some(c)
}

pub fn eval_z(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative_z(p: &[BigInt]) -> ZPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

pub fn to_q(p: &[BigInt]) -> QPoly {
    p.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

pub fn q_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            let t = &c * bj;
            r[dr - db + j] -= t;
        }
        q[dr - db] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn q_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Resultant over Q by the Euclidean algorithm.
pub fn resultant_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut a: QPoly = a.to_vec();
    let mut b: QPoly = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    let (Some(mut da), Some(mut db)) = (degree(&a), degree(&b)) else {
        return BigRational::zero();
    };
    let mut res = BigRational::one();
    loop {
        if db == 0 {
            return res * num_traits::pow(b[0].clone(), da);
        }
        let (_, r) = q_divrem(&a, &b);
        let Some(dr) = degree(&r) else {
            return BigRational::zero();
        };
        // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
        if da % 2 == 1 && db % 2 == 1 {
            res = -res;
        }
        res *= num_traits::pow(b[db].clone(), da - dr);
        a = b;
        da = db;
        b = r;
        db = dr;
    }
}

/// Discriminant of a polynomial of degree n: (-1)^{n(n-1)/2} res(f, f') / lc(f).
pub fn discriminant_q(f: &[BigRational]) -> BigRational {
    let n = degree(f).expect("zero polynomial");
    let df: QPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    let r = resultant_q(f, &df) / &f[n];
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

pub fn discriminant_z(f: &[BigInt]) -> BigInt {
    discriminant_q(&to_q(f)).to_integer()
}

/// Inverse of `a` modulo `m` in Q[x], if it exists.
pub fn q_invmod(a: &[BigRational], m: &[BigRational]) -> Option<QPoly> {
    // extended Euclid
    let (mut r0, mut r1): (QPoly, QPoly) = (m.to_vec(), q_divrem(a, m).1);
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = q_divrem(&r0, &r1);
        let qs = q_mul(&q, &s1);
        let n = s0.len().max(qs.len());
        let mut s2: QPoly = (0..n)
            .map(|i| s0.get(i).cloned().unwrap_or_default() - qs.get(i).cloned().unwrap_or_default())
            .collect();
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_identities_roundtrip() {
        // (1 - 2T)(1 - 3T)(1 + T) = 1 - 4T + T^2 + 6T^3
        let c = zpoly(&[1, -4, 1, 6]);
        let s = power_sums(&c, 3);
        assert_eq!(s, zpoly(&[4, 14, 34]));
        assert_eq!(coeffs_from_power_sums(&s).unwrap(), c);
    }

    #[test]
    fn exact_division() {
        let a = mul(&zpoly(&[1, -2]), &zpoly(&[1, 5, 7]));
        assert_eq!(exact_div(&a, &zpoly(&[1, -2])).unwrap(), zpoly(&[1, 5, 7]));
        assert!(exact_div(&a, &zpoly(&[1, 3])).is_none());
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant_z(&zpoly(&[1, 0, 1])), BigInt::from(-4));
        assert_eq!(discriminant_z(&zpoly(&[-1, -3, 0, 1])), BigInt::from(81));
    }
}
