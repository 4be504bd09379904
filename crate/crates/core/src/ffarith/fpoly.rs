use crate::util::primes::pow_mod;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hash::{Hash, Hasher};

/// Polynomial over `F_p`, coefficients constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_bigint(f: &[BigInt], p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .iter()
            .map(|x| {
                let r = ((x % &pb) + &pb) % &pb;
                r.to_u64().unwrap()
            })
            .collect();
        Self::new(p, c)
    }

    pub fn from_i64(f: &[i64], p: u64) -> Self {
        let c = f.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        Self::new(p, c)
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1 % p] }
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = inv_mod(self.lead(), self.p);
        self.scale(li)
    }

    pub fn scale(&self, a: u64) -> Self {
        let p = self.p;
        Self::new(p, self.c.iter().map(|&x| ((x as u128 * a as u128) % p as u128) as u64).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + p - o.c.get(i).copied().unwrap_or(0)) % p)
            .collect();
        Self::new(p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, Vec::new());
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, acc.into_iter().map(|x| x as u64).collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let li = inv_mod(d.lead(), p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::new(p, Vec::new()), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = (r[k] as u128 * li as u128 % p as u128) as u64;
            if c == 0 {
                continue;
            }
            q[k - dd] = c;
            for (j, &dj) in d.c.iter().enumerate() {
                let t = (c as u128 * dj as u128 % p as u128) as u64;
                r[k - dd + j] = (r[k - dd + j] + p - t) % p;
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| ((i as u64 % p) as u128 * x as u128 % p as u128) as u64)
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        let mut acc = 0u128;
        for &c in self.c.iter().rev() {
            acc = (acc * x as u128 + c as u128) % p;
        }
        acc as u64
    }

    /// Canonical sort key: degree first, then coefficients from the top down.
    fn sort_key(&self) -> (usize, Vec<u64>) {
        (self.c.len(), self.c.iter().rev().copied().collect())
    }
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let p = f.p as u128;
    let x = FpPoly::x(f.p);
    let f = f.monic();
    let prime_divs: Vec<u64> = crate::util::primes::factor(n as u64).into_iter().map(|(q, _)| q).collect();
    for q in prime_divs {
        let k = n / q as usize;
        let xp = x.powmod(p.pow(k as u32), &f);
        if xp.sub(&x).gcd(&f).degree() != Some(0) {
            return false;
        }
    }
    x.powmod(p.pow(n as u32), &f).sub(&x).rem(&f).is_zero()
}

fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    // Yun-style with the characteristic-p correction
    let p = f.p;
    let mut out = Vec::new();
    let mut rec: Vec<(FpPoly, u32, u32)> = vec![(f.monic(), 1, 1)];
    while let Some((g, mult_scale, _)) = rec.pop() {
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let dg = g.derivative();
        if dg.is_zero() {
            // g = h(x^p)
            let h = FpPoly::new(p, g.c.iter().step_by(p as usize).copied().collect());
            rec.push((h, mult_scale * p as u32, 0));
            continue;
        }
        let mut c = g.gcd(&dg);
        let mut w = g.divrem(&c).0;
        let mut i = 1u32;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z.monic(), i * mult_scale));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if c.degree().unwrap_or(0) > 0 {
            // c = h(x^p)
            let h = FpPoly::new(p, c.c.iter().step_by(p as usize).copied().collect());
            rec.push((h, mult_scale * p as u32, 0));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p as u128;
    let x = FpPoly::x(f.p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut xq = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        xq = xq.powmod(p, &rest);
        let g = xq.sub(&x).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&g).0.monic();
            xq = xq.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let n = rest.degree().unwrap();
        out.push((rest, n));
    }
    out
}

fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(nd-1)) splits in characteristic 2
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = ((p as u128).pow(d as u32) - 1) / 2;
            a.powmod(e, f).sub(&FpPoly::one(p))
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.divrem(&g).0.monic(), d, rng, out);
            return;
        }
    }
}

/// Factors an integer polynomial modulo an odd or even prime `p` into monic
/// irreducibles with multiplicities, sorted by degree and then coefficients.
pub fn factor_poly_mod_p(f: &[BigInt], p: u64) -> Result<Vec<(FpPoly, u32)>> {
    if !crate::util::primes::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let fp = FpPoly::from_bigint(f, p);
    if fp.is_zero() {
        return Err(Error::ZeroModP(p));
    }
    factor_fp(&fp)
}

pub(crate) fn factor_fp(fp: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    let p = fp.p;
    let mut h = std::collections::hash_map::DefaultHasher::new();
    fp.c.hash(&mut h);
    let seed = p ^ h.finish().rotate_left(17) ^ ((fp.c.len() as u64) << 56);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for (sq, mult) in squarefree_decomposition(fp) {
        for (g, d) in distinct_degree(&sq) {
            let mut parts = Vec::new();
            equal_degree(&g, d, &mut rng, &mut parts);
            for part in parts {
                match out.iter_mut().find(|(q, _)| *q == part) {
                    Some((_, m)) => *m += mult,
                    None => out.push((part, mult)),
                }
            }
        }
    }
    out.sort_by_key(|(g, m)| (g.sort_key(), *m));
    Ok(out)
}

impl FpPoly {
    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.c.iter().map(|&x| BigInt::from(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::poly::zpoly;

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        let mut acc = FpPoly::one(p);
        for (g, m) in fs {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn x2_plus_1() {
        let f = zpoly(&[1, 0, 1]);
        let r5 = factor_poly_mod_p(&f, 5).unwrap();
        assert_eq!(r5.len(), 2);
        assert_eq!(r5[0].0.c, vec![2, 1]);
        assert_eq!(r5[1].0.c, vec![3, 1]);
        let r7 = factor_poly_mod_p(&f, 7).unwrap();
        assert_eq!(r7.len(), 1);
        assert_eq!(r7[0].0.degree(), Some(2));
    }

    #[test]
    fn repeated_factors_and_char_p_powers() {
        // (x+1)^3 (x^2+2)^2 (x^5 - x) mod 5 includes x^5 - x = prod (x - a)
        let p = 5;
        let a = FpPoly::new(p, vec![1, 1]);
        let b = FpPoly::new(p, vec![2, 0, 1]);
        let c = FpPoly::new(p, vec![0, 4, 0, 0, 0, 1]);
        let f = a.mul(&a).mul(&a).mul(&b).mul(&b).mul(&c);
        let fs = factor_fp(&f).unwrap();
        assert_eq!(product(&fs, p), f.monic());
        assert!(fs.iter().all(|(g, _)| is_irreducible(g)));
        // x^5 in char 5 is a p-th power
        let g = FpPoly::new(p, vec![0, 0, 0, 0, 0, 1]).mul(&b);
        let gs = factor_fp(&g).unwrap();
        assert_eq!(product(&gs, p), g.monic());
    }
}
