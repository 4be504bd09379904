use super::fpoly::{is_irreducible, FpPoly};
use crate::util::primes::{is_prime, pow_mod};
use crate::{Error, Result};
use std::sync::Arc;

/// The field `F_p[x]/(modulus)` with `q = p^m`.
#[derive(Debug, PartialEq, Eq)]
pub struct FFContext {
    pub p: u64,
    pub m: usize,
    /// Monic, constant term first, length `m + 1`.
    pub modulus: Vec<u64>,
}

/// Builds `F_{p^m}` using the first monic irreducible of degree `m` when the
/// lower coefficients are read as a number in base `p` with the `x^{m-1}`
/// coefficient most significant.
pub fn ff_context(p: u64, m: usize) -> Result<Arc<FFContext>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(1..=6).contains(&m) {
        return Err(Error::DegreeOutOfRange(m));
    }
    if m == 1 {
        return Ok(Arc::new(FFContext { p, m, modulus: vec![0, 1] }));
    }
    let total = (p as u128).pow(m as u32);
    for code in 0..total {
        let mut c = vec![0u64; m + 1];
        let mut r = code;
        for slot in c.iter_mut().take(m) {
            *slot = (r % p as u128) as u64;
            r /= p as u128;
        }
        c[m] = 1;
        if c[0] == 0 {
            continue;
        }
        if is_irreducible(&FpPoly::new(p, c.clone())) {
            return Ok(Arc::new(FFContext { p, m, modulus: c }));
        }
    }
    Err(Error::Internal(format!("no irreducible of degree {m} over F_{p}")))
}

impl FFContext {
    pub fn q(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn modulus_poly(&self) -> FpPoly {
        FpPoly::new(self.p, self.modulus.clone())
    }

    pub fn elem(self: &Arc<Self>, coeffs: &[u64]) -> FFElement {
        let mut c = vec![0u64; self.m];
        for (i, &x) in coeffs.iter().enumerate() {
            if i < self.m {
                c[i] = x % self.p;
            }
        }
        FFElement { c, ctx: Arc::clone(self) }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> FFElement {
        self.elem(&[n.rem_euclid(self.p as i64) as u64])
    }

    pub fn zero(self: &Arc<Self>) -> FFElement {
        self.elem(&[])
    }

    pub fn one(self: &Arc<Self>) -> FFElement {
        self.elem(&[1])
    }

    /// The element whose base-`p` digits are `index`; a bijection `0..q -> F_q`.
    pub fn from_index(self: &Arc<Self>, mut index: u64) -> FFElement {
        let mut c = vec![0u64; self.m];
        for slot in c.iter_mut() {
            *slot = index % self.p;
            index /= self.p;
        }
        FFElement { c, ctx: Arc::clone(self) }
    }

    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FFElement> + '_ {
        (0..self.q()).map(move |i| self.from_index(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFElement {
    pub c: Vec<u64>,
    pub ctx: Arc<FFContext>,
}

impl FFElement {
    pub fn index(&self) -> u64 {
        self.c.iter().rev().fold(0, |acc, &d| acc * self.ctx.p + d)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    fn wrap(&self, c: Vec<u64>) -> Self {
        FFElement { c, ctx: Arc::clone(&self.ctx) }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.ctx.p;
        self.wrap(self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.ctx.p;
        self.wrap(self.c.iter().zip(&o.c).map(|(a, b)| (a + p - b) % p).collect())
    }

    pub fn neg(&self) -> Self {
        let p = self.ctx.p;
        self.wrap(self.c.iter().map(|a| (p - a) % p).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.ctx.p as u128;
        let m = self.ctx.m;
        let mut acc = vec![0u128; 2 * m - 1];
        for i in 0..m {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..m {
                acc[i + j] = (acc[i + j] + self.c[i] as u128 * o.c[j] as u128) % p;
            }
        }
        let md = &self.ctx.modulus;
        for k in (m..2 * m - 1).rev() {
            let t = acc[k];
            if t == 0 {
                continue;
            }
            acc[k] = 0;
            for j in 0..m {
                acc[k - m + j] = (acc[k - m + j] + (p - md[j] as u128) * t) % p;
            }
        }
        self.wrap(acc[..m].iter().map(|&x| x as u64).collect())
    }

    pub fn scale(&self, a: u64) -> Self {
        let p = self.ctx.p as u128;
        self.wrap(self.c.iter().map(|&x| (x as u128 * a as u128 % p) as u64).collect())
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let q = self.ctx.q() as u128;
        Some(self.pow(q - 2))
    }

    /// Euler's criterion `x^{(q-1)/2}`.
    pub fn quadratic_character(&self) -> Result<i8> {
        let p = self.ctx.p;
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if self.is_zero() {
            return Ok(0);
        }
        if self.ctx.m == 1 {
            return Ok(if pow_mod(self.c[0], (p - 1) / 2, p) == 1 { 1 } else { -1 });
        }
        let q = self.ctx.q() as u128;
        let r = self.pow((q - 1) / 2);
        Ok(if r == self.ctx.one() { 1 } else { -1 })
    }
}
