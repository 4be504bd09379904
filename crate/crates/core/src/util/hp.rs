//! Fixed-point high-precision complex numbers.
//!
//! A value is `(re + i im) / 2^bits` with `re, im` big integers. Absolute
//! precision is `2^-bits`; magnitudes are unbounded.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Bits needed for `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub bits: u32,
}

fn shr_round(x: BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x;
    }
    let half = BigInt::one() << (s - 1);
    (x + half) >> s
}

fn rescale(x: &BigInt, from: u32, to: u32) -> BigInt {
    if to >= from {
        x << (to - from)
    } else {
        shr_round(x.clone(), from - to)
    }
}

impl HpComplex {
    pub fn zero(bits: u32) -> Self {
        HpComplex { re: BigInt::zero(), im: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        Self::from_int(&BigInt::one(), bits)
    }

    pub fn i(bits: u32) -> Self {
        HpComplex { re: BigInt::zero(), im: BigInt::one() << bits, bits }
    }

    pub fn from_int(n: &BigInt, bits: u32) -> Self {
        HpComplex { re: n << bits, im: BigInt::zero(), bits }
    }

    pub fn from_i64(n: i64, bits: u32) -> Self {
        Self::from_int(&BigInt::from(n), bits)
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        let conv = |x: f64| -> BigInt {
            // exact conversion of the double, then scale
            let (m, e, s) = num_traits::float::FloatCore::integer_decode(x);
            let v = BigInt::from(m) * BigInt::from(s);
            let sh = e as i64 + bits as i64;
            if sh >= 0 {
                v << sh as u32
            } else {
                shr_round(v, (-sh) as u32)
            }
        };
        HpComplex { re: conv(re), im: conv(im), bits }
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        HpComplex {
            re: rescale(&self.re, self.bits, bits),
            im: rescale(&self.im, self.bits, bits),
            bits,
        }
    }

    pub fn conj(&self) -> Self {
        HpComplex { re: self.re.clone(), im: -&self.im, bits: self.bits }
    }

    /// Multiplication by `i^k`.
    pub fn mul_i_pow(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => HpComplex { re: -&self.im, im: self.re.clone(), bits: self.bits },
            2 => -self.clone(),
            _ => HpComplex { re: self.im.clone(), im: -&self.re, bits: self.bits },
        }
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        HpComplex { re: &self.re * n, im: &self.im * n, bits: self.bits }
    }

    /// Division by a nonzero integer, rounded.
    pub fn div_int(&self, n: &BigInt) -> Self {
        let d = |x: &BigInt| -> BigInt {
            let twice = x * 2;
            let q: BigInt = num_integer::Integer::div_floor(&(twice + n.abs()), &(n.abs() * 2));
            if n.is_negative() {
                -q
            } else {
                q
            }
        };
        HpComplex { re: d(&self.re), im: d(&self.im), bits: self.bits }
    }

    /// |z|^2 as a fixed-point real (scaled by 2^bits).
    pub fn norm_sqr_fixed(&self) -> BigInt {
        shr_round(&self.re * &self.re + &self.im * &self.im, self.bits)
    }

    pub fn recip(&self) -> Self {
        let n2 = &self.re * &self.re + &self.im * &self.im; // scaled by 2^{2 bits}
        assert!(!n2.is_zero(), "reciprocal of zero");
        // 1/z = conj(z) / |z|^2; scaled: re' = re * 2^{2 bits} / n2
        let sh = 2 * self.bits;
        let f = |x: &BigInt| -> BigInt {
            let num = x << sh;
            let q = num_integer::Integer::div_floor(&(&num * 2 + &n2), &(&n2 * 2));
            q
        };
        HpComplex { re: f(&self.re), im: f(&(-&self.im)), bits: self.bits }
    }

    pub fn div(&self, other: &Self) -> Self {
        self * &other.recip()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.bits);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Principal square root (argument in (-pi/2, pi/2]).
    pub fn sqrt(&self) -> Self {
        let b = self.bits;
        // |z| scaled by 2^b
        let modulus = (&self.re * &self.re + &self.im * &self.im).sqrt();
        // re(sqrt) = sqrt((|z| + re)/2), im(sqrt) = sign(im) sqrt((|z| - re)/2)
        let a: BigInt = ((&modulus + &self.re) << b) / 2;
        let c: BigInt = ((&modulus - &self.re) << b) / 2;
        let re = if a.is_negative() { BigInt::zero() } else { a.sqrt() };
        let mut im = if c.is_negative() { BigInt::zero() } else { c.sqrt() };
        if self.im.is_negative() {
            im = -im;
        }
        HpComplex { re, im, bits: b }
    }

    /// The primitive eighth root of unity `(1 + i)/sqrt 2` raised to `k`.
    pub fn zeta8_pow(k: i64, bits: u32) -> Self {
        let k = k.rem_euclid(8);
        let base = Self::one(bits).mul_i_pow(k / 2);
        if k % 2 == 0 {
            return base;
        }
        // 1/sqrt 2 = sqrt(2^{2 bits} / 2)
        let h: BigInt = (BigInt::one() << (2 * bits)) / 2;
        let h = h.sqrt();
        let z = HpComplex { re: h.clone(), im: h, bits };
        &base * &z
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let f = |x: &BigInt| -> f64 {
            let sh = x.bits().saturating_sub(60);
            let top = (x >> sh).to_f64().unwrap_or(0.0);
            top * 2f64.powi(sh as i32 - self.bits as i32)
        };
        (f(&self.re), f(&self.im))
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        let (re, im) = self.to_f64();
        num_complex::Complex64::new(re, im)
    }

    /// Max of |re - other.re|, |im - other.im| as a power-of-two exponent
    /// (log2 of the absolute difference), `None` when exactly equal.
    pub fn diff_log2(&self, other: &Self) -> Option<f64> {
        let b = self.bits.max(other.bits);
        let a = self.with_bits(b);
        let c = other.with_bits(b);
        let d = (&a.re - &c.re).abs().max((&a.im - &c.im).abs());
        if d.is_zero() {
            return None;
        }
        Some(d.to_f64().map(|x| x.log2()).unwrap_or(d.bits() as f64) - b as f64)
    }

    /// Is `|self - other| < 2^k` in both coordinates.
    pub fn close_to(&self, other: &Self, log2_tol: f64) -> bool {
        self.diff_log2(other).is_none_or(|d| d < log2_tol)
    }

    /// Nearest Gaussian integer and the log2 of the rounding distance.
    pub fn round_gaussian(&self) -> (BigInt, BigInt, Option<f64>) {
        let r = shr_round(self.re.clone(), self.bits);
        let i = shr_round(self.im.clone(), self.bits);
        let back = HpComplex { re: &r << self.bits, im: &i << self.bits, bits: self.bits };
        (r, i, self.diff_log2(&back))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Add for &HpComplex {
    type Output = HpComplex;
    fn add(self, o: &HpComplex) -> HpComplex {
        debug_assert_eq!(self.bits, o.bits);
        HpComplex { re: &self.re + &o.re, im: &self.im + &o.im, bits: self.bits }
    }
}

impl Sub for &HpComplex {
    type Output = HpComplex;
    fn sub(self, o: &HpComplex) -> HpComplex {
        debug_assert_eq!(self.bits, o.bits);
        HpComplex { re: &self.re - &o.re, im: &self.im - &o.im, bits: self.bits }
    }
}

impl Mul for &HpComplex {
    type Output = HpComplex;
    fn mul(self, o: &HpComplex) -> HpComplex {
        debug_assert_eq!(self.bits, o.bits);
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        HpComplex { re: shr_round(re, self.bits), im: shr_round(im, self.bits), bits: self.bits }
    }
}

impl Neg for HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        HpComplex { re: -self.re, im: -self.im, bits: self.bits }
    }
}

impl Add for HpComplex {
    type Output = HpComplex;
    fn add(self, o: HpComplex) -> HpComplex {
        &self + &o
    }
}

impl Sub for HpComplex {
    type Output = HpComplex;
    fn sub(self, o: HpComplex) -> HpComplex {
        &self - &o
    }
}

impl Mul for HpComplex {
    type Output = HpComplex;
    fn mul(self, o: HpComplex) -> HpComplex {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_identities() {
        let b = 300;
        let z = HpComplex::from_f64(1.25, -0.5, b);
        let w = HpComplex::from_f64(-3.0, 2.0, b);
        let q = (&z * &w).div(&w);
        assert!(q.close_to(&z, -(b as f64) + 8.0));
        let s = z.sqrt();
        assert!((&s * &s).close_to(&z, -(b as f64) + 8.0));
        let e = HpComplex::zeta8_pow(1, b).pow(8);
        assert!(e.close_to(&HpComplex::one(b), -(b as f64) + 8.0));
        let (re, im) = HpComplex::zeta8_pow(3, b).to_f64();
        assert!((re + 0.5f64.sqrt()).abs() < 1e-15 && (im - 0.5f64.sqrt()).abs() < 1e-15);
    }
}
