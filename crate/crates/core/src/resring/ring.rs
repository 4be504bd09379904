use crate::numfield::{FieldData, IdealHNF, NFElement, DEGREE};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::ToPrimitive;

pub type Res = [i128; DEGREE];

/// The finite ring `O_K / I` with elements reduced into the HNF fundamental
/// domain of `I`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub hnf: [[i128; DEGREE]; DEGREE],
    mult: [[[i64; DEGREE]; DEGREE]; DEGREE],
    pub order: u128,
}

impl QuotientRing {
    pub fn new(k: &FieldData, ideal: &IdealHNF) -> Result<Self> {
        let mut hnf = [[0i128; DEGREE]; DEGREE];
        for i in 0..DEGREE {
            for j in 0..DEGREE {
                hnf[i][j] = ideal.hnf[i][j]
                    .to_i128()
                    .ok_or_else(|| Error::InvalidArgument("modulus too large".into()))?;
            }
        }
        let mut mult = [[[0i64; DEGREE]; DEGREE]; DEGREE];
        for i in 0..DEGREE {
            for j in 0..DEGREE {
                for l in 0..DEGREE {
                    mult[i][j][l] = k.mult[i][j][l];
                }
            }
        }
        let order = ideal
            .norm
            .to_u128()
            .ok_or_else(|| Error::InvalidArgument("modulus too large".into()))?;
        Ok(QuotientRing { hnf, mult, order })
    }

    pub fn reduce(&self, mut v: Res) -> Res {
        for i in 0..DEGREE {
            let q = v[i].div_euclid(self.hnf[i][i]);
            if q != 0 {
                for j in i..DEGREE {
                    v[j] -= q * self.hnf[i][j];
                }
            }
        }
        v
    }

    pub fn one(&self) -> Res {
        let mut v = [0i128; DEGREE];
        v[0] = 1;
        self.reduce(v)
    }

    pub fn is_zero(&self, a: &Res) -> bool {
        self.reduce(*a).iter().all(|&x| x == 0)
    }

    pub fn from_element(&self, x: &NFElement) -> Result<Res> {
        let c = x
            .int_coords()
            .ok_or_else(|| Error::InvalidArgument("element is not integral".into()))?;
        let mut v = [0i128; DEGREE];
        for i in 0..DEGREE {
            // N(I) lies in I
            v[i] = c[i].mod_floor(&num_bigint::BigInt::from(self.order)).to_i128().unwrap();
        }
        Ok(self.reduce(v))
    }

    pub fn to_element(&self, a: &Res) -> NFElement {
        let v: Vec<i64> = a.iter().map(|&x| x as i64).collect();
        NFElement::from_i64(&v)
    }

    pub fn mul(&self, a: &Res, b: &Res) -> Res {
        let mut out = [0i128; DEGREE];
        for i in 0..DEGREE {
            if a[i] == 0 {
                continue;
            }
            for j in 0..DEGREE {
                if b[j] == 0 {
                    continue;
                }
                let ab = a[i] * b[j];
                let t = &self.mult[i][j];
                for l in 0..DEGREE {
                    if t[l] != 0 {
                        out[l] += ab * t[l] as i128;
                    }
                }
            }
        }
        self.reduce(out)
    }

    pub fn add(&self, a: &Res, b: &Res) -> Res {
        let mut v = *a;
        for i in 0..DEGREE {
            v[i] += b[i];
        }
        self.reduce(v)
    }

    pub fn sub(&self, a: &Res, b: &Res) -> Res {
        let mut v = *a;
        for i in 0..DEGREE {
            v[i] -= b[i];
        }
        self.reduce(v)
    }

    pub fn pow(&self, a: &Res, mut e: u128) -> Res {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Element with the given mixed-radix index in the fundamental domain.
    pub fn element_at(&self, mut idx: u128) -> Res {
        let mut v = [0i128; DEGREE];
        for i in 0..DEGREE {
            let h = self.hnf[i][i] as u128;
            v[i] = (idx % h) as i128;
            idx /= h;
        }
        v
    }
}
