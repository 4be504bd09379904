use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

use super::field::DEGREE;

/// An element of K as rational coordinates on the integral basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NFElement {
    pub c: Vec<BigRational>,
}

impl NFElement {
    pub fn zero() -> Self {
        NFElement { c: vec![BigRational::zero(); DEGREE] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let mut x = Self::zero();
        x.c[0] = BigRational::from_integer(n.clone());
        x
    }

    pub fn basis(i: usize) -> Self {
        let mut x = Self::zero();
        x.c[i] = BigRational::one();
        x
    }

    pub fn from_i64(v: &[i64]) -> Self {
        NFElement { c: v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect() }
    }

    pub fn from_ints(v: &[BigInt]) -> Self {
        NFElement { c: v.iter().map(|x| BigRational::from_integer(x.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }

    /// Integer coordinates, if integral.
    pub fn int_coords(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.c.iter().map(|x| x.to_integer()).collect())
    }

    pub fn neg(&self) -> Self {
        NFElement { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        NFElement { c: self.c.iter().map(|x| x * k).collect() }
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for NFElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }
}
