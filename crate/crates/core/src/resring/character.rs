use super::group::{Modulus, UnitGroupStructure};
use super::ring::Res;
use crate::numfield::NFElement;
use crate::Result;
use num_integer::Integer;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// An element `num / den` of Q/Z, normalized with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QZ {
    pub num: u64,
    pub den: u64,
}

impl QZ {
    pub const ZERO: QZ = QZ { num: 0, den: 1 };

    pub fn new(num: i128, den: u64) -> Self {
        let d = den as i128;
        let n = num.rem_euclid(d);
        let g = n.gcd(&d).max(1);
        QZ { num: (n / g) as u64, den: (d / g) as u64 }
    }

    pub fn add(self, o: QZ) -> QZ {
        let l = self.den.lcm(&o.den);
        QZ::new((self.num * (l / self.den)) as i128 + (o.num * (l / o.den)) as i128, l)
    }

    pub fn neg(self) -> QZ {
        QZ::new(-(self.num as i128), self.den)
    }

    pub fn mul_int(self, k: i128) -> QZ {
        QZ::new((self.num as i128) * k.rem_euclid(self.den as i128), self.den)
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `exp(2 pi i x)` in double precision.
    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU * self.num as f64 / self.den as f64)
    }

    /// `k` with `x = k / n`, if `n x = 0`.
    pub fn numerator_over(self, n: u64) -> Option<u64> {
        (n % self.den == 0).then(|| self.num * (n / self.den))
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A character of `(O_K/m)^x`, `chi(g_j) = exp(2 pi i a_j / d_j)`.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteCharacter {
    #[serde(skip)]
    pub group: Arc<UnitGroupStructure>,
    pub a: Vec<u64>,
    pub order: u64,
}

pub fn character_order(a: &[u64], cyc: &[u64]) -> u64 {
    a.iter()
        .zip(cyc)
        .fold(1u64, |acc, (&x, &d)| acc.lcm(&(d / x.gcd(&d))))
}

impl FiniteCharacter {
    pub fn new(group: Arc<UnitGroupStructure>, a: Vec<u64>) -> Self {
        let a: Vec<u64> = a.iter().zip(&group.cyc).map(|(&x, &d)| x % d).collect();
        let order = character_order(&a, &group.cyc);
        FiniteCharacter { group, a, order }
    }

    pub fn trivial(group: Arc<UnitGroupStructure>) -> Self {
        let a = vec![0; group.cyc.len()];
        Self::new(group, a)
    }

    pub fn is_trivial(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    /// Value on a discrete-log vector.
    pub fn eval_log(&self, v: &[u64]) -> QZ {
        let mut acc = QZ::ZERO;
        for ((&a, &x), &d) in self.a.iter().zip(v).zip(&self.group.cyc) {
            if a != 0 && x != 0 {
                acc = acc.add(QZ::new((a as i128) * (x as i128), d));
            }
        }
        acc
    }

    pub fn eval(&self, x: &NFElement) -> Result<QZ> {
        Ok(self.eval_log(&self.group.discrete_log(x)?))
    }

    pub fn eval_res(&self, x: &Res) -> Result<QZ> {
        Ok(self.eval_log(&self.group.discrete_log_res(x)?))
    }

    pub fn mul(&self, other: &FiniteCharacter) -> FiniteCharacter {
        let a = self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect();
        FiniteCharacter::new(Arc::clone(&self.group), a)
    }
}

/// The conductor of `chi`: exponents are lowered one prime at a time while
/// `chi` stays trivial on the kernel of the reduction map.
pub fn char_conductor(chi: &FiniteCharacter) -> Result<Modulus> {
    let g = &chi.group;
    let mut factors = Vec::new();
    for (j, (q, e)) in g.modulus.factors.iter().enumerate() {
        let mut exp = *e;
        while exp > 0 {
            let lower = exp - 1;
            let mut trivial = true;
            for x in g.kernel_generators(j, lower) {
                if !chi.eval_res(&x)?.is_zero() {
                    trivial = false;
                    break;
                }
            }
            if !trivial {
                break;
            }
            exp = lower;
        }
        factors.push((q.clone(), exp));
    }
    Modulus::new(factors)
}

/// Streams the characters of order dividing `n_max`: `a_j` runs over the
/// multiples of `d_j / gcd(d_j, n_max)`, last coordinate fastest.
pub fn enumerate_chars(group: Arc<UnitGroupStructure>, n_max: u64) -> CharIter {
    let steps: Vec<u64> = group.cyc.iter().map(|&d| d / d.gcd(&n_max)).collect();
    let counts: Vec<u64> = group.cyc.iter().map(|&d| d.gcd(&n_max)).collect();
    let n = counts.len();
    CharIter { group, steps, counts, idx: vec![0; n], done: false }
}

pub struct CharIter {
    group: Arc<UnitGroupStructure>,
    steps: Vec<u64>,
    counts: Vec<u64>,
    idx: Vec<u64>,
    done: bool,
}

impl CharIter {
    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).product()
    }
}

impl Iterator for CharIter {
    type Item = FiniteCharacter;

    fn next(&mut self) -> Option<FiniteCharacter> {
        if self.done {
            return None;
        }
        let a = self.idx.iter().zip(&self.steps).map(|(i, s)| i * s).collect();
        let chi = FiniteCharacter::new(Arc::clone(&self.group), a);
        let mut j = self.idx.len();
        loop {
            if j == 0 {
                self.done = true;
                break;
            }
            j -= 1;
            self.idx[j] += 1;
            if self.idx[j] < self.counts[j] {
                break;
            }
            self.idx[j] = 0;
        }
        Some(chi)
    }
}
