use crate::numfield::{FieldData, NFElement};
use crate::resring::QZ;
use crate::util::hp::{bits_for_digits, HpComplex};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// Exponent pairs `(a_j, b_j)` on the three canonical embedding slots:
/// `alpha -> prod phi_j(alpha)^{a_j} conj(phi_j(alpha))^{b_j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InfinityType {
    pub pairs: [(u32, u32); 3],
}

impl InfinityType {
    pub fn new(pairs: [(u32, u32); 3]) -> Result<Self> {
        let w = pairs[0].0 + pairs[0].1;
        if pairs.iter().any(|&(a, b)| a + b != w) {
            return Err(Error::InvalidArgument("infinity type must have constant weight".into()));
        }
        Ok(InfinityType { pairs })
    }

    pub fn weight(&self) -> u32 {
        self.pairs[0].0 + self.pairs[0].1
    }

    /// `{(0,2),(1,1),(1,1)}`, the surface type.
    pub fn psi_x() -> Self {
        InfinityType { pairs: [(0, 2), (1, 1), (1, 1)] }
    }

    /// `{(0,1),(0,1),(0,1)}`, the curve type.
    pub fn psi_a() -> Self {
        InfinityType { pairs: [(0, 1), (0, 1), (0, 1)] }
    }

    /// `{(0,2),(0,2),(1,1)}`.
    pub fn psi_prime() -> Self {
        InfinityType { pairs: [(0, 2), (0, 2), (1, 1)] }
    }

    /// Every placement of the multiset of pairs on the slots, with either
    /// orientation inside a pair. The set is stable under the Galois action.
    pub fn placements(&self) -> Vec<InfinityType> {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = BTreeSet::new();
        for perm in PERMS {
            for mask in 0..8u32 {
                let mut pairs = [(0, 0); 3];
                for j in 0..3 {
                    let (a, b) = self.pairs[perm[j]];
                    pairs[j] = if mask >> j & 1 == 1 { (b, a) } else { (a, b) };
                }
                out.insert(InfinityType { pairs });
            }
        }
        out.into_iter().collect()
    }

    /// The type of `alpha -> infty(sigma^e alpha)`.
    pub fn twist(&self, sigma_perm: &[usize; 6], e: u32) -> InfinityType {
        let mut pairs = [(0, 0); 3];
        for j in 0..3 {
            let mut t = j;
            for _ in 0..e % 6 {
                t = sigma_perm[t];
            }
            let (a, b) = self.pairs[j];
            if t < 3 {
                pairs[t] = (a, b);
            } else {
                pairs[t - 3] = (b, a);
            }
        }
        InfinityType { pairs }
    }

    /// Evaluation on double-precision embeddings in canonical order.
    pub fn eval_f64(&self, emb: &[Complex64; 6]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (j, &(a, b)) in self.pairs.iter().enumerate() {
            acc *= emb[j].powu(a) * emb[j + 3].powu(b);
        }
        acc
    }

    /// Evaluation on `(phi_j, conj phi_j)` pairs.
    pub fn eval_hp(&self, emb: &[(HpComplex, HpComplex); 3]) -> HpComplex {
        let bits = emb[0].0.bits;
        let mut acc = HpComplex::one(bits);
        for (j, &(a, b)) in self.pairs.iter().enumerate() {
            acc = &acc * &emb[j].0.pow(a as u64);
            acc = &acc * &emb[j].1.pow(b as u64);
        }
        acc
    }
}

impl fmt::Display for InfinityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.pairs;
        write!(f, "{{({},{}),({},{}),({},{})}}", p[0].0, p[0].1, p[1].0, p[1].1, p[2].0, p[2].1)
    }
}

/// Working digits for an evaluation with `digits` certified digits: the
/// product of up to `3w` embeddings loses the magnitude of its factors.
fn working_digits(k: &FieldData, t: &InfinityType, alpha: &NFElement, digits: u32) -> u32 {
    let emb = k.embed_f64(alpha);
    let mag: f64 = emb.iter().map(|z| z.norm().max(1.0).log10()).fold(0.0, f64::max);
    digits + (mag * (3 * t.weight()) as f64).ceil() as u32 + 10
}

/// `infty(alpha)` with `digits` certified decimal digits.
pub fn infinity_eval(k: &FieldData, t: &InfinityType, alpha: &NFElement, digits: u32) -> Result<HpComplex> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("infinity type evaluated at zero".into()));
    }
    let wd = working_digits(k, t, alpha, digits);
    let emb = k.embed(alpha, wd)?;
    Ok(t.eval_hp(&emb).with_bits(bits_for_digits(digits)))
}

/// `infty(u)` for a unit `u`, snapped to a `2 w_K`-th root of unity and
/// returned as an element of Q/Z. The snap distance is below `1e-20`.
pub fn unit_phase(k: &FieldData, t: &InfinityType, u: &NFElement) -> Result<QZ> {
    let n = 2 * k.torsion_order as u64;
    if 8 % n != 0 {
        return Err(Error::InvalidArgument(format!("torsion order {} not supported", k.torsion_order)));
    }
    let mut digits = 60;
    while digits <= 2000 {
        let v = infinity_eval(k, t, u, digits)?;
        let z = v.to_c64();
        let j = ((z.arg() / std::f64::consts::TAU * n as f64).round() as i64).rem_euclid(n as i64);
        let root = HpComplex::zeta8_pow(j * (8 / n as i64), v.bits);
        if v.close_to(&root, -67.0) {
            return Ok(QZ::new(j as i128, n));
        }
        if (z.norm() - 1.0).abs() > 1e-6 {
            return Err(Error::Precision(format!("infinity type value {z} on a unit is not a root of unity")));
        }
        digits *= 2;
    }
    Err(Error::Precision("unit value could not be snapped to a root of unity".into()))
}
