use crate::util::intmat::{charpoly, Mat};
use crate::util::poly::{coeffs_from_power_sums, power_sums, q_divrem, to_q, trim, ZPoly};
use crate::util::roots::aberth;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Which cohomology a trace list belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Channel {
    TranscendentalK3,
    CurveH1,
}

impl Channel {
    pub fn weight(self) -> u32 {
        match self {
            Channel::TranscendentalK3 => 2,
            Channel::CurveH1 => 1,
        }
    }
}

/// Frobenius traces `t_m` over `F_{p^m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceData {
    pub p: u64,
    pub traces: Vec<(u32, i64)>,
    pub channel: Channel,
}

impl TraceData {
    pub fn get(&self, m: u32) -> Option<i64> {
        self.traces.iter().find(|(k, _)| *k == m).map(|&(_, t)| t)
    }

    /// `|t_m| <= 6 p^{m w / 2}`.
    pub fn check_weil(&self) -> Result<()> {
        let w = self.channel.weight() as f64;
        for &(m, t) in &self.traces {
            let bound = 6.0 * (self.p as f64).powf(m as f64 * w / 2.0);
            if (t as f64).abs() > bound + 1e-9 {
                return Err(Error::InvalidTraces(format!(
                    "|t_{m}| = {} exceeds {bound:.1} at p = {}",
                    t.abs(),
                    self.p
                )));
            }
        }
        Ok(())
    }
}

/// An integer polynomial `1 + c_1 T + ... + c_d T^d` attached to `p` and a weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerFactor {
    pub p: u64,
    pub weight: u32,
    #[serde(with = "bigint_vec")]
    pub coeffs: ZPoly,
    /// Sign in `c_{d-k} = sign p^{w(d-2k)/2} c_k`, when self-dual.
    pub sign: Option<i8>,
}

pub(crate) mod bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|x| x.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

impl EulerFactor {
    pub fn new(p: u64, weight: u32, mut coeffs: ZPoly) -> Self {
        trim(&mut coeffs);
        let mut e = EulerFactor { p, weight, coeffs, sign: None };
        e.sign = e.detect_sign();
        e
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Reciprocal-root power sums `s_1..s_n`.
    pub fn power_sums(&self, n: usize) -> Vec<BigInt> {
        power_sums(&self.coeffs, n)
    }

    /// Sign of the functional equation if one holds exactly.
    fn detect_sign(&self) -> Option<i8> {
        let d = self.degree();
        if (self.weight as usize * d) % 2 == 1 {
            return None;
        }
        let p = BigInt::from(self.p);
        'sign: for s in [1i8, -1] {
            for k in 0..=d {
                let e = self.weight as i64 * (d as i64 - 2 * k as i64);
                let lhs = self.coeff(d - k);
                let rhs = &self.coeff(k) * BigInt::from(s);
                let ok = if e >= 0 {
                    lhs == rhs * num_traits::pow(p.clone(), (e / 2) as usize)
                } else {
                    lhs * num_traits::pow(p.clone(), (-e / 2) as usize) == rhs
                };
                if !ok {
                    continue 'sign;
                }
            }
            return Some(s);
        }
        None
    }

    /// Every complex reciprocal root has absolute value `p^{w/2}`; checked on
    /// the squarefree part to relative accuracy `1e-8`.
    pub fn check_weil(&self) -> Result<()> {
        let d = self.degree();
        if d == 0 {
            return Ok(());
        }
        let sf = squarefree_part(&self.coeffs);
        // reciprocal roots of P are roots of the reversed polynomial; rescale by p^{-w/2}
        let scale = (self.p as f64).powf(self.weight as f64 / 2.0);
        let n = sf.len() - 1;
        let c: Vec<Complex64> = (0..=n)
            .map(|k| {
                // reversed: coefficient of u^k is sf[n - k]; substitute u = scale * v
                let v = sf[n - k].to_f64().unwrap_or(f64::NAN) * scale.powi(k as i32);
                Complex64::new(v, 0.0)
            })
            .collect();
        let norm = c.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        let c: Vec<Complex64> = c.iter().map(|z| z / norm).collect();
        for r in aberth(&c) {
            if (r.norm() - 1.0).abs() > 1e-8 {
                return Err(Error::WeilBound(format!(
                    "p = {}, weight {}: reciprocal root of modulus {:.6} p^(w/2)",
                    self.p,
                    self.weight,
                    r.norm()
                )));
            }
        }
        Ok(())
    }

    pub fn coeffs_string(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// `P / gcd(P, P')` over Q, rescaled to an integer polynomial.
fn squarefree_part(p: &[BigInt]) -> ZPoly {
    let f = to_q(p);
    let df: Vec<BigRational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    let (mut a, mut b) = (f.clone(), df);
    trim(&mut b);
    while !b.is_empty() {
        let r = q_divrem(&a, &b).1;
        a = b;
        b = r;
    }
    let (q, _) = q_divrem(&f, &a);
    let den = q.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    q.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect()
}

/// Closes a degree-6 Euler factor from `t_1, t_2, t_3` by Newton's identities
/// and the functional equation `c_{6-k} = sign p^{w(3-k)} c_k`.
pub fn weil_from_traces(traces: &TraceData, weight: u32, sign: i8) -> Result<EulerFactor> {
    traces.check_weil()?;
    let s: Vec<BigInt> = (1..=3)
        .map(|m| {
            traces
                .get(m)
                .map(BigInt::from)
                .ok_or_else(|| Error::InvalidTraces(format!("missing t_{m} at p = {}", traces.p)))
        })
        .collect::<Result<_>>()?;
    let low = coeffs_from_power_sums(&s)
        .ok_or_else(|| Error::InvalidTraces(format!("non-integral Newton identities at p = {}", traces.p)))?;
    let p = BigInt::from(traces.p);
    let sg = BigInt::from(sign);
    if sign == -1 && !low[3].is_zero() {
        return Err(Error::WeilBound(format!("sign -1 forces c_3 = 0 at p = {}", traces.p)));
    }
    let pw = |k: u32| num_traits::pow(p.clone(), (weight * k) as usize);
    let coeffs = vec![
        BigInt::one(),
        low[1].clone(),
        low[2].clone(),
        low[3].clone(),
        &sg * pw(1) * &low[2],
        &sg * pw(2) * &low[1],
        &sg * pw(3),
    ];
    let e = EulerFactor::new(traces.p, weight, coeffs);
    e.check_weil()?;
    Ok(e)
}

/// Tries both signs; errors unless exactly one passes the Weil check.
pub fn weil_from_traces_any_sign(traces: &TraceData, weight: u32) -> Result<EulerFactor> {
    let ok: Vec<EulerFactor> = [1i8, -1]
        .iter()
        .filter_map(|&s| weil_from_traces(traces, weight, s).ok())
        .collect();
    match ok.len() {
        1 => Ok(ok.into_iter().next().unwrap()),
        0 => Err(Error::WeilBound(format!("no sign gives a Weil polynomial at p = {}", traces.p))),
        _ => Err(Error::InvalidTraces(format!("both signs admissible at p = {}", traces.p))),
    }
}

/// Reversed characteristic polynomial of the exterior square of the companion
/// matrix: the factor with reciprocal roots `alpha_i alpha_j`, `i < j`.
pub fn exterior_square(p: &EulerFactor) -> EulerFactor {
    let n = p.degree();
    let c = &p.coeffs;
    // companion matrix of T^n + c_1 T^{n-1} + ... + c_n
    let mut comp: Mat = vec![vec![BigInt::zero(); n]; n];
    for i in 1..n {
        comp[i][i - 1] = BigInt::one();
    }
    for i in 0..n {
        comp[i][n - 1] = -&c[n - i];
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let w2: Mat = pairs
        .iter()
        .map(|&(i, j)| {
            pairs
                .iter()
                .map(|&(k, l)| &comp[i][k] * &comp[j][l] - &comp[i][l] * &comp[j][k])
                .collect()
        })
        .collect();
    let cp = charpoly(&w2);
    let rev: ZPoly = cp.into_iter().rev().collect();
    EulerFactor::new(p.p, 2 * p.weight, rev)
}

/// `prod (1 - p^f T^f)` over the primes of the cubic field above `p`.
pub fn algebraic_part_factor(splitting: &[(u32, u32)], p: u64) -> Result<EulerFactor> {
    if splitting.iter().any(|&(e, _)| e > 1) {
        return Err(Error::Ramified(p));
    }
    let mut acc: ZPoly = vec![BigInt::one()];
    for &(_, f) in splitting {
        let mut g = vec![BigInt::zero(); f as usize + 1];
        g[0] = BigInt::one();
        g[f as usize] = -num_traits::pow(BigInt::from(p), f as usize);
        acc = crate::util::poly::mul(&acc, &g);
    }
    Ok(EulerFactor::new(p, 2, acc))
}

/// Exact quotient of Euler factors.
pub fn divide(a: &EulerFactor, b: &EulerFactor) -> Result<EulerFactor> {
    let q = crate::util::poly::exact_div(&a.coeffs, &b.coeffs).ok_or(Error::DivisionRemainder(a.p))?;
    Ok(EulerFactor::new(a.p, a.weight, q))
}
