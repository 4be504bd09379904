use super::element::NFElement;
use super::field::{ClassRep, FieldData};
use super::ideal::PrimeIdeal;
use std::sync::Arc;
use super::ideal::IdealHNF;
use crate::error::GeneratorFailure;
use crate::util::intmat::{self, Mat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const DELTA: (i64, i64) = (99, 100);

fn gram(b: &Mat, g: &Mat) -> Mat {
    intmat::mul(&intmat::mul(b, g), &intmat::transpose(b))
}

fn round_q(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

fn gram_schmidt(a: &Mat) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = a.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bb = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = BigRational::from_integer(a[i][j].clone());
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &bb[l];
            }
            mu[i][j] = s / &bb[j];
        }
        let mut s = BigRational::from_integer(a[i][i].clone());
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &bb[l];
        }
        bb[i] = s;
    }
    (mu, bb)
}

/// Exact LLL reduction of the rows of `b` for the positive definite form `g`.
/// Returns the reduced basis.
pub fn lll_reduce(b: &Mat, g: &Mat) -> Mat {
    let n = b.len();
    let mut b = b.clone();
    let delta = BigRational::new(BigInt::from(DELTA.0), BigInt::from(DELTA.1));
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&gram(&b, g));
            let r = round_q(&mu[k][j]);
            if !r.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &r * y;
                }
            }
        }
        let (mu, bb) = gram_schmidt(&gram(&b, g));
        if bb[k] >= (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bb[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// All nonzero integer vectors `x` (up to sign) with `x A x^T <= bound`, found
/// by Fincke-Pohst enumeration; `A` must be positive definite.
pub fn short_vectors(a: &Mat, bound: f64) -> Vec<(BigInt, Vec<i64>)> {
    let n = a.len();
    let af: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect()).collect();
    // q[i][i] = squared GS lengths, q[i][j] (j > i) = mu coefficients
    let mut q = af.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let slack = bound * (1.0 + 1e-9) + 1e-6;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let mut t = vec![0.0f64; n + 1];
    let mut centre = vec![0.0f64; n];
    fn rec(
        i: usize,
        q: &[Vec<f64>],
        x: &mut Vec<i64>,
        t: &mut Vec<f64>,
        centre: &mut Vec<f64>,
        slack: f64,
        a: &Mat,
        bound: f64,
        out: &mut Vec<(BigInt, Vec<i64>)>,
    ) {
        let n = x.len();
        let mut c = 0.0;
        for j in i + 1..n {
            c -= q[i][j] * x[j] as f64;
        }
        centre[i] = c;
        let rem = slack - t[i + 1];
        if rem < 0.0 {
            return;
        }
        let r = (rem / q[i][i]).sqrt();
        let lo = (c - r).ceil() as i64;
        let hi = (c + r).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let d = v as f64 - c;
            t[i] = t[i + 1] + q[i][i] * d * d;
            if t[i] > slack {
                continue;
            }
            if i == 0 {
                if x.iter().all(|&v| v == 0) {
                    continue;
                }
                // keep one of +-x: last nonzero coordinate positive
                if x.iter().rev().find(|&&v| v != 0).copied().unwrap_or(0) < 0 {
                    continue;
                }
                let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
                let ax = intmat::vec_mul(&xb, a);
                let val: BigInt = ax.iter().zip(&xb).map(|(u, w)| u * w).sum();
                if val.to_f64().unwrap() <= bound {
                    out.push((val, x.clone()));
                }
            } else {
                rec(i - 1, q, x, t, centre, slack, a, bound, out);
            }
        }
        x[i] = 0;
    }
    if n > 0 {
        rec(n - 1, &q, &mut x, &mut t, &mut centre, slack, a, bound, &mut out);
    }
    out.sort();
    out
}

/// Search state for the generators of one ideal: the LLL-reduced basis, its
/// Gram matrix and double-precision embeddings.
pub struct GeneratorSearch {
    pub ideal: IdealHNF,
    basis: Mat,
    gram: Mat,
    emb: Vec<[Complex64; 6]>,
    norm_f: f64,
}

impl GeneratorSearch {
    pub fn new(k: &FieldData, ideal: &IdealHNF) -> Self {
        let basis = lll_reduce(&ideal.hnf, &k.trace_form);
        let gram = gram(&basis, &k.trace_form);
        let emb = basis.iter().map(|r| k.embed_f64(&NFElement::from_ints(r))).collect();
        GeneratorSearch { ideal: ideal.clone(), basis, gram, emb, norm_f: ideal.norm.to_f64().unwrap() }
    }

    /// Base enumeration radius: the T2 value of a hypothetical generator whose
    /// embeddings all have equal size.
    pub fn base_radius(&self) -> f64 {
        6.0 * self.norm_f.powf(1.0 / 3.0)
    }

    /// First element (in the order of increasing T2, then coordinates) of norm
    /// `+-N(I)` with T2 at most `radius`.
    pub fn search(&self, k: &FieldData, radius: f64) -> Option<NFElement> {
        for (_, x) in short_vectors(&self.gram, radius) {
            let mut z = [Complex64::new(0.0, 0.0); 6];
            for (c, e) in x.iter().zip(&self.emb) {
                if *c != 0 {
                    for s in 0..6 {
                        z[s] += e[s] * (*c as f64);
                    }
                }
            }
            let approx: f64 = z.iter().map(|w| w.norm()).product();
            if (approx - self.norm_f).abs() > 1e-6 * self.norm_f + 0.5 {
                continue;
            }
            let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            let alpha = NFElement::from_ints(&intmat::vec_mul(&xb, &self.basis));
            let n = k.norm(&alpha);
            if n.abs() == BigRational::from_integer(self.ideal.norm.clone()) {
                return Some(alpha);
            }
        }
        None
    }
}

/// Radii tried by the generator search, as multiples of the base radius.
pub const RADIUS_SCHEDULE: [f64; 7] = [1.5, 3.0, 6.0, 12.0, 16.0, 24.0, 32.0];

/// A generator of the principal ideal `ideal`, found by exact LLL on the
/// T2-lattice followed by Fincke-Pohst enumeration.
pub fn principal_generator(ideal: &IdealHNF, k: &FieldData) -> Result<NFElement> {
    let s = GeneratorSearch::new(k, ideal);
    let base = s.base_radius();
    for m in RADIUS_SCHEDULE {
        if let Some(a) = s.search(k, base * m) {
            debug_assert!(IdealHNF::principal(k, &a) == *ideal);
            return Ok(a);
        }
    }
    Err(Error::GeneratorNotFound(if k.class_number == 1 {
        GeneratorFailure::BoundExhausted
    } else {
        GeneratorFailure::Insoluble
    }))
}

/// Finds `(j, alpha)` such that `ideals[j] = (alpha)`, scanning all ideals
/// radius by radius so that the first principal one is found cheaply.
pub fn first_principal(k: &FieldData, ideals: &[IdealHNF]) -> Result<(usize, NFElement)> {
    let searches: Vec<GeneratorSearch> = ideals.iter().map(|i| GeneratorSearch::new(k, i)).collect();
    for m in RADIUS_SCHEDULE {
        for (j, s) in searches.iter().enumerate() {
            if let Some(a) = s.search(k, s.base_radius() * m) {
                return Ok((j, a));
            }
        }
    }
    Err(Error::GeneratorNotFound(GeneratorFailure::BoundExhausted))
}

impl FieldData {
    /// Generator data for `P` modulo the class group (cached): with `h = 1`
    /// the exponents are empty and `beta` generates `P`.
    pub fn class_rep(&self, pr: &PrimeIdeal) -> Result<Arc<ClassRep>> {
        let key = (pr.p, pr.index);
        if let Some(r) = self.class_reps.read().unwrap().get(&key) {
            return Ok(Arc::clone(r));
        }
        let rep = if self.class_number == 1 {
            ClassRep { exponents: Vec::new(), beta: principal_generator(&pr.ideal, self)? }
        } else {
            if self.class_gens.is_empty() {
                return Err(Error::ClassDataMissing);
            }
            let orders: Vec<u32> = self.class_gens.iter().map(|c| c.order).collect();
            let mut exps: Vec<Vec<u32>> = vec![Vec::new()];
            for &o in &orders {
                exps = exps
                    .into_iter()
                    .flat_map(|v| (0..o).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    }))
                    .collect();
            }
            let ideals: Vec<IdealHNF> = exps
                .iter()
                .map(|ks| {
                    ks.iter().zip(&self.class_gens).fold(pr.ideal.clone(), |acc, (&k, c)| {
                        acc.mul(self, &c.prime.ideal.pow(self, k))
                    })
                })
                .collect();
            let (j, beta) = first_principal(self, &ideals)?;
            ClassRep { exponents: exps[j].clone(), beta }
        };
        let rep = Arc::new(rep);
        self.class_reps.write().unwrap().insert(key, Arc::clone(&rep));
        Ok(rep)
    }
}
