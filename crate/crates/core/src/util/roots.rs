//! Complex roots of integer polynomials: Aberth iteration in double precision,
//! then Newton refinement in fixed-point arithmetic.

use super::hp::HpComplex;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

fn eval_c(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// All complex roots of a squarefree polynomial with complex coefficients,
/// constant term first.
pub fn aberth(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let lead = p[n];
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    // Cauchy-style radius for the initial circle
    let r = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let r0 = r.min(
        monic[..n]
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm().powf(1.0 / (n - i) as f64))
            .fold(0.0f64, f64::max)
            * 2.0,
    );
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0.max(1e-3), 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval_c(&monic, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

pub fn aberth_int(p: &[BigInt]) -> Vec<Complex64> {
    let c: Vec<Complex64> = p
        .iter()
        .map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    aberth(&c)
}

fn eval_hp(p: &[BigInt], z: &HpComplex) -> (HpComplex, HpComplex) {
    let b = z.bits;
    let mut v = HpComplex::zero(b);
    let mut d = HpComplex::zero(b);
    for c in p.iter().rev() {
        d = &(&d * z) + &v;
        v = &(&v * z) + &HpComplex::from_int(c, b);
    }
    (v, d)
}

/// Refines an approximate simple root of an integer polynomial to `bits`
/// bits. Certification: the Newton step at the final precision must be
/// below `2^-(bits - 16)`.
pub fn refine_root(p: &[BigInt], approx: Complex64, bits: u32) -> Result<HpComplex> {
    let work = bits + 64;
    let mut z = HpComplex::from_f64(approx.re, approx.im, work);
    let mut prec = 48u32;
    let mut steps = 0;
    loop {
        prec = (prec * 2).min(work);
        let zz = z.with_bits(work);
        let (v, d) = eval_hp(p, &zz);
        if d.is_zero() {
            return Err(Error::Precision("derivative vanishes at a root".into()));
        }
        let step = v.div(&d);
        z = &zz - &step;
        steps += 1;
        let small = step.diff_log2(&HpComplex::zero(work)).is_none_or(|l| l < -(bits as f64) - 16.0);
        if prec == work && small {
            break;
        }
        if steps > 200 {
            return Err(Error::Precision(format!("Newton refinement did not converge to {bits} bits")));
        }
    }
    Ok(z.with_bits(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::poly::zpoly;

    #[test]
    fn roots_of_cyclotomic_and_sextic() {
        let p = zpoly(&[1, 0, 9, 0, 6, 0, 1]);
        let r = aberth_int(&p);
        assert_eq!(r.len(), 6);
        for z in &r {
            let hp = refine_root(&p, *z, 400).unwrap();
            let (v, _) = eval_hp(&p, &hp.with_bits(400));
            assert!(v.close_to(&HpComplex::zero(400), -380.0));
        }
    }
}
