use super::infinity::{infinity_eval, unit_phase, InfinityType};
use crate::counting::EulerFactor;
use crate::numfield::{galois_prime, split_prime, FieldData, IdealHNF, NFElement, PrimeIdeal};
use crate::resring::{char_conductor, unit_group, FiniteCharacter, Modulus, QZ};
use crate::util::hp::{bits_for_digits, HpComplex};
use crate::util::intmat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;
use std::sync::{Arc, OnceLock};

/// Starting precision for certified evaluations, in decimal digits.
pub const START_DIGITS: u32 = 120;
/// Precision cap for certified evaluations.
pub const MAX_DIGITS: u32 = 2000;

/// `exp(2 pi i q)` for `q` with denominator dividing 8.
pub fn root_of_unity_hp(q: QZ, bits: u32) -> Result<HpComplex> {
    let k = q
        .numerator_over(8)
        .ok_or_else(|| Error::InvalidArgument(format!("root of unity of order {}", q.den)))?;
    Ok(HpComplex::zeta8_pow(k as i64, bits))
}

/// Square root with a fixed branch: the principal root, except that a root
/// on the imaginary axis is taken with positive imaginary part.
pub fn branch_sqrt_f64(s: Complex64) -> Complex64 {
    let r = s.sqrt();
    if r.re.abs() < 1e-8 * r.norm() {
        Complex64::new(0.0, r.im.abs())
    } else if r.re < 0.0 {
        -r
    } else {
        r
    }
}

pub fn branch_sqrt_hp(s: &HpComplex) -> HpComplex {
    let r = s.sqrt();
    let z = r.to_c64();
    if z.re.abs() < 1e-8 * z.norm() {
        if z.im < 0.0 {
            -r
        } else {
            r
        }
    } else if z.re < 0.0 {
        -r
    } else {
        r
    }
}

/// Is `chi(u) infty(u) = 1` on the torsion generator and the fundamental
/// units.
pub fn unit_compatible(k: &FieldData, chi: &FiniteCharacter, t: &InfinityType) -> Result<bool> {
    for u in std::iter::once(&k.zeta).chain(&k.units) {
        if !chi.eval(u)?.add(unit_phase(k, t, u)?).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Elements `a` in `A` and `b` in `B` with `a + b = 1`.
fn coprime_split(a: &IdealHNF, b: &IdealHNF) -> Result<(NFElement, NFElement)> {
    let mut stacked = a.hnf.clone();
    stacked.extend(b.hnf.iter().cloned());
    let (h, u) = intmat::hnf_with_transform(&stacked);
    if !h[0][0].is_one() {
        return Err(Error::NotCoprime);
    }
    let n = a.hnf.len();
    let x = intmat::vec_mul(&u[0][..n], &stacked[..n].to_vec());
    let y = intmat::vec_mul(&u[0][n..], &stacked[n..].to_vec());
    Ok((NFElement::from_ints(&x), NFElement::from_ints(&y)))
}

/// An algebraic Hecke quasi-character: a finite character `chi` on a
/// Galois-stable modulus, an infinity type and, when the class group is
/// nontrivial, the sign choices on its generators.
#[derive(Clone, Debug)]
pub struct HeckeCharacter {
    pub field: Arc<FieldData>,
    pub chi: FiniteCharacter,
    pub infinity: InfinityType,
    /// Value on the class generator `c_j` is `(-1)^{s_j}` times the branch
    /// square root of `psi(c_j^2)`.
    pub class_signs: Vec<u8>,
    pub conductor: Modulus,
    primitive: OnceLock<FiniteCharacter>,
}

/// Serializable description of a character.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CharacterRecord {
    pub field: String,
    pub modulus: String,
    pub cyc: Vec<u64>,
    pub exponents: Vec<u64>,
    pub order: u64,
    pub infinity_type: String,
    pub class_signs: Vec<u8>,
    pub conductor: String,
    pub conductor_norm: String,
}

/// Value at a prime ideal with its exact finite-part datum.
#[derive(Clone, Debug)]
pub struct PrimeValue {
    pub value: HpComplex,
    pub finite: QZ,
    pub generator: NFElement,
    pub class_exponents: Vec<u32>,
}

impl HeckeCharacter {
    pub fn new(field: Arc<FieldData>, chi: FiniteCharacter, infinity: InfinityType, class_signs: Vec<u8>) -> Result<Self> {
        if chi.group.field.id != field.id {
            return Err(Error::InvalidArgument("character belongs to another field".into()));
        }
        if class_signs.len() != field.class_gens.len() {
            return Err(Error::InvalidArgument("one sign per class-group generator".into()));
        }
        if field.class_gens.iter().any(|c| c.order != 2) {
            return Err(Error::InvalidArgument("only class-group generators of order 2 are supported".into()));
        }
        if !unit_compatible(&field, &chi, &infinity)? {
            return Err(Error::InvalidArgument("finite part and infinity type disagree on units".into()));
        }
        let conductor = char_conductor(&chi)?;
        Ok(HeckeCharacter { field, chi, infinity, class_signs, conductor, primitive: OnceLock::new() })
    }

    pub fn weight(&self) -> u32 {
        self.infinity.weight()
    }

    pub fn modulus(&self) -> &Modulus {
        &self.chi.group.modulus
    }

    /// The finite part transported to `(O/f)^x`, `f` the conductor.
    pub fn primitive(&self) -> Result<&FiniteCharacter> {
        if let Some(c) = self.primitive.get() {
            return Ok(c);
        }
        let k = &self.field;
        let group = Arc::new(unit_group(Arc::clone(k), &self.conductor)?);
        let cond_ideal = self.conductor.ideal(k);
        let rest = self
            .modulus()
            .factors
            .iter()
            .filter(|(q, _)| self.conductor.exponent_of(q) == 0)
            .fold(IdealHNF::unit(), |acc, (q, e)| acc.mul(k, &q.ideal.pow(k, *e)));
        let (a, b) = coprime_split(&cond_ideal, &rest)?;
        let mut exps = Vec::with_capacity(group.cyc.len());
        for (g, &d) in group.gens.iter().zip(&group.cyc) {
            let x = k.add(&a, &k.mul(&b, &group.ring.to_element(g)));
            let v = self.chi.eval(&x)?;
            exps.push(v.numerator_over(d).ok_or_else(|| Error::Internal("primitive character order".into()))?);
        }
        let chi = FiniteCharacter::new(group, exps);
        let _ = self.primitive.set(chi);
        Ok(self.primitive.get().unwrap())
    }

    /// `chi(x)` for `x` coprime to the conductor.
    pub fn finite_value(&self, x: &NFElement) -> Result<QZ> {
        match self.chi.eval(x) {
            Err(Error::NotCoprime) => self.primitive()?.eval(x),
            r => r,
        }
    }

    fn principal_value(&self, x: &NFElement, digits: u32) -> Result<(QZ, HpComplex)> {
        let fin = self.finite_value(x)?;
        let inf = infinity_eval(&self.field, &self.infinity, x, digits)?;
        let bits = inf.bits;
        Ok((fin, &root_of_unity_hp(fin, bits)? * &inf))
    }

    /// `psi(c_j)` on the `j`-th class-group generator.
    pub fn class_value(&self, j: usize, digits: u32) -> Result<HpComplex> {
        let c = &self.field.class_gens[j];
        let (_, s) = self.principal_value(&c.principalization, digits)?;
        let r = branch_sqrt_hp(&s);
        Ok(if self.class_signs[j] & 1 == 1 { -r } else { r })
    }

    /// `psi(P)`. Primes dividing the conductor are rejected.
    pub fn eval_at_prime(&self, pr: &PrimeIdeal, digits: u32) -> Result<PrimeValue> {
        if self.conductor.exponent_of(pr) > 0 {
            return Err(Error::NotCoprime);
        }
        let rep = self.field.class_rep(pr)?;
        let extra = rep.exponents.iter().sum::<u32>() as f64;
        // class values have magnitude 61^{3w/2}; pad the precision for the division
        let pad = (extra * 3.0 * self.weight() as f64 * 1.8).ceil() as u32;
        let (fin, mut value) = self.principal_value(&rep.beta, digits + pad)?;
        for (j, &e) in rep.exponents.iter().enumerate() {
            if e > 0 {
                let cv = self.class_value(j, digits + pad)?.pow(e as u64);
                value = value.div(&cv);
            }
        }
        Ok(PrimeValue {
            value: value.with_bits(bits_for_digits(digits)),
            finite: fin,
            generator: rep.beta.clone(),
            class_exponents: rep.exponents.clone(),
        })
    }

    fn local_factor(&self, primes: &[PrimeIdeal], digits: u32) -> Result<Vec<HpComplex>> {
        let bits = bits_for_digits(digits);
        let mut poly = vec![HpComplex::one(bits)];
        for pr in primes {
            let v = self.eval_at_prime(pr, digits)?.value.with_bits(bits);
            let f = pr.f as usize;
            let mut next = vec![HpComplex::zero(bits); poly.len() + f];
            for (i, c) in poly.iter().enumerate() {
                next[i] = &next[i] + c;
                next[i + f] = &next[i + f] - &(c * &v);
            }
            poly = next;
        }
        Ok(poly)
    }

    /// `prod_{P | p} (1 - psi(P) T^{f_P})` with integer coefficients,
    /// certified by agreement of two precisions and a rounding distance below
    /// `2^-50`.
    pub fn euler_factor_q(&self, p: u64) -> Result<EulerFactor> {
        let primes = split_prime(&self.field, p)?;
        if primes.iter().any(|q| self.conductor.exponent_of(q) > 0) {
            return Err(Error::NotCoprime);
        }
        let mut digits = START_DIGITS;
        while digits <= MAX_DIGITS {
            let lo = self.local_factor(&primes, digits)?;
            let hi = self.local_factor(&primes, digits + 40)?;
            let mut coeffs = Vec::with_capacity(lo.len());
            let mut ok = true;
            for (a, b) in lo.iter().zip(&hi) {
                let (re, im, dist) = b.round_gaussian();
                if a.close_to(b, -100.0) && dist.is_some_and(|d| d > -20.0) {
                    return Err(Error::NonIntegral(p));
                }
                let (re2, im2, _) = a.round_gaussian();
                if !im.is_zero() || re != re2 || im2 != im || dist.is_some_and(|d| d > -50.0) {
                    ok = false;
                    break;
                }
                coeffs.push(re);
            }
            if ok {
                let ef = EulerFactor::new(p, self.weight(), coeffs);
                ef.check_weil()?;
                return Ok(ef);
            }
            digits *= 2;
        }
        Err(Error::Precision(format!("Euler factor at {p} not certified")))
    }

    /// The character `a -> psi(sigma^e a)`.
    pub fn galois_twist(&self, e: u32) -> Result<HeckeCharacter> {
        let e = e % 6;
        if e == 0 {
            return Ok(self.clone());
        }
        let k = &self.field;
        let g = &self.chi.group;
        let m = g.modulus.ideal(k);
        if m.galois(k, e) != m {
            return Err(Error::Internal("modulus is not Galois stable".into()));
        }
        let mut a = Vec::with_capacity(g.cyc.len());
        for (gen, &d) in g.gens.iter().zip(&g.cyc) {
            let y = k.galois_apply(e, &g.ring.to_element(gen));
            let v = self.chi.eval(&y)?;
            a.push(v.numerator_over(d).ok_or_else(|| Error::Internal("twisted character order".into()))?);
        }
        let chi = FiniteCharacter::new(Arc::clone(g), a);
        let infinity = self.infinity.twist(&k.sigma_perm, e);
        let mut out = HeckeCharacter::new(Arc::clone(k), chi, infinity, vec![0; self.class_signs.len()])?;
        for j in 0..k.class_gens.len() {
            let img = galois_prime(k, e, &k.class_gens[j].prime)?;
            let target = self.eval_at_prime(&img, 60)?.value;
            let base = out.class_value(j, 60)?;
            let ratio = target.div(&base).to_c64();
            if (ratio - 1.0).norm() < 1e-6 {
                continue;
            }
            if (ratio + 1.0).norm() < 1e-6 {
                out.class_signs[j] = 1;
                continue;
            }
            return Err(Error::Internal("class-group value does not transport".into()));
        }
        Ok(out)
    }

    pub fn record(&self) -> CharacterRecord {
        CharacterRecord {
            field: self.field.label.clone(),
            modulus: self.modulus().describe(),
            cyc: self.chi.group.cyc.clone(),
            exponents: self.chi.a.clone(),
            order: self.chi.order,
            infinity_type: self.infinity.to_string(),
            class_signs: self.class_signs.clone(),
            conductor: self.conductor.describe(),
            conductor_norm: self.conductor.norm.to_string(),
        }
    }

    /// Conductor norm as an integer.
    pub fn conductor_norm(&self) -> BigInt {
        self.conductor.norm.clone()
    }

    /// True when every prime above `p` is coprime to the conductor.
    pub fn good_at(&self, p: u64) -> bool {
        !self.conductor.factors.iter().any(|(q, e)| *e > 0 && q.p == p)
    }
}
