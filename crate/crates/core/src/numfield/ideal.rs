use super::element::NFElement;
use super::field::{FieldData, DEGREE};
use crate::ffarith::factor_poly_mod_p;
use crate::util::intmat::{self, Mat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An integral ideal as the Hermite normal form of its Z-basis on the integral
/// basis of K.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IdealHNF {
    pub hnf: Mat,
    pub norm: BigInt,
}

/// A prime ideal with its two-element representation `(p, gen)`.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    pub p: u64,
    pub gen: NFElement,
    pub e: u32,
    pub f: u32,
    /// Position among the primes above `p` in the canonical order.
    pub index: usize,
    pub ideal: IdealHNF,
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal
    }
}

impl Eq for PrimeIdeal {}

impl PrimeIdeal {
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f)
    }
}

fn int_coords(x: &NFElement) -> Vec<BigInt> {
    x.int_coords().expect("ideal generators are integral")
}

impl IdealHNF {
    pub fn unit() -> Self {
        IdealHNF { hnf: intmat::identity(DEGREE), norm: BigInt::one() }
    }

    /// The ideal spanned over Z by the given rows (must have full rank).
    pub fn from_rows(rows: Mat) -> Self {
        let h = intmat::hnf_basis(&rows);
        assert_eq!(h.len(), DEGREE, "ideal lattice has full rank");
        let norm = (0..DEGREE).fold(BigInt::one(), |acc, i| acc * &h[i][i]);
        IdealHNF { hnf: h, norm }
    }

    /// The ideal generated by the given integral elements.
    pub fn generated_by(k: &FieldData, gens: &[NFElement]) -> Self {
        let mut rows = Vec::with_capacity(DEGREE * gens.len());
        for g in gens {
            for i in 0..DEGREE {
                rows.push(int_coords(&k.mul(g, &NFElement::basis(i))));
            }
        }
        Self::from_rows(rows)
    }

    pub fn principal(k: &FieldData, a: &NFElement) -> Self {
        Self::generated_by(k, std::slice::from_ref(a))
    }

    pub fn from_two(k: &FieldData, p: u64, g: &NFElement) -> Self {
        Self::generated_by(k, &[NFElement::from_int(p as i64), g.clone()])
    }

    pub fn basis_elements(&self) -> Vec<NFElement> {
        self.hnf.iter().map(|r| NFElement::from_ints(r)).collect()
    }

    pub fn mul(&self, k: &FieldData, other: &IdealHNF) -> IdealHNF {
        let a = self.basis_elements();
        let b = other.basis_elements();
        let mut rows = Vec::with_capacity(DEGREE * DEGREE + DEGREE);
        for x in &a {
            for y in &b {
                rows.push(int_coords(&k.mul(x, y)));
            }
        }
        // the product contains (N(I) N(J)), which keeps the HNF entries small
        let nn = &self.norm * &other.norm;
        for i in 0..DEGREE {
            let mut r = vec![BigInt::zero(); DEGREE];
            r[i] = nn.clone();
            rows.push(r);
        }
        Self::from_rows(rows)
    }

    pub fn pow(&self, k: &FieldData, mut e: u32) -> IdealHNF {
        let mut base = self.clone();
        let mut acc = IdealHNF::unit();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(k, &base);
            }
        }
        acc
    }

    /// Canonical representative of `x` modulo the ideal (integer coordinates),
    /// with `0 <= x_i < h_ii`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut v = x.to_vec();
        for i in 0..DEGREE {
            let q = v[i].div_floor(&self.hnf[i][i]);
            if !q.is_zero() {
                for j in i..DEGREE {
                    v[j] -= &q * &self.hnf[i][j];
                }
            }
        }
        v
    }

    pub fn contains(&self, x: &NFElement) -> bool {
        match x.int_coords() {
            Some(c) => self.reduce(&c).iter().all(|v| v.is_zero()),
            None => false,
        }
    }

    pub fn divides(&self, k: &FieldData, other: &IdealHNF) -> bool {
        let _ = k;
        other.hnf.iter().all(|r| self.reduce(r).iter().all(|v| v.is_zero()))
    }

    pub fn galois(&self, k: &FieldData, e: u32) -> IdealHNF {
        let rows = self
            .basis_elements()
            .iter()
            .map(|x| int_coords(&k.galois_apply(e, x)))
            .collect();
        Self::from_rows(rows)
    }

    pub fn is_unit(&self) -> bool {
        self.norm.is_one()
    }
}

fn lift_poly(k: &FieldData, coeffs: &[u64]) -> NFElement {
    let v: Vec<BigRational> = coeffs
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    k.from_power_basis(&v)
}

/// The primes of K above `p`, in canonical order.
pub fn split_prime(k: &FieldData, p: u64) -> Result<Vec<PrimeIdeal>> {
    if !crate::util::primes::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k.poly_index % p == 0 {
        let list: Vec<PrimeIdeal> = k.index_primes.iter().filter(|q| q.p == p).cloned().collect();
        if list.is_empty() {
            return Err(Error::CorruptData { field: k.id, check: format!("factorization data for index prime {p}") });
        }
        return Ok(list);
    }
    let factors = factor_poly_mod_p(&k.poly, p)?;
    let mut out = Vec::with_capacity(factors.len());
    for (index, (g, e)) in factors.iter().enumerate() {
        let gen = lift_poly(k, &g.c);
        let ideal = IdealHNF::from_two(k, p, &gen);
        let f = g.degree().unwrap_or(0) as u32;
        debug_assert_eq!(ideal.norm, BigInt::from(p).pow(f), "K{} p={p} g={:?}", k.id, g.c);
        out.push(PrimeIdeal { p, gen, e: *e, f, index, ideal });
    }
    Ok(out)
}

/// Applies `sigma^e` to a prime, returning the matching entry of
/// `split_prime` (so that indices stay canonical).
pub fn galois_prime(k: &FieldData, e: u32, pr: &PrimeIdeal) -> Result<PrimeIdeal> {
    let img = pr.ideal.galois(k, e);
    split_prime(k, pr.p)?
        .into_iter()
        .find(|q| q.ideal == img)
        .ok_or_else(|| Error::Internal("Galois image is not a listed prime".into()))
}

/// Splitting data `(e, f)` of `p` in the cubic subfield.
pub fn cubic_subfield_split(k: &FieldData, p: u64) -> Result<Vec<(u32, u32)>> {
    let cubic = crate::util::poly::zpoly(&k.cubic);
    let dcub = crate::util::poly::discriminant_z(&cubic).abs();
    let df = BigInt::from(k.cubic_field_disc());
    let index_sq = &dcub / &df;
    if !(index_sq.clone() % BigInt::from(p)).is_zero() {
        let mut v: Vec<(u32, u32)> = factor_poly_mod_p(&cubic, p)?
            .iter()
            .map(|(g, e)| (*e, g.degree().unwrap_or(0) as u32))
            .collect();
        v.sort();
        return Ok(v);
    }
    // through the decomposition group in Gal(K/Q) = Z/6 and its image in Z/3
    let primes = split_prime(k, p)?;
    let (ek, fk) = (primes[0].e, primes[0].f);
    let d = ek * fk;
    let e = ek / ek.gcd(&2);
    let ef = d / d.gcd(&2);
    Ok(vec![(e, ef / e); (3 / ef) as usize])
}
