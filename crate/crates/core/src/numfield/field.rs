use super::data::{parse_file, parse_rational, RawField, DEFAULT_FIELDS};
use super::element::NFElement;
use super::ideal::{IdealHNF, PrimeIdeal};
use crate::util::hp::HpComplex;
use crate::util::intmat::{self, inverse_q, Mat, QMat};
use crate::util::poly::{discriminant_z, zpoly, ZPoly};
use crate::util::roots::{aberth_int, refine_root};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

pub const DEGREE: usize = 6;

/// A class-group generator `c` with `c^order = (principalization)`.
#[derive(Clone, Debug)]
pub struct ClassGenerator {
    pub prime: PrimeIdeal,
    pub order: u32,
    pub principalization: NFElement,
}

/// One of the four cyclic sextic CM fields, with verified shipped constants.
#[derive(Debug)]
pub struct FieldData {
    pub id: u32,
    pub label: String,
    /// Monic defining polynomial, constant term first.
    pub poly: ZPoly,
    pub abs_disc: u64,
    /// `[O_K : Z[theta]]`.
    pub poly_index: u64,
    /// Row `i` is the integral basis element `b_i` in the power basis.
    pub basis: QMat,
    /// Row `j` is `theta^j` on the integral basis.
    pub basis_inv: QMat,
    /// `mult[i][j]` holds the coordinates of `b_i b_j`.
    pub mult: Vec<Vec<Vec<i64>>>,
    /// Row `i` holds the coordinates of `sigma(b_i)`.
    pub sigma: Vec<Vec<i64>>,
    pub torsion_order: u32,
    pub zeta: NFElement,
    pub units: Vec<NFElement>,
    pub class_number: u32,
    pub class_cyc: Vec<u32>,
    pub class_gens: Vec<ClassGenerator>,
    pub cubic: Vec<i64>,
    pub cubic_root: NFElement,
    pub index_primes: Vec<PrimeIdeal>,
    /// Gram matrix `Tr(b_i conj(b_j))`.
    pub trace_form: Mat,
    /// Roots of the defining polynomial in canonical embedding order: slots
    /// `0..3` are the positive-imaginary representatives of the three conjugate
    /// pairs, slots `3..6` their conjugates.
    pub roots: [Complex64; 6],
    /// `phi_e(sigma(x)) = phi_{sigma_perm[e]}(x)`.
    pub sigma_perm: [usize; 6],
    hp_roots: RwLock<BTreeMap<u32, Arc<Vec<HpComplex>>>>,
    pub(super) class_reps: RwLock<BTreeMap<(u64, usize), Arc<ClassRep>>>,
}

/// `P * prod c_j^{k_j} = (beta)` for a prime `P` and the class-group
/// generators `c_j`.
#[derive(Clone, Debug)]
pub struct ClassRep {
    pub exponents: Vec<u32>,
    pub beta: NFElement,
}

fn corrupt(field: u32, check: impl Into<String>) -> Error {
    Error::CorruptData { field, check: check.into() }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `a * b mod f` for polynomials over Q with monic `f`.
fn qpoly_mulmod(a: &[BigRational], b: &[BigRational], f: &[BigInt]) -> Vec<BigRational> {
    let n = f.len() - 1;
    let mut prod = vec![BigRational::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for k in (n..prod.len()).rev() {
        let c = prod[k].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..n {
            prod[k - n + j] -= &c * BigRational::from_integer(f[j].clone());
        }
        prod[k] = BigRational::zero();
    }
    prod.truncate(n);
    prod.resize(n, BigRational::zero());
    prod
}

pub fn load_all(text: Option<&str>) -> Result<Vec<FieldData>> {
    let raw = parse_file(text.unwrap_or(DEFAULT_FIELDS))?;
    raw.field.iter().map(FieldData::from_raw).collect()
}

/// Loads and verifies field `i` from the shipped data (or `text`).
pub fn load_field_from(i: u32, text: Option<&str>) -> Result<FieldData> {
    let raw = parse_file(text.unwrap_or(DEFAULT_FIELDS))?;
    let f = raw
        .field
        .iter()
        .find(|f| f.id == i)
        .ok_or_else(|| Error::InvalidArgument(format!("no field with id {i}")))?;
    FieldData::from_raw(f)
}

pub fn load_field(i: u32) -> Result<FieldData> {
    load_field_from(i, None)
}

/// Shared, lazily loaded copies of the shipped fields.
pub fn shipped_field(i: u32) -> Result<Arc<FieldData>> {
    static CACHE: std::sync::OnceLock<Vec<Arc<FieldData>>> = std::sync::OnceLock::new();
    let all = CACHE.get_or_init(|| {
        load_all(None)
            .expect("shipped field data verifies")
            .into_iter()
            .map(Arc::new)
            .collect()
    });
    all.iter()
        .find(|f| f.id == i)
        .cloned()
        .ok_or_else(|| Error::InvalidArgument(format!("no field with id {i}")))
}

impl FieldData {
    fn from_raw(r: &RawField) -> Result<Self> {
        let id = r.id;
        if r.defining_polynomial.len() != DEGREE + 1 || r.defining_polynomial[DEGREE] != 1 {
            return Err(corrupt(id, "defining polynomial is monic of degree 6"));
        }
        let poly = zpoly(&r.defining_polynomial);
        // irreducible over Q if irreducible modulo some prime
        let irreducible = crate::util::primes::primes_up_to(2000).into_iter().skip(1).any(|p| {
            crate::ffarith::factor_poly_mod_p(&poly, p)
                .map(|f| f.len() == 1 && f[0].1 == 1)
                .unwrap_or(false)
        });
        if !irreducible {
            return Err(corrupt(id, "defining polynomial irreducible"));
        }
        let label_disc: Option<u64> = r.label.split('.').nth(2).and_then(|s| s.parse().ok());
        if label_disc != Some(r.abs_discriminant) {
            return Err(corrupt(id, format!("|disc| {} matches label {}", r.abs_discriminant, r.label)));
        }
        let basis: QMat = r
            .integral_basis
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        if basis.len() != DEGREE || basis.iter().any(|r| r.len() != DEGREE) {
            return Err(corrupt(id, "integral basis is 6x6"));
        }
        let basis_inv = inverse_q(&basis).ok_or_else(|| corrupt(id, "integral basis is invertible"))?;
        let to_coords = |v: &[BigRational]| intmat::qvec_mul(v, &basis_inv);
        // multiplication table
        let mut mult = vec![vec![vec![0i64; DEGREE]; DEGREE]; DEGREE];
        for i in 0..DEGREE {
            for j in 0..DEGREE {
                let pr = qpoly_mulmod(&basis[i], &basis[j], &poly);
                let c = to_coords(&pr);
                for k in 0..DEGREE {
                    if !c[k].is_integer() {
                        return Err(corrupt(id, "integral basis closed under multiplication"));
                    }
                    mult[i][j][k] = c[k].to_integer().to_i64().ok_or_else(|| corrupt(id, "table fits i64"))?;
                }
            }
        }
        // theta^j are integral
        if basis_inv.iter().flatten().any(|x| !x.is_integer()) {
            return Err(corrupt(id, "Z[theta] contained in the order"));
        }
        // sigma
        let s_theta: Vec<BigRational> = r
            .galois_generator
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()?;
        if s_theta.len() != DEGREE {
            return Err(corrupt(id, "galois generator has 6 coefficients"));
        }
        let mut s_pows: Vec<Vec<BigRational>> = vec![];
        let mut acc = vec![BigRational::zero(); DEGREE];
        acc[0] = BigRational::one();
        for _ in 0..=DEGREE {
            s_pows.push(acc.clone());
            acc = qpoly_mulmod(&acc, &s_theta, &poly);
        }
        // f(sigma(theta)) = 0
        let mut fs = vec![BigRational::zero(); DEGREE];
        for (j, c) in poly.iter().enumerate() {
            for k in 0..DEGREE {
                fs[k] += BigRational::from_integer(c.clone()) * &s_pows[j][k];
            }
        }
        if fs.iter().any(|x| !x.is_zero()) {
            return Err(corrupt(id, "sigma(theta) is a root of the defining polynomial"));
        }
        let mut sigma = vec![vec![0i64; DEGREE]; DEGREE];
        for i in 0..DEGREE {
            let mut img = vec![BigRational::zero(); DEGREE];
            for j in 0..DEGREE {
                for k in 0..DEGREE {
                    img[k] += &basis[i][j] * &s_pows[j][k];
                }
            }
            let c = to_coords(&img);
            for k in 0..DEGREE {
                if !c[k].is_integer() {
                    return Err(corrupt(id, "sigma preserves the maximal order"));
                }
                sigma[i][k] = c[k].to_integer().to_i64().unwrap();
            }
        }
        let sigma_m = intmat::from_i64(&sigma);
        let mut pw = intmat::identity(DEGREE);
        let mut order = 0;
        for k in 1..=DEGREE {
            pw = intmat::mul(&pw, &sigma_m);
            if pw == intmat::identity(DEGREE) {
                order = k;
                break;
            }
        }
        if order != DEGREE {
            return Err(corrupt(id, format!("sigma has exact order 6 (found {order})")));
        }
        // embeddings and canonical order
        let mut rts = aberth_int(&poly);
        for z in rts.iter_mut() {
            let hp = refine_root(&poly, *z, 80)?;
            *z = hp.to_c64();
        }
        if rts.iter().any(|z| z.im.abs() < 1e-9) {
            return Err(corrupt(id, "field is totally imaginary"));
        }
        let mut reps: Vec<Complex64> = rts.iter().copied().filter(|z| z.im > 0.0).collect();
        if reps.len() != 3 {
            return Err(corrupt(id, "three conjugate pairs of roots"));
        }
        let key = |z: &Complex64| ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64);
        reps.sort_by_key(key);
        let roots = [reps[0], reps[1], reps[2], reps[0].conj(), reps[1].conj(), reps[2].conj()];
        let eval_q = |c: &[BigRational], z: Complex64| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for x in c.iter().rev() {
                acc = acc * z + x.to_f64().unwrap();
            }
            acc
        };
        let mut sigma_perm = [0usize; 6];
        for e in 0..6 {
            let v = eval_q(&s_theta, roots[e]);
            let (k, d) = roots
                .iter()
                .enumerate()
                .map(|(k, r)| (k, (r - v).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            if d > 1e-6 {
                return Err(corrupt(id, "sigma permutes the embeddings"));
            }
            sigma_perm[e] = k;
        }
        // sigma^3 is complex conjugation under every embedding
        for e in 0..6 {
            let mut k = e;
            for _ in 0..3 {
                k = sigma_perm[k];
            }
            if k != (e + 3) % 6 {
                return Err(corrupt(id, "sigma^3 is complex conjugation"));
            }
        }
        let elt = |v: &[i64], what: &str| -> Result<NFElement> {
            if v.len() != DEGREE {
                return Err(corrupt(id, format!("{what} has 6 coordinates")));
            }
            Ok(NFElement::from_i64(v))
        };
        let zeta = elt(&r.torsion_generator, "torsion generator")?;
        let units = r
            .fundamental_units
            .iter()
            .map(|u| elt(u, "unit"))
            .collect::<Result<Vec<_>>>()?;
        let cubic_root = elt(&r.cubic_root, "cubic root")?;
        let mut k = FieldData {
            id,
            label: r.label.clone(),
            poly: poly.clone(),
            abs_disc: r.abs_discriminant,
            poly_index: 0,
            basis,
            basis_inv,
            mult,
            sigma,
            torsion_order: r.torsion_order,
            zeta,
            units,
            class_number: r.class_number,
            class_cyc: r.class_group_cyc.clone(),
            class_gens: Vec::new(),
            cubic: r.cubic_polynomial.clone(),
            cubic_root,
            index_primes: Vec::new(),
            trace_form: Vec::new(),
            roots,
            sigma_perm,
            hp_roots: RwLock::new(BTreeMap::new()),
            class_reps: RwLock::new(BTreeMap::new()),
        };
        k.trace_form = (0..DEGREE)
            .map(|i| {
                (0..DEGREE)
                    .map(|j| {
                        let bi = NFElement::basis(i);
                        let bj = k.galois_apply(3, &NFElement::basis(j));
                        k.trace(&k.mul(&bi, &bj)).to_integer()
                    })
                    .collect()
            })
            .collect();
        k.verify_discriminant()?;
        k.verify_units()?;
        k.verify_cubic()?;
        k.load_index_primes(r)?;
        k.load_class_data(r)?;
        Ok(k)
    }

    fn verify_discriminant(&mut self) -> Result<()> {
        let id = self.id;
        let gram: Mat = (0..DEGREE)
            .map(|i| {
                (0..DEGREE)
                    .map(|j| self.trace(&self.mul(&NFElement::basis(i), &NFElement::basis(j))).to_integer())
                    .collect()
            })
            .collect();
        let d = intmat::det(&gram);
        if d != -BigInt::from(self.abs_disc) {
            return Err(corrupt(id, format!("discriminant of the integral basis is -{} (got {d})", self.abs_disc)));
        }
        let dp = discriminant_z(&self.poly).abs();
        let ratio = &dp / BigInt::from(self.abs_disc);
        if !(&dp % BigInt::from(self.abs_disc)).is_zero() {
            return Err(corrupt(id, "disc(f) / disc(K) is an integer"));
        }
        let idx = ratio.sqrt();
        if &idx * &idx != ratio {
            return Err(corrupt(id, "disc(f) / disc(K) is a square"));
        }
        self.poly_index = idx.to_u64().ok_or_else(|| corrupt(id, "index fits u64"))?;
        Ok(())
    }

    fn verify_units(&self) -> Result<()> {
        let id = self.id;
        let w = self.torsion_order;
        let one = NFElement::one();
        if self.pow(&self.zeta, w as u64) != one {
            return Err(corrupt(id, "zeta^w = 1"));
        }
        for (l, _) in crate::util::primes::factor(w as u64) {
            if self.pow(&self.zeta, (w as u64) / l) == one {
                return Err(corrupt(id, "zeta has exact order w"));
            }
        }
        if self.units.len() != 2 {
            return Err(corrupt(id, "two fundamental units"));
        }
        for u in &self.units {
            if self.norm(u).abs() != BigRational::one() || !u.is_integral() {
                return Err(corrupt(id, "fundamental units have norm +-1"));
            }
        }
        // regulator lower bound
        let logs: Vec<Vec<f64>> = self
            .units
            .iter()
            .map(|u| self.embed_f64(u)[..2].iter().map(|z| 2.0 * z.norm().ln()).collect())
            .collect();
        let reg = (logs[0][0] * logs[1][1] - logs[0][1] * logs[1][0]).abs();
        if reg < 1e-6 {
            return Err(corrupt(id, "fundamental units independent (regulator > 1e-6)"));
        }
        Ok(())
    }

    fn verify_cubic(&self) -> Result<()> {
        let id = self.id;
        let r = &self.cubic_root;
        if self.cubic.len() != 4 || self.cubic[3] != 1 {
            return Err(corrupt(id, "cubic subfield polynomial is monic cubic"));
        }
        let mut acc = NFElement::zero();
        for &c in self.cubic.iter().rev() {
            acc = self.add(&self.mul(&acc, r), &NFElement::from_int(c));
        }
        if !acc.is_zero() {
            return Err(corrupt(id, "cubic root satisfies the cubic"));
        }
        if &self.galois_apply(3, r) != r {
            return Err(corrupt(id, "cubic subfield is the fixed field of sigma^3"));
        }
        if &self.galois_apply(2, r) == r {
            return Err(corrupt(id, "cubic root generates a cubic field"));
        }
        Ok(())
    }

    fn load_index_primes(&mut self, r: &RawField) -> Result<()> {
        let id = self.id;
        let mut by_p: BTreeMap<u64, Vec<PrimeIdeal>> = BTreeMap::new();
        for (n, ip) in r.index_prime.iter().enumerate() {
            let g = NFElement::from_i64(&ip.generator);
            let ideal = IdealHNF::from_two(self, ip.p, &g);
            if ideal.norm != BigInt::from(ip.p).pow(ip.f) {
                return Err(corrupt(id, format!("index prime {} #{n} has norm p^f", ip.p)));
            }
            let list = by_p.entry(ip.p).or_default();
            let index = list.len();
            list.push(PrimeIdeal { p: ip.p, gen: g, e: ip.e, f: ip.f, index, ideal });
        }
        for (p, list) in &by_p {
            let mut prod = IdealHNF::unit();
            for pr in list {
                for _ in 0..pr.e {
                    prod = prod.mul(self, &pr.ideal);
                }
            }
            if prod != IdealHNF::principal(self, &NFElement::from_int(*p as i64)) {
                return Err(corrupt(id, format!("stored primes above {p} multiply to (p)")));
            }
        }
        for (p, _) in crate::util::primes::factor(self.poly_index.max(1)) {
            if !by_p.contains_key(&p) {
                return Err(corrupt(id, format!("factorization data for index prime {p}")));
            }
        }
        self.index_primes = by_p.into_values().flatten().collect();
        Ok(())
    }

    fn load_class_data(&mut self, r: &RawField) -> Result<()> {
        let id = self.id;
        let prod: u32 = r.class_group_cyc.iter().product();
        if prod != self.class_number {
            return Err(corrupt(id, "class number equals the product of the cyclic factors"));
        }
        if self.class_number > 1 && r.class_generator.len() != r.class_group_cyc.len() {
            return Err(corrupt(id, "one class generator per cyclic factor"));
        }
        for (n, cg) in r.class_generator.iter().enumerate() {
            let g = NFElement::from_i64(&cg.generator);
            let ideal = IdealHNF::from_two(self, cg.p, &g);
            if ideal.norm != BigInt::from(cg.p) {
                return Err(corrupt(id, format!("class generator {n} is a degree-1 prime")));
            }
            let gamma = NFElement::from_i64(&cg.principalization);
            if ideal.pow(self, cg.order) != IdealHNF::principal(self, &gamma) {
                return Err(corrupt(id, format!("class generator {n} to its order is principal")));
            }
            if cg.order != r.class_group_cyc[n] {
                return Err(corrupt(id, format!("class generator {n} has the stated order")));
            }
            let prime = PrimeIdeal { p: cg.p, gen: g, e: 1, f: 1, index: n, ideal };
            self.class_gens.push(ClassGenerator { prime, order: cg.order, principalization: gamma });
        }
        Ok(())
    }

    pub fn cubic_field_disc(&self) -> u64 {
        // |disc K| = 64 disc(F)^2 for K = F(i) with odd conductor
        ((self.abs_disc / 64) as f64).sqrt().round() as u64
    }

    // ---- element arithmetic ----

    pub fn mul(&self, a: &NFElement, b: &NFElement) -> NFElement {
        let mut c = vec![BigRational::zero(); DEGREE];
        for i in 0..DEGREE {
            if a.c[i].is_zero() {
                continue;
            }
            for j in 0..DEGREE {
                if b.c[j].is_zero() {
                    continue;
                }
                let ab = &a.c[i] * &b.c[j];
                for k in 0..DEGREE {
                    let t = self.mult[i][j][k];
                    if t != 0 {
                        c[k] += &ab * q(t);
                    }
                }
            }
        }
        NFElement { c }
    }

    pub fn add(&self, a: &NFElement, b: &NFElement) -> NFElement {
        NFElement { c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &NFElement, b: &NFElement) -> NFElement {
        NFElement { c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect() }
    }

    pub fn pow(&self, a: &NFElement, mut e: u64) -> NFElement {
        let mut base = a.clone();
        let mut acc = NFElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Row `i` is the coordinate vector of `a b_i`.
    pub fn mult_matrix(&self, a: &NFElement) -> QMat {
        (0..DEGREE).map(|i| self.mul(a, &NFElement::basis(i)).c).collect()
    }

    pub fn norm(&self, a: &NFElement) -> BigRational {
        let m = self.mult_matrix(a);
        let den = m.iter().flatten().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let mi: Mat = m
            .iter()
            .map(|r| r.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        BigRational::new(intmat::det(&mi), den.pow(DEGREE as u32))
    }

    pub fn trace(&self, a: &NFElement) -> BigRational {
        let m = self.mult_matrix(a);
        (0..DEGREE).map(|i| m[i][i].clone()).sum()
    }

    pub fn inverse(&self, a: &NFElement) -> Option<NFElement> {
        let m = self.mult_matrix(a);
        let inv = inverse_q(&m)?;
        // a * x = 1 with x = sum x_i b_i: coords(a b_i) rows => x M = e_0 (coords of 1)
        let one = NFElement::one().c;
        Some(NFElement { c: intmat::qvec_mul(&one, &inv) })
    }

    pub fn galois_apply(&self, k: u32, x: &NFElement) -> NFElement {
        let mut v = x.c.clone();
        for _ in 0..(k % 6) {
            let mut w = vec![BigRational::zero(); DEGREE];
            for i in 0..DEGREE {
                if v[i].is_zero() {
                    continue;
                }
                for j in 0..DEGREE {
                    w[j] += &v[i] * q(self.sigma[i][j]);
                }
            }
            v = w;
        }
        NFElement { c: v }
    }

    pub fn to_power_basis(&self, x: &NFElement) -> Vec<BigRational> {
        intmat::qvec_mul(&x.c, &self.basis)
    }

    /// The element `sum v_j theta^j`, any length.
    pub fn from_power_basis(&self, v: &[BigRational]) -> NFElement {
        let mut w = v.to_vec();
        for k in (DEGREE..w.len()).rev() {
            let c = std::mem::replace(&mut w[k], BigRational::zero());
            for j in 0..DEGREE {
                w[k - DEGREE + j] -= &c * BigRational::from_integer(self.poly[j].clone());
            }
        }
        w.resize(DEGREE, BigRational::zero());
        NFElement { c: intmat::qvec_mul(&w, &self.basis_inv) }
    }

    /// The six embeddings in canonical order (double precision).
    pub fn embed_f64(&self, x: &NFElement) -> [Complex64; 6] {
        let v = self.to_power_basis(x);
        let vf: Vec<f64> = v.iter().map(|c| c.to_f64().unwrap()).collect();
        let mut out = [Complex64::new(0.0, 0.0); 6];
        for (e, r) in self.roots.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in vf.iter().rev() {
                acc = acc * r + c;
            }
            out[e] = acc;
        }
        out
    }

    /// Roots of the defining polynomial to `bits` bits, canonical order.
    pub fn hp_roots(&self, bits: u32) -> Result<Arc<Vec<HpComplex>>> {
        if let Some(r) = self.hp_roots.read().unwrap().get(&bits) {
            return Ok(Arc::clone(r));
        }
        let rs = self
            .roots
            .iter()
            .map(|z| refine_root(&self.poly, *z, bits))
            .collect::<Result<Vec<_>>>()?;
        let rs = Arc::new(rs);
        self.hp_roots.write().unwrap().insert(bits, Arc::clone(&rs));
        Ok(rs)
    }

    /// The six embeddings to `bits` bits of absolute precision on the
    /// power-basis evaluation.
    pub fn embed_hp(&self, x: &NFElement, bits: u32) -> Result<Vec<HpComplex>> {
        let work = bits + 32;
        let roots = self.hp_roots(work)?;
        let v = self.to_power_basis(x);
        let den = v.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = v
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        Ok(roots
            .iter()
            .map(|r| {
                let mut acc = HpComplex::zero(work);
                for c in ints.iter().rev() {
                    acc = &(&acc * r) + &HpComplex::from_int(c, work);
                }
                acc.div_int(&den).with_bits(bits)
            })
            .collect())
    }

    /// Embeddings grouped as `(phi_j, conj phi_j)` for the three slots, with
    /// `digits` certified decimal digits (recomputed at twice the precision and
    /// compared; doubled up to the retry cap).
    pub fn embed(&self, x: &NFElement, digits: u32) -> Result<[(HpComplex, HpComplex); 3]> {
        if digits < 30 {
            return Err(Error::InvalidArgument("embedding precision below 30 digits".into()));
        }
        let bits = crate::util::hp::bits_for_digits(digits);
        let mut b = bits + 16;
        for _ in 0..4 {
            let lo = self.embed_hp(x, b)?;
            let hi = self.embed_hp(x, 2 * b)?;
            let ok = lo.iter().zip(&hi).all(|(a, c)| a.close_to(&c.with_bits(b), -(bits as f64)));
            if ok {
                let v: Vec<HpComplex> = hi.iter().map(|z| z.with_bits(bits)).collect();
                return Ok([
                    (v[0].clone(), v[3].clone()),
                    (v[1].clone(), v[4].clone()),
                    (v[2].clone(), v[5].clone()),
                ]);
            }
            b *= 2;
        }
        Err(Error::Precision(format!("embedding not certified to {digits} digits")))
    }
}
