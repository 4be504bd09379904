use super::ring::{QuotientRing, Res};
use crate::numfield::{FieldData, IdealHNF, NFElement, PrimeIdeal, DEGREE};
use crate::util::intmat::{self, Mat};
use crate::util::primes::factor;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::sync::Arc;

/// Default cap on the norm of each prime-power component of a modulus.
pub const DEFAULT_NORM_BUDGET: u128 = 10_000_000_000;

/// An integral ideal given by its prime factorization.
#[derive(Clone, Debug)]
pub struct Modulus {
    pub factors: Vec<(PrimeIdeal, u32)>,
    pub norm: BigInt,
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        self.factors.len() == other.factors.len()
            && self.factors.iter().zip(&other.factors).all(|(a, b)| a.0 == b.0 && a.1 == b.1)
    }
}

impl Eq for Modulus {}

impl Modulus {
    pub fn unit() -> Self {
        Modulus { factors: Vec::new(), norm: BigInt::one() }
    }

    /// Drops zero exponents and sorts by `(p, index)`; repeated primes are an error.
    pub fn new(mut factors: Vec<(PrimeIdeal, u32)>) -> Result<Self> {
        factors.retain(|f| f.1 > 0);
        factors.sort_by_key(|(q, _)| (q.p, q.index));
        for w in factors.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidArgument("repeated prime in modulus".into()));
            }
        }
        let norm = factors
            .iter()
            .fold(BigInt::one(), |acc, (q, e)| acc * BigInt::from(q.norm()).pow(*e));
        Ok(Modulus { factors, norm })
    }

    pub fn ideal(&self, k: &FieldData) -> IdealHNF {
        self.factors
            .iter()
            .fold(IdealHNF::unit(), |acc, (q, e)| acc.mul(k, &q.ideal.pow(k, *e)))
    }

    pub fn exponent_of(&self, q: &PrimeIdeal) -> u32 {
        self.factors.iter().find(|f| &f.0 == q).map_or(0, |f| f.1)
    }

    /// Does `self` divide `other`.
    pub fn divides(&self, other: &Modulus) -> bool {
        self.factors.iter().all(|(q, e)| other.exponent_of(q) >= *e)
    }

    pub fn describe(&self) -> String {
        if self.factors.is_empty() {
            return "(1)".into();
        }
        self.factors
            .iter()
            .map(|(q, e)| format!("P{}_{}^{}", q.p, q.index, e))
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[derive(Serialize)]
struct ModulusEntry {
    p: u64,
    index: usize,
    f: u32,
    exponent: u32,
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<ModulusEntry> = self
            .factors
            .iter()
            .map(|(q, e)| ModulusEntry { p: q.p, index: q.index, f: q.f, exponent: *e })
            .collect();
        v.serialize(s)
    }
}

/// `(x_0, ..., x_{n-1}) -> x V` on the chosen rows, reduced.
fn mat_col_mod(v: &[BigInt], m: &Mat, col: usize, d: u64) -> u64 {
    let mut s = BigInt::zero();
    for (x, row) in v.iter().zip(m) {
        if !x.is_zero() {
            s += x * &row[col];
        }
    }
    s.mod_floor(&BigInt::from(d)).to_u64().unwrap()
}

fn int_inverse(m: &Mat) -> Mat {
    let inv = intmat::inverse_q(&intmat::to_rational(m)).expect("unimodular");
    inv.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect()
}

fn exp_mod(x: &BigInt, m: u128) -> u128 {
    x.mod_floor(&BigInt::from(m)).to_u128().unwrap()
}

/// Discrete logarithm of `x` to the base `g` of order `n` (factored) in `ring`.
fn pohlig_hellman(ring: &QuotientRing, g: &Res, n: u64, fac: &[(u64, u32)], x: &Res) -> Option<u64> {
    let mut residues = Vec::new();
    for &(l, k) in fac {
        let lk = l.pow(k);
        let cof = n / lk;
        let gl = ring.pow(g, cof as u128);
        let xl = ring.pow(x, cof as u128);
        // generator of the order-l subgroup
        let gamma = ring.pow(&gl, (lk / l) as u128);
        let m = (l as f64).sqrt().ceil() as u64;
        let mut baby: HashMap<Res, u64> = HashMap::with_capacity(m as usize);
        let mut cur = ring.one();
        for j in 0..m {
            baby.entry(cur).or_insert(j);
            cur = ring.mul(&cur, &gamma);
        }
        let giant = ring.pow(&gamma, (l - (m % l)) as u128 % l as u128);
        let mut digits = 0u64;
        let mut lpow = 1u64;
        for i in 0..k {
            // h = (xl * gl^{-digits})^{l^{k-1-i}}
            let inv = ring.pow(&gl, ((lk - digits % lk) % lk) as u128);
            let h = ring.pow(&ring.mul(&xl, &inv), (lk / lpow / l) as u128);
            let mut y = h;
            let mut found = None;
            for t in 0..=m {
                if let Some(&j) = baby.get(&y) {
                    found = Some((t * m + j) % l);
                    break;
                }
                y = ring.mul(&y, &giant);
            }
            let d = found?;
            digits += d * lpow;
            lpow *= l;
            let _ = i;
        }
        residues.push((digits % lk, lk));
    }
    // CRT
    let mut acc = 0u128;
    let mut modulus = 1u128;
    for (r, m) in residues {
        let (r, m) = (r as u128, m as u128);
        let inv = mod_inverse((modulus % m) as i128, m as i128);
        let t = ((r + m - acc % m) % m) * inv as u128 % m;
        acc += modulus * t;
        modulus *= m;
    }
    Some((acc % n.max(1) as u128) as u64)
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(m), m, 1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m)
}

/// One step `P^k / P^{k+1}` of the principal-unit filtration.
#[derive(Clone, Debug)]
struct Level {
    k: u32,
    /// `w -> digits`: `(w W / den)` at `positions`, reduced mod p.
    w: Mat,
    den: BigInt,
    positions: Vec<usize>,
    /// `(1 + b_j, (1 + b_j)^{-1})`.
    gens: Vec<(Res, Res)>,
}

/// `(O/P^e)^x = T x U_1` for a single prime power.
#[derive(Clone, Debug)]
pub struct PrimePowerPart {
    pub prime: PrimeIdeal,
    pub e: u32,
    pub ring: QuotientRing,
    ring_p: QuotientRing,
    tame: Res,
    tame_mod_p: Res,
    tame_order: u64,
    tame_factors: Vec<(u64, u32)>,
    wild_order: u128,
    levels: Vec<Level>,
    p: u64,
    wild_v: Mat,
    wild_cyc: Vec<u64>,
    wild_keep: Vec<usize>,
    /// Local generators: the tame generator first, then the wild ones.
    pub gens: Vec<Res>,
    pub cyc: Vec<u64>,
}

impl PrimePowerPart {
    fn new(k: &FieldData, prime: &PrimeIdeal, e: u32) -> Result<Self> {
        let ideal_pe = prime.ideal.pow(k, e);
        let ring = QuotientRing::new(k, &ideal_pe)?;
        let ring_p = QuotientRing::new(k, &prime.ideal)?;
        let n = prime.norm();
        let tame_order = n - 1;
        let tame_factors = factor(tame_order);
        // smallest representative of full order
        let mut g = None;
        for idx in 1..n as u128 {
            let x = ring_p.element_at(idx);
            if ring_p.is_zero(&x) {
                continue;
            }
            let full = ring_p.pow(&x, tame_order as u128) == ring_p.one()
                && tame_factors
                    .iter()
                    .all(|&(l, _)| ring_p.pow(&x, (tame_order / l) as u128) != ring_p.one());
            if full {
                g = Some(x);
                break;
            }
        }
        let g = g.ok_or_else(|| Error::Internal("no generator of the residue field".into()))?;
        let wild_order = (n as u128).pow(e - 1);
        let tame = ring.pow(&ring.reduce(g), wild_order);
        let tame_mod_p = ring_p.reduce(tame);
        let p = prime.p;
        let mut levels = Vec::new();
        let mut hk = prime.ideal.clone();
        for lev in 1..e {
            let hk1 = hk.mul(k, &prime.ideal);
            // H_{k+1} = M H_k with M integral of determinant N(P)
            let hk_inv = intmat::inverse_q(&intmat::to_rational(&hk.hnf)).unwrap();
            let mq = intmat::mul_q(&intmat::to_rational(&hk1.hnf), &hk_inv);
            let m: Mat = mq.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
            let (_, d, v) = intmat::snf_with_transforms(&m);
            let positions: Vec<usize> = (0..DEGREE).filter(|&i| d[i][i] == BigInt::from(p)).collect();
            debug_assert_eq!(positions.len() as u32, prime.f);
            let wq = intmat::mul_q(&hk_inv, &intmat::to_rational(&v));
            let den = wq
                .iter()
                .flatten()
                .fold(BigInt::one(), |a, x| a.lcm(x.denom()));
            let w: Mat = wq
                .iter()
                .map(|r| r.iter().map(|x| (x * num_rational::BigRational::from_integer(den.clone())).to_integer()).collect())
                .collect();
            let vinv = int_inverse(&v);
            let mut gens = Vec::new();
            for &j in &positions {
                let b = intmat::vec_mul(&vinv[j], &hk.hnf);
                let b = ring.from_element(&NFElement::from_ints(&b))?;
                let g1 = ring.add(&ring.one(), &b);
                let inv = ring.pow(&g1, wild_order - 1);
                gens.push((g1, inv));
            }
            levels.push(Level { k: lev, w, den, positions, gens });
            hk = hk1;
        }
        let mut part = PrimePowerPart {
            prime: prime.clone(),
            e,
            ring,
            ring_p,
            tame,
            tame_mod_p,
            tame_order,
            tame_factors,
            wild_order,
            levels,
            p,
            wild_v: Vec::new(),
            wild_cyc: Vec::new(),
            wild_keep: Vec::new(),
            gens: Vec::new(),
            cyc: Vec::new(),
        };
        // relations p e_i - nu(G_i^p)
        let flat: Vec<Res> = part.levels.iter().flat_map(|l| l.gens.iter().map(|g| g.0)).collect();
        let mm = flat.len();
        let mut rel = intmat::zeros(mm, mm);
        for (i, g) in flat.iter().enumerate() {
            let nu = part.nu(&part.ring.pow(g, p as u128))?;
            for j in 0..mm {
                rel[i][j] = BigInt::from(-(nu[j] as i64));
            }
            rel[i][i] += BigInt::from(p);
        }
        let (_, d, v) = intmat::snf_with_transforms(&rel);
        let vinv = int_inverse(&v);
        part.wild_cyc = (0..mm).map(|i| d[i][i].to_u64().unwrap()).collect();
        part.wild_keep = (0..mm).filter(|&i| part.wild_cyc[i] > 1).collect();
        part.gens.push(part.tame);
        part.cyc.push(tame_order);
        for &i in &part.wild_keep {
            let mut h = part.ring.one();
            for (j, g) in flat.iter().enumerate() {
                let ex = exp_mod(&vinv[i][j], part.wild_order);
                if ex != 0 {
                    h = part.ring.mul(&h, &part.ring.pow(g, ex));
                }
            }
            part.gens.push(h);
            part.cyc.push(part.wild_cyc[i]);
        }
        part.wild_v = v;
        let total: u128 = part.cyc.iter().map(|&c| c as u128).product();
        if total != tame_order as u128 * part.wild_order {
            return Err(Error::Internal("local unit group order mismatch".into()));
        }
        Ok(part)
    }

    /// Filtration digits of a principal unit.
    fn nu(&self, x: &Res) -> Result<Vec<u64>> {
        let mut u = *x;
        let mut out = Vec::new();
        let one = self.ring.one();
        for lev in &self.levels {
            let w = self.ring.sub(&u, &one);
            let wb: Vec<BigInt> = w.iter().map(|&c| BigInt::from(c)).collect();
            let c = intmat::vec_mul(&wb, &lev.w);
            for (&pos, (_, inv)) in lev.positions.iter().zip(&lev.gens) {
                let (q, r) = c[pos].div_rem(&lev.den);
                if !r.is_zero() {
                    return Err(Error::Internal(format!("principal unit not in level {}", lev.k)));
                }
                let d = q.mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
                out.push(d);
                if d != 0 {
                    u = self.ring.mul(&u, &self.ring.pow(inv, d as u128));
                }
            }
        }
        if u != one {
            return Err(Error::Internal("principal unit digits did not terminate".into()));
        }
        Ok(out)
    }

    /// Coordinates on `gens` of a residue mod `P^e`.
    pub fn dlog(&self, x: &Res) -> Result<Vec<u64>> {
        let xp = self.ring_p.reduce(*x);
        if self.ring_p.is_zero(&xp) {
            return Err(Error::NotCoprime);
        }
        let a = pohlig_hellman(&self.ring_p, &self.tame_mod_p, self.tame_order, &self.tame_factors, &xp)
            .ok_or_else(|| Error::Internal("tame discrete log failed".into()))?;
        let mut out = vec![a];
        if self.levels.is_empty() {
            return Ok(out);
        }
        let inv = self.ring.pow(&self.tame, ((self.tame_order - a) % self.tame_order.max(1)) as u128);
        let u = self.ring.mul(x, &inv);
        let nu: Vec<BigInt> = self.nu(&u)?.into_iter().map(BigInt::from).collect();
        for &i in &self.wild_keep {
            out.push(mat_col_mod(&nu, &self.wild_v, i, self.wild_cyc[i]));
        }
        Ok(out)
    }

    /// Generators of `(1 + P^lev) / (1 + P^e)`, or of the whole local group
    /// for `lev = 0`.
    pub fn level_generators(&self, lev: u32) -> Vec<Res> {
        let mut v = Vec::new();
        if lev == 0 {
            v.push(self.tame);
        }
        for l in &self.levels {
            if l.k >= lev {
                v.extend(l.gens.iter().map(|g| g.0));
            }
        }
        v
    }
}

/// The unit group `(O_K / m)^x` as a product of cyclic groups.
#[derive(Debug)]
pub struct UnitGroupStructure {
    pub field: Arc<FieldData>,
    pub modulus: Modulus,
    pub ring: QuotientRing,
    pub parts: Vec<PrimePowerPart>,
    /// CRT idempotent pairs `(a_j, b_j)`: `a_j` in `P_j^{e_j}`, `b_j` in the
    /// cofactor, `a_j + b_j = 1`.
    crt: Vec<(Res, Res)>,
    local_cyc: Vec<u64>,
    final_v: Mat,
    keep: Vec<usize>,
    pub gens: Vec<Res>,
    /// Invariant factors `d_1 | d_2 | ...`, all `> 1`.
    pub cyc: Vec<u64>,
}

pub fn unit_group(k: Arc<FieldData>, m: &Modulus) -> Result<UnitGroupStructure> {
    unit_group_with_budget(k, m, DEFAULT_NORM_BUDGET)
}

pub fn unit_group_with_budget(k: Arc<FieldData>, m: &Modulus, budget: u128) -> Result<UnitGroupStructure> {
    for (q, e) in &m.factors {
        let norm = (q.norm() as u128).checked_pow(*e).unwrap_or(u128::MAX);
        if norm > budget {
            return Err(Error::BudgetExceeded { cost: norm, budget });
        }
    }
    let ideal = m.ideal(&k);
    let ring = QuotientRing::new(&k, &ideal)?;
    let parts = m
        .factors
        .iter()
        .map(|(q, e)| PrimePowerPart::new(&k, q, *e))
        .collect::<Result<Vec<_>>>()?;
    let mut crt = Vec::new();
    for (j, (q, e)) in m.factors.iter().enumerate() {
        let ij = q.ideal.pow(&k, *e);
        let rest = m
            .factors
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != j)
            .fold(IdealHNF::unit(), |acc, (_, (q2, e2))| acc.mul(&k, &q2.ideal.pow(&k, *e2)));
        let mut stacked = ij.hnf.clone();
        stacked.extend(rest.hnf.iter().cloned());
        let (h, u) = intmat::hnf_with_transform(&stacked);
        debug_assert!(h[0][0].is_one());
        let a = intmat::vec_mul(&u[0][..DEGREE], &stacked[..DEGREE].to_vec());
        let b = intmat::vec_mul(&u[0][DEGREE..], &stacked[DEGREE..].to_vec());
        crt.push((
            ring.from_element(&NFElement::from_ints(&a))?,
            ring.from_element(&NFElement::from_ints(&b))?,
        ));
    }
    let mut g = UnitGroupStructure {
        field: Arc::clone(&k),
        modulus: m.clone(),
        ring,
        parts,
        crt,
        local_cyc: Vec::new(),
        final_v: Vec::new(),
        keep: Vec::new(),
        gens: Vec::new(),
        cyc: Vec::new(),
    };
    let mut lifted = Vec::new();
    for j in 0..g.parts.len() {
        for (gen, c) in g.parts[j].gens.clone().iter().zip(g.parts[j].cyc.clone()) {
            lifted.push(g.lift(j, gen));
            g.local_cyc.push(c);
        }
    }
    let r = g.local_cyc.len();
    let mut diag = intmat::zeros(r, r);
    for i in 0..r {
        diag[i][i] = BigInt::from(g.local_cyc[i]);
    }
    let (_, d, v) = intmat::snf_with_transforms(&diag);
    let vinv = int_inverse(&v);
    for i in 0..r {
        let di = d[i][i].to_u64().unwrap();
        if di <= 1 {
            continue;
        }
        g.keep.push(i);
        g.cyc.push(di);
        let mut h = g.ring.one();
        for j in 0..r {
            let ex = exp_mod(&vinv[i][j], g.local_cyc[j] as u128);
            if ex != 0 {
                h = g.ring.mul(&h, &g.ring.pow(&lifted[j], ex));
            }
        }
        g.gens.push(h);
    }
    g.final_v = v;
    if g.order() != g.order_formula() {
        return Err(Error::Internal("unit group order formula violated".into()));
    }
    Ok(g)
}

impl UnitGroupStructure {
    /// Element congruent to `x` mod `P_j^{e_j}` and to 1 at the other primes.
    fn lift(&self, j: usize, x: &Res) -> Res {
        if self.parts.len() == 1 {
            return self.ring.reduce(*x);
        }
        let (a, b) = &self.crt[j];
        self.ring.add(&self.ring.mul(b, &self.ring.reduce(*x)), a)
    }

    pub fn order(&self) -> u128 {
        self.cyc.iter().map(|&d| d as u128).product()
    }

    pub fn order_formula(&self) -> u128 {
        self.modulus
            .factors
            .iter()
            .map(|(q, e)| {
                let n = q.norm() as u128;
                n.pow(e - 1) * (n - 1)
            })
            .product()
    }

    pub fn rank(&self) -> usize {
        self.cyc.len()
    }

    pub fn discrete_log(&self, x: &NFElement) -> Result<Vec<u64>> {
        let mut local: Vec<BigInt> = Vec::with_capacity(self.local_cyc.len());
        for part in &self.parts {
            let r = part.ring.from_element(x)?;
            local.extend(part.dlog(&r)?.into_iter().map(BigInt::from));
        }
        Ok(self
            .keep
            .iter()
            .zip(&self.cyc)
            .map(|(&i, &d)| mat_col_mod(&local, &self.final_v, i, d))
            .collect())
    }

    pub fn discrete_log_res(&self, x: &Res) -> Result<Vec<u64>> {
        self.discrete_log(&self.ring.to_element(x))
    }

    /// `prod g_j^{v_j}` as a residue.
    pub fn exp(&self, v: &[u64]) -> Res {
        let mut acc = self.ring.one();
        for (g, &e) in self.gens.iter().zip(v) {
            acc = self.ring.mul(&acc, &self.ring.pow(g, e as u128));
        }
        acc
    }

    /// Global lifts of generators of the kernel of reduction from `P_j^{e_j}`
    /// to `P_j^{lev}`.
    pub fn kernel_generators(&self, j: usize, lev: u32) -> Vec<Res> {
        self.parts[j]
            .level_generators(lev)
            .iter()
            .map(|x| self.lift(j, x))
            .collect()
    }
}
