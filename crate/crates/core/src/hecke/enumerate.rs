use super::bounds::{max_char_order, maximal_modulus, ValueFieldBound};
use super::character::{branch_sqrt_f64, HeckeCharacter};
use super::infinity::{unit_phase, InfinityType};
use crate::numfield::{galois_prime, FieldData, NFElement, PrimeIdeal};
use crate::resring::{unit_group, FiniteCharacter, UnitGroupStructure};
use crate::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Streamed candidates are capped at this many raw exponent vectors.
pub const DEFAULT_CANDIDATE_BUDGET: u128 = 1 << 36;

/// One candidate: packed finite-part exponents `k_j` (with
/// `chi(g_j) = k_j / gcd(d_j, N)`), an index into the type list and the
/// class-group sign bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate {
    pub t: u16,
    pub k: u64,
    pub signs: u8,
}

/// A prime ideal prepared for fast double-precision evaluation.
#[derive(Clone, Debug)]
pub struct PrimeDatum {
    pub prime: PrimeIdeal,
    pub f: u32,
    /// Scaled discrete log: `chi(beta) = sum k_j log_j / N`.
    log: Vec<u64>,
    /// `infty_t(beta)` for every type.
    inf: Vec<Complex64>,
    exps: Vec<u32>,
}

/// The finite characters of admissible order on the maximal modulus paired
/// with every placement of an infinity type.
pub struct CandidateSpace {
    pub field: Arc<FieldData>,
    pub bound: ValueFieldBound,
    pub group: Arc<UnitGroupStructure>,
    pub types: Vec<InfinityType>,
    n: u64,
    gcds: Vec<u64>,
    bits: u32,
    unit_logs: Vec<Vec<u64>>,
    type_rhs: Vec<Option<Vec<u64>>>,
    type_twist: Vec<[usize; 6]>,
    twist_logs: Vec<Vec<Vec<u64>>>,
    class_gamma: Vec<PrimeDatum>,
    class_twist: Vec<Vec<(PrimeDatum, PrimeDatum)>>,
}

impl CandidateSpace {
    pub fn new(k: Arc<FieldData>, base: &InfinityType, bad: &[u64]) -> Result<Self> {
        let bound = max_char_order(&k);
        let modulus = maximal_modulus(&k, bad, &bound)?;
        let group = Arc::new(unit_group(Arc::clone(&k), &modulus)?);
        Self::with_group(k, base, bound, group)
    }

    pub fn with_group(k: Arc<FieldData>, base: &InfinityType, bound: ValueFieldBound, group: Arc<UnitGroupStructure>) -> Result<Self> {
        if k.class_gens.iter().any(|c| c.order != 2) || k.class_gens.len() > 8 {
            return Err(Error::InvalidArgument("only class-group generators of order 2 are supported".into()));
        }
        let n = bound.orders.iter().fold(1u64, |a, &d| a.lcm(&d));
        let gcds: Vec<u64> = group.cyc.iter().map(|&d| d.gcd(&n)).collect();
        let bits = 64 - (n.max(2) - 1).leading_zeros();
        if bits as usize * gcds.len() > 64 {
            return Err(Error::BudgetExceeded { cost: gcds.len() as u128, budget: (64 / bits) as u128 });
        }
        let types = base.placements();
        let mut space = CandidateSpace {
            field: Arc::clone(&k),
            bound,
            group,
            types,
            n,
            gcds,
            bits,
            unit_logs: Vec::new(),
            type_rhs: Vec::new(),
            type_twist: Vec::new(),
            twist_logs: Vec::new(),
            class_gamma: Vec::new(),
            class_twist: Vec::new(),
        };
        let units: Vec<NFElement> = std::iter::once(k.zeta.clone()).chain(k.units.iter().cloned()).collect();
        space.unit_logs = units.iter().map(|u| space.scaled_log(u)).collect::<Result<_>>()?;
        for t in &space.types {
            let mut rhs = Some(Vec::new());
            for u in &units {
                let ph = unit_phase(&k, t, u)?.neg();
                match (ph.numerator_over(n), rhs.as_mut()) {
                    (Some(x), Some(v)) => v.push(x),
                    _ => rhs = None,
                }
            }
            space.type_rhs.push(rhs);
        }
        for t in &space.types {
            let mut row = [0usize; 6];
            for (e, slot) in row.iter_mut().enumerate() {
                let tt = t.twist(&k.sigma_perm, e as u32);
                *slot = space
                    .types
                    .iter()
                    .position(|x| *x == tt)
                    .ok_or_else(|| Error::Internal("type placements not Galois stable".into()))?;
            }
            space.type_twist.push(row);
        }
        for e in 0..6u32 {
            let mut rows = Vec::new();
            for g in &space.group.gens {
                let y = k.galois_apply(e, &space.group.ring.to_element(g));
                rows.push(space.scaled_log(&y)?);
            }
            space.twist_logs.push(rows);
        }
        for c in &k.class_gens {
            space.class_gamma.push(space.datum_for(c.prime.clone(), &c.principalization, Vec::new())?);
        }
        for c in &k.class_gens {
            let mut per_e = Vec::new();
            for e in 0..6u32 {
                let img = galois_prime(&k, e, &c.prime)?;
                let rep = k.class_rep(&img)?;
                let at_prime = space.datum_for(img.clone(), &rep.beta, rep.exponents.clone())?;
                let gamma = k.galois_apply(e, &c.principalization);
                let at_gamma = space.datum_for(img, &gamma, Vec::new())?;
                per_e.push((at_prime, at_gamma));
            }
            space.class_twist.push(per_e);
        }
        Ok(space)
    }

    pub fn rank(&self) -> usize {
        self.gcds.len()
    }

    /// Number of raw exponent vectors to stream.
    pub fn raw_count(&self) -> u128 {
        self.gcds.iter().map(|&g| g as u128).product()
    }

    /// `(log_j(x) mod g_j) * N / g_j`, so that `N chi(x) = sum k_j L_j`.
    fn scaled_log(&self, x: &NFElement) -> Result<Vec<u64>> {
        let v = self.group.discrete_log(x)?;
        Ok(v.iter().zip(&self.gcds).map(|(&vj, &g)| (vj % g) * (self.n / g)).collect())
    }

    fn datum_for(&self, prime: PrimeIdeal, beta: &NFElement, exps: Vec<u32>) -> Result<PrimeDatum> {
        let emb = self.field.embed_f64(beta);
        Ok(PrimeDatum {
            f: prime.f,
            prime,
            log: self.scaled_log(beta)?,
            inf: self.types.iter().map(|t| t.eval_f64(&emb)).collect(),
            exps,
        })
    }

    /// Prepare a prime coprime to the modulus for evaluation.
    pub fn prime_datum(&self, pr: &PrimeIdeal) -> Result<PrimeDatum> {
        let rep = self.field.class_rep(pr)?;
        self.datum_for(pr.clone(), &rep.beta, rep.exponents.clone())
    }

    pub fn unpack(&self, k: u64) -> Vec<u64> {
        let mask = (1u64 << self.bits) - 1;
        (0..self.gcds.len()).map(|j| (k >> (self.bits * j as u32)) & mask).collect()
    }

    fn pack(&self, v: &[u64]) -> u64 {
        v.iter().enumerate().fold(0u64, |acc, (j, &x)| acc | (x << (self.bits * j as u32)))
    }

    /// `N chi(x)` mod `N` from a scaled log.
    fn chi_raw(&self, k: &[u64], log: &[u64]) -> u64 {
        k.iter().zip(log).map(|(&kj, &lj)| kj * lj).sum::<u64>() % self.n
    }

    fn root(&self, idx: u64) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * idx as f64 / self.n as f64)
    }

    fn class_values(&self, c: &Candidate, k: &[u64]) -> Vec<Complex64> {
        self.class_gamma
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let s = self.root(self.chi_raw(k, &g.log)) * g.inf[c.t as usize];
                let r = branch_sqrt_f64(s);
                if c.signs >> j & 1 == 1 {
                    -r
                } else {
                    r
                }
            })
            .collect()
    }

    fn value_with(&self, c: &Candidate, k: &[u64], cv: &[Complex64], d: &PrimeDatum) -> Complex64 {
        let mut v = self.root(self.chi_raw(k, &d.log)) * d.inf[c.t as usize];
        for (j, &e) in d.exps.iter().enumerate() {
            if e > 0 {
                v /= cv[j].powu(e);
            }
        }
        v
    }

    /// `psi(P)` in double precision.
    pub fn value_f64(&self, c: &Candidate, d: &PrimeDatum) -> Complex64 {
        let k = self.unpack(c.k);
        let cv = self.class_values(c, &k);
        self.value_with(c, &k, &cv, d)
    }

    /// Power sums `s_1..s_m` of the local factor from the prepared primes
    /// above one rational prime.
    pub fn power_sums_f64(&self, c: &Candidate, data: &[PrimeDatum], m: usize) -> Vec<Complex64> {
        let k = self.unpack(c.k);
        let cv = self.class_values(c, &k);
        let vals: Vec<(u32, Complex64)> = data.iter().map(|d| (d.f, self.value_with(c, &k, &cv, d))).collect();
        (1..=m as u32)
            .map(|mm| {
                vals.iter()
                    .filter(|(f, _)| mm % f == 0)
                    .map(|(f, v)| v.powu(mm / f) * *f as f64)
                    .sum()
            })
            .collect()
    }

    /// The candidate `psi o sigma^e`.
    pub fn twist(&self, c: &Candidate, e: u32) -> Result<Candidate> {
        let e = (e % 6) as usize;
        if e == 0 {
            return Ok(*c);
        }
        let k = self.unpack(c.k);
        let k2: Vec<u64> = self.twist_logs[e]
            .iter()
            .zip(&self.gcds)
            .map(|(log, &g)| self.chi_raw(&k, log) * g / self.n)
            .collect();
        let t2 = self.type_twist[c.t as usize][e];
        let mut out = Candidate { t: t2 as u16, k: self.pack(&k2), signs: 0 };
        if !self.class_gamma.is_empty() {
            let cv = self.class_values(c, &k);
            for j in 0..self.class_gamma.len() {
                let (at_prime, at_gamma) = &self.class_twist[j][e];
                let target = self.value_with(c, &k, &cv, at_prime);
                let s = branch_sqrt_f64(self.root(self.chi_raw(&k, &at_gamma.log)) * at_gamma.inf[c.t as usize]);
                let ratio = target / s;
                if (ratio - 1.0).norm() < 1e-6 {
                    continue;
                }
                if (ratio + 1.0).norm() < 1e-6 {
                    out.signs |= 1 << j;
                    continue;
                }
                return Err(Error::Internal("class-group sign does not transport".into()));
            }
        }
        Ok(out)
    }

    /// Smallest member of the Galois orbit of `c`.
    pub fn orbit_key(&self, c: &Candidate) -> Result<Candidate> {
        let mut best = *c;
        for e in 1..6 {
            best = best.min(self.twist(c, e)?);
        }
        Ok(best)
    }

    /// Every unit-compatible candidate, in increasing order.
    pub fn enumerate(&self, budget: u128) -> Result<Vec<Candidate>> {
        let (_, mut out) = self.stream(budget, &|c| Some(*c))?;
        out.sort();
        Ok(out)
    }

    /// Walk every unit-compatible candidate, returning their number and the
    /// values produced by `visit`.
    pub fn stream<T: Send>(
        &self,
        budget: u128,
        visit: &(dyn Fn(&Candidate) -> Option<T> + Sync),
    ) -> Result<(u128, Vec<T>)> {
        let raw = self.raw_count();
        if raw > budget {
            return Err(Error::BudgetExceeded { cost: raw, budget });
        }
        let r = self.rank();
        let nu = self.unit_logs.len();
        let contrib: Vec<Vec<u64>> = (0..r).map(|j| (0..nu).map(|u| self.unit_logs[u][j]).collect()).collect();
        let wanted: Vec<(u16, Vec<u64>)> = self
            .type_rhs
            .iter()
            .enumerate()
            .filter_map(|(t, rhs)| rhs.clone().map(|v| (t as u16, v)))
            .collect();
        if wanted.is_empty() {
            return Ok((0, Vec::new()));
        }
        let walk = Walk { space: self, contrib, wanted, sign_count: 1u16 << self.class_gamma.len(), visit };
        let split = (0..r).take_while(|&j| self.gcds[..=j].iter().product::<u64>() <= 4096).count();
        let mut prefixes: Vec<Vec<u64>> = vec![Vec::new()];
        for j in 0..split {
            prefixes = prefixes
                .into_iter()
                .flat_map(|p| {
                    (0..self.gcds[j]).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        let n = self.n;
        Ok(prefixes
            .par_iter()
            .map(|pre| {
                let mut acc = vec![0u64; nu];
                for (j, &x) in pre.iter().enumerate() {
                    for u in 0..nu {
                        acc[u] = (acc[u] + x * walk.contrib[j][u]) % n;
                    }
                }
                let mut digits = pre.clone();
                digits.resize(r, 0);
                let mut state = (0u128, Vec::new());
                walk.go(split, &mut digits, &mut acc, &mut state);
                state
            })
            .reduce(
                || (0, Vec::new()),
                |mut a, b| {
                    a.0 += b.0;
                    a.1.extend(b.1);
                    a
                },
            ))
    }

    /// Number of unit-compatible candidates and of their Galois orbits,
    /// without storing them.
    pub fn count_orbits(&self, budget: u128) -> Result<(u128, u128)> {
        let (count, firsts) = self.stream(budget, &|c| match self.orbit_key(c) {
            Ok(key) if key == *c => Some(Ok(())),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })?;
        let orbits = firsts.into_iter().collect::<Result<Vec<()>>>()?.len() as u128;
        Ok((count, orbits))
    }

    /// Group candidates into Galois orbits keyed by their smallest member.
    pub fn orbits(&self, cands: &[Candidate]) -> Result<Vec<Vec<Candidate>>> {
        let keys: Vec<Candidate> = cands.par_iter().map(|c| self.orbit_key(c)).collect::<Result<_>>()?;
        let mut map: BTreeMap<Candidate, Vec<Candidate>> = BTreeMap::new();
        for (c, key) in cands.iter().zip(keys) {
            map.entry(key).or_default().push(*c);
        }
        Ok(map.into_values().collect())
    }

    /// The exact character behind a candidate.
    pub fn character(&self, c: &Candidate) -> Result<HeckeCharacter> {
        let k = self.unpack(c.k);
        let a: Vec<u64> = k
            .iter()
            .zip(&self.group.cyc)
            .zip(&self.gcds)
            .map(|((&kj, &d), &g)| kj * (d / g))
            .collect();
        let chi = FiniteCharacter::new(Arc::clone(&self.group), a);
        let signs = (0..self.class_gamma.len()).map(|j| c.signs >> j & 1).collect();
        HeckeCharacter::new(Arc::clone(&self.field), chi, self.types[c.t as usize], signs)
    }
}

/// Candidates for one infinity type and bad-prime set, grouped into orbits.
pub struct HeckeEnumeration {
    pub space: CandidateSpace,
    pub candidates: Vec<Candidate>,
    pub orbits: Vec<Vec<Candidate>>,
}

impl HeckeEnumeration {
    pub fn orbit_characters(&self, i: usize) -> Result<Vec<HeckeCharacter>> {
        self.orbits[i].iter().map(|c| self.space.character(c)).collect()
    }
}

pub fn enumerate_hecke(k: Arc<FieldData>, t: &InfinityType, bad: &[u64]) -> Result<HeckeEnumeration> {
    let space = CandidateSpace::new(k, t, bad)?;
    let candidates = space.enumerate(DEFAULT_CANDIDATE_BUDGET)?;
    let orbits = space.orbits(&candidates)?;
    Ok(HeckeEnumeration { space, candidates, orbits })
}

struct Walk<'a, T> {
    space: &'a CandidateSpace,
    contrib: Vec<Vec<u64>>,
    wanted: Vec<(u16, Vec<u64>)>,
    sign_count: u16,
    visit: &'a (dyn Fn(&Candidate) -> Option<T> + Sync),
}

impl<T> Walk<'_, T> {
    fn go(&self, j: usize, digits: &mut Vec<u64>, acc: &mut Vec<u64>, state: &mut (u128, Vec<T>)) {
        if j == digits.len() {
            for (t, rhs) in &self.wanted {
                if rhs == acc {
                    let k = self.space.pack(digits);
                    for s in 0..self.sign_count {
                        state.0 += 1;
                        if let Some(v) = (self.visit)(&Candidate { t: *t, k, signs: s as u8 }) {
                            state.1.push(v);
                        }
                    }
                }
            }
            return;
        }
        let n = self.space.n;
        let saved = acc.clone();
        for x in 0..self.space.gcds[j] {
            digits[j] = x;
            for u in 0..acc.len() {
                acc[u] = (saved[u] + x * self.contrib[j][u]) % n;
            }
            self.go(j + 1, digits, acc, state);
        }
        digits[j] = 0;
        acc.copy_from_slice(&saved);
    }
}
