use super::targets::Traces;
use crate::counting::{divide, EulerFactor};
use crate::hecke::{Candidate, CandidateSpace, HeckeCharacter, PrimeDatum};
use crate::numfield::split_prime;
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::sync::atomic::{AtomicU64, Ordering};

/// What a candidate must satisfy at one prime.
#[derive(Clone, Debug)]
pub enum PrimeCheck {
    /// Local power sums equal these traces.
    Traces(Traces),
    /// The local factor divides this polynomial.
    Divides(EulerFactor),
}

impl PrimeCheck {
    fn describe(&self) -> Vec<String> {
        match self {
            PrimeCheck::Traces(t) => t.iter().map(|(_, x)| x.to_string()).collect(),
            PrimeCheck::Divides(f) => f.coeffs_string(),
        }
    }
}

/// One row of the comparison log.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PrimeRecord {
    pub p: u64,
    /// Counted traces `t_1, t_2, ...` (or the dividend's coefficients).
    pub counted: Vec<String>,
    /// The same data computed from the surviving character.
    pub character: Vec<String>,
    pub verdict: String,
    /// Candidates left after this prime in the numerical pass.
    pub survivors: u64,
}

pub struct Elimination {
    pub candidates_before: u64,
    pub survivors_numeric: u64,
    pub orbits_numeric: usize,
    /// Representatives of orbits that also pass the exact check, with orbit
    /// sizes.
    pub certified: Vec<(HeckeCharacter, usize)>,
    /// Orbit representatives rejected by the exact check and the prime.
    pub rejected: Vec<(String, u64)>,
    pub log: Vec<PrimeRecord>,
}

fn local_factor_f64(vals: &[(u32, Complex64)]) -> Vec<Complex64> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &(f, v) in vals {
        let f = f as usize;
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + f];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + f] -= c * v;
        }
        poly = next;
    }
    poly
}

/// Does `l` divide `a` as power series with vanishing remainder, to
/// relative accuracy `1e-8`?
fn divides_f64(a: &[f64], l: &[Complex64]) -> bool {
    if l.len() > a.len() {
        return false;
    }
    let qn = a.len() - l.len() + 1;
    let mut q = vec![Complex64::new(0.0, 0.0); qn];
    for k in 0..a.len() {
        let mut acc = Complex64::new(a[k], 0.0);
        let mut scale = a[k].abs();
        for j in 1..l.len().min(k + 1) {
            if k - j < qn {
                acc -= l[j] * q[k - j];
                scale += (l[j] * q[k - j]).norm();
            }
        }
        if k < qn {
            q[k] = acc;
        } else if acc.norm() > 1e-8 * (scale + 1.0) {
            return false;
        }
    }
    true
}

fn numeric_pass(space: &CandidateSpace, c: &Candidate, data: &[PrimeDatum], check: &PrimeCheck) -> bool {
    match check {
        PrimeCheck::Traces(t) => {
            let max_m = t.iter().map(|(m, _)| *m).max().unwrap_or(0) as usize;
            let sums = space.power_sums_f64(c, data, max_m);
            t.iter().all(|(m, x)| (sums[*m as usize - 1] - x.to_f64().unwrap_or(f64::MAX)).norm() <= 0.5)
        }
        PrimeCheck::Divides(f) => {
            let vals: Vec<(u32, Complex64)> = data.iter().map(|d| (d.f, space.value_f64(c, d))).collect();
            let a: Vec<f64> = f.coeffs.iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect();
            divides_f64(&a, &local_factor_f64(&vals))
        }
    }
}

/// Exact comparison; returns the character-side data and whether it agrees.
fn exact_pass(psi: &HeckeCharacter, p: u64, check: &PrimeCheck) -> Result<(Vec<String>, bool)> {
    let ef = match psi.euler_factor_q(p) {
        Ok(ef) => ef,
        Err(Error::NonIntegral(_)) => return Ok((vec!["non-integral".into()], false)),
        Err(e) => return Err(e),
    };
    Ok(match check {
        PrimeCheck::Traces(t) => {
            let max_m = t.iter().map(|(m, _)| *m).max().unwrap_or(0) as usize;
            let sums = ef.power_sums(max_m);
            let ok = t.iter().all(|(m, x)| &sums[*m as usize - 1] == x);
            let shown: Vec<String> = t.iter().map(|(m, _)| sums[*m as usize - 1].to_string()).collect();
            (shown, ok)
        }
        PrimeCheck::Divides(f) => match divide(f, &ef) {
            Ok(_) => (ef.coeffs_string(), true),
            Err(Error::DivisionRemainder(_)) => (ef.coeffs_string(), false),
            Err(e) => return Err(e),
        },
    })
}

/// Discards candidates prime by prime (in double precision, while
/// streaming), groups the survivors into orbits and certifies each orbit
/// exactly at every prime.
pub fn eliminate(space: &CandidateSpace, checks: &[(u64, PrimeCheck)], budget: u128) -> Result<Elimination> {
    let mut data = Vec::with_capacity(checks.len());
    for (p, _) in checks {
        let primes = split_prime(&space.field, *p)?;
        data.push(primes.iter().map(|pr| space.prime_datum(pr)).collect::<Result<Vec<_>>>()?);
    }
    let kills: Vec<AtomicU64> = checks.iter().map(|_| AtomicU64::new(0)).collect();
    let (count, survivors) = space.stream(budget, &|c| {
        for (idx, (_, check)) in checks.iter().enumerate() {
            if !numeric_pass(space, c, &data[idx], check) {
                kills[idx].fetch_add(1, Ordering::Relaxed);
                return None;
            }
        }
        Some(*c)
    })?;
    let mut survivors = survivors;
    survivors.sort();
    let orbits = space.orbits(&survivors)?;
    let mut certified = Vec::new();
    let mut rejected = Vec::new();
    let mut shown: Option<Vec<Vec<String>>> = None;
    for orbit in &orbits {
        let psi = space.character(&orbit[0])?;
        let mut rows = Vec::new();
        let mut bad = None;
        for (p, check) in checks {
            let (row, ok) = exact_pass(&psi, *p, check)?;
            rows.push(row);
            if !ok {
                bad = Some(*p);
                break;
            }
        }
        match bad {
            Some(p) => {
                let r = psi.record();
                rejected.push((format!("{} chi=({})", r.infinity_type, join(&r.exponents)), p));
            }
            None => {
                if shown.is_none() {
                    shown = Some(rows);
                }
                certified.push((psi, orbit.len()));
            }
        }
    }
    let unique = certified.len() == 1;
    let mut left = count as u64;
    let mut log = Vec::new();
    for (idx, (p, check)) in checks.iter().enumerate() {
        left -= kills[idx].load(Ordering::Relaxed);
        let character = match (&shown, unique) {
            (Some(rows), true) => rows[idx].clone(),
            _ => Vec::new(),
        };
        let verdict = if !unique {
            "open".to_string()
        } else if character == check.describe() || matches!(check, PrimeCheck::Divides(_)) {
            "match".to_string()
        } else {
            "mismatch".to_string()
        };
        log.push(PrimeRecord { p: *p, counted: check.describe(), character, verdict, survivors: left });
    }
    Ok(Elimination {
        candidates_before: count as u64,
        survivors_numeric: survivors.len() as u64,
        orbits_numeric: orbits.len(),
        certified,
        rejected,
        log,
    })
}

impl Elimination {
    /// Tests the certified orbits exactly at one more prime.
    pub fn extend(&mut self, p: u64, check: &PrimeCheck) -> Result<()> {
        let mut kept = Vec::new();
        for (psi, n) in std::mem::take(&mut self.certified) {
            if exact_pass(&psi, p, check)?.1 {
                kept.push((psi, n));
            } else {
                let r = psi.record();
                self.rejected.push((format!("{} chi=({})", r.infinity_type, join(&r.exponents)), p));
            }
        }
        self.certified = kept;
        let survivors = self.certified.iter().map(|(_, n)| *n as u64).sum();
        self.log.push(PrimeRecord { p, counted: check.describe(), character: Vec::new(), verdict: "open".into(), survivors });
        Ok(())
    }

    /// Fills in the character side of the log once one orbit is left.
    pub fn settle(&mut self, checks: &[(u64, PrimeCheck)]) -> Result<()> {
        if self.certified.len() != 1 || self.log.iter().all(|r| r.verdict != "open") {
            return Ok(());
        }
        let psi = self.certified[0].0.clone();
        for (rec, (p, check)) in self.log.iter_mut().zip(checks) {
            let (row, ok) = exact_pass(&psi, *p, check)?;
            rec.verdict = if ok { "match" } else { "mismatch" }.into();
            rec.character = row;
        }
        Ok(())
    }
}

/// Power sums of a factor as `(m, s_m)` pairs.
pub fn traces_of(f: &EulerFactor, n: usize) -> Traces {
    f.power_sums(n).into_iter().enumerate().map(|(m, s)| (m as u32 + 1, s)).collect()
}

fn join(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
