//! Point counts on the double planes `w^2 = x y z g` and the genus-3 curves
//! `y^2 = f(x)`, Frobenius traces, Weil polynomials and exterior squares.

mod badprimes;
mod euler;
mod kernel;
mod spec;

pub use badprimes::{
    bad_prime_invariant, candidate_primes, is_good_surface_prime, surface_bad_primes,
    surface_bad_primes_with_bound, DEFAULT_TRIAL_BOUND,
};
pub use euler::{
    algebraic_part_factor, divide, exterior_square, weil_from_traces, weil_from_traces_any_sign, Channel,
    EulerFactor, TraceData,
};

pub use kernel::{CountingKernel, KernelRegistry, NaiveKernel, SurfaceSums, ZechKernel};
pub use spec::{CurveSpec, Monomial, SurfaceSpec, Varieties, DEFAULT_VARIETIES};

use crate::ffarith::ff_context;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Limits on point-counting work. The default allows `m <= 2` for `p <= 500`
/// and `m = 3` for `p <= 25`; an explicit cap bounds the number of evaluated
/// points instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WorkBudget {
    Default,
    MaxPoints(u128),
}

impl WorkBudget {
    fn limit(self, m: usize) -> u128 {
        match self {
            WorkBudget::Default if m <= 2 => 500u128.pow(2 * m as u32),
            WorkBudget::Default => 25u128.pow(2 * m as u32),
            WorkBudget::MaxPoints(c) => c,
        }
    }

    pub fn check(self, cost: u128, m: usize) -> Result<()> {
        let budget = self.limit(m);
        if cost > budget {
            return Err(Error::BudgetExceeded { cost, budget });
        }
        Ok(())
    }
}

/// One surface count record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCount {
    pub p: u64,
    pub m: u32,
    /// Transcendental trace.
    pub s: i64,
    pub nodes: u64,
    /// Points on the resolved surface.
    pub n: i128,
}

impl SurfaceCount {
    pub fn q(&self) -> i128 {
        (self.p as i128).pow(self.m)
    }

    /// Neron-Severi trace `q (1 + nodes)`.
    pub fn ns_trace(&self) -> i128 {
        self.q() * (1 + self.nodes as i128)
    }
}

/// One curve count record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCount {
    pub p: u64,
    pub m: u32,
    pub n: i128,
    pub t: i64,
}

fn check_surface_prime(spec: &SurfaceSpec, p: u64) -> Result<()> {
    if !crate::util::primes::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let bad = match &spec.bad_primes {
        Some(b) => b.contains(&p),
        None => p == 2 || !is_good_surface_prime(spec, p)?,
    };
    if bad {
        return Err(Error::BadReduction(p));
    }
    Ok(())
}

pub fn count_surface_with(
    kernel: &dyn CountingKernel,
    spec: &SurfaceSpec,
    p: u64,
    m: u32,
    budget: WorkBudget,
) -> Result<SurfaceCount> {
    if !(1..=3).contains(&m) {
        return Err(Error::DegreeOutOfRange(m as usize));
    }
    check_surface_prime(spec, p)?;
    let q = (p as u128).pow(m);
    budget.check(q * q, m as usize)?;
    let ctx = ff_context(p, m as usize)?;
    let sums = kernel.surface(spec, &ctx)?;
    let qi = q as i128;
    let n = qi * qi + qi + 1 + sums.s as i128 + qi * sums.nodes as i128;
    Ok(SurfaceCount { p, m, s: sums.s, nodes: sums.nodes, n })
}

pub fn count_surface(spec: &SurfaceSpec, p: u64, m: u32, budget: WorkBudget) -> Result<SurfaceCount> {
    count_surface_with(&ZechKernel, spec, p, m, budget)
}

pub fn count_curve_with(kernel: &dyn CountingKernel, spec: &CurveSpec, p: u64, m: u32) -> Result<CurveCount> {
    if !(1..=3).contains(&m) {
        return Err(Error::DegreeOutOfRange(m as usize));
    }
    if !crate::util::primes::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if spec.bad_primes().contains(&p) {
        return Err(Error::BadReduction(p));
    }
    let ctx = ff_context(p, m as usize)?;
    let chi_sum = kernel.curve(spec, &ctx)?;
    let q = (p as i128).pow(m);
    let n = 1 + q + chi_sum as i128;
    let t = (q + 1 - n) as i64;
    Ok(CurveCount { p, m, n, t })
}

pub fn count_curve(spec: &CurveSpec, p: u64, m: u32) -> Result<CurveCount> {
    count_curve_with(&ZechKernel, spec, p, m)
}

/// Traces `t_1..t_{max_m}` of a surface's transcendental part.
pub fn surface_traces(spec: &SurfaceSpec, p: u64, max_m: u32, budget: WorkBudget) -> Result<TraceData> {
    let traces = (1..=max_m)
        .map(|m| count_surface(spec, p, m, budget).map(|c| (m, c.s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TraceData { p, traces, channel: Channel::TranscendentalK3 })
}

pub fn curve_traces(spec: &CurveSpec, p: u64, max_m: u32) -> Result<TraceData> {
    let traces = (1..=max_m)
        .map(|m| count_curve(spec, p, m).map(|c| (m, c.t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TraceData { p, traces, channel: Channel::CurveH1 })
}

/// `L_p(H^1)` of a curve from `t_1, t_2, t_3`.
pub fn curve_euler_factor(spec: &CurveSpec, p: u64) -> Result<EulerFactor> {
    weil_from_traces(&curve_traces(spec, p, 3)?, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let v = Varieties::load_default();
        assert_eq!(count_surface(v.surface(1).unwrap(), 17, 1, WorkBudget::Default).unwrap().s, 6);
        assert_eq!(count_surface(v.surface(2).unwrap(), 13, 1, WorkBudget::Default).unwrap().s, 2);
        let c1 = count_curve(v.curve(1).unwrap(), 17, 1).unwrap();
        assert_eq!((c1.n, c1.t), (12, 6));
        assert_eq!(count_curve(v.curve(2).unwrap(), 13, 1).unwrap().t, -4);
        for (i, want) in [(1u32, vec![2u64, 3]), (2, vec![2, 7]), (3, vec![2, 7, 11, 19])] {
            assert_eq!(surface_bad_primes(v.surface(i).unwrap()).unwrap(), want);
        }
    }
}
