use super::config::Context;
use crate::counting::{
    algebraic_part_factor, count_curve, count_surface, curve_euler_factor, divide, exterior_square, surface_bad_primes,
    EulerFactor,
};
use crate::hecke::{HeckeCharacter, InfinityType};
use crate::numfield::cubic_subfield_split;
use crate::util::primes::primes_up_to;
use crate::{Error, Result};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Exact traces `(m, t_m)` at one prime.
pub type Traces = Vec<(u32, BigInt)>;

/// A source of Frobenius traces that a Hecke character is matched against.
pub trait TraceTarget: Send + Sync {
    /// Short label such as `X1` or `A4`.
    fn name(&self) -> String;
    fn case(&self) -> u32;
    fn infinity(&self) -> InfinityType;
    /// Primes whose factors bound the conductor search.
    fn bad_primes(&self, ctx: &Context) -> Result<Vec<u64>>;
    /// Comparison primes in increasing order.
    fn comparison_primes(&self, ctx: &Context) -> Result<Vec<u64>>;
    fn traces(&self, ctx: &Context, p: u64) -> Result<Traces>;
    /// Further primes, tried in order only while several orbits survive the
    /// comparison primes.
    fn extension_primes(&self, _ctx: &Context) -> Result<Vec<u64>> {
        Ok(Vec::new())
    }
    fn extension_traces(&self, ctx: &Context, p: u64) -> Result<Traces> {
        self.traces(ctx, p)
    }
}

fn good_primes(bound: u64, bad: &[u64]) -> Vec<u64> {
    primes_up_to(bound).into_iter().filter(|p| !bad.contains(p)).collect()
}

pub struct SurfaceTarget {
    pub case: u32,
}

impl TraceTarget for SurfaceTarget {
    fn name(&self) -> String {
        format!("X{}", self.case)
    }

    fn case(&self) -> u32 {
        self.case
    }

    fn infinity(&self) -> InfinityType {
        InfinityType::psi_x()
    }

    fn bad_primes(&self, ctx: &Context) -> Result<Vec<u64>> {
        surface_bad_primes(ctx.varieties.surface(self.case)?)
    }

    fn comparison_primes(&self, ctx: &Context) -> Result<Vec<u64>> {
        Ok(good_primes(ctx.config.surface_bound, &self.bad_primes(ctx)?))
    }

    fn extension_primes(&self, ctx: &Context) -> Result<Vec<u64>> {
        let bound = ctx.config.surface_bound;
        Ok(good_primes(ctx.config.extension_bound, &self.bad_primes(ctx)?).into_iter().filter(|&p| p > bound).collect())
    }

    fn extension_traces(&self, ctx: &Context, p: u64) -> Result<Traces> {
        let spec = ctx.varieties.surface(self.case)?;
        Ok(vec![(1, BigInt::from(count_surface(spec, p, 1, ctx.config.budget)?.s))])
    }

    fn traces(&self, ctx: &Context, p: u64) -> Result<Traces> {
        let spec = ctx.varieties.surface(self.case)?;
        let max_m = if p <= ctx.config.surface_cube_bound { 3 } else { 2 };
        (1..=max_m)
            .map(|m| count_surface(spec, p, m, ctx.config.budget).map(|c| (m, BigInt::from(c.s))))
            .collect()
    }
}

pub struct CurveTarget {
    pub case: u32,
}

impl TraceTarget for CurveTarget {
    fn name(&self) -> String {
        format!("A{}", self.case)
    }

    fn case(&self) -> u32 {
        self.case
    }

    fn infinity(&self) -> InfinityType {
        InfinityType::psi_a()
    }

    fn bad_primes(&self, ctx: &Context) -> Result<Vec<u64>> {
        Ok(ctx.varieties.curve(self.case)?.bad_primes())
    }

    fn comparison_primes(&self, ctx: &Context) -> Result<Vec<u64>> {
        Ok(good_primes(ctx.config.curve_bound, &self.bad_primes(ctx)?))
    }

    fn extension_primes(&self, ctx: &Context) -> Result<Vec<u64>> {
        let bound = ctx.config.curve_bound;
        Ok(good_primes(ctx.config.extension_bound, &self.bad_primes(ctx)?).into_iter().filter(|&p| p > bound).collect())
    }

    fn traces(&self, ctx: &Context, p: u64) -> Result<Traces> {
        let spec = ctx.varieties.curve(self.case)?;
        let max_m = if p <= ctx.config.curve_cube_bound { 3 } else { 2 };
        (1..=max_m)
            .map(|m| count_curve(spec, p, m).map(|c| (m, BigInt::from(c.t))))
            .collect()
    }
}

/// `wedge^2 L_p(H^1) / L_p(algebraic part)`, degree 12 at good primes.
pub fn wedge_quotient(ctx: &Context, i: u32, p: u64) -> Result<EulerFactor> {
    let h1 = curve_euler_factor(ctx.varieties.curve(i)?, p)?;
    let k = ctx.field(i)?;
    let alg = algebraic_part_factor(&cubic_subfield_split(&k, p)?, p)?;
    divide(&exterior_square(&h1), &alg)
}

/// Traces of `wedge^2 L_p(H^1) / (L_p(algebraic part) L_p(slot))`, where
/// the slot character is fixed beforehand.
pub struct QuotientTarget {
    pub case: u32,
    pub slot: HeckeCharacter,
    pub bad: Vec<u64>,
}

impl QuotientTarget {
    /// The degree-6 quotient at `p`.
    pub fn quotient(&self, ctx: &Context, p: u64) -> Result<EulerFactor> {
        let q12 = wedge_quotient(ctx, self.case, p)?;
        divide(&q12, &self.slot.euler_factor_q(p)?)
    }
}

impl TraceTarget for QuotientTarget {
    fn name(&self) -> String {
        format!("psi'{}", self.case)
    }

    fn case(&self) -> u32 {
        self.case
    }

    fn infinity(&self) -> InfinityType {
        InfinityType::psi_prime()
    }

    fn bad_primes(&self, _ctx: &Context) -> Result<Vec<u64>> {
        Ok(self.bad.clone())
    }

    fn comparison_primes(&self, ctx: &Context) -> Result<Vec<u64>> {
        Ok(good_primes(ctx.config.curve_cube_bound, &self.bad))
    }

    fn extension_primes(&self, ctx: &Context) -> Result<Vec<u64>> {
        let bound = ctx.config.curve_cube_bound;
        Ok(good_primes(ctx.config.extension_bound, &self.bad).into_iter().filter(|&p| p > bound).collect())
    }

    fn traces(&self, ctx: &Context, p: u64) -> Result<Traces> {
        let q = self.quotient(ctx, p)?;
        Ok(q.power_sums(6).into_iter().enumerate().map(|(m, s)| (m as u32 + 1, s)).collect())
    }
}

/// Builds a target for case `i`.
pub type TargetBuilder = fn(u32) -> Box<dyn TraceTarget>;

/// Named target kinds available from point counts alone.
pub struct TargetRegistry {
    builders: BTreeMap<&'static str, TargetBuilder>,
}

impl Default for TargetRegistry {
    fn default() -> Self {
        let mut builders: BTreeMap<&'static str, TargetBuilder> = BTreeMap::new();
        builders.insert("surface", |i| Box::new(SurfaceTarget { case: i }));
        builders.insert("curve", |i| Box::new(CurveTarget { case: i }));
        TargetRegistry { builders }
    }
}

impl TargetRegistry {
    pub fn register(&mut self, name: &'static str, b: TargetBuilder) {
        self.builders.insert(name, b);
    }

    pub fn build(&self, name: &str, i: u32) -> Result<Box<dyn TraceTarget>> {
        let b = self
            .builders
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown target kind {name}")))?;
        Ok(b(i))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.builders.keys().copied().collect()
    }
}
