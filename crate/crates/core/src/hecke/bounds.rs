use crate::numfield::{FieldData, PrimeIdeal};
use crate::resring::{unit_group_with_budget, Modulus};
use crate::{Error, Result};
use num_integer::Integer;
use serde::Serialize;
use std::sync::Arc;

/// The value field assumed for the finite parts and the character orders it
/// allows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueFieldBound {
    pub value_field: String,
    pub orders: Vec<u64>,
}

impl ValueFieldBound {
    pub fn max_order(&self) -> u64 {
        self.orders.iter().copied().max().unwrap_or(1)
    }
}

/// Admissible orders with values in `K` itself: the divisors of `w_K`.
pub fn max_char_order(k: &FieldData) -> ValueFieldBound {
    let w = k.torsion_order as u64;
    ValueFieldBound {
        value_field: k.label.clone(),
        orders: (1..=w).filter(|d| w % d == 0).collect(),
    }
}

const MAX_EXPONENT: u32 = 40;
/// Norm cap for the probe rings built while bounding exponents.
const PROBE_BUDGET: u128 = 1_000_000_000_000_000;

/// Does every character of order dividing `n` on `(O/P^{e+1})^x` vanish on
/// the level-`e` kernel?
fn level_trivial(k: &Arc<FieldData>, pr: &PrimeIdeal, e: u32, n: u64) -> Result<bool> {
    let m = Modulus::new(vec![(pr.clone(), e + 1)])?;
    let g = unit_group_with_budget(Arc::clone(k), &m, PROBE_BUDGET)?;
    for x in g.kernel_generators(0, e) {
        let v = g.discrete_log_res(&x)?;
        if v.iter().zip(&g.cyc).any(|(&vj, &d)| vj % d.gcd(&n) != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `e*` past which characters of admissible order stop growing in
/// conductor at `P`, checked for two further exponents.
pub fn bound_exponents(k: &Arc<FieldData>, pr: &PrimeIdeal, bound: &ValueFieldBound) -> Result<u32> {
    let n = bound.orders.iter().fold(1u64, |acc, &d| acc.lcm(&d));
    if n == 1 {
        return Ok(0);
    }
    let mut e = 0;
    while e <= MAX_EXPONENT {
        if level_trivial(k, pr, e, n)? && level_trivial(k, pr, e + 1, n)? && level_trivial(k, pr, e + 2, n)? {
            return Ok(e);
        }
        e += 1;
    }
    Err(Error::BudgetExceeded { cost: MAX_EXPONENT as u128, budget: MAX_EXPONENT as u128 })
}

/// `prod P^{e_max(P)}` over the primes above `bad`.
pub fn maximal_modulus(k: &Arc<FieldData>, bad: &[u64], bound: &ValueFieldBound) -> Result<Modulus> {
    let mut factors = Vec::new();
    for &p in bad {
        for pr in crate::numfield::split_prime(k, p)? {
            let e = bound_exponents(k, &pr, bound)?;
            if e > 0 {
                factors.push((pr, e));
            }
        }
    }
    Modulus::new(factors)
}
