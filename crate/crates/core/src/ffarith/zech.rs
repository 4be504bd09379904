use super::field::{FFContext, FFElement};
use crate::util::primes::factor;
use crate::{Error, Result};
use std::sync::Arc;

/// Discrete-log representation of `F_q`: nonzero elements are stored as
/// exponents of a fixed primitive element, zero as [`ZechTable::ZERO`].
/// Addition goes through Zech logarithms `Z(n) = log(1 + g^n)`.
#[derive(Debug)]
pub struct ZechTable {
    pub ctx: Arc<FFContext>,
    pub order: u32,
    pub log: Vec<u32>,
    pub exp: Vec<u32>,
    pub zech: Vec<u32>,
    pub generator: FFElement,
}

impl ZechTable {
    pub const ZERO: u32 = u32::MAX;

    pub fn new(ctx: &Arc<FFContext>) -> Result<Self> {
        let q = ctx.q();
        if q > 1 << 26 {
            return Err(Error::InvalidArgument(format!("field of size {q} too large for log tables")));
        }
        let n = q - 1;
        let ls: Vec<u64> = factor(n).into_iter().map(|(l, _)| l).collect();
        let one = ctx.one();
        let generator = (1..q)
            .map(|i| ctx.from_index(i))
            .find(|g| ls.iter().all(|&l| g.pow((n / l) as u128) != one))
            .ok_or_else(|| Error::Internal("no primitive element".into()))?;
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![Self::ZERO; q as usize];
        let mut x = ctx.one();
        for k in 0..n as usize {
            let idx = x.index() as u32;
            exp[k] = idx;
            log[idx as usize] = k as u32;
            x = x.mul(&generator);
        }
        let p = ctx.p;
        let mut zech = vec![Self::ZERO; n as usize];
        for k in 0..n as usize {
            // 1 + g^k: bump the constant digit
            let idx = exp[k] as u64;
            let c0 = idx % p;
            let bumped = idx - c0 + (c0 + 1) % p;
            zech[k] = log[bumped as usize];
        }
        Ok(ZechTable { ctx: Arc::clone(ctx), order: n as u32, log, exp, zech, generator })
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == Self::ZERO || b == Self::ZERO {
            return Self::ZERO;
        }
        let s = a as u64 + b as u64;
        (s % self.order as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == Self::ZERO {
            return b;
        }
        if b == Self::ZERO {
            return a;
        }
        let d = if b >= a { b - a } else { b + self.order - a };
        let z = self.zech[d as usize];
        if z == Self::ZERO {
            return Self::ZERO;
        }
        let s = a + z;
        if s >= self.order {
            s - self.order
        } else {
            s
        }
    }

    #[inline]
    pub fn pow(&self, a: u32, e: u32) -> u32 {
        if e == 0 {
            return 0;
        }
        if a == Self::ZERO {
            return Self::ZERO;
        }
        ((a as u64 * e as u64) % self.order as u64) as u32
    }

    /// Log of an integer constant.
    pub fn log_of_int(&self, n: i64) -> u32 {
        let p = self.ctx.p as i64;
        self.log[n.rem_euclid(p) as usize]
    }

    /// Quadratic character of a logged element (the generator is a non-square).
    #[inline]
    pub fn chi(&self, a: u32) -> i32 {
        if a == Self::ZERO {
            0
        } else {
            1 - 2 * (a & 1) as i32
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffarith::ff_context;

    #[test]
    fn zech_add_matches_field() {
        for (p, m) in [(3u64, 2usize), (7, 1), (5, 3)] {
            let k = ff_context(p, m).unwrap();
            let z = ZechTable::new(&k).unwrap();
            for a in k.elements() {
                for b in k.elements().step_by(3) {
                    let la = z.log[a.index() as usize];
                    let lb = z.log[b.index() as usize];
                    let s = z.add(la, lb);
                    let want = z.log[a.add(&b).index() as usize];
                    assert_eq!(s, want);
                    assert_eq!(z.chi(la) as i8, a.quadratic_character().unwrap());
                }
            }
        }
    }
}
