use super::field::{FFContext, FFElement};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Polynomial over `F_q`, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqPoly {
    pub ctx: Arc<FFContext>,
    pub c: Vec<FFElement>,
}

impl FqPoly {
    pub fn new(ctx: &Arc<FFContext>, mut c: Vec<FFElement>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        FqPoly { ctx: Arc::clone(ctx), c }
    }

    pub fn from_ints(ctx: &Arc<FFContext>, c: &[i64]) -> Self {
        Self::new(ctx, c.iter().map(|&x| ctx.from_int(x)).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn one(&self) -> Self {
        Self::new(&self.ctx, vec![self.ctx.one()])
    }

    fn x(&self) -> Self {
        Self::new(&self.ctx, vec![self.ctx.zero(), self.ctx.one()])
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(l) => {
                let li = l.inv().unwrap();
                Self::new(&self.ctx, self.c.iter().map(|x| x.mul(&li)).collect())
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = self.ctx.zero();
        Self::new(
            &self.ctx,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z).sub(o.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::new(&self.ctx, Vec::new());
        }
        let mut out = vec![self.ctx.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.ctx, out)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let li = d.c[dd].inv().unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::new(&self.ctx, Vec::new()), self.clone());
        }
        let mut q = vec![self.ctx.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].mul(&li);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k - dd + j] = r[k - dd + j].sub(&c.mul(dj));
            }
            q[k - dd] = c;
        }
        (Self::new(&self.ctx, q), Self::new(&self.ctx, r))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.c.is_empty() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.divrem(m).1;
        let mut acc = self.one().divrem(m).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divrem(m).1;
            }
            base = base.mul(&base).divrem(m).1;
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &FFElement) -> FFElement {
        let mut acc = self.ctx.zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
}

fn split(f: &FqPoly, rng: &mut ChaCha8Rng, out: &mut Vec<FFElement>) {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == 1 {
        let m = f.monic();
        out.push(m.c[0].neg());
        return;
    }
    let ctx = &f.ctx;
    let e = (ctx.q() as u128 - 1) / 2;
    loop {
        let a: Vec<u64> = (0..ctx.m).map(|_| rng.gen_range(0..ctx.p)).collect();
        let shift = FqPoly::new(ctx, vec![ctx.elem(&a), ctx.one()]);
        let b = shift.powmod(e, f).sub(&f.one());
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            split(&g, rng, out);
            split(&f.divrem(&g).0, rng, out);
            return;
        }
    }
}

/// Distinct roots of `f` in `F_q` (odd characteristic), sorted by index.
pub fn roots_in(f: &FqPoly) -> Result<Vec<FFElement>> {
    let ctx = &f.ctx;
    if ctx.p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if f.c.is_empty() {
        return Err(Error::ZeroModP(ctx.p));
    }
    let f = f.monic();
    let xq = f.x().powmod(ctx.q() as u128, &f);
    let g = xq.sub(&f.x()).gcd(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.p.wrapping_mul(0x9e37_79b9) ^ ctx.m as u64);
    let mut out = Vec::new();
    split(&g, &mut rng, &mut out);
    out.sort_by_key(|x| x.index());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffarith::ff_context;

    #[test]
    fn cubic_roots_in_extension() {
        // x^3 - 2 has one root in F_7? no: cubes mod 7 are {0,1,6}; it splits in F_{7^3}
        let k1 = ff_context(7, 1).unwrap();
        let f1 = FqPoly::from_ints(&k1, &[-2, 0, 0, 1]);
        assert!(roots_in(&f1).unwrap().is_empty());
        let k3 = ff_context(7, 3).unwrap();
        let f3 = FqPoly::from_ints(&k3, &[-2, 0, 0, 1]);
        let r = roots_in(&f3).unwrap();
        assert_eq!(r.len(), 3);
        for x in &r {
            assert!(f3.eval(x).is_zero());
        }
    }
}
