use super::spec::{CurveSpec, Monomial, SurfaceSpec};
use crate::ffarith::{FFContext, FFElement, ZechTable};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Raw output of a surface kernel: the character sum and the rational node count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceSums {
    pub s: i64,
    pub nodes: u64,
}

/// A point-counting strategy over a fixed finite field.
pub trait CountingKernel: Send + Sync {
    fn name(&self) -> &'static str;

    /// `S = sum over P^2(F_q) of chi(x y z g)` and the number of rational
    /// singular points of `x y z g = 0`.
    fn surface(&self, spec: &SurfaceSpec, ctx: &Arc<FFContext>) -> Result<SurfaceSums>;

    /// `sum over x in F_q of chi(f(x))`.
    fn curve(&self, spec: &CurveSpec, ctx: &Arc<FFContext>) -> Result<i64>;
}

/// Kernels by name.
pub struct KernelRegistry {
    kernels: BTreeMap<&'static str, Box<dyn CountingKernel>>,
}

impl Default for KernelRegistry {
    fn default() -> Self {
        let mut r = KernelRegistry { kernels: BTreeMap::new() };
        r.register(Box::new(NaiveKernel));
        r.register(Box::new(ZechKernel));
        r
    }
}

impl KernelRegistry {
    pub fn register(&mut self, k: Box<dyn CountingKernel>) {
        self.kernels.insert(k.name(), k);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CountingKernel> {
        self.kernels
            .get(name)
            .map(|k| k.as_ref())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown counting kernel {name}")))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.kernels.keys().copied().collect()
    }
}

type Grad = [Vec<Monomial>; 3];

fn gradient(sextic: &[Monomial]) -> Grad {
    let d = |sel: usize| -> Vec<Monomial> {
        sextic
            .iter()
            .filter_map(|m| {
                let e = [m.ex, m.ey, m.ez][sel];
                (e > 0).then(|| {
                    let mut n = Monomial { coeff: m.coeff * e as i64, ..*m };
                    match sel {
                        0 => n.ex -= 1,
                        1 => n.ey -= 1,
                        _ => n.ez -= 1,
                    }
                    n
                })
            })
            .collect()
    };
    [d(0), d(1), d(2)]
}

/// Direct evaluation with [`FFElement`] arithmetic. Representatives are
/// normalized on the first nonzero coordinate: `(1:y:z)`, `(0:1:z)`, `(0:0:1)`.
pub struct NaiveKernel;

fn eval_ff(monos: &[Monomial], x: &FFElement, y: &FFElement, z: &FFElement) -> FFElement {
    let ctx = &x.ctx;
    let mut acc = ctx.zero();
    for m in monos {
        let t = ctx
            .from_int(m.coeff)
            .mul(&x.pow(m.ex as u128))
            .mul(&y.pow(m.ey as u128))
            .mul(&z.pow(m.ez as u128));
        acc = acc.add(&t);
    }
    acc
}

impl CountingKernel for NaiveKernel {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn surface(&self, spec: &SurfaceSpec, ctx: &Arc<FFContext>) -> Result<SurfaceSums> {
        let f = spec.sextic();
        let grad = gradient(&f);
        let mut points: Vec<(FFElement, FFElement, FFElement)> = Vec::new();
        for y in ctx.elements() {
            for z in ctx.elements() {
                points.push((ctx.one(), y.clone(), z));
            }
        }
        for z in ctx.elements() {
            points.push((ctx.zero(), ctx.one(), z));
        }
        points.push((ctx.zero(), ctx.zero(), ctx.one()));
        let mut s = 0i64;
        let mut nodes = 0u64;
        for (x, y, z) in &points {
            let v = eval_ff(&f, x, y, z);
            if v.is_zero() {
                if grad.iter().all(|g| eval_ff(g, x, y, z).is_zero()) {
                    nodes += 1;
                }
            } else {
                s += v.quadratic_character()? as i64;
            }
        }
        Ok(SurfaceSums { s, nodes })
    }

    fn curve(&self, spec: &CurveSpec, ctx: &Arc<FFContext>) -> Result<i64> {
        let mut s = 0i64;
        for x in ctx.elements() {
            let mut acc = ctx.zero();
            for &c in spec.coefficients.iter().rev() {
                acc = acc.mul(&x).add(&ctx.from_int(c));
            }
            s += acc.quadratic_character()? as i64;
        }
        Ok(s)
    }
}

/// Log-domain evaluation through Zech logarithm tables. Representatives are
/// the affine chart `z = 1`, then `(x:1:0)`, then `(1:0:0)`.
pub struct ZechKernel;

struct LogMono {
    c: u32,
    e: [u32; 3],
}

fn log_monos(t: &ZechTable, monos: &[Monomial]) -> Vec<LogMono> {
    monos
        .iter()
        .map(|m| LogMono { c: t.log_of_int(m.coeff), e: [m.ex, m.ey, m.ez] })
        .filter(|m| m.c != ZechTable::ZERO)
        .collect()
}

fn eval_log(t: &ZechTable, monos: &[LogMono], v: [u32; 3]) -> u32 {
    let mut acc = ZechTable::ZERO;
    for m in monos {
        let mut term = m.c;
        for k in 0..3 {
            term = t.mul(term, t.pow(v[k], m.e[k]));
        }
        acc = t.add(acc, term);
    }
    acc
}

fn is_node(t: &ZechTable, grad: &[Vec<LogMono>; 3], v: [u32; 3]) -> bool {
    grad.iter().all(|g| eval_log(t, g, v) == ZechTable::ZERO)
}

impl CountingKernel for ZechKernel {
    fn name(&self) -> &'static str {
        "zech"
    }

    fn surface(&self, spec: &SurfaceSpec, ctx: &Arc<FFContext>) -> Result<SurfaceSums> {
        let t = ZechTable::new(ctx)?;
        let q = ctx.q() as usize;
        let grad_i = gradient(&spec.sextic());
        let grad = [log_monos(&t, &grad_i[0]), log_monos(&t, &grad_i[1]), log_monos(&t, &grad_i[2])];
        let cubic = log_monos(&t, &spec.cubic);
        let one = 0u32;
        let logs: Vec<u32> = (0..q).map(|i| t.log[i]).collect();
        let (s, nodes) = (0..q)
            .into_par_iter()
            .map(|yi| {
                let ly = logs[yi];
                // coefficients of g(., y, 1) by power of x
                let mut a = [ZechTable::ZERO; 4];
                for m in &cubic {
                    a[m.e[0] as usize] = t.add(a[m.e[0] as usize], t.mul(m.c, t.pow(ly, m.e[1])));
                }
                let mut s = 0i64;
                let mut nodes = 0u64;
                for &lx in &logs {
                    let mut g = a[3];
                    g = t.add(t.mul(g, lx), a[2]);
                    g = t.add(t.mul(g, lx), a[1]);
                    g = t.add(t.mul(g, lx), a[0]);
                    if lx == ZechTable::ZERO || ly == ZechTable::ZERO || g == ZechTable::ZERO {
                        if is_node(&t, &grad, [lx, ly, one]) {
                            nodes += 1;
                        }
                    } else {
                        s += 1 - 2 * ((lx ^ ly ^ g) & 1) as i64;
                    }
                }
                (s, nodes)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        // the line z = 0 lies in the branch locus
        let mut extra = 0u64;
        for &lx in &logs {
            if is_node(&t, &grad, [lx, one, ZechTable::ZERO]) {
                extra += 1;
            }
        }
        if is_node(&t, &grad, [one, ZechTable::ZERO, ZechTable::ZERO]) {
            extra += 1;
        }
        Ok(SurfaceSums { s, nodes: nodes + extra })
    }

    fn curve(&self, spec: &CurveSpec, ctx: &Arc<FFContext>) -> Result<i64> {
        let t = ZechTable::new(ctx)?;
        let q = ctx.q() as usize;
        let coeffs: Vec<u32> = spec.coefficients.iter().map(|&c| t.log_of_int(c)).collect();
        let s = (0..q)
            .into_par_iter()
            .map(|xi| {
                let lx = t.log[xi];
                let mut acc = ZechTable::ZERO;
                for &c in coeffs.iter().rev() {
                    acc = t.add(t.mul(acc, lx), c);
                }
                t.chi(acc) as i64
            })
            .sum();
        Ok(s)
    }
}
