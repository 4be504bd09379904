use crate::util::poly::discriminant_z;
use crate::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const DEFAULT_VARIETIES: &str = include_str!("../../data/varieties.toml");

/// A monomial `c x^a y^b z^d` of the cubic factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: i64,
    pub ex: u32,
    pub ey: u32,
    pub ez: u32,
}

/// `w^2 = x y z g(x, y, z)` with `g` a ternary cubic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub id: u32,
    pub cubic: Vec<Monomial>,
    pub picard_number: u32,
    pub bad_primes: Option<Vec<u64>>,
}

/// `y^2 = f(x)` with `f` monic odd of degree 7.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub id: u32,
    pub coefficients: Vec<i64>,
}

#[derive(Deserialize)]
struct RawFile {
    format_version: u32,
    #[serde(default)]
    surface: Vec<RawSurface>,
    #[serde(default)]
    curve: Vec<CurveSpec>,
}

#[derive(Deserialize)]
struct RawSurface {
    id: u32,
    picard_number: u32,
    cubic: Vec<[i64; 4]>,
}

#[derive(Clone, Debug)]
pub struct Varieties {
    pub surfaces: Vec<SurfaceSpec>,
    pub curves: Vec<CurveSpec>,
}

impl Varieties {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(|e| Error::DataFormat(e.to_string()))?;
        if raw.format_version != 1 {
            return Err(Error::DataFormat(format!("unsupported format_version {}", raw.format_version)));
        }
        let surfaces = raw
            .surface
            .into_iter()
            .map(|s| {
                let cubic: Vec<Monomial> = s
                    .cubic
                    .iter()
                    .map(|&[coeff, ex, ey, ez]| Monomial { coeff, ex: ex as u32, ey: ey as u32, ez: ez as u32 })
                    .collect();
                if cubic.iter().any(|m| m.ex + m.ey + m.ez != 3) {
                    return Err(Error::DataFormat(format!("surface {}: cubic is not homogeneous", s.id)));
                }
                Ok(SurfaceSpec { id: s.id, cubic, picard_number: s.picard_number, bad_primes: None })
            })
            .collect::<Result<Vec<_>>>()?;
        for c in &raw.curve {
            c.validate()?;
        }
        Ok(Varieties { surfaces, curves: raw.curve })
    }

    pub fn load_default() -> Self {
        Self::parse(DEFAULT_VARIETIES).expect("shipped variety data parses")
    }

    pub fn load(path: Option<&std::path::Path>) -> Result<Self> {
        match path {
            Some(p) => Self::parse(&std::fs::read_to_string(p)?),
            None => Ok(Self::load_default()),
        }
    }

    pub fn surface(&self, id: u32) -> Result<&SurfaceSpec> {
        self.surfaces
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::InvalidArgument(format!("no surface {id}")))
    }

    pub fn curve(&self, id: u32) -> Result<&CurveSpec> {
        self.curves
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::InvalidArgument(format!("no curve {id}")))
    }
}

impl SurfaceSpec {
    /// Monomials of the full sextic `x y z g`.
    pub fn sextic(&self) -> Vec<Monomial> {
        self.cubic
            .iter()
            .map(|m| Monomial { coeff: m.coeff, ex: m.ex + 1, ey: m.ey + 1, ez: m.ez + 1 })
            .collect()
    }

    pub fn eval_cubic_i128(&self, x: i128, y: i128, z: i128) -> i128 {
        self.cubic
            .iter()
            .map(|m| m.coeff as i128 * x.pow(m.ex) * y.pow(m.ey) * z.pow(m.ez))
            .sum()
    }
}

impl CurveSpec {
    pub fn validate(&self) -> Result<()> {
        let c = &self.coefficients;
        if c.len() != 8 || c[7] != 1 {
            return Err(Error::DataFormat(format!("curve {}: need a monic degree-7 polynomial", self.id)));
        }
        if c.iter().step_by(2).any(|&x| x != 0) {
            return Err(Error::DataFormat(format!("curve {}: polynomial is not odd", self.id)));
        }
        if self.discriminant() == BigInt::from(0) {
            return Err(Error::DataFormat(format!("curve {}: zero discriminant", self.id)));
        }
        Ok(())
    }

    pub fn poly(&self) -> Vec<BigInt> {
        self.coefficients.iter().map(|&x| BigInt::from(x)).collect()
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant_z(&self.poly())
    }

    /// Primes dividing `2 disc(f)`.
    pub fn bad_primes(&self) -> Vec<u64> {
        let d = self.discriminant() * 2;
        let (mut ps, rest) = crate::util::primes::prime_support_big(&d, 100_000);
        if let Some(r) = rest {
            // the shipped curves have smooth discriminants; anything else is kept whole
            log::warn!("curve {}: unfactored discriminant cofactor {r}", self.id);
        }
        ps.sort_unstable();
        ps
    }
}
