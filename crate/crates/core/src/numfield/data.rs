use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

pub const DEFAULT_FIELDS: &str = include_str!("../../data/fields.toml");

#[derive(Deserialize)]
pub(super) struct RawFile {
    pub format_version: u32,
    pub field: Vec<RawField>,
}

#[derive(Deserialize, Clone)]
pub(super) struct RawField {
    pub id: u32,
    pub label: String,
    pub defining_polynomial: Vec<i64>,
    pub abs_discriminant: u64,
    pub integral_basis: Vec<Vec<String>>,
    pub galois_generator: Vec<String>,
    pub torsion_order: u32,
    pub torsion_generator: Vec<i64>,
    pub fundamental_units: Vec<Vec<i64>>,
    pub class_number: u32,
    #[serde(default)]
    pub class_group_cyc: Vec<u32>,
    pub cubic_polynomial: Vec<i64>,
    pub cubic_root: Vec<i64>,
    #[serde(default)]
    pub index_prime: Vec<RawPrime>,
    #[serde(default)]
    pub class_generator: Vec<RawClassGen>,
}

#[derive(Deserialize, Clone)]
pub(super) struct RawPrime {
    pub p: u64,
    pub generator: Vec<i64>,
    pub e: u32,
    pub f: u32,
}

#[derive(Deserialize, Clone)]
pub(super) struct RawClassGen {
    pub p: u64,
    pub generator: Vec<i64>,
    pub order: u32,
    pub principalization: Vec<i64>,
}

pub(super) fn parse_rational(s: &str) -> Result<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::DataFormat(format!("bad rational {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| Error::DataFormat(format!("bad rational {s:?}")))?;
    if d == BigInt::from(0) {
        return Err(Error::DataFormat(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

pub(super) fn parse_file(text: &str) -> Result<RawFile> {
    let raw: RawFile = toml::from_str(text).map_err(|e| Error::DataFormat(e.to_string()))?;
    if raw.format_version != 1 {
        return Err(Error::DataFormat(format!("unsupported format_version {}", raw.format_version)));
    }
    Ok(raw)
}
