use crate::counting::{Varieties, WorkBudget};
use crate::hecke::{DEFAULT_CANDIDATE_BUDGET, START_DIGITS};
use crate::numfield::{load_all, FieldData};
use crate::{Error, Result};
use std::path::PathBuf;
use std::sync::Arc;

/// Prime bounds, precision and data sources for a pipeline run.
#[derive(Clone, Debug)]
pub struct Config {
    /// Good primes up to this bound are compared for surfaces (`m <= 2`).
    pub surface_bound: u64,
    /// Surfaces also compare `m = 3` up to this bound.
    pub surface_cube_bound: u64,
    /// Good primes up to this bound are compared for curves (`m <= 2`).
    pub curve_bound: u64,
    /// Curves also compare `m = 3` up to this bound; it also bounds the
    /// exterior-square checks, which need full curve factors.
    pub curve_cube_bound: u64,
    /// Comparisons continue up to this bound, one prime at a time, while more
    /// than one orbit survives.
    pub extension_bound: u64,
    /// Primes for the exterior-square division that fixes the weight-2 slot
    /// when no surface is available.
    pub slot_bound: u64,
    /// Minimum number of degree-1 primes for the sigma relation.
    pub sigma_primes: usize,
    pub digits: u32,
    pub budget: WorkBudget,
    pub candidate_budget: u128,
    pub field_data: Option<PathBuf>,
    pub variety_data: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            surface_bound: 60,
            surface_cube_bound: 20,
            curve_bound: 200,
            curve_cube_bound: 60,
            extension_bound: 300,
            slot_bound: 100,
            sigma_primes: 50,
            digits: START_DIGITS,
            budget: WorkBudget::Default,
            candidate_budget: DEFAULT_CANDIDATE_BUDGET,
            field_data: None,
            variety_data: None,
        }
    }
}

impl Config {
    /// Cap every comparison bound at `b`.
    pub fn with_prime_bound(mut self, b: u64) -> Self {
        self.surface_bound = b;
        self.surface_cube_bound = self.surface_cube_bound.min(b);
        self.curve_bound = b;
        self.curve_cube_bound = self.curve_cube_bound.min(b);
        self.slot_bound = self.slot_bound.min(b);
        self.extension_bound = self.extension_bound.min(b);
        self
    }
}

/// Loaded data shared by the pipeline stages.
pub struct Context {
    pub config: Config,
    pub varieties: Varieties,
    fields: Vec<Arc<FieldData>>,
}

impl Context {
    pub fn new(config: Config) -> Result<Self> {
        let varieties = Varieties::load(config.variety_data.as_deref())?;
        let text = match &config.field_data {
            Some(p) => Some(std::fs::read_to_string(p)?),
            None => None,
        };
        let fields = match &text {
            None => (1..=4).map(crate::numfield::shipped_field).collect::<Result<Vec<_>>>()?,
            Some(t) => load_all(Some(t))?.into_iter().map(Arc::new).collect(),
        };
        Ok(Context { config, varieties, fields })
    }

    pub fn field(&self, i: u32) -> Result<Arc<FieldData>> {
        self.fields
            .iter()
            .find(|k| k.id == i)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("no field with id {i}")))
    }
}

/// The prime at which each case's tables are stated.
pub fn table_prime(i: u32) -> Result<u64> {
    match i {
        1 => Ok(17),
        2 => Ok(13),
        3 => Ok(37),
        4 => Ok(29),
        _ => Err(Error::InvalidArgument(format!("case {i} is not one of 1..=4"))),
    }
}
