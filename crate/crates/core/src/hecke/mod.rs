//! Algebraic Hecke quasi-characters of the sextic fields: infinity types,
//! unit compatibility, conductor bounds, exact and double-precision
//! evaluation, Euler factors over Q and the Galois action.

mod bounds;
mod character;
mod enumerate;
mod infinity;

pub use bounds::{bound_exponents, max_char_order, maximal_modulus, ValueFieldBound};
pub use character::{
    branch_sqrt_f64, branch_sqrt_hp, root_of_unity_hp, unit_compatible, CharacterRecord, HeckeCharacter, PrimeValue,
    MAX_DIGITS, START_DIGITS,
};
pub use enumerate::{enumerate_hecke, Candidate, CandidateSpace, HeckeEnumeration, PrimeDatum, DEFAULT_CANDIDATE_BUDGET};
pub use infinity::{infinity_eval, unit_phase, InfinityType};
