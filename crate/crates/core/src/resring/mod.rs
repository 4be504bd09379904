//! Unit groups of residue rings `O_K / m`, discrete logarithms and their
//! characters with exact values in Q/Z.

mod character;
mod group;
mod ring;

pub use character::{char_conductor, character_order, enumerate_chars, CharIter, FiniteCharacter, QZ};
pub use group::{unit_group, unit_group_with_budget, Modulus, PrimePowerPart, UnitGroupStructure, DEFAULT_NORM_BUDGET};
pub use ring::{QuotientRing, Res};

#[cfg(test)]
mod tests;
