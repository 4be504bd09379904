//! The four cyclic sextic CM fields: verified constants, element and ideal
//! arithmetic, prime splitting, principal generators and embeddings.
//!
//! The shipped fundamental units are checked for norm and independence only.
//! If they generated a proper finite-index subgroup of the unit group, the
//! character enumeration would admit extra candidates; those are removed by
//! Euler-factor elimination, so the results stay sound.

mod data;
mod element;
mod field;
mod ideal;
mod lll;

pub use element::NFElement;
pub use field::{load_all, load_field, load_field_from, shipped_field, ClassGenerator, ClassRep, FieldData, DEGREE};
pub use ideal::{cubic_subfield_split, galois_prime, split_prime, IdealHNF, PrimeIdeal};
pub use lll::{first_principal, lll_reduce, principal_generator, short_vectors, GeneratorSearch};

#[cfg(test)]
mod tests;
