//! Euler-factor level verification that the transcendental motive of three K3
//! double planes, and the Jacobians of four genus-3 curves, come from algebraic
//! Hecke quasi-characters of fixed cyclic sextic CM fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`ffarith`]: finite fields `F_{p^m}`, quadratic characters, factorization over `F_p`.
//! * [`counting`]: point counts, Frobenius traces, Weil polynomials, exterior squares.
//! * [`numfield`]: the four shipped CM fields, their ideals, generators and embeddings.
//! * [`resring`]: unit groups `(O_K/m)^x` and their finite characters.
//! * [`hecke`]: infinity types, unit compatibility, candidate enumeration, Euler factors.
//! * [`pipeline`]: elimination of candidates against point counts and the final reports.

pub mod counting;
pub mod error;
pub mod ffarith;
pub mod hecke;
pub mod numfield;
pub mod pipeline;
pub mod resring;
pub mod util;

pub use error::{Error, Result};
