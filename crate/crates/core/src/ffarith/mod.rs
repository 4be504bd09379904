//! Finite fields `F_p` and `F_{p^m}` for `m <= 6`, quadratic characters and
//! factorization of integer polynomials modulo `p`.

mod field;
mod fpoly;
mod fqpoly;
mod zech;

pub use field::{ff_context, FFContext, FFElement};
pub use fpoly::{factor_poly_mod_p, is_irreducible, FpPoly};
pub use fqpoly::{roots_in, FqPoly};
pub use zech::ZechTable;

/// Quadratic character of a field element: `0`, `1` or `-1`.
pub fn quadratic_character(x: &FFElement) -> crate::Result<i8> {
    x.quadratic_character()
}
