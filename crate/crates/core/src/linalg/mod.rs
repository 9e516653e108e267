//! Exact vector and matrix arithmetic over prime fields and residue rings.
//!
//! Span, rank and membership are only defined over prime moduli. Over a
//! composite `Z_l` the crate exposes products, sums and norms, which is all the
//! divisibility statements need.

mod basis;
mod vector;

pub use basis::{
    dim_span, express_in, rref, rref_rows, Echelon, ModMatrix, SubspaceBasis,
    DEFAULT_ENUMERATION_BUDGET,
};
pub use vector::ModVector;

use crate::error::Result;

/// Coordinate-wise product `(v·w)(i) = v(i) w(i)`.
pub fn hadamard(v: &ModVector, w: &ModVector) -> Result<ModVector> {
    v.hadamard(w)
}

/// Sum of all entries, reduced modulo the vector's modulus.
pub fn norm(v: &ModVector) -> u32 {
    v.norm()
}
