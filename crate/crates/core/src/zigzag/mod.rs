//! Square/zigzag decompositions and the ∂∂̄-property.

pub mod ddbar;
pub mod decompose;
pub mod shape;

pub use ddbar::{is_ddbar, DdbarVerdict, Method};
pub use decompose::{decompose, Piece, PieceKind, ZigzagDecomposition};
pub use shape::{Arrow, ZigzagShape};

use crate::complex::DoubleComplex;

/// Equal zigzag multiplicities, i.e. isomorphic `E_1` data up to squares.
pub fn e1_equivalent(a: &DoubleComplex, b: &DoubleComplex) -> bool {
    decompose(a).zigzag_mults == decompose(b).zigzag_mults
}
