//! Exact linear algebra over the Gaussian rationals.

pub mod echelon;
pub mod gauss;
pub mod matrix;
pub mod rational;
pub mod sparse;
pub mod subspace;

pub use echelon::{Echelon, Insert};
pub use gauss::GaussRat;
pub use matrix::ExactMatrix;
pub use rational::Rat;
pub use sparse::SparseVec;
pub use subspace::{Quotient, Subspace};
