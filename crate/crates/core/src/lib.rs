//! Exact computations on bounded double complexes: the four cohomologies,
//! the Frölicher spectral sequence, Hodge filtrations, square/zigzag
//! decompositions and the ∂∂̄-property, plus the integer polynomial family
//! and symbolic checks behind the projective-bundle and blowup inversion
//! formulas.

pub mod error;
pub mod formula;
pub mod linalg;
pub mod poly;
pub mod complex;
pub mod zigzag;
pub mod cohomology;
pub mod models;
