//! Built-in finite models and the direct-sum models for projective bundles,
//! blowups and products.

pub mod lie;
pub mod zoo;

pub use lie::{from_lie_model, LieModel};
pub use zoo::{blowup_model, builtin, builtin_names, describe, product_model, projbundle_model};
