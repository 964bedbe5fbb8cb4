//! μ-multiple Hurwitz zeta values: word algebras, regularization,
//! comparison maps, numerical evaluation and relation checks.

pub mod coeff_ring;
pub mod comparison;
pub mod error;
pub mod json;
pub mod numeric_eval;
pub mod relations;
pub mod shuffle_algebra;
pub mod stuffle_algebra;
pub mod symbolic_values;
pub mod word_core;

pub use error::{Error, Result};
