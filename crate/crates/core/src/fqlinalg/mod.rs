//! Linear algebra and linear codes over finite fields.

mod code;
mod matrix;
pub mod weight;

pub use code::{hermitian_gram, LinearCode};
pub use matrix::FqMatrix;
pub use weight::{distance_lower_bound, min_weight, min_weight_outside, DistanceBound, Weight, DEFAULT_BUDGET};
