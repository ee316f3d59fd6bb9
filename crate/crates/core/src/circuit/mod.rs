//! Braid words, numeric evaluation, peephole clean-up and JSON reports.

mod braid;
mod json;
mod matrix;
mod peephole;

pub use braid::{BraidWord, Gen};
pub use json::{to_json, CompileReport};
pub use matrix::{distance, evaluate_braid, evaluate_exact, evaluate_ft, Matrix2};
pub use peephole::peephole_optimize;
