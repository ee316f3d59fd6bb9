//! Approximating rotations by exact unitaries.

mod compile;
mod real;
mod sample;

pub use compile::{
    compile_rz, compile_rz_with, compile_rzx, compile_rzx_with, compile_unitary, compile_unitary_with,
    decompose_general, working_precision, CompileOptions, CompileResult, Decomposition, Target, DEFAULT_TRIAL_CAP,
};
pub use real::{approx_real, fibonacci};
pub use sample::{in_epsilon_region, in_parallelogram, random_sample, sample_exponent, Sampler};
