//! Compiling single-qubit unitaries into Fibonacci-anyon braids.
//!
//! The pipeline runs target → [`approx`] (random sampling in Z[ω] plus a
//! relative norm equation from [`numtheory`]) → [`exact`] synthesis into an
//! F/T word → [`circuit`] braid words over σ₁, σ₂. Everything exact uses
//! unbounded integers from [`rings`]; numeric checks use [`rings::BigFloat`]
//! at a precision the caller chooses.

pub mod approx;
pub mod circuit;
pub mod error;
pub mod exact;
pub mod numtheory;
pub mod oracle;
pub mod rings;
pub mod rng;
pub mod stats;
