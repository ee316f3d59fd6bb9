//! Number theory for the relative norm equation N_i(x) = ξ over Z[ω]/Z[τ].

mod gcd;
mod norm;
mod primes;
mod units;

pub use gcd::binary_gcd;
pub use norm::{easy_factor, easy_solvable, solve_factored, solve_norm_equation, splitting_root, FactorList};
pub use primes::{is_prime, tonelli_shanks, DEFAULT_MR_ROUNDS};
pub use units::unit_dlog;
