//! Exact arithmetic in Z[τ] and Z[ω] plus the numeric embeddings used to
//! check it.
//!
//! τ = (√5 − 1)/2 satisfies τ² = 1 − τ; ω = e^{iπ/5} satisfies
//! ω⁴ = −1 + ω − ω² + ω³. Z[τ] sits inside Z[ω] through τ = ω² − ω³, but the
//! embedding is always an explicit call ([`ZTau::to_zomega`]).

mod complex;
mod float;
mod text;
mod zomega;
mod ztau;

pub use complex::BigComplex;
pub use float::{bits_for_digits, BigFloat, MIN_PRECISION};
pub use zomega::ZOmega;
pub use ztau::{tau_real, ZTau};

/// Implements the owned/borrowed combinations of `+ - *` and unary `-` in
/// terms of `fn add(&T, &T)`, `fn sub(&T, &T)`, `fn mul(&T, &T)`, `fn neg(&T)`.
macro_rules! ring_ops {
    ($t:ty, $add:path, $sub:path, $mul:path, $neg:path) => {
        ring_ops!(@bin $t, Add, add, $add);
        ring_ops!(@bin $t, Sub, sub, $sub);
        ring_ops!(@bin $t, Mul, mul, $mul);
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $neg(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $neg(&self)
            }
        }
    };
    (@bin $t:ty, $trait:ident, $method:ident, $f:path) => {
        impl std::ops::$trait<&$t> for &$t {
            type Output = $t;
            fn $method(self, rhs: &$t) -> $t {
                $f(self, rhs)
            }
        }
        impl std::ops::$trait<$t> for $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                $f(&self, &rhs)
            }
        }
        impl std::ops::$trait<&$t> for $t {
            type Output = $t;
            fn $method(self, rhs: &$t) -> $t {
                $f(&self, rhs)
            }
        }
        impl std::ops::$trait<$t> for &$t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                $f(self, &rhs)
            }
        }
    };
}
pub(crate) use ring_ops;
