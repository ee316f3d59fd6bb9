use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rings::BigFloat;

/// F₀ = 0, F₁ = 1, Fₙ = Fₙ₋₁ + Fₙ₋₂.
pub fn fibonacci(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Integers a, b with |x − (a + bτ)| ≤ τ^{n−1}(1 − τⁿ) and |b| ≤ φⁿ.
///
/// Uses the convergent Fₙ/Fₙ₊₁ of τ: first x ≈ c/Fₙ₊₁, then c is split as
/// c = a·Fₙ₊₁ + b·Fₙ via the Bézout pair of consecutive Fibonacci numbers,
/// with b reduced into a window of width Fₙ₊₁. Rounding is floor(· + 1/2).
pub fn approx_real(x: &BigFloat, n: u32) -> (BigInt, BigInt) {
    assert!(n >= 2, "approx_real needs n ≥ 2");
    let p = fibonacci(n);
    let q = fibonacci(n + 1);
    let sign = |e: u32| {
        if e.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };
    let u = sign(n + 1) * &p;
    let v = sign(n) * fibonacci(n - 1);
    debug_assert!((&u * &p + &v * &q).is_one());
    // Enough bits that x·q is formed without rounding.
    let w = x.prec() + q.bits() as u32 + 8;
    let c = (x.with_prec(w) * BigFloat::from_bigint(&q, w)).round_half_up();
    let cu = &c * &u;
    let r = (&cu * 2u32 + &q).div_floor(&(&q * 2u32));
    let a = &c * &v + &p * &r;
    let b = cu - &q * &r;
    (a, b)
}
