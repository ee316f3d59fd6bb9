use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::NumberTheoryError;
use crate::rings::ZTau;

/// Writes a unit of Z[τ] as `s·τ^k` with `s = ±1`.
///
/// Follows the μ = ab descent: multiply by τ while μ > 1 and by τ⁻¹ = 1+τ
/// while μ < −1, keeping a > 0 after every step, then read the remainder off
/// the table {1, τ, τ², τ⁻¹}.
pub fn unit_dlog(u: &ZTau) -> Result<(i32, i64), NumberTheoryError> {
    if !u.is_unit() {
        return Err(NumberTheoryError::NotAUnit(u.to_string()));
    }
    let mut s = 1;
    let mut k = 0i64;
    let (mut a, mut b) = (u.a.clone(), u.b.clone());
    let one = BigInt::one();
    loop {
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
            s = -s;
        }
        let mu = &a * &b;
        if mu > one {
            // (a + bτ)τ = b + (a − b)τ
            let nb = &a - &b;
            a = std::mem::replace(&mut b, nb);
            k -= 1;
        } else if mu < -&one {
            // (a + bτ)(1 + τ) = (a + b) + aτ
            let na = &a + &b;
            b = std::mem::replace(&mut a, na);
            k += 1;
        } else {
            break;
        }
    }
    let j = match (i64::try_from(&a).ok(), i64::try_from(&b).ok()) {
        (Some(1), Some(0)) => 0,
        (Some(0), Some(1)) => 1,
        (Some(1), Some(-1)) => 2,
        (Some(1), Some(1)) => -1,
        _ => unreachable!("unit {u} reduced to {a}+{b}t outside the table"),
    };
    Ok((s, k + j))
}
