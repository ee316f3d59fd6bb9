use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::NumberTheoryError;
use crate::rng::CompileRng;

pub const DEFAULT_MR_ROUNDS: u32 = 40;

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Miller–Rabin with `rounds` random bases drawn from `rng`.
///
/// Negative inputs are never prime. A composite survives with probability at
/// most 4^−rounds.
pub fn is_prime(n: &BigInt, rounds: u32, rng: &mut CompileRng) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let two = BigInt::from(2);
    'witness: for _ in 0..rounds {
        let a = rng.gen_bigint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A square root of `n` modulo the odd prime `p`.
///
/// Returns the smaller of the two roots `{r, p − r}` (and 0 when `n ≡ 0`).
/// A non-residue `n` is reported as [`NumberTheoryError::NotAResidue`].
pub fn tonelli_shanks(n: &BigInt, p: &BigInt, rng: &mut CompileRng) -> Result<BigInt, NumberTheoryError> {
    let not_residue = || NumberTheoryError::NotAResidue(n.to_string(), p.to_string());
    let one = BigInt::one();
    let two = BigInt::from(2);
    if p < &BigInt::from(3) || p.is_even() {
        return Err(NumberTheoryError::Precondition(format!("{p} is not an odd prime")));
    }
    let n = n.mod_floor(p);
    if n.is_zero() {
        return Ok(n);
    }
    let p_minus_1 = p - &one;
    if n.modpow(&(&p_minus_1 >> 1), p) != one {
        return Err(not_residue());
    }
    let s = p_minus_1.trailing_zeros().unwrap_or(0);
    let q = &p_minus_1 >> s;
    let r = if s == 1 {
        n.modpow(&((p + &one) >> 2), p)
    } else {
        let z = loop {
            let z = rng.gen_bigint_range(&two, p);
            if z.modpow(&(&p_minus_1 >> 1), p) == p_minus_1 {
                break z;
            }
        };
        let mut c = z.modpow(&q, p);
        let mut r = n.modpow(&((&q + &one) >> 1), p);
        let mut t = n.modpow(&q, p);
        let mut m = s;
        while t != one {
            let mut i = 0;
            let mut t2 = t.clone();
            while t2 != one {
                t2 = (&t2 * &t2) % p;
                i += 1;
                if i == m {
                    return Err(not_residue());
                }
            }
            let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
            r = (&r * &b) % p;
            c = (&b * &b) % p;
            t = (&t * &c) % p;
            m = i;
        }
        r
    };
    if (&r * &r - &n).mod_floor(p) != BigInt::zero() {
        return Err(not_residue());
    }
    let other = p - &r;
    Ok(if other < r { other } else { r }.abs())
}
