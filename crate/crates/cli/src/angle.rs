//! Angle expressions: `pi/128`, `3pi/7`, `-1/2pi`, `0.45`, `-1e-3`.

use std::fmt;
use std::str::FromStr;

use fibcomp::rings::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Either a rational multiple of π or a decimal literal, kept symbolic until
/// the working precision is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Angle {
    PiMultiple { num: BigInt, den: BigInt },
    Decimal(String),
}

impl Angle {
    pub fn eval(&self, prec: u32) -> BigFloat {
        match self {
            Angle::PiMultiple { num, den } => {
                let w = prec + 16;
                let pi = BigFloat::pi(w);
                (&(&pi * &BigFloat::from_bigint(num, w)) / &BigFloat::from_bigint(den, w)).with_prec(prec)
            }
            Angle::Decimal(s) => BigFloat::parse_decimal(s, prec).expect("validated on parse"),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Decimal(s) => f.write_str(s),
            Angle::PiMultiple { num, den } => {
                if num.is_zero() {
                    return f.write_str("0");
                }
                if *num == -BigInt::one() {
                    f.write_str("-")?;
                } else if !num.is_one() {
                    write!(f, "{num}")?;
                }
                f.write_str("pi")?;
                if !den.is_one() {
                    write!(f, "/{den}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_int(s: &str, what: &str) -> Result<BigInt, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected an integer {what}, got {s:?}"));
    }
    Ok(s.parse().expect("digits"))
}

impl FromStr for Angle {
    type Err = String;

    /// Grammar: `[-][int[/int]*]pi[/int]` or a decimal literal.
    fn from_str(text: &str) -> Result<Self, String> {
        let t = text.trim();
        let Some(at) = t.find("pi") else {
            BigFloat::parse_decimal(t, 64).map_err(|e| format!("bad angle {t:?}: {}", e.message))?;
            return Ok(Angle::Decimal(t.to_string()));
        };
        let (neg, coef) = match t[..at].strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, &t[..at]),
        };
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        if !coef.is_empty() {
            let mut parts = coef.split('/');
            num = parse_int(parts.next().unwrap(), "coefficient")?;
            for d in parts {
                den *= parse_int(d, "divisor")?;
            }
        }
        let tail = &t[at + 2..];
        if !tail.is_empty() {
            let d = tail
                .strip_prefix('/')
                .ok_or_else(|| format!("unexpected {tail:?} after pi"))?;
            den *= parse_int(d, "divisor")?;
        }
        if den.is_zero() {
            return Err(format!("division by zero in angle {t:?}"));
        }
        if neg {
            num = -num;
        }
        Ok(Angle::PiMultiple { num, den })
    }
}
