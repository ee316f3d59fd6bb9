//! The `a+b*t` / `a+b*w+c*w2+d*w3` text encodings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

pub(super) fn write_term(f: &mut fmt::Formatter<'_>, coef: &BigInt, sym: &str) -> fmt::Result {
    if coef.is_negative() {
        write!(f, "-{}*{}", coef.abs(), sym)
    } else {
        write!(f, "+{}*{}", coef, sym)
    }
}

/// Parses a signed sum of terms `[coef][*]sym` or bare integers.
///
/// Returns one coefficient per slot: index 0 is the constant term and
/// index `i + 1` belongs to `syms[i]`. Repeated symbols accumulate.
/// `w^2` is accepted as a spelling of `w2`.
pub(super) fn parse_terms(input: &str, syms: &[&str]) -> Result<Vec<BigInt>, ParseError> {
    let err = |pos: usize, msg: &str| ParseError::new(input, pos, msg);
    let bytes = input.as_bytes();
    let mut out = vec![BigInt::zero(); syms.len() + 1];
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(err(pos, "empty expression"));
    }
    let mut first = true;
    while pos < bytes.len() {
        let mut negative = false;
        match bytes[pos] {
            b'+' => pos += 1,
            b'-' => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(err(pos, "expected '+' or '-'")),
        }
        first = false;
        skip_ws(&mut pos);
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coef = if pos > digits_start {
            input[digits_start..pos].parse::<BigInt>().unwrap()
        } else {
            BigInt::one()
        };
        let has_digits = pos > digits_start;
        skip_ws(&mut pos);
        let mut had_star = false;
        if pos < bytes.len() && bytes[pos] == b'*' {
            if !has_digits {
                return Err(err(pos, "'*' without a coefficient"));
            }
            had_star = true;
            pos += 1;
            skip_ws(&mut pos);
        }
        let sym_start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'^') {
            pos += 1;
        }
        let sym: String = input[sym_start..pos].chars().filter(|&c| c != '^').collect();
        let slot = if sym.is_empty() {
            if had_star {
                return Err(err(sym_start, "expected a symbol after '*'"));
            }
            if !has_digits {
                return Err(err(sym_start, "expected a term"));
            }
            0
        } else {
            match syms.iter().position(|s| *s == sym) {
                Some(i) => i + 1,
                None => return Err(err(sym_start, &format!("unknown symbol {sym:?}"))),
            }
        };
        if negative {
            out[slot] -= coef;
        } else {
            out[slot] += coef;
        }
        skip_ws(&mut pos);
    }
    Ok(out)
}
