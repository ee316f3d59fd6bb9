//! Binary floating point with an explicit, per-value precision.
//!
//! A [`BigFloat`] is `mantissa * 2^exponent` where the mantissa is an
//! unbounded integer holding at most `prec` significant bits. Every value
//! carries its own precision; binary operations produce a result at the
//! larger precision of their two operands. There is no ambient precision.
//!
//! Addition, subtraction, multiplication, division and square root are
//! correctly rounded (round half to even). The transcendental functions are
//! evaluated in fixed point with guard bits and are accurate to a few ulp.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Extra bits carried by fixed-point evaluations of transcendental functions.
const GUARD_BITS: u32 = 40;

/// Smallest precision accepted by the constructors.
pub const MIN_PRECISION: u32 = 8;

/// Number of bits needed to hold `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32
}

#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec: prec.max(MIN_PRECISION),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        round_to(v.clone(), 0, prec.max(MIN_PRECISION), false)
    }

    /// Exact conversion of a finite `f64` (then rounded to `prec`).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "BigFloat::from_f64 on non-finite value");
        let prec = prec.max(MIN_PRECISION);
        if v == 0.0 {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        round_to(BigInt::from(m) * sign, e, prec, false)
    }

    /// `num / den` correctly rounded.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "division by zero");
        let prec = prec.max(MIN_PRECISION);
        let n = Self::from_bigint(num, prec + 64);
        let d = Self::from_bigint(den, prec + 64);
        div_round(&n, &d, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Re-round to a different precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        round_to(self.mant.clone(), self.exp, prec.max(MIN_PRECISION), false)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// `self * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    /// Position of the most significant bit: `2^(e-1) <= |x| < 2^e`.
    /// Returns `None` for zero.
    pub fn magnitude_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64)
        }
    }

    /// Approximate base-2 logarithm of `|self|`; good to about 1e-15 relative.
    pub fn log2_approx(&self) -> f64 {
        assert!(!self.is_zero(), "log of zero");
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (self.mant.abs() >> shift as usize).to_f64().unwrap_or(f64::MAX);
        top.log2() + (self.exp + shift) as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 64).max(0);
        let top = (&self.mant >> shift as usize).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // Split the scaling so that intermediate powers stay finite.
        let half = e / 2;
        top * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    /// Largest integer not greater than `self`.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            // BigInt right shift rounds toward negative infinity.
            &self.mant >> (-self.exp) as usize
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// `floor(self + 1/2)`: round to nearest, ties toward positive infinity.
    pub fn round_half_up(&self) -> BigInt {
        if self.exp >= 0 {
            return self.floor();
        }
        let shift = (-self.exp) as usize;
        let half = BigInt::one() << (shift - 1);
        (&self.mant + half) >> shift
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec;
        let bits = self.mant.bits() as i64;
        let mut shift = (2 * (prec as i64 + 2) - bits).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as usize;
        let r = m.sqrt();
        let sticky = &r * &r != m;
        round_to(r, (self.exp - shift) / 2, prec, sticky)
    }

    pub fn recip(&self) -> Self {
        div_round(&Self::one(self.prec), self, self.prec)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pi(prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let w = prec + GUARD_BITS;
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let a = atan_inv_fixed(5, w);
        let b = atan_inv_fixed(239, w);
        let pi_fixed = (a << 4usize) - (b << 2usize);
        round_to(pi_fixed, -(w as i64), prec, true)
    }

    /// Sine and cosine, both accurate to a few ulp.
    pub fn sin_cos(&self) -> (Self, Self) {
        let prec = self.prec;
        if self.is_zero() {
            return (Self::zero(prec), Self::one(prec));
        }
        let mag = self.magnitude_exp().unwrap().max(0) as u32;
        let w = prec + GUARD_BITS + mag;
        let x = self.to_fixed(w);
        let half_pi = Self::pi(w + 8).to_fixed(w) >> 1usize;
        let n = (((&x << 1usize) + &half_pi).div_floor(&(&half_pi << 1usize))).clone();
        let r = &x - &n * &half_pi;
        let (s, c) = sin_cos_fixed(&r, w);
        let quadrant = n.mod_floor(&BigInt::from(4)).to_u32().unwrap();
        let (s, c) = match quadrant {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        (
            round_to(s, -(w as i64), prec, false),
            round_to(c, -(w as i64), prec, false),
        )
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn tan(&self) -> Self {
        let w = self.with_prec(self.prec + 16);
        let (s, c) = w.sin_cos();
        (s / c).with_prec(self.prec)
    }

    pub fn atan(&self) -> Self {
        let prec = self.prec;
        if self.is_zero() {
            return self.clone();
        }
        let w = prec + GUARD_BITS;
        let x = self.with_prec(w);
        let one = Self::one(w);
        if x.abs() > one {
            let half_pi = Self::pi(w).mul_pow2(-1);
            let inner = x.recip().atan();
            let r = if x.is_negative() {
                -half_pi - inner
            } else {
                half_pi - inner
            };
            return r.with_prec(prec);
        }
        // atan(t) = 2 atan(t / (1 + sqrt(1 + t^2))); four halvings bring
        // |t| below tan(pi/64).
        let mut t = x;
        for _ in 0..4 {
            let d = &one + &(&(&t * &t) + &one).sqrt();
            t = &t / &d;
        }
        let t2 = &t * &t;
        let mut term = t.clone();
        let mut sum = t.clone();
        let eps_exp = -(w as i64) - 4;
        let mut k: i64 = 1;
        loop {
            term = -(&term * &t2);
            let contrib = &term / &Self::from_i64(2 * k + 1, w);
            if contrib.is_zero() || contrib.magnitude_exp().unwrap() < eps_exp {
                break;
            }
            sum = &sum + &contrib;
            k += 1;
        }
        sum.mul_pow2(4).with_prec(prec)
    }

    /// Angle of the point `(x, y)` in `(-pi, pi]`.
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let prec = y.prec.max(x.prec);
        if x.is_zero() {
            if y.is_zero() {
                return Self::zero(prec);
            }
            let half_pi = Self::pi(prec).mul_pow2(-1);
            return if y.is_negative() { -half_pi } else { half_pi };
        }
        let w = prec + 16;
        let ratio = y.with_prec(w) / x.with_prec(w);
        let base = ratio.atan();
        let r = if !x.is_negative() {
            base
        } else if y.is_negative() {
            base - Self::pi(w)
        } else {
            base + Self::pi(w)
        };
        r.with_prec(prec)
    }

    /// `round(self * 2^w)` as a fixed-point integer.
    fn to_fixed(&self, w: u32) -> BigInt {
        let e = self.exp + w as i64;
        if e >= 0 {
            &self.mant << e as usize
        } else {
            let shift = (-e) as usize;
            let half = BigInt::one() << (shift - 1);
            (&self.mant + half) >> shift
        }
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut e10 = (self.log2_approx() * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let n = self.scaled_decimal(digits as i64 - 1 - e10);
            let s = n.magnitude().to_string();
            if s.len() > digits {
                e10 += 1;
                continue;
            }
            if s.len() < digits {
                e10 -= 1;
                continue;
            }
            let sign = if self.is_negative() { "-" } else { "" };
            let (head, tail) = s.split_at(1);
            return if tail.is_empty() {
                format!("{sign}{head}e{e10}")
            } else {
                format!("{sign}{head}.{tail}e{e10}")
            };
        }
    }

    /// `round(|self| * 10^k)` computed exactly, with the sign of self.
    fn scaled_decimal(&self, k: i64) -> BigInt {
        let ten = BigUint::from(10u32);
        let mut num = self.mant.magnitude().clone();
        let mut den = BigUint::one();
        if k >= 0 {
            num *= ten.pow(k as u32);
        } else {
            den *= ten.pow((-k) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as usize;
        } else {
            den <<= (-self.exp) as usize;
        }
        let q = (&num * 2u32 + &den) / (&den * 2u32);
        let q = BigInt::from_biguint(Sign::Plus, q);
        if self.is_negative() {
            -q
        } else {
            q
        }
    }

    /// Parse a decimal literal such as `0.45`, `-3`, `1e-10` or `2.5E+3`.
    pub fn parse_decimal(text: &str, prec: u32) -> Result<Self, ParseError> {
        let t = text.trim();
        let err = |msg: &str| ParseError::new(t, 0, msg);
        if t.is_empty() {
            return Err(err("empty number"));
        }
        let (mantissa, exp10) = match t.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = t[i + 1..]
                    .parse()
                    .map_err(|_| ParseError::new(t, i + 1, "bad exponent"))?;
                (&t[..i], e)
            }
            None => (t, 0),
        };
        let (neg, body) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = match body.find('.') {
            Some(i) => (&body[..i], &body[i + 1..]),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("no digits"));
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(err("invalid digit"));
        }
        let digits = format!("{int_part}{frac_part}");
        let mut n: BigInt = digits.parse().map_err(|_| err("invalid digits"))?;
        if neg {
            n = -n;
        }
        let e = exp10 - frac_part.len() as i64;
        if e.abs() > 100_000 {
            return Err(err("exponent out of range"));
        }
        let ten = BigInt::from(10);
        Ok(if e >= 0 {
            Self::from_bigint(&(n * num_traits::pow(ten, e as usize)), prec)
        } else {
            Self::from_ratio(&n, &num_traits::pow(ten, (-e) as usize), prec)
        })
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ma, mb) = (self.magnitude_exp().unwrap(), other.magnitude_exp().unwrap());
        if ma != mb {
            let by_mag = ma.cmp(&mb);
            return if sa > 0 { by_mag } else { by_mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

/// Round `mant * 2^exp` to `prec` bits, half to even. `sticky` marks that the
/// exact value is slightly larger in magnitude than `mant * 2^exp`.
fn round_to(mant: BigInt, exp: i64, prec: u32, sticky: bool) -> BigFloat {
    if mant.is_zero() {
        return BigFloat { mant, exp: 0, prec };
    }
    let neg = mant.is_negative();
    let mag = mant.magnitude();
    let bits = mag.bits();
    if bits <= prec as u64 {
        return BigFloat { mant, exp, prec };
    }
    let shift = (bits - prec as u64) as usize;
    let mut q = mag >> shift;
    let rem = mag - (&q << shift);
    let half = BigUint::one() << (shift - 1);
    let round_up = match rem.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => sticky || q.is_odd(),
    };
    let mut new_exp = exp + shift as i64;
    if round_up {
        q += 1u32;
        if q.bits() > prec as u64 {
            q >>= 1usize;
            new_exp += 1;
        }
    }
    let m = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, q);
    BigFloat {
        mant: m,
        exp: new_exp,
        prec,
    }
}

fn add_round(a: &BigFloat, b: &BigFloat, prec: u32) -> BigFloat {
    if a.is_zero() {
        return b.with_prec(prec);
    }
    if b.is_zero() {
        return a.with_prec(prec);
    }
    let top = a.magnitude_exp().unwrap().max(b.magnitude_exp().unwrap());
    let floor = top - prec as i64 - 4;
    let low = a.exp.min(b.exp).max(floor);
    let mut sticky_parts = Vec::new();
    let mut align = |x: &BigFloat| -> BigInt {
        if x.exp >= low {
            &x.mant << (x.exp - low) as usize
        } else {
            let shift = (low - x.exp) as usize;
            let q = &x.mant >> shift;
            if (&q << shift) != x.mant {
                sticky_parts.push(x.signum());
            }
            q
        }
    };
    let ma = align(a);
    let mb = align(b);
    let mut sum = ma + mb;
    if !sticky_parts.is_empty() {
        // Shifting a negative operand floored it; the discarded bits are a
        // positive fraction of one unit. Keep a one-unit sticky marker below
        // the rounding point instead of tracking the exact fraction.
        sum = (sum << 2usize) + BigInt::from(2);
        return round_to(sum, low - 2, prec, true);
    }
    round_to(sum, low, prec, false)
}

fn div_round(a: &BigFloat, b: &BigFloat, prec: u32) -> BigFloat {
    assert!(!b.is_zero(), "BigFloat division by zero");
    if a.is_zero() {
        return BigFloat::zero(prec);
    }
    let shift = (prec as i64 + 2 + b.mant.bits() as i64 - a.mant.bits() as i64).max(0);
    let num = &a.mant << shift as usize;
    let (q, r) = num.div_rem(&b.mant);
    round_to(q, a.exp - shift - b.exp, prec, !r.is_zero())
}

/// `atan(1/n) * 2^w` in fixed point.
fn atan_inv_fixed(n: u64, w: u32) -> BigInt {
    let n_sq = BigInt::from(n * n);
    let mut power = (BigInt::one() << w as usize) / BigInt::from(n);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    while !power.is_zero() {
        power /= &n_sq;
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// Taylor series for sine and cosine of a fixed-point argument, |r| <= ~0.8.
fn sin_cos_fixed(r: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w as usize;
    let r2 = (r * r) >> w as usize;
    let mut sin = r.clone();
    let mut cos = one.clone();
    let mut s_term = r.clone();
    let mut c_term = one;
    let mut k: u64 = 1;
    loop {
        s_term = -((&s_term * &r2) >> w as usize) / BigInt::from((2 * k) * (2 * k + 1));
        c_term = -((&c_term * &r2) >> w as usize) / BigInt::from((2 * k - 1) * (2 * k));
        if s_term.is_zero() && c_term.is_zero() {
            break;
        }
        sin += &s_term;
        cos += &c_term;
        k += 1;
    }
    (sin, cos)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                let prec = self.prec.max(rhs.prec);
                $body(self, rhs, prec)
            }
        }
        impl $trait<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                (&self).$method(rhs)
            }
        }
        impl $trait<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &BigFloat, b: &BigFloat, p| add_round(a, b, p));
forward_binop!(Sub, sub, |a: &BigFloat, b: &BigFloat, p| add_round(a, &-b, p));
forward_binop!(Mul, mul, |a: &BigFloat, b: &BigFloat, p| round_to(
    &a.mant * &b.mant,
    a.exp + b.exp,
    p,
    false
));
forward_binop!(Div, div, |a: &BigFloat, b: &BigFloat, p| div_round(a, b, p));

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}, {} bits)", self.to_sci_string(20), self.prec)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(((self.prec as f64) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_sci_string(digits))
    }
}

impl FromStr for BigFloat {
    type Err = ParseError;
    /// Parses at 256 bits; use [`BigFloat::parse_decimal`] to choose.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_decimal(s, 256)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(v: f64) -> BigFloat {
        BigFloat::from_f64(v, 128)
    }

    fn close(x: BigFloat, y: BigFloat, log2_tol: i64) -> bool {
        (x - y).abs() <= BigFloat::one(64).mul_pow2(log2_tol)
    }

    #[test]
    fn exact_small_arithmetic() {
        assert_eq!(bf(1.5) + bf(2.25), bf(3.75));
        assert_eq!(bf(1.5) - bf(2.25), bf(-0.75));
        assert_eq!(bf(1.5) * bf(-2.0), bf(-3.0));
        assert_eq!(bf(3.0) / bf(4.0), bf(0.75));
        assert_eq!(bf(2.25).sqrt(), bf(1.5));
        assert_eq!(bf(-7.5).floor(), BigInt::from(-8));
        assert_eq!(bf(-7.5).round_half_up(), BigInt::from(-7));
        assert_eq!(bf(2.5).round_half_up(), BigInt::from(3));
        assert_eq!(bf(-2.0).ceil(), BigInt::from(-2));
    }

    #[test]
    fn division_matches_f64() {
        let q = BigFloat::from_i64(1, 53) / BigFloat::from_i64(3, 53);
        assert_eq!(q.to_f64(), 1.0 / 3.0);
        let s = BigFloat::from_i64(2, 53).sqrt();
        assert_eq!(s.to_f64(), 2f64.sqrt());
    }

    #[test]
    fn pi_digits() {
        let pi = BigFloat::pi(200);
        assert_eq!(
            pi.to_sci_string(50),
            "3.1415926535897932384626433832795028841971693993751e0"
        );
    }

    #[test]
    fn trig_values() {
        let p = 200;
        let pi = BigFloat::pi(p);
        let (s, c) = (&pi / BigFloat::from_i64(6, p)).sin_cos();
        let half = BigFloat::from_f64(0.5, p);
        assert!(close(s, half, -190));
        let root3_2 = BigFloat::from_i64(3, p).sqrt().mul_pow2(-1);
        assert!(close(c, root3_2, -190));
        // Large arguments reduce correctly.
        let x = BigFloat::from_f64(1000.25, p);
        assert!((x.sin().to_f64() - 1000.25f64.sin()).abs() < 1e-12);
        assert!((x.cos().to_f64() - 1000.25f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn atan_and_atan2() {
        let p = 200;
        let one = BigFloat::one(p);
        let quarter_pi = BigFloat::pi(p).mul_pow2(-2);
        assert!(close(one.atan(), quarter_pi, -190));
        for (y, x) in [(1.0, -1.0), (-2.0, -0.5), (0.3, 4.0), (-1e-5, 2.0), (5.0, 0.0)] {
            let a = BigFloat::atan2(&bf(y), &bf(x)).to_f64();
            assert!((a - f64::atan2(y, x)).abs() < 1e-14, "{y} {x}");
        }
    }

    #[test]
    fn decimal_round_trip() {
        let x = BigFloat::parse_decimal("1e-10", 256).unwrap();
        assert_eq!(x.to_sci_string(10), "1.000000000e-10");
        let y = BigFloat::parse_decimal("-0.45", 128).unwrap();
        assert_eq!(y.to_sci_string(3), "-4.50e-1");
        assert!(BigFloat::parse_decimal("1.2.3", 64).is_err());
        assert!(BigFloat::parse_decimal("", 64).is_err());
    }

    #[test]
    fn ordering_across_exponents() {
        assert!(bf(1e-30) < bf(1e-29));
        assert!(bf(-1e30) < bf(1e-30));
        assert!(bf(3.0) > bf(2.999999));
    }
}
