use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ring_ops, text, BigFloat, ZOmega};
use crate::error::{ParseError, RingError};

/// `a + bτ` with τ = (√5 − 1)/2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZTau {
    pub a: BigInt,
    pub b: BigInt,
}

impl ZTau {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        ZTau {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        Self::new(a, 0)
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn tau() -> Self {
        Self::new(0, 1)
    }

    /// The golden ratio φ = 1 + τ = τ⁻¹.
    pub fn phi() -> Self {
        Self::new(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// The automorphism τ ↦ −1 − τ (the other real embedding).
    pub fn bullet(&self) -> Self {
        ZTau {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    /// N_τ(x) = x·x• = a² − ab − b².
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b - &self.b * &self.b
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Exact sign of the real value `a + b(√5 − 1)/2`, using integers only.
    ///
    /// `2x = s + b√5` with `s = 2a − b`; when `s` and `b` have opposite signs
    /// the answer is decided by comparing `s²` against `5b²`.
    pub fn sign(&self) -> Ordering {
        let s = BigInt::from(2) * &self.a - &self.b;
        let b = &self.b;
        match (s.sign(), b.sign()) {
            (num_bigint::Sign::NoSign, num_bigint::Sign::NoSign) => Ordering::Equal,
            (num_bigint::Sign::Minus, num_bigint::Sign::Minus)
            | (num_bigint::Sign::Minus, num_bigint::Sign::NoSign)
            | (num_bigint::Sign::NoSign, num_bigint::Sign::Minus) => Ordering::Less,
            (num_bigint::Sign::Plus, num_bigint::Sign::Plus)
            | (num_bigint::Sign::Plus, num_bigint::Sign::NoSign)
            | (num_bigint::Sign::NoSign, num_bigint::Sign::Plus) => Ordering::Greater,
            (num_bigint::Sign::Plus, num_bigint::Sign::Minus) => (&s * &s).cmp(&(BigInt::from(5) * b * b)),
            (num_bigint::Sign::Minus, num_bigint::Sign::Plus) => (BigInt::from(5) * b * b).cmp(&(&s * &s)),
        }
    }

    /// Sign as −1, 0 or +1.
    pub fn signum(&self) -> i32 {
        match self.sign() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// True when both real embeddings are positive (x > 0 and x• > 0).
    pub fn is_totally_positive(&self) -> bool {
        self.sign() == Ordering::Greater && self.bullet().sign() == Ordering::Greater
    }

    /// `q` with `q·y = self`, or [`RingError::NotDivisible`].
    pub fn div_exact(&self, y: &ZTau) -> Result<ZTau, RingError> {
        if y.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let n = y.norm();
        let num = self * &y.bullet();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        if !ra.is_zero() || !rb.is_zero() {
            return Err(RingError::NotDivisible);
        }
        Ok(ZTau { a: qa, b: qb })
    }

    pub fn pow(&self, e: u32) -> ZTau {
        let mut acc = ZTau::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// τ^k for any integer k (τ⁻¹ = φ).
    pub fn tau_pow(k: i64) -> ZTau {
        if k >= 0 {
            ZTau::tau().pow(k as u32)
        } else {
            ZTau::phi().pow((-k) as u32)
        }
    }

    pub fn scale(&self, k: &BigInt) -> ZTau {
        ZTau {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// Image under τ ↦ ω² − ω³.
    pub fn to_zomega(&self) -> ZOmega {
        ZOmega::new(self.a.clone(), 0, self.b.clone(), -&self.b)
    }

    pub fn to_real(&self, prec: u32) -> BigFloat {
        let w = prec + 8;
        let tau = tau_real(w);
        (BigFloat::from_bigint(&self.a, w) + BigFloat::from_bigint(&self.b, w) * tau).with_prec(prec)
    }
}

/// τ as a [`BigFloat`].
pub fn tau_real(prec: u32) -> BigFloat {
    let w = prec + 4;
    ((BigFloat::from_i64(5, w).sqrt() - BigFloat::one(w)).mul_pow2(-1)).with_prec(prec)
}

fn add(x: &ZTau, y: &ZTau) -> ZTau {
    ZTau {
        a: &x.a + &y.a,
        b: &x.b + &y.b,
    }
}

fn sub(x: &ZTau, y: &ZTau) -> ZTau {
    ZTau {
        a: &x.a - &y.a,
        b: &x.b - &y.b,
    }
}

fn mul(x: &ZTau, y: &ZTau) -> ZTau {
    // (a + bτ)(c + dτ) = ac + bd + (ad + bc − bd)τ
    let bd = &x.b * &y.b;
    ZTau {
        a: &x.a * &y.a + &bd,
        b: &x.a * &y.b + &x.b * &y.a - bd,
    }
}

fn neg(x: &ZTau) -> ZTau {
    ZTau { a: -&x.a, b: -&x.b }
}

ring_ops!(ZTau, add, sub, mul, neg);

impl fmt::Display for ZTau {
    /// `a+b*t`, e.g. `760-780*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        text::write_term(f, &self.b, "t")
    }
}

impl FromStr for ZTau {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let c = text::parse_terms(s, &["t"])?;
        Ok(ZTau {
            a: c[0].clone(),
            b: c[1].clone(),
        })
    }
}
