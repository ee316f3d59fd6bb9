use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ring_ops, text, BigComplex, BigFloat, ZTau};
use crate::error::{ParseError, RingError};

/// `a + bω + cω² + dω³` with ω = e^{iπ/5}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZOmega {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl ZOmega {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        ZOmega {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0, 0)
    }

    pub fn omega() -> Self {
        Self::new(0, 1, 0, 0)
    }

    /// θ = ω + ω⁴, the square root of τ − 2.
    pub fn theta() -> Self {
        Self::new(-1, 2, -1, 1)
    }

    /// ω^k for any integer k.
    pub fn omega_pow(k: i64) -> Self {
        let k = k.rem_euclid(10);
        let base = match k % 5 {
            0 => Self::new(1, 0, 0, 0),
            1 => Self::new(0, 1, 0, 0),
            2 => Self::new(0, 0, 1, 0),
            3 => Self::new(0, 0, 0, 1),
            _ => Self::new(-1, 1, -1, 1),
        };
        if k >= 5 {
            -base
        } else {
            base
        }
    }

    pub fn coords(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Multiplication by ω^k, done as a coordinate shift.
    pub fn mul_omega_pow(&self, k: i64) -> Self {
        let mut x = self.clone();
        for _ in 0..k.rem_euclid(10) {
            // ω(a + bω + cω² + dω³) = a ω + b ω² + c ω³ + d(−1 + ω − ω² + ω³)
            x = ZOmega {
                a: -&x.d,
                b: &x.a + &x.d,
                c: &x.b - &x.d,
                d: &x.c + &x.d,
            };
        }
        x
    }

    /// Complex conjugation, ω ↦ ω⁻¹.
    pub fn conj(&self) -> Self {
        ZOmega {
            a: &self.a + &self.b,
            b: -&self.b,
            c: &self.b - &self.d,
            d: -&self.b - &self.c,
        }
    }

    /// The automorphism ω ↦ ω³; applying it twice gives [`ZOmega::conj`].
    pub fn bullet(&self) -> Self {
        ZOmega {
            a: &self.a + &self.d,
            b: -&self.c - &self.d,
            c: self.d.clone(),
            d: &self.b - &self.d,
        }
    }

    /// The preimage under the Z[τ] embedding, if this element is in its image.
    pub fn to_ztau(&self) -> Option<ZTau> {
        if self.b.is_zero() && (&self.c + &self.d).is_zero() {
            Some(ZTau::new(self.a.clone(), self.c.clone()))
        } else {
            None
        }
    }

    pub fn from_ztau(x: &ZTau) -> Self {
        x.to_zomega()
    }

    /// N_i(x) = x·x* = |x|², an element of Z[τ].
    pub fn norm_i(&self) -> ZTau {
        (self * &self.conj()).to_ztau().expect("x·x* always lies in Z[tau]")
    }

    /// N_τ(N_i(x)) = |x|²·|x•|², a non-negative integer.
    pub fn abs_norm(&self) -> BigInt {
        self.norm_i().norm()
    }

    /// G(x) = |x|² + |x•|², as a rational integer.
    pub fn gauss_complexity(&self) -> BigInt {
        // (A + Bτ) + (A + Bτ)• = 2A − B
        let n = self.norm_i();
        BigInt::from(2) * &n.a - &n.b
    }

    /// Residue of x modulo (1 + ω), in 0..5. Since ω ≡ −1 this is a − b + c − d mod 5.
    pub fn residue_mod_one_plus_omega(&self) -> u8 {
        let r = (&self.a - &self.b + &self.c - &self.d).mod_floor(&BigInt::from(5));
        u8::try_from(&r).unwrap()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ZOmega {
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
            d: &self.d * k,
        }
    }

    pub fn mul_ztau(&self, x: &ZTau) -> Self {
        self * &x.to_zomega()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ZOmega::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `q` with `q·y = self`, or [`RingError::NotDivisible`].
    pub fn div_exact(&self, y: &ZOmega) -> Result<ZOmega, RingError> {
        if y.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        // 1/y = y* (N_i y)• / N_τ(N_i y)
        let ni = y.norm_i();
        let den = ni.norm();
        let num = &(self * &y.conj()) * &ni.bullet().to_zomega();
        let mut q = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (slot, c) in q.iter_mut().zip(num.coords()) {
            let (quot, rem) = c.div_rem(&den);
            if !rem.is_zero() {
                return Err(RingError::NotDivisible);
            }
            *slot = quot;
        }
        let [a, b, c, d] = q;
        Ok(ZOmega { a, b, c, d })
    }

    pub fn divides(&self, x: &ZOmega) -> bool {
        x.div_exact(self).is_ok()
    }

    pub fn to_complex(&self, prec: u32) -> BigComplex {
        let w = prec + 8;
        let mut acc = BigComplex::zero(w);
        for (k, c) in self.coords().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = BigComplex::omega_pow(k as i64, w).scale(&BigFloat::from_bigint(c, w));
            acc = &acc + &term;
        }
        acc.with_prec(prec)
    }
}

fn add(x: &ZOmega, y: &ZOmega) -> ZOmega {
    ZOmega {
        a: &x.a + &y.a,
        b: &x.b + &y.b,
        c: &x.c + &y.c,
        d: &x.d + &y.d,
    }
}

fn sub(x: &ZOmega, y: &ZOmega) -> ZOmega {
    ZOmega {
        a: &x.a - &y.a,
        b: &x.b - &y.b,
        c: &x.c - &y.c,
        d: &x.d - &y.d,
    }
}

fn mul(x: &ZOmega, y: &ZOmega) -> ZOmega {
    let xs = x.coords();
    let ys = y.coords();
    let mut p: [BigInt; 7] = Default::default();
    for (i, xi) in xs.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in ys.iter().enumerate() {
            p[i + j] += *xi * *yj;
        }
    }
    // ω⁴ = −1 + ω − ω² + ω³, ω⁵ = −1, ω⁶ = −ω
    let [p0, p1, p2, p3, p4, p5, p6] = p;
    ZOmega {
        a: p0 - &p4 - p5,
        b: p1 + &p4 - p6,
        c: p2 - &p4,
        d: p3 + p4,
    }
}

fn neg(x: &ZOmega) -> ZOmega {
    ZOmega {
        a: -&x.a,
        b: -&x.b,
        c: -&x.c,
        d: -&x.d,
    }
}

ring_ops!(ZOmega, add, sub, mul, neg);

impl fmt::Display for ZOmega {
    /// `a+b*w+c*w2+d*w3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        text::write_term(f, &self.b, "w")?;
        text::write_term(f, &self.c, "w2")?;
        text::write_term(f, &self.d, "w3")
    }
}

impl FromStr for ZOmega {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = text::parse_terms(s, &["w", "w2", "w3", "w4"])?.into_iter();
        let (a, b, c2, d, e) = (
            c.next().unwrap(),
            c.next().unwrap(),
            c.next().unwrap(),
            c.next().unwrap(),
            c.next().unwrap(),
        );
        // a w4 term is folded in through ω⁴ = −1 + ω − ω² + ω³
        Ok(ZOmega {
            a: a - &e,
            b: b + &e,
            c: c2 - &e,
            d: d + e,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zw(a: i64, b: i64, c: i64, d: i64) -> ZOmega {
        ZOmega::new(a, b, c, d)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(zw(0, 1, 0, 0) * zw(0, 0, 0, 1), zw(-1, 1, -1, 1));
        assert_eq!(zw(0, 0, 1, 0) * zw(0, 0, 0, 1), zw(-1, 0, 0, 0));
        let t = ZOmega::theta();
        assert_eq!(&t * &t, ZTau::new(-2, 1).to_zomega());
        for k in 0..10 {
            assert_eq!(ZOmega::omega_pow(k) * ZOmega::omega(), ZOmega::omega_pow(k + 1));
            assert_eq!(ZOmega::one().mul_omega_pow(k), ZOmega::omega_pow(k));
        }
    }

    #[test]
    fn automorphisms() {
        assert_eq!(ZOmega::omega().bullet(), zw(0, 0, 0, 1));
        assert_eq!(ZOmega::omega().conj(), zw(1, -1, 1, -1));
        assert_eq!(ZOmega::one().conj(), ZOmega::one());
        assert_eq!(ZOmega::theta().conj(), -ZOmega::theta());
        assert_eq!(ZTau::tau().to_zomega().bullet(), ZTau::tau().bullet().to_zomega());
    }

    #[test]
    fn relative_norms() {
        assert_eq!(ZOmega::theta().norm_i(), ZTau::new(2, -1));
        assert_eq!(ZTau::new(1, 2).to_zomega().norm_i(), ZTau::new(5, 0));
        for k in 0..10 {
            assert_eq!(ZOmega::omega_pow(k).norm_i(), ZTau::one());
        }
    }

    #[test]
    fn gauss_complexity_table() {
        assert_eq!(zw(0, 0, 1, -1).gauss_complexity(), BigInt::from(3));
        assert_eq!(zw(2, -1, 0, 1).gauss_complexity(), BigInt::from(13));
        assert_eq!(ZOmega::zero().gauss_complexity(), BigInt::from(0));
        assert_eq!(ZOmega::one().gauss_complexity(), BigInt::from(2));
    }

    #[test]
    fn trichotomy_on_small_box() {
        let r = -2..=2i64;
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        let x = zw(a, b, c, d);
                        let g = x.gauss_complexity();
                        let is_root = (0..10).any(|k| x == ZOmega::omega_pow(k));
                        assert_eq!(g.is_zero(), x.is_zero());
                        assert_eq!(g == BigInt::from(2), is_root, "{x}");
                        if !x.is_zero() && !is_root {
                            assert!(g >= BigInt::from(3));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exact_division() {
        let x = zw(3, 2, -7, 7);
        let y = zw(1, 1, 0, 0);
        assert_eq!((&x * &y).div_exact(&y).unwrap(), x);
        assert_eq!(zw(1, 0, 0, 0).div_exact(&y), Err(RingError::NotDivisible));
    }

    #[test]
    fn numeric_embedding() {
        let w = ZOmega::omega().to_complex(128);
        let pi5 = BigFloat::pi(128) / BigFloat::from_i64(5, 128);
        assert!((&w.re - &pi5.cos()).abs() < BigFloat::from_f64(1e-36, 128));
        assert!((&w.im - &pi5.sin()).abs() < BigFloat::from_f64(1e-36, 128));
    }

    #[test]
    fn text_round_trip() {
        for s in ["3+2*w-7*w2+7*w3", "0+0*w+0*w2+0*w3", "-1+1*w-1*w2+1*w3"] {
            assert_eq!(s.parse::<ZOmega>().unwrap().to_string(), s);
        }
        assert_eq!("w+w4".parse::<ZOmega>().unwrap(), ZOmega::theta());
        assert_eq!("2-w+w^3".parse::<ZOmega>().unwrap(), zw(2, -1, 0, 1));
        assert!("2+w5".parse::<ZOmega>().is_err());
        assert!("".parse::<ZOmega>().is_err());
    }

    fn arb() -> impl Strategy<Value = ZOmega> {
        let c = -1_000_000i64..=1_000_000;
        (c.clone(), c.clone(), c.clone(), c).prop_map(|(a, b, c, d)| zw(a, b, c, d))
    }

    fn small() -> impl Strategy<Value = ZOmega> {
        let c = -50i64..=50;
        (c.clone(), c.clone(), c.clone(), c).prop_map(|(a, b, c, d)| zw(a, b, c, d))
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn embedding_is_homomorphism(a in -1000i64..1000, b in -1000i64..1000,
                                     c in -1000i64..1000, d in -1000i64..1000) {
            let (x, y) = (ZTau::new(a, b), ZTau::new(c, d));
            prop_assert_eq!((&x * &y).to_zomega(), x.to_zomega() * y.to_zomega());
            prop_assert_eq!((&x + &y).to_zomega(), x.to_zomega() + y.to_zomega());
        }

        #[test]
        fn automorphism_laws(x in arb(), y in arb()) {
            prop_assert_eq!((&x * &y).bullet(), x.bullet() * y.bullet());
            prop_assert_eq!(x.bullet().bullet(), x.conj());
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((&x * &y).conj(), x.conj() * y.conj());
        }

        #[test]
        fn norms(x in arb(), y in arb()) {
            prop_assert_eq!((&x * &y).norm_i(), x.norm_i() * y.norm_i());
            prop_assert!(x.abs_norm() >= BigInt::zero());
        }

        #[test]
        fn gauss_bounds(x in arb()) {
            let s: BigInt = x.coords().iter().map(|c| *c * *c).sum();
            let g2 = x.gauss_complexity() * 2;
            prop_assert!(s <= g2);
            prop_assert!(g2 <= s * 5);
        }

        #[test]
        fn norm_matches_embedding(x in small()) {
            let z = x.to_complex(192);
            let n = x.norm_i().to_real(192);
            let diff = (z.norm_sqr() - n).abs();
            prop_assert!(diff < BigFloat::from_f64(1e-40, 192));
        }

        #[test]
        fn division_inverts_multiplication(x in small(), y in small()) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!((&x * &y).div_exact(&y).unwrap(), x);
        }
    }
}
