//! Exact unitaries U[u,v,k] and their synthesis into F/T words.
//!
//! ```text
//! U[u,v,k] = ( u      v*·√τ·ω^k )
//!            ( v·√τ   −u*·ω^k   )      with |u|² + τ|v|² = 1
//! ```
//!
//! Words are kept in matrix-product order: the first gate is the leftmost
//! factor, so it acts last on a state vector.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::circuit::{BraidWord, Gen};
use crate::error::{ExactError, ParseError};
use crate::rings::{ZOmega, ZTau};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactUnitary {
    pub u: ZOmega,
    pub v: ZOmega,
    /// Exponent of ω, always in 0..10.
    pub k: u8,
}

fn tau_w() -> ZOmega {
    ZTau::tau().to_zomega()
}

impl ExactUnitary {
    /// Checks |u|² + τ|v|² = 1 exactly.
    pub fn new(u: ZOmega, v: ZOmega, k: i64) -> Result<Self, ExactError> {
        let lhs = u.norm_i() + ZTau::tau() * v.norm_i();
        if !lhs.is_one() {
            return Err(ExactError::NotUnitary(lhs.to_string()));
        }
        Ok(Self::from_parts(u, v, k))
    }

    pub(crate) fn from_parts(u: ZOmega, v: ZOmega, k: i64) -> Self {
        ExactUnitary {
            u,
            v,
            k: k.rem_euclid(10) as u8,
        }
    }

    pub fn identity() -> Self {
        Self::from_parts(ZOmega::one(), ZOmega::zero(), 5)
    }

    /// T = diag(1, ω).
    pub fn t() -> Self {
        Self::from_parts(ZOmega::one(), ZOmega::zero(), 6)
    }

    /// F = ((τ, √τ), (√τ, −τ)).
    pub fn f() -> Self {
        Self::from_parts(tau_w(), ZOmega::one(), 0)
    }

    /// σ₁ = ω⁶·T⁷.
    pub fn sigma1() -> Self {
        Self::t_pow(7).phase(6)
    }

    /// σ₂ = F·σ₁·F.
    pub fn sigma2() -> Self {
        Self::f().mul(&Self::sigma1()).mul(&Self::f())
    }

    /// σ_g^e for any integer e.
    pub fn sigma(g: Gen, e: i64) -> Self {
        let s1 = Self::t_pow(7 * e).phase(6 * e);
        match g {
            Gen::S1 => s1,
            Gen::S2 => Self::f().mul(&s1).mul(&Self::f()),
        }
    }

    /// T^j = diag(1, ω^j).
    pub fn t_pow(j: i64) -> Self {
        Self::from_parts(ZOmega::one(), ZOmega::zero(), j + 5)
    }

    pub fn is_unitary(&self) -> bool {
        (self.u.norm_i() + ZTau::tau() * self.v.norm_i()).is_one()
    }

    /// T·self.
    pub fn apply_t(&self) -> Self {
        Self::from_parts(self.u.clone(), self.v.mul_omega_pow(1), i64::from(self.k) + 1)
    }

    /// T^j·self.
    pub fn apply_t_pow(&self, j: i64) -> Self {
        Self::from_parts(self.u.clone(), self.v.mul_omega_pow(j), i64::from(self.k) + j)
    }

    /// F·self.
    pub fn apply_f(&self) -> Self {
        let t = tau_w();
        let u = &t * &(&self.u + &self.v);
        let v = &self.u - &(&t * &self.v);
        Self::from_parts(u, v, i64::from(self.k) + 5)
    }

    /// ω^s·self.
    pub fn phase(&self, s: i64) -> Self {
        Self::from_parts(
            self.u.mul_omega_pow(s),
            self.v.mul_omega_pow(s),
            i64::from(self.k) + 2 * s,
        )
    }

    /// Matrix product self·rhs.
    pub fn mul(&self, rhs: &ExactUnitary) -> ExactUnitary {
        let k1 = i64::from(self.k);
        // u = u₁u₂ + τ ω^{k₁} v₁* v₂,  v = v₁u₂ − ω^{k₁} u₁* v₂
        let u = &(&self.u * &rhs.u) + &(&tau_w() * &(&self.v.conj() * &rhs.v).mul_omega_pow(k1));
        let v = &(&self.v * &rhs.u) - &(&self.u.conj() * &rhs.v).mul_omega_pow(k1);
        let out = Self::from_parts(u, v, k1 + i64::from(rhs.k) + 5);
        debug_assert!(out.is_unitary());
        out
    }

    /// G(U) = G(u).
    pub fn gauss(&self) -> BigInt {
        self.u.gauss_complexity()
    }
}

impl fmt::Display for ExactUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U[{}; {}; {}]", self.u, self.v, self.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FtGate {
    F,
    /// T^j with j in 1..10.
    T(u8),
}

/// ω^phase · g₁ g₂ … gₙ over {F, T}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FtWord {
    pub phase: u8,
    gates: Vec<FtGate>,
}

impl FtWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gates(&self) -> &[FtGate] {
        &self.gates
    }

    pub fn with_phase(mut self, s: i64) -> Self {
        self.phase = (i64::from(self.phase) + s).rem_euclid(10) as u8;
        self
    }

    /// Appends on the right, merging T runs and cancelling F·F.
    pub fn push(&mut self, g: FtGate) {
        match (self.gates.last().copied(), g) {
            (_, FtGate::T(j)) if j % 10 == 0 => {}
            (Some(FtGate::T(a)), FtGate::T(b)) => {
                let e = (a + b) % 10;
                self.gates.pop();
                if e != 0 {
                    self.gates.push(FtGate::T(e));
                }
            }
            (Some(FtGate::F), FtGate::F) => {
                self.gates.pop();
            }
            (_, FtGate::T(j)) => self.gates.push(FtGate::T(j % 10)),
            (_, FtGate::F) => self.gates.push(FtGate::F),
        }
    }

    pub fn push_t(&mut self, j: i64) {
        self.push(FtGate::T(j.rem_euclid(10) as u8));
    }

    /// self·rhs.
    pub fn concat(&self, rhs: &FtWord) -> FtWord {
        let mut out = self.clone();
        for &g in &rhs.gates {
            out.push(g);
        }
        out.with_phase(i64::from(rhs.phase))
    }

    pub fn f_count(&self) -> usize {
        self.gates.iter().filter(|g| **g == FtGate::F).count()
    }

    /// The exact unitary this word denotes.
    pub fn evaluate(&self) -> ExactUnitary {
        let mut acc = ExactUnitary::identity();
        for g in self.gates.iter().rev() {
            acc = match g {
                FtGate::F => acc.apply_f(),
                FtGate::T(j) => acc.apply_t_pow(i64::from(*j)),
            };
        }
        acc.phase(i64::from(self.phase))
    }
}

impl fmt::Display for FtWord {
    /// `w^3 T^2 F T F`; the empty word is `I`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.phase != 0 {
            parts.push(format!("w^{}", self.phase));
        }
        for g in &self.gates {
            parts.push(match g {
                FtGate::F => "F".to_string(),
                FtGate::T(1) => "T".to_string(),
                FtGate::T(j) => format!("T^{j}"),
            });
        }
        if parts.is_empty() {
            f.write_str("I")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl FromStr for FtWord {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = FtWord::new();
        let mut offset = 0;
        for tok in s.split(' ') {
            let pos = offset;
            offset += tok.len() + 1;
            if tok.is_empty() || tok == "I" {
                continue;
            }
            let (head, exp) = match tok.split_once('^') {
                Some((h, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| ParseError::new(s, pos + h.len() + 1, "bad exponent"))?;
                    (h, e)
                }
                None => (tok, 1),
            };
            match head {
                "F" => {
                    for _ in 0..exp.rem_euclid(2) {
                        w.push(FtGate::F);
                    }
                }
                "T" => w.push_t(exp),
                "w" => w = w.with_phase(exp),
                _ => return Err(ParseError::new(s, pos, "expected F, T or w")),
            }
        }
        Ok(w)
    }
}

/// Per-step record of a synthesis run.
#[derive(Clone, Debug, Default)]
pub struct SynthesisTrace {
    /// G(U_r) before each loop iteration, followed by the terminal value.
    pub gauss: Vec<BigInt>,
}

/// Exact synthesis: peel F·T^J off the left while G(u) > 2, then match
/// the remainder against ω^k T^j.
pub fn exact_synthesize(target: &ExactUnitary) -> Result<FtWord, ExactError> {
    exact_synthesize_traced(target).map(|(w, _)| w)
}

pub fn exact_synthesize_traced(target: &ExactUnitary) -> Result<(FtWord, SynthesisTrace), ExactError> {
    if !target.is_unitary() {
        let lhs = target.u.norm_i() + ZTau::tau() * target.v.norm_i();
        return Err(ExactError::NotUnitary(lhs.to_string()));
    }
    let two = BigInt::from(2);
    let t = tau_w();
    let mut word = FtWord::new();
    let mut trace = SynthesisTrace::default();
    let mut cur = target.clone();
    let mut g = cur.gauss();
    while g > two {
        trace.gauss.push(g.clone());
        // G of the upper-left entry of F·T^j·U is G(τ(u + ω^j v)); smallest j wins ties.
        let (j, next_g) = (1..=10)
            .map(|j| (j, (&t * &(&cur.u + &cur.v.mul_omega_pow(j))).gauss_complexity()))
            .min_by(|a, b| a.1.cmp(&b.1))
            .unwrap();
        cur = cur.apply_t_pow(j).apply_f();
        // U = T^{10−J}·F·U_r
        word.push_t(10 - j);
        word.push(FtGate::F);
        g = next_g;
    }
    trace.gauss.push(g);
    for kk in 0..10 {
        if cur.u != ZOmega::omega_pow(kk) || !cur.v.is_zero() {
            continue;
        }
        for j in 0..10 {
            if (5 + j + 2 * kk).rem_euclid(10) == i64::from(cur.k) {
                word.push_t(j);
                return Ok((word.with_phase(kk), trace));
            }
        }
    }
    Err(ExactError::NoTerminalForm)
}

/// Rewrites an F/T word as a braid, dropping the global phase.
///
/// Uses T = ω²σ₁³ and σ₂ = F·σ₁·F: since F² = I, every F·T^j·F block is
/// ω^{2j}σ₂^{3j}, so T-runs alternate between σ₁ and σ₂ at each F. A left-over
/// F at the end becomes σ₁σ₂σ₁ = σ₂σ₁σ₂ (= ω⁶F), oriented to merge with the
/// last run.
pub fn ft_to_braid(w: &FtWord) -> BraidWord {
    let mut out = BraidWord::new();
    let mut g = Gen::S1;
    for gate in w.gates() {
        match gate {
            FtGate::T(j) => out.push(g, 3 * i64::from(*j)),
            FtGate::F => g = g.other(),
        }
    }
    if g == Gen::S2 {
        let last = out.runs().last().map_or(Gen::S1, |r| r.0);
        for h in [last, last.other(), last] {
            out.push(h, 1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{distance, evaluate_braid, evaluate_exact, evaluate_ft};
    use crate::rings::BigFloat;
    use rand::{Rng, SeedableRng};

    fn random_word(rng: &mut impl Rng, len: usize) -> FtWord {
        let mut w = FtWord::new();
        for _ in 0..len {
            w.push_t(rng.gen_range(0..10));
            w.push(FtGate::F);
        }
        w.push_t(rng.gen_range(0..10));
        w.with_phase(rng.gen_range(0..10))
    }

    #[test]
    fn generator_forms() {
        assert_eq!(
            ExactUnitary::t(),
            ExactUnitary::from_parts(ZOmega::one(), ZOmega::zero(), 6)
        );
        assert_eq!(
            ExactUnitary::f(),
            ExactUnitary::from_parts(ZOmega::new(0, 0, 1, -1), ZOmega::one(), 0)
        );
        assert!(ExactUnitary::f().is_unitary());
        let u = ExactUnitary::f().apply_t();
        assert_eq!(u.phase(5).phase(5), u);
        assert_eq!(ExactUnitary::f().mul(&ExactUnitary::f()), ExactUnitary::identity());
    }

    #[test]
    fn sigma_relations() {
        let s1 = ExactUnitary::sigma1();
        let mut p = ExactUnitary::identity();
        for _ in 0..10 {
            p = p.mul(&s1);
        }
        assert_eq!(p, ExactUnitary::identity());
        // T = ω² σ₁³
        assert_eq!(s1.mul(&s1).mul(&s1).phase(2), ExactUnitary::t());
        // F = ω⁴ σ₁σ₂σ₁
        let s2 = ExactUnitary::sigma2();
        assert_eq!(s1.mul(&s2).mul(&s1).phase(4), ExactUnitary::f());
        assert_eq!(ExactUnitary::sigma(Gen::S2, -1).mul(&s2), ExactUnitary::identity());
    }

    #[test]
    fn mul_agrees_with_left_actions() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let a = random_word(&mut rng, 5).evaluate();
            assert_eq!(ExactUnitary::t().mul(&a), a.apply_t());
            assert_eq!(ExactUnitary::f().mul(&a), a.apply_f());
        }
    }

    #[test]
    fn gauss_table() {
        let ft = ExactUnitary::f().mul(&ExactUnitary::t());
        let ft2 = ft.mul(&ft);
        let ft3 = ft2.mul(&ft);
        assert_eq!(ExactUnitary::identity().gauss(), BigInt::from(2));
        assert_eq!(ft.gauss(), BigInt::from(3));
        assert_eq!(ft2.gauss(), BigInt::from(13));
        assert_eq!(ft3.gauss(), BigInt::from(57));
    }

    #[test]
    fn synthesis_examples() {
        let w = exact_synthesize(&ExactUnitary::identity()).unwrap();
        assert_eq!(w, FtWord::new());
        let w = exact_synthesize(&ExactUnitary::t()).unwrap();
        assert_eq!(w.to_string(), "T");
        let ft = ExactUnitary::f().mul(&ExactUnitary::t());
        let ft3 = ft.mul(&ft).mul(&ft);
        let w = exact_synthesize(&ft3).unwrap();
        assert_eq!(w.evaluate(), ft3);
        assert!(w.f_count() as f64 <= (57f64).ln() / 3f64.ln() + 5.0);
    }

    #[test]
    fn rejects_non_unitary() {
        let bad = ExactUnitary::from_parts(ZOmega::zero(), ZOmega::one(), 0);
        assert!(matches!(exact_synthesize(&bad), Err(ExactError::NotUnitary(_))));
        assert!(ExactUnitary::new(ZOmega::zero(), ZOmega::new(1, 1, 0, 0), 0).is_err());
    }

    #[test]
    fn no_exact_unitary_has_zero_u() {
        // τ|v|² = 1 would need |v|² = φ, i.e. N_i(v) = 1 + τ; that is not a norm.
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    for d in -3i64..=3 {
                        let v = ZOmega::new(a, b, c, d);
                        assert!(ExactUnitary::new(ZOmega::zero(), v, 0).is_err());
                    }
                }
            }
        }
    }

    #[test]
    fn random_round_trips() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        for _ in 0..200 {
            let len = rng.gen_range(0..=100);
            let u = random_word(&mut rng, len).evaluate();
            let (w, trace) = exact_synthesize_traced(&u).unwrap();
            assert_eq!(w.evaluate(), u);
            assert!(trace.gauss.windows(2).all(|p| p[1] < p[0]));
        }
    }

    #[test]
    fn text_round_trip() {
        let w: FtWord = "w^3 T^2 F T F".parse().unwrap();
        assert_eq!(w.to_string(), "w^3 T^2 F T F");
        assert_eq!("I".parse::<FtWord>().unwrap(), FtWord::new());
        assert!("F X".parse::<FtWord>().is_err());
    }

    #[test]
    fn braid_translation() {
        let one = |s: &str| ft_to_braid(&s.parse().unwrap()).to_string();
        assert_eq!(one("T"), "s1^3");
        assert_eq!(one("F"), "s1 s2 s1");
        assert_eq!(one("T^7"), "s1");
        assert_eq!(one("F T^2 F"), "s2^-4");
        assert_eq!(one("T F T"), "s1^3 s2^4 s1 s2");
        let mut rng = rand::rngs::StdRng::seed_from_u64(4);
        let tol = BigFloat::one(128).mul_pow2(-50);
        for _ in 0..50 {
            let w = random_word(&mut rng, 20);
            let a = evaluate_ft(&w, 128);
            let b = evaluate_braid(&ft_to_braid(&w), 128);
            assert!(distance(&a, &b) < tol);
            assert!(distance(&a, &evaluate_exact(&w.evaluate(), 128)) < tol);
        }
    }
}
