use std::fmt;

use crate::exact::{ExactUnitary, FtGate, FtWord};
use crate::rings::{BigComplex, BigFloat};

use super::braid::{BraidWord, Gen};

/// A 2×2 complex matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix2 {
    pub m: [[BigComplex; 2]; 2],
}

impl Matrix2 {
    pub fn new(a: BigComplex, b: BigComplex, c: BigComplex, d: BigComplex) -> Self {
        Matrix2 { m: [[a, b], [c, d]] }
    }

    pub fn identity(prec: u32) -> Self {
        Self::diag(BigComplex::one(prec), BigComplex::one(prec))
    }

    pub fn diag(a: BigComplex, d: BigComplex) -> Self {
        let p = a.prec().max(d.prec());
        Self::new(a, BigComplex::zero(p), BigComplex::zero(p), d)
    }

    /// R_z(φ) = diag(e^{−iφ/2}, e^{iφ/2}).
    pub fn rz(phi: &BigFloat) -> Self {
        let half = phi.mul_pow2(-1);
        Self::diag(BigComplex::cis(&-&half), BigComplex::cis(&half))
    }

    /// Pauli X.
    pub fn x(prec: u32) -> Self {
        Self::new(
            BigComplex::zero(prec),
            BigComplex::one(prec),
            BigComplex::one(prec),
            BigComplex::zero(prec),
        )
    }

    pub fn t(prec: u32) -> Self {
        Self::diag(BigComplex::one(prec), BigComplex::omega_pow(1, prec))
    }

    pub fn f(prec: u32) -> Self {
        let w = prec + 8;
        let tau = (BigFloat::from_i64(5, w).sqrt() - BigFloat::one(w)).mul_pow2(-1);
        let st = tau.sqrt();
        let c = |x: &BigFloat| BigComplex::from_real(x.with_prec(prec));
        Self::new(c(&tau), c(&st), c(&st), c(&-&tau))
    }

    pub fn prec(&self) -> u32 {
        self.m.iter().flatten().map(BigComplex::prec).max().unwrap()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        let [[a, b], [c, d]] = &self.m;
        Self::new(
            a.with_prec(prec),
            b.with_prec(prec),
            c.with_prec(prec),
            d.with_prec(prec),
        )
    }

    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &rhs.m[0][j]) + &(&self.m[i][1] * &rhs.m[1][j]);
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn dagger(&self) -> Matrix2 {
        let [[a, b], [c, d]] = &self.m;
        Self::new(a.conj(), c.conj(), b.conj(), d.conj())
    }

    pub fn scale(&self, z: &BigComplex) -> Matrix2 {
        let [[a, b], [c, d]] = &self.m;
        Self::new(a * z, b * z, c * z, d * z)
    }

    pub fn trace(&self) -> BigComplex {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn det(&self) -> BigComplex {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    /// max |(U U† − I)_{ij}|, a cheap unitarity check.
    pub fn unitarity_defect(&self) -> BigFloat {
        let p = self.mul(&self.dagger());
        let id = Matrix2::identity(self.prec());
        let mut worst = BigFloat::zero(self.prec());
        for i in 0..2 {
            for j in 0..2 {
                let d = (&p.m[i][j] - &id.m[i][j]).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(12);
        let [[a, b], [c, e]] = &self.m;
        write!(f, "[[{a:.d$}, {b:.d$}], [{c:.d$}, {e:.d$}]]")
    }
}

/// Global-phase-invariant distance √(1 − |tr(AB†)|/2).
pub fn distance(a: &Matrix2, b: &Matrix2) -> BigFloat {
    let tr = a.mul(&b.dagger()).trace();
    let x = BigFloat::one(tr.prec()) - tr.abs().mul_pow2(-1);
    if x.is_negative() {
        BigFloat::zero(x.prec())
    } else {
        x.sqrt()
    }
}

/// U[u,v,k] as a numeric matrix.
pub fn evaluate_exact(u: &ExactUnitary, prec: u32) -> Matrix2 {
    let w = prec + 16;
    let uc = u.u.to_complex(w);
    let vc = u.v.to_complex(w);
    let st = (BigFloat::from_i64(5, w).sqrt() - BigFloat::one(w)).mul_pow2(-1).sqrt();
    let wk = BigComplex::omega_pow(i64::from(u.k), w);
    let top_right = (&vc.conj() * &wk).scale(&st);
    let bottom_left = vc.scale(&st);
    let bottom_right = -(&uc.conj() * &wk);
    Matrix2::new(uc, top_right, bottom_left, bottom_right).with_prec(prec)
}

/// Gate-by-gate numeric product of an F/T word (phase included).
pub fn evaluate_ft(word: &FtWord, prec: u32) -> Matrix2 {
    let w = prec + 16;
    let f = Matrix2::f(w);
    let t_pows: Vec<Matrix2> = (0..10)
        .map(|j| Matrix2::diag(BigComplex::one(w), BigComplex::omega_pow(j, w)))
        .collect();
    let mut acc = Matrix2::identity(w);
    for g in word.gates() {
        acc = match g {
            FtGate::F => acc.mul(&f),
            FtGate::T(j) => acc.mul(&t_pows[usize::from(*j)]),
        };
    }
    acc.scale(&BigComplex::omega_pow(i64::from(word.phase), w))
        .with_prec(prec)
}

/// σ_g^e for e in −5..=5 as numeric matrices.
struct SigmaTable {
    s1: Vec<Matrix2>,
    s2: Vec<Matrix2>,
}

impl SigmaTable {
    fn new(prec: u32) -> Self {
        let f = Matrix2::f(prec);
        // σ₁^e = ω^{6e} diag(1, ω^{7e})
        let s1: Vec<Matrix2> = (-5i64..=5)
            .map(|e| Matrix2::diag(BigComplex::omega_pow(6 * e, prec), BigComplex::omega_pow(13 * e, prec)))
            .collect();
        let s2 = s1.iter().map(|m| f.mul(m).mul(&f)).collect();
        SigmaTable { s1, s2 }
    }

    fn get(&self, g: Gen, e: i8) -> &Matrix2 {
        let i = (i64::from(e) + 5) as usize;
        match g {
            Gen::S1 => &self.s1[i],
            Gen::S2 => &self.s2[i],
        }
    }
}

/// Gate-by-gate numeric product of a braid word.
pub fn evaluate_braid(word: &BraidWord, prec: u32) -> Matrix2 {
    let w = prec + 16;
    let table = SigmaTable::new(w);
    let mut acc = Matrix2::identity(w);
    for &(g, e) in word.runs() {
        acc = acc.mul(table.get(g, e));
    }
    acc.with_prec(prec)
}
