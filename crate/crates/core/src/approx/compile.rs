use num_traits::ToPrimitive;

use super::sample::Sampler;
use crate::circuit::{distance, evaluate_braid, peephole_optimize, BraidWord, Matrix2};
use crate::error::ApproxError;
use crate::exact::{exact_synthesize, ft_to_braid, ExactUnitary, FtWord};
use crate::numtheory::{easy_factor, easy_solvable, solve_factored};
use crate::oracle::OracleDb;
use crate::rings::{bits_for_digits, tau_real, BigComplex, BigFloat, ZTau};
use crate::rng::CompileRng;

/// The probabilistic loops give up after this many samples.
pub const DEFAULT_TRIAL_CAP: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct CompileOptions {
    /// Working precision in bits; derived from ε when `None`.
    pub precision: Option<u32>,
    pub max_trials: u64,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            precision: None,
            max_trials: DEFAULT_TRIAL_CAP,
        }
    }
}

/// Bits for 6·log₁₀(1/ε) + 50 decimal digits.
pub fn working_precision(eps: &BigFloat) -> u32 {
    let log10 = -eps.log2_approx() * std::f64::consts::LOG10_2;
    bits_for_digits((6.0 * log10.max(0.0)).ceil() as u32 + 50)
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Target {
    Rz(BigFloat),
    /// R_z(φ)·X
    RzX(BigFloat),
    Unitary(Matrix2),
}

impl Target {
    pub fn matrix(&self, prec: u32) -> Matrix2 {
        match self {
            Target::Rz(phi) => Matrix2::rz(&phi.with_prec(prec)),
            Target::RzX(phi) => Matrix2::rz(&phi.with_prec(prec)).mul(&Matrix2::x(prec)),
            Target::Unitary(m) => m.with_prec(prec),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompileResult {
    pub exact: ExactUnitary,
    pub ft: FtWord,
    pub braid: BraidWord,
    /// Distance from the braid to the target, computed at twice the working
    /// precision.
    pub achieved_distance: BigFloat,
    pub trials: u64,
    pub sigma_count: usize,
}

impl CompileResult {
    /// Runs [`peephole_optimize`] on the braid and re-measures the distance
    /// at `2·prec` bits. `ft` and `exact` keep describing the unoptimized
    /// circuit (they agree with the new braid up to global phase).
    pub fn peephole(&mut self, db: &OracleDb, target: &Target, prec: u32) {
        let braid = peephole_optimize(&self.braid, Some(db));
        if braid.sigma_count() < self.sigma_count {
            let check = 2 * prec;
            self.achieved_distance = distance(&evaluate_braid(&braid, check), &target.matrix(check));
            self.sigma_count = braid.sigma_count();
            self.braid = braid;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Axis {
    Rz,
    RzX,
}

fn check_eps(eps: &BigFloat) -> Result<(), ApproxError> {
    if eps.signum() <= 0 || *eps >= BigFloat::one(eps.prec()) {
        return Err(ApproxError::BadEpsilon(eps.to_string()));
    }
    Ok(())
}

/// Random sampling plus the norm equation: an exact U[u,v,5] within ε of
/// R_z(φ) (or R_z(φ)X), and the number of samples drawn.
///
/// k = 5 rather than 0 because with lower-right entry −u*ω^k it is k = 5
/// that makes |tr(U·R_z(φ)†)|/2 = |Re(u e^{iφ/2})|.
fn search(
    axis: Axis,
    phi: &BigFloat,
    eps: &BigFloat,
    prec: u32,
    max_trials: u64,
    rng: &mut CompileRng,
) -> Result<(ExactUnitary, u64), ApproxError> {
    let phi = phi.with_prec(prec);
    let eps = eps.with_prec(prec);
    let pi = BigFloat::pi(prec);
    let pi_5 = &pi / &BigFloat::from_i64(5, prec);
    // θ = base − πk/5 ∈ [0, π/5)
    let (base, r) = match axis {
        Axis::Rz => (-phi.mul_pow2(-1), BigFloat::one(prec)),
        Axis::RzX => (
            &phi.mul_pow2(-1) + &pi.mul_pow2(-1),
            (tau_real(prec) + BigFloat::one(prec)).sqrt(),
        ),
    };
    let k = (&base / &pi_5).floor();
    let theta = &base - &(&BigFloat::from_bigint(&k, prec) * &pi_5);
    let k = k.mod_floor_i64(10);

    let mut sample_eps = eps.clone();
    let sampler = loop {
        match Sampler::new(&theta, &sample_eps, &r) {
            Ok(s) => break s,
            Err(ApproxError::DegenerateRegion(_)) => sample_eps = sample_eps.mul_pow2(-1),
            Err(e) => return Err(e),
        }
    };
    let m = i64::from(sampler.m());
    let tau_m = ZTau::tau_pow(m);
    let phi_2m = ZTau::tau_pow(-2 * m);
    for trial in 1..=max_trials {
        let u0 = sampler.sample(rng);
        let xi = match axis {
            Axis::Rz => ZTau::phi() * (&phi_2m - &u0.norm_i()),
            Axis::RzX => {
                let xi = &phi_2m - &(ZTau::tau() * u0.norm_i());
                // ξ• = τ^{2m} + φ|u₀•|²
                debug_assert!(xi.bullet().signum() > 0);
                xi
            }
        };
        if xi.is_zero() || !xi.is_totally_positive() {
            continue;
        }
        let fl = easy_factor(&xi);
        if !easy_solvable(&fl, rng) {
            continue;
        }
        let x = solve_factored(&xi, &fl, rng);
        let rotated = u0.mul_omega_pow(k).mul_ztau(&tau_m);
        let solved = x.mul_ztau(&tau_m);
        let (u, v) = match axis {
            Axis::Rz => (rotated, solved),
            Axis::RzX => (solved, rotated),
        };
        let e = ExactUnitary::new(u, v, 5).expect("|u|² + τ|v|² = 1 by construction");
        return Ok((e, trial));
    }
    Err(ApproxError::TrialLimitExceeded(max_trials))
}

trait ModFloorI64 {
    fn mod_floor_i64(&self, m: i64) -> i64;
}

impl ModFloorI64 for num_bigint::BigInt {
    fn mod_floor_i64(&self, m: i64) -> i64 {
        use num_integer::Integer;
        self.mod_floor(&num_bigint::BigInt::from(m)).to_i64().unwrap()
    }
}

/// Synthesizes `exact`, converts to a braid and checks the braid against
/// `target` at twice the working precision.
fn finish(
    exact: ExactUnitary,
    trials: u64,
    target: &Target,
    eps: &BigFloat,
    prec: u32,
) -> Result<CompileResult, ApproxError> {
    let ft = exact_synthesize(&exact).expect("exact unitaries always synthesize");
    let braid = ft_to_braid(&ft);
    let check = 2 * prec;
    let d = distance(&evaluate_braid(&braid, check), &target.matrix(check));
    if d > eps.with_prec(check) {
        return Err(ApproxError::VerificationFailed {
            distance: d.to_sci_string(6),
            epsilon: eps.to_sci_string(6),
        });
    }
    Ok(CompileResult {
        sigma_count: braid.sigma_count(),
        exact,
        ft,
        braid,
        achieved_distance: d,
        trials,
    })
}

fn compile_axis(
    axis: Axis,
    phi: &BigFloat,
    eps: &BigFloat,
    opts: &CompileOptions,
    rng: &mut CompileRng,
) -> Result<CompileResult, ApproxError> {
    check_eps(eps)?;
    let prec = opts.precision.unwrap_or_else(|| working_precision(eps));
    let (exact, trials) = search(axis, phi, eps, prec, opts.max_trials, rng)?;
    let target = match axis {
        Axis::Rz => Target::Rz(phi.clone()),
        Axis::RzX => Target::RzX(phi.clone()),
    };
    finish(exact, trials, &target, eps, prec)
}

/// A braid within ε of R_z(φ) = diag(e^{−iφ/2}, e^{iφ/2}), up to phase.
pub fn compile_rz(phi: &BigFloat, eps: &BigFloat, rng: &mut CompileRng) -> Result<CompileResult, ApproxError> {
    compile_rz_with(phi, eps, &CompileOptions::default(), rng)
}

pub fn compile_rz_with(
    phi: &BigFloat,
    eps: &BigFloat,
    opts: &CompileOptions,
    rng: &mut CompileRng,
) -> Result<CompileResult, ApproxError> {
    compile_axis(Axis::Rz, phi, eps, opts, rng)
}

/// A braid within ε of R_z(φ)·X, up to phase.
pub fn compile_rzx(phi: &BigFloat, eps: &BigFloat, rng: &mut CompileRng) -> Result<CompileResult, ApproxError> {
    compile_rzx_with(phi, eps, &CompileOptions::default(), rng)
}

pub fn compile_rzx_with(
    phi: &BigFloat,
    eps: &BigFloat,
    opts: &CompileOptions,
    rng: &mut CompileRng,
) -> Result<CompileResult, ApproxError> {
    compile_axis(Axis::RzX, phi, eps, opts, rng)
}

/// A unitary written, up to global phase, in terms of z-rotations and F.
#[derive(Clone, Debug)]
pub enum Decomposition {
    /// R_z(φ)
    Rz(BigFloat),
    /// R_z(φ)·X
    RzX(BigFloat),
    /// R_z(α)·F·R_z(β)·F·R_z(γ)
    Euler {
        alpha: BigFloat,
        beta: BigFloat,
        gamma: BigFloat,
    },
    /// R_z(α)·F·R_z(β)·F·R_z(γ)·X, for upper-left entries too small for the
    /// three-rotation form.
    EulerX {
        alpha: BigFloat,
        beta: BigFloat,
        gamma: BigFloat,
    },
}

impl Decomposition {
    pub fn matrix(&self, prec: u32) -> Matrix2 {
        let rz = |a: &BigFloat| Matrix2::rz(&a.with_prec(prec));
        let euler = |a: &BigFloat, b: &BigFloat, c: &BigFloat| {
            let f = Matrix2::f(prec);
            rz(a).mul(&f).mul(&rz(b)).mul(&f).mul(&rz(c))
        };
        match self {
            Decomposition::Rz(phi) => rz(phi),
            Decomposition::RzX(phi) => rz(phi).mul(&Matrix2::x(prec)),
            Decomposition::Euler { alpha, beta, gamma } => euler(alpha, beta, gamma),
            Decomposition::EulerX { alpha, beta, gamma } => euler(alpha, beta, gamma).mul(&Matrix2::x(prec)),
        }
    }
}

fn acos(c: &BigFloat) -> BigFloat {
    let one = BigFloat::one(c.prec());
    let c = if *c > one {
        one.clone()
    } else if *c < -&one {
        -&one
    } else {
        c.clone()
    };
    let s = (&one - &c.square()).sqrt();
    BigFloat::atan2(&s, &c)
}

/// Splits a unitary into z-rotations around F.
///
/// With b = e^{−iβ/2}, F·R_z(β)·F = ((w₁₁, w₁₂), (w₁₂, ·)) where
/// w₁₁ = τ²b + τb* and w₁₂ = τ√τ(b − b*), so |w₁₁| ranges over [2τ−1, 1];
/// smaller upper-left entries go through U·X instead.
pub fn decompose_general(u: &Matrix2) -> Result<Decomposition, ApproxError> {
    let prec = u.prec();
    let tol = BigFloat::one(prec).mul_pow2(-(i64::from(prec) / 2));
    let defect = u.unitarity_defect();
    if defect > tol {
        return Err(ApproxError::NotUnitary(defect.to_sci_string(6)));
    }
    // Remove the phase so that det = 1.
    let delta = u.det().arg().mul_pow2(-1);
    let v = u.scale(&BigComplex::cis(&-&delta));
    let [[a, b], [c, _]] = &v.m;
    let abs_a = a.abs();
    if abs_a < tol {
        return Ok(Decomposition::RzX(&c.arg() - &b.arg()));
    }
    if b.abs() < tol {
        return Ok(Decomposition::Rz(-a.arg().mul_pow2(1)));
    }
    let tau = tau_real(prec);
    let one = BigFloat::one(prec);
    let floor = &tau.mul_pow2(1) - &one;
    if abs_a < floor {
        return match decompose_general(&u.mul(&Matrix2::x(prec)))? {
            Decomposition::Euler { alpha, beta, gamma } => Ok(Decomposition::EulerX { alpha, beta, gamma }),
            other => unreachable!("U·X has a large upper-left entry, got {other:?}"),
        };
    }
    let tau2 = tau.square();
    let cos_beta = &(&(&abs_a.square() / &tau2) - &tau2) - &one;
    let beta = acos(&(&cos_beta / &tau.mul_pow2(1)));
    let bb = BigComplex::cis(&-&beta.mul_pow2(-1));
    let w11 = &bb.scale(&tau2) + &bb.conj().scale(&tau);
    let w12 = (&bb - &bb.conj()).scale(&(&tau * &tau.sqrt()));
    // e^{−i(α+γ)/2}w₁₁ = a and e^{−i(α−γ)/2}w₁₂ = b
    let sum = (&w11.arg() - &a.arg()).mul_pow2(1);
    let diff = (&w12.arg() - &b.arg()).mul_pow2(1);
    let alpha = (&sum + &diff).mul_pow2(-1);
    let gamma = (&sum - &diff).mul_pow2(-1);
    Ok(Decomposition::Euler { alpha, beta, gamma })
}

/// Compiles an arbitrary single-qubit unitary: each rotation of its
/// decomposition is compiled on its own, the exact pieces are multiplied and
/// the product is resynthesized.
pub fn compile_unitary(u: &Matrix2, eps: &BigFloat, rng: &mut CompileRng) -> Result<CompileResult, ApproxError> {
    compile_unitary_with(u, eps, &CompileOptions::default(), rng)
}

pub fn compile_unitary_with(
    u: &Matrix2,
    eps: &BigFloat,
    opts: &CompileOptions,
    rng: &mut CompileRng,
) -> Result<CompileResult, ApproxError> {
    check_eps(eps)?;
    let defect = u.unitarity_defect();
    if defect > eps.mul_pow2(-4) {
        return Err(ApproxError::NotUnitary(defect.to_sci_string(6)));
    }
    // Precision for the finest split, ε/6.
    let finest = eps / &BigFloat::from_i64(6, eps.prec());
    let prec = opts.precision.unwrap_or_else(|| working_precision(&finest));
    let target = Target::Unitary(u.clone());
    let dec = decompose_general(&u.with_prec(prec.max(u.prec())))?;
    let (angles, with_x) = match &dec {
        Decomposition::Rz(phi) => return compile_rz_with(phi, eps, opts, rng),
        Decomposition::RzX(phi) => return compile_rzx_with(phi, eps, opts, rng),
        Decomposition::Euler { alpha, beta, gamma } => ([alpha, beta, gamma], false),
        Decomposition::EulerX { alpha, beta, gamma } => ([alpha, beta, gamma], true),
    };
    let pieces = if with_x { 4 } else { 3 };
    let mut last_err = None;
    for split in [pieces, 6] {
        let seg_eps = eps / &BigFloat::from_i64(split, eps.prec());
        let seg_opts = CompileOptions {
            precision: Some(opts.precision.unwrap_or_else(|| working_precision(&seg_eps))),
            ..opts.clone()
        };
        let mut trials = 0;
        let mut exact = ExactUnitary::identity();
        for (i, angle) in angles.iter().enumerate() {
            if i > 0 {
                exact = exact.mul(&ExactUnitary::f());
            }
            let (e, t) = search(
                Axis::Rz,
                angle,
                &seg_eps,
                seg_opts.precision.unwrap(),
                opts.max_trials,
                rng,
            )?;
            exact = exact.mul(&e);
            trials += t;
        }
        if with_x {
            let zero = BigFloat::zero(prec);
            let (e, t) = search(
                Axis::RzX,
                &zero,
                &seg_eps,
                seg_opts.precision.unwrap(),
                opts.max_trials,
                rng,
            )?;
            exact = exact.mul(&e);
            trials += t;
        }
        match finish(exact, trials, &target, eps, prec) {
            Ok(r) => return Ok(r),
            Err(e @ ApproxError::VerificationFailed { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        if split == 6 {
            break;
        }
    }
    Err(last_err.expect("loop ran"))
}
