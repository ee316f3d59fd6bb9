use num_bigint::{BigInt, RandBigInt};

use super::real::approx_real;
use crate::error::ApproxError;
use crate::rings::{tau_real, BigFloat, ZOmega, ZTau};
use crate::rng::CompileRng;

/// m = ⌈log_τ(C·ε·r)⌉ + 1 with C = √(φ/(4r)).
///
/// ⌈log_τ y⌉ is the least integer m₀ with τ^{m₀} ≤ y, found by stepping
/// powers of τ so no logarithm is needed.
pub fn sample_exponent(eps: &BigFloat, r: &BigFloat) -> u32 {
    let prec = eps.prec().max(r.prec());
    let tau = tau_real(prec);
    let phi = &tau + &BigFloat::one(prec);
    let c = (&phi / &r.mul_pow2(2)).sqrt();
    let y = &(&c * eps) * r;
    assert!(y < BigFloat::one(prec), "C·ε·r must be below 1");
    let mut m0 = 0u32;
    let mut pow = BigFloat::one(prec);
    while pow > y {
        pow = &pow * &tau;
        m0 += 1;
    }
    m0 + 1
}

fn pow(x: &BigFloat, n: u32) -> BigFloat {
    (0..n).fold(BigFloat::one(x.prec()), |acc, _| &acc * x)
}

/// Corners of the sampling parallelogram for angle θ, scale rφ^m.
struct Region {
    m: u32,
    scale: BigFloat,
    y_min: BigFloat,
    y_max: BigFloat,
    x_max: BigFloat,
    width: BigFloat,
    tan: BigFloat,
}

impl Region {
    fn new(theta: &BigFloat, eps: &BigFloat, r: &BigFloat) -> Region {
        let prec = theta.prec().max(eps.prec()).max(r.prec());
        let one = BigFloat::one(prec);
        let m = sample_exponent(eps, r);
        let phi = tau_real(prec) + &one;
        let scale = r * &pow(&phi, m);
        let (sin, cos) = theta.with_prec(prec).sin_cos();
        let e2 = eps.square();
        let root4 = (BigFloat::from_i64(4, prec) - &e2).sqrt();
        let y_min = &scale * &(&sin - &(eps * &(&(&root4 * &cos) + &(eps * &sin))).mul_pow2(-1));
        let y_max = &scale * &(&sin + &(eps * &(&(&root4 * &cos) - &(eps * &sin))).mul_pow2(-1));
        let root1 = (&one - &e2.mul_pow2(-2)).sqrt();
        // Lower-right corner (x_max, y_min); see the ledger note on its sign.
        let x_max = &scale * &(&(&(&one - &e2.mul_pow2(-1)) * &cos) + &(&(eps * &root1) * &sin));
        let width = &(&scale * &e2) / &cos.mul_pow2(1);
        let tan = &sin / &cos;
        Region {
            m,
            scale,
            y_min,
            y_max,
            x_max,
            width,
            tan,
        }
    }
}

/// Draws random elements of Z[ω] from the ε-parallelogram for fixed (θ, ε, r).
///
/// The region constants are computed once; [`Sampler::sample`] then costs two
/// [`approx_real`] calls.
pub struct Sampler {
    region: Region,
    n: BigInt,
    y_step: BigFloat,
    x_c: BigFloat,
    sqrt_2_minus_tau: BigFloat,
}

impl Sampler {
    /// θ ∈ [0, π/5], 0 < ε < 1, r ≥ 1; all at the working precision.
    pub fn new(theta: &BigFloat, eps: &BigFloat, r: &BigFloat) -> Result<Sampler, ApproxError> {
        let region = Region::new(theta, eps, r);
        let prec = region.scale.prec();
        let phi_m = &region.scale / r;
        let n = phi_m.ceil();
        if n <= BigInt::from(2) {
            return Err(ApproxError::DegenerateRegion(n.to_string()));
        }
        let y_step = &(&region.y_max - &region.y_min) / &BigFloat::from_bigint(&n, prec);
        let x_c = &region.x_max - &region.width.mul_pow2(-1);
        let sqrt_2_minus_tau = (BigFloat::from_i64(2, prec) - tau_real(prec)).sqrt();
        Ok(Sampler {
            region,
            n,
            y_step,
            x_c,
            sqrt_2_minus_tau,
        })
    }

    pub fn m(&self) -> u32 {
        self.region.m
    }

    pub fn sample(&self, rng: &mut CompileRng) -> ZOmega {
        let prec = self.y_step.prec();
        let m = self.region.m;
        let j = rng.gen_bigint_range(&BigInt::from(1), &self.n);
        let y = &self.region.y_min + &(&BigFloat::from_bigint(&j, prec) * &self.y_step);
        let (ay, by) = approx_real(&(&y / &self.sqrt_2_minus_tau), m);
        let im = ZTau::new(ay, by);
        let y_hit = &im.to_real(prec) * &self.sqrt_2_minus_tau;
        let x = &self.x_c - &(&(&y_hit - &self.region.y_min) * &self.region.tan);
        let (ax, bx) = approx_real(&x, m);
        ZTau::new(ax, bx).to_zomega() + &ZOmega::theta() * &im.to_zomega()
    }
}

/// One draw from the ε-parallelogram; see [`Sampler`].
pub fn random_sample(
    theta: &BigFloat,
    eps: &BigFloat,
    r: &BigFloat,
    rng: &mut CompileRng,
) -> Result<ZOmega, ApproxError> {
    Ok(Sampler::new(theta, eps, r)?.sample(rng))
}

/// Whether u₀ lies in the sampling parallelogram (evaluated at `prec`).
pub fn in_parallelogram(u0: &ZOmega, theta: &BigFloat, eps: &BigFloat, r: &BigFloat, prec: u32) -> bool {
    let reg = Region::new(&theta.with_prec(prec), &eps.with_prec(prec), &r.with_prec(prec));
    let z = u0.to_complex(prec);
    if z.im < reg.y_min || z.im > reg.y_max {
        return false;
    }
    let x = &z.re + &(&(&z.im - &reg.y_min) * &reg.tan);
    x <= reg.x_max && x >= &reg.x_max - &reg.width
}

/// Whether τ^m·u₀/r is within ε of e^{iθ} in the sense the compile loops
/// need: |u₀| ≤ rφ^m and Re(u₀e^{−iθ}) ≥ rφ^m(1 − ε²).
pub fn in_epsilon_region(u0: &ZOmega, theta: &BigFloat, eps: &BigFloat, r: &BigFloat, prec: u32) -> bool {
    let reg = Region::new(&theta.with_prec(prec), &eps.with_prec(prec), &r.with_prec(prec));
    let z = u0.to_complex(prec);
    let (sin, cos) = theta.with_prec(prec).sin_cos();
    let proj = &(&z.re * &cos) + &(&z.im * &sin);
    let floor = &reg.scale * &(BigFloat::one(prec) - eps.with_prec(prec).square());
    z.norm_sqr() <= reg.scale.square() && proj >= floor
}
