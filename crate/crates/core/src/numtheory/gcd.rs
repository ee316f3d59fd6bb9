use crate::rings::{ZOmega, ZTau};

/// 1 + ω, the prime of norm 5 above 5.
fn one_plus_omega() -> ZOmega {
    ZOmega::new(1, 1, 0, 0)
}

/// A unit whose residue mod (1+ω) is the inverse of `r` (r ∈ 1..5).
///
/// Residues of the candidate units: 1 ↦ 1, 1−ω ↦ 2, −(1−ω) ↦ 3, −1 ↦ 4.
fn normalizing_unit(r: u8) -> ZOmega {
    match r {
        1 => ZOmega::one(),
        2 => ZOmega::new(-1, 1, 0, 0),
        3 => ZOmega::new(1, -1, 0, 0),
        4 => -ZOmega::one(),
        _ => unreachable!("residue {r} has no inverse"),
    }
}

/// The associate x·τ^j of least Gauss complexity.
///
/// Z[ω] has infinitely many units, so two associates can have the same norm
/// but very different coordinates; keeping both inputs balanced this way is
/// what stops the subtraction step from cycling between them.
fn balance(mut x: ZOmega) -> ZOmega {
    let tau = ZTau::tau().to_zomega();
    let phi = ZTau::phi().to_zomega();
    let mut g = x.gauss_complexity();
    loop {
        let down = &x * &tau;
        let gd = down.gauss_complexity();
        if gd < g {
            x = down;
            g = gd;
            continue;
        }
        let up = &x * &phi;
        let gu = up.gauss_complexity();
        if gu < g {
            x = up;
            g = gu;
            continue;
        }
        return x;
    }
}

/// Generalized binary GCD in Z[ω].
///
/// The result divides both inputs and generates the same ideal; it is only
/// defined up to a unit. A factor 1+ω found in just one input is stripped
/// from that input (it cannot be part of the gcd); when neither input is
/// divisible, the two are normalized to residue 1 and subtracted, choosing
/// among the residue-preserving multiples ω^{2k} the one that gives the
/// smallest difference.
pub fn binary_gcd(x: &ZOmega, y: &ZOmega) -> ZOmega {
    if x.is_zero() {
        return y.clone();
    }
    if y.is_zero() {
        return x.clone();
    }
    let pi = one_plus_omega();
    let mut a = balance(x.clone());
    let mut b = balance(y.clone());
    let mut common = 0u32;
    loop {
        if a.is_zero() {
            return &pi.pow(common) * &b;
        }
        if b.is_zero() {
            return &pi.pow(common) * &a;
        }
        let ra = a.residue_mod_one_plus_omega();
        let rb = b.residue_mod_one_plus_omega();
        match (ra, rb) {
            (0, 0) => {
                a = balance(a.div_exact(&pi).unwrap());
                b = balance(b.div_exact(&pi).unwrap());
                common += 1;
            }
            (0, _) => a = balance(a.div_exact(&pi).unwrap()),
            (_, 0) => b = balance(b.div_exact(&pi).unwrap()),
            _ => {
                let ua = &normalizing_unit(ra) * &a;
                let vb = &normalizing_unit(rb) * &b;
                let diff = (0..5)
                    .map(|k| &ua - &vb.mul_omega_pow(2 * k))
                    .min_by_key(|d| d.gauss_complexity())
                    .unwrap();
                if a.abs_norm() <= b.abs_norm() {
                    b = diff;
                } else {
                    a = diff;
                }
            }
        }
    }
}
