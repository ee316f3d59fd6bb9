use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{binary_gcd, is_prime, tonelli_shanks, unit_dlog, DEFAULT_MR_ROUNDS};
use crate::error::NumberTheoryError;
use crate::rings::{ZOmega, ZTau};
use crate::rng::CompileRng;

/// Factors with multiplicities, as produced by [`easy_factor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList(pub Vec<(ZTau, u32)>);

impl FactorList {
    pub fn iter(&self) -> impl Iterator<Item = &(ZTau, u32)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `[{"factor": "2+0*t", "multiplicity": 2}, ...]`
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            factor: String,
            multiplicity: u32,
        }
        let entries: Vec<Entry> = self
            .iter()
            .map(|(f, m)| Entry {
                factor: f.to_string(),
                multiplicity: *m,
            })
            .collect();
        serde_json::to_value(entries).expect("plain data serializes")
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn positive(x: ZTau) -> ZTau {
    if x.signum() < 0 {
        -x
    } else {
        x
    }
}

/// Minimum-effort factorization: integer content, then one factor 2−τ.
///
/// The content `c = gcd(a, b)` must be `d²` or `5d²`; otherwise the whole of
/// `ξ` is returned as a single factor. Unit factors are dropped and every
/// emitted factor is made positive, so the product matches `ξ` only up to a
/// unit.
pub fn easy_factor(xi: &ZTau) -> FactorList {
    assert!(!xi.is_zero(), "easy_factor(0)");
    let c = xi.a.gcd(&xi.b);
    let xi1 = ZTau::new(&xi.a / &c, &xi.b / &c);
    let mut out = Vec::new();
    let push_content = |d: BigInt, out: &mut Vec<(ZTau, u32)>| {
        if !d.is_one() {
            out.push((ZTau::from_int(d), 2));
        }
    };
    if let Some(d) = exact_sqrt(&c) {
        push_content(d, &mut out);
    } else if let Some(d) = (&c % 5u32).is_zero().then(|| exact_sqrt(&(&c / 5u32))).flatten() {
        push_content(d, &mut out);
        out.push((ZTau::from_int(5), 1));
    } else {
        return FactorList(vec![(positive(xi.clone()), 1)]);
    }
    let two_minus_tau = ZTau::new(2, -1);
    if (xi1.norm() % 5u32).is_zero() {
        let xi2 = xi1.div_exact(&two_minus_tau).expect("N(ξ) ≡ 0 mod 5 implies (2−τ) | ξ");
        out.push((two_minus_tau, 1));
        if !xi2.is_unit() {
            out.push((positive(xi2), 1));
        }
    } else if !xi1.is_unit() {
        out.push((positive(xi1), 1));
    }
    FactorList(out)
}

/// True when every odd-multiplicity factor is 5 or has a prime norm p with
/// p mod 5 ∈ {0, 1}.
pub fn easy_solvable(fl: &FactorList, rng: &mut CompileRng) -> bool {
    let five = ZTau::from_int(5);
    fl.iter().all(|(xi, m)| {
        if m % 2 == 0 || *xi == five {
            return true;
        }
        let p = xi.norm();
        let r = p.mod_floor(&BigInt::from(5));
        (r.is_zero() || r.is_one()) && is_prime(&p, DEFAULT_MR_ROUNDS, rng)
    })
}

/// An integer M with M² ≡ τ − 2 modulo ξ, for ξ of odd prime norm.
pub fn splitting_root(xi: &ZTau, rng: &mut CompileRng) -> Result<BigInt, NumberTheoryError> {
    let p = xi.norm().abs();
    let b = xi.b.mod_floor(&p);
    if b.is_zero() {
        return Err(NumberTheoryError::Precondition(format!("b ≡ 0 mod N(ξ) for ξ = {xi}")));
    }
    // Modulo ξ, τ ≡ −a/b, so τ − 2 ≡ −a·b⁻¹ − 2.
    let b1 = b.modpow(&(&p - 2u32), &p);
    let n = (-&xi.a * b1 - 2u32).mod_floor(&p);
    tonelli_shanks(&n, &p, rng)
}

/// Solves N_i(x) = ξ for "easy" right-hand sides; `None` means UNSOLVED
/// (which does not prove that no solution exists).
pub fn solve_norm_equation(xi: &ZTau, rng: &mut CompileRng) -> Option<ZOmega> {
    if xi.is_zero() {
        return Some(ZOmega::zero());
    }
    if xi.signum() < 0 || xi.bullet().signum() < 0 {
        return None;
    }
    let fl = easy_factor(xi);
    if !easy_solvable(&fl, rng) {
        return None;
    }
    Some(solve_factored(xi, &fl, rng))
}

/// The solving half of [`solve_norm_equation`], for callers that already ran
/// [`easy_factor`] and [`easy_solvable`] on a totally positive ξ.
pub fn solve_factored(xi: &ZTau, fl: &FactorList, rng: &mut CompileRng) -> ZOmega {
    let five = ZTau::from_int(5);
    let mut x = ZOmega::one();
    for (xi_i, m) in fl.iter() {
        let xi_w = xi_i.to_zomega();
        x = &x * &xi_w.pow(m / 2);
        if m % 2 == 0 {
            continue;
        }
        if *xi_i == five {
            x = &x * &ZTau::new(1, 2).to_zomega();
        } else if xi_i.norm().abs() == BigInt::from(5) {
            // 2−τ or an associate: N_i(θ) = 2 − τ, the unit is fixed below
            x = &x * &ZOmega::theta();
        } else {
            let mroot = splitting_root(xi_i, rng).expect("easy factor has a splitting root");
            let y = binary_gcd(&xi_w, &(ZOmega::from_ztau(&ZTau::from_int(mroot)) - ZOmega::theta()));
            let u = xi_i.div_exact(&y.norm_i()).expect("N_i(gcd) divides the prime factor");
            let (s, k) = unit_dlog(&u).expect("quotient is a unit");
            if xi_i.is_totally_positive() {
                assert!(s == 1 && k % 2 == 0, "positive unit {u} = {s}·τ^{k}");
            }
            if s == 1 && k % 2 == 0 {
                x = &x * &ZTau::tau_pow(k / 2).to_zomega();
            }
            x = &x * &y;
        }
    }
    // Dropped unit factors and associates leave a totally positive unit.
    let residual = xi.div_exact(&x.norm_i()).expect("N_i(x) divides ξ up to a unit");
    let (s, k) = unit_dlog(&residual).expect("residual is a unit");
    assert!(s == 1 && k % 2 == 0, "residual unit {residual} = {s}·τ^{k}");
    x = &x * &ZTau::tau_pow(k / 2).to_zomega();
    debug_assert_eq!(x.norm_i(), *xi);
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rng() -> CompileRng {
        CompileRng::from_seed(5)
    }

    #[test]
    fn factor_examples() {
        let fl = easy_factor(&ZTau::new(760, -780));
        assert_eq!(
            fl.0,
            vec![
                (ZTau::from_int(2), 2),
                (ZTau::from_int(5), 1),
                (ZTau::new(2, -1), 1),
                (ZTau::new(15, -8), 1),
            ]
        );
        assert_eq!(easy_factor(&ZTau::from_int(4)).0, vec![(ZTau::from_int(2), 2)]);
        assert_eq!(easy_factor(&ZTau::from_int(3)).0, vec![(ZTau::from_int(3), 1)]);
    }

    #[test]
    fn solvability_examples() {
        let mut g = rng();
        assert!(easy_solvable(&easy_factor(&ZTau::new(760, -780)), &mut g));
        assert!(!easy_solvable(&FactorList(vec![(ZTau::from_int(7), 1)]), &mut g));
        assert!(easy_solvable(&FactorList(vec![(ZTau::new(123, 45), 2)]), &mut g));
    }

    #[test]
    fn splitting_root_example() {
        let m = splitting_root(&ZTau::new(15, -8), &mut rng()).unwrap();
        assert!(m == BigInt::from(63) || m == BigInt::from(218));
        // M² − (τ − 2) is divisible by ξ in Z[τ]
        let lhs = ZTau::from_int(&m * &m) - ZTau::new(-2, 1);
        assert!(lhs.div_exact(&ZTau::new(15, -8)).is_ok());
    }

    #[test]
    fn worked_example() {
        let xi = ZTau::new(760, -780);
        let x = solve_norm_equation(&xi, &mut rng()).unwrap();
        assert_eq!(x.norm_i(), xi);
        assert_eq!(x.conj().norm_i(), xi);
        let known = ZOmega::from_ztau(&ZTau::new(8, 6)) * ZOmega::new(12, -20, 15, -3);
        assert_eq!(known.norm_i(), xi);
    }

    #[test]
    fn small_cases() {
        let mut g = rng();
        let x = solve_norm_equation(&ZTau::from_int(5), &mut g).unwrap();
        assert_eq!(x.norm_i(), ZTau::from_int(5));
        assert_eq!(solve_norm_equation(&ZTau::new(-1, -1), &mut g), None);
        assert_eq!(solve_norm_equation(&ZTau::zero(), &mut g), Some(ZOmega::zero()));
        let x = solve_norm_equation(&ZTau::new(4, -4), &mut g).unwrap();
        assert_eq!(x.norm_i(), ZTau::new(4, -4));
    }

    #[test]
    fn inert_primes_are_not_easy() {
        // a² − ab − b² is never ≡ ±2 mod 5, so the only prime norms that fail
        // the residue test are p ≡ 4 mod 5.
        let mut g = rng();
        let mut seen = 0;
        for a in 1i64..200 {
            for b in -200i64..200 {
                let xi = ZTau::new(a, b);
                let r = xi.norm().mod_floor(&BigInt::from(5));
                assert!(r != BigInt::from(2) && r != BigInt::from(3));
                if r == BigInt::from(4) && is_prime(&xi.norm(), 20, &mut g) {
                    assert!(!easy_solvable(&FactorList(vec![(xi, 1)]), &mut g));
                    seen += 1;
                }
            }
        }
        assert!(seen > 100);
    }

    fn small() -> impl Strategy<Value = ZOmega> {
        let c = -30i64..=30;
        (c.clone(), c.clone(), c.clone(), c).prop_map(|(a, b, c, d)| ZOmega::new(a, b, c, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn never_returns_a_wrong_solution(z in small(), seed in any::<u64>()) {
            let xi = z.norm_i();
            let mut g = CompileRng::from_seed(seed);
            if let Some(x) = solve_norm_equation(&xi, &mut g) {
                prop_assert_eq!(x.norm_i(), xi);
            }
        }
    }
}
