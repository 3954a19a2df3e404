//! Declarative description of the target function f(x).
//!
//! f(x) = A · (x/e)^{s·x} · Π_i Γ(x + a_i)^{e_i}, where the prefactor
//! A = c·(2π)^{s/2} is implied so that lim x^ν f(x) = c. For pure gamma
//! products (s = 0) the exponents must sum to zero and then ν = −Σ e_i a_i
//! with c = 1.
//!
//! The ratio ln f(x) − ln f(x+1) is a plain power series in 1/x exactly
//! when Σ e_i + s = 0 (the ln x parts cancel); specs violating that are
//! rejected at construction.

use crate::error::{Error, Result};
use crate::rational::{is_integer, rat_int, Rat};
use crate::series::{log1p_over_x, stirling_kernel, Series};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct GammaFactor {
    /// Shift a in Γ(x + a).
    pub shift: Rat,
    /// Integer exponent e of the factor.
    pub exponent: i64,
}

#[derive(Clone, Debug)]
pub struct FunctionSpec {
    pub label: String,
    pub gamma_factors: Vec<GammaFactor>,
    /// s in the (x/e)^{s·x} factor; 0 for pure gamma products.
    pub stirling_power: i64,
    /// The order of decay: lim x^ν f(x) = c with ν ≥ 1.
    pub nu: u32,
    /// The limit constant c.
    pub c: Rat,
}

impl FunctionSpec {
    /// Pure gamma product: Π Γ(x+a_i)^{e_i} with Σ e_i = 0 and c = 1.
    pub fn pure_gamma(label: &str, factors: Vec<GammaFactor>) -> Result<Self> {
        Self::new(label, factors, 0, None, None)
    }

    /// General constructor. `nu`/`c` may be declared; both are checked
    /// against the exact formula ν = −Σ e_i·a_i − s/2 when it applies.
    pub fn new(
        label: &str,
        factors: Vec<GammaFactor>,
        stirling_power: i64,
        nu: Option<u32>,
        c: Option<Rat>,
    ) -> Result<Self> {
        let reject = |reason: String| Error::SpecRejected {
            label: label.to_string(),
            reason,
        };
        if factors.is_empty() {
            return Err(reject("no gamma factors".into()));
        }
        let e_sum: i64 = factors.iter().map(|f| f.exponent).sum();
        if e_sum + stirling_power != 0 {
            return Err(reject(format!(
                "ln x does not cancel: sum of exponents {e_sum} plus stirling power {stirling_power} must be 0"
            )));
        }
        for f in &factors {
            if f.exponent == 0 {
                return Err(reject(format!("gamma factor {} has exponent 0", f.shift)));
            }
        }
        // nu = -sum e_i a_i - s/2, valid for both pure-gamma and Stirling-type specs
        let mut nu_exact = -factors
            .iter()
            .fold(Rat::zero(), |acc, f| acc + &f.shift * rat_int(f.exponent));
        nu_exact -= Rat::new(stirling_power.into(), 2.into());
        let derived = if is_integer(&nu_exact) && nu_exact.is_positive() {
            Some(nu_exact.numer().to_string().parse::<u32>().ok())
        } else {
            None
        }
        .flatten();
        let nu = match (nu, derived) {
            (Some(n), Some(d)) if n == d => n,
            (Some(n), Some(d)) => {
                return Err(reject(format!("declared nu = {n} but factors imply nu = {d}")))
            }
            (Some(n), None) => n,
            (None, Some(d)) => d,
            (None, None) => {
                return Err(reject(format!(
                    "cannot derive a positive integer nu (got {nu_exact}); declare nu explicitly"
                )))
            }
        };
        let c = c.unwrap_or_else(Rat::one);
        if c.is_zero() {
            return Err(reject("limit constant c must be nonzero".into()));
        }
        if stirling_power == 0 && !c.is_one() {
            return Err(reject("pure gamma products have c = 1".into()));
        }
        Ok(FunctionSpec {
            label: label.to_string(),
            gamma_factors: factors,
            stirling_power,
            nu,
            c,
        })
    }

    /// ln f(x) − ln f(x+1), exact to order L:
    /// −Σ e_i ln(1 + a_i/x) − s·ln(1 + 1/x) + s·K(x)
    /// with K the Stirling kernel 1 − x ln(1 + 1/x).
    pub fn log_f_ratio(&self, trunc: usize) -> Series {
        let mut acc = Series::zero(trunc);
        for f in &self.gamma_factors {
            if f.shift.is_zero() {
                continue; // ln(1 + 0/x) = 0
            }
            let term = log1p_over_x(&f.shift, trunc).scale(&rat_int(-f.exponent));
            acc = acc.add(&term);
        }
        let s = self.stirling_power;
        if s != 0 {
            acc = acc.add(&log1p_over_x(&Rat::one(), trunc).scale(&rat_int(-s)));
            acc = acc.add(&stirling_kernel(trunc).scale(&rat_int(s)));
        }
        acc
    }

    /// The spec for 1/f: all exponents and the power factor negated.
    /// Its decay order is −ν, so the engine normalizes through this
    /// before running corrections.
    pub fn reciprocal(&self) -> FunctionSpec {
        FunctionSpec {
            label: format!("reciprocal({})", self.label),
            gamma_factors: self
                .gamma_factors
                .iter()
                .map(|f| GammaFactor {
                    shift: f.shift.clone(),
                    exponent: -f.exponent,
                })
                .collect(),
            stirling_power: -self.stirling_power,
            nu: self.nu,
            c: self.c.clone(),
        }
    }
}

/// Builders for the functions exercised throughout the test suite.
pub mod known {
    use super::*;
    use crate::rational::rat;

    fn gf(shift: Rat, exponent: i64) -> GammaFactor {
        GammaFactor { shift, exponent }
    }

    /// Γ²(x+1/2)/Γ²(x+1), ν = 1.
    pub fn brouncker() -> FunctionSpec {
        FunctionSpec::pure_gamma("brouncker", vec![gf(rat(1, 2), 2), gf(rat_int(1), -2)]).unwrap()
    }

    /// 8π³ (x/e)^{6x} Γ⁻⁶(x+1), ν = 3, c = 1.
    pub fn ramanujan() -> FunctionSpec {
        FunctionSpec::new(
            "ramanujan",
            vec![gf(rat_int(1), -6)],
            6,
            Some(3),
            Some(Rat::one()),
        )
        .unwrap()
    }

    /// Γ⁴(x+1/4)/Γ⁴(x+1), ν = 3.
    pub fn gamma4_quarter() -> FunctionSpec {
        FunctionSpec::pure_gamma("example1", vec![gf(rat(1, 4), 4), gf(rat_int(1), -4)]).unwrap()
    }

    /// Γ³(x+1/3)/Γ³(x+1), ν = 2 (Type-II ladder).
    pub fn gamma3_13() -> FunctionSpec {
        FunctionSpec::pure_gamma("gamma3_13", vec![gf(rat(1, 3), 3), gf(rat_int(1), -3)]).unwrap()
    }

    /// Γ³(x+2/3)/Γ³(x+1), ν = 1.
    pub fn gamma3_23() -> FunctionSpec {
        FunctionSpec::pure_gamma("gamma3_23", vec![gf(rat(2, 3), 3), gf(rat_int(1), -3)]).unwrap()
    }

    /// Γ³(x+1/3)/Γ³(x+2/3), ν = 1 (the bracketing target of the
    /// odd/even truncation corollary).
    pub fn gamma3_13_23() -> FunctionSpec {
        FunctionSpec::pure_gamma("gamma3_13_23", vec![gf(rat(1, 3), 3), gf(rat(2, 3), -3)])
            .unwrap()
    }

    /// G_η = Γ(x+η)Γ(x+1−η)/Γ²(x+1), ν = 1, for rational 0 < η < 1.
    pub fn g_eta(eta: &Rat) -> Result<FunctionSpec> {
        if !eta.is_positive() || *eta >= Rat::one() {
            return Err(Error::SpecRejected {
                label: "g_eta".into(),
                reason: format!("eta must lie in (0,1), got {eta}"),
            });
        }
        FunctionSpec::pure_gamma(
            "g_eta",
            vec![
                gf(eta.clone(), 1),
                gf(Rat::one() - eta, 1),
                gf(rat_int(1), -2),
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::known::*;
    use super::*;
    use crate::rational::rat;

    #[test]
    fn nu_derivation() {
        assert_eq!(brouncker().nu, 1);
        assert_eq!(ramanujan().nu, 3);
        assert_eq!(gamma4_quarter().nu, 3);
        assert_eq!(gamma3_13().nu, 2);
        assert_eq!(gamma3_23().nu, 1);
        assert_eq!(g_eta(&rat(1, 3)).unwrap().nu, 1);
    }

    #[test]
    fn cancellation_violation_rejected() {
        let bad = FunctionSpec::pure_gamma(
            "bad",
            vec![GammaFactor {
                shift: rat(1, 2),
                exponent: 2,
            }],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn declared_nu_mismatch_rejected() {
        let r = FunctionSpec::new(
            "bad",
            vec![
                GammaFactor {
                    shift: rat(1, 2),
                    exponent: 2,
                },
                GammaFactor {
                    shift: rat_int(1),
                    exponent: -2,
                },
            ],
            0,
            Some(2),
            None,
        );
        assert!(r.is_err());
    }

    #[test]
    fn brouncker_log_ratio_is_shifted_square() {
        // ln((x+1)^2/(x+1/2)^2) = 2 ln(1+1/x) - 2 ln(1+1/(2x))
        let s = brouncker().log_f_ratio(6);
        let expected = log1p_over_x(&rat_int(1), 6)
            .scale(&rat_int(2))
            .sub(&log1p_over_x(&rat(1, 2), 6).scale(&rat_int(2)));
        assert_eq!(s, expected);
    }

    #[test]
    fn g_eta_third_log_ratio() {
        // ln((x+1)^2/((x+1/3)(x+2/3)))
        let s = g_eta(&rat(1, 3)).unwrap().log_f_ratio(6);
        let expected = log1p_over_x(&rat_int(1), 6)
            .scale(&rat_int(2))
            .sub(&log1p_over_x(&rat(1, 3), 6))
            .sub(&log1p_over_x(&rat(2, 3), 6));
        assert_eq!(s, expected);
    }

    #[test]
    fn ramanujan_log_ratio_is_six_kernels() {
        // the gamma part cancels against the -s*ln(1+1/x) term, leaving 6K(x)
        let s = ramanujan().log_f_ratio(6);
        assert_eq!(s, stirling_kernel(6).scale(&rat_int(6)));
        assert_eq!(s.coeff(1), rat_int(3));
    }
}
