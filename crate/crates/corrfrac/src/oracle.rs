//! Independent high-precision ground truth.
//!
//! ln Γ is computed by lifting the argument with the recurrence
//! Γ(x+1) = xΓ(x) until the Stirling/Binet tail series (exact Bernoulli
//! coefficients) converges below the target, which keeps this oracle
//! entirely independent of the correction machinery it is used to audit.

use crate::cf::CorrectionState;
use crate::error::{Error, Result};
use crate::funcspec::FunctionSpec;
use crate::hp::{self, Hp};
use crate::rational::{binomial, rat, rat_int, Int, Rat};
use num_traits::{One, Signed, Zero};
use std::sync::Mutex;
use std::sync::OnceLock;

/// Guard bits added to every requested precision.
const GUARD: usize = 64;

fn bernoulli_cache() -> &'static Mutex<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rat::one()]))
}

/// Exact Bernoulli number B_n (B₁ = −1/2 convention), via the defining
/// recurrence Σ_k C(n+1, k) B_k = 0.
pub fn bernoulli(n: usize) -> Rat {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache");
    while cache.len() <= n {
        let m = cache.len();
        let mut acc = Rat::zero();
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc = acc + Rat::from_integer(binomial(m + 1, k)) * b;
            }
        }
        let value = -acc / Rat::from_integer(binomial(m + 1, m));
        cache.push(value);
    }
    cache[n].clone()
}

/// ln Γ(x) for x > 0 with error below 2^(−(p+32)).
pub fn ln_gamma(x: &Hp, p: usize) -> Result<Hp> {
    let pw = p + GUARD;
    if x.is_zero() || !matches!(x.sign(), Some(astro_float::Sign::Pos)) {
        return Err(Error::NonPositiveArgument(format!("{x}")));
    }
    // lift until t is large enough that the Binet tail reaches 2^-(pw+8):
    // the minimal term of the divergent tail is ~e^(-2*pi*t)
    let t_min = (0.1104 * (pw as f64 + 16.0)).ceil() + 4.0;
    let xf = hp::to_f64(x);
    let lift = if xf.is_finite() && xf < t_min {
        (t_min - xf).ceil() as u64
    } else {
        0
    };
    let t = hp::add(x, &hp::from_u64(lift, pw), pw);

    // Binet: (t - 1/2) ln t - t + ln(2*pi)/2 + sum B_2j / (2j(2j-1) t^(2j-1))
    let ln_t = hp::ln(&t, pw)?;
    let half = hp::from_rat(&rat(1, 2), pw);
    let mut acc = hp::mul(&hp::sub(&t, &half, pw), &ln_t, pw);
    acc = hp::sub(&acc, &t, pw);
    let ln_2pi = ln_two_pi(pw)?;
    acc = hp::add(&acc, &hp::mul(&ln_2pi, &half, pw), pw);

    let t2 = hp::mul(&t, &t, pw);
    let mut tpow = t.clone(); // t^(2j-1)
    let floor = -((pw + 8) as i64);
    let mut prev_exp = i64::MAX;
    for j in 1..=(pw / 2 + 16) {
        let b = bernoulli(2 * j);
        let coeff = b / rat_int((2 * j * (2 * j - 1)) as i64);
        let term = hp::div(&hp::from_rat(&coeff, pw), &tpow, pw);
        let e = hp::exponent(&term).map_or(i64::MIN, |e| e as i64);
        if e < floor {
            break;
        }
        // the asymptotic tail starts diverging once terms grow again
        if e > prev_exp {
            return Err(Error::Other(
                "binet tail failed to converge below target (lift too small)".into(),
            ));
        }
        prev_exp = e;
        acc = hp::add(&acc, &term, pw);
        tpow = hp::mul(&tpow, &t2, pw);
    }

    // undo the lift: ln Γ(x) = ln Γ(x + lift) - Σ ln(x + i)
    for i in 0..lift {
        let xi = hp::add(x, &hp::from_u64(i, pw), pw);
        acc = hp::sub(&acc, &hp::ln(&xi, pw)?, pw);
    }
    let mut out = acc;
    out.set_precision(p, astro_float::RoundingMode::ToEven)
        .expect("precision");
    Ok(out)
}

pub fn ln_two_pi(p: usize) -> Result<Hp> {
    let two_pi = hp::mul(&hp::pi(p + 8), &hp::from_u64(2, p + 8), p + 8);
    hp::ln(&two_pi, p)
}

/// ln f(x) = Σ e_i ln Γ(x+a_i) + s·x(ln x − 1) + (s/2)·ln 2π + ln c.
pub fn ln_f(spec: &FunctionSpec, x: &Rat, p: usize) -> Result<Hp> {
    let pw = p + GUARD;
    let mut acc = hp::zero(pw);
    for f in &spec.gamma_factors {
        let arg = x + &f.shift;
        if !arg.is_positive() {
            return Err(Error::NonPositiveArgument(format!("{arg}")));
        }
        let lg = ln_gamma(&hp::from_rat(&arg, pw), pw)?;
        acc = hp::add(&acc, &hp::mul(&lg, &hp::from_i64(f.exponent, pw), pw), pw);
    }
    let s = spec.stirling_power;
    if s != 0 {
        let xh = hp::from_rat(x, pw);
        let lnx = hp::ln(&xh, pw)?;
        let sx = hp::mul(&hp::from_i64(s, pw), &xh, pw);
        acc = hp::add(
            &acc,
            &hp::mul(&sx, &hp::sub(&lnx, &hp::from_u64(1, pw), pw), pw),
            pw,
        );
        let half_s = hp::from_rat(&rat(s, 2), pw);
        acc = hp::add(&acc, &hp::mul(&half_s, &ln_two_pi(pw)?, pw), pw);
    }
    if !spec.c.is_one() {
        if !spec.c.is_positive() {
            return Err(Error::NonPositiveArgument(format!("c = {}", spec.c)));
        }
        acc = hp::add(&acc, &hp::ln(&hp::from_rat(&spec.c, pw), pw)?, pw);
    }
    let mut out = acc;
    out.set_precision(p, astro_float::RoundingMode::ToEven)
        .expect("precision");
    Ok(out)
}

/// f(x) itself.
pub fn eval_f(spec: &FunctionSpec, x: &Rat, p: usize) -> Result<Hp> {
    Ok(hp::exp(&ln_f(spec, x, p + 32)?, p))
}

/// Load-time sanity check: x^ν f(x) ≈ c at x = 10⁴.
pub fn validate_limit(spec: &FunctionSpec, p: usize) -> Result<()> {
    let x = rat_int(10_000);
    let f = eval_f(spec, &x, p)?;
    let scaled = hp::mul(&f, &hp::powi(&hp::from_rat(&x, p), spec.nu as usize, p), p);
    let c = hp::from_rat(&spec.c, p);
    let rel = hp::div(&hp::sub(&scaled, &c, p), &c, p);
    // x^nu f = c (1 + O(1/x)); at 10^4 demand 1e-3 closeness
    if hp::to_f64(&hp::abs(&rel)) > 1e-3 {
        return Err(Error::SpecRejected {
            label: spec.label.clone(),
            reason: format!(
                "x^nu f(x) at x = 10^4 is {} away from c = {}; nu or c is mis-declared",
                hp::to_f64(&hp::abs(&rel)),
                spec.c
            ),
        });
    }
    Ok(())
}

/// Ω_n = π^{n/2} / Γ(n/2 + 1), through the exact half-integer closed
/// forms (no ln Γ involved): even n = 2m gives π^m/m!, and odd n = 2m+1
/// gives π^m · 4^{m+1}(m+1)!/(2m+2)! — the √π of π^{n/2} cancels the one
/// in Γ(m + 3/2).
pub fn unit_ball_volume(n: u32, p: usize) -> Hp {
    let pw = p + 32;
    let m = (n / 2) as usize;
    let pi_m = hp::powi(&hp::pi(pw), m, pw);
    let value = if n % 2 == 0 {
        hp::div(&pi_m, &hp::from_int(&factorial(m), pw), pw)
    } else {
        let num = Int::from(4).pow((m + 1) as u32) * factorial(m + 1);
        let q = Rat::new(num, factorial(2 * m + 2));
        hp::mul(&pi_m, &hp::from_rat(&q, pw), pw)
    };
    let mut out = value;
    out.set_precision(p, astro_float::RoundingMode::ToEven)
        .expect("precision");
    out
}

fn factorial(n: usize) -> Int {
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}

/// E_k(x) = ln(f(x) · (Φ₀ + MC_k)(x) / c): the correction relative error.
///
/// The denominator polynomial value is computed exactly at the rational
/// point before entering floating point.
pub fn relative_error(
    spec: &FunctionSpec,
    state: &CorrectionState,
    x: &Rat,
    p: usize,
) -> Result<Hp> {
    let pw = p + GUARD;
    let d = state
        .collapsed()?
        .eval(x)
        .ok_or(Error::ZeroDenominator)?;
    if !d.is_positive() {
        return Err(Error::NonPositiveArgument(format!(
            "Phi0 + MC_k = {d} at x = {x}"
        )));
    }
    let mut acc = hp::add(&ln_f(spec, x, pw)?, &hp::ln(&hp::from_rat(&d, pw), pw)?, pw);
    if !spec.c.is_one() {
        acc = hp::sub(&acc, &hp::ln(&hp::from_rat(&spec.c, pw), pw)?, pw);
    }
    let mut out = acc;
    out.set_precision(p, astro_float::RoundingMode::ToEven)
        .expect("precision");
    Ok(out)
}

/// Γ(m + 1/2) = (2m)!/(4^m m!) √π — exact rational times √π, used to
/// cross-check `eval_f` on the half-integer grid.
pub fn gamma_half_integer_ratio(m: usize) -> Rat {
    Rat::new(factorial(2 * m), Int::from(4).pow(m as u32) * factorial(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspec::known;
    use std::cmp::Ordering;

    fn close(a: &Hp, b: &Hp, p: usize, slack: i32) -> bool {
        let d = hp::abs(&hp::sub(a, b, p));
        if d.is_zero() {
            return true;
        }
        let scale = hp::exponent(b).unwrap_or(0);
        hp::exponent(&d).map_or(true, |e| e < scale - (p as i32) + slack)
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), Rat::one());
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert!(bernoulli(7).is_zero());
    }

    #[test]
    fn ln_gamma_at_one_and_two() {
        let p = 256;
        for v in [1u64, 2] {
            let r = ln_gamma(&hp::from_u64(v, p), p).unwrap();
            assert!(
                hp::exponent(&hp::abs(&r)).map_or(true, |e| e < -(p as i32) + 40),
                "ln_gamma({v}) should be 0, got {r}"
            );
        }
    }

    #[test]
    fn ln_gamma_half() {
        let p = 256;
        // Γ(1/2) = √π
        let r = ln_gamma(&hp::from_rat(&rat(1, 2), p), p).unwrap();
        let expected = hp::mul(
            &hp::ln(&hp::pi(p), p).unwrap(),
            &hp::from_rat(&rat(1, 2), p),
            p,
        );
        assert!(close(&r, &expected, p, 48));
    }

    #[test]
    fn ln_gamma_three_halves() {
        let p = 256;
        // Γ(3/2) = √π/2
        let r = ln_gamma(&hp::from_rat(&rat(3, 2), p), p).unwrap();
        let half_ln_pi = hp::mul(
            &hp::ln(&hp::pi(p), p).unwrap(),
            &hp::from_rat(&rat(1, 2), p),
            p,
        );
        let expected = hp::sub(&half_ln_pi, &hp::ln(&hp::from_u64(2, p), p).unwrap(), p);
        assert!(close(&r, &expected, p, 48));
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        let p = 128;
        assert!(ln_gamma(&hp::zero(p), p).is_err());
        assert!(ln_gamma(&hp::from_i64(-2, p), p).is_err());
    }

    #[test]
    fn brouncker_f_at_one_is_pi_over_four() {
        let p = 256;
        let f = eval_f(&known::brouncker(), &rat_int(1), p).unwrap();
        let expected = hp::div(&hp::pi(p), &hp::from_u64(4, p), p);
        assert!(close(&f, &expected, p, 48));
    }

    #[test]
    fn brouncker_f_matches_factorial_form() {
        let p = 256;
        let spec = known::brouncker();
        for n in [1usize, 2, 5, 12, 20] {
            let f = eval_f(&spec, &rat_int(n as i64), p).unwrap();
            // pi * ((2n)!/(4^n n!^2))^2
            let r = gamma_half_integer_ratio(n) / Rat::from_integer(factorial(n));
            let expected = hp::mul(&hp::pi(p), &hp::powi(&hp::from_rat(&r, p), 2, p), p);
            assert!(close(&f, &expected, p, 48), "n = {n}");
        }
    }

    #[test]
    fn unit_ball_small_dimensions() {
        let p = 192;
        assert_eq!(
            hp::cmp(&unit_ball_volume(0, p), &hp::from_u64(1, p)).unwrap(),
            Ordering::Equal
        );
        assert!(close(&unit_ball_volume(2, p), &hp::pi(p), p, 16));
        let four_thirds_pi = hp::mul(&hp::pi(p), &hp::from_rat(&rat(4, 3), p), p);
        assert!(close(&unit_ball_volume(3, p), &four_thirds_pi, p, 16));
    }

    #[test]
    fn ramanujan_limit_validates() {
        validate_limit(&known::ramanujan(), 192).unwrap();
        validate_limit(&known::brouncker(), 192).unwrap();
    }
}
