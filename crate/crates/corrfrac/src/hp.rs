//! Arbitrary-precision binary floating point, wrapped behind a small
//! precision-explicit surface.
//!
//! Every operation takes the working precision in bits and rounds to
//! nearest-even; error per operation is ≤ 1 ulp at that precision.
//! Backed by astro-float. `pow` with a general exponent is deliberately
//! not exposed (integer powers go through `powi`, everything else through
//! exp/ln).

use crate::error::{Error, Result};
use crate::rational::{Int, Rat};
use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_traits::{Signed, Zero};
use std::cell::RefCell;
use std::cmp::Ordering;

pub type Hp = BigFloat;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

pub fn zero(p: usize) -> Hp {
    BigFloat::from_u8(0, p)
}

pub fn from_u64(v: u64, p: usize) -> Hp {
    BigFloat::from_u64(v, p)
}

pub fn from_i64(v: i64, p: usize) -> Hp {
    BigFloat::from_i64(v, p)
}

pub fn from_f64(v: f64, p: usize) -> Hp {
    BigFloat::from_f64(v, p)
}

/// Exact conversion of a big integer (values this crate feeds in always
/// fit the exponent range).
pub fn from_int(v: &Int, p: usize) -> Hp {
    if v.is_zero() {
        return zero(p);
    }
    let (sign, digits) = v.clone().into_parts();
    let words = digits.to_u64_digits();
    let s = if sign == num_bigint::Sign::Minus {
        Sign::Neg
    } else {
        Sign::Pos
    };
    let e = (words.len() * 64) as i64;
    assert!(e <= i32::MAX as i64, "integer too large for exponent range");
    let mut out = BigFloat::from_words(&words, s, e as i32);
    let pw = p.max(words.len() * 64);
    out.set_precision(pw, RM).expect("precision");
    out
}

/// Correctly-rounded-to-1ulp conversion of an exact rational.
pub fn from_rat(q: &Rat, p: usize) -> Hp {
    if q.is_zero() {
        return zero(p);
    }
    let num = q.numer();
    let den = q.denom();
    let nbits = num.abs().bits() as i64;
    let dbits = den.bits() as i64;
    // scale so the quotient carries p + 8 significant bits
    let shift = (p as i64 + 8) + dbits - nbits;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num << shift as usize, den.clone())
    } else {
        (num.clone(), den << (-shift) as usize)
    };
    // round-half-away division
    let half: Int = &scaled_den / 2;
    let adj = if scaled_num.is_negative() { -half } else { half };
    let m = (scaled_num + adj) / scaled_den;
    let mut out = from_int(&m, p + 64);
    if let Some(e) = out.exponent() {
        out.set_exponent(e - shift as i32);
    }
    out.set_precision(p, RM).expect("precision");
    out
}

pub fn add(a: &Hp, b: &Hp, p: usize) -> Hp {
    a.add(b, p, RM)
}

pub fn sub(a: &Hp, b: &Hp, p: usize) -> Hp {
    a.sub(b, p, RM)
}

pub fn mul(a: &Hp, b: &Hp, p: usize) -> Hp {
    a.mul(b, p, RM)
}

pub fn div(a: &Hp, b: &Hp, p: usize) -> Hp {
    a.div(b, p, RM)
}

pub fn neg(a: &Hp) -> Hp {
    a.neg()
}

pub fn abs(a: &Hp) -> Hp {
    a.abs()
}

pub fn ln(a: &Hp, p: usize) -> Result<Hp> {
    if !matches!(a.sign(), Some(Sign::Pos)) || a.is_zero() {
        return Err(Error::NonPositiveArgument(format!("{a}")));
    }
    Ok(CONSTS.with(|cc| a.ln(p, RM, &mut cc.borrow_mut())))
}

pub fn exp(a: &Hp, p: usize) -> Hp {
    CONSTS.with(|cc| a.exp(p, RM, &mut cc.borrow_mut()))
}

pub fn sqrt(a: &Hp, p: usize) -> Hp {
    a.sqrt(p, RM)
}

pub fn powi(a: &Hp, n: usize, p: usize) -> Hp {
    a.powi(n, p, RM)
}

pub fn pi(p: usize) -> Hp {
    CONSTS.with(|cc| cc.borrow_mut().pi(p, RM))
}

/// x^q for positive x and rational q, via exp(q·ln x).
pub fn pow_rat(a: &Hp, q: &Rat, p: usize) -> Result<Hp> {
    let pw = p + 32;
    let l = ln(a, pw)?;
    Ok(exp(&mul(&l, &from_rat(q, pw), pw), p))
}

/// Total order, treating NaN as an error. Infinities compare normally.
pub fn cmp(a: &Hp, b: &Hp) -> Result<Ordering> {
    let s = a.cmp(b).ok_or(Error::NonFinite)?;
    Ok(s.cmp(&0))
}

pub fn is_nan(a: &Hp) -> bool {
    a.is_nan()
}

/// Binary exponent of the value, None for zero/NaN; |x| ∈ [2^(e−1), 2^e).
pub fn exponent(a: &Hp) -> Option<i32> {
    if a.is_zero() || a.is_nan() || a.is_inf() {
        None
    } else {
        a.exponent()
    }
}

/// Nearest f64 (used only for report rendering and slope fits).
pub fn to_f64(a: &Hp) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    if a.is_nan() {
        return f64::NAN;
    }
    if a.is_inf() {
        return if matches!(a.sign(), Some(Sign::Neg)) {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    let e = a.exponent().expect("finite value") as f64;
    let words = a.mantissa_digits().expect("finite value");
    // top two words give 128 mantissa bits, more than f64 needs
    let n = words.len();
    let mut mant = words[n - 1] as f64;
    if n >= 2 {
        mant += words[n - 2] as f64 / 2f64.powi(64);
    }
    let signum = if matches!(a.sign(), Some(Sign::Neg)) {
        -1.0
    } else {
        1.0
    };
    signum * mant * 2f64.powf(e - 64.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rational_conversion_exact_dyadic() {
        let p = 192;
        let x = from_rat(&rat(7, 4), p);
        assert_eq!(to_f64(&x), 1.75);
    }

    #[test]
    fn rational_conversion_third() {
        let p = 192;
        let x = from_rat(&rat(1, 3), p);
        let three = from_u64(3, p);
        let one = from_u64(1, p);
        let err = abs(&sub(&mul(&x, &three, p), &one, p));
        assert!(exponent(&err).map_or(true, |e| e < -(p as i32) + 8));
    }

    #[test]
    fn big_integer_roundtrip() {
        let p = 256;
        let n: Int = "123456789012345678901234567890123456789".parse().unwrap();
        let x = from_int(&n, p);
        let back = from_rat(&Rat::from_integer(n), p);
        assert_eq!(cmp(&x, &back).unwrap(), Ordering::Equal);
    }

    #[test]
    fn exp_ln_roundtrip() {
        let p = 256;
        let x = from_f64(37.25, p);
        let y = exp(&ln(&x, p).unwrap(), p);
        let err = abs(&sub(&y, &x, p));
        assert!(exponent(&err).map_or(true, |e| e < -(p as i32) + 24));
    }

    #[test]
    fn pow_rat_cube_root() {
        let p = 192;
        let x = from_u64(8, p);
        let r = pow_rat(&x, &rat(1, 3), p).unwrap();
        let err = abs(&sub(&r, &from_u64(2, p), p));
        assert!(exponent(&err).map_or(true, |e| e < -(p as i32) + 24));
    }

    #[test]
    fn to_f64_small_and_negative() {
        let p = 128;
        assert!((to_f64(&from_f64(-1.5e-7, p)) + 1.5e-7).abs() < 1e-20);
    }

    #[test]
    fn ln_rejects_nonpositive() {
        let p = 128;
        assert!(ln(&from_i64(-3, p), p).is_err());
        assert!(ln(&zero(p), p).is_err());
    }
}
