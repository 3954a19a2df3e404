//! Exact rational arithmetic: the substrate every other module builds on.
//!
//! `Rat` is an arbitrary-precision rational, always reduced, denominator
//! positive, arithmetic exact. Backed by `num_rational::BigRational`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

/// n/d as a `Rat`. Panics if d = 0 (construction-time misuse, not input).
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses an exact rational literal: `-11/1920`, `3`, `+1/4`.
///
/// Decimal points are rejected so no value silently loses precision.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if t.contains('.') || t.contains(['e', 'E']) {
        return Err(Error::Parse(format!(
            "decimal literal `{t}` rejected; use an exact fraction like 1/3"
        )));
    }
    let (num_s, den_s) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer `{num_s}` in rational literal")))?;
    let den: BigInt = den_s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer `{den_s}` in rational literal")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{t}`")));
    }
    Ok(Rat::new(num, den))
}

/// Canonical reduced form: `n/d`, or just `n` when d = 1.
pub fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Largest rational g > 0 such that every input is an integer multiple of g.
///
/// gcd of numerators over lcm of denominators; zero inputs are ignored.
/// Returns zero only if every input is zero.
pub fn rat_gcd(values: &[Rat]) -> Rat {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(v.numer());
        den_lcm = den_lcm.lcm(v.denom());
    }
    if num_gcd.is_zero() {
        return Rat::zero();
    }
    Rat::new(num_gcd, den_lcm)
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// True if q is an integer.
pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

/// Exact integer k-th root of a nonnegative integer, if one exists.
pub fn integer_root(n: &Int, k: u32) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["-11/1920", "3", "1/4", "0", "-7"] {
            let q = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&format_rat(&q)).unwrap(), q);
        }
    }

    #[test]
    fn parse_rejects_decimals_and_junk() {
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("1e3").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("a/b").is_err());
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("3/-6").unwrap(), rat(-1, 2));
    }

    #[test]
    fn gcd_over_rationals() {
        let vals = [rat(1, 2), rat_int(1), rat(3, 2)];
        assert_eq!(rat_gcd(&vals), rat(1, 2));
        let vals = [rat(4, 27), rat(32, 81)];
        assert_eq!(rat_gcd(&vals), rat(4, 81));
    }

    #[test]
    fn roots() {
        assert_eq!(integer_root(&Int::from(21952), 3), Some(Int::from(28)));
        assert_eq!(integer_root(&Int::from(10), 2), None);
    }
}
