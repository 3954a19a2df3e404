//! Truncated asymptotic series in powers of 1/x with exact coefficients.
//!
//! A `Series` is Σ_{j=j0}^{L} c_j x^{-j} + O(x^{-(L+1)}). Everything is
//! exact rational arithmetic; series with a genuine ln x term are
//! unrepresentable and the constructors that would produce one reject
//! their input instead.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::rational::{rat, Rat};
use num_traits::Zero;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Series {
    /// First stored order j0 ≥ 0.
    start: usize,
    /// Coefficients for x^{-start} .. x^{-trunc}; may hold leading zeros.
    coeffs: Vec<Rat>,
    /// Last exactly-known order L.
    trunc: usize,
}

impl Series {
    /// The zero series with truncation L.
    pub fn zero(trunc: usize) -> Self {
        Series {
            start: trunc + 1,
            coeffs: Vec::new(),
            trunc,
        }
    }

    /// Builds from coefficients for x^{-start}, x^{-(start+1)}, …
    pub fn new(start: usize, coeffs: Vec<Rat>, trunc: usize) -> Self {
        assert!(
            start + coeffs.len() == trunc + 1 || (coeffs.is_empty() && start == trunc + 1),
            "coefficient list must span start..=trunc"
        );
        let mut s = Series {
            start,
            coeffs,
            trunc,
        };
        s.normalize();
        s
    }

    /// c · x^{-j}.
    pub fn monomial(c: Rat, j: usize, trunc: usize) -> Self {
        assert!(j <= trunc);
        let mut coeffs = vec![Rat::zero(); trunc - j + 1];
        coeffs[0] = c;
        Series::new(j, coeffs, trunc)
    }

    fn normalize(&mut self) {
        while let Some(first) = self.coeffs.first() {
            if first.is_zero() {
                self.coeffs.remove(0);
                self.start += 1;
            } else {
                break;
            }
        }
        if self.coeffs.is_empty() {
            self.start = self.trunc + 1;
        }
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    /// Coefficient of x^{-j}; zero below start, panics past the truncation.
    pub fn coeff(&self, j: usize) -> Rat {
        assert!(j <= self.trunc, "coefficient beyond truncation order");
        if j < self.start {
            Rat::zero()
        } else {
            self.coeffs[j - self.start].clone()
        }
    }

    /// Index of the first nonzero coefficient, or None when every stored
    /// coefficient vanishes ("beyond truncation").
    pub fn order(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.start + i)
    }

    pub fn is_zero_to_truncation(&self) -> bool {
        self.order().is_none()
    }

    /// Lowers the truncation order.
    pub fn truncate(&self, trunc: usize) -> Series {
        if trunc >= self.trunc {
            return self.clone();
        }
        let coeffs = if self.start > trunc {
            Vec::new()
        } else {
            self.coeffs[..=(trunc - self.start)].to_vec()
        };
        Series::new(self.start.min(trunc + 1), coeffs, trunc)
    }

    pub fn neg(&self) -> Series {
        Series {
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            trunc: self.trunc,
        }
    }

    pub fn scale(&self, s: &Rat) -> Series {
        if s.is_zero() {
            return Series::zero(self.trunc);
        }
        Series {
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            trunc: self.trunc,
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let trunc = self.trunc.min(other.trunc);
        let start = self.start.min(other.start).min(trunc + 1);
        let mut coeffs = vec![Rat::zero(); trunc + 1 - start];
        for (j, c) in coeffs.iter_mut().enumerate() {
            let ord = start + j;
            let mut v = Rat::zero();
            if ord >= self.start && ord <= self.trunc {
                v = v + self.coeff(ord);
            }
            if ord >= other.start && ord <= other.trunc {
                v = v + other.coeff(ord);
            }
            *c = v;
        }
        Series::new(start, coeffs, trunc)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    /// Product; the O-term bookkeeping tightens the truncation to
    /// min(L₁ + j0₂, L₂ + j0₁).
    pub fn mul(&self, other: &Series) -> Series {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            // 0·O(x^-(L+1)) is still only known to the partner's window
            let trunc = (self.trunc + other.start).min(other.trunc + self.start);
            return Series::zero(trunc.min(self.trunc.max(other.trunc)));
        }
        let trunc = (self.trunc + other.start).min(other.trunc + self.start);
        let start = self.start + other.start;
        if start > trunc {
            return Series::zero(trunc);
        }
        let mut coeffs = vec![Rat::zero(); trunc + 1 - start];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let ord = self.start + i + other.start + j;
                if ord > trunc {
                    break;
                }
                coeffs[ord - start] = &coeffs[ord - start] + a * b;
            }
        }
        Series::new(start, coeffs, trunc)
    }

    /// ln(1 + s) = s − s²/2 + s³/3 − …, truncated exactly.
    ///
    /// Requires start order ≥ 1; a constant term would put a divergent
    /// (ln-type) part into the result.
    pub fn log1p(&self) -> Result<Series> {
        if self.start == 0 && !self.coeffs.first().map_or(true, |c| c.is_zero()) {
            return Err(Error::SeriesConstantTerm);
        }
        let trunc = self.trunc;
        if self.is_zero_to_truncation() {
            return Ok(Series::zero(trunc));
        }
        let mut acc = Series::zero(trunc);
        let mut pow = self.truncate(trunc);
        let mut k = 1i64;
        loop {
            if pow.order().map_or(true, |o| o > trunc) {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&pow.scale(&rat(sign, k)).truncate(trunc));
            if (k as usize) >= trunc {
                break;
            }
            pow = pow.mul(self).truncate(trunc);
            k += 1;
        }
        Ok(acc.truncate(trunc))
    }
}

/// ln p(x) − ln p(x+1) as a series in 1/x.
///
/// Writes p(x) = lc·x^d·(1 + u(1/x)); the x^d and lc parts cancel between
/// the two logs, so the result starts at order ≥ 1.
pub fn log_shift_ratio_poly(p: &Poly, trunc: usize) -> Result<Series> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.has_positive_leading() {
        return Err(Error::NonPositiveLeading(format!("{p}")));
    }
    let shifted = p.shift(&Rat::from_integer(1.into()));
    let u = tail_series(p, trunc);
    let v = tail_series(&shifted, trunc);
    Ok(u.log1p()?.sub(&v.log1p()?))
}

/// The u with p(x) = lc·x^d·(1 + u(1/x)).
fn tail_series(p: &Poly, trunc: usize) -> Series {
    let d = p.degree().expect("nonzero polynomial");
    let lc = p.leading_coeff();
    let mut coeffs = vec![Rat::zero(); trunc];
    for j in 1..=trunc {
        if j <= d {
            coeffs[j - 1] = p.coeff(d - j) / &lc;
        }
    }
    Series::new(1, coeffs, trunc)
}

/// ln r(x) − ln r(x+1) for a rational function r = P/Q.
pub fn log_shift_ratio_ratfn(r: &RatFn, trunc: usize) -> Result<Series> {
    let a = log_shift_ratio_poly(r.numerator(), trunc)?;
    let b = log_shift_ratio_poly(r.denominator(), trunc)?;
    Ok(a.sub(&b))
}

/// K(x) = 1 − x·ln(1 + 1/x) = Σ_{j≥1} (−1)^{j+1}/(j+1) · x^{-j}.
pub fn stirling_kernel(trunc: usize) -> Series {
    let coeffs = (1..=trunc)
        .map(|j| {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            rat(sign, (j + 1) as i64)
        })
        .collect();
    Series::new(1, coeffs, trunc)
}

/// ln(1 + a/x) as a series (Mercator), truncated at `trunc`.
pub fn log1p_over_x(a: &Rat, trunc: usize) -> Series {
    Series::monomial(a.clone(), 1, trunc)
        .log1p()
        .expect("start order is 1")
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_to_truncation() {
            return write!(f, "O(x^-{})", self.trunc + 1);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})x^-{}", crate::rational::format_rat(c), self.start + i)?;
            first = false;
        }
        write!(f, " + O(x^-{})", self.trunc + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn add_cancels() {
        let a = Series::monomial(rat_int(1), 1, 5);
        let b = Series::monomial(rat_int(-1), 1, 5);
        assert!(a.add(&b).is_zero_to_truncation());
    }

    #[test]
    fn mul_orders_add() {
        let a = Series::monomial(rat_int(1), 1, 5);
        let p = a.mul(&a);
        assert_eq!(p.order(), Some(2));
        assert_eq!(p.coeff(2), rat_int(1));
        // O-term: (x^-1 + O(x^-6))^2 is exact through x^-6
        assert_eq!(p.truncation(), 6);
    }

    #[test]
    fn square_of_two_terms() {
        // (1/x - 1/(2x^2))^2 = 1/x^2 - 1/x^3 + 1/(4x^4)
        let s = Series::new(1, vec![rat_int(1), rat(-1, 2), Rat::zero(), Rat::zero()], 4);
        let sq = s.mul(&s).truncate(4);
        assert_eq!(sq.coeff(2), rat_int(1));
        assert_eq!(sq.coeff(3), rat_int(-1));
        assert_eq!(sq.coeff(4), rat(1, 4));
    }

    #[test]
    fn log1p_of_zero() {
        assert!(Series::zero(6).log1p().unwrap().is_zero_to_truncation());
    }

    #[test]
    fn log1p_mercator() {
        let s = Series::monomial(rat_int(1), 1, 3);
        let l = s.log1p().unwrap();
        assert_eq!(l.coeff(1), rat_int(1));
        assert_eq!(l.coeff(2), rat(-1, 2));
        assert_eq!(l.coeff(3), rat(1, 3));
    }

    #[test]
    fn log1p_mercator_quarter() {
        let l = log1p_over_x(&rat(1, 4), 4);
        assert_eq!(l.coeff(1), rat(1, 4));
        assert_eq!(l.coeff(2), rat(-1, 32));
        assert_eq!(l.coeff(3), rat(1, 192));
    }

    #[test]
    fn log1p_rejects_constant_term() {
        let s = Series::new(0, vec![rat_int(1), rat_int(1)], 1);
        assert!(matches!(s.log1p(), Err(Error::SeriesConstantTerm)));
    }

    #[test]
    fn log_shift_of_x() {
        // ln(x/(x+1)) = -1/x + 1/(2x^2) - 1/(3x^3) + ...
        let l = log_shift_ratio_poly(&Poly::x(), 4).unwrap();
        assert_eq!(l.coeff(1), rat_int(-1));
        assert_eq!(l.coeff(2), rat(1, 2));
        assert_eq!(l.coeff(3), rat(-1, 3));
    }

    #[test]
    fn log_shift_of_x_plus_quarter() {
        let p = Poly::from_coeffs(vec![rat(1, 4), rat_int(1)]);
        let l = log_shift_ratio_poly(&p, 4).unwrap();
        assert_eq!(l.coeff(1), rat_int(-1));
        assert_eq!(l.coeff(2), rat(3, 4));
    }

    #[test]
    fn log_shift_multiplicative() {
        // log_shift(p*q) = log_shift(p) + log_shift(q)
        let p = Poly::from_coeffs(vec![rat(1, 3), rat_int(1)]);
        let q = Poly::from_coeffs(vec![rat(2, 7), rat_int(2), rat_int(1)]);
        let lhs = log_shift_ratio_poly(&(&p * &q), 8).unwrap();
        let rhs = log_shift_ratio_poly(&p, 8)
            .unwrap()
            .add(&log_shift_ratio_poly(&q, 8).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn log_shift_identity_ratfn() {
        let p = Poly::from_coeffs(vec![rat(5, 3), rat_int(2), rat_int(1)]);
        let r = RatFn::new(p.clone(), p).unwrap();
        let l = log_shift_ratio_ratfn(&r, 6).unwrap();
        assert!(l.is_zero_to_truncation());
    }

    #[test]
    fn stirling_kernel_coefficients() {
        let k = stirling_kernel(6);
        assert_eq!(k.coeff(1), rat(1, 2));
        assert_eq!(k.coeff(2), rat(-1, 3));
        assert_eq!(k.coeff(3), rat(1, 4));
        assert_eq!(k.coeff(4), rat(-1, 5));
    }

    #[test]
    fn order_reporting() {
        assert_eq!(Series::zero(10).order(), None);
        let s = Series::monomial(rat_int(5), 4, 8);
        assert_eq!(s.order(), Some(4));
    }
}
