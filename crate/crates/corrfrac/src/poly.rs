//! Dense univariate polynomials with exact rational coefficients.
//!
//! Degrees stay small here (Φ and the layer denominators are at most a
//! handful of terms), so dense storage in ascending-degree order is the
//! right shape. The leading coefficient is nonzero unless the polynomial
//! is zero.

use crate::error::{Error, Result};
use crate::rational::{binomial, rat_gcd, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    /// Coefficients by ascending degree; the last entry is nonzero.
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// c · x^d.
    pub fn monomial(c: Rat, d: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); d + 1];
        coeffs[d] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// q with q(x) = p(x + h), by exact binomial expansion.
    pub fn shift(&self, h: &Rat) -> Poly {
        if h.is_zero() || self.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = vec![Rat::zero(); n];
        // h^k cache
        let mut hpow = vec![Rat::one()];
        for _ in 1..n {
            hpow.push(hpow.last().unwrap() * h);
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..=i {
                let term = c * Rat::from_integer(binomial(i, j)) * &hpow[i - j];
                out[j] = &out[j] + term;
            }
        }
        Poly::from_coeffs(out)
    }

    /// gcd of the coefficients (positive), zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        rat_gcd(&self.coeffs)
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lc = self.leading_coeff();
        Ok(self.scale(&lc.recip()))
    }

    pub fn has_positive_leading(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_positive())
    }
}

/// Newton divided-difference interpolation through the given points
/// (abscissae must be distinct). Exact.
pub fn interpolate(points: &[(Rat, Rat)]) -> Poly {
    let n = points.len();
    if n == 0 {
        return Poly::zero();
    }
    // divided-difference coefficients
    let mut table: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    let mut coeffs = vec![table[0].clone()];
    for level in 1..n {
        for i in 0..(n - level) {
            let dx = &points[i + level].0 - &points[i].0;
            table[i] = (&table[i + 1] - &table[i]) / dx;
        }
        coeffs.push(table[0].clone());
    }
    // expand sum_k coeffs[k] * prod_{j<k} (x - x_j)
    let mut acc = Poly::zero();
    let mut basis = Poly::one();
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            let root = &points[k - 1].0;
            basis = &basis * &Poly::from_coeffs(vec![-root.clone(), Rat::one()]);
        }
        acc = &acc + &basis.scale(c);
    }
    acc
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", crate::rational::format_rat(&a))?;
            }
            match i {
                0 => {}
                1 => {
                    if show_coeff {
                        write!(f, "*x")?;
                    } else {
                        write!(f, "x")?;
                    }
                }
                _ => {
                    if show_coeff {
                        write!(f, "*x^{i}")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(cs: &[(i64, i64)]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(1, 1), (1, 1)]); // x+1
        let b = p(&[(-1, 1), (1, 1)]); // x-1
        assert_eq!(&a * &b, p(&[(-1, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn add_zero_is_identity() {
        let a = p(&[(1, 4), (1, 1)]);
        assert_eq!(&a + &Poly::zero(), a);
    }

    #[test]
    fn square_of_x_plus_quarter() {
        let a = p(&[(1, 4), (1, 1)]);
        // (x+1/4)^2 = x^2 + x/2 + 1/16
        assert_eq!(&a * &a, p(&[(1, 16), (1, 2), (1, 1)]));
    }

    #[test]
    fn shift_x_squared() {
        let a = p(&[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(a.shift(&rat(1, 1)), p(&[(1, 1), (2, 1), (1, 1)]));
    }

    #[test]
    fn shift_linear_by_one() {
        // x + 1/4 shifted by 1 -> x + 5/4
        let a = p(&[(1, 4), (1, 1)]);
        assert_eq!(a.shift(&rat(1, 1)), p(&[(5, 4), (1, 1)]));
    }

    #[test]
    fn shift_ramanujan_phi0() {
        // x^3 + x^2/2 + x/8 + 1/240 shifted by 1 -> x^3 + 7x^2/2 + 33x/8 + 391/240
        let a = p(&[(1, 240), (1, 8), (1, 2), (1, 1)]);
        let b = p(&[(391, 240), (33, 8), (7, 2), (1, 1)]);
        assert_eq!(a.shift(&rat(1, 1)), b);
    }

    #[test]
    fn shift_roundtrip() {
        let a = p(&[(3, 7), (0, 1), (-2, 5), (1, 1)]);
        assert_eq!(a.shift(&rat(1, 1)).shift(&rat(-1, 1)), a);
    }

    #[test]
    fn display_readable() {
        let a = p(&[(9, 1024), (13, 128), (3, 8), (1, 1)]);
        assert_eq!(format!("{a}"), "x^3 + 3/8*x^2 + 13/128*x + 9/1024");
    }
}
