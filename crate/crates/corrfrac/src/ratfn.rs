//! Rational functions P(x)/Q(x) over the exact rationals.
//!
//! The denominator is normalized monic, and both parts are divided by the
//! numerator content when it grows, which keeps coefficients small without
//! ever computing a polynomial gcd (equality is decided by
//! cross-multiplication instead).

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rat;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let lc = den.leading_coeff();
        let mut num = num.scale(&lc.recip());
        let mut den = den.scale(&lc.recip());
        // keep integers small; content of the numerator is divided out of both
        let content = num.content();
        if !content.is_zero() && !content.is_one() {
            let inv = content.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
            // restore the monic denominator
            let lc = den.leading_coeff();
            num = num.scale(&lc.recip());
            den = den.scale(&lc.recip());
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// None when the denominator vanishes at x.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn add_poly(&self, p: &Poly) -> RatFn {
        RatFn::new(&self.num + &(p * &self.den), self.den.clone())
            .expect("denominator unchanged and nonzero")
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RatFn::new(num, den).expect("product of nonzero denominators")
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of nonzero denominators")
    }

    /// κ / self; errors if self is the zero function.
    pub fn recip_scaled(&self, kappa: &Rat) -> Result<RatFn> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFn::new(self.den.scale(kappa), self.num.clone())
    }
}

/// Equality by cross-multiplication: a/b = c/d iff a·d = c·b.
impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.leading_coeff().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Collapses Φ₀(x) + K_j(κ_j / d_j(x)) bottom-up into one rational function.
///
/// Matches the convergent of the same prefix computed by the canonical
/// A/B recurrence (cross-checked in tests).
pub fn collapse_cf(phi0: &Poly, layers: &[(Rat, Poly)]) -> Result<RatFn> {
    let mut tail = RatFn::from_poly(Poly::zero());
    for (kappa, d) in layers.iter().rev() {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let den = tail.add_poly(d);
        tail = den.recip_scaled(kappa)?;
    }
    Ok(tail.add_poly(phi0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn linear(c: Rat) -> Poly {
        Poly::from_coeffs(vec![c, Rat::one()])
    }

    #[test]
    fn collapse_no_layers() {
        let phi = linear(rat(1, 4));
        let r = collapse_cf(&phi, &[]).unwrap();
        assert_eq!(r.numerator(), &phi);
        assert_eq!(r.denominator(), &Poly::one());
    }

    #[test]
    fn collapse_one_layer_brouncker() {
        // (x+1/4) + (1/32)/(x+1/4) = ((x+1/4)^2 + 1/32) / (x+1/4)
        let phi = linear(rat(1, 4));
        let r = collapse_cf(&phi, &[(rat(1, 32), linear(rat(1, 4)))]).unwrap();
        let num = &(&phi * &phi) + &Poly::constant(rat(1, 32));
        let expected = RatFn::new(num, phi).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn collapse_two_layers_matches_fraction_arithmetic() {
        let phi = linear(rat(1, 4));
        let layers = [
            (rat(1, 32), linear(rat(1, 4))),
            (rat(9, 64), linear(rat(1, 4))),
        ];
        let r = collapse_cf(&phi, &layers).unwrap();
        // independent bottom-up fraction arithmetic at sample points
        for xv in [rat_int(1), rat_int(2), rat(7, 3), rat_int(10)] {
            let d1 = phi.eval(&xv) + rat(9, 64) / phi.eval(&xv);
            let expected = phi.eval(&xv) + rat(1, 32) / d1;
            assert_eq!(r.eval(&xv).unwrap(), expected);
        }
    }

    #[test]
    fn eval_none_at_pole() {
        let r = RatFn::new(Poly::one(), linear(rat(-2, 1))).unwrap();
        assert!(r.eval(&rat_int(2)).is_none());
        assert!(r.eval(&rat_int(3)).is_some());
    }

    #[test]
    fn zero_layer_denominator_rejected() {
        let phi = linear(rat(1, 4));
        assert!(collapse_cf(&phi, &[(rat(1, 2), Poly::zero())]).is_err());
    }
}
