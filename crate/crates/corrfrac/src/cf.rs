//! The generalized continued fraction model: correction states, convergents
//! via the canonical recurrence, MC-point detection, the simplified form,
//! and high-precision evaluation.

use crate::error::{Error, Result};
use crate::hp::{self, Hp};
use crate::poly::Poly;
use crate::ratfn::{collapse_cf, RatFn};
use crate::rational::{format_rat, rat_int, Rat};
use num_traits::Zero;
use std::fmt;

/// One solved correction layer.
#[derive(Clone, Debug, PartialEq)]
pub enum Layer {
    /// κ / (x + λ)
    TypeI { kappa: Rat, lambda: Rat },
    /// κ / (x² + l1·x + l2)
    TypeII { kappa: Rat, l1: Rat, l2: Rat },
}

impl Layer {
    pub fn kappa(&self) -> &Rat {
        match self {
            Layer::TypeI { kappa, .. } | Layer::TypeII { kappa, .. } => kappa,
        }
    }

    /// The partial denominator polynomial of this layer.
    pub fn denominator(&self) -> Poly {
        match self {
            Layer::TypeI { lambda, .. } => {
                Poly::from_coeffs(vec![lambda.clone(), rat_int(1)])
            }
            Layer::TypeII { l1, l2, .. } => {
                Poly::from_coeffs(vec![l2.clone(), l1.clone(), rat_int(1)])
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CfKind {
    TypeI,
    TypeII,
}

impl fmt::Display for CfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfKind::TypeI => write!(f, "Type-I"),
            CfKind::TypeII => write!(f, "Type-II"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// κ for the next layer solved to zero; the structure cannot improve
    /// the rate further.
    KappaZero,
    /// Neither Type-I nor Type-II can zero the next coefficient.
    StructureExhausted,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StopReason::KappaZero => write!(f, "kappa zero"),
            StopReason::StructureExhausted => write!(f, "structure exhausted"),
        }
    }
}

/// Φ₀ plus the ladder of correction layers for one function.
#[derive(Clone, Debug)]
pub struct CorrectionState {
    pub label: String,
    pub nu: u32,
    /// Monic, degree ν.
    pub phi0: Poly,
    /// None until the first layer fixes the shape.
    pub kind: Option<CfKind>,
    pub layers: Vec<Layer>,
    pub stopped: Option<StopReason>,
    /// Set when a λ-solve had to fall back to the 0-valued tie-break.
    pub tie_break_used: bool,
}

impl CorrectionState {
    pub fn new(label: &str, nu: u32, phi0: Poly) -> Self {
        CorrectionState {
            label: label.to_string(),
            nu,
            phi0,
            kind: None,
            layers: Vec::new(),
            stopped: None,
            tie_break_used: false,
        }
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    fn denom_layers(&self) -> Vec<(Rat, Poly)> {
        self.layers
            .iter()
            .map(|l| (l.kappa().clone(), l.denominator()))
            .collect()
    }

    /// Φ₀(x) + MC_k(x) collapsed into one rational function.
    pub fn collapsed(&self) -> Result<RatFn> {
        collapse_cf(&self.phi0, &self.denom_layers())
    }

    /// Exact value of CF_k(f) = 1/(Φ₀ + MC_k) at a rational point.
    pub fn approx_at(&self, x: &Rat) -> Result<Rat> {
        let d = self
            .collapsed()?
            .eval(x)
            .ok_or(Error::ZeroDenominator)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(d.recip())
    }
}

/// MC-point: the common shift ω that makes every partial denominator a
/// function of x̂ = x + ω alone.
#[derive(Clone, Debug, PartialEq)]
pub struct McPoint {
    pub omega: Rat,
}

/// Detects the MC-point. Needs at least two layers: one λ value cannot
/// witness constancy.
pub fn detect_mc_point(state: &CorrectionState) -> Option<McPoint> {
    if state.layers.len() < 2 {
        return None;
    }
    match state.layers[0] {
        Layer::TypeI { ref lambda, .. } => {
            let b = lambda.clone();
            for l in &state.layers {
                match l {
                    Layer::TypeI { lambda, .. } if *lambda == b => {}
                    _ => return None,
                }
            }
            Some(McPoint { omega: b })
        }
        Layer::TypeII { ref l1, .. } => {
            let b = l1.clone();
            for l in &state.layers {
                match l {
                    Layer::TypeII { l1, .. } if *l1 == b => {}
                    _ => return None,
                }
            }
            Some(McPoint {
                omega: b / rat_int(2),
            })
        }
    }
}

/// Rewrites the state in the shifted variable x̂ = x + ω. Type-II layer
/// constants become d = l2 − l1²/4; evaluating the result at x̂ − ω gives
/// back the original value.
pub fn to_simplified_form(state: &CorrectionState, mc: &McPoint) -> CorrectionState {
    let omega = &mc.omega;
    let phi0 = state.phi0.shift(&(-omega.clone()));
    let layers = state
        .layers
        .iter()
        .map(|l| match l {
            Layer::TypeI { kappa, lambda } => Layer::TypeI {
                kappa: kappa.clone(),
                lambda: lambda - omega,
            },
            Layer::TypeII { kappa, l1, l2 } => Layer::TypeII {
                kappa: kappa.clone(),
                l1: l1 - omega * rat_int(2),
                l2: l2 - l1 * omega + omega * omega,
            },
        })
        .collect();
    CorrectionState {
        label: format!("{}^", state.label),
        nu: state.nu,
        phi0,
        kind: state.kind,
        layers,
        stopped: state.stopped.clone(),
        tie_break_used: state.tie_break_used,
    }
}

/// b₀ + K_{n≥1}(a_n / b_n) with polynomial partial numerators and
/// denominators, stored as an explicit finite prefix.
#[derive(Clone, Debug)]
pub struct GeneralizedCf {
    pub b0: RatFn,
    pub a: Vec<RatFn>,
    pub b: Vec<RatFn>,
}

impl GeneralizedCf {
    pub fn new(b0: RatFn, a: Vec<RatFn>, b: Vec<RatFn>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Other(
                "partial numerator and denominator lists differ in length".into(),
            ));
        }
        if a.iter().any(|f| f.is_zero()) {
            return Err(Error::Other("partial numerators must be nonzero".into()));
        }
        Ok(GeneralizedCf { b0, a, b })
    }

    /// Builds from index rules, keeping `len` fraction terms.
    pub fn from_rules(
        b0: RatFn,
        len: usize,
        a_rule: impl Fn(usize) -> RatFn,
        b_rule: impl Fn(usize) -> RatFn,
    ) -> Result<Self> {
        let a = (1..=len).map(&a_rule).collect();
        let b = (1..=len).map(&b_rule).collect();
        GeneralizedCf::new(b0, a, b)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// n-th convergent A_n/B_n as an exact rational function, via
    /// A_{n+2} = b_{n+2}A_{n+1} + a_{n+2}A_n (and likewise for B) with
    /// A₀ = b₀, B₀ = 1, A₁ = b₀b₁ + a₁, B₁ = b₁.
    pub fn convergent(&self, n: usize) -> Result<RatFn> {
        if n > self.len() {
            return Err(Error::Other(format!(
                "convergent {n} beyond stored length {}",
                self.len()
            )));
        }
        let mut a_prev = RatFn::constant(rat_int(1)); // A_{-1}
        let mut a_cur = self.b0.clone(); // A_0
        let mut b_prev = RatFn::constant(rat_int(0)); // B_{-1}
        let mut b_cur = RatFn::constant(rat_int(1)); // B_0
        for i in 0..n {
            let an = &self.a[i];
            let bn = &self.b[i];
            let a_next = bn.mul(&a_cur).add(&an.mul(&a_prev));
            let b_next = bn.mul(&b_cur).add(&an.mul(&b_prev));
            a_prev = a_cur;
            a_cur = a_next;
            b_prev = b_cur;
            b_cur = b_next;
        }
        if b_cur.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFn::new(
            a_cur.numerator() * b_cur.denominator(),
            b_cur.numerator() * a_cur.denominator(),
        )
    }

    /// Backward (tail-first) evaluation of the depth-truncated fraction in
    /// high precision. An intermediate denominator whose magnitude falls
    /// below 2^(−2p) is reported as a singular evaluation.
    pub fn eval(&self, x: &Hp, depth: usize, p: usize) -> Result<Hp> {
        if depth > self.len() {
            return Err(Error::Other(format!(
                "depth {depth} beyond stored length {}",
                self.len()
            )));
        }
        let threshold = -2 * (p as i64);
        let eval_ratfn = |f: &RatFn| -> Result<Hp> {
            let num = eval_poly_hp(f.numerator(), x, p);
            let den = eval_poly_hp(f.denominator(), x, p);
            if den.is_zero() || hp::exponent(&den).map_or(true, |e| (e as i64) < threshold) {
                return Err(Error::SingularEvaluation {
                    depth: 0,
                    threshold,
                });
            }
            Ok(hp::div(&num, &den, p))
        };
        let mut tail = hp::zero(p);
        for i in (0..depth).rev() {
            let a = eval_ratfn(&self.a[i])?;
            let b = eval_ratfn(&self.b[i])?;
            let den = hp::add(&b, &tail, p);
            if den.is_zero() || hp::exponent(&den).map_or(true, |e| (e as i64) < threshold) {
                return Err(Error::SingularEvaluation {
                    depth: i + 1,
                    threshold,
                });
            }
            tail = hp::div(&a, &den, p);
        }
        Ok(hp::add(&eval_ratfn(&self.b0)?, &tail, p))
    }
}

fn eval_poly_hp(poly: &Poly, x: &Hp, p: usize) -> Hp {
    let mut acc = hp::zero(p);
    for c in poly.coeffs().iter().rev() {
        acc = hp::add(&hp::mul(&acc, x, p), &hp::from_rat(c, p), p);
    }
    acc
}

/// The CF view of a correction state: b₀ = Φ₀, layer j contributes
/// a = κ_j and b = its partial denominator. CF_k(f) itself is the
/// reciprocal of this fraction's value.
pub fn state_to_cf(state: &CorrectionState) -> Result<GeneralizedCf> {
    GeneralizedCf::new(
        RatFn::from_poly(state.phi0.clone()),
        state
            .layers
            .iter()
            .map(|l| RatFn::constant(l.kappa().clone()))
            .collect(),
        state
            .layers
            .iter()
            .map(|l| RatFn::from_poly(l.denominator()))
            .collect(),
    )
}

/// 1/(Φ₀ + MC_k) evaluated numerically through the CF structure.
pub fn eval_cf_approx(state: &CorrectionState, x: &Hp, p: usize) -> Result<Hp> {
    let cf = state_to_cf(state)?;
    let v = cf.eval(x, cf.len(), p)?;
    if v.is_zero() {
        return Err(Error::SingularEvaluation {
            depth: 0,
            threshold: 0,
        });
    }
    Ok(hp::div(&hp::from_u64(1, p), &v, p))
}

pub fn format_layer(l: &Layer) -> String {
    match l {
        Layer::TypeI { kappa, lambda } => {
            format!("kappa={} lambda={}", format_rat(kappa), format_rat(lambda))
        }
        Layer::TypeII { kappa, l1, l2 } => format!(
            "kappa={} lambda1={} lambda2={}",
            format_rat(kappa),
            format_rat(l1),
            format_rat(l2)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn convergent_first_level() {
        // b0=1, a1=1, b1=2 -> A1/B1 = (1*2+1)/2 = 3/2
        let cf = GeneralizedCf::new(
            RatFn::constant(rat_int(1)),
            vec![RatFn::constant(rat_int(1))],
            vec![RatFn::constant(rat_int(2))],
        )
        .unwrap();
        let c = cf.convergent(1).unwrap();
        assert_eq!(c.eval(&rat_int(0)).unwrap(), rat(3, 2));
    }

    #[test]
    fn convergent_matches_nested_evaluation() {
        // 4/(5 + 1/(10 + 9/10)) evaluated both ways
        let cf = GeneralizedCf::new(
            RatFn::constant(rat_int(0)),
            vec![
                RatFn::constant(rat_int(4)),
                RatFn::constant(rat_int(1)),
                RatFn::constant(rat_int(9)),
            ],
            vec![
                RatFn::constant(rat_int(5)),
                RatFn::constant(rat_int(10)),
                RatFn::constant(rat_int(10)),
            ],
        )
        .unwrap();
        let c = cf.convergent(3).unwrap().eval(&rat_int(0)).unwrap();
        let nested = rat_int(4) / (rat_int(5) + rat_int(1) / (rat_int(10) + rat(9, 10)));
        assert_eq!(c, nested);
    }

    #[test]
    fn convergent_agrees_with_collapse() {
        let phi = Poly::from_coeffs(vec![rat(1, 4), rat_int(1)]);
        let mut state = CorrectionState::new("t", 1, phi);
        state.layers.push(Layer::TypeI {
            kappa: rat(1, 32),
            lambda: rat(1, 4),
        });
        state.layers.push(Layer::TypeI {
            kappa: rat(9, 64),
            lambda: rat(1, 4),
        });
        let via_collapse = state.collapsed().unwrap();
        let via_recurrence = state_to_cf(&state).unwrap().convergent(2).unwrap();
        assert_eq!(via_collapse, via_recurrence);
    }

    #[test]
    fn mc_point_detection() {
        let phi = Poly::from_coeffs(vec![rat(1, 4), rat_int(1)]);
        let mut state = CorrectionState::new("t", 1, phi);
        state.layers.push(Layer::TypeI {
            kappa: rat(1, 32),
            lambda: rat(1, 4),
        });
        assert_eq!(detect_mc_point(&state), None); // one layer is not evidence
        state.layers.push(Layer::TypeI {
            kappa: rat(9, 64),
            lambda: rat(1, 4),
        });
        assert_eq!(
            detect_mc_point(&state),
            Some(McPoint { omega: rat(1, 4) })
        );
        state.layers.push(Layer::TypeI {
            kappa: rat(25, 64),
            lambda: rat(1, 3),
        });
        assert_eq!(detect_mc_point(&state), None);
    }

    #[test]
    fn type_ii_mc_point_is_half_b() {
        let phi = Poly::from_coeffs(vec![rat(2, 27), rat(1, 3), rat_int(1)]);
        let mut state = CorrectionState::new("t", 2, phi);
        for _ in 0..2 {
            state.layers.push(Layer::TypeII {
                kappa: rat(-4, 729),
                l1: rat(1, 3),
                l2: rat(46, 81),
            });
        }
        assert_eq!(
            detect_mc_point(&state),
            Some(McPoint { omega: rat(1, 6) })
        );
    }

    #[test]
    fn simplified_form_preserves_value() {
        let phi = Poly::from_coeffs(vec![rat(1, 4), rat_int(1)]);
        let mut state = CorrectionState::new("t", 1, phi);
        for k in [rat(1, 32), rat(9, 64)] {
            state.layers.push(Layer::TypeI {
                kappa: k,
                lambda: rat(1, 4),
            });
        }
        let mc = detect_mc_point(&state).unwrap();
        let simp = to_simplified_form(&state, &mc);
        // layers lose their shifts
        for l in &simp.layers {
            match l {
                Layer::TypeI { lambda, .. } => assert!(lambda.is_zero()),
                _ => panic!("expected Type-I"),
            }
        }
        // evaluating the simplified state at x̂ = x + ω matches the original at x
        for xv in [rat_int(2), rat(7, 2), rat_int(5)] {
            let orig = state.approx_at(&xv).unwrap();
            let shifted = simp.approx_at(&(&xv + &mc.omega)).unwrap();
            assert_eq!(orig, shifted);
        }
    }

    #[test]
    fn simplified_form_type_ii_constant() {
        // d = l2 - l1^2/4
        let phi = Poly::from_coeffs(vec![rat(2, 27), rat(1, 3), rat_int(1)]);
        let mut state = CorrectionState::new("t", 2, phi);
        for _ in 0..2 {
            state.layers.push(Layer::TypeII {
                kappa: rat(-4, 729),
                l1: rat(1, 3),
                l2: rat(46, 81),
            });
        }
        let mc = detect_mc_point(&state).unwrap();
        let simp = to_simplified_form(&state, &mc);
        match &simp.layers[0] {
            Layer::TypeII { l1, l2, .. } => {
                assert!(l1.is_zero());
                assert_eq!(l2, &(rat(46, 81) - rat(1, 36))); // 175/324
                assert_eq!(l2, &rat(175, 324));
            }
            _ => panic!("expected Type-II"),
        }
        // identity case: omega = 0 leaves the state unchanged
        let id = to_simplified_form(&state, &McPoint { omega: rat_int(0) });
        assert_eq!(id.phi0, state.phi0);
        assert_eq!(id.layers, state.layers);
    }

    #[test]
    fn eval_depth_zero_brouncker() {
        let phi = Poly::from_coeffs(vec![rat(1, 4), rat_int(1)]);
        let state = CorrectionState::new("t", 1, phi);
        let p = 128;
        let v = eval_cf_approx(&state, &hp::from_u64(1, p), p).unwrap();
        assert!((hp::to_f64(&v) - 0.8).abs() < 1e-15);
    }
}
