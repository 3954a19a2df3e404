//! Coefficient-sequence analysis: common factors, linear recurrences with
//! constant inhomogeneity, parity/floor forms, modular decomposition, and
//! assembly of verified closed-form general terms.
//!
//! A fraction family like κ_m = −(1/2916)(3m+1)³(3m+2)³/(2m+1)² arrives
//! from the engine in lowest terms, so the first move is to clear the
//! index-dependent denominator with one of a small set of uniformizers
//! (the shapes that occur in these ladders), after which the common
//! factor and an integer-sequence fit do the rest. Fits are exact
//! interpolation plus verification on every input term, never regression.

use crate::cf::{CorrectionState, Layer};
use crate::error::{Error, Result};
use crate::funcspec::FunctionSpec;
use crate::poly::{interpolate, Poly};
use crate::rational::{format_rat, integer_root, rat_gcd, rat_int, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A small expression AST in the layer index m.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    Const(Rat),
    /// m itself.
    Index,
    /// ⌊m/2⌋.
    FloorHalf,
    /// (−1)^m.
    AltSign,
    Add(Box<ClosedForm>, Box<ClosedForm>),
    Sub(Box<ClosedForm>, Box<ClosedForm>),
    Mul(Box<ClosedForm>, Box<ClosedForm>),
    Div(Box<ClosedForm>, Box<ClosedForm>),
    Pow(Box<ClosedForm>, u32),
    Neg(Box<ClosedForm>),
}

impl ClosedForm {
    pub fn constant(q: Rat) -> Self {
        ClosedForm::Const(q)
    }

    pub fn int(n: i64) -> Self {
        ClosedForm::Const(rat_int(n))
    }

    pub fn add(a: ClosedForm, b: ClosedForm) -> Self {
        ClosedForm::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: ClosedForm, b: ClosedForm) -> Self {
        ClosedForm::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: ClosedForm, b: ClosedForm) -> Self {
        ClosedForm::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: ClosedForm, b: ClosedForm) -> Self {
        ClosedForm::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: ClosedForm, k: u32) -> Self {
        ClosedForm::Pow(Box::new(a), k)
    }

    /// Σ c_k m^k from ascending polynomial coefficients.
    pub fn from_poly(p: &Poly) -> Self {
        if p.is_zero() {
            return ClosedForm::int(0);
        }
        let mut acc: Option<ClosedForm> = None;
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => ClosedForm::Const(c.clone()),
                _ => {
                    let pw = if k == 1 {
                        ClosedForm::Index
                    } else {
                        ClosedForm::pow(ClosedForm::Index, k as u32)
                    };
                    if c.is_one() {
                        pw
                    } else {
                        ClosedForm::mul(ClosedForm::Const(c.clone()), pw)
                    }
                }
            };
            acc = Some(match acc {
                None => mono,
                Some(a) => ClosedForm::add(a, mono),
            });
        }
        acc.unwrap()
    }

    pub fn eval(&self, m: i64) -> Result<Rat> {
        Ok(match self {
            ClosedForm::Const(q) => q.clone(),
            ClosedForm::Index => rat_int(m),
            ClosedForm::FloorHalf => rat_int(m.div_euclid(2)),
            ClosedForm::AltSign => rat_int(if m.rem_euclid(2) == 0 { 1 } else { -1 }),
            ClosedForm::Add(a, b) => a.eval(m)? + b.eval(m)?,
            ClosedForm::Sub(a, b) => a.eval(m)? - b.eval(m)?,
            ClosedForm::Mul(a, b) => a.eval(m)? * b.eval(m)?,
            ClosedForm::Div(a, b) => {
                let d = b.eval(m)?;
                if d.is_zero() {
                    return Err(Error::ClosedFormZeroDivision(m));
                }
                a.eval(m)? / d
            }
            ClosedForm::Pow(a, k) => {
                let base = a.eval(m)?;
                num_traits::pow::pow(base, *k as usize)
            }
            ClosedForm::Neg(a) => -a.eval(m)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            ClosedForm::Add(..) | ClosedForm::Sub(..) => 1,
            ClosedForm::Mul(..) | ClosedForm::Div(..) => 2,
            ClosedForm::Neg(..) => 3,
            ClosedForm::Pow(..) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(f: &mut fmt::Formatter<'_>, x: &ClosedForm, min_prec: u8) -> fmt::Result {
            if x.precedence() < min_prec {
                write!(f, "(")?;
                write!(f, "{x}")?;
                write!(f, ")")
            } else {
                write!(f, "{x}")
            }
        }
        match self {
            ClosedForm::Const(q) => {
                if q.is_negative() || !q.denom().is_one() {
                    write!(f, "({})", format_rat(q))
                } else {
                    write!(f, "{}", format_rat(q))
                }
            }
            ClosedForm::Index => write!(f, "m"),
            ClosedForm::FloorHalf => write!(f, "floor(m/2)"),
            ClosedForm::AltSign => write!(f, "(-1)^m"),
            ClosedForm::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            ClosedForm::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            ClosedForm::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            ClosedForm::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 5)
            }
            ClosedForm::Pow(a, k) => {
                wrap(f, a, 5)?;
                write!(f, "^{k}")
            }
            ClosedForm::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
        }
    }
}

/// Sign-normalized common factor: the largest rational g (negative when
/// every term is negative) with seq = g × reduced and the reduced terms
/// integer with gcd 1. All terms must be nonzero.
pub fn extract_common_factor(seq: &[Rat]) -> Result<(Rat, Vec<Rat>)> {
    if seq.is_empty() {
        return Err(Error::Other("empty sequence".into()));
    }
    if seq.iter().any(|q| q.is_zero()) {
        return Err(Error::Other("zero term in sequence".into()));
    }
    let mut factor = rat_gcd(seq);
    if seq.iter().all(|q| q.is_negative()) {
        factor = -factor;
    }
    let reduced = seq.iter().map(|q| q / &factor).collect();
    Ok((factor, reduced))
}

/// Does the order-r forward difference (binomial signs) collapse to a
/// constant? Returns that constant and the verified degree-r polynomial
/// closed form. Indices start at `offset`.
pub fn fit_recurrence_const_rhs_at(
    seq: &[Rat],
    order: usize,
    offset: i64,
) -> Option<(Rat, ClosedForm)> {
    if seq.len() < order + 3 {
        return None;
    }
    let mut diffs = seq.to_vec();
    for _ in 0..order {
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let rhs = diffs[0].clone();
    if !diffs.iter().all(|d| *d == rhs) {
        return None;
    }
    let points: Vec<(Rat, Rat)> = seq
        .iter()
        .take(order + 1)
        .enumerate()
        .map(|(i, v)| (rat_int(offset + i as i64), v.clone()))
        .collect();
    let poly = interpolate(&points);
    for (i, v) in seq.iter().enumerate() {
        if poly.eval(&rat_int(offset + i as i64)) != *v {
            return None;
        }
    }
    Some((rhs, ClosedForm::from_poly(&poly)))
}

/// Spec-facing entry: sequence indexed from 0.
pub fn fit_recurrence_const_rhs(seq: &[Rat], order: usize) -> Option<(Rat, ClosedForm)> {
    fit_recurrence_const_rhs_at(seq, order, 0)
}

/// First differences alternating between two constants by the parity of
/// the index they step into: s_m − s_{m−1} = d_odd for odd m, d_even for
/// even m. Degenerate (equal) increments fit too.
pub fn fit_parity_form_at(seq: &[Rat], offset: i64) -> Option<ClosedForm> {
    if seq.len() < 6 {
        return None;
    }
    let diffs: Vec<Rat> = seq.windows(2).map(|w| &w[1] - &w[0]).collect();
    let mut d_odd: Option<Rat> = None;
    let mut d_even: Option<Rat> = None;
    for (i, d) in diffs.iter().enumerate() {
        let into = offset + i as i64 + 1;
        let slot = if into.rem_euclid(2) == 1 {
            &mut d_odd
        } else {
            &mut d_even
        };
        match slot {
            None => *slot = Some(d.clone()),
            Some(prev) if prev == d => {}
            Some(_) => return None,
        }
    }
    let (d_odd, d_even) = (d_odd?, d_even?);
    // s_m = s_offset + d_odd*(ceil(m/2) - ceil(offset/2)) + d_even*(floor(m/2) - floor(offset/2))
    // with ceil(m/2) = m - floor(m/2)
    let ceil_half =
        ClosedForm::sub(ClosedForm::Index, ClosedForm::FloorHalf);
    let odd_steps = ClosedForm::sub(
        ceil_half,
        ClosedForm::int(offset - offset.div_euclid(2)),
    );
    let even_steps = ClosedForm::sub(ClosedForm::FloorHalf, ClosedForm::int(offset.div_euclid(2)));
    let form = ClosedForm::add(
        ClosedForm::Const(seq[0].clone()),
        ClosedForm::add(
            ClosedForm::mul(ClosedForm::Const(d_odd), odd_steps),
            ClosedForm::mul(ClosedForm::Const(d_even), even_steps),
        ),
    );
    for (i, v) in seq.iter().enumerate() {
        if form.eval(offset + i as i64).ok()? != *v {
            return None;
        }
    }
    Some(form)
}

pub fn fit_parity_form(seq: &[Rat]) -> Option<ClosedForm> {
    fit_parity_form_at(seq, 0)
}

/// seq[m] = quotients[m]·modulus(m) + remainders[m], 0 ≤ r < modulus.
/// All terms and modulus values must be positive integers.
pub fn modular_decompose(
    seq: &[Rat],
    modulus: &ClosedForm,
    offset: i64,
) -> Result<(Vec<Rat>, Vec<Rat>)> {
    let mut quotients = Vec::with_capacity(seq.len());
    let mut remainders = Vec::with_capacity(seq.len());
    for (i, v) in seq.iter().enumerate() {
        let m = offset + i as i64;
        let mv = modulus.eval(m)?;
        if !v.denom().is_one() || !mv.denom().is_one() || !mv.is_positive() || v.is_negative() {
            return Err(Error::NonIntegerInput(i));
        }
        let (q, r) = v.numer().div_mod_floor(mv.numer());
        quotients.push(Rat::from_integer(q));
        remainders.push(Rat::from_integer(r));
    }
    Ok((quotients, remainders))
}

/// The uniformizers tried when clearing an index-dependent denominator,
/// in preference order. These are the shapes the gamma-ratio ladders
/// produce.
fn uniformizers() -> Vec<(Option<ClosedForm>, &'static str)> {
    let two_m_plus = |c: i64| {
        ClosedForm::add(
            ClosedForm::mul(ClosedForm::int(2), ClosedForm::Index),
            ClosedForm::int(c),
        )
    };
    let two_floor_plus_one = ClosedForm::add(
        ClosedForm::mul(ClosedForm::int(2), ClosedForm::FloorHalf),
        ClosedForm::int(1),
    );
    vec![
        (None, "1"),
        (Some(two_m_plus(1)), "2m+1"),
        (Some(two_m_plus(3)), "2m+3"),
        (
            Some(ClosedForm::mul(two_m_plus(1), two_m_plus(3))),
            "(2m+1)(2m+3)",
        ),
        (Some(ClosedForm::pow(two_m_plus(1), 2)), "(2m+1)^2"),
        (Some(two_floor_plus_one), "2*floor(m/2)+1"),
    ]
}

/// The moduli offered to `modular_decompose` inside the pipeline.
fn modular_candidates() -> Vec<(ClosedForm, &'static str)> {
    let two_m_plus = |c: i64| {
        ClosedForm::add(
            ClosedForm::mul(ClosedForm::int(2), ClosedForm::Index),
            ClosedForm::int(c),
        )
    };
    vec![
        (ClosedForm::pow(two_m_plus(1), 2), "(2m+1)^2"),
        (
            ClosedForm::mul(two_m_plus(1), two_m_plus(3)),
            "(2m+1)(2m+3)",
        ),
    ]
}

/// Denominators must stop growing: everything has to divide the lcm of
/// the first half's denominators.
fn denominators_stable(seq: &[Rat]) -> bool {
    let half = seq.len().div_ceil(2);
    let mut lcm = Int::one();
    for v in seq.iter().take(half) {
        lcm = lcm.lcm(v.denom());
    }
    seq.iter().all(|v| lcm.is_multiple_of(v.denom()))
}

/// Fits an integer sequence: constant, perfect power of a simpler fit,
/// polynomial via constant-rhs recurrence (orders 1..3), or parity form.
fn fit_integer_basic(
    seq: &[Rat],
    offset: i64,
    allow_power: bool,
) -> Option<(ClosedForm, String)> {
    if seq.iter().all(|v| *v == seq[0]) {
        return Some((ClosedForm::Const(seq[0].clone()), "constant".into()));
    }
    if allow_power {
        for k in [3u32, 2] {
            if let Some(roots) = power_roots(seq, k) {
                if let Some((inner, method)) = fit_integer_basic(&roots, offset, false) {
                    return Some((
                        ClosedForm::pow(inner, k),
                        format!("{method}^({k})"),
                    ));
                }
            }
        }
    }
    for order in 1..=3usize {
        if let Some((_, form)) = fit_recurrence_const_rhs_at(seq, order, offset) {
            return Some((form, format!("recurrence(order {order})")));
        }
    }
    fit_parity_form_at(seq, offset).map(|f| (f, "parity".into()))
}

/// Exact k-th roots of every term (sign-preserving for odd k; even k
/// requires nonnegative terms).
fn power_roots(seq: &[Rat], k: u32) -> Option<Vec<Rat>> {
    let mut roots = Vec::with_capacity(seq.len());
    for v in seq {
        if !v.denom().is_one() {
            return None;
        }
        let n = v.numer();
        if n.is_negative() && k % 2 == 0 {
            return None;
        }
        let root = integer_root(&n.abs(), k)?;
        let signed = if n.is_negative() { -root } else { root };
        roots.push(Rat::from_integer(signed));
    }
    // a constant-or-power sequence of 0/±1 is degenerate; let other fits run
    if roots.iter().all(|r| r.abs() <= Rat::one()) {
        return None;
    }
    Some(roots)
}

/// Basic fits plus one level of modular decomposition on failure.
fn fit_integer_sequence(seq: &[Rat], offset: i64) -> Option<(ClosedForm, String)> {
    if let Some(hit) = fit_integer_basic(seq, offset, true) {
        return Some(hit);
    }
    for (modulus, mod_name) in modular_candidates() {
        let Ok((quotients, remainders)) = modular_decompose(seq, &modulus, offset) else {
            continue;
        };
        let Some((q_form, q_method)) = fit_integer_basic(&quotients, offset, true) else {
            continue;
        };
        let Some((r_form, r_method)) = fit_integer_basic(&remainders, offset, true) else {
            continue;
        };
        let form = ClosedForm::add(ClosedForm::mul(q_form, modulus), r_form);
        let ok = seq.iter().enumerate().all(|(i, v)| {
            form.eval(offset + i as i64).map_or(false, |got| got == *v)
        });
        if ok {
            return Some((
                form,
                format!("modular({mod_name}; q: {q_method}, r: {r_method})"),
            ));
        }
    }
    None
}

/// One full attempt at a subsequence starting at index `offset`.
fn guess_core(seq: &[Rat], offset: i64) -> Option<(Rat, ClosedForm, String)> {
    for (uniformizer, uni_name) in uniformizers() {
        let cleared: Option<Vec<Rat>> = seq
            .iter()
            .enumerate()
            .map(|(i, v)| {
                Some(match &uniformizer {
                    None => v.clone(),
                    Some(u) => v * u.eval(offset + i as i64).ok()?,
                })
            })
            .collect();
        let cleared = cleared?;
        if !denominators_stable(&cleared) {
            continue;
        }
        let Ok((factor, reduced)) = extract_common_factor(&cleared) else {
            continue;
        };
        let Some((fitted, method)) = fit_integer_sequence(&reduced, offset) else {
            continue;
        };
        let mut form = if factor.is_one() {
            fitted
        } else {
            ClosedForm::mul(ClosedForm::Const(factor.clone()), fitted)
        };
        let method = match &uniformizer {
            None => method,
            Some(u) => {
                form = ClosedForm::div(form, u.clone());
                format!("{method} over {uni_name}")
            }
        };
        let ok = seq.iter().enumerate().all(|(i, v)| {
            form.eval(offset + i as i64).map_or(false, |got| got == *v)
        });
        if ok {
            return Some((factor, form, method));
        }
    }
    None
}

/// Outcome of a guessing run over one coefficient sequence.
#[derive(Clone, Debug)]
pub struct GuessReport {
    pub sequence: Vec<Rat>,
    /// Leading terms excluded from the fit (the first κ of a ladder is
    /// routinely exceptional).
    pub skip: usize,
    pub factor: Rat,
    pub form: Option<ClosedForm>,
    pub method: String,
    /// Highest index m the form has been checked against.
    pub verified_through: Option<usize>,
    /// True only once the form also reproduced ≥ 2 engine-computed terms
    /// beyond the input.
    pub verified: bool,
}

impl GuessReport {
    fn no_pattern(seq: &[Rat]) -> Self {
        GuessReport {
            sequence: seq.to_vec(),
            skip: 0,
            factor: Rat::one(),
            form: None,
            method: "no pattern found".into(),
            verified_through: None,
            verified: false,
        }
    }
}

/// Guesses a closed form for the sequence (valid from index `skip`,
/// trying skip = 0 then 1). Needs at least 6 terms.
pub fn guess_general_term(seq: &[Rat]) -> GuessReport {
    if seq.len() < 6 {
        return GuessReport::no_pattern(seq);
    }
    for skip in 0..=1usize {
        if seq.len() - skip < 6 {
            break;
        }
        if seq[skip..].iter().any(|v| v.is_zero()) {
            continue;
        }
        if let Some((factor, form, method)) = guess_core(&seq[skip..], skip as i64) {
            return GuessReport {
                sequence: seq.to_vec(),
                skip,
                factor,
                form: Some(form),
                method,
                verified_through: Some(seq.len() - 1),
                verified: false,
            };
        }
    }
    GuessReport::no_pattern(seq)
}

/// Which coefficient stream of a ladder to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqKind {
    Kappa,
    /// λ for Type-I layers; the shift-invariant d = l2 − l1²/4 for
    /// Type-II layers (the constant the simplified form exposes).
    Lambda,
}

pub fn state_sequence(state: &CorrectionState, kind: SeqKind) -> Vec<Rat> {
    state
        .layers
        .iter()
        .map(|l| match (kind, l) {
            (SeqKind::Kappa, l) => l.kappa().clone(),
            (SeqKind::Lambda, Layer::TypeI { lambda, .. }) => lambda.clone(),
            (SeqKind::Lambda, Layer::TypeII { l1, l2, .. }) => l2 - l1 * l1 / rat_int(4),
        })
        .collect()
}

/// Extends the state by `extra` layers and checks the guess against the
/// fresh coefficients, exactly. An engine stop mid-extension leaves the
/// report unverified with the partial depth recorded.
pub fn verify_guess(
    spec: &FunctionSpec,
    state: &CorrectionState,
    report: &GuessReport,
    kind: SeqKind,
    extra: usize,
) -> Result<GuessReport> {
    let mut out = report.clone();
    let Some(form) = &report.form else {
        return Ok(out);
    };
    // the form must reproduce the input it was fitted on
    let base = state_sequence(state, kind);
    for (m, v) in base.iter().enumerate().skip(report.skip) {
        if form.eval(m as i64)? != *v {
            out.verified = false;
            return Ok(out);
        }
    }
    let mut extended = state.clone();
    let mut fresh = 0usize;
    for _ in 0..extra {
        if extended.stopped.is_some() {
            break;
        }
        crate::engine::solve_next_layer(spec, &mut extended)?;
        if extended.stopped.is_some() {
            break;
        }
        let m = extended.layers.len() - 1;
        let got = state_sequence(&extended, kind)[m].clone();
        if form.eval(m as i64)? != got {
            out.verified = false;
            out.verified_through = Some(m);
            return Ok(out);
        }
        fresh += 1;
        out.verified_through = Some(m);
    }
    out.verified = fresh >= 2;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn rv(vals: &[(i64, i64)]) -> Vec<Rat> {
        vals.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn common_factor_simple() {
        let (f, red) = extract_common_factor(&rv(&[(1, 2), (1, 1), (3, 2)])).unwrap();
        assert_eq!(f, rat(1, 2));
        assert_eq!(red, rv(&[(1, 1), (2, 1), (3, 1)]));
    }

    #[test]
    fn common_factor_sign_normalized() {
        let (f, red) = extract_common_factor(&rv(&[(-2, 3), (-4, 3), (-8, 3)])).unwrap();
        assert_eq!(f, rat(-2, 3));
        assert_eq!(red, rv(&[(1, 1), (2, 1), (4, 1)]));
    }

    #[test]
    fn common_factor_idempotent() {
        let (_, red) = extract_common_factor(&rv(&[(6, 5), (9, 5), (21, 5)])).unwrap();
        let (f2, red2) = extract_common_factor(&red).unwrap();
        assert!(f2.is_one());
        assert_eq!(red, red2);
    }

    #[test]
    fn recurrence_order2_paper_v() {
        let seq = rv(&[
            (29, 1),
            (110, 1),
            (245, 1),
            (434, 1),
            (677, 1),
            (974, 1),
            (1325, 1),
            (1730, 1),
        ]);
        let (rhs, form) = fit_recurrence_const_rhs(&seq, 2).unwrap();
        assert_eq!(rhs, rat_int(54)); // the doubled sequence 2v has constant 108
        // 27(m+1)^2 + 2
        for m in 0..12 {
            assert_eq!(form.eval(m).unwrap(), rat_int(27 * (m + 1) * (m + 1) + 2));
        }
    }

    #[test]
    fn recurrence_order2_paper_w() {
        let seq = rv(&[
            (1, 1),
            (7, 1),
            (17, 1),
            (31, 1),
            (49, 1),
            (71, 1),
            (97, 1),
            (127, 1),
        ]);
        let (rhs, form) = fit_recurrence_const_rhs(&seq, 2).unwrap();
        assert_eq!(rhs, rat_int(4));
        for m in 0..12 {
            assert_eq!(form.eval(m).unwrap(), rat_int(2 * (m + 1) * (m + 1) - 1));
        }
    }

    #[test]
    fn recurrence_constant_sequence() {
        let seq = rv(&[(5, 7); 6]);
        let (rhs, form) = fit_recurrence_const_rhs(&seq, 1).unwrap();
        assert!(rhs.is_zero());
        assert_eq!(form.eval(9).unwrap(), rat(5, 7));
    }

    #[test]
    fn parity_alpha_sequence() {
        // 1, 2, 4, 5, 7, 8, 10, 11 -> m + 1 + floor(m/2)
        let seq = rv(&[
            (1, 1),
            (2, 1),
            (4, 1),
            (5, 1),
            (7, 1),
            (8, 1),
            (10, 1),
            (11, 1),
        ]);
        let form = fit_parity_form(&seq).unwrap();
        for m in 0..16i64 {
            assert_eq!(form.eval(m).unwrap(), rat_int(m + 1 + m.div_euclid(2)));
        }
    }

    #[test]
    fn parity_beta_sequence() {
        // 1, 5, 7, 11, 13, 17, 19 -> 3m + 1 + (1-(-1)^m)/2
        let seq = rv(&[(1, 1), (5, 1), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1)]);
        let form = fit_parity_form(&seq).unwrap();
        for m in 0..14i64 {
            let expected = 3 * m + 1 + (m % 2);
            assert_eq!(form.eval(m).unwrap(), rat_int(expected));
        }
    }

    #[test]
    fn parity_degenerate_arithmetic() {
        let seq = rv(&[(2, 1), (5, 1), (8, 1), (11, 1), (14, 1), (17, 1)]);
        let form = fit_parity_form(&seq).unwrap();
        for m in 0..10i64 {
            assert_eq!(form.eval(m).unwrap(), rat_int(3 * m + 2));
        }
    }

    #[test]
    fn modular_decompose_xi_sequence() {
        // xi_m from the Type-II ladder of the cubed-gamma ratio
        let xi: Vec<Rat> = (0..8i64)
            .map(|m| {
                rat_int(2 * (2 * m + 1) * (2 * m + 3) * (27 * (m + 1) * (m + 1) + 2))
                    + rat_int(2 * (m + 1) * (m + 1) - 1)
            })
            .collect();
        assert_eq!(xi[0], rat_int(175));
        assert_eq!(xi[1], rat_int(3307));
        assert_eq!(xi[2], rat_int(17167));
        let modulus = modular_candidates()[1].0.clone();
        let (q, r) = modular_decompose(&xi, &modulus, 0).unwrap();
        assert_eq!(
            q[..4],
            rv(&[(58, 1), (220, 1), (490, 1), (868, 1)])[..]
        );
        assert_eq!(r[..4], rv(&[(1, 1), (7, 1), (17, 1), (31, 1)])[..]);
        // round trip
        for m in 0..xi.len() {
            let mv = modulus.eval(m as i64).unwrap();
            assert_eq!(&q[m] * mv + &r[m], xi[m]);
        }
    }

    #[test]
    fn modular_identity_case() {
        let modulus = modular_candidates()[1].0.clone();
        let seq: Vec<Rat> = (0..6).map(|m| modulus.eval(m).unwrap()).collect();
        let (q, r) = modular_decompose(&seq, &modulus, 0).unwrap();
        assert!(q.iter().all(|v| v.is_one()));
        assert!(r.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn modular_rejects_non_integers() {
        let seq = rv(&[(1, 2); 6]);
        let modulus = modular_candidates()[0].0.clone();
        assert!(matches!(
            modular_decompose(&seq, &modulus, 0),
            Err(Error::NonIntegerInput(0))
        ));
    }

    #[test]
    fn guess_brouncker_kappa() {
        // kappa_0 = 1/32 exceptional, then (2m+1)^2/64
        let mut seq = vec![rat(1, 32)];
        for m in 1..9i64 {
            seq.push(rat((2 * m + 1) * (2 * m + 1), 64));
        }
        let report = guess_general_term(&seq);
        let form = report.form.expect("pattern expected");
        assert_eq!(report.skip, 1);
        assert_eq!(report.factor, rat(1, 64));
        for m in 1..30i64 {
            assert_eq!(form.eval(m).unwrap(), rat((2 * m + 1) * (2 * m + 1), 64));
        }
    }

    #[test]
    fn guess_constant_lambda() {
        let seq = vec![rat(1, 4); 8];
        let report = guess_general_term(&seq);
        let form = report.form.expect("pattern expected");
        assert_eq!(report.skip, 0);
        for m in 0..20 {
            assert_eq!(form.eval(m).unwrap(), rat(1, 4));
        }
    }

    #[test]
    fn guess_gamma3_23_kappa_tail() {
        // 1/27 exceptional, then (1/54)(m+1+floor(m/2))^3/(2 floor(m/2)+1)
        let alpha = |m: i64| m + 1 + m.div_euclid(2);
        let mut seq = vec![rat(1, 27)];
        for m in 1..9i64 {
            let num = alpha(m).pow(3);
            seq.push(rat(num, 54 * (2 * m.div_euclid(2) + 1)));
        }
        let report = guess_general_term(&seq);
        let form = report.form.expect("pattern expected");
        assert_eq!(report.skip, 1);
        assert_eq!(report.factor, rat(1, 54));
        for m in 1..25i64 {
            let expected = rat(alpha(m).pow(3), 54 * (2 * m.div_euclid(2) + 1));
            assert_eq!(form.eval(m).unwrap(), expected);
        }
    }

    #[test]
    fn guess_no_pattern_on_noise() {
        let seq = rv(&[
            (17, 3),
            (-5, 7),
            (101, 2),
            (3, 11),
            (-89, 5),
            (12, 13),
            (7, 17),
        ]);
        let report = guess_general_term(&seq);
        assert!(report.form.is_none());
    }

    #[test]
    fn closed_form_display_and_eval() {
        let form = ClosedForm::div(
            ClosedForm::pow(
                ClosedForm::add(
                    ClosedForm::mul(ClosedForm::int(2), ClosedForm::Index),
                    ClosedForm::int(1),
                ),
                2,
            ),
            ClosedForm::int(64),
        );
        assert_eq!(form.eval(3).unwrap(), rat(49, 64));
        assert_eq!(format!("{form}"), "(2*m + 1)^2/64");
    }

    #[test]
    fn closed_form_zero_division_detected() {
        let form = ClosedForm::div(ClosedForm::int(1), ClosedForm::Index);
        assert!(matches!(
            form.eval(0),
            Err(Error::ClosedFormZeroDivision(0))
        ));
    }
}
