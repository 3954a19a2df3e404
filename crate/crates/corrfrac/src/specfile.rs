//! The declarative spec-file format the CLI consumes.
//!
//! Key = value lines, `#` comments, exact rational literals only (decimal
//! floats are rejected so nothing silently loses precision):
//!
//! ```text
//! label = brouncker
//! gamma = 1/2 : 2        # Γ(x + 1/2)^2
//! gamma = 1 : -2
//! stirling = 0
//! k_max = 8
//! precision = 256
//! ```
//!
//! A parameterized family declares `eta = 1/3` and may then use the
//! tokens `eta` and `1-eta` in gamma shifts; `--eta` overrides the
//! default at load time.

use crate::error::{Error, Result};
use crate::funcspec::{FunctionSpec, GammaFactor};
use crate::rational::{format_rat, parse_rat, Rat};
use num_traits::One;

#[derive(Clone, Debug, PartialEq)]
enum Shift {
    Value(Rat),
    Eta,
    OneMinusEta,
}

#[derive(Clone, Debug)]
pub struct SpecFile {
    pub label: String,
    gamma: Vec<(Shift, i64)>,
    pub stirling: i64,
    pub nu: Option<u32>,
    pub c: Option<Rat>,
    pub eta: Option<Rat>,
    pub k_max: Option<usize>,
    pub depth: Option<usize>,
    pub precision: Option<usize>,
    pub grid: Option<Vec<Rat>>,
}

impl SpecFile {
    /// Parses the text form. Unknown keys and malformed values are load
    /// errors naming the offending field.
    pub fn parse(text: &str) -> Result<SpecFile> {
        let mut label = None;
        let mut gamma = Vec::new();
        let mut stirling = 0i64;
        let mut nu = None;
        let mut c = None;
        let mut eta = None;
        let mut k_max = None;
        let mut depth = None;
        let mut precision = None;
        let mut grid = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            let value = value.trim();
            let bad = |what: &str| Error::Parse(format!("line {}: bad {what}: `{value}`", lineno + 1));
            match key {
                "label" => {
                    if value.is_empty() || !value.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '-') {
                        return Err(bad("label"));
                    }
                    label = Some(value.to_string());
                }
                "gamma" => {
                    let (shift_s, exp_s) = value
                        .split_once(':')
                        .ok_or_else(|| bad("gamma factor (want `shift : exponent`)"))?;
                    let shift = match shift_s.trim() {
                        "eta" => Shift::Eta,
                        "1-eta" => Shift::OneMinusEta,
                        s => Shift::Value(parse_rat(s)?),
                    };
                    let exponent: i64 = exp_s
                        .trim()
                        .parse()
                        .map_err(|_| bad("gamma exponent"))?;
                    gamma.push((shift, exponent));
                }
                "stirling" => stirling = value.parse().map_err(|_| bad("stirling power"))?,
                "nu" => nu = Some(value.parse().map_err(|_| bad("nu"))?),
                "c" => c = Some(parse_rat(value)?),
                "eta" => eta = Some(parse_rat(value)?),
                "k_max" => k_max = Some(value.parse().map_err(|_| bad("k_max"))?),
                "depth" => depth = Some(value.parse().map_err(|_| bad("depth"))?),
                "precision" => precision = Some(value.parse().map_err(|_| bad("precision"))?),
                "grid" => {
                    let pts: Result<Vec<Rat>> = value.split(',').map(parse_rat).collect();
                    grid = Some(pts?);
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        let label = label.ok_or_else(|| Error::Parse("missing `label`".into()))?;
        if gamma.is_empty() {
            return Err(Error::Parse("at least one `gamma` factor required".into()));
        }
        if gamma
            .iter()
            .any(|(s, _)| matches!(s, Shift::Eta | Shift::OneMinusEta))
            && eta.is_none()
        {
            return Err(Error::Parse(
                "gamma shifts use `eta` but no `eta = ...` default is declared".into(),
            ));
        }
        Ok(SpecFile {
            label,
            gamma,
            stirling,
            nu,
            c,
            eta,
            k_max,
            depth,
            precision,
            grid,
        })
    }

    /// Instantiates the function spec, substituting the parameter.
    pub fn to_function_spec(&self, eta_override: Option<&Rat>) -> Result<FunctionSpec> {
        let eta = eta_override.or(self.eta.as_ref());
        let factors: Result<Vec<GammaFactor>> = self
            .gamma
            .iter()
            .map(|(shift, exponent)| {
                let shift = match shift {
                    Shift::Value(v) => v.clone(),
                    Shift::Eta => eta
                        .cloned()
                        .ok_or_else(|| Error::Parse("eta required".into()))?,
                    Shift::OneMinusEta => {
                        Rat::one()
                            - eta
                                .cloned()
                                .ok_or_else(|| Error::Parse("eta required".into()))?
                    }
                };
                Ok(GammaFactor {
                    shift,
                    exponent: *exponent,
                })
            })
            .collect();
        FunctionSpec::new(&self.label, factors?, self.stirling, self.nu, self.c.clone())
    }

    /// Canonical text form (used by the round-trip tests).
    pub fn render(&self) -> String {
        let mut out = format!("label = {}\n", self.label);
        if let Some(e) = &self.eta {
            out.push_str(&format!("eta = {}\n", format_rat(e)));
        }
        for (shift, exp) in &self.gamma {
            let s = match shift {
                Shift::Value(v) => format_rat(v),
                Shift::Eta => "eta".into(),
                Shift::OneMinusEta => "1-eta".into(),
            };
            out.push_str(&format!("gamma = {s} : {exp}\n"));
        }
        if self.stirling != 0 {
            out.push_str(&format!("stirling = {}\n", self.stirling));
        }
        if let Some(n) = self.nu {
            out.push_str(&format!("nu = {n}\n"));
        }
        if let Some(c) = &self.c {
            out.push_str(&format!("c = {}\n", format_rat(c)));
        }
        if let Some(k) = self.k_max {
            out.push_str(&format!("k_max = {k}\n"));
        }
        if let Some(d) = self.depth {
            out.push_str(&format!("depth = {d}\n"));
        }
        if let Some(p) = self.precision {
            out.push_str(&format!("precision = {p}\n"));
        }
        if let Some(g) = &self.grid {
            let pts: Vec<String> = g.iter().map(format_rat).collect();
            out.push_str(&format!("grid = {}\n", pts.join(",")));
        }
        out
    }
}

/// The spec files shipped with the CLI.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "brouncker" => Some(include_str!("../specs/brouncker.spec")),
        "ramanujan" => Some(include_str!("../specs/ramanujan.spec")),
        "example1" => Some(include_str!("../specs/example1.spec")),
        "gamma3_13" => Some(include_str!("../specs/gamma3_13.spec")),
        "gamma3_23" => Some(include_str!("../specs/gamma3_23.spec")),
        "g_eta" => Some(include_str!("../specs/g_eta.spec")),
        _ => None,
    }
}

pub fn bundled_names() -> &'static [&'static str] {
    &[
        "brouncker",
        "ramanujan",
        "example1",
        "gamma3_13",
        "gamma3_23",
        "g_eta",
    ]
}
