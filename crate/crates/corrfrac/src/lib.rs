//! Fastest-possible continued fraction approximations of gamma-ratio and
//! Stirling-type functions.
//!
//! The pipeline: declare f(x) as a product of gamma factors and an
//! optional (x/e)^{sx} power ([`funcspec`]), solve the initial correction
//! Φ₀ and a ladder of Type-I/Type-II correction layers with exact
//! rational arithmetic ([`engine`]), guess closed forms for the resulting
//! coefficient sequences ([`guess`]), and audit convergence rates,
//! identities, and inequalities against an independent high-precision
//! oracle ([`oracle`], [`checks`]).

pub mod cf;
pub mod checks;
pub mod engine;
pub mod error;
pub mod funcspec;
pub mod guess;
pub mod hp;
pub mod oracle;
pub mod poly;
pub mod ratfn;
pub mod rational;
pub mod records;
pub mod series;
pub mod specfile;

pub use cf::{CfKind, CorrectionState, GeneralizedCf, Layer, McPoint, StopReason};
pub use engine::{rate_of_convergence, run_corrections, solve_next_layer, solve_phi0, RateInfo};
pub use error::{Error, Result};
pub use funcspec::{FunctionSpec, GammaFactor};
pub use guess::{guess_general_term, verify_guess, ClosedForm, GuessReport, SeqKind};
pub use poly::Poly;
pub use ratfn::RatFn;
pub use rational::{parse_rat, Rat};
pub use series::Series;
