//! Batch front end: spec files in, exact coefficient tables / guesses /
//! verification reports out.
//!
//! Exit codes: 0 success or all checks pass, 1 verification failure,
//! 2 input error. An engine stop (κ = 0) is a finding, not a failure.

use clap::{Args, Parser, Subcommand};
use corrfrac::cf::{detect_mc_point, to_simplified_form, CorrectionState, Layer};
use corrfrac::checks::{self, VerificationReport, DEFAULT_PRECISION};
use corrfrac::engine::{rate_of_convergence, run_corrections, solve_next_layer};
use corrfrac::error::Error;
use corrfrac::funcspec::FunctionSpec;
use corrfrac::guess::{guess_general_term, state_sequence, verify_guess, SeqKind};
use corrfrac::oracle::validate_limit;
use corrfrac::rational::{format_rat, parse_rat, rat_int, Rat};
use corrfrac::records::{guess_records, state_records, Record};
use corrfrac::specfile::{bundled, bundled_names, SpecFile};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "corrfrac",
    about = "Continued fraction ladders for gamma-ratio and Stirling-type functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Emit {
    Human,
    Records,
}

#[derive(Args)]
struct SpecArgs {
    /// Bundled spec name (brouncker, ramanujan, example1, gamma3_13,
    /// gamma3_23, g_eta) or a path to a spec file.
    spec: String,
    /// Override the spec's eta parameter (exact rational, e.g. 1/4).
    #[arg(long)]
    eta: Option<String>,
    /// Working precision in bits for any numeric steps.
    #[arg(long)]
    precision: Option<usize>,
    /// Output format.
    #[arg(long, value_enum, default_value = "human")]
    emit: Emit,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the initial correction and k layers; print the exact table.
    Correct {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of correction layers to solve.
        #[arg(short, long)]
        k: Option<usize>,
    },
    /// Correct, then guess closed forms for the kappa and lambda columns.
    Guess {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short, long)]
        k: Option<usize>,
        /// Extra layers solved to confirm a guess.
        #[arg(long, default_value = "3")]
        extra: usize,
    },
    /// Symbolic rate K per layer, with the measured log-log slope.
    Rate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short, long)]
        k: Option<usize>,
        /// Evaluation grid (comma-separated exact rationals).
        #[arg(long)]
        grid: Option<String>,
    },
    /// Evaluate f, CF_k(f), their difference, and E_k on a grid.
    Eval {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Run a named verification harness.
    Verify {
        /// theorem1 | theorem2 | corollary1 | corollary3 | unit-ball |
        /// entry39 | open-problem-1 | open-problem-2 | open-problem-3 | all
        check: String,
        #[arg(long)]
        precision: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        eta: Option<String>,
        #[arg(long, value_enum, default_value = "human")]
        emit: Emit,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_grid(s: Option<&str>, default: &[i64]) -> Result<Vec<Rat>, Error> {
    match s {
        Some(text) => text.split(',').map(parse_rat).collect(),
        None => Ok(default.iter().map(|&v| rat_int(v)).collect()),
    }
}

fn load_spec(args: &SpecArgs) -> Result<(SpecFile, FunctionSpec, usize), Error> {
    let text = match bundled(&args.spec) {
        Some(t) => t.to_string(),
        None => std::fs::read_to_string(&args.spec).map_err(|e| {
            Error::Parse(format!(
                "cannot read spec `{}` ({e}); bundled specs: {}",
                args.spec,
                bundled_names().join(", ")
            ))
        })?,
    };
    let sf = SpecFile::parse(&text)?;
    let eta = args.eta.as_deref().map(parse_rat).transpose()?;
    let spec = sf.to_function_spec(eta.as_ref())?;
    let precision = args
        .precision
        .or(sf.precision)
        .unwrap_or(DEFAULT_PRECISION);
    // guard against mis-declared nu/c before doing anything expensive
    validate_limit(&spec, 128)?;
    Ok((sf, spec, precision))
}

fn print_records(records: &[Record]) {
    for r in records {
        println!("{}", r.render());
    }
}

fn layer_row(k: usize, layer: &Layer) -> String {
    match layer {
        Layer::TypeI { kappa, lambda } => format!(
            "  {k:>2}  {:>24}  {:>18}",
            format_rat(kappa),
            format_rat(lambda)
        ),
        Layer::TypeII { kappa, l1, l2 } => format!(
            "  {k:>2}  {:>24}  {:>12}  {:>14}",
            format_rat(kappa),
            format_rat(l1),
            format_rat(l2)
        ),
    }
}

fn print_state_human(spec: &FunctionSpec, state: &CorrectionState) {
    println!("spec {}  (nu = {})", state.label, state.nu);
    println!("phi0 = {}", state.phi0);
    match state.kind {
        Some(kind) => println!("structure: {kind}"),
        None => println!("structure: undetermined (no layers)"),
    }
    if !state.layers.is_empty() {
        match state.kind {
            Some(corrfrac::CfKind::TypeII) => {
                println!("   k                     kappa       lambda1         lambda2")
            }
            _ => println!("   k                     kappa              lambda"),
        }
        for (k, layer) in state.layers.iter().enumerate() {
            println!("{}", layer_row(k, layer));
        }
    }
    if let Some(mc) = detect_mc_point(state) {
        println!("MC-point omega = {}", format_rat(&mc.omega));
        let simp = to_simplified_form(state, &mc);
        println!("simplified phi0 (in x + omega): {}", simp.phi0);
    }
    if let Ok(rate) = rate_of_convergence(spec, state) {
        println!(
            "rate: K = {} (MT order {}, theta0 = {})",
            rate.k_order, rate.mt_order, rate.theta0
        );
    }
    if let Some(reason) = &state.stopped {
        println!("stopped: {reason}");
    }
    if state.tie_break_used {
        println!("note: a lambda tie-break (value 0) was exercised");
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Correct { spec: args, k } => {
            let (sf, spec, _) = load_spec(&args)?;
            let k_max = k.or(sf.k_max).unwrap_or(4);
            let state = run_corrections(&spec, k_max)?;
            if args.emit == Emit::Records {
                let mut recs = state_records(&state);
                if let Ok(rate) = rate_of_convergence(&spec, &state) {
                    recs.push(
                        Record::new("rate")
                            .field("spec", &state.label)
                            .field("k", state.depth().to_string())
                            .field("K", rate.k_order.to_string())
                            .field("mt_order", rate.mt_order.to_string())
                            .field("theta0", rate.theta0.to_string()),
                    );
                }
                print_records(&recs);
            } else {
                print_state_human(&spec, &state);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Guess {
            spec: args,
            k,
            extra,
        } => {
            let (sf, spec, _) = load_spec(&args)?;
            let k_max = k.or(sf.k_max).unwrap_or(8);
            let state = run_corrections(&spec, k_max)?;
            let mut recs = Vec::new();
            let mut human = String::new();
            for (kind, name) in [(SeqKind::Kappa, "kappa"), (SeqKind::Lambda, "lambda")] {
                let seq = state_sequence(&state, kind);
                let report = guess_general_term(&seq);
                let report = verify_guess(&spec, &state, &report, kind, extra)?;
                if args.emit == Emit::Records {
                    recs.extend(guess_records(&state.label, name, &report));
                } else {
                    human.push_str(&format!("{name} sequence ({} terms):\n", seq.len()));
                    match &report.form {
                        Some(form) => {
                            if report.skip > 0 {
                                let heads: Vec<String> =
                                    seq[..report.skip].iter().map(format_rat).collect();
                                human.push_str(&format!(
                                    "  leading terms: {}\n",
                                    heads.join(", ")
                                ));
                            }
                            human.push_str(&format!(
                                "  general term (m >= {}): {form}\n  method: {}\n  verified: {} (through m = {})\n",
                                report.skip,
                                report.method,
                                report.verified,
                                report.verified_through.map_or("-".into(), |v| v.to_string()),
                            ));
                        }
                        None => human.push_str("  no pattern found\n"),
                    }
                }
            }
            if args.emit == Emit::Records {
                print_records(&recs);
            } else {
                print_state_human(&spec, &state);
                print!("{human}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rate {
            spec: args,
            k,
            grid,
        } => {
            let (sf, spec, precision) = load_spec(&args)?;
            let k_max = k.or(sf.k_max).unwrap_or(2);
            let grid = match grid {
                Some(g) => parse_grid(Some(&g), &[])?,
                None => sf
                    .grid
                    .clone()
                    .unwrap_or_else(|| [50, 100, 200, 400].map(rat_int).to_vec()),
            };
            let mut recs = Vec::new();
            if args.emit == Emit::Human {
                println!(
                    "spec {}  grid {:?}",
                    spec.label,
                    grid.iter().map(format_rat).collect::<Vec<_>>()
                );
                println!("   k    K  theta0       slope");
            }
            let mut state = CorrectionState::new(
                &spec.label,
                spec.nu,
                corrfrac::engine::solve_phi0(&spec)?,
            );
            for k in 0..=k_max {
                if k > 0 {
                    solve_next_layer(&spec, &mut state)?;
                    if state.stopped.is_some() {
                        break;
                    }
                }
                let rate = rate_of_convergence(&spec, &state)?;
                let (slope, _) = checks::empirical_order(&spec, &state, &grid, precision)?;
                if args.emit == Emit::Records {
                    recs.push(
                        Record::new("rate")
                            .field("spec", &spec.label)
                            .field("k", k.to_string())
                            .field("K", rate.k_order.to_string())
                            .field("mt_order", rate.mt_order.to_string())
                            .field("theta0", rate.theta0.to_string())
                            .field("slope", format!("{slope:.4}")),
                    );
                } else {
                    println!(
                        "  {k:>2}  {:>3}  {:>6}  {slope:>10.4}",
                        rate.k_order, rate.theta0
                    );
                }
            }
            if args.emit == Emit::Records {
                print_records(&recs);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval {
            spec: args,
            k,
            grid,
        } => {
            let (sf, spec, precision) = load_spec(&args)?;
            let k_max = k.or(sf.k_max).unwrap_or(2);
            let grid = match grid {
                Some(g) => parse_grid(Some(&g), &[])?,
                None => sf
                    .grid
                    .clone()
                    .unwrap_or_else(|| [1, 2, 5, 10].map(rat_int).to_vec()),
            };
            let state = run_corrections(&spec, k_max)?;
            let p = precision;
            let mut recs = Vec::new();
            if args.emit == Emit::Human {
                println!(
                    "spec {}  k = {}  precision {p} bits",
                    spec.label,
                    state.depth()
                );
                println!(
                    "{:>10}  {:>24}  {:>24}  {:>12}  {:>12}",
                    "x", "f(x)", "CF_k(x)", "f-CF", "E_k"
                );
            }
            for x in &grid {
                let fx = corrfrac::oracle::eval_f(&spec, x, p)?;
                let cf = corrfrac::hp::from_rat(&state.approx_at(x)?, p);
                let diff = corrfrac::hp::sub(&fx, &cf, p);
                let ek = corrfrac::oracle::relative_error(&spec, &state, x, p)?;
                if args.emit == Emit::Records {
                    recs.push(
                        Record::new("eval")
                            .field("spec", &spec.label)
                            .field("k", state.depth().to_string())
                            .rat("x", x)
                            .field("f", format!("{:.18e}", corrfrac::hp::to_f64(&fx)))
                            .field("cf", format!("{:.18e}", corrfrac::hp::to_f64(&cf)))
                            .field("diff", format!("{:.6e}", corrfrac::hp::to_f64(&diff)))
                            .field("ek", format!("{:.6e}", corrfrac::hp::to_f64(&ek))),
                    );
                } else {
                    println!(
                        "{:>10}  {:>24.16e}  {:>24.16e}  {:>12.3e}  {:>12.3e}",
                        format_rat(x),
                        corrfrac::hp::to_f64(&fx),
                        corrfrac::hp::to_f64(&cf),
                        corrfrac::hp::to_f64(&diff),
                        corrfrac::hp::to_f64(&ek)
                    );
                }
            }
            if args.emit == Emit::Records {
                print_records(&recs);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            check,
            precision,
            depth,
            grid,
            eta,
            emit,
        } => {
            let p = precision.unwrap_or(DEFAULT_PRECISION);
            let eta = eta.as_deref().map(parse_rat).transpose()?;
            let reports = run_checks(&check, p, depth, grid.as_deref(), eta.as_ref())?;
            let mut all_pass = true;
            for report in &reports {
                all_pass &= report.passed();
                if emit == Emit::Records {
                    for line in &report.lines {
                        println!(
                            "{}",
                            Record::new("check")
                                .field("name", &report.name)
                                .field("precision", report.precision.to_string())
                                .field("point", &line.point)
                                .field("detail", &line.detail)
                                .field("pass", line.pass.to_string())
                                .render()
                        );
                    }
                } else {
                    print!("{report}");
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn run_checks(
    name: &str,
    p: usize,
    depth: Option<usize>,
    grid: Option<&str>,
    eta: Option<&Rat>,
) -> Result<Vec<VerificationReport>, Error> {
    let one = |r: VerificationReport| Ok(vec![r]);
    match name {
        "theorem1" => one(checks::check_theorem1(p)?),
        "theorem2" => one(checks::check_theorem2(p)?),
        "corollary1" => one(checks::check_corollary1(p)?),
        "corollary3" => {
            let grid = parse_grid(grid, &[1, 2, 5, 10])?;
            one(checks::check_corollary3(depth.unwrap_or(10), &grid, p)?)
        }
        "unit-ball" | "theorem3" | "theorem4" => one(checks::check_unit_ball_identities(
            30,
            depth.unwrap_or(40),
            p,
        )?),
        "entry39" | "theorem5" => {
            let grid = parse_grid(grid, &[5, 9])?;
            let d = depth.unwrap_or(30);
            let zero = Rat::from_integer(0.into());
            let half = parse_rat("1/2")?;
            let quarter = parse_rat("1/4")?;
            Ok(vec![
                checks::compare_entry39(&zero, &zero, &grid, d, p)?,
                checks::compare_entry39(&zero, &half, &grid, d, p)?,
                checks::compare_entry39(&quarter, &half, &grid, d, p)?,
            ])
        }
        "open-problem-1" => {
            let grid = parse_grid(grid, &[2, 5])?;
            one(checks::check_open_problem(
                1,
                None,
                depth.unwrap_or(24),
                &grid,
                p,
            )?)
        }
        "open-problem-2" => {
            let grid = parse_grid(grid, &[1, 2, 5, 10])?;
            one(checks::check_open_problem(
                2,
                None,
                depth.unwrap_or(10),
                &grid,
                p,
            )?)
        }
        "open-problem-3" => {
            let grid = parse_grid(grid, &[2, 5])?;
            one(checks::check_open_problem(
                3,
                eta,
                depth.unwrap_or(24),
                &grid,
                p,
            )?)
        }
        "all" => {
            let mut out = Vec::new();
            let fallback = parse_rat("1/4")?;
            for name in [
                "theorem1",
                "theorem2",
                "corollary1",
                "corollary3",
                "unit-ball",
                "entry39",
                "open-problem-1",
                "open-problem-2",
                "open-problem-3",
            ] {
                out.extend(run_checks(name, p, depth, grid, eta.or(Some(&fallback)))?);
            }
            Ok(out)
        }
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}
