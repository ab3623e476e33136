//! The `shifted-lr` command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage or input errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::jdt::{rectify_traced, CornerPolicy, Frame};
use crate::labeling::{phi_t, phi_w};
use crate::lr::{count_identity_check, g_p, g_q, lr_coefficient, skew_count_identity_check, CountReport};
use crate::mzf::{parse_exponents, verify_theorem_main, verify_theorem_skew, Mode, TheoremReport, VerifyOptions, DEFAULT_GUARD};
use crate::shapes::{SkewShape, StrictPartition};
use crate::symfunc::{verify_lr1, verify_lr2, Verdict};
use crate::tableaux::{enumerate, Content, Kind, MarkedLetter, ShiftedTableau};
use crate::words::{canonical_tableau, knuth_equivalent, knuth_step, row_word, Word};

#[derive(Parser, Debug)]
#[command(name = "shifted-lr", version, about = "Shifted tableaux, Littlewood-Richardson coefficients and Schur P/Q multiple zeta checks")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized choices
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest number of symmetrized variables
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    guard: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One coefficient f^λ_{μν}
    Lr {
        #[arg(long)]
        mu: StrictPartition,
        #[arg(long)]
        nu: StrictPartition,
        #[arg(long)]
        lambda: StrictPartition,
    },
    /// All λ with f^λ_{μν} > 0
    Gp {
        #[arg(long)]
        mu: StrictPartition,
        #[arg(long)]
        nu: StrictPartition,
    },
    /// All ν with f^λ_{μν} > 0 for a skew shape λ/μ
    Gq {
        #[arg(long)]
        shape: SkewShape,
    },
    /// List PSST or QSST fillings
    Enumerate {
        #[arg(long, value_enum, default_value_t = KindArg::Q)]
        kind: KindArg,
        #[arg(long)]
        shape: SkewShape,
        #[arg(long)]
        max_base: u32,
        #[arg(long)]
        content: Option<Content>,
        /// Print only the number of fillings
        #[arg(long)]
        count: bool,
    },
    /// Rectify a tableau by jeu de taquin
    Rectify {
        #[arg(long)]
        shape: SkewShape,
        #[arg(long)]
        entries: String,
        /// Attach subscripts before sliding
        #[arg(long)]
        labeled: bool,
        /// Print every intermediate frame
        #[arg(long)]
        trace: bool,
        /// bottom, top or seed:<n>
        #[arg(long, default_value = "bottom")]
        policy: CornerPolicy,
    },
    /// Knuth relation between two words
    Knuth { w0: String, w1: String },
    /// Subscript labeling of a tableau or a word
    Phi {
        #[arg(long, requires = "entries")]
        shape: Option<SkewShape>,
        #[arg(long)]
        entries: Option<String>,
        #[arg(long, conflicts_with = "shape")]
        word: Option<String>,
    },
    /// P_μ P_ν = Σ f P_λ as polynomials
    VerifyLr1 {
        #[arg(long, requires = "nu", required_unless_present = "sweep")]
        mu: Option<StrictPartition>,
        #[arg(long)]
        nu: Option<StrictPartition>,
        /// Every pair with |μ| + |ν| up to this weight
        #[arg(long, conflicts_with = "mu")]
        sweep: Option<u32>,
    },
    /// Q_{λ/μ} = Σ f Q_ν as polynomials
    VerifyLr2 {
        #[arg(long, required_unless_present = "sweep")]
        shape: Option<SkewShape>,
        /// Every skew shape with |λ| up to this weight
        #[arg(long, conflicts_with = "shape")]
        sweep: Option<u32>,
    },
    /// Symmetrized product expansion of truncated Schur P multiple zeta values
    VerifyTheorem1 {
        #[arg(long)]
        mu: StrictPartition,
        #[arg(long)]
        nu: StrictPartition,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        truncate: u32,
        #[command(flatten)]
        mode: ModeArgs,
        /// Place the variables on each λ in a random order drawn from --seed
        #[arg(long)]
        shuffle: bool,
    },
    /// Symmetrized skew expansion of truncated Schur Q multiple zeta values
    VerifyTheorem2 {
        #[arg(long)]
        shape: SkewShape,
        #[arg(long)]
        v: String,
        #[arg(long)]
        truncate: u32,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Content-by-content counting identity for a product (--mu, --nu) or a skew shape (--shape)
    CountCheck {
        #[arg(long, requires = "nu", required_unless_present = "shape")]
        mu: Option<StrictPartition>,
        #[arg(long)]
        nu: Option<StrictPartition>,
        #[arg(long, conflicts_with = "mu")]
        shape: Option<SkewShape>,
        #[arg(long)]
        max_base: u32,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum KindArg {
    P,
    Q,
}

#[derive(Args, Debug)]
struct ModeArgs {
    /// Exact rational arithmetic (integer exponents only)
    #[arg(long, conflicts_with = "approx")]
    exact: bool,
    /// Floating point arithmetic
    #[arg(long)]
    approx: bool,
}

impl ModeArgs {
    fn resolve(&self, all_integers: bool) -> Mode {
        if self.exact {
            Mode::Exact
        } else if self.approx || !all_integers {
            Mode::Approx
        } else {
            Mode::Exact
        }
    }
}

/// Outcome of one command: text, JSON, and whether it verified.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

/// Runs the command line given by `argv` (including the program name); returns the exit
/// status and everything that should be printed.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut printed = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json value")
            } else {
                out.text
            };
            if !printed.ends_with('\n') {
                printed.push('\n');
            }
            (if out.ok { 0 } else { 1 }, printed)
        }
        Err(e) => (2, format!("error: {e}\n")),
    }
}

fn table_json(table: &BTreeMap<StrictPartition, u64>) -> Value {
    Value::Object(table.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn table_text(table: &BTreeMap<StrictPartition, u64>) -> String {
    table.iter().map(|(k, v)| format!("{k} {v}\n")).collect()
}

fn tableau_json<E: std::fmt::Display>(t: &ShiftedTableau<E>) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Lr { mu, nu, lambda } => {
            let f = lr_coefficient(mu, nu, lambda);
            Ok(Output::ok(
                format!("{f}"),
                json!({"mu": mu.to_string(), "nu": nu.to_string(), "lambda": lambda.to_string(), "coefficient": f}),
            ))
        }
        Command::Gp { mu, nu } => {
            let table = g_p(mu, nu);
            Ok(Output::ok(table_text(&table), table_json(&table)))
        }
        Command::Gq { shape } => {
            let table = g_q(shape);
            Ok(Output::ok(table_text(&table), table_json(&table)))
        }
        Command::Enumerate {
            kind,
            shape,
            max_base,
            content,
            count,
        } => {
            let kind = match kind {
                KindArg::P => Kind::P,
                KindArg::Q => Kind::Q,
            };
            let it = enumerate(kind, shape, *max_base, content.as_ref());
            if *count {
                let n = it.count();
                return Ok(Output::ok(format!("{n}"), json!({"count": n})));
            }
            let all: Vec<ShiftedTableau<MarkedLetter>> = it.collect();
            let text = all.iter().map(|t| format!("{t}\n")).collect();
            let json = Value::Array(all.iter().map(tableau_json).collect());
            Ok(Output::ok(text, json))
        }
        Command::Rectify {
            shape,
            entries,
            labeled,
            trace,
            policy,
        } => {
            let t: ShiftedTableau<MarkedLetter> = ShiftedTableau::parse(shape, entries)?;
            crate::tableaux::validate(Kind::Q, &t).map_err(|v| Error::InvalidTableau(v.to_string()))?;
            if *labeled {
                let (r, frames) = rectify_traced(&phi_t(&t), *policy);
                Ok(rectify_output(&r.tableau, r.positions.to_json(), &frames, *trace))
            } else {
                let (r, frames) = rectify_traced(&t, *policy);
                Ok(rectify_output(&r.tableau, r.positions.to_json(), &frames, *trace))
            }
        }
        Command::Knuth { w0, w1 } => {
            let a: Word<MarkedLetter> = w0.parse()?;
            let b: Word<MarkedLetter> = w1.parse()?;
            let step = knuth_step(&a, &b);
            let equivalent = knuth_equivalent(&a, &b);
            let (pa, pb) = (canonical_tableau(&a), canonical_tableau(&b));
            let tag = step.map_or("none".to_string(), |r| r.to_string());
            let text = format!("step: {tag}\nequivalent: {equivalent}\nP(w0): {pa}\nP(w1): {pb}\n");
            let json = json!({
                "step": step.map(|r| r.to_string()),
                "equivalent": equivalent,
                "p_w0": tableau_json(&pa),
                "p_w1": tableau_json(&pb),
            });
            Ok(Output::ok(text, json))
        }
        Command::Phi { shape, entries, word } => {
            if let Some(w) = word {
                let w: Word<MarkedLetter> = w.parse()?;
                let labeled = phi_w(&w);
                return Ok(Output::ok(labeled.to_string(), json!({"word": labeled.to_string()})));
            }
            let (Some(shape), Some(entries)) = (shape, entries) else {
                return Err(Error::Invalid("give --shape with --entries, or --word".into()));
            };
            let t: ShiftedTableau<MarkedLetter> = ShiftedTableau::parse(shape, entries)?;
            crate::tableaux::validate(Kind::Q, &t).map_err(|v| Error::InvalidTableau(v.to_string()))?;
            let labeled = phi_t(&t);
            let text = format!("{labeled}\nrow word: {}\n", row_word(&labeled));
            Ok(Output::ok(text, tableau_json(&labeled)))
        }
        Command::VerifyLr1 { mu, nu, sweep } => {
            let pairs: Vec<(StrictPartition, StrictPartition)> = match (mu, nu, sweep) {
                (Some(mu), Some(nu), _) => vec![(mu.clone(), nu.clone())],
                (_, _, Some(w)) => (0..=*w)
                    .flat_map(|total| {
                        (0..=total).flat_map(move |a| {
                            StrictPartition::all_of_weight(a).into_iter().flat_map(move |mu| {
                                StrictPartition::all_of_weight(total - a)
                                    .into_iter()
                                    .map(move |nu| (mu.clone(), nu))
                            })
                        })
                    })
                    .collect(),
                _ => return Err(Error::Invalid("give --mu and --nu, or --sweep".into())),
            };
            let verdicts: Vec<(String, Verdict)> = pairs
                .iter()
                .map(|(mu, nu)| (format!("{mu} x {nu}"), verify_lr1(mu, nu, &g_p(mu, nu))))
                .collect();
            Ok(verdict_output(verdicts))
        }
        Command::VerifyLr2 { shape, sweep } => {
            let shapes: Vec<SkewShape> = match (shape, sweep) {
                (Some(s), _) => vec![s.clone()],
                (_, Some(w)) => skew_shapes_up_to(*w),
                _ => return Err(Error::Invalid("give --shape or --sweep".into())),
            };
            let verdicts = shapes
                .iter()
                .map(|s| (s.to_string(), verify_lr2(s, &g_q(s))))
                .collect();
            Ok(verdict_output(verdicts))
        }
        Command::VerifyTheorem1 {
            mu,
            nu,
            s,
            t,
            truncate,
            mode,
            shuffle,
        } => {
            let s = parse_exponents(&SkewShape::normal(mu.clone()), s)?;
            let t = parse_exponents(&SkewShape::normal(nu.clone()), t)?;
            let integers = s.entries().chain(t.entries()).all(|e| e.as_exact().is_some());
            let options = VerifyOptions {
                truncation: *truncate,
                mode: mode.resolve(integers),
                guard: cli.guard,
            };
            let arrangements = shuffle.then(|| {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                g_p(mu, nu)
                    .into_keys()
                    .map(|lambda| {
                        let mut a: Vec<usize> = (0..lambda.weight() as usize).collect();
                        a.shuffle(&mut rng);
                        (lambda, a)
                    })
                    .collect::<BTreeMap<_, _>>()
            });
            let report = verify_theorem_main(&s, &t, options, arrangements.as_ref())?;
            Ok(theorem_output(report))
        }
        Command::VerifyTheorem2 { shape, v, truncate, mode } => {
            let v = parse_exponents(shape, v)?;
            let integers = v.entries().all(|e| e.as_exact().is_some());
            let options = VerifyOptions {
                truncation: *truncate,
                mode: mode.resolve(integers),
                guard: cli.guard,
            };
            let report = verify_theorem_skew(&v, options, None)?;
            Ok(theorem_output(report))
        }
        Command::CountCheck { mu, nu, shape, max_base } => {
            let report = match (mu, nu, shape) {
                (Some(mu), Some(nu), _) => count_identity_check(mu, nu, *max_base),
                (_, _, Some(shape)) => skew_count_identity_check(shape, *max_base),
                _ => return Err(Error::Invalid("give --mu and --nu, or --shape".into())),
            };
            Ok(count_output(report))
        }
    }
}

/// Every skew shape `λ/μ` with `1 ≤ |λ| ≤ max_weight`.
pub fn skew_shapes_up_to(max_weight: u32) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for w in 1..=max_weight {
        for lambda in StrictPartition::all_of_weight(w) {
            for m in 0..=w {
                for mu in StrictPartition::all_of_weight(m) {
                    if lambda.contains(&mu) {
                        out.push(SkewShape::new(lambda.clone(), mu).expect("contained"));
                    }
                }
            }
        }
    }
    out
}

fn rectify_output<L: std::fmt::Display>(result: &ShiftedTableau<L>, positions: Value, frames: &[Frame<L>], trace: bool) -> Output {
    let mut text = String::new();
    if trace {
        for f in frames {
            let _ = writeln!(text, "{f}");
        }
    }
    let _ = writeln!(text, "{result}");
    let _ = writeln!(text, "positions: {positions}");
    let mut json = json!({"tableau": tableau_json(result), "positions": positions});
    if trace {
        json["frames"] = Value::Array(frames.iter().map(|f| json!(f.to_string())).collect());
    }
    Output::ok(text, json)
}

fn verdict_output(verdicts: Vec<(String, Verdict)>) -> Output {
    let ok = verdicts.iter().all(|(_, v)| v.equal);
    let mut text = String::new();
    for (name, v) in &verdicts {
        let _ = writeln!(text, "{name}: {}", if v.equal { "equal" } else { "DIFFERENT" });
        for d in &v.differences {
            let _ = writeln!(text, "  x^{:?}: {} vs {}", d.exponents, d.lhs, d.rhs);
        }
    }
    let _ = writeln!(text, "{} of {} identities hold", verdicts.iter().filter(|(_, v)| v.equal).count(), verdicts.len());
    let json = json!({
        "equal": ok,
        "results": verdicts.iter().map(|(name, v)| json!({"case": name, "verdict": v})).collect::<Vec<_>>(),
    });
    Output { text, json, ok }
}

fn theorem_output(report: TheoremReport) -> Output {
    let mut text = String::new();
    let _ = writeln!(text, "lhs: {}", report.lhs);
    let _ = writeln!(text, "rhs: {}", report.rhs);
    match (report.equal, report.abs_difference) {
        (Some(e), _) => {
            let _ = writeln!(text, "equal: {e}");
        }
        (None, Some(d)) => {
            let _ = writeln!(text, "|lhs - rhs|: {d:e}");
        }
        _ => {}
    }
    let _ = writeln!(text, "truncation: {}", report.truncation);
    let _ = writeln!(text, "group order: {} ({} distinct rearrangements)", report.group_order, report.orbits);
    let expansion: Vec<String> = report.expansion.iter().map(|(k, v)| format!("{v}·{k}")).collect();
    let _ = writeln!(text, "expansion: {}", expansion.join(" + "));
    for w in &report.domain_warnings {
        let _ = writeln!(text, "warning: exponent {} at {} should be {}", w.value, w.cell, w.requirement);
    }
    let ok = report.equal != Some(false);
    let json = serde_json::to_value(&report).expect("serializable");
    Output { text, json, ok }
}

fn count_output(report: CountReport) -> Output {
    let mut text = String::new();
    for row in &report.rows {
        let mark = if row.lhs == row.rhs { "" } else { "  MISMATCH" };
        let _ = writeln!(text, "{} {} {}{mark}", row.content, row.lhs, row.rhs);
    }
    let _ = writeln!(text, "equal: {}", report.equal);
    let ok = report.equal;
    let json = serde_json::to_value(&report).expect("serializable");
    Output { text, json, ok }
}
