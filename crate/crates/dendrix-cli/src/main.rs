//! Batch front end: expansion logarithms, equation solving from spec
//! files, tree/coefficient tables, and the verification sweeps.
//!
//! Exit codes: 0 success (for `verify`: every trial passed), 1
//! computational or verification failure (a JSON error object goes to
//! stderr), 2 usage error. Output is deterministic for a fixed flag
//! set: trials are seeded, reports merge in seed order, and every
//! encoder walks its data in canonical order.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dendrix_core::dendriform::{Aug, Augmented};
use dendrix_core::error::{DendError, Result};
use dendrix_core::free::{FreeAlgebra, FreeElement};
use dendrix_core::magnus::{fer_factors, magnus_omega, MagnusForm};
use dendrix_core::rational::{format_rational, format_signed, parse_rational, rat_zero, Rational};
use dendrix_core::rb::{rb_algebra, RbModel, RotaBaxter};
use dendrix_core::rng::SplitMix64;
use dendrix_core::series::Series;
use dendrix_core::solvers::solve_general;
use dendrix_core::trees::{alpha, enumerate_e1, PreLieWord};
use dendrix_core::verify::{run_check, CheckKind, ModelChoice};

/// Monomorphize a body over every concrete model variant.
macro_rules! dispatch_model {
    ($model:expr, $inner:ident, $body:expr) => {
        match $model {
            RbModel::PolyRiemann($inner) => $body,
            RbModel::Seq($inner) => $body,
            RbModel::QSum($inner) => $body,
            RbModel::Tri($inner) => $body,
        }
    };
}

#[derive(Parser)]
#[command(name = "dendrix", version, about = "Exact dendriform-algebra engine")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Left,
    Right,
}

#[derive(Args)]
struct ExpandOpts {
    /// Truncation order (default 8 for the free algebra, 6 for models)
    #[arg(long)]
    order: Option<usize>,
    /// Algebra: `free[:k]` or a model string like `seq:L=8,theta=1`
    #[arg(long, default_value = "free:1", value_parser = ModelChoice::parse)]
    model: ModelChoice,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the sampled model element (ignored by `free`)
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Logarithm of the one-sided equation solution, order by order
    Magnus {
        #[command(flatten)]
        opts: ExpandOpts,
        /// Which recursion evaluates the series (both agree)
        #[arg(long, value_enum, default_value_t = Form::Left)]
        form: Form,
    },
    /// Factored exponential product for the same equation
    Fer {
        #[command(flatten)]
        opts: ExpandOpts,
    },
    /// Solve an equation described by a JSON spec file
    Solve {
        /// Path to the equation file
        #[arg(long)]
        equation: PathBuf,
        /// Override the truncation order from the file
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the result here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Enumerate restricted planar trees with their weights
    Trees {
        #[arg(long)]
        max_order: usize,
        /// Print the per-degree counts on one line (default)
        #[arg(long)]
        counts: bool,
        /// Print {degree, tree, alpha} rows
        #[arg(long)]
        table: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification sweep and report per-trial outcomes
    Verify {
        /// vogel|riccati|ivp|magnus|fer|dynkin|axioms|trees
        #[arg(long, value_parser = CheckKind::parse)]
        check: CheckKind,
        /// Algebra (per-check default if omitted)
        #[arg(long, value_parser = ModelChoice::parse)]
        model: Option<ModelChoice>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Run trials concurrently; reports still merge in seed order
        #[arg(long)]
        parallel_trials: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            let obj = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            eprintln!("{obj}");
            ExitCode::from(1)
        }
    }
}

fn error_kind(e: &DendError) -> &'static str {
    match e {
        DendError::UnitProductUndefined => "UnitProductUndefined",
        DendError::BadConstantTerm(_) => "BadConstantTerm",
        DendError::OrderMismatch { .. } => "OrderMismatch",
        DendError::CarrierMismatch(_) => "CarrierMismatch",
        DendError::ZeroLeadingCoefficient(_) => "ZeroLeadingCoefficient",
        DendError::NonCommutativeModel => "NonCommutativeModel",
        DendError::ShapeError(_) => "ShapeError",
        DendError::VerificationFailure { .. } => "VerificationFailure",
        DendError::ParseError(_) => "ParseError",
    }
}

/// Validate a truncation order against the safety cap. Violations are
/// usage errors: they exit 2 before any computation starts.
fn checked_order(requested: usize) -> usize {
    if requested == 0 {
        usage_exit("--order must be at least 1");
    }
    if let Ok(s) = std::env::var("DENDRIX_MAX_ORDER") {
        match s.parse::<usize>() {
            Ok(cap) if requested > cap => usage_exit(&format!(
                "order {requested} exceeds DENDRIX_MAX_ORDER={cap}"
            )),
            Ok(_) => {}
            Err(_) => usage_exit(&format!("DENDRIX_MAX_ORDER is not a number: `{s}`")),
        }
    }
    requested
}

fn usage_exit(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2)
}

fn default_order(model: &ModelChoice) -> usize {
    match model {
        ModelChoice::Free(_) => 8,
        ModelChoice::Model(_) => 6,
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Magnus { opts, form } => cmd_magnus(&opts, form),
        Cmd::Fer { opts } => cmd_fer(&opts),
        Cmd::Solve { equation, order, format, output } => cmd_solve(&equation, order, format, output),
        Cmd::Trees { max_order, counts, table, format } => cmd_trees(max_order, counts, table, format),
        Cmd::Verify { check, model, order, seed, trials, parallel_trials } => {
            cmd_verify(check, model, order, seed, trials, parallel_trials)
        }
    }
}

// ---------------------------------------------------------------------------
// Series encodings. JSON is the machine codec:
// {"order": N, "coeffs": [{"unit": "p/q", "body": "<encoding>"}, ...]}
// with bodies in the algebra's own text encoding. Text is a per-order
// listing of the nonzero coefficients.
// ---------------------------------------------------------------------------

fn series_json<B: Clone + PartialEq>(
    s: &Series<Aug<B>>,
    body_str: impl Fn(&B) -> String,
) -> Value {
    let coeffs: Vec<Value> = s
        .coeffs()
        .iter()
        .map(|a| {
            json!({
                "unit": format_rational(&a.unit_coeff),
                "body": body_str(&a.body),
            })
        })
        .collect();
    json!({ "order": s.order(), "coeffs": coeffs })
}

#[cfg(test)]
fn series_from_json<B: Clone + PartialEq>(
    v: &Value,
    body_parse: impl Fn(&str) -> Result<B>,
) -> Result<Series<Aug<B>>> {
    let bad = |what: &str| DendError::ParseError(format!("series JSON: {what}"));
    let order = v
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing order"))? as usize;
    let arr = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing coeffs"))?;
    if arr.len() != order + 1 {
        return Err(bad("coeffs length does not match order"));
    }
    let mut coeffs = Vec::with_capacity(arr.len());
    for c in arr {
        let unit = c
            .get("unit")
            .and_then(Value::as_str)
            .and_then(parse_rational)
            .ok_or_else(|| bad("bad unit coefficient"))?;
        let body = c
            .get("body")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing body"))?;
        coeffs.push(Aug::with_unit(unit, body_parse(body)?));
    }
    Ok(Series::from_coeffs(coeffs))
}

fn aug_line<B>(a: &Aug<B>, body_zero: bool, body_str: impl Fn(&B) -> String) -> Option<String> {
    match (a.unit_coeff == rat_zero(), body_zero) {
        (true, true) => None,
        (false, true) => Some(format!("{}·1", format_signed(&a.unit_coeff))),
        (true, false) => Some(body_str(&a.body)),
        (false, false) => Some(format!(
            "{}·1 + {}",
            format_signed(&a.unit_coeff),
            body_str(&a.body)
        )),
    }
}

fn print_series_text<B: Clone + PartialEq>(
    s: &Series<Aug<B>>,
    body_zero: impl Fn(&B) -> bool,
    body_str: impl Fn(&B) -> String,
    indent: &str,
) {
    let mut any = false;
    for (k, a) in s.coeffs().iter().enumerate() {
        if let Some(line) = aug_line(a, body_zero(&a.body), &body_str) {
            println!("{indent}λ^{k}: {line}");
            any = true;
        }
    }
    if !any {
        println!("{indent}0");
    }
}

// ---------------------------------------------------------------------------
// magnus / fer
// ---------------------------------------------------------------------------

fn cmd_magnus(opts: &ExpandOpts, form: Form) -> Result<ExitCode> {
    let model = &opts.model;
    let order = checked_order(opts.order.unwrap_or_else(|| default_order(model)));
    let form = match form {
        Form::Left => MagnusForm::Left,
        Form::Right => MagnusForm::Right,
    };
    match model {
        ModelChoice::Free(k) => {
            let alg = Augmented(FreeAlgebra::with_k_generators(*k));
            let a = alg.lift(alg.body_alg().generator(0));
            let omega = magnus_omega(&alg, &a, order, form)?.omega;
            match opts.format {
                // symbolic display: the coefficient at λⁿ is the weighted
                // sum of right-nested products over degree-n trees
                Format::Text => {
                    for n in 1..=order {
                        let terms: Vec<String> = enumerate_e1(n)
                            .iter()
                            .map(|t| {
                                format!(
                                    "{}·{}",
                                    format_signed(&alpha(t)),
                                    PreLieWord::from_tree(t).render("a")
                                )
                            })
                            .collect();
                        println!("λ^{n}: {}", terms.join(" + "));
                    }
                }
                Format::Json => {
                    println!("{}", series_json(&omega, |b| alg.body_alg().format_element(b)));
                }
            }
        }
        ModelChoice::Model(m) => dispatch_model!(m, inner, {
            let alg = rb_algebra(inner.clone());
            let mut rng = SplitMix64::new(opts.seed);
            let a = alg.lift(inner.sample_carrier(&mut rng));
            let omega = magnus_omega(&alg, &a, order, form)?.omega;
            match opts.format {
                Format::Text => print_series_text(
                    &omega,
                    |b| inner.cis_zero(b),
                    |b| inner.format_carrier(b),
                    "",
                ),
                Format::Json => {
                    println!("{}", series_json(&omega, |b| inner.format_carrier(b)));
                }
            }
        }),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_fer(opts: &ExpandOpts) -> Result<ExitCode> {
    let model = &opts.model;
    let order = checked_order(opts.order.unwrap_or_else(|| default_order(model)));
    match model {
        ModelChoice::Free(k) => {
            let alg = Augmented(FreeAlgebra::with_k_generators(*k));
            let a = alg.lift(alg.body_alg().generator(0));
            let factors = fer_factors(&alg, &a, order)?.factors;
            emit_factors(
                opts.format,
                &factors,
                |b| b.is_zero(),
                |b| alg.body_alg().format_element(b),
            );
        }
        ModelChoice::Model(m) => dispatch_model!(m, inner, {
            let alg = rb_algebra(inner.clone());
            let mut rng = SplitMix64::new(opts.seed);
            let a = alg.lift(inner.sample_carrier(&mut rng));
            let factors = fer_factors(&alg, &a, order)?.factors;
            emit_factors(
                opts.format,
                &factors,
                |b| inner.cis_zero(b),
                |b| inner.format_carrier(b),
            );
        }),
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_factors<B: Clone + PartialEq>(
    format: Format,
    factors: &[Series<Aug<B>>],
    body_zero: impl Fn(&B) -> bool,
    body_str: impl Fn(&B) -> String,
) {
    match format {
        Format::Text => {
            for (n, f) in factors.iter().enumerate() {
                println!("U_{n}:");
                print_series_text(f, &body_zero, &body_str, "  ");
            }
        }
        Format::Json => {
            let arr: Vec<Value> = factors.iter().map(|f| series_json(f, &body_str)).collect();
            println!("{}", json!({ "factors": arr }));
        }
    }
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct Equation {
    a00: String,
    b: Vec<Vec<String>>,
    c: Vec<Vec<String>>,
    order: Option<usize>,
    model: ModelChoice,
}

fn read_equation(path: &PathBuf) -> Result<Equation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DendError::ParseError(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| DendError::ParseError(format!("equation file: {e}")))?;
    let bad = |what: &str| DendError::ParseError(format!("equation file: {what}"));
    let degree = v
        .get("degree")
        .and_then(Value::as_array)
        .filter(|d| d.len() == 2)
        .and_then(|d| Some((d[0].as_u64()? as usize, d[1].as_u64()? as usize)))
        .ok_or_else(|| bad("`degree` must be [m, n]"))?;
    let a00 = v
        .get("a00")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("`a00` must be a string"))?
        .to_string();
    let rows = |key: &str| -> Result<Vec<Vec<String>>> {
        match v.get(key) {
            None => Ok(Vec::new()),
            Some(Value::Array(rows)) => rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| bad(&format!("`{key}` rows must be arrays")))?
                        .iter()
                        .map(|e| {
                            e.as_str()
                                .map(str::to_string)
                                .ok_or_else(|| bad(&format!("`{key}` entries must be strings")))
                        })
                        .collect()
                })
                .collect(),
            Some(_) => Err(bad(&format!("`{key}` must be an array of rows"))),
        }
    };
    let b = rows("b")?;
    let c = rows("c")?;
    if b.len() != degree.0 || c.len() != degree.1 {
        return Err(bad("`degree` does not match the `b`/`c` row counts"));
    }
    let order = match v.get("order") {
        None => None,
        Some(o) => Some(
            o.as_u64()
                .map(|o| o as usize)
                .ok_or_else(|| bad("`order` must be a number"))?,
        ),
    };
    let model = match v.get("model") {
        None => ModelChoice::Free(1),
        Some(m) => ModelChoice::parse(
            m.as_str().ok_or_else(|| bad("`model` must be a string"))?,
        )?,
    };
    Ok(Equation { a00, b, c, order, model })
}

/// `a00` is a bare rational (pure unit head) or an element encoding.
fn split_head<B>(s: &str, parse: impl Fn(&str) -> Result<B>, zero: B) -> Result<(Rational, B)> {
    if let Some(r) = parse_rational(s.trim()) {
        return Ok((r, zero));
    }
    Ok((rat_zero(), parse(s)?))
}

fn cmd_solve(
    path: &PathBuf,
    order_flag: Option<usize>,
    format: Format,
    output: Option<PathBuf>,
) -> Result<ExitCode> {
    let eq = read_equation(path)?;
    let order = checked_order(
        order_flag
            .or(eq.order)
            .unwrap_or_else(|| default_order(&eq.model)),
    );
    let payload = match &eq.model {
        ModelChoice::Free(k) => {
            let alg = Augmented(FreeAlgebra::with_k_generators(*k));
            let fa = alg.body_alg().clone();
            let parse = |s: &str| fa.parse_element(s);
            let (alpha, h) = split_head(&eq.a00, parse, FreeElement::zero())?;
            let b = parse_rows(&eq.b, parse)?;
            let c = parse_rows(&eq.c, parse)?;
            let x = solve_general(&alg, &alpha, &alg.lift(h), &lift_rows(&alg, b), &lift_rows(&alg, c), order)?;
            render_series(format, &x, |b| b.is_zero(), |b| fa.format_element(b))
        }
        ModelChoice::Model(m) => dispatch_model!(m, inner, {
            let alg = rb_algebra(inner.clone());
            let parse = |s: &str| inner.parse_carrier(s);
            let (alpha, h) = split_head(&eq.a00, parse, inner.czero())?;
            let b = parse_rows(&eq.b, parse)?;
            let c = parse_rows(&eq.c, parse)?;
            let x = solve_general(&alg, &alpha, &alg.lift(h), &lift_rows(&alg, b), &lift_rows(&alg, c), order)?;
            render_series(format, &x, |b| inner.cis_zero(b), |b| inner.format_carrier(b))
        }),
    };
    match output {
        None => print!("{payload}"),
        Some(p) => {
            let mut f = std::fs::File::create(&p)
                .map_err(|e| DendError::ParseError(format!("cannot write {}: {e}", p.display())))?;
            f.write_all(payload.as_bytes())
                .map_err(|e| DendError::ParseError(format!("cannot write {}: {e}", p.display())))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_rows<B>(rows: &[Vec<String>], parse: impl Fn(&str) -> Result<B>) -> Result<Vec<Vec<B>>> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse(s)).collect())
        .collect()
}

fn lift_rows<A: BodyLift>(alg: &A, rows: Vec<Vec<A::Body>>) -> Vec<Vec<A::Lifted>> {
    rows.into_iter()
        .map(|row| row.into_iter().map(|b| alg.lift_body(b)).collect())
        .collect()
}

/// Tiny adapter so row lifting can stay generic over both algebras.
trait BodyLift {
    type Body;
    type Lifted;
    fn lift_body(&self, b: Self::Body) -> Self::Lifted;
}

impl<B: dendrix_core::dendriform::BodyAlgebra> BodyLift for Augmented<B> {
    type Body = B::Body;
    type Lifted = Aug<B::Body>;
    fn lift_body(&self, b: B::Body) -> Aug<B::Body> {
        self.lift(b)
    }
}

fn render_series<B: Clone + PartialEq>(
    format: Format,
    s: &Series<Aug<B>>,
    body_zero: impl Fn(&B) -> bool,
    body_str: impl Fn(&B) -> String,
) -> String {
    match format {
        Format::Json => format!("{}\n", series_json(s, body_str)),
        Format::Text => {
            let mut out = String::new();
            let mut any = false;
            for (k, a) in s.coeffs().iter().enumerate() {
                if let Some(line) = aug_line(a, body_zero(&a.body), &body_str) {
                    out.push_str(&format!("λ^{k}: {line}\n"));
                    any = true;
                }
            }
            if !any {
                out.push_str("0\n");
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// trees / verify
// ---------------------------------------------------------------------------

fn cmd_trees(max_order: usize, counts: bool, table: bool, format: Format) -> Result<ExitCode> {
    let max_order = checked_order(max_order);
    let per_degree: Vec<_> = (1..=max_order).map(enumerate_e1).collect();
    let counts = counts || !table;
    if counts {
        let line: Vec<String> = per_degree.iter().map(|v| v.len().to_string()).collect();
        println!("{}", line.join(" "));
    }
    if table {
        match format {
            Format::Text => {
                for (d, trees) in per_degree.iter().enumerate() {
                    for t in trees {
                        println!("{} {} {}", d + 1, t.to_brackets(), format_rational(&alpha(t)));
                    }
                }
            }
            Format::Json => {
                let rows: Vec<Value> = per_degree
                    .iter()
                    .enumerate()
                    .flat_map(|(d, trees)| {
                        trees.iter().map(move |t| {
                            json!({
                                "degree": d + 1,
                                "tree": t.to_brackets(),
                                "alpha": format_rational(&alpha(t)),
                            })
                        })
                    })
                    .collect();
                println!("{}", Value::Array(rows));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn default_model(kind: CheckKind) -> ModelChoice {
    match kind {
        CheckKind::Vogel => ModelChoice::Model(RbModel::parse("seq:L=8,theta=1").unwrap()),
        CheckKind::Riccati => ModelChoice::Model(RbModel::parse("poly-riemann:n=1").unwrap()),
        CheckKind::Ivp => ModelChoice::Model(RbModel::parse("poly-riemann:n=2").unwrap()),
        _ => ModelChoice::Free(1),
    }
}

fn cmd_verify(
    kind: CheckKind,
    model: Option<ModelChoice>,
    order: Option<usize>,
    seed: u64,
    trials: usize,
    parallel: bool,
) -> Result<ExitCode> {
    let model = model.unwrap_or_else(|| default_model(kind));
    let order = checked_order(order.unwrap_or_else(|| default_order(&model)));
    let report = run_check(kind, &model, order, seed, trials, parallel)?;
    println!("{}", serde_json::to_string(&report).expect("report serialization"));
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
