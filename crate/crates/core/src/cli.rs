//! The `dixit` command line.
//!
//! Exit codes: 0 success, 1 domain failure (not denestable, not a perfect
//! square, division by the zero polynomial), 2 usage or parse error, 3 a
//! `--verify` cross-check disagreed with the algorithm.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::digitboard::DigitBoard;
use crate::medieval_arith::{duplicate_multiply, multiply_indian};
use crate::oracle::{oracle_mul_int, oracle_poly_divmod, oracle_poly_sqrt, oracle_signed, oracle_square, SignedOp};
use crate::polynomial::{divide_tabular, sqrt_poly, Notation, PolyError, Polynomial};
use crate::quantity::{classify_parity, ParityKind, Quantity};
use crate::surd::{denest, SurdError, SurdExpression};
use crate::trace::{Trace, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    #[default]
    Indian,
    Duplication,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyOp {
    Div,
    Sqrt,
    Mul,
    Add,
    Sub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum NotationArg {
    #[default]
    Modern,
    Medieval,
}

impl From<NotationArg> for Notation {
    fn from(n: NotationArg) -> Self {
        match n {
            NotationArg::Modern => Notation::Modern,
            NotationArg::Medieval => Notation::Medieval,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dixit", version, about = "Medieval reckoning with exact arithmetic and step traces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "DIXIT_FORMAT", default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Print every step of the computation.
    #[arg(long, global = true)]
    trace: bool,
    /// Cross-check the result against an independent modern computation.
    #[arg(long, global = true)]
    verify: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiply two numerals on the board ("-" reads an operand from stdin).
    Multiply {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Method::Indian)]
        method: Method,
    },
    /// Denest the square root of a rational plus surds, e.g. "10 + s84".
    Denest { expr: String },
    /// Polynomial arithmetic: div and the ring operations take two operands, sqrt one.
    Poly {
        #[arg(value_enum)]
        op: PolyOp,
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: Option<String>,
        #[arg(long, value_enum, default_value_t = NotationArg::Modern)]
        notation: NotationArg,
    },
    /// Name the kind of a positive integer (evenly-even, evenly-odd, ...).
    Classify { n: String },
}

/// A finished command: what it prints, and whether `--verify` agreed.
struct Outcome {
    command: &'static str,
    lines: Vec<String>,
    result: Value,
    value: Value,
    trace: Option<Trace>,
    mismatch: Option<String>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

type CmdResult = Result<Outcome, Failure>;

/// Runs the command line in `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut input = Input { stdin, used: false };
    let outcome = match &cli.command {
        Command::Multiply { a, b, method } => cmd_multiply(&mut input, a, b, *method, cli.verify),
        Command::Denest { expr } => cmd_denest(&mut input, expr, cli.verify),
        Command::Poly { op, first, second, notation } => {
            let operands: Vec<String> = std::iter::once(first).chain(second).cloned().collect();
            cmd_poly(&mut input, *op, &operands, (*notation).into(), cli.verify)
        }
        Command::Classify { n } => cmd_classify(&mut input, n, cli.verify),
    };
    match outcome {
        Ok(outcome) => {
            emit(&outcome, &cli, stdout);
            match outcome.mismatch {
                Some(msg) => {
                    let _ = writeln!(stderr, "verification failed: {msg}");
                    EXIT_MISMATCH
                }
                None => {
                    if cli.verify {
                        let _ = writeln!(stderr, "verified");
                    }
                    EXIT_OK
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            if cli.format == OutputFormat::Json {
                let doc = json!({ "schema": SCHEMA_VERSION, "error": msg });
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                let _ = writeln!(stdout, "{msg}");
            }
            EXIT_DOMAIN
        }
    }
}

fn emit(outcome: &Outcome, cli: &Cli, stdout: &mut dyn Write) {
    match cli.format {
        OutputFormat::Text => {
            if cli.trace {
                if let Some(trace) = &outcome.trace {
                    let _ = write!(stdout, "{}", trace.render_text());
                }
            }
            for line in &outcome.lines {
                let _ = writeln!(stdout, "{line}");
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "schema": SCHEMA_VERSION,
                "command": outcome.command,
                "result": outcome.result,
                "value": outcome.value,
                "trace": outcome.trace,
            });
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
}

/// Resolves operands, reading stdin for a single `-`.
struct Input<'a> {
    stdin: &'a mut dyn Read,
    used: bool,
}

impl Input<'_> {
    fn resolve(&mut self, arg: &str) -> Result<String, Failure> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.used {
            return Err(Failure::Usage("only one operand may be read from stdin".into()));
        }
        self.used = true;
        let mut text = String::new();
        self.stdin.read_to_string(&mut text).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        Ok(text.trim().to_string())
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values always serialize")
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(what)
}

fn cmd_multiply(input: &mut Input, a: &str, b: &str, method: Method, verify: bool) -> CmdResult {
    let parse = |text: String| {
        DigitBoard::parse(&text).map_err(|e| Failure::Usage(format!("cannot read numeral {text:?}: {e}")))
    };
    let a = parse(input.resolve(a)?)?;
    let b = parse(input.resolve(b)?)?;
    let (product, trace) = match method {
        Method::Indian => multiply_indian(&a, &b),
        Method::Duplication => duplicate_multiply(&a, &b),
    };
    let text = product.to_string();
    let mismatch = verify
        .then(|| {
            let expected = oracle_mul_int(&a.value(), &b.value());
            check(product.value() == expected, || format!("board gives {text}, oracle gives {expected}"))
        })
        .flatten();
    Ok(Outcome {
        command: "multiply",
        lines: vec![text.clone()],
        result: Value::String(text),
        value: to_json(&product),
        trace: Some(trace),
        mismatch,
    })
}

fn cmd_denest(input: &mut Input, expr: &str, verify: bool) -> CmdResult {
    let text = input.resolve(expr)?;
    let e: SurdExpression = text.parse().map_err(|err: SurdError| Failure::Usage(format!("cannot read {text:?}: {err}")))?;
    if e.surds().is_empty() {
        return Err(Failure::Usage(format!(
            "{text:?} has no surds once perfect squares are folded into the rational part ({}); \
             give at least one radicand that is not a perfect square",
            e.rational()
        )));
    }
    let (sum, trace) = match denest(&e) {
        Ok(found) => found,
        Err(err @ (SurdError::NotDenestable { .. } | SurdError::AmbiguousTermCount { .. })) => {
            return Err(Failure::Domain(err.to_string()))
        }
        Err(err) => return Err(Failure::Usage(err.to_string())),
    };
    let rendered = sum.to_string();
    let mismatch = verify
        .then(|| {
            let terms: Vec<BigRational> = sum.terms().iter().map(Quantity::to_signed).collect();
            let (rational, surds) = oracle_square(&terms);
            let target: Vec<BigRational> = e.surds().iter().map(Quantity::to_signed).collect();
            check(rational == e.rational().to_signed() && surds == target, || {
                format!("the square of {rendered} does not expand to {e}")
            })
        })
        .flatten();
    Ok(Outcome {
        command: "denest",
        lines: vec![rendered.clone()],
        result: Value::String(rendered),
        value: to_json(&sum),
        trace: Some(trace),
        mismatch,
    })
}

fn poly_domain(err: PolyError) -> Failure {
    match err {
        PolyError::DivisionByZeroPolynomial | PolyError::NotPerfectSquare { .. } => Failure::Domain(err.to_string()),
        other => Failure::Usage(other.to_string()),
    }
}

fn dense_signed(p: &Polynomial) -> Vec<BigRational> {
    let top = p.degree().map_or(0, |d| d as usize + 1);
    (0..top).map(|d| p.coeff(d as u32).to_signed()).collect()
}

/// Coefficientwise ring operation through the signed oracle.
fn oracle_ring(op: PolyOp, a: &Polynomial, b: &Polynomial) -> Vec<BigRational> {
    let (x, y) = (dense_signed(a), dense_signed(b));
    let mut out = vec![BigRational::zero(); x.len().max(y.len()) + x.len() + y.len()];
    match op {
        PolyOp::Mul => {
            for (i, xi) in x.iter().enumerate() {
                for (j, yj) in y.iter().enumerate() {
                    let t = oracle_signed(SignedOp::Mul, xi, yj).expect("product");
                    out[i + j] = oracle_signed(SignedOp::Add, &out[i + j], &t).expect("sum");
                }
            }
        }
        PolyOp::Add | PolyOp::Sub => {
            let signed = if op == PolyOp::Add { SignedOp::Add } else { SignedOp::Sub };
            let zero = BigRational::zero();
            for (k, slot) in out.iter_mut().enumerate() {
                *slot = oracle_signed(signed, x.get(k).unwrap_or(&zero), y.get(k).unwrap_or(&zero)).expect("sum");
            }
        }
        PolyOp::Div | PolyOp::Sqrt => unreachable!("not a ring operation"),
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn cmd_poly(input: &mut Input, op: PolyOp, operands: &[String], notation: Notation, verify: bool) -> CmdResult {
    let wanted = if op == PolyOp::Sqrt { 1 } else { 2 };
    if operands.len() != wanted {
        return Err(Failure::Usage(format!("poly {op:?} takes {wanted} operand(s), got {}", operands.len()).to_lowercase()));
    }
    let mut polys = Vec::with_capacity(wanted);
    for arg in operands {
        let text = input.resolve(arg)?;
        let p = Polynomial::parse(&text, notation).map_err(|e| Failure::Usage(format!("cannot read {text:?}: {e}")))?;
        polys.push(p);
    }
    let render = |p: &Polynomial| p.render(notation);
    match op {
        PolyOp::Div => {
            let (n, d) = (&polys[0], &polys[1]);
            let (q, r, trace) = divide_tabular(n, d).map_err(poly_domain)?;
            let mismatch = verify
                .then(|| match oracle_poly_divmod(n, d) {
                    Ok((oq, or)) => check(oq == q && or == r, || {
                        format!("table gives ({}, {}), oracle gives ({}, {})", render(&q), render(&r), render(&oq), render(&or))
                    }),
                    Err(e) => Some(format!("oracle failed: {e}")),
                })
                .flatten();
            Ok(Outcome {
                command: "poly div",
                lines: vec![format!("quotient: {}", render(&q)), format!("remainder: {}", render(&r))],
                result: json!({ "quotient": render(&q), "remainder": render(&r) }),
                value: json!({ "quotient": to_json(&q), "remainder": to_json(&r) }),
                trace: Some(trace),
                mismatch,
            })
        }
        PolyOp::Sqrt => {
            let p = &polys[0];
            let outcome = sqrt_poly(p);
            if verify {
                if let (Err(PolyError::NotPerfectSquare { .. }), Some(root)) = (&outcome, oracle_poly_sqrt(p)) {
                    return Ok(Outcome {
                        command: "poly sqrt",
                        lines: vec!["not a perfect square".into()],
                        result: Value::Null,
                        value: Value::Null,
                        trace: None,
                        mismatch: Some(format!("extraction failed but the oracle finds root {}", render(&root))),
                    });
                }
            }
            let (root, trace) = outcome.map_err(poly_domain)?;
            let mismatch = verify
                .then(|| {
                    let expected = oracle_poly_sqrt(p);
                    check(expected.as_ref() == Some(&root), || {
                        format!("extraction gives {}, oracle gives {:?}", render(&root), expected.map(|e| render(&e)))
                    })
                })
                .flatten();
            Ok(Outcome {
                command: "poly sqrt",
                lines: vec![render(&root)],
                result: Value::String(render(&root)),
                value: to_json(&root),
                trace: Some(trace),
                mismatch,
            })
        }
        PolyOp::Mul | PolyOp::Add | PolyOp::Sub => {
            let (a, b) = (&polys[0], &polys[1]);
            let out = match op {
                PolyOp::Mul => a.mul(b),
                PolyOp::Add => a.add(b),
                _ => a.sub(b),
            };
            let mismatch = verify
                .then(|| {
                    let expected = oracle_ring(op, a, b);
                    check(dense_signed(&out) == expected, || format!("{} disagrees with the coefficientwise oracle", render(&out)))
                })
                .flatten();
            let name = match op {
                PolyOp::Mul => "poly mul",
                PolyOp::Add => "poly add",
                _ => "poly sub",
            };
            Ok(Outcome {
                command: name,
                lines: vec![render(&out)],
                result: Value::String(render(&out)),
                value: to_json(&out),
                trace: None,
                mismatch,
            })
        }
    }
}

/// Kind of `n` found by repeated halving, independent of `classify_parity`.
fn oracle_parity(n: &BigUint) -> ParityKind {
    let two = BigUint::from(2u32);
    if n.is_one() {
        return ParityKind::Unit;
    }
    let (mut m, mut halvings) = (n.clone(), 0u64);
    while (&m % &two).is_zero() {
        m /= &two;
        halvings += 1;
    }
    match (halvings, m.is_one()) {
        (0, _) => ParityKind::Odd,
        (_, true) => ParityKind::EvenlyEven,
        (1, _) => ParityKind::EvenlyOdd,
        _ => ParityKind::OddlyEven,
    }
}

fn cmd_classify(input: &mut Input, n: &str, verify: bool) -> CmdResult {
    let text = input.resolve(n)?;
    let value: BigUint = text.parse().map_err(|_| Failure::Usage(format!("{text:?} is not a positive integer")))?;
    let kind = classify_parity(&value).map_err(|_| Failure::Usage(format!("{text:?} is not a positive integer")))?;
    let mismatch = verify
        .then(|| {
            let expected = oracle_parity(&value);
            check(kind == expected, || format!("classified as {kind}, halving gives {expected}"))
        })
        .flatten();
    Ok(Outcome {
        command: "classify",
        lines: vec![kind.to_string()],
        result: Value::String(kind.to_string()),
        value: to_json(&kind),
        trace: None,
        mismatch,
    })
}
