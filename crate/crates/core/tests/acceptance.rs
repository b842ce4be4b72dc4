//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact; the only tolerances are the runtime
//! limits below.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dixit::cli;
use dixit::medieval_arith::{duplicate_multiply, multiply_indian};
use dixit::oracle::{oracle_mul_int, oracle_poly_divmod, oracle_poly_sqrt, oracle_signed, SignedOp};
use dixit::polynomial::{degree_columns, row_polynomial};
use dixit::quantity::{DeficiencyOrder, Quantity};
use dixit::surd::{denest, expand_square, SurdExpression, SurdSum};
use dixit::trace::{Payload, Trace};
use dixit::{divide_tabular, sqrt_poly, DegreeName, DigitBoard, Notation, Polynomial};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const PROPERTY_LIMIT: Duration = Duration::from_secs(60);
const PROPERTY_CASES: usize = 10_000;
const INVARIANT_CASES: usize = 1_000;
const NOTATION_CASES: usize = 2_000;

const SURDS: &str = "16 + s24 + s40 + s48 + s60 + s72 + s120";
const AGGREGATE: &str = "4dcc+12ddc+9cc+20dc+42dd+18c+25d+30r+9";
const DIVIDEND: &str = "6x^8+28x^7+6x^6-80x^5+38x^4+92x^3-200x^2+20x";
const DIVISOR: &str = "2x^5+8x^4-20x^2";

type Outcome = Result<String, String>;
type Suite = fn(&mut ChaCha8Rng) -> Result<(), String>;
type Criterion = (u32, &'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli_run(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("dixit").chain(args.iter().copied());
    let code = cli::run(argv, &mut std::io::empty(), &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf8"))
}

fn modern(s: &str) -> Polynomial {
    Polynomial::parse(s, Notation::Modern).expect("modern polynomial")
}

fn board(n: u64) -> DigitBoard {
    DigitBoard::of_value(&BigUint::from(n))
}

fn criterion_1() -> Outcome {
    let (code, text) = cli_run(&["multiply", "2326", "214", "--trace"]);
    ensure!(code == 0, "exit code {code}");
    ensure!(text.lines().last() == Some("497764"), "final line {:?}", text.lines().last());
    let (_, json) = cli_run(&["multiply", "2326", "214", "--trace", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let trace: Trace = serde_json::from_value(doc["trace"].clone()).map_err(|e| e.to_string())?;
    let boards: Vec<String> = trace.boards().map(|b| b.board.to_string()).collect();
    ensure!(boards == ["428326", "492226", "496486", "497764"], "boards {boards:?}");
    let uppers: Vec<String> = trace.boards().filter_map(|b| b.upper.as_ref()).map(|u| u.digits.to_string()).collect();
    ensure!(uppers == ["428", "642", "428", "1284"], "partial products {uppers:?}");
    for b in &boards {
        ensure!(text.contains(b.as_str()), "text trace lacks board {b}");
    }
    Ok(format!("boards {}", boards.join(" -> ")))
}

fn criterion_2() -> Outcome {
    let e: SurdExpression = SURDS.parse().map_err(|e| format!("{e}"))?;
    let (root, trace) = denest(&e).map_err(|e| e.to_string())?;
    ensure!(root == SurdSum::of_integers(&[2, 3, 5, 6]).expect("sum"), "root {root}");
    ensure!(expand_square(&root) == e, "root does not square back");
    let thing = trace.steps.iter().find_map(|s| match &s.payload {
        Payload::Binding { values } if s.label == "the thing" => values.get("r").cloned(),
        _ => None,
    });
    ensure!(thing == Some(Quantity::integer(3)), "binding of r is {thing:?}");
    let text = trace.render_text();
    ensure!(text.contains("16r = 48"), "trace lacks 16r = 48");
    let (code, out) = cli_run(&["denest", SURDS]);
    ensure!(code == 0 && out.trim() == "s2 + s3 + s5 + s6", "cli printed {out:?} with exit {code}");
    Ok(format!("{root}, the thing r = 3"))
}

fn criterion_3() -> Outcome {
    let aggregate = Polynomial::parse(AGGREGATE, Notation::Medieval).map_err(|e| e.to_string())?;
    let (root, trace) = sqrt_poly(&aggregate).map_err(|e| e.to_string())?;
    let rendered = root.render(Notation::Medieval);
    ensure!(rendered == "2dd + 3c + 5r + 3", "root {rendered}");
    let mut partials = Vec::new();
    let mut last_remainder = None;
    for (step, table) in trace.tables() {
        let root_row = table.rows.iter().find(|r| r.label == "root").ok_or("table without root row")?;
        partials.push(row_polynomial(root_row).map_err(|e| e.to_string())?.render(Notation::Medieval));
        let rem = table.rows.iter().find(|r| r.label == step.label).ok_or("table without remainder row")?;
        last_remainder = Some(row_polynomial(rem).map_err(|e| e.to_string())?);
    }
    let expected = ["2dd", "2dd + 3c", "2dd + 3c + 5r", "2dd + 3c + 5r + 3"];
    ensure!(partials == expected, "partials {partials:?}");
    ensure!(last_remainder.as_ref().is_some_and(Polynomial::is_zero), "final remainder {last_remainder:?}");
    ensure!(trace.steps.last().is_some_and(|s| s.label == "remainder is nothing"), "no closing note");
    ensure!(oracle_poly_sqrt(&aggregate) == Some(root.clone()), "oracle disagrees");
    Ok(format!("root {rendered}, nothing remains"))
}

fn criterion_4() -> Outcome {
    let (n, d) = (modern(DIVIDEND), modern(DIVISOR));
    let (q, r, trace) = divide_tabular(&n, &d).map_err(|e| e.to_string())?;
    ensure!(q == modern("3x^3 + 2x^2 - 5x + 10"), "quotient {q}");
    ensure!(q.mul(&d).add(&r) == n, "identity fails");
    ensure!(r.degree().is_none_or(|deg| deg < 5), "remainder degree {:?}", r.degree());
    let (oq, or) = oracle_poly_divmod(&n, &d).map_err(|e| e.to_string())?;
    ensure!((oq, or.clone()) == (q.clone(), r.clone()), "oracle gives remainder {or}");
    let last = trace.tables().last().ok_or("no tables")?.1;
    let quotient_row = last.rows.iter().find(|row| row.label == "quotient").ok_or("no quotient row")?;
    let cells: Vec<String> = quotient_row.cells.iter().map(|(c, v)| format!("{c}:{v}")).collect();
    ensure!(cells == ["c:3", "d:2", "r:-5", "units:10"], "quotient cells {cells:?}");
    Ok(format!("quotient {q}, remainder {r}"))
}

fn small_quantity(rng: &mut impl Rng) -> Quantity {
    if rng.gen_bool(0.1) {
        return Quantity::nothing();
    }
    Quantity::new(rng.gen_range(-60i64..=60), rng.gen_range(1i64..=12)).expect("nonzero denominator")
}

fn random_poly(rng: &mut impl Rng, max_degree: u32) -> Polynomial {
    let degree = rng.gen_range(0..=max_degree);
    Polynomial::from_terms((0..=degree).map(|d| (d, small_quantity(rng))))
}

fn property_multiply(rng: &mut impl Rng) -> Result<(), String> {
    for _ in 0..PROPERTY_CASES {
        let (a, b) = (rng.gen_range(0..=1_000_000_000u64), rng.gen_range(0..=1_000_000_000u64));
        let (ba, bb) = (board(a), board(b));
        let expected = oracle_mul_int(&BigUint::from(a), &BigUint::from(b));
        let indian = multiply_indian(&ba, &bb).0.value();
        let doubled = duplicate_multiply(&ba, &bb).0.value();
        ensure!(indian == expected && doubled == expected, "{a} x {b}: indian {indian}, duplication {doubled}");
    }
    Ok(())
}

fn property_divide(rng: &mut impl Rng) -> Result<(), String> {
    let mut cases = 0;
    while cases < PROPERTY_CASES {
        let d = random_poly(rng, 5);
        let Some(dd) = d.degree() else { continue };
        let q = random_poly(rng, 6);
        let r = Polynomial::from_terms((0..dd).map(|k| (k, small_quantity(rng))));
        let n = q.mul(&d).add(&r);
        let (tq, tr, _) = divide_tabular(&n, &d).map_err(|e| e.to_string())?;
        ensure!(tq == q && tr == r, "({n}) / ({d}) gave ({tq}, {tr})");
        ensure!(oracle_poly_divmod(&n, &d) == Ok((tq, tr)), "oracle disagrees on ({n}) / ({d})");
        cases += 1;
    }
    Ok(())
}

fn property_sqrt(rng: &mut impl Rng) -> Result<(), String> {
    let mut cases = 0;
    while cases < PROPERTY_CASES {
        let s = random_poly(rng, 6);
        if s.leading().is_none_or(|(_, c)| !c.is_augmented()) {
            continue;
        }
        let (root, _) = sqrt_poly(&s.mul(&s)).map_err(|e| format!("({s})^2: {e}"))?;
        ensure!(root == s, "sqrt(({s})^2) gave {root}");
        cases += 1;
    }
    Ok(())
}

fn property_denest(rng: &mut impl Rng) -> Result<(), String> {
    let mut cases = 0;
    while cases < PROPERTY_CASES {
        let k = rng.gen_range(1..=4);
        let terms: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=50)).collect();
        let e = expand_square(&SurdSum::of_integers(&terms).expect("positive terms"));
        if e.surds().is_empty() {
            continue;
        }
        let (root, _) = denest(&e).map_err(|err| format!("{terms:?}: {err}"))?;
        ensure!(expand_square(&root) == e, "{terms:?} denested to {root}");
        cases += 1;
    }
    Ok(())
}

fn signed_agree(op: SignedOp, a: &Quantity, b: &Quantity) -> Result<(), String> {
    let expected = oracle_signed(op, &a.to_signed(), &b.to_signed());
    let got: Option<BigRational> = match op {
        SignedOp::Add => Some(a.add(b).to_signed()),
        SignedOp::Sub => Some(a.sub(b).to_signed()),
        SignedOp::Mul => Some(a.mul(b).to_signed()),
        SignedOp::Div => a.div(b).ok().map(|q| q.to_signed()),
    };
    ensure!(got == expected, "{op:?} on {a}, {b}: {got:?} vs {expected:?}");
    Ok(())
}

const OPS: [SignedOp; 4] = [SignedOp::Add, SignedOp::Sub, SignedOp::Mul, SignedOp::Div];

fn property_quantity(rng: &mut impl Rng) -> Result<(), String> {
    for _ in 0..PROPERTY_CASES {
        let (a, b) = (small_quantity(rng), small_quantity(rng));
        for op in OPS {
            signed_agree(op, &a, &b)?;
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let suites: [(&str, Suite); 5] = [
        ("multiply", property_multiply),
        ("divide", property_divide),
        ("sqrt", property_sqrt),
        ("denest", property_denest),
        ("quantity", property_quantity),
    ];
    let mut report = Vec::new();
    for (name, suite) in suites {
        let start = Instant::now();
        suite(&mut rng).map_err(|e| format!("{name}: {e}"))?;
        report.push(format!("{name} {} ms", start.elapsed().as_millis()));
    }
    Ok(format!("{PROPERTY_CASES} cases each ({})", report.join(", ")))
}

/// Recomputes `prefix * M * 10^k + suffix` for every stage from the trace.
fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut stages = 0;
    for _ in 0..INVARIANT_CASES {
        let (a, b) = (rng.gen_range(0..=1_000_000_000u64), rng.gen_range(0..=1_000_000_000u64));
        let (ba, bb) = (board(a), board(b));
        let (_, trace) = multiply_indian(&ba, &bb);
        let digits = ba.to_string();
        let multiplier = BigUint::from(b);
        let snapshots: Vec<_> = trace.boards().collect();
        ensure!(snapshots.len() == digits.len(), "{a} x {b}: {} stages", snapshots.len());
        for (i, snap) in snapshots.iter().enumerate() {
            let prefix: BigUint = digits[..=i].parse().expect("digits");
            let suffix: BigUint = if i + 1 < digits.len() { digits[i + 1..].parse().expect("digits") } else { 0u32.into() };
            let k = (digits.len() - 1 - i) as u32;
            let expected = prefix * &multiplier * BigUint::from(10u32).pow(k) + suffix;
            ensure!(snap.board.value() == expected, "{a} x {b}, stage {}: board {}", i + 1, snap.board);
            stages += 1;
        }
    }
    Ok(format!("{INVARIANT_CASES} multiplications, {stages} stages"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..NOTATION_CASES {
        let p = random_poly(&mut rng, 12);
        for notation in [Notation::Modern, Notation::Medieval] {
            let text = p.render(notation);
            let back = Polynomial::parse(&text, notation).map_err(|e| format!("{text:?}: {e}"))?;
            ensure!(back == p, "{text:?} parsed back as {back}");
            ensure!(back.render(notation) == text, "{text:?} did not render identically");
        }
    }
    let header = degree_columns(8);
    ensure!(
        header == ["dcc", "ddc", "cc", "dc", "dd", "c", "d", "r", "units"],
        "division header {header:?}"
    );
    for degree in 0..=15 {
        let name = DegreeName::canonical(degree);
        ensure!(name.exponent() == degree, "{name} has exponent {}", name.exponent());
        let reparsed = DegreeName::parse(name.as_str()).map_err(|e| e.to_string())?;
        ensure!(reparsed == name && reparsed.exponent() == degree, "{name} does not reparse");
        let single = Polynomial::monomial(degree, Quantity::one());
        let medieval = single.render(Notation::Medieval);
        let expected = if degree == 0 { "1".to_string() } else { name.to_string() };
        ensure!(medieval == expected, "degree {degree} renders as {medieval}");
    }
    Ok(format!("{NOTATION_CASES} polynomials in both notations, degrees 0-15 named"))
}

fn criterion_8() -> Outcome {
    let values: Vec<Quantity> = ["5", "-5", "3", "-3", "1", "-1", "1/2", "-1/2", "nothing"]
        .iter()
        .map(|s| s.parse().expect("quantity"))
        .collect();
    let mut checked = 0;
    for a in &values {
        for b in &values {
            for op in OPS {
                signed_agree(op, a, b)?;
            }
            let order = a.deficiency_compare(b);
            if a.is_deficient() && b.is_deficient() {
                let expected = match a.to_signed().cmp(&b.to_signed()) {
                    std::cmp::Ordering::Less => DeficiencyOrder::FirstGreater,
                    std::cmp::Ordering::Greater => DeficiencyOrder::SecondGreater,
                    std::cmp::Ordering::Equal => DeficiencyOrder::Equal,
                };
                ensure!(order == Ok(expected), "deficiency of {a} against {b}: {order:?}");
            } else {
                ensure!(order.is_err(), "deficiency_compare accepted {a}, {b}");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "multiplication golden trace", criterion_1, GOLDEN_LIMIT),
        (2, "denesting golden case", criterion_2, GOLDEN_LIMIT),
        (3, "polynomial square root golden case", criterion_3, GOLDEN_LIMIT),
        (4, "division golden case", criterion_4, GOLDEN_LIMIT),
        (5, "property suites", criterion_5, PROPERTY_LIMIT),
        (6, "multiplication loop invariant", criterion_6, Duration::MAX),
        (7, "notation round trip", criterion_7, Duration::MAX),
        (8, "sign rule and deficiency ordering", criterion_8, Duration::MAX),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {id} {name}: {detail} [{} ms]", elapsed.as_millis()),
            Err(reason) => {
                failures += 1;
                println!("FAIL {id} {name}: {reason} [{} ms]", elapsed.as_millis());
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

fn panic_message(payload: &Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}
