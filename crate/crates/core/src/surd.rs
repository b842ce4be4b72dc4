//! Quadratic surds and the denesting of `sqrt(N + sqrt(a1) + ... + sqrt(as))`
//! into a plain sum of square roots.
//!
//! Squaring `sqrt(m1) + ... + sqrt(mk)` gives the rational part `m1 + ... + mk`
//! and one cross term `2 sqrt(mi mj) = sqrt(4 mi mj)` for each pair. When
//! `mi mj` is a rational square the cross term is rational and folds into the
//! rational part instead.
//!
//! [`denest`] first tries the historical assignment: with the surds sorted,
//! the smallest `k - 1` are taken as `4 m1 mj`, the next as `4 m2 m3`, the
//! second term is named "the thing" `r`, every other term is written as a
//! rational multiple of `r`, and `r` is fixed by the rational part. If that
//! does not verify, every pairing of surds to term pairs (up to five terms,
//! allowing folded pairs) is searched.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::quantity::Quantity;
use crate::trace::Trace;

/// Largest root size the denesting search considers.
pub const MAX_TERMS: usize = 5;

const TERM_NAMES: [&str; MAX_TERMS] = ["m", "n", "p", "q", "s"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurdError {
    #[error("radicand {0} is not positive")]
    NonPositiveRadicand(Quantity),
    #[error("rational part {0} is deficient")]
    DeficientRationalPart(Quantity),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("{}", match rational_root {
        Some(root) => format!("not denestable: no surds remain; the root is the rational {root}"),
        None => "not denestable".to_string(),
    })]
    NotDenestable { rational_root: Option<Quantity> },
    #[error("no root of at most {MAX_TERMS} terms can produce {surds} surds")]
    AmbiguousTermCount { surds: usize },
}

/// `N + sqrt(a1) + ... + sqrt(as)` with every `ai` positive and not a
/// rational square, sorted increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurdExpression {
    rational: Quantity,
    surds: Vec<Quantity>,
}

impl SurdExpression {
    /// Builds an expression, folding radicands that are rational squares into
    /// the rational part.
    pub fn new(rational: Quantity, radicands: Vec<Quantity>) -> Result<Self, SurdError> {
        let mut rational = rational;
        let mut surds = Vec::with_capacity(radicands.len());
        for a in radicands {
            if !a.is_augmented() {
                return Err(SurdError::NonPositiveRadicand(a));
            }
            match a.rational_sqrt() {
                Some(root) => rational = &rational + &root,
                None => surds.push(a),
            }
        }
        if rational.is_deficient() {
            return Err(SurdError::DeficientRationalPart(rational));
        }
        surds.sort();
        Ok(SurdExpression { rational, surds })
    }

    pub fn rational(&self) -> &Quantity {
        &self.rational
    }

    pub fn surds(&self) -> &[Quantity] {
        &self.surds
    }
}

/// `sqrt(m1) + ... + sqrt(mk)` with positive terms, sorted increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurdSum {
    terms: Vec<Quantity>,
}

impl SurdSum {
    pub fn new(terms: Vec<Quantity>) -> Result<Self, SurdError> {
        if let Some(bad) = terms.iter().find(|t| !t.is_augmented()) {
            return Err(SurdError::NonPositiveRadicand(bad.clone()));
        }
        let mut terms = terms;
        terms.sort();
        Ok(SurdSum { terms })
    }

    pub fn of_integers(terms: &[u64]) -> Result<Self, SurdError> {
        Self::new(terms.iter().map(|&t| Quantity::augmented(t, 1)).collect())
    }

    pub fn terms(&self) -> &[Quantity] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `(sqrt(m1) + ... + sqrt(mk))^2` as a surd expression.
pub fn expand_square(sum: &SurdSum) -> SurdExpression {
    let mut rational = Quantity::nothing();
    let mut surds = Vec::new();
    for (i, mi) in sum.terms.iter().enumerate() {
        rational = &rational + mi;
        for mj in &sum.terms[i + 1..] {
            let cross = &Quantity::integer(4) * &(mi * mj);
            match cross.rational_sqrt() {
                Some(root) => rational = &rational + &root,
                None => surds.push(cross),
            }
        }
    }
    surds.sort();
    SurdExpression { rational, surds }
}

fn pairs(k: usize) -> usize {
    k * (k.saturating_sub(1)) / 2
}

/// Denests `e`, returning a verified root and a trace of the working.
///
/// When several roots verify, the lexicographically smallest term list is
/// returned and the others are listed in the trace.
pub fn denest(e: &SurdExpression) -> Result<(SurdSum, Trace), SurdError> {
    let mut trace = Trace::new("denest");
    if e.surds.is_empty() {
        return Err(SurdError::NotDenestable { rational_root: e.rational.rational_sqrt() });
    }
    let s = e.surds.len();
    if pairs(MAX_TERMS) < s {
        return Err(SurdError::AmbiguousTermCount { surds: s });
    }
    trace.note("expression", e.to_string());

    let historical = historical_path(e, &mut trace);
    if historical.is_none() {
        trace.note("fallback", "searching every pairing of surds to terms");
    }

    let mut roots = search_all(e);
    if let Some(h) = &historical {
        if !roots.contains(h) {
            roots.push(h.clone());
        }
    }
    roots.sort();
    let Some(root) = roots.first().cloned() else {
        trace.note("result", "no root verifies");
        return Err(SurdError::NotDenestable { rational_root: None });
    };
    if roots.len() > 1 {
        let alternates = roots[1..].iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ");
        trace.note("alternate roots", alternates);
    }
    let square = expand_square(&root);
    assert_eq!(&square, e, "denest produced an unverified root");
    trace.bind("root", TERM_NAMES.iter().copied().zip(root.terms.iter().cloned()));
    trace.note("verification", format!("({root})^2 = {square}"));
    Ok((root, trace))
}

/// The assignment that pairs the smallest surds with the smallest term, with
/// the second term taken as the unknown.
fn historical_path(e: &SurdExpression, trace: &mut Trace) -> Option<SurdSum> {
    let s = e.surds.len();
    let Some(k) = (3..=MAX_TERMS).find(|&k| pairs(k) == s) else {
        trace.note("historical path", format!("{s} surds is not a pair count of three or more terms"));
        return None;
    };
    let a = &e.surds;
    let names = &TERM_NAMES[..k];
    trace.note("term count", format!("{s} surds are the pairs of {k} terms {}", names.join(", ")));
    let mut assignment: Vec<String> =
        (1..k).map(|j| format!("{} = 4{}{}", a[j - 1], names[0], names[j])).collect();
    assignment.push(format!("{} = 4{}{}", a[k - 1], names[1], names[2]));
    trace.note("assignment", assignment.join(", "));

    // n is the thing; 4m = a1/r, so each other term is (a_{j-1}/a1) r,
    // and m = (a1/a_k) p = (a2/a_k) r.
    let ratio = |x: &Quantity, y: &Quantity| x.div(y).expect("surds are positive");
    let mut coefficients = vec![ratio(&a[1], &a[k - 1])];
    coefficients.extend((1..k).map(|j| ratio(&a[j - 1], &a[0])));
    trace.bind(
        format!("the thing: {} = r; terms as multiples of r", names[1]),
        names.iter().copied().zip(coefficients.iter().cloned()),
    );

    let total = coefficients.iter().fold(Quantity::nothing(), |acc, c| &acc + c);
    let clear = Quantity::integer(lcm_of_denominators(&[&total, &e.rational]));
    trace.note(
        "sum of terms",
        format!("{}r = {}", &total * &clear, &e.rational * &clear),
    );
    let r = e.rational.div(&total).expect("coefficients are positive");
    trace.bind("the thing", [("r", r.clone())]);
    if !r.is_augmented() {
        trace.note("historical path", "the thing is not positive");
        return None;
    }
    let terms: Vec<Quantity> = coefficients.iter().map(|c| c * &r).collect();
    trace.bind("terms", names.iter().copied().zip(terms.iter().cloned()));
    let root = SurdSum::new(terms).ok()?;
    if expand_square(&root) == *e {
        trace.note("historical path", format!("verified: {root}"));
        Some(root)
    } else {
        trace.note("historical path", format!("{root} does not square back to the expression"));
        None
    }
}

fn lcm_of_denominators(qs: &[&Quantity]) -> BigInt {
    use num_integer::Integer;
    qs.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()))
}

/// Restricted-growth strings: every set partition of `0..k`.
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            prefix.push(b);
            grow(prefix, k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::with_capacity(k), k, &mut out);
    out
}

/// A term written as `coef * r^exp` with `exp` either 1 or -1.
#[derive(Clone)]
struct Term {
    coef: Quantity,
    exp: i8,
}

struct Search<'a> {
    target: &'a SurdExpression,
    /// Each surd divided by four.
    quarters: Vec<Quantity>,
    blocks: Vec<usize>,
    order: Vec<usize>,
    anchors: Vec<usize>,
    /// For each slot, an earlier term that can swap labels with this one.
    twins: Vec<Option<usize>>,
    /// For each slot, the placed terms whose cross product with it is a surd
    /// not yet accounted for.
    checks: Vec<Vec<usize>>,
    terms: Vec<Option<Term>>,
    /// The surd index each term was paired with against its anchor.
    chosen: Vec<Option<usize>>,
    used: u32,
    /// The thing and its square, once fixed.
    r: Option<(Quantity, Quantity)>,
    found: Vec<SurdSum>,
}

impl Search<'_> {
    /// Unused surd indices, one per distinct value.
    fn free(&self) -> Vec<usize> {
        let surds = &self.target.surds;
        (0..surds.len())
            .filter(|&i| self.used & (1 << i) == 0)
            .filter(|&i| i == 0 || self.used & (1 << (i - 1)) != 0 || surds[i - 1] != surds[i])
            .collect()
    }

    fn place(&mut self, slot: usize) {
        if slot == self.order.len() {
            self.finish();
            return;
        }
        let v = self.order[slot];
        let anchor = self.terms[self.anchors[slot]].clone().expect("anchors are placed first");
        let floor = self.twins[slot].and_then(|t| self.chosen[t]);
        for i in self.free() {
            if floor.is_some_and(|f| self.target.surds[i] < self.target.surds[f]) {
                continue;
            }
            let coef = self.quarters[i].div(&anchor.coef).expect("terms are never nothing");
            self.used |= 1 << i;
            self.chosen[v] = Some(i);
            self.terms[v] = Some(Term { coef, exp: -anchor.exp });
            self.check(slot, 0);
            self.terms[v] = None;
            self.chosen[v] = None;
            self.used &= !(1 << i);
        }
    }

    /// Matches the cross products of the term in `slot` with already placed
    /// terms against the unused surds.
    fn check(&mut self, slot: usize, nth: usize) {
        let Some(&w) = self.checks[slot].get(nth) else {
            self.place(slot + 1);
            return;
        };
        let tv = self.terms[self.order[slot]].as_ref().expect("placed");
        let tw = self.terms[w].as_ref().expect("placed");
        let product = &tv.coef * &tw.coef;
        let exp = tv.exp + tw.exp;
        let quarter = match (exp, &self.r) {
            (0, _) => Some(product.clone()),
            (_, Some((_, r2))) if exp > 0 => Some(&product * r2),
            (_, Some((_, r2))) => Some(product.div(r2).expect("r is never nothing")),
            (_, None) => None,
        };
        match quarter {
            Some(q) => {
                let surds = &self.target.surds;
                let hit = (0..surds.len()).find(|&i| self.used & (1 << i) == 0 && self.quarters[i] == q);
                if let Some(i) = hit {
                    self.used |= 1 << i;
                    self.check(slot, nth + 1);
                    self.used &= !(1 << i);
                }
            }
            None => {
                // The pair fixes r^2; try each unused surd as its value.
                for i in self.free() {
                    let quarter = &self.quarters[i];
                    let r2 = if exp > 0 { quarter.div(&product) } else { product.div(quarter) }.expect("nonzero");
                    let Some(r) = r2.rational_sqrt() else { continue };
                    self.used |= 1 << i;
                    self.r = Some((r, r2));
                    self.check(slot, nth + 1);
                    self.r = None;
                    self.used &= !(1 << i);
                }
            }
        }
    }

    fn finish(&mut self) {
        debug_assert_eq!(self.used.count_ones() as usize, self.target.surds.len());
        let terms: Vec<Term> = self.terms.iter().map(|t| t.clone().expect("placed")).collect();
        let candidates = match &self.r {
            Some((r, _)) => vec![r.clone()],
            None => match self.solve_for_thing(&terms) {
                Some(rs) => rs,
                None => return,
            },
        };
        for r in candidates {
            if !r.is_augmented() {
                continue;
            }
            let values: Vec<Quantity> = terms
                .iter()
                .map(|t| if t.exp > 0 { &t.coef * &r } else { t.coef.div(&r).unwrap() })
                .collect();
            let Ok(sum) = SurdSum::new(values) else { continue };
            if !self.found.contains(&sum) && expand_square(&sum) == *self.target {
                self.found.push(sum);
            }
        }
    }

    /// Solves `alpha r + beta / r + gamma = N` for positive rational `r`.
    fn solve_for_thing(&self, terms: &[Term]) -> Option<Vec<Quantity>> {
        let two = Quantity::integer(2);
        let (mut alpha, mut beta, mut gamma) = (Quantity::nothing(), Quantity::nothing(), Quantity::nothing());
        for (i, ti) in terms.iter().enumerate() {
            if ti.exp > 0 {
                alpha = &alpha + &ti.coef;
            } else {
                beta = &beta + &ti.coef;
            }
            for (j, tj) in terms.iter().enumerate().skip(i + 1) {
                if self.blocks[i] != self.blocks[j] {
                    continue;
                }
                let cross = &two * &(&ti.coef * &tj.coef).rational_sqrt()?;
                match (ti.exp > 0, tj.exp > 0) {
                    (true, true) => alpha = &alpha + &cross,
                    (false, false) => beta = &beta + &cross,
                    _ => gamma = &gamma + &cross,
                }
            }
        }
        let rest = &self.target.rational - &gamma;
        if alpha.is_nothing() {
            return Some(beta.div(&rest).ok().into_iter().collect());
        }
        if beta.is_nothing() {
            return Some(vec![rest.div(&alpha).unwrap()]);
        }
        // alpha r^2 - rest r + beta = 0
        let disc = &(&rest * &rest) - &(&Quantity::integer(4) * &(&alpha * &beta));
        let root = disc.rational_sqrt()?;
        let denom = &two * &alpha;
        Some(vec![
            (&rest + &root).div(&denom).unwrap(),
            (&rest - &root).div(&denom).unwrap(),
        ])
    }
}

/// Every verified root of at most [`MAX_TERMS`] terms.
fn search_all(e: &SurdExpression) -> Vec<SurdSum> {
    let s = e.surds.len();
    let mut found: Vec<SurdSum> = Vec::new();
    let quarters: Vec<Quantity> = e.surds.iter().map(|a| a.div(&Quantity::integer(4)).expect("four")).collect();
    for k in 2..=MAX_TERMS {
        if pairs(k) < s {
            continue;
        }
        // Terms are unordered, so one partition per multiset of block sizes
        // covers every labelling.
        let mut shapes: Vec<Vec<usize>> = Vec::new();
        for blocks in set_partitions(k) {
            let block_count = blocks.iter().max().unwrap() + 1;
            if block_count < 2 {
                continue;
            }
            let mut shape: Vec<usize> = (0..block_count).map(|b| blocks.iter().filter(|&&x| x == b).count()).collect();
            shape.sort_unstable();
            if shapes.contains(&shape) {
                continue;
            }
            shapes.push(shape);
            let cross = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| blocks[i] != blocks[j])
                .count();
            if cross != s {
                continue;
            }
            let second = (1..k).find(|&v| blocks[v] != blocks[0]).unwrap();
            let mut order = vec![second];
            order.extend((1..k).filter(|&v| v != second));
            let anchors: Vec<usize> = order.iter().map(|&v| if blocks[v] != blocks[0] { 0 } else { second }).collect();
            let size = |v: usize| blocks.iter().filter(|&&b| b == blocks[v]).count();
            let swappable = |v: usize, w: usize| blocks[v] == blocks[w] || (size(v) == 1 && size(w) == 1);
            let twins = (0..order.len())
                .map(|slot| {
                    (1..slot)
                        .rev()
                        .find(|&t| anchors[t] == anchors[slot] && swappable(order[t], order[slot]))
                        .map(|t| order[t])
                })
                .collect();
            let checks = (0..order.len())
                .map(|slot| {
                    let v = order[slot];
                    order[..slot].iter().copied().filter(|&w| w != anchors[slot] && blocks[w] != blocks[v]).collect()
                })
                .collect();
            let mut terms = vec![None; k];
            terms[0] = Some(Term { coef: Quantity::one(), exp: 1 });
            let mut search = Search {
                target: e,
                quarters: quarters.clone(),
                blocks,
                order,
                anchors,
                twins,
                checks,
                terms,
                chosen: vec![None; k],
                used: 0,
                r: None,
                found: Vec::new(),
            };
            search.place(0);
            for root in search.found {
                if !found.contains(&root) {
                    found.push(root);
                }
            }
        }
    }
    found
}

fn render_radicand(q: &Quantity) -> String {
    if q.is_integer() {
        format!("s{q}")
    } else {
        format!("s({q})")
    }
}

/// `16 + s24 + s40`; fractional radicands print as `s(3/2)`.
impl fmt::Display for SurdExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::with_capacity(self.surds.len() + 1);
        if !self.rational.is_nothing() || self.surds.is_empty() {
            parts.push(self.rational.to_string());
        }
        parts.extend(self.surds.iter().map(render_radicand));
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("nothing");
        }
        f.write_str(&self.terms.iter().map(render_radicand).collect::<Vec<_>>().join(" + "))
    }
}

enum Token {
    Rational(Quantity),
    Surd(Quantity),
}

fn parse_terms(text: &str) -> Result<Vec<Token>, SurdError> {
    let syntax = |position: usize, message: &str| SurdError::Syntax { position, message: message.to_string() };
    if text.trim().is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut tokens = Vec::new();
    let mut offset = 0;
    for piece in text.split('+') {
        let lead = piece.len() - piece.trim_start().len();
        let position = offset + lead;
        let t = piece.trim();
        offset += piece.len() + 1;
        if t.is_empty() {
            return Err(syntax(position, "missing term"));
        }
        let token = if let Some(rad) = t.strip_prefix('s') {
            let rad = rad.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rad);
            let q: Quantity = rad.parse().map_err(|_| syntax(position, "bad radicand"))?;
            Token::Surd(q)
        } else {
            Token::Rational(t.parse().map_err(|_| syntax(position, "expected a number or sN"))?)
        };
        tokens.push(token);
    }
    Ok(tokens)
}

/// Parses `16 + s24 + s40 + ...`, where `sN` is the square root of `N`.
impl FromStr for SurdExpression {
    type Err = SurdError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut rational = Quantity::nothing();
        let mut radicands = Vec::new();
        for token in parse_terms(s)? {
            match token {
                Token::Rational(q) => rational = &rational + &q,
                Token::Surd(q) => radicands.push(q),
            }
        }
        SurdExpression::new(rational, radicands)
    }
}

/// Parses `s2 + s3 + s5 + s6`.
impl FromStr for SurdSum {
    type Err = SurdError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut terms = Vec::new();
        for token in parse_terms(s)? {
            match token {
                Token::Surd(q) => terms.push(q),
                Token::Rational(_) => {
                    return Err(SurdError::Syntax { position: 0, message: "a sum of surds has only sN terms".into() })
                }
            }
        }
        SurdSum::new(terms)
    }
}

mod serde_impls {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{SurdExpression, SurdSum};
    use crate::quantity::Quantity;

    #[derive(Serialize, Deserialize)]
    struct ExpressionRepr {
        rational: Quantity,
        surds: Vec<Quantity>,
    }

    impl Serialize for SurdExpression {
        fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
            ExpressionRepr { rational: self.rational.clone(), surds: self.surds.clone() }.serialize(serializer)
        }
    }

    impl<'de> Deserialize<'de> for SurdExpression {
        fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
            let repr = ExpressionRepr::deserialize(deserializer)?;
            SurdExpression::new(repr.rational, repr.surds).map_err(D::Error::custom)
        }
    }

    impl Serialize for SurdSum {
        fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
            self.terms.serialize(serializer)
        }
    }

    impl<'de> Deserialize<'de> for SurdSum {
        fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
            SurdSum::new(Vec::deserialize(deserializer)?).map_err(D::Error::custom)
        }
    }
}
