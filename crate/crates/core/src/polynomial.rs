//! Univariate polynomials with exact coefficients.
//!
//! Degrees can be written in the modern way (`x^5`) or with the medieval
//! letters: `r` for the root (degree 1), `d` for the dynamis (degree 2) and
//! `c` for the cube (degree 3). A name's degree is the sum of its letters, so
//! `dcc` and `cdc` both denote degree 8.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use indexmap::IndexMap;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::quantity::Quantity;
use crate::trace::{Payload, TableRow, TableRows, Trace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown degree letter {letter:?} at position {position}")]
    UnknownLetter { letter: char, position: usize },
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("not a perfect square; last remainder {remainder}")]
    NotPerfectSquare { remainder: Polynomial },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Modern,
    Medieval,
}

/// A medieval degree name such as `dcc`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeName(String);

impl DegreeName {
    pub const UNITS: &'static str = "units";

    /// The conventional name: `units`, `r`, `d`, `c`, `dd`, `dc`, `cc`,
    /// `ddc`, `dcc`, `ccc`, ...
    pub fn canonical(degree: u32) -> Self {
        let cubes = |n: u32| "c".repeat(n as usize);
        let name = match degree {
            0 => Self::UNITS.to_string(),
            1 => "r".to_string(),
            n if n % 3 == 0 => cubes(n / 3),
            n if n % 3 == 2 => format!("d{}", cubes((n - 2) / 3)),
            n => format!("dd{}", cubes((n - 4) / 3)),
        };
        DegreeName(name)
    }

    /// Accepts any arrangement of `r`, `d` and `c`, or `units`.
    pub fn parse(letters: &str) -> Result<Self, PolyError> {
        if letters == Self::UNITS {
            return Ok(DegreeName(letters.to_string()));
        }
        if letters.is_empty() {
            return Err(PolyError::Syntax { position: 0, message: "empty degree name".into() });
        }
        if let Some((position, letter)) = letters.char_indices().find(|(_, c)| !matches!(c, 'r' | 'd' | 'c')) {
            return Err(PolyError::UnknownLetter { letter, position });
        }
        Ok(DegreeName(letters.to_string()))
    }

    pub fn exponent(&self) -> u32 {
        if self.0 == Self::UNITS {
            return 0;
        }
        self.0.chars().map(letter_weight).sum()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn letter_weight(c: char) -> u32 {
    match c {
        'r' => 1,
        'd' => 2,
        'c' => 3,
        _ => unreachable!("validated degree letter"),
    }
}

impl fmt::Display for DegreeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Coefficients keyed by degree; nothing-coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: BTreeMap<u32, Quantity>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Quantity) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(degree: u32, coefficient: Quantity) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, &coefficient);
        p
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs, combining
    /// like degrees.
    pub fn from_terms<I, Q>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, Q)>,
        Q: Into<Quantity>,
    {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, &c.into());
        }
        p
    }

    fn add_term(&mut self, degree: u32, c: &Quantity) {
        if c.is_nothing() {
            return;
        }
        let sum = match self.coeffs.get(&degree) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_nothing() {
            self.coeffs.remove(&degree);
        } else {
            self.coeffs.insert(degree, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn lowest_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading(&self) -> Option<(u32, &Quantity)> {
        self.coeffs.iter().next_back().map(|(d, c)| (*d, c))
    }

    pub fn coeff(&self, degree: u32) -> Quantity {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    /// Terms in descending degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Quantity)> {
        self.coeffs.iter().rev().map(|(d, c)| (*d, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_term(*d, c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|(d, c)| (*d, c.negated())).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &other.coeffs {
                out.add_term(da + db, &(ca * cb));
            }
        }
        out
    }

    /// Multiplies by `coefficient * x^degree`.
    pub fn mul_term(&self, degree: u32, coefficient: &Quantity) -> Polynomial {
        if coefficient.is_nothing() {
            return Polynomial::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|(d, c)| (d + degree, c * coefficient)).collect() }
    }

    pub fn parse(text: &str, notation: Notation) -> Result<Self, PolyError> {
        Parser { chars: text.char_indices().collect(), pos: 0, notation, len: text.len() }.polynomial()
    }

    pub fn render(&self, notation: Notation) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (degree, c)) in self.terms().enumerate() {
            match (i, c.is_deficient()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.magnitude();
            let one = magnitude == Quantity::one();
            if degree == 0 {
                let _ = write!(out, "{magnitude}");
                continue;
            }
            match (one, magnitude.is_integer()) {
                (true, _) => {}
                (false, true) => {
                    let _ = write!(out, "{magnitude}");
                }
                (false, false) => {
                    let _ = write!(out, "({magnitude})");
                }
            }
            match (notation, degree) {
                (Notation::Modern, 1) => out.push('x'),
                (Notation::Modern, n) => {
                    let _ = write!(out, "x^{n}");
                }
                (Notation::Medieval, n) => out.push_str(DegreeName::canonical(n).as_str()),
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Modern))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let map: IndexMap<String, &Quantity> = self.terms().map(|(d, c)| (d.to_string(), c)).collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let map = IndexMap::<String, Quantity>::deserialize(deserializer)?;
        let mut p = Polynomial::zero();
        for (k, c) in map {
            let d: u32 = k.parse().map_err(D::Error::custom)?;
            if c.is_nothing() {
                return Err(D::Error::custom("nothing-coefficients are not stored"));
            }
            p.add_term(d, &c);
        }
        Ok(p)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    notation: Notation,
    len: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn error(&self, message: &str) -> PolyError {
        PolyError::Syntax { position: self.offset(), message: message.to_string() }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn polynomial(mut self) -> Result<Polynomial, PolyError> {
        let mut p = Polynomial::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let negative = match self.peek() {
                Some('+') if !first => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                None => break,
                Some(_) => return Err(self.error("expected + or -")),
            };
            first = false;
            self.skip_ws();
            let (degree, coefficient) = self.term()?;
            p.add_term(degree, &if negative { coefficient.negated() } else { coefficient });
        }
        Ok(p)
    }

    fn coefficient(&mut self) -> Result<Option<Quantity>, PolyError> {
        let parenthesised = self.peek() == Some('(');
        if parenthesised {
            self.pos += 1;
            self.skip_ws();
        }
        let Some(num) = self.digits() else {
            return if parenthesised { Err(self.error("expected a number")) } else { Ok(None) };
        };
        let mut den = "1".to_string();
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            den = self.digits().ok_or_else(|| self.error("expected a denominator"))?;
        }
        if parenthesised {
            self.skip_ws();
            if self.peek() != Some(')') {
                return Err(self.error("expected )"));
            }
            self.pos += 1;
        }
        let at = self.offset();
        format!("{num}/{den}")
            .parse::<Quantity>()
            .map(Some)
            .map_err(|_| PolyError::Syntax { position: at, message: "zero denominator".into() })
    }

    fn term(&mut self) -> Result<(u32, Quantity), PolyError> {
        let coefficient = self.coefficient()?;
        self.skip_ws();
        let degree = match self.notation {
            Notation::Modern => self.modern_power()?,
            Notation::Medieval => self.medieval_name()?,
        };
        match (coefficient, degree) {
            (None, None) => Err(self.error("expected a term")),
            (c, d) => Ok((d.unwrap_or(0), c.unwrap_or_else(Quantity::one))),
        }
    }

    fn modern_power(&mut self) -> Result<Option<u32>, PolyError> {
        if self.peek() != Some('x') {
            return Ok(None);
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(Some(1));
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.offset();
        let exp = self.digits().ok_or_else(|| self.error("expected an exponent"))?;
        exp.parse().map(Some).map_err(|_| PolyError::Syntax { position: at, message: "exponent too large".into() })
    }

    fn medieval_name(&mut self) -> Result<Option<u32>, PolyError> {
        let units: Vec<char> = DegreeName::UNITS.chars().collect();
        let ahead = self.chars.get(self.pos..self.pos + units.len()).map(|w| w.iter().map(|(_, c)| *c).collect::<Vec<_>>());
        if ahead.as_deref() == Some(&units[..]) {
            self.pos += units.len();
            return Ok(Some(0));
        }
        let mut degree = None;
        while let Some(c) = self.peek().filter(char::is_ascii_alphabetic) {
            if !matches!(c, 'r' | 'd' | 'c') {
                return Err(PolyError::UnknownLetter { letter: c, position: self.offset() });
            }
            degree = Some(degree.unwrap_or(0) + letter_weight(c));
            self.pos += 1;
        }
        Ok(degree)
    }
}

/// Column names from `top` down to units.
pub fn degree_columns(top: u32) -> Vec<String> {
    (0..=top).rev().map(|d| DegreeName::canonical(d).to_string()).collect()
}

/// A table row holding the coefficients of `p` between its highest and
/// lowest degrees; `from` widens the span upward (to show an eliminated
/// column as nothing).
fn table_row(label: &str, p: &Polynomial, from: Option<u32>) -> TableRow {
    let hi = match (p.degree(), from) {
        (Some(d), Some(f)) => d.max(f),
        (d, f) => d.or(f).unwrap_or(0),
    };
    let lo = p.lowest_degree().map_or(hi, |l| l.min(hi));
    let cells = if p.is_zero() && from.is_none() {
        IndexMap::new()
    } else {
        (lo..=hi).rev().map(|d| (DegreeName::canonical(d).to_string(), p.coeff(d))).collect()
    };
    TableRow { label: label.to_string(), cells }
}

/// Reads a table row back into a polynomial.
pub fn row_polynomial(row: &TableRow) -> Result<Polynomial, PolyError> {
    let mut p = Polynomial::zero();
    for (column, c) in &row.cells {
        p.add_term(DegreeName::parse(column)?.exponent(), c);
    }
    Ok(p)
}

fn ordinal(n: usize) -> String {
    const WORDS: [&str; 12] = [
        "First", "Second", "Third", "Fourth", "Fifth", "Sixth", "Seventh", "Eighth", "Ninth", "Tenth", "Eleventh",
        "Twelfth",
    ];
    match WORDS.get(n - 1) {
        Some(w) => format!("{w} Remainder"),
        None => format!("Remainder {n}"),
    }
}

/// Division laid out as a table: each step divides the leading term of the
/// current remainder by the leading term of the divisor, records the
/// quotient term in its column and subtracts the shifted divisor.
pub fn divide_tabular(
    dividend: &Polynomial,
    divisor: &Polynomial,
) -> Result<(Polynomial, Polynomial, Trace), PolyError> {
    let (dd, lead) = divisor.leading().ok_or(PolyError::DivisionByZeroPolynomial)?;
    let lead = lead.clone();
    let top = dividend.degree().unwrap_or(0).max(dd);
    let columns = degree_columns(top);
    let mut trace = Trace::new("divide-tabular");

    let first_shift = dividend.degree().filter(|&n| n >= dd).map_or(0, |n| n - dd);
    trace.push(
        "setup",
        Payload::Table(TableRows {
            columns: columns.clone(),
            rows: vec![
                table_row("quotient", &Polynomial::zero(), None),
                table_row("dividend", dividend, None),
                table_row("divisor", &divisor.mul_term(first_shift, &Quantity::one()), None),
            ],
        }),
    );

    let mut quotient = Polynomial::zero();
    let mut remainder = dividend.clone();
    let mut step = 0;
    while let Some((rd, rc)) = remainder.leading() {
        if rd < dd {
            break;
        }
        step += 1;
        let shift = rd - dd;
        let q = rc.div(&lead).expect("leading coefficient is never nothing");
        let shifted = divisor.mul_term(shift, &q);
        remainder = remainder.sub(&shifted);
        debug_assert!(remainder.degree().is_none_or(|d| d < rd));
        quotient.add_term(shift, &q);
        let label = ordinal(step);
        trace.push(
            label.clone(),
            Payload::Table(TableRows {
                columns: columns.clone(),
                rows: vec![
                    table_row("quotient", &quotient, None),
                    table_row(&label, &remainder, Some(rd)),
                    table_row("divisor", &divisor.mul_term(shift, &Quantity::one()), None),
                ],
            }),
        );
    }
    Ok((quotient, remainder, trace))
}

/// Square root of a polynomial, term by term from the highest rank. The
/// positive root of the leading coefficient is taken.
pub fn sqrt_poly(p: &Polynomial) -> Result<(Polynomial, Trace), PolyError> {
    let mut trace = Trace::new("sqrt-poly");
    let Some((degree, lead)) = p.leading() else {
        trace.note("the aggregate is nothing", "");
        return Ok((Polynomial::zero(), trace));
    };
    let not_square = |remainder: &Polynomial| PolyError::NotPerfectSquare { remainder: remainder.clone() };
    if degree % 2 == 1 {
        return Err(not_square(p));
    }
    let head = lead.rational_sqrt().filter(|c| c.is_augmented()).ok_or_else(|| not_square(p))?;
    let root_degree = degree / 2;
    let columns = degree_columns(degree);

    let mut root = Polynomial::monomial(root_degree, head);
    let mut subtracted = root.mul(&root);
    let mut remainder = p.sub(&subtracted);
    let mut step = 1;
    loop {
        let label = format!("R{step}");
        trace.push(
            label.clone(),
            Payload::Table(TableRows {
                columns: columns.clone(),
                rows: vec![
                    table_row("root", &root, None),
                    table_row("subtracted", &subtracted, None),
                    table_row(&label, &remainder, None),
                ],
            }),
        );
        let Some((rd, rc)) = remainder.leading() else { break };
        if rd < root_degree {
            return Err(not_square(&remainder));
        }
        // 2 * next * (leading root term) must reach the remainder's rank.
        let (_, root_lead) = root.leading().expect("root is never zero here");
        let next_degree = rd - root_degree;
        let next = rc.div(&(&Quantity::integer(2) * root_lead)).expect("root lead is never nothing");
        let term = Polynomial::monomial(next_degree, next);
        subtracted = root.mul(&term).mul_term(0, &Quantity::integer(2)).add(&term.mul(&term));
        remainder = remainder.sub(&subtracted);
        root = root.add(&term);
        step += 1;
    }
    trace.note("remainder is nothing", "");
    Ok((root, trace))
}
