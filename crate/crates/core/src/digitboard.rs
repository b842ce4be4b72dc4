//! Positional decimal numerals written as rows of cells.
//!
//! A cell holds one of the nine digits or a ring, the mark for an empty
//! place. The ring is a cell state, never a digit: it contributes nothing to
//! the value of the board.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// The glyph used for an empty place.
pub const RING_GLYPH: char = 'O';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("empty input")]
    EmptyInput,
    #[error("invalid character {ch:?} at position {position}")]
    InvalidCharacter { position: usize, ch: char },
    #[error("a numeral may not begin with a ring")]
    NonCanonicalLeadingRing,
}

/// A digit in `1..=9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digit(u8);

impl Digit {
    pub fn new(value: u8) -> Option<Digit> {
        (1..=9).contains(&value).then_some(Digit(value))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Digit(Digit),
    Ring,
}

impl Cell {
    /// The cell for a place value in `0..=9`; 0 becomes a ring.
    pub fn from_value(v: u8) -> Cell {
        assert!(v <= 9, "cell value {v} out of range");
        Digit::new(v).map_or(Cell::Ring, Cell::Digit)
    }

    /// What the cell contributes at its place: the ring contributes nothing.
    pub fn value(self) -> u8 {
        match self {
            Cell::Digit(d) => d.get(),
            Cell::Ring => 0,
        }
    }

    pub fn is_ring(self) -> bool {
        matches!(self, Cell::Ring)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Digit(d) => serializer.serialize_u8(d.get()),
            Cell::Ring => serializer.serialize_str("ring"),
        }
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Digit(u8),
            Word(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Digit(v) => Digit::new(v)
                .map(Cell::Digit)
                .ok_or_else(|| D::Error::custom(format!("digit {v} outside 1..=9"))),
            Raw::Word(w) if w == "ring" => Ok(Cell::Ring),
            Raw::Word(w) => Err(D::Error::custom(format!("unknown cell {w:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderStyle {
    /// Rings print as `0`.
    Ascii,
    /// Rings print as the ring glyph `O`.
    #[default]
    RingGlyph,
}

/// A row of cells, most significant first.
///
/// Boards built by parsing or from a value are canonical: they never start
/// with a ring unless they are the single-ring board. Working copies inside
/// the multiplication may carry leading rings until [`DigitBoard::canonical`]
/// is applied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DigitBoard {
    cells: Vec<Cell>,
}

impl DigitBoard {
    /// The single-ring board.
    pub fn nothing() -> Self {
        DigitBoard { cells: vec![Cell::Ring] }
    }

    /// Wraps raw cells without checking canonical form.
    pub fn from_cells(cells: Vec<Cell>) -> Self {
        assert!(!cells.is_empty(), "a board has at least one cell");
        DigitBoard { cells }
    }

    pub fn parse(text: &str) -> Result<Self, BoardError> {
        if text.is_empty() {
            return Err(BoardError::EmptyInput);
        }
        let cells = text
            .chars()
            .enumerate()
            .map(|(position, ch)| match ch {
                '0' | RING_GLYPH => Ok(Cell::Ring),
                '1'..='9' => Ok(Cell::Digit(Digit(ch as u8 - b'0'))),
                _ => Err(BoardError::InvalidCharacter { position, ch }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if cells.len() > 1 && cells[0].is_ring() {
            return Err(BoardError::NonCanonicalLeadingRing);
        }
        Ok(DigitBoard { cells })
    }

    pub fn render(&self, style: RenderStyle) -> String {
        self.cells
            .iter()
            .map(|c| match (c, style) {
                (Cell::Digit(d), _) => char::from(b'0' + d.get()),
                (Cell::Ring, RenderStyle::Ascii) => '0',
                (Cell::Ring, RenderStyle::RingGlyph) => RING_GLYPH,
            })
            .collect()
    }

    pub fn of_value(n: &BigUint) -> Self {
        if n.is_zero() {
            return Self::nothing();
        }
        let cells = n.to_radix_be(10).into_iter().map(Cell::from_value).collect();
        DigitBoard { cells }
    }

    pub fn value(&self) -> BigUint {
        let places: Vec<u8> = self.cells.iter().map(|c| c.value()).collect();
        BigUint::from_radix_be(&places, 10).expect("cell values are decimal")
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_nothing(&self) -> bool {
        self.cells.iter().all(|c| c.is_ring())
    }

    pub fn is_canonical(&self) -> bool {
        self.cells.len() == 1 || !self.cells[0].is_ring()
    }

    /// Strips leading rings, leaving the single-ring board for an empty value.
    pub fn canonical(&self) -> Self {
        match self.cells.iter().position(|c| !c.is_ring()) {
            Some(first) => DigitBoard { cells: self.cells[first..].to_vec() },
            None => Self::nothing(),
        }
    }

    /// Cell at a place counted from the units (place 0).
    pub fn at_place(&self, place: usize) -> Cell {
        if place >= self.cells.len() {
            return Cell::Ring;
        }
        self.cells[self.cells.len() - 1 - place]
    }

    /// Place values, units first.
    pub(crate) fn places_le(&self) -> Vec<u8> {
        self.cells.iter().rev().map(|c| c.value()).collect()
    }

    pub(crate) fn from_places_le(places: &[u8]) -> Self {
        if places.is_empty() {
            return Self::nothing();
        }
        DigitBoard { cells: places.iter().rev().map(|&v| Cell::from_value(v)).collect() }
    }

    /// Doubles the board column by column, carrying leftward.
    pub fn doubled(&self) -> Self {
        let mut places = self.places_le();
        let mut carry = 0;
        for p in places.iter_mut() {
            let v = *p * 2 + carry;
            *p = v % 10;
            carry = v / 10;
        }
        if carry > 0 {
            places.push(carry);
        }
        Self::from_places_le(&places).canonical()
    }

    /// Halves the board column by column from the left. Returns the halved
    /// board and whether a unit was left over.
    pub fn halved(&self) -> (Self, bool) {
        let mut borrow = 0;
        let cells: Vec<Cell> = self
            .cells
            .iter()
            .map(|c| {
                let v = borrow * 10 + c.value();
                borrow = v % 2;
                Cell::from_value(v / 2)
            })
            .collect();
        (DigitBoard { cells }.canonical(), borrow == 1)
    }

    /// Column addition of two boards.
    pub fn column_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.places_le(), other.places_le());
        let mut out = Vec::with_capacity(a.len().max(b.len()) + 1);
        let mut carry = 0;
        for i in 0..a.len().max(b.len()) {
            let v = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0) + carry;
            out.push(v % 10);
            carry = v / 10;
        }
        if carry > 0 {
            out.push(carry);
        }
        Self::from_places_le(&out).canonical()
    }
}

impl FromStr for DigitBoard {
    type Err = BoardError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DigitBoard::parse(s)
    }
}

impl fmt::Display for DigitBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Ascii))
    }
}

impl<'de> Deserialize<'de> for DigitBoard {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let cells = Vec::<Cell>::deserialize(deserializer)?;
        if cells.is_empty() {
            return Err(D::Error::custom("a board has at least one cell"));
        }
        Ok(DigitBoard { cells })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(v: u8) -> Cell {
        Cell::Digit(Digit::new(v).unwrap())
    }

    #[test]
    fn parse_examples() {
        assert_eq!(DigitBoard::parse("204").unwrap().cells(), &[d(2), Cell::Ring, d(4)]);
        assert_eq!(DigitBoard::parse("2O4").unwrap().cells(), &[d(2), Cell::Ring, d(4)]);
        assert_eq!(DigitBoard::parse("O").unwrap(), DigitBoard::nothing());
        assert_eq!(DigitBoard::parse("0").unwrap(), DigitBoard::nothing());
        assert_eq!(DigitBoard::parse("007"), Err(BoardError::NonCanonicalLeadingRing));
        assert_eq!(DigitBoard::parse(""), Err(BoardError::EmptyInput));
        assert_eq!(DigitBoard::parse("12a"), Err(BoardError::InvalidCharacter { position: 2, ch: 'a' }));
        assert_eq!(DigitBoard::parse("τ"), Err(BoardError::InvalidCharacter { position: 0, ch: 'τ' }));
    }

    #[test]
    fn render_examples() {
        let b = DigitBoard::from_cells(vec![d(2), Cell::Ring, d(4)]);
        assert_eq!(b.render(RenderStyle::RingGlyph), "2O4");
        assert_eq!(DigitBoard::from_cells(vec![d(1), Cell::Ring]).render(RenderStyle::Ascii), "10");
        assert_eq!(DigitBoard::nothing().render(RenderStyle::RingGlyph), "O");
    }

    #[test]
    fn values() {
        let b = DigitBoard::parse("428326").unwrap();
        assert_eq!(b.value(), BigUint::from(428326u32));
        assert_eq!(DigitBoard::of_value(&BigUint::zero()), DigitBoard::nothing());
        assert_eq!(DigitBoard::of_value(&BigUint::from(497764u32)).to_string(), "497764");
        assert_eq!(DigitBoard::from_cells(vec![Cell::Ring, Cell::Ring, d(3)]).canonical().to_string(), "3");
    }

    #[test]
    fn column_operations() {
        let b = DigitBoard::parse("25").unwrap();
        assert_eq!(b.doubled().to_string(), "50");
        assert_eq!(b.doubled().doubled().to_string(), "100");
        assert_eq!(DigitBoard::parse("2326").unwrap().halved(), (DigitBoard::parse("1163").unwrap(), false));
        assert_eq!(DigitBoard::parse("7").unwrap().halved(), (DigitBoard::parse("3").unwrap(), true));
        assert_eq!(DigitBoard::parse("1").unwrap().halved().0, DigitBoard::nothing());
        let s = DigitBoard::parse("50").unwrap().column_sum(&DigitBoard::parse("100").unwrap());
        assert_eq!(s.to_string(), "150");
    }

    #[test]
    fn json_cells() {
        let b = DigitBoard::parse("204").unwrap();
        let v = serde_json::to_value(&b).unwrap();
        assert_eq!(v, serde_json::json!([2, "ring", 4]));
        assert_eq!(serde_json::from_value::<DigitBoard>(v).unwrap(), b);
        assert!(serde_json::from_value::<DigitBoard>(serde_json::json!([0])).is_err());
    }

    fn canonical_text() -> impl Strategy<Value = String> {
        prop_oneof![Just("O".to_string()), "[1-9][0O1-9]{0,30}"]
    }

    proptest! {
        #[test]
        fn parse_render_round_trip(text in canonical_text()) {
            let b = DigitBoard::parse(&text).unwrap();
            let glyph = text.replace('0', "O");
            prop_assert_eq!(b.render(RenderStyle::RingGlyph), glyph.clone());
            prop_assert_eq!(DigitBoard::parse(&b.render(RenderStyle::Ascii)).unwrap(), b.clone());
            prop_assert_eq!(DigitBoard::parse(&glyph).unwrap(), b);
        }

        #[test]
        fn value_round_trip(n in 0u64..=1_000_000_000_000) {
            let v = BigUint::from(n);
            let b = DigitBoard::of_value(&v);
            prop_assert!(b.is_canonical());
            prop_assert_eq!(b.value(), v);
        }
    }
}
