//! Exact rational quantities carrying the augmented/deficient distinction.
//!
//! A [`Quantity`] is stored as a reduced signed rational, but the public
//! surface speaks of *polarity*: a quantity is augmented (something added),
//! deficient (something missing from a sum) or nothing. Arithmetic is carried
//! out through the sign rule on polarity and magnitude, and the separate
//! signed-rational route in [`crate::oracle`] checks it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantityError {
    #[error("division by nothing")]
    DivisionByNothing,
    #[error("quantity {0} is not deficient")]
    NotDeficient(Quantity),
    #[error("denominator must not be nothing")]
    ZeroDenominator,
    #[error("expected a positive integer, got {0}")]
    NotPositive(String),
    #[error("invalid quantity literal {0:?}")]
    InvalidLiteral(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Augmented,
    Deficient,
    Nothing,
}

impl Polarity {
    /// The sign rule: like polarities give an augmented result, unlike ones a
    /// deficient result, and anything taken with nothing is nothing.
    pub fn sign_rule(self, other: Polarity) -> Polarity {
        use Polarity::*;
        match (self, other) {
            (Nothing, _) | (_, Nothing) => Nothing,
            (Augmented, Augmented) | (Deficient, Deficient) => Augmented,
            (Augmented, Deficient) | (Deficient, Augmented) => Deficient,
        }
    }

    fn flipped(self) -> Polarity {
        match self {
            Polarity::Augmented => Polarity::Deficient,
            Polarity::Deficient => Polarity::Augmented,
            Polarity::Nothing => Polarity::Nothing,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Augmented => "augmented",
            Polarity::Deficient => "deficient",
            Polarity::Nothing => "nothing",
        })
    }
}

/// An exact rational scalar. Always reduced, denominator positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quantity(BigRational);

impl Quantity {
    pub fn nothing() -> Self {
        Quantity(BigRational::zero())
    }

    pub fn one() -> Self {
        Quantity(BigRational::one())
    }

    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, QuantityError> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(QuantityError::ZeroDenominator);
        }
        Ok(Quantity(BigRational::new(numerator.into(), den)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Quantity(BigRational::from_integer(n.into()))
    }

    /// An augmented quantity of the given magnitude.
    pub fn augmented(numerator: u64, denominator: u64) -> Self {
        assert!(denominator != 0, "denominator must be positive");
        Quantity(BigRational::new(numerator.into(), denominator.into()))
    }

    /// A deficient quantity of the given magnitude (a count of what is missing).
    pub fn deficient(numerator: u64, denominator: u64) -> Self {
        -Self::augmented(numerator, denominator)
    }

    pub fn from_signed(value: BigRational) -> Self {
        Quantity(value)
    }

    /// The signed-rational reading: deficient maps to negative, nothing to 0.
    pub fn to_signed(&self) -> BigRational {
        self.0.clone()
    }

    pub fn as_signed(&self) -> &BigRational {
        &self.0
    }

    pub fn polarity(&self) -> Polarity {
        match self.0.numer().sign() {
            Sign::Plus => Polarity::Augmented,
            Sign::Minus => Polarity::Deficient,
            Sign::NoSign => Polarity::Nothing,
        }
    }

    pub fn is_nothing(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_augmented(&self) -> bool {
        self.polarity() == Polarity::Augmented
    }

    pub fn is_deficient(&self) -> bool {
        self.polarity() == Polarity::Deficient
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// |numerator| / denominator as an augmented quantity (or nothing).
    pub fn magnitude(&self) -> Quantity {
        Quantity(self.0.abs())
    }

    fn with_polarity(magnitude: BigRational, polarity: Polarity) -> Self {
        debug_assert!(!magnitude.is_negative());
        match polarity {
            Polarity::Nothing => Quantity::nothing(),
            Polarity::Augmented => Quantity(magnitude),
            Polarity::Deficient => Quantity(-magnitude),
        }
    }

    pub fn mul(&self, other: &Quantity) -> Quantity {
        let polarity = self.polarity().sign_rule(other.polarity());
        Self::with_polarity(self.0.abs() * other.0.abs(), polarity)
    }

    pub fn div(&self, other: &Quantity) -> Result<Quantity, QuantityError> {
        if other.is_nothing() {
            return Err(QuantityError::DivisionByNothing);
        }
        let polarity = self.polarity().sign_rule(other.polarity());
        Ok(Self::with_polarity(self.0.abs() / other.0.abs(), polarity))
    }

    pub fn add(&self, other: &Quantity) -> Quantity {
        let (pa, pb) = (self.polarity(), other.polarity());
        let (ma, mb) = (self.0.abs(), other.0.abs());
        match (pa, pb) {
            (Polarity::Nothing, _) => other.clone(),
            (_, Polarity::Nothing) => self.clone(),
            _ if pa == pb => Self::with_polarity(ma + mb, pa),
            // Unlike polarities: the larger magnitude keeps its polarity.
            _ => match ma.cmp(&mb) {
                Ordering::Equal => Quantity::nothing(),
                Ordering::Greater => Self::with_polarity(ma - mb, pa),
                Ordering::Less => Self::with_polarity(mb - ma, pb),
            },
        }
    }

    pub fn sub(&self, other: &Quantity) -> Quantity {
        self.add(&other.negated())
    }

    /// The same magnitude with the opposite polarity.
    pub fn negated(&self) -> Quantity {
        Self::with_polarity(self.0.abs(), self.polarity().flipped())
    }

    pub fn recip(&self) -> Result<Quantity, QuantityError> {
        Quantity::one().div(self)
    }

    /// Orders two deficient quantities by how much is missing: deficient 5 is
    /// the greater deficiency than deficient 1.
    pub fn deficiency_compare(&self, other: &Quantity) -> Result<DeficiencyOrder, QuantityError> {
        for q in [self, other] {
            if !q.is_deficient() {
                return Err(QuantityError::NotDeficient(q.clone()));
            }
        }
        Ok(match self.0.abs().cmp(&other.0.abs()) {
            Ordering::Greater => DeficiencyOrder::FirstGreater,
            Ordering::Less => DeficiencyOrder::SecondGreater,
            Ordering::Equal => DeficiencyOrder::Equal,
        })
    }

    /// Square root over the rationals, if the quantity is a rational square.
    pub fn rational_sqrt(&self) -> Option<Quantity> {
        if self.is_deficient() {
            return None;
        }
        let n = exact_isqrt(self.0.numer())?;
        let d = exact_isqrt(self.0.denom())?;
        Some(Quantity(BigRational::new(n, d)))
    }

    pub fn is_rational_square(&self) -> bool {
        self.rational_sqrt().is_some()
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Default for Quantity {
    fn default() -> Self {
        Quantity::nothing()
    }
}

impl PartialOrd for Quantity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The modern numeric order, in which deficient 1 exceeds deficient 5.
impl Ord for Quantity {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Add for &Quantity {
    type Output = Quantity;
    fn add(self, rhs: &Quantity) -> Quantity {
        Quantity::add(self, rhs)
    }
}

impl Sub for &Quantity {
    type Output = Quantity;
    fn sub(self, rhs: &Quantity) -> Quantity {
        Quantity::sub(self, rhs)
    }
}

impl Mul for &Quantity {
    type Output = Quantity;
    fn mul(self, rhs: &Quantity) -> Quantity {
        Quantity::mul(self, rhs)
    }
}

impl Neg for Quantity {
    type Output = Quantity;
    fn neg(self) -> Quantity {
        self.negated()
    }
}

impl Neg for &Quantity {
    type Output = Quantity;
    fn neg(self) -> Quantity {
        self.negated()
    }
}

impl From<i64> for Quantity {
    fn from(n: i64) -> Self {
        Quantity::integer(n)
    }
}

impl From<BigInt> for Quantity {
    fn from(n: BigInt) -> Self {
        Quantity::integer(n)
    }
}

impl From<BigUint> for Quantity {
    fn from(n: BigUint) -> Self {
        Quantity::integer(BigInt::from(n))
    }
}

/// Plain numeric rendering: `-5`, `3/2`, `0` for nothing.
impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity() {
            Polarity::Nothing => f.write_str("nothing"),
            p => write!(f, "{} {}", p, self.magnitude()),
        }
    }
}

/// Reads `7`, `-5`, `3/2` or `-1/2`. The word `nothing` is also accepted.
impl FromStr for Quantity {
    type Err = QuantityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "nothing" {
            return Ok(Quantity::nothing());
        }
        let bad = || QuantityError::InvalidLiteral(s.to_string());
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let digits_ok = |x: &str| {
            let x = x.strip_prefix('-').unwrap_or(x);
            !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit())
        };
        if !digits_ok(num) || !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
            return Err(bad());
        }
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Quantity::new(num, den)
    }
}

#[derive(Serialize, Deserialize)]
struct QuantityRepr {
    num: String,
    den: String,
    polarity: Polarity,
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuantityRepr {
            num: self.0.numer().abs().to_string(),
            den: self.0.denom().to_string(),
            polarity: self.polarity(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = QuantityRepr::deserialize(deserializer)?;
        let num: BigUint = repr.num.parse().map_err(D::Error::custom)?;
        let den: BigUint = repr.den.parse().map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        let magnitude = BigRational::new(BigInt::from(num), BigInt::from(den));
        if magnitude.is_zero() != (repr.polarity == Polarity::Nothing) {
            return Err(D::Error::custom("polarity disagrees with magnitude"));
        }
        Ok(Quantity::with_polarity(magnitude, repr.polarity))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeficiencyOrder {
    FirstGreater,
    SecondGreater,
    Equal,
}

/// Nicomachean kinds of positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityKind {
    /// A power of two, 2^k with k >= 1.
    EvenlyEven,
    /// Twice an odd number greater than one.
    EvenlyOdd,
    /// 2^k times an odd number greater than one, k >= 2.
    OddlyEven,
    Odd,
    Unit,
}

impl fmt::Display for ParityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityKind::EvenlyEven => "evenly-even",
            ParityKind::EvenlyOdd => "evenly-odd",
            ParityKind::OddlyEven => "oddly-even",
            ParityKind::Odd => "odd",
            ParityKind::Unit => "unit",
        })
    }
}

pub fn classify_parity(n: &BigUint) -> Result<ParityKind, QuantityError> {
    if n.is_zero() {
        return Err(QuantityError::NotPositive(n.to_string()));
    }
    if n.is_one() {
        return Ok(ParityKind::Unit);
    }
    let twos = n.trailing_zeros().unwrap_or(0);
    let odd_part = n >> twos;
    Ok(match (twos, odd_part.is_one()) {
        (0, _) => ParityKind::Odd,
        (_, true) => ParityKind::EvenlyEven,
        (1, false) => ParityKind::EvenlyOdd,
        (_, false) => ParityKind::OddlyEven,
    })
}
