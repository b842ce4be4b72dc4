//! Board multiplication in the Indian manner, duplication and dimidiation.
//!
//! [`multiply_indian`] works on a single line of cells. The units place of
//! the multiplier starts under the highest place of the multiplicand; each
//! multiplicand digit, taken from the left, is multiplied by the whole
//! multiplier and the partial product is written back so that its units
//! digit replaces the digit just used, its higher digits being added into the
//! cells to the left. After every stage
//!
//! ```text
//! value(board) = prefix * M * 10^k + suffix
//! ```
//!
//! where `prefix` is the number formed by the multiplicand digits used so
//! far, `M` the multiplier, `k` the count of unprocessed places and `suffix`
//! the untouched low digits.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::digitboard::{Cell, DigitBoard};
use crate::quantity::Quantity;
use crate::trace::{BoardSnapshot, Payload, PlacedLine, Trace};

/// Multiplies a board by one digit, carrying leftward.
fn times_digit(board: &DigitBoard, digit: u8) -> DigitBoard {
    let mut places = board.places_le();
    let mut carry = 0u8;
    for p in places.iter_mut() {
        let v = *p * digit + carry;
        *p = v % 10;
        carry = v / 10;
    }
    if carry > 0 {
        places.push(carry);
    }
    DigitBoard::from_places_le(&places).canonical()
}

/// Writes `partial` into `work` (units first) with its units digit replacing
/// the cell at `place`, adding the higher digits into the cells to the left.
/// Returns true when the carry ran past the written extent.
fn merge_at(work: &mut Vec<u8>, partial: &DigitBoard, place: usize) -> bool {
    let written = work.len().max(place + partial.len());
    work[place] = 0;
    let mut carry = 0u8;
    let mut i = place;
    for v in partial.places_le() {
        if i == work.len() {
            work.push(0);
        }
        let sum = work[i] + v + carry;
        work[i] = sum % 10;
        carry = sum / 10;
        i += 1;
    }
    while carry > 0 {
        if i == work.len() {
            work.push(0);
        }
        let sum = work[i] + carry;
        work[i] = sum % 10;
        carry = sum / 10;
        i += 1;
    }
    work.len() > written
}

#[cfg(debug_assertions)]
fn stage_invariant(a: &DigitBoard, multiplier: &BigUint, stage: usize, work: &[u8]) -> bool {
    let cells = a.cells();
    let value = |cs: &[Cell]| cs.iter().fold(BigUint::zero(), |acc, c| acc * 10u32 + c.value());
    let prefix = value(&cells[..=stage]);
    let suffix = value(&cells[stage + 1..]);
    let k = (cells.len() - 1 - stage) as u32;
    let board = DigitBoard::from_places_le(work).value();
    board == prefix * multiplier * BigUint::from(10u32).pow(k) + suffix
}

/// Multiplies `a` by `b` on a single working line. The trace holds one board
/// snapshot per multiplicand digit (ring digits give a no-op stage).
pub fn multiply_indian(a: &DigitBoard, b: &DigitBoard) -> (DigitBoard, Trace) {
    let a = a.canonical();
    let b = b.canonical();
    let n = a.len();
    let mut trace = Trace::new("multiply-indian");
    let mut work = a.places_le();
    #[cfg(debug_assertions)]
    let multiplier_value = b.value();

    for (stage, cell) in a.cells().iter().enumerate() {
        let place = n - 1 - stage;
        let (upper, grew_left, label) = match cell {
            Cell::Ring => (None, false, format!("stage {}: the ring times {b} is nothing", stage + 1)),
            Cell::Digit(d) => {
                let partial = times_digit(&b, d.get());
                let grew = merge_at(&mut work, &partial, place);
                let label = format!("stage {}: {} x {b} = {partial}", stage + 1, d.get());
                (Some(PlacedLine { digits: partial, place }), grew, label)
            }
        };
        #[cfg(debug_assertions)]
        debug_assert!(stage_invariant(&a, &multiplier_value, stage, &work));

        let shift = (stage + 1).min(n - 1);
        let snapshot = BoardSnapshot {
            upper,
            board: DigitBoard::from_places_le(&work).canonical(),
            multiplier: Some(PlacedLine { digits: b.clone(), place: n - 1 - shift }),
            shift,
            grew_left,
        };
        let label = if grew_left { format!("{label} (board grew on the left)") } else { label };
        trace.push(label, Payload::Board(snapshot));
    }
    (DigitBoard::from_places_le(&work).canonical(), trace)
}

/// Multiplication by duplication: the multiplier is split into distinct
/// powers of two (greatest first) and the doubling ladder of the
/// multiplicand supplies the rows to be summed.
pub fn duplicate_multiply(a: &DigitBoard, b: &DigitBoard) -> (DigitBoard, Trace) {
    let a = a.canonical();
    let multiplier = b.value();
    let mut trace = Trace::new("duplicate-multiply");
    if multiplier.is_zero() || a.is_nothing() {
        trace.note("a factor is nothing", "the product is nothing");
        return (DigitBoard::nothing(), trace);
    }

    let bits = multiplier.bits();
    let powers: Vec<u64> = (0..bits).rev().filter(|&j| multiplier.bit(j)).collect();
    let decomposition = powers
        .iter()
        .map(|&j| (BigUint::one() << j).to_string())
        .collect::<Vec<_>>()
        .join(" + ");
    trace.note("decomposition", format!("{multiplier} = {decomposition}"));

    let mut rung = a.clone();
    let mut selected = Vec::with_capacity(powers.len());
    for j in 0..bits {
        let chosen = multiplier.bit(j);
        let label = format!("{} x {a}{}", BigUint::one() << j, if chosen { " (selected)" } else { "" });
        trace.push(
            label,
            Payload::Board(BoardSnapshot {
                upper: None,
                board: rung.clone(),
                multiplier: None,
                shift: 0,
                grew_left: false,
            }),
        );
        if chosen {
            selected.push(rung.clone());
        }
        if j + 1 < bits {
            rung = rung.doubled();
        }
    }

    selected.reverse();
    let product = selected.iter().fold(DigitBoard::nothing(), |acc, row| acc.column_sum(row));
    let rows = selected.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" + ");
    trace.note("sum of selected rows", format!("{rows} = {product}"));
    (product, trace)
}

/// Halves `a` the given number of times, carrying the fractional remainder
/// exactly. Zero halvings return the value itself and an empty trace.
pub fn dimidiate(a: &DigitBoard, halvings: u32) -> (Quantity, Trace) {
    let mut trace = Trace::new("dimidiate");
    let mut whole = a.canonical();
    let mut remainder = BigUint::zero();
    let mut denominator = BigUint::one();
    for step in 1..=halvings {
        let (half, odd) = whole.halved();
        if odd {
            remainder += &denominator;
        }
        denominator <<= 1u32;
        whole = half;
        let fraction = Quantity::from(remainder.clone())
            .div(&Quantity::from(denominator.clone()))
            .expect("powers of two are never nothing");
        trace.bind(
            format!("halving {step}"),
            [("whole", Quantity::from(whole.value())), ("fraction", fraction)],
        );
    }
    let quotient = Quantity::from(whole.value() * &denominator + remainder)
        .div(&Quantity::from(denominator))
        .expect("powers of two are never nothing");
    (quotient, trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn board(s: &str) -> DigitBoard {
        s.parse().unwrap()
    }

    #[test]
    fn reproduces_the_four_boards() {
        let (product, trace) = multiply_indian(&board("2326"), &board("214"));
        assert_eq!(product.to_string(), "497764");
        let boards: Vec<String> = trace.boards().map(|s| s.board.to_string()).collect();
        assert_eq!(boards, ["428326", "492226", "496486", "497764"]);
        let uppers: Vec<String> = trace.boards().map(|s| s.upper.as_ref().unwrap().digits.to_string()).collect();
        assert_eq!(uppers, ["428", "642", "428", "1284"]);
        let shifts: Vec<usize> = trace.boards().map(|s| s.shift).collect();
        assert_eq!(shifts, [1, 2, 3, 3]);
        assert!(trace.boards().all(|s| !s.grew_left));
    }

    #[test]
    fn identity_multiplier_rewrites_each_digit() {
        let (product, trace) = multiply_indian(&board("90817"), &board("1"));
        assert_eq!(product.to_string(), "90817");
        assert_eq!(trace.len(), 5);
        for s in trace.boards() {
            assert_eq!(s.board.to_string(), "90817");
        }
    }

    #[test]
    fn ring_digit_stage_is_a_no_op() {
        let (product, trace) = multiply_indian(&board("204"), &board("30"));
        assert_eq!(product.to_string(), "6120");
        let snaps: Vec<_> = trace.boards().collect();
        assert_eq!(snaps.len(), 3);
        assert!(snaps[1].upper.is_none());
        assert_eq!(snaps[0].board, snaps[1].board);
        assert_eq!(snaps[0].board.to_string(), "6004");
    }

    #[test]
    fn carry_past_the_edge_is_flagged() {
        let (product, trace) = multiply_indian(&board("19"), &board("9"));
        assert_eq!(product.to_string(), "171");
        assert!(trace.boards().last().unwrap().grew_left);
    }

    #[test]
    fn nothing_inputs() {
        let (p, t) = multiply_indian(&DigitBoard::nothing(), &board("214"));
        assert_eq!(p, DigitBoard::nothing());
        assert_eq!(t.len(), 1);
        let (p, _) = multiply_indian(&board("2326"), &DigitBoard::nothing());
        assert_eq!(p, DigitBoard::nothing());
        let (p, _) = multiply_indian(&board("100"), &DigitBoard::nothing());
        assert_eq!(p, DigitBoard::nothing());
        let (p, _) = duplicate_multiply(&board("2326"), &DigitBoard::nothing());
        assert_eq!(p, DigitBoard::nothing());
    }

    #[test]
    fn duplication_examples() {
        let (p, t) = duplicate_multiply(&board("25"), &board("6"));
        assert_eq!(p.to_string(), "150");
        let ladder: Vec<String> = t.boards().map(|s| s.board.to_string()).collect();
        assert_eq!(ladder, ["25", "50", "100"]);
        assert!(t.render_text().contains("100 + 50 = 150"));

        let (p, _) = duplicate_multiply(&board("2326"), &board("214"));
        assert_eq!(p.to_string(), "497764");

        let (p, t) = duplicate_multiply(&board("77"), &board("1"));
        assert_eq!(p.to_string(), "77");
        assert_eq!(t.boards().count(), 1);
    }

    #[test]
    fn dimidiation_examples() {
        let (q, t) = dimidiate(&board("48"), 4);
        assert_eq!(q, Quantity::integer(3));
        let wholes: Vec<String> = t.steps.iter().map(|s| match &s.payload {
            Payload::Binding { values } => values["whole"].to_string(),
            _ => unreachable!(),
        }).collect();
        assert_eq!(wholes, ["24", "12", "6", "3"]);

        assert_eq!(dimidiate(&board("7"), 1).0, Quantity::augmented(7, 2));
        assert_eq!(dimidiate(&board("2326"), 2).0, Quantity::augmented(1163, 2));
        let (q, t) = dimidiate(&board("5"), 3);
        assert_eq!(q, Quantity::augmented(5, 8));
        assert_eq!(t.binding("fraction"), Some(&Quantity::augmented(5, 8)));
        assert_eq!(dimidiate(&board("5"), 0).0, Quantity::integer(5));
    }
}
