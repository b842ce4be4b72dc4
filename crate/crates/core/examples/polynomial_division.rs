//! Tabular division with deficient coefficients.

use dixit::{divide_tabular, Notation, Polynomial};

fn main() {
    let n = Polynomial::parse("6x^8+28x^7+6x^6-80x^5+38x^4+92x^3-200x^2+20x", Notation::Modern).unwrap();
    let d = Polynomial::parse("2x^5+8x^4-20x^2", Notation::Modern).unwrap();
    let (q, r, trace) = divide_tabular(&n, &d).expect("nonzero divisor");
    print!("{}", trace.render_text());
    println!("quotient:  {q}");
    println!("remainder: {r}");
    assert_eq!(q.mul(&d).add(&r), n);
}
