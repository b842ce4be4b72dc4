//! Square root of a polynomial written with the medieval degree letters.

use dixit::{sqrt_poly, Notation, Polynomial};

fn main() {
    let aggregate = Polynomial::parse("4dcc+12ddc+9cc+20dc+42dd+18c+25d+30r+9", Notation::Medieval).expect("polynomial");
    let (root, trace) = sqrt_poly(&aggregate).expect("perfect square");
    print!("{}", trace.render_text());
    println!("root: {}", root.render(Notation::Medieval));
    println!("root: {}", root.render(Notation::Modern));
}
