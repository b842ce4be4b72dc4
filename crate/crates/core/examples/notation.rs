//! Degree names and the two notations.

use dixit::{DegreeName, Notation, Polynomial};

fn main() {
    for degree in 0..=12 {
        println!("x^{degree:<2} {}", DegreeName::canonical(degree));
    }
    let p = Polynomial::parse("2dd + 3c + 5r + 3", Notation::Medieval).unwrap();
    println!("{} = {}", p.render(Notation::Medieval), p.render(Notation::Modern));
    let q = Polynomial::parse("cdc - (1/2)r", Notation::Medieval).unwrap();
    println!("{} = {}", q.render(Notation::Medieval), q.render(Notation::Modern));
}
