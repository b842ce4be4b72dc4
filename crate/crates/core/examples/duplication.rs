//! Multiplication by doubling and summing, and its inverse by halving.

use dixit::{dimidiate, duplicate_multiply, DigitBoard};

fn main() {
    let (product, trace) = duplicate_multiply(&DigitBoard::parse("25").unwrap(), &DigitBoard::parse("6").unwrap());
    print!("{}", trace.render_text());
    println!("25 x 6 = {product}\n");

    let (half, trace) = dimidiate(&DigitBoard::parse("75").unwrap(), 3);
    print!("{}", trace.render_text());
    println!("75 halved three times = {half}");
}
