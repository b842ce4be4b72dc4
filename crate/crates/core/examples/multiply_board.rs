//! Single-line board multiplication of 2326 by 214, printed stage by stage.

use dixit::{multiply_indian, DigitBoard, RenderStyle};

fn main() {
    let a = DigitBoard::parse("2326").expect("numeral");
    let b = DigitBoard::parse("214").expect("numeral");
    let (product, trace) = multiply_indian(&a, &b);
    print!("{}", trace.render_text());
    println!("product: {product}");

    let with_ring = DigitBoard::parse("2O4").expect("numeral");
    let (p, _) = multiply_indian(&with_ring, &DigitBoard::parse("3O").expect("numeral"));
    println!("{} x 3O = {}", with_ring.render(RenderStyle::RingGlyph), p.render(RenderStyle::RingGlyph));
}
