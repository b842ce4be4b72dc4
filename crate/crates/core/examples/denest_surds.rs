//! Denesting the root of 16 + s24 + s40 + s48 + s60 + s72 + s120.

use dixit::{denest, expand_square, SurdExpression};

fn main() {
    let e: SurdExpression = "16 + s24 + s40 + s48 + s60 + s72 + s120".parse().expect("expression");
    let (root, trace) = denest(&e).expect("denestable");
    print!("{}", trace.render_text());
    println!("sqrt({e}) = {root}");
    println!("check: ({root})^2 = {}", expand_square(&root));

    let stuck: SurdExpression = "18 + s8".parse().expect("expression");
    println!("sqrt({stuck}): {}", denest(&stuck).unwrap_err());
}
