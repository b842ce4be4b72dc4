//! Augmented and deficient quantities, deficiency ordering and parity kinds.

use dixit::{classify_parity, Quantity};

fn main() {
    let values: Vec<Quantity> = ["5", "-3", "1/2", "nothing"].iter().map(|s| s.parse().unwrap()).collect();
    for a in &values {
        for b in &values {
            let quotient = a.div(b).map_or_else(|e| e.to_string(), |q| q.to_string());
            println!("{a:?} * {b:?} = {:?}; sum {}; quotient {quotient}", a.mul(b), a.add(b));
        }
    }
    let (five, three) = (Quantity::integer(-5), Quantity::integer(-3));
    println!("deficient 5 against deficient 3: {:?}", five.deficiency_compare(&three).unwrap());

    for n in [1u32, 6, 8, 9, 12, 96] {
        println!("{n} is {}", classify_parity(&n.into()).unwrap());
    }
}
