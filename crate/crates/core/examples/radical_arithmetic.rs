//! Exact arithmetic in multi-quadratic fields.

use kleinian::radical::{rn, RadicalNumber};

fn main() {
    let a = rn("1/2 + sqrt(6)");
    let b = rn("sqrt(2) - sqrt(3)");
    println!("a = {a}");
    println!("b = {b}");
    println!("a * b = {}", &a * &b);
    println!("1 / b = {}", b.invert().unwrap());
    println!("b^2 = {}", b.pow(2));

    // Exact sign of a nearly cancelling expression.
    let tiny = &rn("sqrt(2) + sqrt(3)") - &RadicalNumber::from_rational("3146264369/1000000000".parse().unwrap());
    println!("sqrt(2) + sqrt(3) - 3.146264369 has sign {}", tiny.signum());

    let c = rn("-1/2 - 1/2*sqrt(5)");
    println!("{c} under sqrt(5) -> -sqrt(5): {}", c.conjugate(&[5]));
}
