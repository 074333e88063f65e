//! Reduction of a rational hyperbolic form to the standard inversive form.

use kleinian::forms::{bianchi_form, galois_definiteness, reduce_to_standard};
use kleinian::linalg::Matrix;
use kleinian::radical::rn;

fn main() {
    for d in [6, 7, 30] {
        let f = bianchi_form(d);
        let bc = reduce_to_standard(&f).unwrap();
        println!("Bi({d}) form:\n{}", f.matrix());
        println!("T:\n{}", bc.t);
        assert!(bc.verify());
    }

    let g = Matrix::diagonal(&[rn("1"), rn("1"), rn("1"), rn("-1/2 - 1/2*sqrt(5)")]);
    println!("Galois check of diag(1, 1, 1, -golden ratio): {}", galois_definiteness(&g));
}
