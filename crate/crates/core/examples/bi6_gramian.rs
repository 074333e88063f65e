//! Gram matrix and Coxeter diagram of the Bi(6) reflection walls.

use kleinian::catalog::bi6_vectors;
use kleinian::forms::QuadraticForm;
use kleinian::groups::{coxeter_diagram, diagram_to_dot};

fn main() {
    let vs = bi6_vectors();
    for (i, v) in vs.iter().enumerate() {
        println!("v{} = {v}", i + 1);
    }
    let coords: Vec<_> = vs.iter().map(|v| v.coords().to_vec()).collect();
    let g = QuadraticForm::standard(2).gram(&coords).unwrap();
    println!("\nGram matrix:\n{g}");

    let d = coxeter_diagram(&vs).unwrap();
    for e in &d.edges {
        println!("{} -- {}: {}", d.nodes[e.i], d.nodes[e.j], e.config);
    }
    println!("\n{}", diagram_to_dot(&d));
}
