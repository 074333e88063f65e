//! Vinberg roots of the Bianchi forms -xy + z^2 + D w^2.

use kleinian::catalog::bianchi_roots;
use kleinian::groups::coxeter_diagram;

fn main() {
    for d in [6, 30] {
        let b = bianchi_roots(d).unwrap();
        println!("Bi({d}): {} roots, stop {:?}", b.roots.roots.len(), b.roots.stop);
        for (i, (r, v)) in b.roots.roots.iter().zip(&b.vectors).enumerate() {
            println!("  {:>2}: {:?} norm {} -> {v}", i + 1, r.coords, r.norm);
        }
        let diagram = coxeter_diagram(&b.vectors).unwrap();
        let isolated: Vec<usize> = diagram.isolated_nodes().iter().map(|k| k + 1).collect();
        println!("  isolated nodes: {isolated:?}\n");
    }
}
