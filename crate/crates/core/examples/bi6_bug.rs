//! The Bi(6) bug: drop walls 3 and 6, act on them with the rest.

use kleinian::arithmetic::check_integrality;
use kleinian::catalog::bi6_bug_config;
use kleinian::orbits::{audit, enumerate_orbit};

fn main() {
    let e = enumerate_orbit(&bi6_bug_config(4)).unwrap();
    println!("{} spheres, frontier sizes {:?}", e.len(), e.frontier_sizes);
    let r = audit(&e).unwrap();
    println!(
        "verdict {:?}: {} tangent, {} disjoint, {} intersecting pairs",
        r.verdict, r.tangent, r.disjoint, r.intersecting
    );
    let c = check_integrality(&e);
    println!("{}", c.summary());
    if let Some(w) = c.witnesses.first() {
        println!("first witness {} with bend {}", w.vector, w.bend);
    }
}
