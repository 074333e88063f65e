//! The Bi(30) packing from dropping node 8, checked to depth 5.

use std::time::Instant;

use kleinian::arithmetic::{check_integrality, rescale_to_integral};
use kleinian::catalog::bi30_drop8_config;
use kleinian::orbits::{audit, enumerate_orbit};

fn main() {
    let depth = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let t = Instant::now();
    let e = enumerate_orbit(&bi30_drop8_config(depth)).unwrap();
    println!("{} spheres to depth {depth} in {:.2?}", e.len(), t.elapsed());

    let r = rescale_to_integral(&e).unwrap();
    println!("bends x {}: {}", r.scale, check_integrality(&r.enumeration).summary());
    let smallest: Vec<String> = r.enumeration.bends().iter().take(12).map(|b| b.to_string()).collect();
    println!("smallest bends: {}", smallest.join(", "));

    let t = Instant::now();
    let a = audit(&e).unwrap();
    println!(
        "{:?} over {} pairs, largest inner product {} ({:.2?})",
        a.verdict,
        a.pairs,
        a.max_inner.map(|x| x.to_string()).unwrap_or_default(),
        t.elapsed()
    );
}
