//! A realization-independent obstruction to integral bends for the Bi(6) bug.

use kleinian::arithmetic::kernel_certificate;
use kleinian::catalog::{bi6_certificate_spheres, bi6_vectors};
use kleinian::cli::certificate_text;
use kleinian::groups::reflect;

fn main() {
    let spheres = bi6_certificate_spheres();
    let c = kernel_certificate(&spheres).unwrap();
    print!("{}", certificate_text(&c));

    // The same relations hold after moving everything by an isometry.
    let mirror = &bi6_vectors()[3];
    let moved: Vec<_> = spheres.iter().map(|s| reflect(s, mirror)).collect();
    let sums: Vec<String> = c.bend_sums(&moved).iter().map(|x| x.to_string()).collect();
    println!("bend sums after reflecting in v4: {}", sums.join(", "));
}
