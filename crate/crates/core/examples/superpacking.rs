//! Closing a family under reflection in its own members.

use kleinian::inversive::{to_inversive, Sphere};
use kleinian::orbits::{superorbit, Dedupe, SuperLimits};
use kleinian::radical::rn;

fn main() {
    // Three mutually tangent circles inside the circle of bend -1.
    let circles = [
        Sphere::ball(vec![rn("0"), rn("0")], rn("-1")),
        Sphere::ball(vec![rn("1/2"), rn("0")], rn("1/2")),
        Sphere::ball(vec![rn("-1/2"), rn("0")], rn("1/2")),
        Sphere::ball(vec![rn("0"), rn("2/3")], rn("1/3")),
    ];
    let vs: Vec<_> = circles.iter().map(|c| to_inversive(c).unwrap()).collect();
    let limits = SuperLimits {
        max_rounds: 3,
        max_bend: Some(rn("40")),
        max_spheres: None,
        dedupe: Dedupe::Uncooriented,
    };
    let e = superorbit(&vs, &limits).unwrap();
    println!("{} circles with |bend| <= 40 after {} rounds", e.len(), e.max_depth);
    let bends: Vec<String> = e.bends().iter().take(40).map(|b| b.to_string()).collect();
    println!("smallest: {}", bends.join(" "));
}
