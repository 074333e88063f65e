//! The sphere dictionary: balls and halfspaces to unit vectors and back.

use kleinian::groups::reflect;
use kleinian::inversive::{classify_pair, euclidean_invert, from_inversive, to_inversive, Sphere};
use kleinian::radical::rn;

fn main() {
    let unit = Sphere::ball(vec![rn("0"), rn("0")], rn("1"));
    let small = Sphere::ball(vec![rn("3/2"), rn("0")], rn("1/2"));
    let line = Sphere::halfspace(vec![rn("0"), rn("1")], rn("-2"));

    for s in [&unit, &small, &line] {
        let v = to_inversive(s).unwrap();
        println!("{s:?}\n  -> {v}, bend {}", v.bend());
        assert_eq!(&from_inversive(v.coords()).unwrap(), s);
    }

    let (a, b) = (to_inversive(&unit).unwrap(), to_inversive(&small).unwrap());
    println!("unit vs small: {}", classify_pair(&a, &b).unwrap());

    // Inversion in the unit circle agrees with the linear reflection.
    let image = euclidean_invert(&small, &unit).unwrap();
    println!("image of small circle: {image:?}");
    assert_eq!(to_inversive(&image).unwrap(), reflect(&b, &a));
}
