//! Reflection matrices and their identities.

use kleinian::catalog::bi6_vectors;
use kleinian::groups::{reflection_matrix, verify_isometry};
use kleinian::linalg::Matrix;

fn main() {
    for (i, v) in bi6_vectors().iter().enumerate() {
        let r = reflection_matrix(v.coords()).unwrap();
        let m = r.matrix();
        println!("R{}:\n{m}", i + 1);
        assert_eq!(m.mul(m).unwrap(), Matrix::identity(4));
        assert!(verify_isometry(m));
    }
    let v = &bi6_vectors()[5];
    let r = reflection_matrix(v.coords()).unwrap();
    println!("R6 v6 = {}", r.apply(v));
}
