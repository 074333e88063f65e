//! Ready-made configurations: the Bi(6) sphere set and bug, and the Bi(30)
//! drop-node packing.

use crate::forms::{bianchi_form, reduce_to_standard, BasisChange, QuadraticForm};
use crate::groups::{reflect, GeneratorSet};
use crate::inversive::{unit_vectors, InversiveVector};
use crate::orbits::OrbitConfig;
use crate::vinberg::{roots_to_inversive, vinberg_roots, RootList, VinbergError, VinbergProblem};

/// Cusp used to order Vinberg output for Bianchi forms.
pub const BIANCHI_CUSP: [i64; 4] = [1, 0, 0, 0];

/// The six unit normals of the Bi(6) reflection group in standard coordinates.
pub fn bi6_vectors() -> Vec<InversiveVector> {
    unit_vectors(&[
        &["0", "-1", "0", "0"],
        &["0", "1", "0", "1"],
        &["0", "0", "-1", "0"],
        &["0", "0", "1", "sqrt(6)"],
        &["1", "0", "0", "-1"],
        &["sqrt(2)", "0", "sqrt(3)", "sqrt(2)"],
    ])
}

/// The Bi(6) bug: reflections in `v₁, v₂, v₄, v₅` acting on the dropped walls `v₃, v₆`.
pub fn bi6_bug_config(depth: usize) -> OrbitConfig {
    drop_config(&bi6_vectors(), &[2, 5], depth)
}

/// `v₃, v₆, R₂v₆, R₁R₂v₆, R₅R₁R₂v₆`.
pub fn bi6_certificate_spheres() -> Vec<InversiveVector> {
    let v = bi6_vectors();
    let a = reflect(&v[5], &v[1]);
    let b = reflect(&a, &v[0]);
    let c = reflect(&b, &v[4]);
    vec![v[2].clone(), v[5].clone(), a, b, c]
}

/// Generators are the reflections in all roots except `drop`; seeds are the dropped roots.
pub fn drop_config(roots: &[InversiveVector], drop: &[usize], depth: usize) -> OrbitConfig {
    let (gens, labels): (Vec<_>, Vec<_>) = roots
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(i, r)| (r.clone(), (i + 1).to_string()))
        .unzip();
    let seeds = drop.iter().map(|&i| roots[i].clone()).collect();
    let generators = GeneratorSet::new(gens, Vec::new(), Some(labels)).expect("unit roots");
    OrbitConfig::new(generators, seeds, depth)
}

/// A Bianchi form's Vinberg roots, ordered from the standard cusp, together
/// with a reduction to standard coordinates and the resulting unit vectors.
#[derive(Debug, Clone)]
pub struct BianchiRoots {
    pub form: QuadraticForm,
    pub roots: RootList,
    pub basis: BasisChange,
    pub vectors: Vec<InversiveVector>,
}

pub fn bianchi_roots(d: i64) -> Result<BianchiRoots, VinbergError> {
    let form = bianchi_form(d);
    let roots = vinberg_roots(&VinbergProblem::new(form.clone()).with_order_by(BIANCHI_CUSP.to_vec()))?;
    let basis = reduce_to_standard(&form).map_err(|e| VinbergError::NotRepresentable(e.to_string()))?;
    let vectors = roots_to_inversive(&roots, &basis)?;
    Ok(BianchiRoots {
        form,
        roots,
        basis,
        vectors,
    })
}

/// The Bi(30) packing: drop node 8 (index 7) of the Coxeter diagram.
pub fn bi30_drop8_config(depth: usize) -> OrbitConfig {
    let b = bianchi_roots(30).expect("Bi(30) roots");
    drop_config(&b.vectors, &[7], depth)
}
