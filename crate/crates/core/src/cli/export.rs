//! JSON and CSV exporters for orbits, Gram matrices and root lists.

use serde::{Deserialize, Serialize};

use crate::inversive::InversiveVector;
use crate::linalg::Matrix;
use crate::orbits::{OrbitEnumeration, OrbitSphere};
use crate::radical::RadicalNumber;
use crate::vinberg::RootList;

/// One sphere of an exported orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereRecord {
    pub coords: InversiveVector,
    pub bend: RadicalNumber,
    pub depth: usize,
    pub seed: usize,
}

pub fn orbit_records(e: &OrbitEnumeration) -> Vec<SphereRecord> {
    e.spheres
        .iter()
        .map(|s| SphereRecord {
            coords: s.vector.clone(),
            bend: s.vector.bend().clone(),
            depth: s.depth,
            seed: s.seed,
        })
        .collect()
}

pub fn orbit_json(e: &OrbitEnumeration) -> String {
    let mut s = serde_json::to_string_pretty(&orbit_records(e)).expect("serializable");
    s.push('\n');
    s
}

/// Rebuilds an enumeration from exported records.
pub fn orbit_from_records(records: Vec<SphereRecord>) -> OrbitEnumeration {
    let mut e = OrbitEnumeration::from_spheres(Vec::new());
    let max_depth = records.iter().map(|r| r.depth).max().unwrap_or(0);
    let mut sizes = vec![0; max_depth + 1];
    for r in &records {
        sizes[r.depth] += 1;
    }
    e.spheres = records
        .into_iter()
        .map(|r| OrbitSphere {
            vector: r.coords,
            depth: r.depth,
            seed: r.seed,
        })
        .collect();
    e.spheres
        .sort_by(|a, b| crate::orbits::canonical_cmp(&a.vector, &b.vector));
    e.frontier_sizes = sizes;
    e.max_depth = max_depth;
    e.truncated = true;
    e
}

pub fn bends_csv(e: &OrbitEnumeration) -> String {
    let mut s = String::from("bend,depth\n");
    for sp in &e.spheres {
        s.push_str(&format!("{},{}\n", sp.vector.bend(), sp.depth));
    }
    s
}

pub fn matrix_csv(m: &Matrix) -> String {
    let mut s = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

pub fn roots_csv(rl: &RootList) -> String {
    let mut s = String::from("index,coords,norm,height\n");
    for (i, r) in rl.roots.iter().enumerate() {
        let c: Vec<String> = r.coords.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("{},{},{},{}\n", i + 1, c.join(" "), r.norm, r.height));
    }
    s
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
