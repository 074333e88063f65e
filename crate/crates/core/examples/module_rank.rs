//! The integer module spanned by the bend functional's orbit, and the
//! invariant form recovered from the generators alone.

use kleinian::arithmetic::{invariant_form_in, orbit_module, ModuleSeed};
use kleinian::catalog::bianchi_roots;
use kleinian::forms::Covector;
use kleinian::groups::GeneratorSet;

fn main() {
    let b = bianchi_roots(30).unwrap();
    let g = GeneratorSet::reflections(b.vectors.clone());
    let r = orbit_module(&g, &ModuleSeed::Covector(Covector::bend(2)), 4, Some(&b.basis)).unwrap();
    println!("orbit of {} functionals, rank by depth {:?}", r.orbit_size, r.rank_by_depth);
    for row in &r.basis {
        let s: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  [{}]", s.join(", "));
    }
    let f = invariant_form_in(&g, Some(&b.basis)).unwrap();
    println!("invariant form in Bianchi coordinates:\n{}", f.matrix());
}
