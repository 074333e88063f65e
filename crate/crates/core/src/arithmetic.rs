//! Integrality verdicts, conformal rescaling, kernel certificates of
//! non-integrality and the integer module spanned by an orbit.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::forms::{BasisChange, Covector, QuadraticForm};
use crate::groups::{reflection_matrix, GeneratorSet};
use crate::inversive::InversiveVector;
use crate::linalg::{Hnf, LinalgError, Matrix, Vector};
use crate::orbits::{OrbitEnumeration, OrbitSphere};
use crate::radical::RadicalNumber;
use crate::rational::{bigint_serde, lcm_denominators, Rational};

/// Witness lists are capped at this length.
pub const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ArithmeticError {
    #[error("bend {bend} of sphere {vector} is not a rational multiple of a common radical")]
    IrrationalBends { vector: InversiveVector, bend: RadicalNumber },
    #[error("need at least {needed} spheres for a kernel, found {found}")]
    InsufficientSpheres { needed: usize, found: usize },
    #[error("orbit vector {0:?} is not rational; supply a rational basis change")]
    IrrationalOrbit(Vec<String>),
    #[error("invariant forms make a space of dimension {dimension}, not a line")]
    NotALine { dimension: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralityVerdict {
    Integral,
    /// Rational bends whose denominators stopped growing with depth.
    RationalBounded,
    /// Rational bends whose denominators still grow at the deepest level.
    NonIntegral,
    Irrational,
}

impl fmt::Display for IntegralityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntegralityVerdict::Integral => "integral",
            IntegralityVerdict::RationalBounded => "rational_bounded",
            IntegralityVerdict::NonIntegral => "non_integral",
            IntegralityVerdict::Irrational => "irrational",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vector: InversiveVector,
    pub bend: RadicalNumber,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralityReport {
    pub verdict: IntegralityVerdict,
    /// Offending spheres, shallowest first.
    pub witnesses: Vec<Witness>,
    /// Lcm of rational bend denominators among spheres first reached at each depth.
    #[serde(with = "bigint_serde::vec")]
    pub denominator_lcm: Vec<BigInt>,
    pub spheres: usize,
    pub max_depth: usize,
    /// The verdict only covers this finite truncation.
    pub truncated: bool,
}

impl IntegralityReport {
    /// One-line summary qualified by the truncation depth.
    pub fn summary(&self) -> String {
        format!(
            "{} over {} spheres up to depth {}",
            self.verdict, self.spheres, self.max_depth
        )
    }
}

fn by_depth(e: &OrbitEnumeration) -> Vec<&OrbitSphere> {
    let mut v: Vec<&OrbitSphere> = e.spheres.iter().collect();
    v.sort_by_key(|s| s.depth);
    v
}

pub fn check_integrality(e: &OrbitEnumeration) -> IntegralityReport {
    let max_depth = e.spheres.iter().map(|s| s.depth).max().unwrap_or(0);
    let mut lcms = vec![BigInt::one(); max_depth + 1];
    let mut irrational = Vec::new();
    let mut fractional = Vec::new();
    for s in by_depth(e) {
        let b = s.vector.bend();
        let w = || Witness {
            vector: s.vector.clone(),
            bend: b.clone(),
            depth: s.depth,
        };
        match b.as_rational() {
            None => irrational.push(w()),
            Some(q) => {
                if !q.is_integer() {
                    lcms[s.depth] = lcms[s.depth].lcm(&q.denom());
                    fractional.push(w());
                }
            }
        }
    }
    let (verdict, mut witnesses) = if !irrational.is_empty() {
        (IntegralityVerdict::Irrational, irrational)
    } else if fractional.is_empty() {
        (IntegralityVerdict::Integral, Vec::new())
    } else {
        let (last, earlier) = lcms.split_last().expect("at least one level");
        let shallow = earlier.iter().fold(BigInt::one(), |a, b| a.lcm(b));
        let bounded = earlier.is_empty() || (&shallow % last).is_zero();
        let v = if bounded {
            IntegralityVerdict::RationalBounded
        } else {
            IntegralityVerdict::NonIntegral
        };
        (v, fractional)
    };
    witnesses.truncate(MAX_WITNESSES);
    IntegralityReport {
        verdict,
        witnesses,
        denominator_lcm: lcms,
        spheres: e.len(),
        max_depth,
        truncated: true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rescaled {
    /// Every bend was multiplied by this factor.
    pub scale: RadicalNumber,
    pub enumeration: OrbitEnumeration,
}

/// The boost `diag(λ, 1, …, 1, 1/λ)`: the similarity `x ↦ x/λ`, which
/// multiplies bends by `λ` and cobends by `1/λ`.
pub fn similarity(v: &InversiveVector, lambda: &RadicalNumber) -> InversiveVector {
    let inv = lambda.invert().expect("nonzero scale");
    let mut c = v.coords().to_vec();
    let d = c.len();
    c[0] = &c[0] * lambda;
    c[d - 1] = &c[d - 1] * &inv;
    InversiveVector::new(c).expect("boost preserves Q")
}

/// Scales the family so every bend is an integer.
///
/// Rational bends use `λ` = lcm of denominators. When all nonzero bends are
/// rational multiples `qᵢ·√m` of one radical, `λ = L/√m` with `L` the lcm of
/// the denominators of the `qᵢ`, which is still a Euclidean similarity.
pub fn rescale_to_integral(e: &OrbitEnumeration) -> Result<Rescaled, ArithmeticError> {
    let mut radicand: Option<u64> = None;
    let mut coeffs: Vec<Rational> = Vec::new();
    for s in &e.spheres {
        let b = s.vector.bend();
        if b.is_zero() {
            continue;
        }
        let bad = || ArithmeticError::IrrationalBends {
            vector: s.vector.clone(),
            bend: b.clone(),
        };
        let [(m, q)] = b.terms() else {
            return Err(bad());
        };
        match radicand {
            None => radicand = Some(*m),
            Some(r) if r != *m => return Err(bad()),
            _ => {}
        }
        coeffs.push(q.clone());
    }
    let l = RadicalNumber::from_rational(Rational::from_bigint(lcm_denominators(&coeffs)));
    let scale = match radicand {
        None | Some(1) => l,
        Some(m) => &l / &RadicalNumber::sqrt_int(m),
    };
    let mut out = e.clone();
    for s in &mut out.spheres {
        s.vector = similarity(&s.vector, &scale);
    }
    out.spheres
        .sort_by(|a, b| crate::orbits::canonical_cmp(&a.vector, &b.vector));
    Ok(Rescaled {
        scale,
        enumeration: out,
    })
}

/// A rational linear relation among bends read off one radical component of
/// a kernel vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRelation {
    pub kernel_index: usize,
    pub radicand: u64,
    pub coefficients: Vec<Rational>,
}

impl fmt::Display for ComponentRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.signum() < 0 { "-" } else { "+" };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "b{}", i + 1)?;
            } else {
                write!(f, "{a}*b{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " = 0")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCertificate {
    pub spheres: Vec<InversiveVector>,
    /// Reduced basis of `{c : Σ cᵢ·vᵢ = 0}`.
    pub kernel: Vec<Vector>,
    pub relations: Vec<ComponentRelation>,
    /// Spheres whose bend vanishes in every realization with rational bends.
    pub forced_zero: Vec<usize>,
}

impl KernelCertificate {
    /// Whether `direction` is in the span of the kernel.
    pub fn kernel_contains(&self, direction: &[RadicalNumber]) -> bool {
        if direction.len() != self.spheres.len() {
            return false;
        }
        let mut rows = self.kernel.clone();
        let before = Matrix::from_rows(rows.clone()).map(|m| m.rank()).unwrap_or(0);
        rows.push(direction.to_vec());
        Matrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0) == before
    }

    /// `Σ cᵢ·bendᵢ` for each kernel vector; all zero in any realization.
    pub fn bend_sums(&self, spheres: &[InversiveVector]) -> Vec<RadicalNumber> {
        self.kernel
            .iter()
            .map(|c| {
                c.iter()
                    .zip(spheres)
                    .fold(RadicalNumber::zero(), |acc, (ci, s)| &acc + &(ci * s.bend()))
            })
            .collect()
    }
}

/// Exact kernel of the matrix whose columns are the spheres, split into
/// rational relations on bends.
///
/// A relation `Σ cᵢ·vᵢ = 0` survives every isometry, so `Σ cᵢ·bendᵢ = 0` in
/// every realization. When bends are rational, each radical component of `c`
/// gives its own rational relation; a sphere is forced to bend zero when its
/// unit vector lies in the row space of those relations.
pub fn kernel_certificate(spheres: &[InversiveVector]) -> Result<KernelCertificate, ArithmeticError> {
    let d = spheres.first().map(|s| s.coords().len()).unwrap_or(0);
    if spheres.len() <= d {
        return Err(ArithmeticError::InsufficientSpheres {
            needed: d + 1,
            found: spheres.len(),
        });
    }
    if let Some(s) = spheres.iter().find(|s| s.coords().len() != d) {
        return Err(ArithmeticError::DimensionMismatch {
            expected: d,
            found: s.coords().len(),
        });
    }
    let cols: Vec<Vector> = spheres.iter().map(|s| s.coords().to_vec()).collect();
    let w = Matrix::from_columns(d, &cols)?;
    let kernel = w.kernel();
    let k = spheres.len();
    let mut relations = Vec::new();
    for (idx, c) in kernel.iter().enumerate() {
        let mut comps: BTreeMap<u64, Vec<Rational>> = BTreeMap::new();
        for (i, ci) in c.iter().enumerate() {
            for (m, q) in ci.terms() {
                comps.entry(*m).or_insert_with(|| vec![Rational::zero(); k])[i] = q.clone();
            }
        }
        for (m, coefficients) in comps {
            relations.push(ComponentRelation {
                kernel_index: idx,
                radicand: m,
                coefficients,
            });
        }
    }
    let rel_rows: Vec<Vector> = relations
        .iter()
        .map(|r| r.coefficients.iter().cloned().map(RadicalNumber::from_rational).collect())
        .collect();
    let base_rank = if rel_rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rel_rows.clone())?.rank()
    };
    let forced_zero = (0..k)
        .filter(|&i| {
            let mut rows = rel_rows.clone();
            let mut e = vec![RadicalNumber::zero(); k];
            e[i] = RadicalNumber::one();
            rows.push(e);
            Matrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0) == base_rank
        })
        .collect();
    Ok(KernelCertificate {
        spheres: spheres.to_vec(),
        kernel,
        relations,
        forced_zero,
    })
}

/// Seed of an orbit module: a vector acted on by `M`, or a functional acted
/// on by precomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleSeed {
    Vector(Vector),
    Covector(Covector),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub rank: usize,
    /// Hermite normal form basis of the cleared-denominator lattice.
    #[serde(with = "bigint_serde::rows")]
    pub basis: Vec<Vec<BigInt>>,
    /// Common denominator cleared before the HNF.
    #[serde(with = "bigint_serde::vec")]
    pub denominator: Vec<BigInt>,
    pub orbit_size: usize,
    /// Rank after each depth, starting with the seed alone.
    pub rank_by_depth: Vec<usize>,
}

/// Generator matrices, closed under inverses, in the working coordinates:
/// standard coordinates, or the source coordinates of `bc`.
pub fn working_matrices(
    generators: &GeneratorSet,
    bc: Option<&BasisChange>,
) -> Result<Vec<Matrix>, ArithmeticError> {
    let mut ms: Vec<Matrix> = Vec::new();
    for r in generators.roots() {
        ms.push(
            reflection_matrix(r.coords())
                .expect("generator roots are unit")
                .matrix()
                .clone(),
        );
    }
    for m in generators.matrices() {
        ms.push(m.matrix().clone());
        let inv = m.inverse();
        if inv != *m {
            ms.push(inv.matrix().clone());
        }
    }
    match bc {
        None => Ok(ms),
        Some(bc) => {
            let tinv = bc.t.inverse()?;
            ms.iter()
                .map(|m| Ok(tinv.mul(m)?.mul(&bc.t)?))
                .collect()
        }
    }
}

/// Rank and HNF basis of the `ℤ`-module spanned by the orbit of `seed` up to
/// word length `depth`.
///
/// With `bc`, everything is pulled back to the source coordinates of the
/// basis change (for instance the integral coordinates of a Bianchi form),
/// where the orbit is rational.
pub fn orbit_module(
    generators: &GeneratorSet,
    seed: &ModuleSeed,
    depth: usize,
    bc: Option<&BasisChange>,
) -> Result<ModuleReport, ArithmeticError> {
    let ms = working_matrices(generators, bc)?;
    let (start, act): (Vector, Vec<Matrix>) = match seed {
        ModuleSeed::Vector(v) => {
            let v = match bc {
                Some(bc) => bc.t.inverse()?.mul_vec(v)?,
                None => v.clone(),
            };
            (v, ms)
        }
        ModuleSeed::Covector(c) => {
            // Functionals are rows ℓ; the orbit is {ℓ·M}, computed as Mᵗ·ℓᵗ.
            let l = c.lowered();
            let l = match bc {
                Some(bc) => bc.t.transpose().mul_vec(&l)?,
                None => l,
            };
            (l, ms.iter().map(Matrix::transpose).collect())
        }
    };
    let dim = start.len();
    if let Some(m) = act.first() {
        if m.ncols() != dim {
            return Err(ArithmeticError::DimensionMismatch {
                expected: m.ncols(),
                found: dim,
            });
        }
    }
    let mut seen: HashSet<Vector> = HashSet::new();
    let mut orbit = vec![start.clone()];
    seen.insert(start.clone());
    let mut frontier = vec![start];
    let mut level_end = vec![1];
    for _ in 0..depth {
        let mut next = Vec::new();
        for v in &frontier {
            for m in &act {
                let w = m.mul_vec(v)?;
                if seen.insert(w.clone()) {
                    next.push(w.clone());
                    orbit.push(w);
                }
            }
        }
        level_end.push(orbit.len());
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut rationals: Vec<Vec<Rational>> = Vec::with_capacity(orbit.len());
    for v in &orbit {
        let row: Option<Vec<Rational>> = v.iter().map(RadicalNumber::as_rational).collect();
        match row {
            Some(r) => rationals.push(r),
            None => {
                return Err(ArithmeticError::IrrationalOrbit(
                    v.iter().map(|x| x.to_string()).collect(),
                ))
            }
        }
    }
    let den = lcm_denominators(rationals.iter().flatten());
    let mut hnf = Hnf::new(dim);
    let mut rank_by_depth = Vec::new();
    let mut k = 0;
    for end in level_end {
        while k < end {
            let row: Vec<BigInt> = rationals[k]
                .iter()
                .map(|q| q.numer() * (&den / q.denom()))
                .collect();
            hnf.insert(&row);
            k += 1;
        }
        rank_by_depth.push(hnf.rank());
    }
    Ok(ModuleReport {
        rank: hnf.rank(),
        basis: hnf.basis(),
        denominator: vec![den],
        orbit_size: orbit.len(),
        rank_by_depth,
    })
}

/// The symmetric `G` with `MᵗGM = G` for every generator, when the solutions
/// form a line. Normalized so the first nonzero diagonal entry is 1.
pub fn invariant_form(generators: &GeneratorSet) -> Result<QuadraticForm, ArithmeticError> {
    invariant_form_in(generators, None)
}

/// As [`invariant_form`], in the source coordinates of `bc` when given.
pub fn invariant_form_in(
    generators: &GeneratorSet,
    bc: Option<&BasisChange>,
) -> Result<QuadraticForm, ArithmeticError> {
    let ms = working_matrices(generators, bc)?;
    let d = match (ms.first(), bc) {
        (Some(m), _) => m.nrows(),
        (None, Some(bc)) => bc.t.nrows(),
        (None, None) => {
            return Err(ArithmeticError::NotALine { dimension: usize::MAX });
        }
    };
    // Unknowns are the upper-triangular entries g_ab, a ≤ b.
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (a..d).map(move |b| (a, b))).collect();
    let var = |a: usize, b: usize| -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        pairs.iter().position(|&p| p == (a, b)).expect("index")
    };
    let mut rows: Vec<Vector> = Vec::new();
    for m in &ms {
        for i in 0..d {
            for j in i..d {
                // (MᵗGM)_ij − G_ij = Σ_ab M_ai G_ab M_bj − G_ij.
                let mut row = vec![RadicalNumber::zero(); pairs.len()];
                for a in 0..d {
                    let mai = m.get(a, i);
                    if mai.is_zero() {
                        continue;
                    }
                    for b in 0..d {
                        let mbj = m.get(b, j);
                        if mbj.is_zero() {
                            continue;
                        }
                        let k = var(a, b);
                        row[k] = &row[k] + &(mai * mbj);
                    }
                }
                let k = var(i, j);
                row[k] = &row[k] - &RadicalNumber::one();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..pairs.len())
            .map(|k| {
                let mut e = vec![RadicalNumber::zero(); pairs.len()];
                e[k] = RadicalNumber::one();
                e
            })
            .collect()
    } else {
        Matrix::from_rows(rows)?.kernel()
    };
    if kernel.len() != 1 {
        return Err(ArithmeticError::NotALine {
            dimension: kernel.len(),
        });
    }
    let g = &kernel[0];
    let pivot = (0..d)
        .map(|a| &g[var(a, a)])
        .find(|x| !x.is_zero())
        .or_else(|| g.iter().find(|x| !x.is_zero()))
        .expect("kernel vector is nonzero")
        .clone();
    let inv = pivot.invert().expect("nonzero");
    let mut mat = Matrix::zeros(d, d);
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let x = &g[k] * &inv;
        mat.set(a, b, x.clone());
        mat.set(b, a, x);
    }
    Ok(QuadraticForm::new(mat).expect("symmetric by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{bi6_bug_config, bi6_certificate_spheres, bi6_vectors, bianchi_roots};
    use crate::forms::bianchi_form;
    use crate::groups::{reflect, IsometryMatrix};
    use crate::inversive::{to_inversive, Sphere};
    use crate::orbits::enumerate_orbit;
    use crate::radical::rn;
    use proptest::prelude::*;

    /// Circles through the origin side, one per bend, centered on the x-axis.
    fn family(bends: &[&str]) -> OrbitEnumeration {
        let vs = bends
            .iter()
            .map(|b| {
                let r = rn(b).invert().unwrap();
                let s = if r.signum() > 0 {
                    Sphere::ball(vec![r.clone(), rn("0")], r)
                } else {
                    Sphere::ball(vec![rn("0"), rn("0")], r.abs()).flipped()
                };
                to_inversive(&s).unwrap()
            })
            .collect();
        OrbitEnumeration::from_spheres(vs)
    }

    #[test]
    fn integrality_examples() {
        let r = check_integrality(&family(&["1", "2", "3", "-76"]));
        assert_eq!(r.verdict, IntegralityVerdict::Integral);
        let r = check_integrality(&family(&["1/2", "3/2"]));
        assert_eq!(r.verdict, IntegralityVerdict::RationalBounded);
        assert_eq!(r.denominator_lcm, vec![BigInt::from(2)]);
        let e = enumerate_orbit(&bi6_bug_config(2)).unwrap();
        let r = check_integrality(&e);
        assert_eq!(r.verdict, IntegralityVerdict::Irrational);
        assert_eq!(r.witnesses[0].vector, bi6_vectors()[5]);
        assert_eq!(r.witnesses[0].bend, rn("sqrt(2)"));
    }

    #[test]
    fn denominators_growing_with_depth() {
        let mut e = family(&["1/2", "1/4"]);
        for s in &mut e.spheres {
            s.depth = if *s.vector.bend() == rn("1/4") { 1 } else { 0 };
        }
        let r = check_integrality(&e);
        assert_eq!(r.verdict, IntegralityVerdict::NonIntegral);
        assert_eq!(r.denominator_lcm, vec![BigInt::from(2), BigInt::from(4)]);
        for s in &mut e.spheres {
            s.depth = 1 - s.depth;
        }
        assert_eq!(check_integrality(&e).verdict, IntegralityVerdict::RationalBounded);
    }

    #[test]
    fn rescale_examples() {
        let r = rescale_to_integral(&family(&["1/2", "3/2", "5/2"])).unwrap();
        assert_eq!(r.scale, rn("2"));
        assert_eq!(r.enumeration.bends(), vec![rn("1"), rn("3"), rn("5")]);
        let r = rescale_to_integral(&family(&["1", "2"])).unwrap();
        assert_eq!(r.scale, rn("1"));
        assert!(rescale_to_integral(&family(&["1/2", "1/3", "sqrt(2)"])).is_err());
        let r = rescale_to_integral(&family(&["sqrt(5)", "3*sqrt(5)"])).unwrap();
        assert_eq!(r.enumeration.bends(), vec![rn("1"), rn("3")]);
        assert_eq!(check_integrality(&r.enumeration).verdict, IntegralityVerdict::Integral);
    }

    #[test]
    fn bi6_certificate() {
        let c = kernel_certificate(&bi6_certificate_spheres()).unwrap();
        assert_eq!(c.kernel.len(), 1);
        assert_eq!(c.forced_zero, vec![0]);
        let root3 = c
            .relations
            .iter()
            .find(|r| r.radicand == 3)
            .expect("sqrt(3) component");
        let nonzero: Vec<usize> = (0..5).filter(|&i| !root3.coefficients[i].is_zero()).collect();
        assert_eq!(nonzero, vec![0]);
        assert!(c.kernel_contains(&["-sqrt(3)", "-3", "1", "0", "1"].map(rn)));
        assert!(c.bend_sums(&c.spheres).iter().all(RadicalNumber::is_zero));
    }

    #[test]
    fn certificate_edge_cases() {
        let v = bi6_vectors();
        assert!(matches!(
            kernel_certificate(&v[..4]),
            Err(ArithmeticError::InsufficientSpheres { .. })
        ));
        let c = kernel_certificate(&[v[0].clone(), v[1].clone(), v[2].clone(), v[4].clone(), v[0].negated()]).unwrap();
        assert!(c.forced_zero.is_empty());
    }

    #[test]
    fn certificate_is_isometry_invariant() {
        let spheres = bi6_certificate_spheres();
        let base = kernel_certificate(&spheres).unwrap();
        let mirror = bi6_vectors()[3].clone();
        let moved: Vec<_> = spheres.iter().map(|s| reflect(s, &mirror)).collect();
        let c = kernel_certificate(&moved).unwrap();
        assert_eq!(c.kernel, base.kernel);
        assert_eq!(c.forced_zero, base.forced_zero);
    }

    #[test]
    fn module_examples() {
        let e1 = vec![rn("1"), rn("0"), rn("0"), rn("0")];
        let r = orbit_module(&GeneratorSet::empty(), &ModuleSeed::Vector(e1.clone()), 3, None).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.basis, vec![vec![1, 0, 0, 0].into_iter().map(BigInt::from).collect::<Vec<_>>()]);
        // (0,1,0,0)-reflection fixes e1.
        let g = GeneratorSet::reflections(vec![bi6_vectors()[0].clone()]);
        assert_eq!(orbit_module(&g, &ModuleSeed::Vector(e1), 3, None).unwrap().rank, 1);
        let g = GeneratorSet::reflections(bi6_vectors());
        assert!(matches!(
            orbit_module(&g, &ModuleSeed::Covector(Covector::bend(2)), 2, None),
            Err(ArithmeticError::IrrationalOrbit(_))
        ));
    }

    #[test]
    fn bi30_module_rank() {
        let b = bianchi_roots(30).unwrap();
        let g = GeneratorSet::reflections(b.vectors.clone());
        let r = orbit_module(&g, &ModuleSeed::Covector(Covector::bend(2)), 4, Some(&b.basis)).unwrap();
        assert_eq!(r.rank, 4);
        assert!(r.rank_by_depth.windows(2).all(|w| w[0] <= w[1]));
        // Oracle: the stacked orbit has full rank as an exact matrix too.
        let ms = working_matrices(&g, Some(&b.basis)).unwrap();
        let l: Vector = b.basis.t.transpose().mul_vec(&Covector::bend(2).lowered()).unwrap();
        let mut rows = vec![l.clone()];
        for m in &ms {
            rows.push(m.transpose().mul_vec(&l).unwrap());
        }
        let stacked = Matrix::from_rows(rows).unwrap();
        assert_eq!(stacked.rank(), r.rank_by_depth[1]);
    }

    #[test]
    fn invariant_forms() {
        let g = GeneratorSet::reflections(bi6_vectors());
        assert_eq!(invariant_form(&g).unwrap(), QuadraticForm::standard(2));
        let one = GeneratorSet::reflections(vec![bi6_vectors()[0].clone()]);
        match invariant_form(&one) {
            Err(ArithmeticError::NotALine { dimension }) => assert!(dimension > 1),
            other => panic!("{other:?}"),
        }
        let b = bianchi_roots(30).unwrap();
        let g = GeneratorSet::reflections(b.vectors.clone());
        assert_eq!(invariant_form(&g).unwrap(), QuadraticForm::standard(2));
        let f = invariant_form_in(&g, Some(&b.basis)).unwrap();
        // −xy + z² + 30w², scaled so the z² entry is 1.
        assert_eq!(f, bianchi_form(30));
    }

    #[test]
    fn matrix_generators_in_module() {
        let r = reflection_matrix(bi6_vectors()[4].coords()).unwrap();
        let s = reflection_matrix(bi6_vectors()[0].coords()).unwrap();
        let g = GeneratorSet::new(Vec::new(), vec![IsometryMatrix::new(r.matrix().mul(s.matrix()).unwrap()).unwrap()], None).unwrap();
        let rep = orbit_module(&g, &ModuleSeed::Covector(Covector::bend(2)), 3, None).unwrap();
        assert!(rep.rank >= 1 && rep.rank <= 4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn certificate_sound_under_isometry_words(word in proptest::collection::vec(0usize..6, 0..5)) {
            let spheres = bi6_certificate_spheres();
            let cert = kernel_certificate(&spheres).unwrap();
            let v = bi6_vectors();
            let moved: Vec<InversiveVector> = spheres
                .iter()
                .map(|s| word.iter().fold(s.clone(), |acc, &k| reflect(&acc, &v[k])))
                .collect();
            prop_assert!(cert.bend_sums(&moved).iter().all(RadicalNumber::is_zero));
        }

        #[test]
        fn rescaled_is_integral(nums in proptest::collection::vec((1i64..40, 1i64..12), 1..6)) {
            let bends: Vec<String> = nums.iter().map(|(a, b)| format!("{a}/{b}")).collect();
            let refs: Vec<&str> = bends.iter().map(String::as_str).collect();
            let r = rescale_to_integral(&family(&refs)).unwrap();
            prop_assert_eq!(check_integrality(&r.enumeration).verdict, IntegralityVerdict::Integral);
        }

        #[test]
        fn module_rank_monotone(depth in 0usize..4) {
            let b = bianchi_roots(6).unwrap();
            let g = GeneratorSet::reflections(b.vectors.clone());
            let r = orbit_module(&g, &ModuleSeed::Covector(Covector::bend(2)), depth, Some(&b.basis)).unwrap();
            prop_assert!(r.rank_by_depth.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(r.rank <= 4);
        }
    }
}
