//! Orbit enumeration of spheres under reflection groups, superpacking closure
//! and pairwise audits.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::groups::{reflect, GeneratorSet, Move};
use crate::inversive::{classify_inner, Configuration, InversiveVector};
use crate::radical::{radicand_product, RadicalNumber};
use crate::rational::{lcm_denominators, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OrbitError {
    #[error("sphere budget of {limit} exceeded; partial result has {} spheres", partial.spheres.len())]
    BudgetExceeded {
        limit: usize,
        partial: Box<OrbitEnumeration>,
    },
    #[error("pair budget of {limit} exceeded: {pairs} pairs requested")]
    PairBudgetExceeded { limit: u64, pairs: u64 },
    #[error("seeds and generators have different dimensions")]
    DimensionMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dedupe {
    /// `v` and `−v` are distinct spheres.
    #[default]
    Cooriented,
    /// `v` and `−v` are identified; the stored representative has first nonzero coordinate positive.
    Uncooriented,
}

impl Dedupe {
    fn key(self, v: &InversiveVector) -> InversiveVector {
        match self {
            Dedupe::Cooriented => v.clone(),
            Dedupe::Uncooriented => v.unoriented(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrbitConfig {
    pub generators: GeneratorSet,
    pub seeds: Vec<InversiveVector>,
    pub max_word_length: usize,
    /// Spheres with `|bend|` above this are recorded but not expanded.
    pub max_bend: Option<RadicalNumber>,
    pub max_spheres: Option<usize>,
    pub dedupe: Dedupe,
}

impl OrbitConfig {
    pub fn new(generators: GeneratorSet, seeds: Vec<InversiveVector>, max_word_length: usize) -> Self {
        OrbitConfig {
            generators,
            seeds,
            max_word_length,
            max_bend: None,
            max_spheres: None,
            dedupe: Dedupe::Cooriented,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSphere {
    pub vector: InversiveVector,
    /// Word length (or closure round) at which the sphere was first reached.
    pub depth: usize,
    /// Index of the seed whose orbit first reached the sphere.
    pub seed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEnumeration {
    /// Sorted by bend, then coordinates.
    pub spheres: Vec<OrbitSphere>,
    /// Set when a budget stopped the run; the family is a partial truncation either way.
    pub truncated: bool,
    /// Number of new spheres found at each depth, starting with the seeds.
    pub frontier_sizes: Vec<usize>,
    pub max_depth: usize,
    pub dedupe: Dedupe,
}

impl OrbitEnumeration {
    /// Wraps an explicit family (depth 0, one seed per sphere).
    pub fn from_spheres(vs: Vec<InversiveVector>) -> Self {
        let spheres: Vec<OrbitSphere> = vs
            .into_iter()
            .enumerate()
            .map(|(i, vector)| OrbitSphere {
                vector,
                depth: 0,
                seed: i,
            })
            .collect();
        let n = spheres.len();
        let mut e = OrbitEnumeration {
            spheres,
            truncated: false,
            frontier_sizes: vec![n],
            max_depth: 0,
            dedupe: Dedupe::Cooriented,
        };
        e.sort();
        e
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn vectors(&self) -> Vec<InversiveVector> {
        self.spheres.iter().map(|s| s.vector.clone()).collect()
    }

    pub fn bends(&self) -> Vec<RadicalNumber> {
        self.spheres.iter().map(|s| s.vector.bend().clone()).collect()
    }

    pub fn contains(&self, v: &InversiveVector) -> bool {
        let key = self.dedupe.key(v);
        self.spheres.iter().any(|s| s.vector == key)
    }

    fn sort(&mut self) {
        self.spheres
            .sort_by(|a, b| canonical_cmp(&a.vector, &b.vector));
    }

    /// The same family with coorientation forgotten.
    pub fn uncooriented(&self) -> OrbitEnumeration {
        let mut seen = HashSet::new();
        let mut spheres = Vec::new();
        let mut by_depth = self.spheres.clone();
        by_depth.sort_by_key(|s| s.depth);
        for s in by_depth {
            let key = s.vector.unoriented();
            if seen.insert(key.clone()) {
                spheres.push(OrbitSphere {
                    vector: key,
                    depth: s.depth,
                    seed: s.seed,
                });
            }
        }
        let mut e = OrbitEnumeration {
            spheres,
            truncated: self.truncated,
            frontier_sizes: self.frontier_sizes.clone(),
            max_depth: self.max_depth,
            dedupe: Dedupe::Uncooriented,
        };
        e.sort();
        e
    }
}

/// Numeric order on bends, then on coordinates.
pub fn canonical_cmp(a: &InversiveVector, b: &InversiveVector) -> Ordering {
    a.bend()
        .cmp(b.bend())
        .then_with(|| {
            for (x, y) in a.coords().iter().zip(b.coords()) {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
}

fn exceeds(v: &InversiveVector, max_bend: &Option<RadicalNumber>) -> bool {
    max_bend
        .as_ref()
        .is_some_and(|m| v.bend().abs().cmp(m) == Ordering::Greater)
}

/// Breadth-first orbit of the seeds under the generators and their inverses.
pub fn enumerate_orbit(c: &OrbitConfig) -> Result<OrbitEnumeration, OrbitError> {
    if let Some(d) = c.generators.dim() {
        if c.seeds.iter().any(|s| s.coords().len() != d) {
            return Err(OrbitError::DimensionMismatch);
        }
    }
    let moves = c.generators.moves();
    let mut index: HashMap<InversiveVector, usize> = HashMap::new();
    let mut spheres: Vec<OrbitSphere> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    let limit = c.max_spheres.unwrap_or(usize::MAX);
    let mut truncated = false;

    for (i, s) in c.seeds.iter().enumerate() {
        let key = c.dedupe.key(s);
        if index.contains_key(&key) {
            continue;
        }
        if spheres.len() == limit {
            truncated = true;
            break;
        }
        index.insert(key.clone(), spheres.len());
        frontier.push(spheres.len());
        spheres.push(OrbitSphere {
            vector: key,
            depth: 0,
            seed: i,
        });
    }
    let mut frontier_sizes = vec![frontier.len()];

    let mut depth = 0;
    while depth < c.max_word_length && !frontier.is_empty() && !truncated {
        depth += 1;
        let expandable: Vec<&OrbitSphere> = frontier
            .iter()
            .map(|&k| &spheres[k])
            .filter(|s| !exceeds(&s.vector, &c.max_bend))
            .collect();
        let images: Vec<(InversiveVector, usize)> = expandable
            .par_iter()
            .flat_map_iter(|s| {
                moves
                    .iter()
                    .map(move |m| (c.dedupe.key(&m.apply(&s.vector)), s.seed))
            })
            .collect();
        let mut next = Vec::new();
        for (v, seed) in images {
            if index.contains_key(&v) {
                continue;
            }
            if spheres.len() == limit {
                truncated = true;
                break;
            }
            index.insert(v.clone(), spheres.len());
            next.push(spheres.len());
            spheres.push(OrbitSphere {
                vector: v,
                depth,
                seed,
            });
        }
        frontier_sizes.push(next.len());
        frontier = next;
    }

    let mut e = OrbitEnumeration {
        spheres,
        truncated,
        frontier_sizes,
        max_depth: depth,
        dedupe: c.dedupe,
    };
    e.sort();
    if truncated {
        return Err(OrbitError::BudgetExceeded {
            limit,
            partial: Box::new(e),
        });
    }
    Ok(e)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuperLimits {
    pub max_rounds: usize,
    pub max_bend: Option<RadicalNumber>,
    pub max_spheres: Option<usize>,
    pub dedupe: Dedupe,
}

impl Default for SuperLimits {
    fn default() -> Self {
        SuperLimits {
            max_rounds: 4,
            max_bend: None,
            max_spheres: None,
            dedupe: Dedupe::Uncooriented,
        }
    }
}

/// Closure of a family under reflection in its own members.
///
/// Each round reflects every known sphere in every known sphere. Images with
/// `|bend|` above `max_bend` are discarded, so with a bend bound the closure
/// contains exactly the spheres reachable through spheres within the bound.
pub fn superorbit(spheres: &[InversiveVector], limits: &SuperLimits) -> Result<OrbitEnumeration, OrbitError> {
    let mut index: HashSet<InversiveVector> = HashSet::new();
    let mut all: Vec<OrbitSphere> = Vec::new();
    let limit = limits.max_spheres.unwrap_or(usize::MAX);
    let mut truncated = false;
    for (i, s) in spheres.iter().enumerate() {
        let key = limits.dedupe.key(s);
        if exceeds(&key, &limits.max_bend) || !index.insert(key.clone()) {
            continue;
        }
        all.push(OrbitSphere {
            vector: key,
            depth: 0,
            seed: i,
        });
    }
    let mut frontier_sizes = vec![all.len()];
    let mut fresh_from = 0;
    let mut round = 0;
    while round < limits.max_rounds && fresh_from < all.len() && !truncated {
        round += 1;
        let old = fresh_from;
        let n = all.len();
        // New pairs: (fresh, any) and (old, fresh), in both mirror roles.
        let images: Vec<(InversiveVector, usize)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let lo = if i >= old { 0 } else { old };
                let all = &all;
                (lo..n).flat_map(move |j| {
                    let a = &all[i];
                    let b = &all[j];
                    [
                        (reflect(&a.vector, &b.vector), a.seed),
                        (reflect(&b.vector, &a.vector), b.seed),
                    ]
                })
            })
            .map(|(v, s)| (limits.dedupe.key(&v), s))
            .filter(|(v, _)| !exceeds(v, &limits.max_bend))
            .collect();
        fresh_from = n;
        let mut added = 0;
        for (v, seed) in images {
            if index.contains(&v) {
                continue;
            }
            if all.len() == limit {
                truncated = true;
                break;
            }
            index.insert(v.clone());
            all.push(OrbitSphere {
                vector: v,
                depth: round,
                seed,
            });
            added += 1;
        }
        frontier_sizes.push(added);
    }
    let mut e = OrbitEnumeration {
        spheres: all,
        truncated,
        frontier_sizes,
        max_depth: round,
        dedupe: limits.dedupe,
    };
    e.sort();
    if truncated {
        return Err(OrbitError::BudgetExceeded {
            limit,
            partial: Box::new(e),
        });
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// Every pair is tangent or disjoint.
    Packing,
    /// Every intersecting pair meets at an angle `π/m` for `m` in the set.
    Bug { angles: Vec<u32> },
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffendingPair {
    pub i: usize,
    pub j: usize,
    pub inner: RadicalNumber,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub verdict: Verdict,
    pub spheres: usize,
    pub pairs: u64,
    pub tangent: u64,
    pub disjoint: u64,
    pub intersecting: u64,
    pub other: u64,
    /// Largest inner product over all pairs.
    pub max_inner: Option<RadicalNumber>,
    /// First offending pairs in `(i, j)` order, capped.
    pub offending: Vec<OffendingPair>,
    /// Copied from the enumeration: the family is a finite truncation.
    pub truncated: bool,
    /// Full multiset of pair classifications, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<Vec<HistogramEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramEntry {
    pub config: Configuration,
    pub count: u64,
}

#[derive(Debug, Clone)]
pub struct AuditOptions {
    pub pair_budget: Option<u64>,
    pub max_offending: usize,
    pub histogram: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            pair_budget: None,
            max_offending: 32,
            histogram: false,
        }
    }
}

pub fn audit(e: &OrbitEnumeration) -> Result<AuditReport, OrbitError> {
    audit_with(e, &AuditOptions::default())
}

#[derive(Default, Clone)]
struct Tally {
    tangent: u64,
    disjoint: u64,
    intersecting: u64,
    other: u64,
    angles: BTreeSet<u32>,
    max_inner: Option<RadicalNumber>,
    offending: Vec<OffendingPair>,
    histogram: BTreeMap<Configuration, u64>,
}

impl Tally {
    fn merge(mut self, o: Tally, cap: usize) -> Tally {
        self.tangent += o.tangent;
        self.disjoint += o.disjoint;
        self.intersecting += o.intersecting;
        self.other += o.other;
        self.angles.extend(o.angles);
        self.max_inner = match (self.max_inner, o.max_inner) {
            (Some(a), Some(b)) => Some(if b > a { b } else { a }),
            (a, b) => a.or(b),
        };
        self.offending.extend(o.offending);
        self.offending.truncate(cap);
        for (k, v) in o.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self
    }
}

pub fn audit_with(e: &OrbitEnumeration, opts: &AuditOptions) -> Result<AuditReport, OrbitError> {
    let vs = e.vectors();
    let n = vs.len() as u64;
    let pairs = n * n.saturating_sub(1) / 2;
    if let Some(limit) = opts.pair_budget {
        if pairs > limit {
            return Err(OrbitError::PairBudgetExceeded { limit, pairs });
        }
    }
    let frame = Frame::new(&vs);
    let cap = opts.max_offending;
    let tally = (0..vs.len())
        .into_par_iter()
        .fold(Tally::default, |mut t, i| {
            let mut row_max: Option<PairValue> = None;
            for j in i + 1..vs.len() {
                let p = match &frame {
                    Some(f) => f.inner(i, j),
                    None => PairValue::Exact(vs[i].inner(&vs[j])),
                };
                let kind = p.kind();
                match kind {
                    Kind::Tangent => t.tangent += 1,
                    Kind::Disjoint => t.disjoint += 1,
                    Kind::Angle(m) => {
                        t.intersecting += 1;
                        t.angles.insert(m);
                    }
                    Kind::Other => {
                        t.other += 1;
                        if t.offending.len() < cap {
                            t.offending.push(OffendingPair {
                                i,
                                j,
                                inner: p.to_radical(),
                            });
                        }
                    }
                }
                if opts.histogram {
                    *t.histogram.entry(p.classify()).or_default() += 1;
                }
                row_max = Some(match row_max {
                    Some(m) if !p.gt(&m) => m,
                    _ => p,
                });
            }
            if let Some(m) = row_max {
                let m = m.to_radical();
                t.max_inner = Some(match t.max_inner.take() {
                    Some(x) if x >= m => x,
                    _ => m,
                });
            }
            t
        })
        .reduce(Tally::default, |a, b| a.merge(b, cap));
    let mut offending = tally.offending;
    offending.sort_by_key(|p| (p.i, p.j));
    offending.truncate(cap);
    let verdict = if tally.other > 0 {
        Verdict::Neither
    } else if tally.intersecting == 0 {
        Verdict::Packing
    } else {
        Verdict::Bug {
            angles: tally.angles.into_iter().collect(),
        }
    };
    Ok(AuditReport {
        verdict,
        spheres: vs.len(),
        pairs,
        tangent: tally.tangent,
        disjoint: tally.disjoint,
        intersecting: tally.intersecting,
        other: tally.other,
        max_inner: tally.max_inner,
        offending,
        truncated: e.truncated,
        histogram: opts.histogram.then(|| {
            tally
                .histogram
                .into_iter()
                .map(|(config, count)| HistogramEntry { config, count })
                .collect()
        }),
    })
}

/// Inner product of a pair, either as an exact rational `num / den` from the
/// integer frame or as a general radical number.
enum PairValue {
    Rational { num: i128, den: i128 },
    Exact(RadicalNumber),
}

#[derive(Clone, Copy)]
enum Kind {
    Tangent,
    Disjoint,
    /// Orthogonal pairs have `m = 2`.
    Angle(u32),
    Other,
}

impl PairValue {
    fn kind(&self) -> Kind {
        match self {
            PairValue::Rational { num, den } => {
                let (num, den) = (*num, *den);
                if num == -den {
                    Kind::Tangent
                } else if num < -den {
                    Kind::Disjoint
                } else if num == 0 {
                    Kind::Angle(2)
                } else if 2 * num == -den {
                    Kind::Angle(3)
                } else {
                    Kind::Other
                }
            }
            PairValue::Exact(p) => {
                let c = classify_inner(p);
                match c {
                    Configuration::Tangent => Kind::Tangent,
                    Configuration::Disjoint(_) => Kind::Disjoint,
                    Configuration::Other(_) => Kind::Other,
                    _ => Kind::Angle(c.angle_denominator().expect("intersecting")),
                }
            }
        }
    }

    fn to_radical(&self) -> RadicalNumber {
        match self {
            PairValue::Rational { num, den } => RadicalNumber::from_rational(Rational::from_bigints(
                BigInt::from(*num),
                BigInt::from(*den),
            )),
            PairValue::Exact(p) => p.clone(),
        }
    }

    fn classify(&self) -> Configuration {
        match self {
            PairValue::Rational { num, den } => {
                let (num, den) = (*num, *den);
                if num == 0 {
                    Configuration::Orthogonal
                } else if num == -den {
                    Configuration::Tangent
                } else if num < -den {
                    Configuration::Disjoint(self.to_radical())
                } else if 2 * num == -den {
                    Configuration::Angle(3)
                } else {
                    Configuration::Other(self.to_radical())
                }
            }
            PairValue::Exact(p) => classify_inner(p),
        }
    }

    fn gt(&self, other: &PairValue) -> bool {
        match (self, other) {
            (PairValue::Rational { num: a, den: d }, PairValue::Rational { num: b, den: e }) if d == e => a > b,
            _ => self.to_radical() > other.to_radical(),
        }
    }
}

const MAX_PRODUCTS: usize = 17;

/// All coordinates of a family written over one radicand basis with a common
/// denominator, so pair products reduce to integer arithmetic.
struct Frame {
    dim: usize,
    /// Radicands of coordinates.
    basis: Vec<u64>,
    /// Radicands of products, with `1` first.
    products: Vec<u64>,
    /// `table[a * t + b] = (g, c)` with `√m_a·√m_b = g·√products[c]`.
    table: Vec<(i128, usize)>,
    /// `coeffs[(sphere * dim + coord) * t + a]`, scaled by `den`.
    coeffs: Vec<i128>,
    /// `2·den²`: the frame value of an inner product is `p·2·den²`.
    scale: i128,
}

impl Frame {
    fn new(vs: &[InversiveVector]) -> Option<Frame> {
        let dim = vs.first()?.coords().len();
        let basis: Vec<u64> = vs
            .iter()
            .flat_map(|v| v.coords().iter().flat_map(|x| x.support()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let t = basis.len();
        if t == 0 || t * t >= MAX_PRODUCTS {
            return None;
        }
        let den = lcm_denominators(
            vs.iter()
                .flat_map(|v| v.coords().iter().flat_map(|x| x.terms().iter().map(|(_, q)| q))),
        );
        let den_i = den.to_i128()?;
        let scale = den_i.checked_mul(den_i)?.checked_mul(2)?;
        let mut products = vec![1u64];
        let mut table = Vec::with_capacity(t * t);
        for &a in &basis {
            for &b in &basis {
                let (g, c) = radicand_product(a, b);
                let idx = match products.iter().position(|&x| x == c) {
                    Some(i) => i,
                    None => {
                        products.push(c);
                        products.len() - 1
                    }
                };
                table.push((g as i128, idx));
            }
        }
        let mut coeffs = vec![0i128; vs.len() * dim * t];
        for (s, v) in vs.iter().enumerate() {
            for (k, x) in v.coords().iter().enumerate() {
                for (m, q) in x.terms() {
                    let a = basis.binary_search(m).expect("radicand in basis");
                    let scaled = q.numer() * (&den / q.denom());
                    coeffs[(s * dim + k) * t + a] = scaled.to_i128()?;
                }
            }
        }
        // Guard against overflow: |coeff|² · g · (dim + 1) terms must fit.
        let max_c = coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
        let max_g = table.iter().map(|(g, _)| *g as u128).max().unwrap_or(1);
        let terms = (dim as u128 + 2) * (t * t) as u128;
        max_c
            .checked_mul(max_c)?
            .checked_mul(max_g)?
            .checked_mul(2 * terms)?
            .checked_mul(2)?;
        Some(Frame {
            dim,
            basis,
            products,
            table,
            coeffs,
            scale,
        })
    }

    #[inline]
    fn coord(&self, s: usize, k: usize) -> &[i128] {
        let t = self.basis.len();
        let off = (s * self.dim + k) * t;
        &self.coeffs[off..off + t]
    }

    #[inline]
    fn accumulate(&self, acc: &mut [i128], x: &[i128], y: &[i128], weight: i128) {
        let t = self.basis.len();
        for a in 0..t {
            if x[a] == 0 {
                continue;
            }
            let xa = x[a] * weight;
            for b in 0..t {
                if y[b] == 0 {
                    continue;
                }
                let (g, c) = self.table[a * t + b];
                acc[c] += xa * y[b] * g;
            }
        }
    }

    fn inner(&self, i: usize, j: usize) -> PairValue {
        let mut acc = [0i128; MAX_PRODUCTS];
        let acc = &mut acc[..self.products.len()];
        let d = self.dim;
        for k in 1..d - 1 {
            self.accumulate(acc, self.coord(i, k), self.coord(j, k), 2);
        }
        self.accumulate(acc, self.coord(i, 0), self.coord(j, d - 1), -1);
        self.accumulate(acc, self.coord(i, d - 1), self.coord(j, 0), -1);
        if acc[1..].iter().all(|x| *x == 0) {
            PairValue::Rational {
                num: acc[0],
                den: self.scale,
            }
        } else {
            let terms = self
                .products
                .iter()
                .zip(acc.iter())
                .filter(|(_, c)| **c != 0)
                .map(|(m, c)| {
                    (
                        *m,
                        Rational::from_bigints(BigInt::from(*c), BigInt::from(self.scale)),
                    )
                })
                .collect();
            PairValue::Exact(RadicalNumber::from_terms(terms))
        }
    }
}

/// Checks that every bend equals the first coordinate and the bend covector value.
pub fn bends_match_covector(e: &OrbitEnumeration) -> bool {
    e.spheres
        .iter()
        .all(|s| crate::inversive::bend_via_covector(&s.vector) == *s.vector.bend())
}

/// Keeps only spheres whose `|bend|` is at most `b`.
pub fn filter_bend(e: &OrbitEnumeration, b: &RadicalNumber) -> OrbitEnumeration {
    let mut out = e.clone();
    out.spheres.retain(|s| !exceeds(&s.vector, &Some(b.clone())));
    out
}

/// Moves every sphere of the family by a generator action; used by tests of
/// isometry invariance.
pub fn transform(e: &OrbitEnumeration, m: &Move) -> OrbitEnumeration {
    let mut out = e.clone();
    for s in &mut out.spheres {
        s.vector = m.apply(&s.vector);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{reflection_matrix, IsometryMatrix};
    use crate::inversive::{to_inversive, unit_vectors, Sphere};
    use crate::linalg::Matrix;
    use crate::radical::rn;

    fn bi6() -> Vec<InversiveVector> {
        unit_vectors(&[
            &["0", "-1", "0", "0"],
            &["0", "1", "0", "1"],
            &["0", "0", "-1", "0"],
            &["0", "0", "1", "sqrt(6)"],
            &["1", "0", "0", "-1"],
            &["sqrt(2)", "0", "sqrt(3)", "sqrt(2)"],
        ])
    }

    fn bug_config(depth: usize) -> OrbitConfig {
        let v = bi6();
        let gens = GeneratorSet::reflections(vec![v[0].clone(), v[1].clone(), v[3].clone(), v[4].clone()]);
        OrbitConfig::new(gens, vec![v[2].clone(), v[5].clone()], depth)
    }

    #[test]
    fn trivial_orbits() {
        let v = bi6();
        let e = enumerate_orbit(&OrbitConfig::new(GeneratorSet::empty(), vec![v[0].clone()], 5)).unwrap();
        assert_eq!(e.vectors(), vec![v[0].clone()]);
        let e = enumerate_orbit(&OrbitConfig::new(
            GeneratorSet::reflections(vec![v[1].clone()]),
            vec![v[4].clone()],
            1,
        ))
        .unwrap();
        assert_eq!(e.len(), 2);
        assert!(e.contains(&reflect(&v[4], &v[1])));
    }

    #[test]
    fn bi6_bug_contains_certificate_spheres() {
        let v = bi6();
        let e = enumerate_orbit(&bug_config(4)).unwrap();
        let r2v6 = reflect(&v[5], &v[1]);
        let r1r2v6 = reflect(&r2v6, &v[0]);
        let r5r1r2v6 = reflect(&r1r2v6, &v[4]);
        for s in [&v[2], &v[5], &r2v6, &r1r2v6, &r5r1r2v6] {
            assert!(e.contains(s), "{s}");
        }
        assert!(bends_match_covector(&e));
    }

    #[test]
    fn depth_monotone_and_deterministic() {
        let a = enumerate_orbit(&bug_config(3)).unwrap();
        let b = enumerate_orbit(&bug_config(4)).unwrap();
        for s in &a.spheres {
            assert!(b.contains(&s.vector));
        }
        assert_eq!(b, enumerate_orbit(&bug_config(4)).unwrap());
        let sorted = b.spheres.windows(2).all(|w| canonical_cmp(&w[0].vector, &w[1].vector) != Ordering::Greater);
        assert!(sorted);
    }

    #[test]
    fn budget_returns_partial() {
        let mut c = bug_config(6);
        c.max_spheres = Some(10);
        match enumerate_orbit(&c) {
            Err(OrbitError::BudgetExceeded { partial, .. }) => {
                assert_eq!(partial.len(), 10);
                assert!(partial.truncated);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bug_audit() {
        let e = enumerate_orbit(&bug_config(3)).unwrap();
        let r = audit(&e).unwrap();
        match &r.verdict {
            Verdict::Bug { angles } => assert!(angles.iter().all(|m| [2, 3, 4].contains(m)), "{angles:?}"),
            other => panic!("{other:?} {:?}", r.offending),
        }
    }

    #[test]
    fn crossing_pair_is_neither() {
        let a = to_inversive(&Sphere::ball(vec![rn("0"), rn("0")], rn("1"))).unwrap();
        let b = to_inversive(&Sphere::ball(vec![rn("1"), rn("0")], rn("1"))).unwrap();
        let e = OrbitEnumeration::from_spheres(vec![a.clone(), b]);
        let r = audit(&e).unwrap();
        // Unit circles with centers 1 apart meet at 2π/3: p = +1/2.
        assert_eq!(r.verdict, Verdict::Neither);
        assert_eq!(r.offending.len(), 1);
        assert_eq!(r.offending[0].inner, rn("1/2"));
    }

    #[test]
    fn audit_is_isometry_invariant() {
        let e = enumerate_orbit(&bug_config(3)).unwrap();
        let opts = AuditOptions {
            histogram: true,
            ..AuditOptions::default()
        };
        let base = audit_with(&e, &opts).unwrap();
        let boost = IsometryMatrix::new(Matrix::diagonal(&[rn("3"), rn("1"), rn("1"), rn("1/3")])).unwrap();
        for m in [Move::Matrix(boost), Move::Matrix(reflection_matrix(bi6()[5].coords()).unwrap())] {
            let moved = audit_with(&transform(&e, &m), &opts).unwrap();
            assert_eq!(moved.histogram, base.histogram);
            assert_eq!(moved.verdict, base.verdict);
        }
    }

    #[test]
    fn frame_matches_exact_inner_products() {
        let e = enumerate_orbit(&bug_config(2)).unwrap();
        let vs = e.vectors();
        let f = Frame::new(&vs).unwrap();
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                assert_eq!(f.inner(i, j).to_radical(), vs[i].inner(&vs[j]));
            }
        }
    }

    #[test]
    fn superorbit_of_tangent_pair_matches_orbit() {
        // Two unit circles tangent at the origin; images form a ladder of
        // circles through the origin with growing bends.
        let a = to_inversive(&Sphere::ball(vec![rn("1"), rn("0")], rn("1"))).unwrap();
        let b = to_inversive(&Sphere::ball(vec![rn("-1"), rn("0")], rn("1"))).unwrap();
        let bound = rn("9");
        let limits = SuperLimits {
            max_rounds: 10,
            max_bend: Some(bound.clone()),
            ..SuperLimits::default()
        };
        let sup = superorbit(&[a.clone(), b.clone()], &limits).unwrap();
        let mut c = OrbitConfig::new(
            GeneratorSet::reflections(vec![a.clone(), b.clone()]),
            vec![a.clone(), b.clone()],
            12,
        );
        c.dedupe = Dedupe::Uncooriented;
        c.max_bend = Some(bound.clone());
        let orb = filter_bend(&enumerate_orbit(&c).unwrap(), &bound);
        assert_eq!(sup.vectors(), orb.vectors());
        assert!(sup.len() > 2);
        // The ladder circles are nested and internally tangent (p = +1).
        let r = audit(&sup).unwrap();
        assert_eq!(r.verdict, Verdict::Neither);
        assert!(r.offending.iter().all(|p| p.inner == rn("1")));
        let single = superorbit(&[a.clone()], &SuperLimits::default()).unwrap();
        assert_eq!(single.len(), 1);
    }
}
