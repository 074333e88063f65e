//! Vinberg's algorithm for rational hyperbolic lattices, run to explicit caps.
//!
//! Candidate roots are integer vectors `e` with `F(e)` in the allowed norm set,
//! crystallographic (`2⟨e, xᵢ⟩/F(e) ∈ ℤ` on the standard basis), primitive and
//! with `⟨e, v₀⟩ ≤ 0`. They are processed in increasing distance
//! `⟨e, v₀⟩²/F(e)` from the basepoint, then by norm, then lexicographically,
//! and accepted when they pair non-positively with every accepted root.
//!
//! Only candidates with height `−⟨e, v₀⟩ ≤ max_height` are generated; the
//! result is exact within that cap and makes no completeness claim beyond it.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::forms::{BasisChange, FormError, QuadraticForm};
use crate::inversive::InversiveVector;
use crate::linalg::Vector;
use crate::radical::{sqrt_of_rational, RadicalNumber};
use crate::rational::Rational;

pub const DEFAULT_MAX_ROOTS: usize = 64;
pub const DEFAULT_MAX_HEIGHT: i64 = 40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VinbergError {
    #[error("form must be rational of signature (n+1, 1), found {0:?}")]
    BadSignature((usize, usize)),
    #[error("form must have rational entries")]
    NotRational,
    #[error("basepoint must have F(v0) < 0")]
    BadBasepoint,
    #[error("allowed norm set is empty or contains a non-positive value")]
    BadNorms,
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis change source form differs from the Vinberg form")]
    FormMismatch,
    #[error("root norm leaves the radical ring: {0}")]
    NotRepresentable(String),
    #[error("integer overflow in candidate enumeration")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VinbergProblem {
    pub form: QuadraticForm,
    pub basepoint: Vec<i64>,
    pub norms: Vec<Rational>,
    pub max_roots: usize,
    /// Cap on `−⟨e, v₀⟩`.
    pub max_height: i64,
    /// Optional point used only to order the output (e.g. a cusp); the
    /// acceptance order is always the basepoint order.
    #[serde(default)]
    pub order_by: Option<Vec<i64>>,
}

impl VinbergProblem {
    /// Problem with default norms, basepoint `(1, 1, 0, …, 0)` and caps.
    pub fn new(form: QuadraticForm) -> Self {
        let mut basepoint = vec![0; form.dim()];
        basepoint[0] = 1;
        basepoint[1] = 1;
        let norms = default_norms(&form);
        VinbergProblem {
            form,
            basepoint,
            norms,
            max_roots: DEFAULT_MAX_ROOTS,
            max_height: DEFAULT_MAX_HEIGHT,
            order_by: None,
        }
    }

    pub fn with_basepoint(mut self, v0: Vec<i64>) -> Self {
        self.basepoint = v0;
        self
    }

    pub fn with_order_by(mut self, p: Vec<i64>) -> Self {
        self.order_by = Some(p);
        self
    }

    pub fn with_max_roots(mut self, k: usize) -> Self {
        self.max_roots = k;
        self
    }

    pub fn with_max_height(mut self, h: i64) -> Self {
        self.max_height = h;
        self
    }

    pub fn with_norms(mut self, norms: Vec<Rational>) -> Self {
        self.norms = norms;
        self
    }
}

/// Divisors of `4·d` where `d` is the largest diagonal entry, rounded up to an integer.
pub fn default_norms(form: &QuadraticForm) -> Vec<Rational> {
    let m = form.matrix();
    let dmax = (0..form.dim())
        .filter_map(|i| m.get(i, i).as_rational())
        .max()
        .unwrap_or_else(Rational::one);
    let top = (dmax.floor() + BigInt::from(if dmax.is_integer() { 0 } else { 1 }))
        .to_i64()
        .unwrap_or(1)
        .max(1)
        * 4;
    (1..=top)
        .filter(|d| top % d == 0)
        .map(Rational::from_integer)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    MaxRoots,
    MaxHeight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
    pub norm: Rational,
    /// `−⟨e, v₀⟩`.
    pub height: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootList {
    pub roots: Vec<Root>,
    /// Set when `max_roots` cut the run short.
    pub truncated: bool,
    pub stop: StopReason,
    pub candidates: usize,
}

impl RootList {
    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.roots.iter().map(|r| r.coords.clone()).collect()
    }
}

struct Scaled {
    /// `L·F` with integer entries.
    s: Vec<Vec<i128>>,
    l: i128,
}

impl Scaled {
    fn new(form: &QuadraticForm) -> Result<Self, VinbergError> {
        let (l, m) = form.integer_scaled().ok_or(VinbergError::NotRational)?;
        let s = m
            .iter()
            .map(|r| r.iter().map(|x| x.to_i128().ok_or(VinbergError::Overflow)).collect())
            .collect::<Result<_, _>>()?;
        Ok(Scaled {
            s,
            l: l.to_i128().ok_or(VinbergError::Overflow)?,
        })
    }

    fn apply(&self, e: &[i64]) -> Vec<i128> {
        self.s
            .iter()
            .map(|r| r.iter().zip(e).map(|(a, b)| a * *b as i128).sum())
            .collect()
    }

    fn inner(&self, a: &[i64], b: &[i64]) -> i128 {
        self.apply(b).iter().zip(a).map(|(x, y)| x * *y as i128).sum()
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    e: Vec<i64>,
    /// `L·⟨e, v₀⟩ ≤ 0`, negated.
    k: i128,
    /// `L·F(e)`.
    sn: i128,
}

impl Candidate {
    fn cmp_key(&self, other: &Self) -> Ordering {
        // k²/sn ascending, exact.
        (self.k * self.k * other.sn)
            .cmp(&(other.k * other.k * self.sn))
            .then(self.sn.cmp(&other.sn))
            .then_with(|| self.e.cmp(&other.e))
    }
}

pub fn vinberg_roots(p: &VinbergProblem) -> Result<RootList, VinbergError> {
    let d = p.form.dim();
    if !p.form.is_rational() {
        return Err(VinbergError::NotRational);
    }
    let sig = p.form.signature();
    if !sig.is_hyperbolic() {
        return Err(VinbergError::BadSignature(sig.pair()));
    }
    if p.basepoint.len() != d {
        return Err(VinbergError::DimensionMismatch {
            expected: d,
            found: p.basepoint.len(),
        });
    }
    if p.norms.is_empty() || p.norms.iter().any(|n| n.signum() <= 0) {
        return Err(VinbergError::BadNorms);
    }
    let sc = Scaled::new(&p.form)?;
    let v0 = &p.basepoint;
    let s0 = sc.inner(v0, v0);
    if s0 >= 0 {
        return Err(VinbergError::BadBasepoint);
    }
    // Allowed values of L·F(e).
    let mut targets: Vec<i128> = p
        .norms
        .iter()
        .filter_map(|n| {
            let x = n * &Rational::from_bigint(BigInt::from(sc.l));
            x.is_integer().then(|| x.numer().to_i128()).flatten()
        })
        .collect();
    targets.sort_unstable();
    targets.dedup();
    let smax = *targets.last().ok_or(VinbergError::BadNorms)?;

    if p.max_roots == 0 {
        return Ok(RootList {
            roots: Vec::new(),
            truncated: true,
            stop: StopReason::MaxRoots,
            candidates: 0,
        });
    }

    let c = sc.apply(v0);
    let g = c.iter().fold(0i128, |g, x| g.gcd(x));
    let kmax = sc.l * p.max_height as i128;

    // Each slice ⟨e, v₀⟩ = −k/L is independent.
    let slices: Vec<i128> = (0..=kmax / g).map(|t| t * g).collect();
    let found: Vec<Vec<Candidate>> = slices
        .par_iter()
        .map(|&k| slice_candidates(&sc, &c, s0, k, smax, &targets))
        .collect();
    let mut cands: Vec<Candidate> = found.into_iter().flatten().collect();
    cands.sort_by(Candidate::cmp_key);
    let total = cands.len();

    let mut accepted: Vec<Candidate> = Vec::new();
    let mut truncated = false;
    for cand in cands {
        if accepted.iter().all(|a| sc.inner(&a.e, &cand.e) <= 0) {
            accepted.push(cand);
            if accepted.len() == p.max_roots {
                truncated = true;
                break;
            }
        }
    }
    if let Some(q) = &p.order_by {
        sort_relative_to(&sc, q, &mut accepted);
    }
    let l = Rational::from_bigint(BigInt::from(sc.l));
    let roots = accepted
        .into_iter()
        .map(|a| Root {
            coords: a.e,
            norm: &Rational::from_bigint(BigInt::from(a.sn)) / &l,
            height: &Rational::from_bigint(BigInt::from(a.k)) / &l,
        })
        .collect();
    Ok(RootList {
        roots,
        truncated,
        stop: if truncated {
            StopReason::MaxRoots
        } else {
            StopReason::MaxHeight
        },
        candidates: total,
    })
}

/// Reorders roots by `(⟨e, q⟩²/F(e), F(e), coordinates)`.
fn sort_relative_to(sc: &Scaled, q: &[i64], roots: &mut [Candidate]) {
    roots.sort_by(|a, b| {
        let pa = sc.inner(&a.e, q);
        let pb = sc.inner(&b.e, q);
        (pa * pa * b.sn)
            .cmp(&(pb * pb * a.sn))
            .then(a.sn.cmp(&b.sn))
            .then_with(|| a.e.cmp(&b.e))
    });
}

fn is_primitive(e: &[i64]) -> bool {
    e.iter().fold(0i64, |g, x| g.gcd(x)) == 1
}

/// Integer vectors on the slice `c·e = −k` with `S(e) ∈ targets`, passing
/// the crystallographic and primitivity tests.
fn slice_candidates(
    sc: &Scaled,
    c: &[i128],
    s0: i128,
    k: i128,
    smax: i128,
    targets: &[i128],
) -> Vec<Candidate> {
    let d = c.len();
    let js = (0..d).rev().find(|&j| c[j] != 0).expect("v0 is not isotropic");
    let free: Vec<usize> = (0..d).filter(|&i| i != js).collect();
    let m = free.len();
    // P = S + 2ccᵗ/|s0| is positive definite; on the slice P(e) = S(e) + 2k²/|s0|.
    let abs_s0 = (-s0) as f64;
    let pm: Vec<Vec<f64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| sc.s[i][j] as f64 + 2.0 * (c[i] as f64) * (c[j] as f64) / abs_s0)
                .collect()
        })
        .collect();
    let bound = smax as f64 + 2.0 * (k as f64) * (k as f64) / abs_s0;
    // e = b + A·y with y the free coordinates.
    let cj = c[js] as f64;
    let mut b = vec![0.0; d];
    b[js] = -(k as f64) / cj;
    let a: Vec<Vec<f64>> = free
        .iter()
        .map(|&i| {
            let mut col = vec![0.0; d];
            col[i] = 1.0;
            col[js] = -(c[i] as f64) / cj;
            col
        })
        .collect();
    let pv = |x: &[f64], y: &[f64]| -> f64 {
        (0..d)
            .map(|i| x[i] * (0..d).map(|j| pm[i][j] * y[j]).sum::<f64>())
            .sum()
    };
    let mm: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| pv(&a[i], &a[j])).collect()).collect();
    let lin: Vec<f64> = (0..m).map(|i| pv(&a[i], &b)).collect();
    let y0 = solve_spd(&mm, &lin.iter().map(|x| -x).collect::<Vec<_>>());
    let pb = pv(&b, &b);
    let y0my0: f64 = (0..m)
        .map(|i| y0[i] * (0..m).map(|j| mm[i][j] * y0[j]).sum::<f64>())
        .sum();
    let budget = bound - (pb - y0my0);
    let mut out = Vec::new();
    if budget < -1e-6 * (1.0 + bound) {
        return out;
    }
    let slack = 1e-7 * (1.0 + bound.abs()) + 1e-6;
    fincke_pohst(&mm, &y0, budget.max(0.0) + slack, |y| {
        let num: i128 = -k - free.iter().zip(y).map(|(&i, &yi)| c[i] * yi as i128).sum::<i128>();
        if num % c[js] != 0 {
            return;
        }
        let mut e = vec![0i64; d];
        for (&i, &yi) in free.iter().zip(y) {
            e[i] = yi;
        }
        let Some(ej) = (num / c[js]).to_i64() else { return };
        e[js] = ej;
        let se = sc.apply(&e);
        let sn: i128 = se.iter().zip(&e).map(|(x, y)| x * *y as i128).sum();
        if sn <= 0 || targets.binary_search(&sn).is_err() {
            return;
        }
        if k == 0 {
            // Both ±e lie on the slice; keep the one with first nonzero entry negative.
            if e.iter().find(|x| **x != 0).is_some_and(|x| *x > 0) {
                return;
            }
        }
        if !is_primitive(&e) || se.iter().any(|x| (2 * x) % sn != 0) {
            return;
        }
        out.push(Candidate { e, k, sn });
    });
    out
}

/// Solves `M·x = r` for small symmetric positive definite `M`.
fn solve_spd(m: &[Vec<f64>], r: &[f64]) -> Vec<f64> {
    let n = r.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut x = r.to_vec();
    for i in 0..n {
        let p = a[i][i];
        for k in i + 1..n {
            let f = a[k][i] / p;
            for j in i..n {
                a[k][j] -= f * a[i][j];
            }
            x[k] -= f * x[i];
        }
    }
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (x[i] - s) / a[i][i];
    }
    x
}

/// Visits every integer `y` with `(y − y0)ᵗ·M·(y − y0) ≤ bound`.
fn fincke_pohst(m: &[Vec<f64>], y0: &[f64], bound: f64, mut visit: impl FnMut(&[i64])) {
    let n = y0.len();
    // q[i][i] diagonal weights, q[i][j] (j > i) multipliers.
    let mut q: Vec<Vec<f64>> = m.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut y = vec![0i64; n];
    fn rec(
        i: usize,
        rem: f64,
        q: &[Vec<f64>],
        y0: &[f64],
        y: &mut Vec<i64>,
        visit: &mut dyn FnMut(&[i64]),
    ) {
        let n = y0.len();
        let shift: f64 = (i + 1..n).map(|j| q[i][j] * (y[j] as f64 - y0[j])).sum();
        let center = y0[i] - shift;
        let radius = (rem.max(0.0) / q[i][i]).sqrt();
        let lo = (center - radius).ceil() as i64;
        let hi = (center + radius).floor() as i64;
        for v in lo..=hi {
            y[i] = v;
            let t = v as f64 - center;
            let r = rem - q[i][i] * t * t;
            if i == 0 {
                visit(y);
            } else {
                rec(i - 1, r, q, y0, y, visit);
            }
        }
    }
    if n == 0 {
        visit(&y);
        return;
    }
    rec(n - 1, bound, &q, y0, &mut y, &mut visit);
}

/// Converts roots to unit vectors of `Q`: `T·e/√F(e)`.
pub fn roots_to_inversive(rl: &RootList, bc: &BasisChange) -> Result<Vec<InversiveVector>, VinbergError> {
    rl.roots
        .iter()
        .map(|r| root_to_inversive(&r.coords, bc))
        .collect()
}

pub fn root_to_inversive(e: &[i64], bc: &BasisChange) -> Result<InversiveVector, VinbergError> {
    let v: Vector = e.iter().map(|&x| RadicalNumber::from_integer(x)).collect();
    let fe = bc
        .source
        .eval(&v)
        .map_err(|e| VinbergError::NotRepresentable(e.to_string()))?;
    let fe = fe.as_rational().ok_or(VinbergError::NotRational)?;
    let root = sqrt_of_rational(&fe).map_err(|e| VinbergError::NotRepresentable(e.to_string()))?;
    let inv = root
        .invert()
        .map_err(|e| VinbergError::NotRepresentable(e.to_string()))?;
    let w = bc
        .apply(&v)
        .map_err(|e: FormError| VinbergError::NotRepresentable(e.to_string()))?;
    InversiveVector::new(w.iter().map(|x| x * &inv).collect())
        .map_err(|e| VinbergError::NotRepresentable(e.to_string()))
}

/// `F`-Gram matrix of integer roots, exact.
pub fn root_gram(form: &QuadraticForm, roots: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let vs: Vec<Vector> = roots
        .iter()
        .map(|r| r.iter().map(|&x| RadicalNumber::from_integer(x)).collect())
        .collect();
    let g = form.gram(&vs).expect("dimensions agree");
    (0..vs.len())
        .map(|i| {
            (0..vs.len())
                .map(|j| g.get(i, j).as_rational().expect("rational form"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{bianchi_form, reduce_to_standard};
    use crate::groups::coxeter_diagram;
    use crate::inversive::Configuration;

    fn bi6_problem() -> VinbergProblem {
        VinbergProblem::new(bianchi_form(6)).with_order_by(vec![1, 0, 0, 0])
    }

    #[test]
    fn bi6_roots() {
        let rl = vinberg_roots(&bi6_problem()).unwrap();
        assert_eq!(
            rl.vectors(),
            vec![
                vec![0, 0, -1, 0],
                vec![1, 0, 1, 0],
                vec![0, 0, 0, -1],
                vec![6, 0, 0, 1],
                vec![-1, 1, 0, 0],
                vec![2, 2, 0, 1],
            ]
        );
        assert!(!rl.truncated);
        assert_eq!(rl.stop, StopReason::MaxHeight);
    }

    #[test]
    fn accepted_roots_satisfy_invariants() {
        let p = bi6_problem();
        let rl = vinberg_roots(&p).unwrap();
        let vs = rl.vectors();
        let g = root_gram(&p.form, &vs);
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                if i != j {
                    assert!(g[i][j].signum() <= 0);
                }
            }
            // Crystallographic: 2⟨e, x_k⟩/F(e) ∈ ℤ for every basis vector.
            for k in 0..4 {
                let mut x = vec![0; 4];
                x[k] = 1;
                let q = root_gram(&p.form, &[vs[i].clone(), x]);
                let ratio = &(&q[0][1] * &Rational::from_integer(2)) / &q[0][0];
                assert!(ratio.is_integer());
            }
        }
    }

    #[test]
    fn gram_is_basepoint_independent() {
        let form = bianchi_form(6);
        let a = vinberg_roots(&VinbergProblem::new(form.clone())).unwrap();
        let b = vinberg_roots(&VinbergProblem::new(form.clone()).with_basepoint(vec![2, 1, 0, 0])).unwrap();
        let mut ga: Vec<Vec<Rational>> = normalized_gram(&form, &a.vectors());
        let mut gb: Vec<Vec<Rational>> = normalized_gram(&form, &b.vectors());
        ga.sort();
        gb.sort();
        assert_eq!(ga, gb);
    }

    /// Each row's sorted multiset of squared cosines, a permutation-invariant summary.
    fn normalized_gram(form: &QuadraticForm, vs: &[Vec<i64>]) -> Vec<Vec<Rational>> {
        let g = root_gram(form, vs);
        (0..vs.len())
            .map(|i| {
                let mut row: Vec<Rational> = (0..vs.len())
                    .map(|j| &(&g[i][j] * &g[i][j]) / &(&g[i][i] * &g[j][j]))
                    .collect();
                row.sort();
                row
            })
            .collect()
    }

    #[test]
    fn bi30_isolated_node() {
        let form = bianchi_form(30);
        let rl = vinberg_roots(&VinbergProblem::new(form.clone()).with_order_by(vec![1, 0, 0, 0])).unwrap();
        assert_eq!(rl.roots.len(), 11);
        assert_eq!(rl.roots[7].coords, vec![5, 5, 0, 1]);
        let bc = reduce_to_standard(&form).unwrap();
        let vs = roots_to_inversive(&rl, &bc).unwrap();
        let d = coxeter_diagram(&vs).unwrap();
        // Nodes 8 through 11 all meet the rest only orthogonally or disjointly.
        assert_eq!(d.isolated_nodes(), vec![7, 8, 9, 10]);
        for e in d.edges.iter().filter(|e| e.i == 7 || e.j == 7) {
            assert!(matches!(e.config, Configuration::Orthogonal | Configuration::Disjoint(_)));
        }
    }

    #[test]
    fn limits() {
        let rl = vinberg_roots(&bi6_problem().with_max_roots(0)).unwrap();
        assert!(rl.roots.is_empty() && rl.truncated);
        let rl = vinberg_roots(&bi6_problem().with_max_roots(3)).unwrap();
        assert_eq!(rl.roots.len(), 3);
        assert!(rl.truncated);
        assert_eq!(
            vinberg_roots(&bi6_problem().with_basepoint(vec![1, 0, 0, 0])),
            Err(VinbergError::BadBasepoint)
        );
        assert!(matches!(
            vinberg_roots(&VinbergProblem::new(QuadraticForm::diagonal(&[1, 1, 1, 1]).unwrap())),
            Err(VinbergError::BadSignature(_))
        ));
    }

    #[test]
    fn unit_norm_root_keeps_direction() {
        let form = bianchi_form(6);
        let bc = reduce_to_standard(&form).unwrap();
        let v = root_to_inversive(&[0, 0, -1, 0], &bc).unwrap();
        let w = bc.apply(&vec![rn0(), rn0(), RadicalNumber::from_integer(-1), rn0()]).unwrap();
        assert_eq!(v.coords(), w.as_slice());
    }

    fn rn0() -> RadicalNumber {
        RadicalNumber::zero()
    }

    #[test]
    fn default_norm_set() {
        let n: Vec<i64> = default_norms(&bianchi_form(6))
            .iter()
            .map(|q| q.numer().to_i64().unwrap())
            .collect();
        assert_eq!(n, vec![1, 2, 3, 4, 6, 8, 12, 24]);
    }
}
