//! Quadratic spaces: the standard hyperbolic form, user forms, covectors and
//! reduction of rational forms to standard coordinates.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::linalg::{dot, LinalgError, Matrix, Vector};
use crate::radical::{sqrt_of_rational, RadicalError, RadicalNumber};
use crate::rational::{lcm_denominators, Rational};

/// Default box for [`find_rational_isotropic`].
pub const DEFAULT_ISOTROPIC_BOUND: i64 = 25;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("form matrix is not symmetric")]
    NotSymmetric,
    #[error("form needs dimension at least 3, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("form has signature {found:?}, expected {expected:?}")]
    WrongSignature {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("form entries must be rational")]
    NotRational,
    #[error("no rational isotropic vector with coordinates bounded by {0}")]
    NotIsotropic(i64),
    #[error("normalizing the complement leaves the radical ring: {0}")]
    NotRepresentable(RadicalError),
    #[error("basis change does not satisfy TᵗQT = F")]
    BadBasisChange,
}

/// `F(x) = xᵗ·M·x` for a symmetric matrix `M` of size `n+2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormJson", into = "FormJson")]
pub struct QuadraticForm {
    matrix: Matrix,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    dim: usize,
    matrix: Matrix,
}

impl TryFrom<FormJson> for QuadraticForm {
    type Error = String;
    fn try_from(j: FormJson) -> Result<Self, String> {
        if j.matrix.nrows() != j.dim {
            return Err(format!(
                "dim is {} but matrix has {} rows",
                j.dim,
                j.matrix.nrows()
            ));
        }
        QuadraticForm::new(j.matrix).map_err(|e| e.to_string())
    }
}

impl From<QuadraticForm> for FormJson {
    fn from(f: QuadraticForm) -> Self {
        FormJson {
            dim: f.dim(),
            matrix: f.matrix,
        }
    }
}

impl QuadraticForm {
    pub fn new(matrix: Matrix) -> Result<Self, FormError> {
        if !matrix.is_symmetric() {
            return Err(FormError::NotSymmetric);
        }
        if matrix.nrows() < 3 {
            return Err(FormError::TooSmall(matrix.nrows()));
        }
        Ok(QuadraticForm { matrix })
    }

    /// `Q = −x₀x_{n+1} + x₁² + … + xₙ²` on `ℝ^{n+2}`.
    pub fn standard(n: usize) -> Self {
        assert!(n >= 1, "standard form needs n ≥ 1");
        let d = n + 2;
        let mut m = Matrix::identity(d);
        let half = RadicalNumber::from_rational(Rational::new(-1, 2));
        m.set(0, 0, RadicalNumber::zero());
        m.set(d - 1, d - 1, RadicalNumber::zero());
        m.set(0, d - 1, half.clone());
        m.set(d - 1, 0, half);
        QuadraticForm { matrix: m }
    }

    /// Diagonal form with integer entries.
    pub fn diagonal(entries: &[i64]) -> Result<Self, FormError> {
        let e: Vec<RadicalNumber> = entries.iter().map(|&x| x.into()).collect();
        Self::new(Matrix::diagonal(&e))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Ambient dimension `n+2`.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Sphere dimension `n`.
    pub fn n(&self) -> usize {
        self.dim() - 2
    }

    pub fn is_standard(&self) -> bool {
        *self == Self::standard(self.n())
    }

    fn check_len(&self, v: &[RadicalNumber]) -> Result<(), FormError> {
        if v.len() != self.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            }
            .into());
        }
        Ok(())
    }

    pub fn inner(&self, v: &[RadicalNumber], w: &[RadicalNumber]) -> Result<RadicalNumber, FormError> {
        self.check_len(v)?;
        self.check_len(w)?;
        Ok(self.inner_unchecked(v, w))
    }

    pub(crate) fn inner_unchecked(&self, v: &[RadicalNumber], w: &[RadicalNumber]) -> RadicalNumber {
        let mut acc = RadicalNumber::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let mw = dot(self.matrix.row(i), w);
            if !mw.is_zero() {
                acc += &(vi * &mw);
            }
        }
        acc
    }

    pub fn eval(&self, v: &[RadicalNumber]) -> Result<RadicalNumber, FormError> {
        self.inner(v, v)
    }

    /// Matrix of pairwise inner products.
    pub fn gram(&self, vs: &[Vector]) -> Result<Matrix, FormError> {
        for v in vs {
            self.check_len(v)?;
        }
        let k = vs.len();
        let mut g = Matrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let x = self.inner_unchecked(&vs[i], &vs[j]);
                g.set(j, i, x.clone());
                g.set(i, j, x);
            }
        }
        Ok(g)
    }

    pub fn signature(&self) -> Signature {
        signature(&self.matrix)
    }

    pub fn is_rational(&self) -> bool {
        self.matrix.is_rational()
    }

    /// Applies a Galois sign flip to every entry.
    pub fn conjugate(&self, flipped: &[u64]) -> Self {
        let rows = self
            .matrix
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.conjugate(flipped)).collect())
            .collect();
        QuadraticForm {
            matrix: Matrix::from_rows(rows).expect("square"),
        }
    }

    /// Integer matrix `L·M` with the least positive `L`, for rational forms.
    pub fn integer_scaled(&self) -> Option<(BigInt, Vec<Vec<BigInt>>)> {
        let entries: Option<Vec<Rational>> = self.matrix.entries().map(|x| x.as_rational()).collect();
        let entries = entries?;
        let l = lcm_denominators(entries.iter());
        let d = self.dim();
        let ints: Vec<BigInt> = entries
            .iter()
            .map(|q| q.numer() * (&l / q.denom()))
            .collect();
        Some((l, ints.chunks(d).map(<[BigInt]>::to_vec).collect()))
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticForm({:?})", self.matrix)
    }
}

/// Counts of positive, negative and zero squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn pair(&self) -> (usize, usize) {
        (self.positive, self.negative)
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.zero == 0 && self.negative == 1
    }
}

/// Sylvester signature by symmetric congruence diagonalization.
pub fn signature(m: &Matrix) -> Signature {
    assert!(m.is_symmetric(), "signature of a non-symmetric matrix");
    let n = m.nrows();
    let mut a = m.clone();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut k = 0;
    while k < n {
        if let Some(p) = (k..n).find(|&i| !a.get(i, i).is_zero()) {
            swap_sym(&mut a, k, p);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a.get(i, j).is_zero())
        {
            // Row/column operation e_i ← e_i + e_j makes a_ii = 2a_ij ≠ 0.
            add_sym(&mut a, i, j);
            swap_sym(&mut a, k, i);
        } else {
            sig.zero += n - k;
            break;
        }
        let pivot = a.get(k, k).clone();
        if pivot.signum() > 0 {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        let inv = pivot.invert().expect("nonzero pivot");
        for i in k + 1..n {
            let f = a.get(i, k) * &inv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let x = a.get(i, j) - &(&f * a.get(k, j));
                a.set(i, j, x);
            }
            for j in k..n {
                let x = a.get(j, i) - &(&f * a.get(j, k));
                a.set(j, i, x);
            }
        }
        k += 1;
    }
    sig
}

fn swap_sym(a: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.nrows();
    for c in 0..n {
        let (x, y) = (a.get(i, c).clone(), a.get(j, c).clone());
        a.set(i, c, y);
        a.set(j, c, x);
    }
    for r in 0..n {
        let (x, y) = (a.get(r, i).clone(), a.get(r, j).clone());
        a.set(r, i, y);
        a.set(r, j, x);
    }
}

fn add_sym(a: &mut Matrix, i: usize, j: usize) {
    let n = a.nrows();
    for c in 0..n {
        let x = a.get(i, c) + a.get(j, c);
        a.set(i, c, x);
    }
    for r in 0..n {
        let x = a.get(r, i) + a.get(r, j);
        a.set(r, i, x);
    }
}

/// A linear functional stored by its `Q`-raised vector: `α(v) = coordsᵗ·Q·v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Covector {
    pub coords: Vector,
}

impl Covector {
    pub fn new(coords: Vector) -> Self {
        Covector { coords }
    }

    /// `𝐛 = (0,…,0,−2)`: evaluates to the first coordinate, i.e. the bend.
    pub fn bend(n: usize) -> Self {
        let mut c = vec![RadicalNumber::zero(); n + 2];
        c[n + 1] = RadicalNumber::from_integer(-2);
        Covector { coords: c }
    }

    /// `𝐛̂ = (−2,0,…,0)`: evaluates to the last coordinate, i.e. the cobend.
    pub fn cobend(n: usize) -> Self {
        let mut c = vec![RadicalNumber::zero(); n + 2];
        c[0] = RadicalNumber::from_integer(-2);
        Covector { coords: c }
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 2
    }

    pub fn eval(&self, v: &[RadicalNumber]) -> Result<RadicalNumber, FormError> {
        QuadraticForm::standard(self.n()).inner(&self.coords, v)
    }

    /// Dual pairing `⟨α, β⟩_*`, which is the `Q`-pairing of raised vectors.
    pub fn dual_inner(&self, other: &Covector) -> Result<RadicalNumber, FormError> {
        QuadraticForm::standard(self.n()).inner(&self.coords, &other.coords)
    }

    pub fn dual_norm(&self) -> Result<RadicalNumber, FormError> {
        self.dual_inner(self)
    }

    /// The row vector `coordsᵗ·Q`, i.e. the functional in plain coordinates.
    pub fn lowered(&self) -> Vector {
        let q = QuadraticForm::standard(self.n());
        (0..self.coords.len())
            .map(|j| dot(&self.coords, &q.matrix().column(j)))
            .collect()
    }
}

/// A change of coordinates `x ↦ T·x` carrying `source` to `target`:
/// `Tᵗ·target·T = source`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisChange {
    pub t: Matrix,
    pub source: QuadraticForm,
    pub target: QuadraticForm,
}

impl BasisChange {
    pub fn new(t: Matrix, source: QuadraticForm, target: QuadraticForm) -> Result<Self, FormError> {
        let bc = BasisChange { t, source, target };
        if bc.verify() {
            Ok(bc)
        } else {
            Err(FormError::BadBasisChange)
        }
    }

    pub fn verify(&self) -> bool {
        let tt = self.t.transpose();
        tt.mul(self.target.matrix())
            .and_then(|m| m.mul(&self.t))
            .is_ok_and(|m| &m == self.source.matrix())
    }

    pub fn apply(&self, v: &[RadicalNumber]) -> Result<Vector, FormError> {
        Ok(self.t.mul_vec(v)?)
    }

    /// Conjugates a source-coordinate matrix `M` into target coordinates `T·M·T⁻¹`.
    pub fn conjugate_matrix(&self, m: &Matrix) -> Result<Matrix, FormError> {
        let inv = self.t.inverse()?;
        Ok(self.t.mul(m)?.mul(&inv)?)
    }
}

fn isotropic_rank(x: i64) -> u64 {
    // 0, 1, −1, 2, −2, …
    if x > 0 {
        2 * x as u64 - 1
    } else {
        2 * x.unsigned_abs()
    }
}

/// Smallest integer isotropic vector in the box `max |xᵢ| ≤ bound`.
///
/// Vectors are ordered by max-norm, then ℓ¹-norm, then by the last
/// coordinate first (values ranked 0, 1, −1, 2, …); the result has first
/// nonzero coordinate positive.
pub fn find_rational_isotropic(f: &QuadraticForm, bound: i64) -> Result<Option<Vec<i64>>, FormError> {
    let (_, m) = f.integer_scaled().ok_or(FormError::NotRational)?;
    let d = f.dim();
    let m: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().expect("form entries fit i128")).collect())
        .collect();
    let eval = |x: &[i64]| -> i128 {
        let mut s = 0i128;
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            let mut r = 0i128;
            for j in 0..d {
                r += m[i][j] * x[j] as i128;
            }
            s += x[i] as i128 * r;
        }
        s
    };
    for h in 1..=bound {
        let mut best: Option<(i64, Vec<u64>, Vec<i64>)> = None;
        let mut x = vec![-h; d];
        loop {
            let height = x.iter().map(|v| v.abs()).max().unwrap_or(0);
            let first = x.iter().find(|v| **v != 0).copied().unwrap_or(0);
            if height == h && first > 0 && eval(&x) == 0 {
                let l1: i64 = x.iter().map(|v| v.abs()).sum();
                let key: Vec<u64> = x.iter().rev().map(|&v| isotropic_rank(v)).collect();
                let better = match &best {
                    None => true,
                    Some((bl, bk, _)) => (l1, &key) < (*bl, bk),
                };
                if better {
                    best = Some((l1, key, x.clone()));
                }
            }
            // Odometer over [−h, h]^d.
            let mut i = 0;
            while i < d {
                if x[i] < h {
                    x[i] += 1;
                    break;
                }
                x[i] = -h;
                i += 1;
            }
            if i == d {
                break;
            }
        }
        if let Some((_, _, v)) = best {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Finds `T` with `Tᵗ·Q·T = F` for a rational form of signature `(n+1, 1)`.
pub fn reduce_to_standard(f: &QuadraticForm) -> Result<BasisChange, FormError> {
    reduce_to_standard_with_bound(f, DEFAULT_ISOTROPIC_BOUND)
}

pub fn reduce_to_standard_with_bound(f: &QuadraticForm, bound: i64) -> Result<BasisChange, FormError> {
    let n = f.n();
    let q = QuadraticForm::standard(n);
    if !f.is_rational() {
        return Err(FormError::NotRational);
    }
    let sig = f.signature();
    if !sig.is_hyperbolic() || sig.positive != n + 1 {
        return Err(FormError::WrongSignature {
            expected: (n + 1, 1),
            found: sig.pair(),
        });
    }
    if *f == q {
        return Ok(BasisChange {
            t: Matrix::identity(n + 2),
            source: f.clone(),
            target: q,
        });
    }
    let u: Vector = find_rational_isotropic(f, bound)?
        .ok_or(FormError::NotIsotropic(bound))?
        .into_iter()
        .map(RadicalNumber::from_integer)
        .collect();
    let d = n + 2;
    let unit = |i: usize| -> Vector {
        let mut e = vec![RadicalNumber::zero(); d];
        e[i] = RadicalNumber::one();
        e
    };
    let (w, uw) = (0..d)
        .map(unit)
        .map(|e| {
            let p = f.inner_unchecked(&u, &e);
            (e, p)
        })
        .find(|(_, p)| !p.is_zero())
        .expect("nondegenerate form pairs u with some basis vector");
    // Second isotropic vector with ⟨u, f⟩ = −1/2.
    let fw = f.inner_unchecked(&w, &w);
    let shift = &fw / &(&uw * &RadicalNumber::from_integer(2));
    let w2: Vector = w.iter().zip(&u).map(|(a, b)| a - &(&shift * b)).collect();
    let s = &RadicalNumber::from_rational(Rational::new(-1, 2)) / &uw;
    let fv: Vector = w2.iter().map(|x| x * &s).collect();

    let two = RadicalNumber::from_integer(-2);
    // Gram-Schmidt on rational vectors; normalization happens last so every
    // norm stays rational.
    let mut raw: Vec<(Vector, RadicalNumber)> = Vec::new();
    for i in 0..d {
        if raw.len() == n {
            break;
        }
        let e = unit(i);
        let a = &two * &f.inner_unchecked(&e, &fv);
        let b = &two * &f.inner_unchecked(&e, &u);
        let mut g: Vector = (0..d)
            .map(|k| &(&e[k] - &(&a * &u[k])) - &(&b * &fv[k]))
            .collect();
        for (h, hh) in &raw {
            let c = &f.inner_unchecked(&g, h) / hh;
            g = g.iter().zip(h).map(|(x, y)| x - &(&c * y)).collect();
        }
        if g.iter().all(RadicalNumber::is_zero) {
            continue;
        }
        let norm = f.inner_unchecked(&g, &g);
        if norm.signum() <= 0 {
            return Err(FormError::WrongSignature {
                expected: (n + 1, 1),
                found: sig.pair(),
            });
        }
        raw.push((g, norm));
    }
    let mut complement = Vec::with_capacity(n);
    for (g, norm) in raw {
        let norm_q = norm.as_rational().expect("rational arithmetic stays rational");
        let root = sqrt_of_rational(&norm_q).map_err(FormError::NotRepresentable)?;
        let inv = root.invert().expect("positive norm");
        complement.push(g.iter().map(|x| x * &inv).collect::<Vector>());
    }
    let mut columns = vec![u];
    columns.extend(complement);
    columns.push(fv);
    let b = Matrix::from_columns(d, &columns)?;
    let t = b.inverse()?;
    BasisChange::new(t, f.clone(), q)
}

/// Behaviour of a symmetric matrix under one Galois embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    /// Primes `p` with `√p ↦ −√p`.
    pub flipped: Vec<u64>,
    pub signature: Signature,
    pub definiteness: Definiteness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisReport {
    pub embeddings: Vec<EmbeddingReport>,
}

impl GaloisReport {
    /// True when every nontrivial embedding is definite.
    pub fn all_definite(&self) -> bool {
        self.embeddings.iter().all(|e| {
            matches!(
                e.definiteness,
                Definiteness::PositiveDefinite | Definiteness::NegativeDefinite
            )
        })
    }
}

impl fmt::Display for GaloisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.embeddings.is_empty() {
            return writeln!(f, "no nontrivial embeddings (rational entries)");
        }
        for e in &self.embeddings {
            let flips: Vec<String> = e.flipped.iter().map(|p| format!("sqrt({p})")).collect();
            writeln!(
                f,
                "flip {}: signature ({}, {}, {}) -> {:?}",
                flips.join(", "),
                e.signature.positive,
                e.signature.negative,
                e.signature.zero,
                e.definiteness
            )?;
        }
        Ok(())
    }
}

/// Classifies `Gᵟ` for every nontrivial sign flip `σ` of the primes under the radicals of `G`.
pub fn galois_definiteness(g: &Matrix) -> GaloisReport {
    let primes: Vec<u64> = g
        .entries()
        .flat_map(|x| x.primes())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut embeddings = Vec::new();
    for mask in 1u64..(1 << primes.len()) {
        let flipped: Vec<u64> = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| *p)
            .collect();
        let rows = g
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.conjugate(&flipped)).collect())
            .collect();
        let sig = signature(&Matrix::from_rows(rows).expect("square"));
        let definiteness = if sig.zero > 0 {
            Definiteness::Degenerate
        } else if sig.negative == 0 {
            Definiteness::PositiveDefinite
        } else if sig.positive == 0 {
            Definiteness::NegativeDefinite
        } else {
            Definiteness::Indefinite
        };
        embeddings.push(EmbeddingReport {
            flipped,
            signature: sig,
            definiteness,
        });
    }
    GaloisReport { embeddings }
}

/// Quadratic form attached to the extended Bianchi group `Bi(D)`:
/// `−xy + z² + D·w²`, or `−2xy + 2z² + 2zw + ((D+1)/2)·w²` when `D ≡ 3 mod 4`.
pub fn bianchi_form(d: i64) -> QuadraticForm {
    assert!(d > 0, "Bianchi forms need D > 0");
    let r = |n: i64, den: i64| RadicalNumber::from_rational(Rational::new(n, den));
    let rows = if d % 4 == 3 {
        vec![
            vec![r(0, 1), r(-1, 1), r(0, 1), r(0, 1)],
            vec![r(-1, 1), r(0, 1), r(0, 1), r(0, 1)],
            vec![r(0, 1), r(0, 1), r(2, 1), r(1, 1)],
            vec![r(0, 1), r(0, 1), r(1, 1), r((d + 1) / 2, 1)],
        ]
    } else {
        vec![
            vec![r(0, 1), r(-1, 2), r(0, 1), r(0, 1)],
            vec![r(-1, 2), r(0, 1), r(0, 1), r(0, 1)],
            vec![r(0, 1), r(0, 1), r(1, 1), r(0, 1)],
            vec![r(0, 1), r(0, 1), r(0, 1), r(d, 1)],
        ]
    };
    QuadraticForm::new(Matrix::from_rows(rows).expect("4x4")).expect("symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radical::rn;
    use crate::linalg::vec_from_i64;

    fn vecs(s: &[&[&str]]) -> Vec<Vector> {
        s.iter().map(|r| r.iter().map(|x| rn(x)).collect()).collect()
    }

    #[test]
    fn standard_form_shape() {
        let q = QuadraticForm::standard(2);
        let expected = Matrix::from_rows(vecs(&[
            &["0", "0", "0", "-1/2"],
            &["0", "1", "0", "0"],
            &["0", "0", "1", "0"],
            &["-1/2", "0", "0", "0"],
        ]))
        .unwrap();
        assert_eq!(q.matrix(), &expected);
        assert_eq!(q.signature().pair(), (3, 1));
        assert_eq!(QuadraticForm::standard(1).signature().pair(), (2, 1));
    }

    #[test]
    fn signature_matches_leading_minors() {
        // Independent oracle: Sylvester's criterion on a positive definite matrix
        // and an explicit 2x2 hyperbolic plane.
        let pd = Matrix::from_i64(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        assert_eq!(signature(&pd).pair(), (3, 0));
        let hyp = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&hyp).pair(), (1, 1));
        let deg = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(signature(&deg).zero, 1);
    }

    #[test]
    fn inner_examples() {
        let q = QuadraticForm::standard(2);
        let v = vec_from_i64(&[1, 0, 0, -1]);
        assert_eq!(q.eval(&v).unwrap(), rn("1"));
        assert!(q.inner(&v, &vec_from_i64(&[1, 0, 0])).is_err());
        assert_eq!(q.gram(&[]).unwrap().nrows(), 0);
        assert_eq!(q.gram(&[v.clone()]).unwrap(), Matrix::from_i64(&[&[1]]));
    }

    #[test]
    fn bend_covectors() {
        let b = Covector::bend(2);
        let bh = Covector::cobend(2);
        assert_eq!(b.dual_norm().unwrap(), rn("0"));
        assert_eq!(b.dual_inner(&bh).unwrap(), rn("-2"));
        let v = vecs(&[&["sqrt(2)", "0", "sqrt(3)", "sqrt(2)"]])[0].clone();
        assert_eq!(b.eval(&v).unwrap(), rn("sqrt(2)"));
        assert_eq!(bh.eval(&v).unwrap(), rn("sqrt(2)"));
        assert_eq!(b.lowered(), vec_from_i64(&[1, 0, 0, 0]));
    }

    #[test]
    fn isotropic_search() {
        let f = bianchi_form(6);
        assert_eq!(find_rational_isotropic(&f, 1).unwrap(), Some(vec![1, 0, 0, 0]));
        let g = QuadraticForm::diagonal(&[1, 1, -1]).unwrap();
        let v = find_rational_isotropic(&g, 1).unwrap().unwrap();
        assert!(v == vec![1, 0, 1] || v == vec![0, 1, 1]);
    }

    #[test]
    fn anisotropic_form_has_no_small_isotropic_vector() {
        let f = QuadraticForm::diagonal(&[1, 1, 1, -7]).unwrap();
        assert_eq!(find_rational_isotropic(&f, 20).unwrap(), None);
        // Brute-force oracle over the same box, independent of the search order.
        let mut found = false;
        for x in -20i64..=20 {
            for y in -20i64..=20 {
                for z in -20i64..=20 {
                    let s = x * x + y * y + z * z;
                    if s % 7 == 0 {
                        let w2 = s / 7;
                        let w = (w2 as f64).sqrt().round() as i64;
                        if w * w == w2 && w <= 20 && (x, y, z) != (0, 0, 0) {
                            found = true;
                        }
                    }
                }
            }
        }
        assert!(!found);
        assert_eq!(reduce_to_standard(&f), Err(FormError::NotIsotropic(25)));
    }

    #[test]
    fn reduction_satisfies_identity() {
        for d in [1, 2, 6, 19, 23, 30] {
            let f = bianchi_form(d);
            let bc = reduce_to_standard(&f).unwrap();
            // Re-multiply independently of BasisChange::verify.
            let lhs = bc
                .t
                .transpose()
                .mul(QuadraticForm::standard(2).matrix())
                .unwrap()
                .mul(&bc.t)
                .unwrap();
            assert_eq!(&lhs, f.matrix());
        }
        let q = QuadraticForm::standard(2);
        assert_eq!(reduce_to_standard(&q).unwrap().t, Matrix::identity(4));
        let f = QuadraticForm::new(Matrix::from_rows(vecs(&[
            &["0", "-1", "0", "0"],
            &["-1", "0", "0", "0"],
            &["0", "0", "2", "1"],
            &["0", "0", "1", "12"],
        ])).unwrap())
        .unwrap();
        let bc = reduce_to_standard(&f).unwrap();
        assert!(bc.verify());
        assert!(matches!(
            reduce_to_standard(&QuadraticForm::diagonal(&[1, 1, 1, 1]).unwrap()),
            Err(FormError::WrongSignature { .. })
        ));
    }

    #[test]
    fn gram_is_basis_invariant() {
        let f = bianchi_form(6);
        let bc = reduce_to_standard(&f).unwrap();
        let vs = vec![
            vec_from_i64(&[0, 0, -1, 0]),
            vec_from_i64(&[1, 0, 1, 0]),
            vec_from_i64(&[2, 2, 0, 1]),
        ];
        let moved: Vec<Vector> = vs.iter().map(|v| bc.apply(v).unwrap()).collect();
        assert_eq!(
            QuadraticForm::standard(2).gram(&moved).unwrap(),
            f.gram(&vs).unwrap()
        );
    }

    #[test]
    fn galois_examples() {
        let g = Matrix::diagonal(&[rn("1"), rn("1"), rn("1"), rn("-1/2-1/2*sqrt(5)")]);
        let r = galois_definiteness(&g);
        assert_eq!(r.embeddings.len(), 1);
        assert_eq!(r.embeddings[0].definiteness, Definiteness::PositiveDefinite);
        let g = Matrix::diagonal(&[rn("1"), rn("1"), rn("sqrt(5)"), rn("-sqrt(5)")]);
        assert_eq!(
            galois_definiteness(&g).embeddings[0].definiteness,
            Definiteness::Indefinite
        );
        let r = galois_definiteness(&QuadraticForm::standard(2).matrix().clone());
        assert!(r.embeddings.is_empty());
        assert!(r.to_string().contains("no nontrivial embeddings"));
    }

    #[test]
    fn form_json_round_trip() {
        let f = bianchi_form(30);
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with(r#"{"dim":4,"matrix":[["0","-1/2""#));
        let back: QuadraticForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<QuadraticForm>(r#"{"dim":3,"matrix":[[1,2,0],[0,1,0],[0,0,1]]}"#).is_err());
    }
}
