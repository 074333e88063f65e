//! Isometries of the standard form, reflection generators and Coxeter diagrams.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::forms::QuadraticForm;
use crate::inversive::{classify_pair, q_inner, Configuration, InversiveError, InversiveVector};
use crate::linalg::{LinalgError, Matrix, Vector};
use crate::radical::RadicalNumber;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("vector is not Q-unit: Q(v) = {0}")]
    NotUnit(RadicalNumber),
    #[error("matrix does not preserve the standard form")]
    NotIsometry,
    #[error("roots {0} and {1} describe the same sphere")]
    SameSphere(usize, usize),
    #[error("root has zero norm")]
    IsotropicRoot,
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Inversive(#[from] InversiveError),
}

/// A matrix `M` with `MᵗQM = Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct IsometryMatrix {
    m: Matrix,
    #[serde(skip)]
    pub tag: Option<String>,
}

impl TryFrom<Matrix> for IsometryMatrix {
    type Error = GroupError;
    fn try_from(m: Matrix) -> Result<Self, GroupError> {
        IsometryMatrix::new(m)
    }
}

impl From<IsometryMatrix> for Matrix {
    fn from(i: IsometryMatrix) -> Matrix {
        i.m
    }
}

impl IsometryMatrix {
    pub fn new(m: Matrix) -> Result<Self, GroupError> {
        if verify_isometry(&m) {
            Ok(IsometryMatrix { m, tag: None })
        } else {
            Err(GroupError::NotIsometry)
        }
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = Some(tag.into());
        self
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn apply(&self, v: &InversiveVector) -> InversiveVector {
        InversiveVector::new_unchecked(self.m.mul_vec(v.coords()).expect("dimensions agree"))
    }

    pub fn compose(&self, other: &IsometryMatrix) -> IsometryMatrix {
        IsometryMatrix {
            m: self.m.mul(&other.m).expect("dimensions agree"),
            tag: None,
        }
    }

    /// `M⁻¹ = Q⁻¹·Mᵗ·Q`.
    pub fn inverse(&self) -> IsometryMatrix {
        let n = self.m.nrows() - 2;
        let q = QuadraticForm::standard(n);
        let qinv = q.matrix().inverse().expect("Q is invertible");
        IsometryMatrix {
            m: qinv
                .mul(&self.m.transpose())
                .and_then(|x| x.mul(q.matrix()))
                .expect("square"),
            tag: None,
        }
    }
}

/// True iff `MᵗQM = Q` exactly.
pub fn verify_isometry(m: &Matrix) -> bool {
    if !m.is_square() || m.nrows() < 3 {
        return false;
    }
    let q = QuadraticForm::standard(m.nrows() - 2);
    verify_isometry_of(m, &q)
}

/// True iff `MᵗFM = F` exactly.
pub fn verify_isometry_of(m: &Matrix, f: &QuadraticForm) -> bool {
    m.nrows() == f.dim()
        && m.transpose()
            .mul(f.matrix())
            .and_then(|x| x.mul(m))
            .is_ok_and(|x| &x == f.matrix())
}

/// `R = I − 2·v·vᵗ·Q`, the reflection in the sphere `v`.
pub fn reflection_matrix(v: &[RadicalNumber]) -> Result<IsometryMatrix, GroupError> {
    let q = q_inner(v, v);
    if !q.is_one() {
        return Err(GroupError::NotUnit(q));
    }
    let f = QuadraticForm::standard(v.len() - 2);
    let m = reflection_in(&f, v)?;
    Ok(IsometryMatrix { m, tag: None })
}

/// `R = I − 2·e·eᵗ·F / F(e)` for a non-isotropic root `e` of a general form.
pub fn reflection_in(f: &QuadraticForm, e: &[RadicalNumber]) -> Result<Matrix, GroupError> {
    let fe = f.eval(e).map_err(|_| LinalgError::DimensionMismatch {
        expected: f.dim(),
        found: e.len(),
    })?;
    if fe.is_zero() {
        return Err(GroupError::IsotropicRoot);
    }
    let d = f.dim();
    let k = &RadicalNumber::from_integer(-2) / &fe;
    // Row vector eᵗF.
    let ef: Vector = (0..d)
        .map(|j| crate::linalg::dot(e, &f.matrix().column(j)))
        .collect();
    let mut m = Matrix::identity(d);
    for i in 0..d {
        if e[i].is_zero() {
            continue;
        }
        let ki = &k * &e[i];
        for j in 0..d {
            if !ef[j].is_zero() {
                let x = m.get(i, j) + &(&ki * &ef[j]);
                m.set(i, j, x);
            }
        }
    }
    Ok(m)
}

/// Reflection of `v` in the unit vector `r`: `v − 2⟨v, r⟩r`.
pub fn reflect(v: &InversiveVector, r: &InversiveVector) -> InversiveVector {
    let p = v.inner(r);
    if p.is_zero() {
        return v.clone();
    }
    let k = &p * &RadicalNumber::from_integer(2);
    InversiveVector::new_unchecked(
        v.coords()
            .iter()
            .zip(r.coords())
            .map(|(a, b)| a - &(&k * b))
            .collect(),
    )
}

/// Reflection generators together with other isometries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GeneratorJson", into = "GeneratorJson")]
pub struct GeneratorSet {
    roots: Vec<InversiveVector>,
    matrices: Vec<IsometryMatrix>,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorJson {
    #[serde(default)]
    roots: Vec<InversiveVector>,
    #[serde(default)]
    matrices: Vec<IsometryMatrix>,
    #[serde(default)]
    labels: Vec<String>,
}

impl TryFrom<GeneratorJson> for GeneratorSet {
    type Error = GroupError;
    fn try_from(j: GeneratorJson) -> Result<Self, GroupError> {
        let labels = if j.labels.is_empty() { None } else { Some(j.labels) };
        GeneratorSet::new(j.roots, j.matrices, labels)
    }
}

impl From<GeneratorSet> for GeneratorJson {
    fn from(g: GeneratorSet) -> Self {
        GeneratorJson {
            roots: g.roots,
            matrices: g.matrices,
            labels: g.labels,
        }
    }
}

impl GeneratorSet {
    /// Labels default to `1, 2, …` for roots and `S1, S2, …` for matrices.
    pub fn new(
        roots: Vec<InversiveVector>,
        matrices: Vec<IsometryMatrix>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let dims: Vec<usize> = roots
            .iter()
            .map(|r| r.coords().len())
            .chain(matrices.iter().map(|m| m.matrix().nrows()))
            .collect();
        if let Some(&d) = dims.first() {
            if let Some(&bad) = dims.iter().find(|&&x| x != d) {
                return Err(LinalgError::DimensionMismatch {
                    expected: d,
                    found: bad,
                }
                .into());
            }
        }
        let expected = roots.len() + matrices.len();
        let labels = match labels {
            Some(l) if l.len() != expected => {
                return Err(GroupError::LabelCount {
                    expected,
                    found: l.len(),
                })
            }
            Some(l) => l,
            None => (1..=roots.len())
                .map(|i| i.to_string())
                .chain((1..=matrices.len()).map(|i| format!("S{i}")))
                .collect(),
        };
        Ok(GeneratorSet {
            roots,
            matrices,
            labels,
        })
    }

    pub fn reflections(roots: Vec<InversiveVector>) -> Self {
        Self::new(roots, Vec::new(), None).expect("consistent dimensions")
    }

    pub fn empty() -> Self {
        GeneratorSet {
            roots: Vec::new(),
            matrices: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn roots(&self) -> &[InversiveVector] {
        &self.roots
    }

    pub fn matrices(&self) -> &[IsometryMatrix] {
        &self.matrices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.roots.len() + self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Ambient dimension `n+2`, if any generator is present.
    pub fn dim(&self) -> Option<usize> {
        self.roots
            .first()
            .map(|r| r.coords().len())
            .or_else(|| self.matrices.first().map(|m| m.matrix().nrows()))
    }

    /// Every generator as a matrix: reflections first, then the others.
    pub fn all_matrices(&self) -> Vec<IsometryMatrix> {
        self.roots
            .iter()
            .map(|r| reflection_matrix(r.coords()).expect("unit root"))
            .chain(self.matrices.iter().cloned())
            .collect()
    }

    /// Generators closed under inverses, as actions on unit vectors.
    pub fn moves(&self) -> Vec<Move> {
        let mut out: Vec<Move> = self.roots.iter().cloned().map(Move::Reflect).collect();
        for m in &self.matrices {
            let inv = m.inverse();
            let involution = inv == *m;
            out.push(Move::Matrix(m.clone()));
            if !involution {
                out.push(Move::Matrix(inv));
            }
        }
        out
    }
}

/// One generator action used by orbit enumeration.
#[derive(Debug, Clone)]
pub enum Move {
    Reflect(InversiveVector),
    Matrix(IsometryMatrix),
}

impl Move {
    pub fn apply(&self, v: &InversiveVector) -> InversiveVector {
        match self {
            Move::Reflect(r) => reflect(v, r),
            Move::Matrix(m) => m.apply(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub i: usize,
    pub j: usize,
    pub config: Configuration,
}

/// Complete pairwise relation table between reflection walls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterDiagram {
    pub nodes: Vec<String>,
    /// One entry per pair `i < j`, in lexicographic order.
    pub edges: Vec<DiagramEdge>,
}

impl CoxeterDiagram {
    pub fn relation(&self, i: usize, j: usize) -> Option<&Configuration> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges
            .iter()
            .find(|e| e.i == a && e.j == b)
            .map(|e| &e.config)
    }

    /// Nodes meeting every other node only orthogonally or disjointly.
    pub fn isolated_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&k| {
                self.edges
                    .iter()
                    .filter(|e| e.i == k || e.j == k)
                    .all(|e| matches!(e.config, Configuration::Orthogonal | Configuration::Disjoint(_)))
            })
            .collect()
    }
}

pub fn coxeter_diagram(roots: &[InversiveVector]) -> Result<CoxeterDiagram, GroupError> {
    let labels = (1..=roots.len()).map(|i| i.to_string()).collect();
    coxeter_diagram_labeled(roots, labels)
}

pub fn coxeter_diagram_labeled(
    roots: &[InversiveVector],
    labels: Vec<String>,
) -> Result<CoxeterDiagram, GroupError> {
    if labels.len() != roots.len() {
        return Err(GroupError::LabelCount {
            expected: roots.len(),
            found: labels.len(),
        });
    }
    let mut edges = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let config = classify_pair(&roots[i], &roots[j]).map_err(|e| match e {
                InversiveError::SameSphere => GroupError::SameSphere(i, j),
                other => other.into(),
            })?;
            edges.push(DiagramEdge { i, j, config });
        }
    }
    Ok(CoxeterDiagram {
        nodes: labels,
        edges,
    })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering: π/3 solid, π/4 double, π/5 and π/6 labeled, tangency
/// bold, disjoint dashed with the inner product, other relations dotted.
pub fn diagram_to_dot(d: &CoxeterDiagram) -> String {
    let mut out = String::from("graph coxeter {\n  node [shape=circle];\n");
    for n in &d.nodes {
        let _ = writeln!(out, "  {};", quote(n));
    }
    for e in &d.edges {
        let attrs = match &e.config {
            Configuration::Orthogonal => continue,
            Configuration::Angle(3) => String::new(),
            Configuration::Angle(4) => " [color=\"black:invis:black\"]".to_string(),
            Configuration::Angle(m) => format!(" [label=\"{m}\"]"),
            Configuration::Tangent => " [style=bold, penwidth=3]".to_string(),
            Configuration::Disjoint(p) => format!(" [style=dashed, label={}]", quote(&p.to_string())),
            Configuration::Other(p) => format!(" [style=dotted, label={}]", quote(&p.to_string())),
        };
        let _ = writeln!(
            out,
            "  {} -- {}{};",
            quote(&d.nodes[e.i]),
            quote(&d.nodes[e.j]),
            attrs
        );
    }
    out.push_str("}\n");
    out
}
