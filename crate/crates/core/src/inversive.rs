//! The dictionary between cooriented spheres in `ℝⁿ ∪ {∞}` and unit vectors
//! of the standard form `Q`.
//!
//! A ball with center `z` and signed radius `r` maps to `(1/r, z/r, 1/r̂)` with
//! `1/r̂ = (|z|² − r²)/r`. A halfspace `{x : n·x > h/2}` with unit normal `n`
//! maps to `(0, n, h)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::forms::QuadraticForm;
use crate::linalg::{dot, vec_neg, Vector};
use crate::radical::RadicalNumber;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InversiveError {
    #[error("coradius undefined: the sphere passes through the origin")]
    CoradiusUndefined,
    #[error("ball radius must be nonzero")]
    ZeroRadius,
    #[error("halfspace normal must have unit length, |n|² = {0}")]
    NonUnitNormal(RadicalNumber),
    #[error("vector is not Q-unit: Q(v) = {0}")]
    NotUnit(RadicalNumber),
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the two vectors describe the same sphere up to orientation")]
    SameSphere,
}

/// A cooriented round sphere or hyperplane in `ℝⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sphere {
    /// Positive radius means the normal points out of the ball.
    Ball {
        center: Vector,
        radius: RadicalNumber,
    },
    /// The halfspace `{x : normal·x > half_offset/2}`; `half_offset` is `1/r̂`.
    Halfspace {
        normal: Vector,
        half_offset: RadicalNumber,
    },
}

impl Sphere {
    pub fn ball(center: Vector, radius: RadicalNumber) -> Self {
        Sphere::Ball { center, radius }
    }

    pub fn halfspace(normal: Vector, half_offset: RadicalNumber) -> Self {
        Sphere::Halfspace {
            normal,
            half_offset,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Sphere::Ball { center, .. } => center.len(),
            Sphere::Halfspace { normal, .. } => normal.len(),
        }
    }

    pub fn validate(&self) -> Result<(), InversiveError> {
        match self {
            Sphere::Ball { radius, .. } if radius.is_zero() => Err(InversiveError::ZeroRadius),
            Sphere::Halfspace { normal, .. } => {
                let nn = dot(normal, normal);
                if nn.is_one() {
                    Ok(())
                } else {
                    Err(InversiveError::NonUnitNormal(nn))
                }
            }
            _ => Ok(()),
        }
    }

    /// The same set with the opposite coorientation.
    pub fn flipped(&self) -> Self {
        match self {
            Sphere::Ball { center, radius } => Sphere::ball(center.clone(), -radius),
            Sphere::Halfspace {
                normal,
                half_offset,
            } => Sphere::halfspace(vec_neg(normal), -half_offset),
        }
    }
}

/// `r̂ = r / (|z|² − r²)`.
pub fn coradius(z: &[RadicalNumber], r: &RadicalNumber) -> Result<RadicalNumber, InversiveError> {
    let den = &dot(z, z) - &(r * r);
    if den.is_zero() {
        return Err(InversiveError::CoradiusUndefined);
    }
    Ok(r / &den)
}

/// `Q(a, b)` for the standard form, without building its matrix.
pub fn q_inner(a: &[RadicalNumber], b: &[RadicalNumber]) -> RadicalNumber {
    let d = a.len();
    debug_assert_eq!(d, b.len());
    let mut acc = dot(&a[1..d - 1], &b[1..d - 1]);
    let corner = &(&a[0] * &b[d - 1]) + &(&a[d - 1] * &b[0]);
    if !corner.is_zero() {
        acc -= &corner.scale(&Rational::new(1, 2));
    }
    acc
}

/// A unit vector of `Q`, i.e. a cooriented sphere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vector", into = "Vector")]
pub struct InversiveVector {
    coords: Vector,
}

impl TryFrom<Vector> for InversiveVector {
    type Error = InversiveError;
    fn try_from(v: Vector) -> Result<Self, InversiveError> {
        InversiveVector::new(v)
    }
}

impl From<InversiveVector> for Vector {
    fn from(v: InversiveVector) -> Vector {
        v.coords
    }
}

impl InversiveVector {
    pub fn new(coords: Vector) -> Result<Self, InversiveError> {
        if coords.len() < 3 {
            return Err(InversiveError::DimensionMismatch {
                expected: 3,
                found: coords.len(),
            });
        }
        let q = q_inner(&coords, &coords);
        if !q.is_one() {
            return Err(InversiveError::NotUnit(q));
        }
        Ok(InversiveVector { coords })
    }

    /// For vectors already known to be unit (images of unit vectors under isometries).
    pub(crate) fn new_unchecked(coords: Vector) -> Self {
        debug_assert!(q_inner(&coords, &coords).is_one());
        InversiveVector { coords }
    }

    pub fn coords(&self) -> &[RadicalNumber] {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 2
    }

    /// The first coordinate, `1/r` (zero for halfspaces).
    pub fn bend(&self) -> &RadicalNumber {
        &self.coords[0]
    }

    /// The last coordinate, `1/r̂`.
    pub fn cobend(&self) -> &RadicalNumber {
        &self.coords[self.coords.len() - 1]
    }

    pub fn inner(&self, other: &InversiveVector) -> RadicalNumber {
        q_inner(&self.coords, &other.coords)
    }

    pub fn negated(&self) -> Self {
        InversiveVector {
            coords: vec_neg(&self.coords),
        }
    }

    /// Representative of `±v` whose first nonzero coordinate is positive.
    pub fn unoriented(&self) -> Self {
        let first = self.coords.iter().find(|x| !x.is_zero());
        match first {
            Some(x) if x.signum() < 0 => self.negated(),
            _ => self.clone(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(RadicalNumber::is_rational)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(RadicalNumber::to_f64).collect()
    }
}

impl fmt::Debug for InversiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for InversiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn to_inversive(s: &Sphere) -> Result<InversiveVector, InversiveError> {
    s.validate()?;
    let coords = match s {
        Sphere::Ball { center, radius } => {
            let inv = radius.invert().expect("validated nonzero radius");
            let mut v = Vec::with_capacity(center.len() + 2);
            v.push(inv.clone());
            v.extend(center.iter().map(|x| x * &inv));
            let cob = &(&dot(center, center) - &(radius * radius)) * &inv;
            v.push(cob);
            v
        }
        Sphere::Halfspace {
            normal,
            half_offset,
        } => {
            let mut v = Vec::with_capacity(normal.len() + 2);
            v.push(RadicalNumber::zero());
            v.extend(normal.iter().cloned());
            v.push(half_offset.clone());
            v
        }
    };
    Ok(InversiveVector::new_unchecked(coords))
}

pub fn from_inversive(v: &[RadicalNumber]) -> Result<Sphere, InversiveError> {
    let v = InversiveVector::new(v.to_vec())?;
    let c = v.coords();
    let d = c.len();
    if c[0].is_zero() {
        return Ok(Sphere::halfspace(c[1..d - 1].to_vec(), c[d - 1].clone()));
    }
    let r = c[0].invert().expect("nonzero bend");
    Ok(Sphere::ball(c[1..d - 1].iter().map(|x| x * &r).collect(), r))
}

/// The bend `1/r` of a unit vector.
pub fn bend(v: &InversiveVector) -> RadicalNumber {
    v.bend().clone()
}

/// How two cooriented spheres meet, read from `p = Q(v, w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Configuration {
    Orthogonal,
    /// Dihedral angle `π/m` for `m ∈ {3, 4, 5, 6}`.
    Angle(u32),
    Tangent,
    /// `p < −1`; carries `p`.
    Disjoint(RadicalNumber),
    /// Anything else (other angles, nested spheres); carries `p`.
    Other(RadicalNumber),
}

impl Configuration {
    /// True for pairs allowed in a packing.
    pub fn is_packing_pair(&self) -> bool {
        matches!(self, Configuration::Tangent | Configuration::Disjoint(_))
    }

    /// The `m` of the dihedral angle `π/m`, for intersecting pairs.
    pub fn angle_denominator(&self) -> Option<u32> {
        match self {
            Configuration::Orthogonal => Some(2),
            Configuration::Angle(m) => Some(*m),
            _ => None,
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Configuration::Orthogonal => write!(f, "orthogonal"),
            Configuration::Angle(m) => write!(f, "angle pi/{m}"),
            Configuration::Tangent => write!(f, "tangent"),
            Configuration::Disjoint(p) => write!(f, "disjoint ({p})"),
            Configuration::Other(p) => write!(f, "other ({p})"),
        }
    }
}

/// `−cos(π/m)` for `m = 3, 4, 5, 6`.
pub fn negative_cosines() -> [(u32, RadicalNumber); 4] {
    let r = |s: &str| s.parse::<RadicalNumber>().expect("literal");
    [
        (3, r("-1/2")),
        (4, r("-1/2*sqrt(2)")),
        (5, r("-1/4-1/4*sqrt(5)")),
        (6, r("-1/2*sqrt(3)")),
    ]
}

pub fn classify_inner(p: &RadicalNumber) -> Configuration {
    if p.is_zero() {
        return Configuration::Orthogonal;
    }
    if let Some(q) = p.as_rational() {
        if q == Rational::from_integer(-1) {
            return Configuration::Tangent;
        }
        if q == Rational::new(-1, 2) {
            return Configuration::Angle(3);
        }
        return if q < Rational::from_integer(-1) {
            Configuration::Disjoint(p.clone())
        } else {
            Configuration::Other(p.clone())
        };
    }
    for (m, c) in negative_cosines().iter().skip(1) {
        if p == c {
            return Configuration::Angle(*m);
        }
    }
    if (p + &RadicalNumber::one()).signum() < 0 {
        Configuration::Disjoint(p.clone())
    } else {
        Configuration::Other(p.clone())
    }
}

pub fn classify_pair(v: &InversiveVector, w: &InversiveVector) -> Result<Configuration, InversiveError> {
    if v == w || *v == w.negated() {
        return Err(InversiveError::SameSphere);
    }
    Ok(classify_inner(&v.inner(w)))
}

/// Image of `s` under inversion in the sphere `mirror` (reflection for a
/// halfspace mirror), with the coorientation carried along.
pub fn euclidean_invert(s: &Sphere, mirror: &Sphere) -> Result<Sphere, InversiveError> {
    s.validate()?;
    mirror.validate()?;
    if s.n() != mirror.n() {
        return Err(InversiveError::DimensionMismatch {
            expected: mirror.n(),
            found: s.n(),
        });
    }
    let two = RadicalNumber::from_integer(2);
    Ok(match (mirror, s) {
        (Sphere::Ball { center: c, radius: rho }, Sphere::Ball { center: z, radius: r }) => {
            let rho2 = rho * rho;
            let zc: Vector = z.iter().zip(c).map(|(a, b)| a - b).collect();
            let dd = &dot(&zc, &zc) - &(r * r);
            if dd.is_zero() {
                // s passes through the center: its image is a hyperplane.
                let rinv = r.invert().expect("nonzero");
                let normal: Vector = zc.iter().map(|x| x * &rinv).collect();
                let dist = &dot(&normal, c) + &(&rho2 / &(&two * r));
                Sphere::halfspace(normal, &two * &dist)
            } else {
                let k = &rho2 / &dd;
                Sphere::ball(
                    c.iter().zip(&zc).map(|(a, b)| a + &(&k * b)).collect(),
                    &k * r,
                )
            }
        }
        (
            Sphere::Ball { center: c, radius: rho },
            Sphere::Halfspace {
                normal,
                half_offset,
            },
        ) => {
            let dist = &half_offset.scale(&Rational::new(1, 2)) - &dot(normal, c);
            if dist.is_zero() {
                s.clone()
            } else {
                let r2 = &(rho * rho) / &(&two * &dist);
                Sphere::ball(
                    c.iter().zip(normal).map(|(a, b)| a + &(&r2 * b)).collect(),
                    r2,
                )
            }
        }
        (
            Sphere::Halfspace {
                normal: m,
                half_offset: h,
            },
            Sphere::Ball { center: z, radius: r },
        ) => {
            let d = h.scale(&Rational::new(1, 2));
            let t = &two * &(&dot(m, z) - &d);
            Sphere::ball(
                z.iter().zip(m).map(|(a, b)| a - &(&t * b)).collect(),
                r.clone(),
            )
        }
        (
            Sphere::Halfspace {
                normal: m,
                half_offset: h,
            },
            Sphere::Halfspace {
                normal: n2,
                half_offset: h2,
            },
        ) => {
            let mn = dot(m, n2);
            let tm = &two * &mn;
            Sphere::halfspace(
                n2.iter().zip(m).map(|(a, b)| a - &(&tm * b)).collect(),
                h2 - &(&tm * h),
            )
        }
    })
}

/// Builds unit vectors from a literal table; panics on malformed input.
pub fn unit_vectors(rows: &[&[&str]]) -> Vec<InversiveVector> {
    rows.iter()
        .map(|r| {
            InversiveVector::new(r.iter().map(|x| x.parse().expect("number literal")).collect())
                .expect("unit vector")
        })
        .collect()
}

/// Checks `bend(v) = 𝐛ᵗ·Q·v` against the general form machinery.
pub fn bend_via_covector(v: &InversiveVector) -> RadicalNumber {
    let b = crate::forms::Covector::bend(v.n());
    QuadraticForm::standard(v.n())
        .inner(&b.coords, v.coords())
        .expect("dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radical::rn;
    use proptest::prelude::*;

    fn rv(s: &[&str]) -> Vector {
        s.iter().map(|x| rn(x)).collect()
    }

    #[test]
    fn coradius_examples() {
        assert_eq!(coradius(&rv(&["0", "0"]), &rn("1")).unwrap(), rn("-1"));
        assert_eq!(coradius(&rv(&["3", "4"]), &rn("2")).unwrap(), rn("2/21"));
        assert_eq!(
            coradius(&rv(&["1", "0"]), &rn("1")),
            Err(InversiveError::CoradiusUndefined)
        );
    }

    #[test]
    fn dictionary_examples() {
        let unit = Sphere::ball(rv(&["0", "0"]), rn("1"));
        assert_eq!(to_inversive(&unit).unwrap().coords(), rv(&["1", "0", "0", "-1"]).as_slice());
        let v4 = to_inversive(&Sphere::halfspace(rv(&["0", "1"]), rn("sqrt(6)"))).unwrap();
        assert_eq!(v4.coords(), rv(&["0", "0", "1", "sqrt(6)"]).as_slice());
        let v1 = to_inversive(&Sphere::halfspace(rv(&["-1", "0"]), rn("0"))).unwrap();
        assert_eq!(v1.coords(), rv(&["0", "-1", "0", "0"]).as_slice());

        assert_eq!(from_inversive(&rv(&["1", "0", "0", "-1"])).unwrap(), unit);
        assert_eq!(
            from_inversive(&rv(&["0", "0", "1", "sqrt(6)"])).unwrap(),
            Sphere::halfspace(rv(&["0", "1"]), rn("sqrt(6)"))
        );
        assert_eq!(
            from_inversive(&rv(&["0", "1", "0", "1"])).unwrap(),
            Sphere::halfspace(rv(&["1", "0"]), rn("1"))
        );
        assert!(matches!(
            from_inversive(&rv(&["1", "1", "0", "0"])),
            Ok(Sphere::Ball { .. })
        ));
        assert!(matches!(
            from_inversive(&rv(&["1", "1", "1", "0"])),
            Err(InversiveError::NotUnit(_))
        ));
    }

    #[test]
    fn bends() {
        let v = InversiveVector::new(rv(&["sqrt(2)", "0", "sqrt(3)", "sqrt(2)"])).unwrap();
        assert_eq!(bend(&v), rn("sqrt(2)"));
        assert_eq!(bend_via_covector(&v), rn("sqrt(2)"));
        let h = InversiveVector::new(rv(&["0", "0", "1", "sqrt(6)"])).unwrap();
        assert!(bend(&h).is_zero());
    }

    #[test]
    fn classification_examples() {
        let vs = unit_vectors(&[
            &["0", "-1", "0", "0"],
            &["0", "1", "0", "1"],
            &["0", "0", "-1", "0"],
            &["1", "0", "0", "-1"],
            &["sqrt(2)", "0", "sqrt(3)", "sqrt(2)"],
        ]);
        assert_eq!(classify_pair(&vs[1], &vs[3]).unwrap(), Configuration::Angle(3));
        assert_eq!(classify_pair(&vs[0], &vs[1]).unwrap(), Configuration::Tangent);
        assert_eq!(
            classify_pair(&vs[2], &vs[4]).unwrap(),
            Configuration::Disjoint(rn("-sqrt(3)"))
        );
        assert_eq!(classify_pair(&vs[1], &vs[1].negated()), Err(InversiveError::SameSphere));
        assert_eq!(classify_inner(&rn("-1/2*sqrt(2)")), Configuration::Angle(4));
        assert_eq!(classify_inner(&rn("-1/4-1/4*sqrt(5)")), Configuration::Angle(5));
        assert_eq!(classify_inner(&rn("-1/2*sqrt(3)")), Configuration::Angle(6));
        assert_eq!(classify_inner(&rn("1/3")), Configuration::Other(rn("1/3")));
        assert_eq!(classify_inner(&rn("3")), Configuration::Other(rn("3")));
    }

    #[test]
    fn inversion_examples() {
        let unit = Sphere::ball(rv(&["0", "0"]), rn("1"));
        let s = Sphere::ball(rv(&["3", "0"]), rn("1"));
        assert_eq!(
            euclidean_invert(&s, &unit).unwrap(),
            Sphere::ball(rv(&["3/8", "0"]), rn("1/8"))
        );
        let wall = Sphere::halfspace(rv(&["1", "0"]), rn("0"));
        let s = Sphere::ball(rv(&["1", "1"]), rn("1/2"));
        assert_eq!(
            euclidean_invert(&s, &wall).unwrap(),
            Sphere::ball(rv(&["-1", "1"]), rn("1/2"))
        );
        assert_eq!(euclidean_invert(&unit, &unit).unwrap(), unit.flipped());
        assert_eq!(euclidean_invert(&wall, &wall).unwrap(), wall.flipped());
    }

    #[test]
    fn sphere_json() {
        let s = Sphere::ball(rv(&["1/2", "0"]), rn("sqrt(2)"));
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"kind":"ball","center":["1/2","0"],"radius":"sqrt(2)"}"#);
        assert_eq!(serde_json::from_str::<Sphere>(&j).unwrap(), s);
        let h = Sphere::halfspace(rv(&["0", "1"]), rn("sqrt(6)"));
        let j = serde_json::to_string(&h).unwrap();
        assert_eq!(j, r#"{"kind":"halfspace","normal":["0","1"],"half_offset":"sqrt(6)"}"#);
        assert!(serde_json::from_str::<InversiveVector>(r#"["1","1","1","0"]"#).is_err());
    }

    fn arb_rational() -> impl Strategy<Value = RadicalNumber> {
        (-12i64..12, 1i64..5).prop_map(|(n, d)| RadicalNumber::from_rational(Rational::new(n, d)))
    }

    fn arb_sphere() -> impl Strategy<Value = Sphere> {
        let normals = prop_oneof![
            Just(rv(&["1", "0"])),
            Just(rv(&["0", "-1"])),
            Just(rv(&["3/5", "4/5"])),
            Just(rv(&["-5/13", "12/13"])),
            Just(rv(&["1/2*sqrt(2)", "-1/2*sqrt(2)"])),
        ];
        prop_oneof![
            (arb_rational(), arb_rational(), arb_rational())
                .prop_filter("nonzero radius", |(_, _, r)| !r.is_zero())
                .prop_map(|(x, y, r)| Sphere::ball(vec![x, y], r)),
            (normals, arb_rational()).prop_map(|(n, h)| Sphere::halfspace(n, h)),
        ]
    }

    proptest! {
        #[test]
        fn round_trip(s in arb_sphere()) {
            let v = to_inversive(&s).unwrap();
            prop_assert!(v.inner(&v).is_one());
            prop_assert_eq!(from_inversive(v.coords()).unwrap(), s);
            prop_assert_eq!(bend(&v), bend_via_covector(&v));
        }

        #[test]
        fn inversion_is_an_involution(s in arb_sphere(), m in arb_sphere()) {
            let once = euclidean_invert(&s, &m).unwrap();
            prop_assert_eq!(euclidean_invert(&once, &m).unwrap(), s);
        }
    }
}
