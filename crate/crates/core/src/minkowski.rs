//! Real 4-space with a bilinear form of signature (3,1).
//!
//! The basis `b1..b4` is orthonormal with `<b1,b1> = 1` and
//! `<b2,b2> = <b3,b3> = <b4,b4> = -1`. Points of the extended hyperbolic
//! space are handled through representatives; every projective quantity
//! below is invariant under rescaling its arguments.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Diagonal of the form in the standard basis.
pub const SIGNATURE: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Relative tolerance used to decide whether a vector is null.
pub const CLASSIFICATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiVector(pub(crate) [f64; 4]);

/// Sign class of a non-zero vector under the form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    /// `<v,v> > 0`: a point of hyperbolic space.
    Positive,
    /// `<v,v> = 0`: an ideal point on the absolute.
    Null,
    /// `<v,v> < 0`: a de Sitter point, polar to a plane.
    Negative,
}

impl MinkowskiVector {
    pub fn new(components: [f64; 4]) -> Result<Self> {
        if components.iter().all(|x| x.is_finite()) {
            Ok(Self(components))
        } else {
            Err(Error::NonFinite("MinkowskiVector"))
        }
    }

    /// The `i`-th standard basis vector, `i` in `1..=4`.
    pub fn basis(i: usize) -> Self {
        assert!((1..=4).contains(&i), "basis index {i} out of range 1..=4");
        let mut c = [0.0; 4];
        c[i - 1] = 1.0;
        Self(c)
    }

    pub fn zero() -> Self {
        Self([0.0; 4])
    }

    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    /// `<self, other>`.
    pub fn inner(&self, other: &Self) -> f64 {
        inner(self, other)
    }

    /// Squared Euclidean length of the coordinate vector.
    pub fn euclidean_norm_sq(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.euclidean_norm_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn classify(&self, tol: f64) -> Result<PointClass> {
        classify(self, tol)
    }
}

impl Add for MinkowskiVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for MinkowskiVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for MinkowskiVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl Mul<MinkowskiVector> for f64 {
    type Output = MinkowskiVector;
    fn mul(self, rhs: MinkowskiVector) -> MinkowskiVector {
        MinkowskiVector(rhs.0.map(|x| self * x))
    }
}

impl Mul<f64> for MinkowskiVector {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        rhs * self
    }
}

/// `<u,v> = u1 v1 - u2 v2 - u3 v3 - u4 v4`.
pub fn inner(u: &MinkowskiVector, v: &MinkowskiVector) -> f64 {
    u.0[0] * v.0[0] - u.0[1] * v.0[1] - u.0[2] * v.0[2] - u.0[3] * v.0[3]
}

/// Null when `|<v,v>| <= tol * |v|^2` (Euclidean norm), otherwise by sign.
pub fn classify(v: &MinkowskiVector, tol: f64) -> Result<PointClass> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let q = inner(v, v);
    Ok(if q.abs() <= tol * v.euclidean_norm_sq() {
        PointClass::Null
    } else if q > 0.0 {
        PointClass::Positive
    } else {
        PointClass::Negative
    })
}

/// The tance `<p,q><q,p> / (<p,p><q,q>)`.
pub fn tance(p: &MinkowskiVector, q: &MinkowskiVector) -> Result<f64> {
    for v in [p, q] {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        if inner(v, v).abs() <= CLASSIFICATION_TOL * v.euclidean_norm_sq() {
            return Err(Error::NullArgument);
        }
    }
    let pq = inner(p, q);
    Ok(pq * pq / (inner(p, p) * inner(q, q)))
}

/// Projective equality of two representatives: the form pairing and every
/// 2x2 minor of the coordinate pair vanish relative to `tol * |a| |b|`.
pub fn projectively_equal(a: &MinkowskiVector, b: &MinkowskiVector, tol: f64) -> bool {
    let scale = a.euclidean_norm() * b.euclidean_norm();
    if inner(a, b).abs() > tol * scale {
        return false;
    }
    (0..4).all(|i| ((i + 1)..4).all(|j| (a.0[i] * b.0[j] - a.0[j] * b.0[i]).abs() <= tol * scale))
}

/// Hyperbolic distance `arccosh(sqrt(tance(p,q)))` between positive points.
pub fn distance(p: &MinkowskiVector, q: &MinkowskiVector) -> Result<f64> {
    for v in [p, q] {
        if classify(v, CLASSIFICATION_TOL)? != PointClass::Positive {
            return Err(Error::NotHyperbolicPoint);
        }
    }
    // arccosh(sqrt(ta)) = arcsinh(sqrt(ta - 1)); the excess is formed
    // directly so that d(p, p) is exactly zero.
    let (pq, pp, qq) = (inner(p, q), inner(p, p), inner(q, q));
    let excess = (pq * pq - pp * qq) / (pp * qq);
    if excess < -CLASSIFICATION_TOL {
        return Err(Error::DomainError {
            what: "tance of hyperbolic points",
            value: 1.0 + excess,
        });
    }
    Ok(excess.max(0.0).sqrt().asinh())
}
