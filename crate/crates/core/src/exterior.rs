//! Exterior powers of the (3,1) space with the induced form and the Hodge
//! star, plus the plane/half-space/dihedral-angle constructions built on
//! them.
//!
//! A [`MultiVector`] is homogeneous of a single grade. Basis blades
//! `b_I = b_{i1} ^ ... ^ b_{ik}` (with `i1 < ... < ik`) are encoded as 4-bit
//! masks, bit `i-1` standing for `b_i`, and stored in lexicographic order of
//! their index tuples.
//!
//! The volume element is fixed to `omega = b1 ^ b2 ^ b3 ^ b4`, for which
//! `<omega, omega> = SIGMA = -1`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::minkowski::{self, MinkowskiVector, PointClass, CLASSIFICATION_TOL};

/// `<omega, omega>` for signature (3,1): three negative basis vectors.
pub const SIGMA: f64 = -1.0;

/// Clamping tolerance for the arccos argument of the dihedral angle.
pub const ANGLE_CLAMP_TOL: f64 = 1e-9;

const BLADES: [&[u8]; 5] = [
    &[0b0000],
    &[0b0001, 0b0010, 0b0100, 0b1000],
    &[0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100],
    &[0b0111, 0b1011, 0b1101, 0b1110],
    &[0b1111],
];

/// Basis blade masks of grade `k`, lexicographically ordered.
pub fn blades(grade: usize) -> &'static [u8] {
    BLADES[grade]
}

fn blade_index(grade: usize, mask: u8) -> usize {
    BLADES[grade]
        .iter()
        .position(|&m| m == mask)
        .expect("mask of matching grade")
}

/// Sign of `b_A ^ b_B` relative to `b_{A|B}`, or 0 if the blades share an index.
fn wedge_sign(a: u8, b: u8) -> f64 {
    if a & b != 0 {
        return 0.0;
    }
    let mut swaps = 0;
    for j in 0..4 {
        if b & (1 << j) != 0 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `<b_I, b_I>` = product of the form's diagonal over `I`.
fn metric_sign(mask: u8) -> f64 {
    if (mask & 0b1110).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A grade-`k` element of the exterior power, `k` in `0..=4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiVector {
    grade: usize,
    coeffs: [f64; 6],
}

impl MultiVector {
    pub fn new(grade: usize, coeffs: &[f64]) -> Result<Self> {
        if grade > 4 {
            return Err(Error::InvalidGrade(grade));
        }
        if coeffs.len() != BLADES[grade].len() {
            return Err(Error::InvalidGrade(grade));
        }
        if !coeffs.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("MultiVector"));
        }
        let mut c = [0.0; 6];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Self { grade, coeffs: c })
    }

    pub fn zero(grade: usize) -> Self {
        assert!(grade <= 4);
        Self {
            grade,
            coeffs: [0.0; 6],
        }
    }

    pub fn scalar(x: f64) -> Self {
        let mut m = Self::zero(0);
        m.coeffs[0] = x;
        m
    }

    /// The basis blade `b_{i1} ^ ... ^ b_{ik}` for strictly increasing 1-based indices.
    pub fn blade(indices: &[usize]) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]) && indices.iter().all(|i| (1..=4).contains(i)),
            "blade indices must be strictly increasing in 1..=4"
        );
        let mask = indices.iter().fold(0u8, |m, i| m | 1 << (i - 1));
        Self::from_mask(mask)
    }

    fn from_mask(mask: u8) -> Self {
        let grade = mask.count_ones() as usize;
        let mut m = Self::zero(grade);
        m.coeffs[blade_index(grade, mask)] = 1.0;
        m
    }

    pub fn from_vector(v: &MinkowskiVector) -> Self {
        let mut m = Self::zero(1);
        m.coeffs[..4].copy_from_slice(&v.components());
        m
    }

    /// The grade-1 part as a vector.
    pub fn to_vector(&self) -> Option<MinkowskiVector> {
        (self.grade == 1).then(|| {
            MinkowskiVector::new([self.coeffs[0], self.coeffs[1], self.coeffs[2], self.coeffs[3]])
                .expect("finite by construction")
        })
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..BLADES[self.grade].len()]
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn terms(&self) -> impl Iterator<Item = (u8, f64)> + '_ {
        BLADES[self.grade].iter().copied().zip(self.coeffs().iter().copied())
    }
}

impl Add for MultiVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.grade, rhs.grade, "adding multivectors of different grades");
        Self {
            grade: self.grade,
            coeffs: std::array::from_fn(|i| self.coeffs[i] + rhs.coeffs[i]),
        }
    }
}

impl Sub for MultiVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for MultiVector {
    type Output = Self;
    fn neg(self) -> Self {
        -1.0 * self
    }
}

impl Mul<MultiVector> for f64 {
    type Output = MultiVector;
    fn mul(self, rhs: MultiVector) -> MultiVector {
        MultiVector {
            grade: rhs.grade,
            coeffs: rhs.coeffs.map(|x| self * x),
        }
    }
}

/// The fixed unit volume element `omega = b1 ^ b2 ^ b3 ^ b4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeElement(MultiVector);

impl VolumeElement {
    pub fn standard() -> Self {
        Self(MultiVector::blade(&[1, 2, 3, 4]))
    }

    pub fn as_multivector(&self) -> &MultiVector {
        &self.0
    }
}

pub fn volume_element() -> MultiVector {
    *VolumeElement::standard().as_multivector()
}

pub fn wedge(a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
    let grade = a.grade + b.grade;
    if grade > 4 {
        return Err(Error::GradeOverflow(a.grade, b.grade));
    }
    let mut out = MultiVector::zero(grade);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let sign = wedge_sign(ma, mb);
            if sign != 0.0 {
                out.coeffs[blade_index(grade, ma | mb)] += sign * ca * cb;
            }
        }
    }
    Ok(out)
}

/// `v1 ^ v2 ^ ... ^ vk`.
pub fn wedge_vectors(vs: &[MinkowskiVector]) -> Result<MultiVector> {
    vs.iter().try_fold(MultiVector::scalar(1.0), |acc, v| {
        wedge(&acc, &MultiVector::from_vector(v))
    })
}

/// Bilinear extension of `<v1^..^vk, w1^..^wk> = det <vi, wj>`.
pub fn induced_inner(a: &MultiVector, b: &MultiVector) -> Result<f64> {
    if a.grade != b.grade {
        return Err(Error::GradeMismatch(a.grade, b.grade));
    }
    Ok(a.terms()
        .zip(b.coeffs().iter())
        .map(|((mask, ca), cb)| metric_sign(mask) * ca * cb)
        .sum())
}

/// The Hodge star for `omega = b1^b2^b3^b4`, characterised by
/// `x ^ *a = <x, a> omega` for every `x` of the grade of `a`.
pub fn hodge_star(a: &MultiVector) -> MultiVector {
    let grade = 4 - a.grade;
    let mut out = MultiVector::zero(grade);
    for (mask, c) in a.terms() {
        let comp = 0b1111 ^ mask;
        out.coeffs[blade_index(grade, comp)] += wedge_sign(mask, comp) * metric_sign(mask) * c;
    }
    out
}

/// Polar point `*(v1 ^ v2 ^ v3)` of the plane spanned by three vectors.
pub fn polar_point(
    v1: &MinkowskiVector,
    v2: &MinkowskiVector,
    v3: &MinkowskiVector,
) -> Result<MinkowskiVector> {
    let blade = wedge_vectors(&[*v1, *v2, *v3])?;
    let scale = v1.euclidean_norm() * v2.euclidean_norm() * v3.euclidean_norm();
    if blade.coeff_norm() <= 1e-12 * scale {
        return Err(Error::DegenerateSpan);
    }
    Ok(hodge_star(&blade).to_vector().expect("grade 1"))
}

/// Whether the normal `<-, p> u` at a point `p` of the plane polar to `u`
/// points into the half-space containing `v`: `<u,v><v,p> < 0`.
pub fn points_toward(u: &MinkowskiVector, p: &MinkowskiVector, v: &MinkowskiVector) -> Result<bool> {
    let tol = CLASSIFICATION_TOL;
    if minkowski::classify(u, tol)? != PointClass::Negative {
        return Err(Error::NotPolarPoint);
    }
    if minkowski::classify(p, tol)? != PointClass::Positive {
        return Err(Error::NotHyperbolicPoint);
    }
    if minkowski::inner(u, p).abs() > tol * u.euclidean_norm() * p.euclidean_norm() {
        return Err(Error::PointOffPlane);
    }
    if minkowski::classify(v, tol)? == PointClass::Negative {
        return Err(Error::NotHyperbolicPoint);
    }
    let uv = minkowski::inner(u, v);
    if uv.abs() <= tol * u.euclidean_norm() * v.euclidean_norm() {
        return Err(Error::PointOnPlane);
    }
    Ok(uv * minkowski::inner(v, p) < 0.0)
}

/// Gram matrix `[<vi, vj>]` of four vectors.
pub fn gram_matrix(vs: &[MinkowskiVector; 4]) -> [[f64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| minkowski::inner(&vs[i], &vs[j])))
}

/// Dihedral angle at the edge `(v1, v2)` from a Gram matrix with positive
/// off-diagonal entries:
/// `arccos((g13 g24 + g14 g23 - g12 g34) / (2 sqrt(g23 g31 g24 g41)))`.
pub fn dihedral_angle_from_gram(g: &[[f64; 4]; 4], tol: f64) -> Result<f64> {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if !(g[i][j] > 0.0) {
                return Err(Error::NonPositiveGram(i + 1, j + 1));
            }
        }
    }
    let num = g[0][2] * g[1][3] + g[0][3] * g[1][2] - g[0][1] * g[2][3];
    let den = 2.0 * (g[1][2] * g[2][0] * g[1][3] * g[3][0]).sqrt();
    clamped_acos(num / den, tol)
}

pub(crate) fn clamped_acos(x: f64, tol: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 + tol {
        return Err(Error::DomainError {
            what: "arccos",
            value: x,
        });
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

fn check_ideal_distinct(vs: &[MinkowskiVector; 4]) -> Result<()> {
    for (i, v) in vs.iter().enumerate() {
        if v.is_zero() || minkowski::classify(v, CLASSIFICATION_TOL)? != PointClass::Null {
            return Err(Error::NotIdeal(i + 1));
        }
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            if minkowski::projectively_equal(&vs[i], &vs[j], CLASSIFICATION_TOL) {
                return Err(Error::CoincidentVertices(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Dihedral angle in `[0, pi]` between the half-plane of `(v1,v2,v3)`
/// containing `v3` and the half-plane of `(v1,v2,v4)` containing `v4`,
/// along the geodesic `(v1, v2)`.
///
/// The four ideal points must be pairwise distinct and carry representatives
/// with `<vi, vj> > 0` for `i != j` (see `tetra::sign_normalize`). Coplanar
/// configurations give 0 (v3, v4 on the same side) or pi.
pub fn dihedral_angle(
    v1: &MinkowskiVector,
    v2: &MinkowskiVector,
    v3: &MinkowskiVector,
    v4: &MinkowskiVector,
    tol: f64,
) -> Result<f64> {
    let vs = [*v1, *v2, *v3, *v4];
    check_ideal_distinct(&vs)?;
    dihedral_angle_from_gram(&gram_matrix(&vs), tol)
}

/// The same angle computed through the polar points
/// `u1 = *(v1^v2^v3)`, `u2 = *(v1^v2^v4)`:
/// `cos = -<u1,u2> / sqrt(<u1,u1> <u2,u2>)`.
///
/// Requires the same sign-normalized representatives as [`dihedral_angle`];
/// the planes must be non-degenerate.
pub fn dihedral_angle_via_polars(
    v1: &MinkowskiVector,
    v2: &MinkowskiVector,
    v3: &MinkowskiVector,
    v4: &MinkowskiVector,
    tol: f64,
) -> Result<f64> {
    let vs = [*v1, *v2, *v3, *v4];
    check_ideal_distinct(&vs)?;
    let g = gram_matrix(&vs);
    for i in 0..4 {
        for j in (i + 1)..4 {
            if !(g[i][j] > 0.0) {
                return Err(Error::NonPositiveGram(i + 1, j + 1));
            }
        }
    }
    let u1 = polar_point(v1, v2, v3)?;
    let u2 = polar_point(v1, v2, v4)?;
    let cos = -minkowski::inner(&u1, &u2)
        / (minkowski::inner(&u1, &u1) * minkowski::inner(&u2, &u2)).sqrt();
    clamped_acos(cos, tol)
}
