//! Labelled ideal tetrahedra and their doubly stochastic Gram coordinates.
//!
//! Every admissible labelled ideal tetrahedron has exactly one doubly
//! stochastic Gram matrix, of the form
//!
//! ```text
//!     | 0 r s t |
//!     | r 0 t s |
//!     | s t 0 r |
//!     | t s r 0 |
//! ```
//!
//! with `(r, s, t)` in the triangle `r + s + t = 1`, `r <= s + t`,
//! `s <= t + r`, `t <= r + s`. Edge `(1,2)` and its opposite `(3,4)` carry
//! `r`, edges `(1,3)`/`(2,4)` carry `s` and edges `(1,4)`/`(2,3)` carry `t`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exterior::{self, ANGLE_CLAMP_TOL};
use crate::minkowski::{self, MinkowskiVector, PointClass, CLASSIFICATION_TOL};

/// Tolerance on coordinate constraints (sum, triangle inequalities, charts).
pub const COORD_TOL: f64 = 1e-12;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `(r, s, t)` in the triangle of labelled ideal tetrahedra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleCoords {
    r: f64,
    s: f64,
    t: f64,
}

impl TriangleCoords {
    pub fn new(r: f64, s: f64, t: f64) -> Result<Self> {
        if !(r.is_finite() && s.is_finite() && t.is_finite()) {
            return Err(Error::NonFinite("TriangleCoords"));
        }
        if (r + s + t - 1.0).abs() > COORD_TOL {
            return Err(Error::OutOfChart("r + s + t must equal 1"));
        }
        if r.min(s).min(t) < -COORD_TOL {
            return Err(Error::OutOfChart("r, s, t must be non-negative"));
        }
        let slack = (s + t - r).min(t + r - s).min(r + s - t);
        if slack < -COORD_TOL {
            return Err(Error::OutOfChart("r, s, t must satisfy the triangle inequalities"));
        }
        Ok(Self {
            r: r.max(0.0),
            s: s.max(0.0),
            t: t.max(0.0),
        })
    }

    /// The regular tetrahedron `(1/3, 1/3, 1/3)`.
    pub fn regular() -> Self {
        Self {
            r: 1.0 / 3.0,
            s: 1.0 / 3.0,
            t: 1.0 / 3.0,
        }
    }

    pub(crate) fn from_raw(r: f64, s: f64, t: f64) -> Self {
        Self { r, s, t }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.r, self.s, self.t]
    }

    /// One of `(0,1/2,1/2)`, `(1/2,0,1/2)`, `(1/2,1/2,0)`.
    pub fn is_vertex(&self) -> bool {
        self.r.min(self.s).min(self.t) <= COORD_TOL
    }

    /// On the boundary of the triangle: a degenerate (flat) tetrahedron.
    pub fn is_degenerate(&self) -> bool {
        let [r, s, t] = self.as_array();
        (s + t - r).min(t + r - s).min(r + s - t) <= COORD_TOL
    }

    /// The doubly stochastic Gram matrix.
    pub fn gram_matrix(&self) -> [[f64; 4]; 4] {
        let (r, s, t) = (self.r, self.s, self.t);
        [
            [0.0, r, s, t],
            [r, 0.0, t, s],
            [s, t, 0.0, r],
            [t, s, r, 0.0],
        ]
    }

    /// Coordinates of the tetrahedron relabelled by `p` (vertex `i` of the
    /// result is vertex `p(i)` of the original).
    pub fn relabelled(&self, p: &Permutation) -> Self {
        let c = self.as_array();
        let m = p.mapping();
        Self {
            r: c[edge_class(m[0], m[1])],
            s: c[edge_class(m[0], m[2])],
            t: c[edge_class(m[0], m[3])],
        }
    }
}

/// Which coordinate (0 = r, 1 = s, 2 = t) sits on edge `(i, j)`, 0-based.
pub fn edge_class(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 1) | (2, 3) => 0,
        (0, 2) | (1, 3) => 1,
        (0, 3) | (1, 2) => 2,
        _ => panic!("edge ({i}, {j}) is not an edge of a tetrahedron"),
    }
}

/// Centered planar chart `(c, d)` of the triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneCoords {
    c: f64,
    d: f64,
}

impl PlaneCoords {
    pub fn new(c: f64, d: f64) -> Result<Self> {
        if !(c.is_finite() && d.is_finite()) {
            return Err(Error::NonFinite("PlaneCoords"));
        }
        let inside = d >= -SQRT3 / 6.0 - COORD_TOL
            && d <= -SQRT3 * c + SQRT3 / 3.0 + COORD_TOL
            && d <= SQRT3 * c + SQRT3 / 3.0 + COORD_TOL;
        if !inside {
            return Err(Error::OutOfChart("(c, d) must lie in the triangle d >= -sqrt(3)/6, d <= sqrt(3)/3 - sqrt(3)|c|"));
        }
        Ok(Self { c, d })
    }

    pub(crate) fn from_raw(c: f64, d: f64) -> Self {
        Self { c, d }
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }
}

pub fn delta_to_plane(coords: &TriangleCoords) -> PlaneCoords {
    PlaneCoords {
        c: coords.t - coords.s,
        d: (1.0 - 3.0 * coords.r) / SQRT3,
    }
}

pub fn plane_to_delta(pc: &PlaneCoords) -> TriangleCoords {
    let (c, d) = (pc.c, pc.d);
    let r = (1.0 - SQRT3 * d) / 3.0;
    let s = (2.0 - 3.0 * c + SQRT3 * d) / 6.0;
    let t = (2.0 + 3.0 * c + SQRT3 * d) / 6.0;
    // the chart inequalities are exactly r, s, t >= 0 up to rounding
    TriangleCoords {
        r: r.max(0.0),
        s: s.max(0.0),
        t: t.max(0.0),
    }
}

/// Representative of the S3-orbit with `r <= s <= t`.
pub fn canonicalize(coords: &TriangleCoords) -> TriangleCoords {
    let mut c = coords.as_array();
    c.sort_by(f64::total_cmp);
    TriangleCoords {
        r: c[0],
        s: c[1],
        t: c[2],
    }
}

/// Dihedral angles `(theta1, theta2, theta3)` at the edge classes of `r`, `s`, `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DihedralAngles {
    theta: [f64; 3],
}

impl DihedralAngles {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Result<Self> {
        let theta = [theta1, theta2, theta3];
        let valid = theta.iter().all(|x| (0.0..=PI).contains(x))
            && (theta1 + theta2 + theta3 - PI).abs() <= 1e-10;
        if !valid {
            return Err(Error::DomainError {
                what: "dihedral angles (each in [0, pi], sum pi)",
                value: theta1 + theta2 + theta3,
            });
        }
        Ok(Self { theta })
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.theta
    }

    /// Angle at edge `(i, j)`, 1-based vertex labels.
    pub fn at_edge(&self, i: usize, j: usize) -> f64 {
        self.theta[edge_class(i - 1, j - 1)]
    }
}

/// Interior angles of the Euclidean triangle with sides `r, s, t`, which
/// are the dihedral angles of the tetrahedron.
pub fn angles_from_coords(coords: &TriangleCoords) -> Result<DihedralAngles> {
    if coords.is_vertex() {
        return Err(Error::DeltaVertex);
    }
    let (r, s, t) = (coords.r, coords.s, coords.t);
    let (r2, s2, t2) = (r * r, s * s, t * t);
    let theta = [
        exterior::clamped_acos((-r2 + s2 + t2) / (2.0 * s * t), ANGLE_CLAMP_TOL)?,
        exterior::clamped_acos((r2 - s2 + t2) / (2.0 * r * t), ANGLE_CLAMP_TOL)?,
        exterior::clamped_acos((r2 + s2 - t2) / (2.0 * r * s), ANGLE_CLAMP_TOL)?,
    ];
    Ok(DihedralAngles { theta })
}

/// A permutation of the four vertex labels, in one-line notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Permutation([usize; 4]);

impl Permutation {
    /// `images[i]` is the (1-based) label sent to position `i + 1`.
    pub fn new(images: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if !(1..=4).contains(&x) || seen[x - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x - 1] = true;
        }
        Ok(Self(images.map(|x| x - 1)))
    }

    pub fn identity() -> Self {
        Self([0, 1, 2, 3])
    }

    /// 0-based one-line notation.
    pub fn mapping(&self) -> [usize; 4] {
        self.0
    }

    /// Whether the permutation is in the Klein four-group
    /// `{id, (12)(34), (13)(24), (14)(23)}`.
    pub fn is_klein(&self) -> bool {
        matches!(
            self.0,
            [0, 1, 2, 3] | [1, 0, 3, 2] | [2, 3, 0, 1] | [3, 2, 1, 0]
        )
    }
}

/// Four ideal points, in order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabelledTetrahedron {
    vertices: [MinkowskiVector; 4],
    tol: f64,
}

impl LabelledTetrahedron {
    pub fn new(vertices: [MinkowskiVector; 4]) -> Result<Self> {
        Self::with_tolerance(vertices, CLASSIFICATION_TOL)
    }

    /// Null classification and coincidence detection use `tol` (relative).
    pub fn with_tolerance(vertices: [MinkowskiVector; 4], tol: f64) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if v.is_zero() || minkowski::classify(v, tol)? != PointClass::Null {
                return Err(Error::NotIdeal(i + 1));
            }
        }
        Ok(Self { vertices, tol })
    }

    pub fn vertices(&self) -> &[MinkowskiVector; 4] {
        &self.vertices
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn gram_matrix(&self) -> [[f64; 4]; 4] {
        exterior::gram_matrix(&self.vertices)
    }

    fn coincidences(&self) -> [[bool; 4]; 4] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                i != j && minkowski::projectively_equal(&self.vertices[i], &self.vertices[j], self.tol)
            })
        })
    }

    /// Dihedral angle at edge `(i, j)` (1-based) through the Gram formula on
    /// sign-normalized representatives.
    pub fn dihedral_angle_at(&self, i: usize, j: usize) -> Result<f64> {
        assert!(i != j && (1..=4).contains(&i) && (1..=4).contains(&j));
        let n = sign_normalize(self)?;
        let others: Vec<usize> = (1..=4).filter(|&k| k != i && k != j).collect();
        let v = |k: usize| &n.vertices[k - 1];
        exterior::dihedral_angle(v(i), v(j), v(others[0]), v(others[1]), ANGLE_CLAMP_TOL)
    }
}

/// Flip representative signs so that every off-diagonal Gram entry is positive.
pub fn sign_normalize(tetra: &LabelledTetrahedron) -> Result<LabelledTetrahedron> {
    let eq = tetra.coincidences();
    for i in 0..4 {
        for j in (i + 1)..4 {
            if eq[i][j] {
                return Err(Error::CoincidentVertices(i + 1, j + 1));
            }
        }
    }
    let mut v = tetra.vertices;
    for i in 1..4 {
        if minkowski::inner(&v[0], &v[i]) < 0.0 {
            v[i] = -v[i];
        }
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            if !(minkowski::inner(&v[i], &v[j]) > 0.0) {
                return Err(Error::SignObstruction);
            }
        }
    }
    Ok(LabelledTetrahedron {
        vertices: v,
        tol: tetra.tol,
    })
}

/// The unique `(r, s, t)` whose doubly stochastic matrix is a Gram matrix
/// of the tetrahedron.
///
/// With positive representatives, `DGD` has the required pattern iff
/// `r : s : t = sqrt(g12 g34) : sqrt(g13 g24) : sqrt(g14 g23)`.
pub fn doubly_stochastic_coords(tetra: &LabelledTetrahedron) -> Result<TriangleCoords> {
    let eq = tetra.coincidences();
    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
        .filter(|&(i, j)| eq[i][j])
        .collect();
    match pairs.as_slice() {
        [] => {}
        [(0, 1), (2, 3)] => return Ok(TriangleCoords::from_raw(0.0, 0.5, 0.5)),
        [(0, 2), (1, 3)] => return Ok(TriangleCoords::from_raw(0.5, 0.0, 0.5)),
        [(0, 3), (1, 2)] => return Ok(TriangleCoords::from_raw(0.5, 0.5, 0.0)),
        [_] => return Err(Error::Inadmissible("exactly two vertices coincide")),
        _ => return Err(Error::Inadmissible("three or more vertices coincide")),
    }
    let g = sign_normalize(tetra)?.gram_matrix();
    let r = (g[0][1] * g[2][3]).sqrt();
    let s = (g[0][2] * g[1][3]).sqrt();
    let t = (g[0][3] * g[1][2]).sqrt();
    let sum = r + s + t;
    Ok(TriangleCoords::from_raw(r / sum, s / sum, t / sum))
}

/// Explicit vertices realising the doubly stochastic Gram matrix of `coords`:
///
/// ```text
/// v1 = b1 + b2
/// v2 = (r/2) b1 - (r/2) b2
/// v3 = (t/r + s/2) b1 + (t/r - s/2) b2 + sqrt(2st/r) b3
/// v4 = (s/r + t/2) b1 + (s/r - t/2) b2 + (-r^2+s^2+t^2)/sqrt(2rst) b3
///      + sqrt(-det G / (2rst)) b4
/// ```
pub fn synthesize(coords: &TriangleCoords) -> Result<LabelledTetrahedron> {
    if coords.is_vertex() {
        return Err(Error::DeltaVertex);
    }
    let (r, s, t) = (coords.r, coords.s, coords.t);
    if r <= 0.0 || s <= 0.0 || t <= 0.0 {
        return Err(Error::ZeroCoordinate);
    }
    let neg_det = (r + s + t) * (-r + s + t) * (r - s + t) * (r + s - t);
    let rst2 = 2.0 * r * s * t;
    let v = [
        [1.0, 1.0, 0.0, 0.0],
        [r / 2.0, -r / 2.0, 0.0, 0.0],
        [t / r + s / 2.0, t / r - s / 2.0, (2.0 * s * t / r).sqrt(), 0.0],
        [
            s / r + t / 2.0,
            s / r - t / 2.0,
            (-r * r + s * s + t * t) / rst2.sqrt(),
            (neg_det.max(0.0) / rst2).sqrt(),
        ],
    ];
    LabelledTetrahedron::new(v.map(MinkowskiVector))
}

/// Relabel: vertex `i` of the result is vertex `p(i)` of `tetra`.
pub fn permute_vertices(tetra: &LabelledTetrahedron, p: &Permutation) -> LabelledTetrahedron {
    let m = p.mapping();
    LabelledTetrahedron {
        vertices: std::array::from_fn(|i| tetra.vertices[m[i]]),
        tol: tetra.tol,
    }
}
