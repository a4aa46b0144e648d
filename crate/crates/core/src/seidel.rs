//! Determinant/permanent coordinates `(α, ω)` on the moduli space of
//! unlabelled ideal tetrahedra.
//!
//! For the doubly stochastic Gram matrix `G` of `(r, s, t)`,
//! `α = det G = -(r+s+t)(-r+s+t)(r-s+t)(r+s-t)` and
//! `ω = sqrt(per G) = r² + s² + t²`. The image of the triangle is the
//! curved region `S` bounded by the curves `f1`, `f2` and `α = 0`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lobachevsky::lobachevsky;
use crate::tetra::{self, DihedralAngles, PlaneCoords, TriangleCoords};

/// Boundary tolerance of the region `S`.
pub const REGION_TOL: f64 = 1e-12;

/// Distance to `(-1/27, 1/3)` below which [`invert`] returns `(0, 0)`.
pub const REGULAR_POINT_RADIUS: f64 = 1e-10;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `(α, ω)`: determinant and square root of the permanent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeidelCoords {
    alpha: f64,
    omega: f64,
}

impl SeidelCoords {
    /// Accepts points of the bounding box `[-1/27, 0] x [1/3, 1/2]`;
    /// use [`region_contains`] for membership in `S`.
    pub fn new(alpha: f64, omega: f64) -> Result<Self> {
        if !(alpha.is_finite() && omega.is_finite()) {
            return Err(Error::NonFinite("SeidelCoords"));
        }
        let in_box = (-1.0 / 27.0 - REGION_TOL..=REGION_TOL).contains(&alpha)
            && (1.0 / 3.0 - REGION_TOL..=0.5 + REGION_TOL).contains(&omega);
        if !in_box {
            return Err(Error::OutsideRegion { alpha, omega });
        }
        Ok(Self { alpha, omega })
    }

    /// The regular tetrahedron.
    pub fn regular() -> Self {
        Self {
            alpha: -1.0 / 27.0,
            omega: 1.0 / 3.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// The boundary curves of `S`:
/// `f1(y) = -(2u^{3/2} - 3u + 1)/27` on `[1/3, 1/2]` and
/// `f2(y) = -(-2u^{3/2} - 3u + 1)/27` on `[1/3, 3/8]`, with `u = 6y - 2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RegionS;

impl RegionS {
    pub const REGULAR_CORNER: (f64, f64) = (-1.0 / 27.0, 1.0 / 3.0);
    pub const ISOSCELES_CORNER: (f64, f64) = (0.0, 0.375);
    pub const DEGENERATE_CORNER: (f64, f64) = (0.0, 0.5);

    pub fn f1(&self, y: f64) -> f64 {
        let u = (6.0 * y - 2.0).max(0.0);
        -(2.0 * u * u.sqrt() - 3.0 * u + 1.0) / 27.0
    }

    pub fn f2(&self, y: f64) -> f64 {
        let u = (6.0 * y - 2.0).max(0.0);
        -(-2.0 * u * u.sqrt() - 3.0 * u + 1.0) / 27.0
    }

    /// `ω` with `f1(ω) = α`, for `α ∈ [-1/27, 0]`.
    pub fn f1_inverse(&self, alpha: f64) -> f64 {
        bisect_increasing(|y| self.f1(y), alpha, 1.0 / 3.0, 0.5)
    }

    /// `ω` with `f2(ω) = α`, for `α ∈ [-1/27, 0]`.
    pub fn f2_inverse(&self, alpha: f64) -> f64 {
        bisect_increasing(|y| self.f2(y), alpha, 1.0 / 3.0, 0.375)
    }

    pub fn contains(&self, alpha: f64, omega: f64) -> bool {
        if !(alpha.is_finite() && omega.is_finite()) {
            return false;
        }
        if !(1.0 / 3.0 - REGION_TOL..=0.5 + REGION_TOL).contains(&omega) {
            return false;
        }
        let y = omega.clamp(1.0 / 3.0, 0.5);
        let upper = if y <= 0.375 { self.f2(y) } else { 0.0 };
        alpha >= self.f1(y) - REGION_TOL && alpha <= upper + REGION_TOL
    }

    /// The `α`-range of `S` on the line `ω = const`.
    pub fn horizontal_chord(&self, omega: f64) -> Result<(f64, f64)> {
        if !(omega.is_finite() && (1.0 / 3.0 - REGION_TOL..=0.5 + REGION_TOL).contains(&omega)) {
            return Err(Error::EmptyIntersection { axis: "omega", value: omega });
        }
        let y = omega.clamp(1.0 / 3.0, 0.5);
        let upper = if y <= 0.375 { self.f2(y) } else { 0.0 };
        Ok((self.f1(y), upper))
    }

    /// The `ω`-range of `S` on the line `α = const`.
    pub fn vertical_chord(&self, alpha: f64) -> Result<(f64, f64)> {
        if !(alpha.is_finite() && (-1.0 / 27.0 - REGION_TOL..=REGION_TOL).contains(&alpha)) {
            return Err(Error::EmptyIntersection { axis: "alpha", value: alpha });
        }
        let x = alpha.clamp(-1.0 / 27.0, 0.0);
        Ok((self.f2_inverse(x), self.f1_inverse(x)))
    }
}

fn bisect_increasing(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    if target <= f(lo) {
        return lo;
    }
    if target >= f(hi) {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn region_boundary() -> RegionS {
    RegionS
}

pub fn region_contains(sc: &SeidelCoords) -> bool {
    RegionS.contains(sc.alpha, sc.omega)
}

/// `(α, ω)` of a point of the triangle.
pub fn forward(coords: &TriangleCoords) -> SeidelCoords {
    let [r, s, t] = coords.as_array();
    SeidelCoords {
        alpha: -(r + s + t) * (-r + s + t) * (r - s + t) * (r + s - t),
        omega: r * r + s * s + t * t,
    }
}

/// `(α, ω)` written in the planar chart:
/// `α = (2√3 d + 1)(9c² - (√3 d - 1)²)/27`, `ω = (3c² + 3d² + 2)/6`.
pub fn seidel_from_plane(pc: &PlaneCoords) -> (f64, f64) {
    let (c, d) = (pc.c(), pc.d());
    let e = SQRT3 * d - 1.0;
    (
        (2.0 * SQRT3 * d + 1.0) * (9.0 * c * c - e * e) / 27.0,
        (3.0 * c * c + 3.0 * d * d + 2.0) / 6.0,
    )
}

/// The unique preimage of `sc` in the fundamental chart (`0 <= c <= √3 d`).
pub fn invert(sc: &SeidelCoords) -> Result<PlaneCoords> {
    let (alpha, omega) = (sc.alpha, sc.omega);
    if !region_contains(sc) {
        return Err(Error::OutsideRegion { alpha, omega });
    }
    let (a0, w0) = RegionS::REGULAR_CORNER;
    if (alpha - a0).hypot(omega - w0) < REGULAR_POINT_RADIUS {
        return Ok(PlaneCoords::from_raw(0.0, 0.0));
    }
    let denom = 4.0 * (2.0 * (3.0 * omega - 1.0).max(0.0).powi(3)).sqrt();
    // membership in S bounds the argument by 1; near the regular corner the
    // quotient is ill-conditioned, so it is clamped unconditionally
    let arg = ((-27.0 * alpha + 18.0 * omega - 7.0) / denom).clamp(-1.0, 1.0);
    let kappa = arg.acos() / 3.0;
    let rho = (2.0 * omega - 2.0 / 3.0).max(0.0).sqrt();
    Ok(PlaneCoords::from_raw(rho * kappa.sin(), rho * kappa.cos()))
}

/// `r <= s <= t` as the sorted roots of
/// `p(w) = w³ - w² + ((1-ω)/2) w - (α - 2ω + 1)/8`.
pub fn invert_via_cubic(sc: &SeidelCoords) -> Result<TriangleCoords> {
    let (alpha, omega) = (sc.alpha, sc.omega);
    let c1 = (1.0 - omega) / 2.0;
    let c0 = -(alpha - 2.0 * omega + 1.0) / 8.0;
    // w = x + 1/3 gives x³ + a x + b
    let a = c1 - 1.0 / 3.0;
    let b = -2.0 / 27.0 + c1 / 3.0 + c0;
    let mut roots = depressed_cubic_real_roots(a, b)?.map(|x| x + 1.0 / 3.0);
    roots.sort_by(f64::total_cmp);
    for w in &mut roots {
        if *w < 0.0 && *w > -1e-12 {
            *w = 0.0;
        }
    }
    if roots[0] < 0.0 {
        return Err(Error::OutsideRegion { alpha, omega });
    }
    Ok(TriangleCoords::from_raw(roots[0], roots[1], roots[2]))
}

/// Three real roots of `x³ + a x + b` by the trigonometric method.
fn depressed_cubic_real_roots(a: f64, b: f64) -> Result<[f64; 3]> {
    const DISC_TOL: f64 = 1e-14;
    let disc = -(4.0 * a * a * a + 27.0 * b * b);
    if disc < -DISC_TOL {
        return Err(Error::ComplexRoots(disc));
    }
    if a >= 0.0 {
        // a = 0 forces b = 0 up to tolerance: triple root
        return Ok([0.0; 3]);
    }
    let m = 2.0 * (-a / 3.0).sqrt();
    let arg = (3.0 * b / (a * m)).clamp(-1.0, 1.0);
    let phi = arg.acos() / 3.0;
    Ok(std::array::from_fn(|k| m * (phi - 2.0 * PI * k as f64 / 3.0).cos()))
}

/// `Л(θ1) + Л(θ2) + Л(θ3)`.
pub fn volume_from_angles(angles: &DihedralAngles) -> f64 {
    angles.as_array().iter().map(|&t| lobachevsky(t)).sum()
}

/// Volume of the tetrahedron with coordinates `coords`; zero at the
/// vertices of the triangle.
pub fn volume_from_coords(coords: &TriangleCoords) -> Result<f64> {
    match tetra::angles_from_coords(coords) {
        Ok(angles) => Ok(volume_from_angles(&angles)),
        Err(Error::DeltaVertex) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Volume as a function on `S`.
///
/// Points with `α = 0` are flat tetrahedra and get volume 0 exactly. The
/// volume grows like `sqrt(-α) log(-α)` away from that curve, so the general
/// pipeline cannot resolve it below about `1e-7` there.
pub fn volume(sc: &SeidelCoords) -> Result<f64> {
    if !region_contains(sc) {
        return Err(Error::OutsideRegion { alpha: sc.alpha, omega: sc.omega });
    }
    if sc.alpha == 0.0 {
        return Ok(0.0);
    }
    let pc = invert(sc)?;
    volume_from_coords(&tetra::plane_to_delta(&pc))
}

/// Partial derivatives of the volume on the interior of `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeDerivatives {
    pub d_alpha: f64,
    pub d_omega: f64,
}

pub fn volume_derivatives(sc: &SeidelCoords) -> Result<VolumeDerivatives> {
    const SINGULAR_TOL: f64 = 1e-12;
    let pc = invert(sc)?;
    // c and 3d² - c² are recovered with square-root conditioning near the
    // boundary curves, so the boundary is detected in (α, ω) first
    let reg = RegionS;
    let on_f2 = sc.omega <= 0.375 && (sc.alpha - reg.f2(sc.omega)).abs() <= REGION_TOL;
    if on_f2 || (sc.alpha - reg.f1(sc.omega)).abs() <= REGION_TOL {
        return Err(Error::BoundaryPoint);
    }
    let (c, d) = (pc.c(), pc.d());
    let [r, s, t] = tetra::plane_to_delta(&pc).as_array();
    let neg_alpha = -sc.alpha;
    let wedge = 3.0 * d * d - c * c;
    if c <= SINGULAR_TOL || wedge <= SINGULAR_TOL || neg_alpha <= SINGULAR_TOL {
        return Err(Error::BoundaryPoint);
    }
    let (c2, d2) = (c * c, d * d);
    let m = c * (3.0 * d - SQRT3) * (21.0 * d2 + 4.0 * SQRT3 * d + 9.0 * c2 - 2.0);
    let n = SQRT3
        * (-27.0 * c2 * c2
            + 9.0 * c2 * (3.0 * d2 + SQRT3 * d + 1.0)
            + d * (18.0 * d2 * d + 9.0 * SQRT3 * d2 - 9.0 * d - 2.0 * SQRT3));
    let p = 2.0 * c * (SQRT3 * d - 1.0);
    let q = -3.0 * c2 + d * (3.0 * d + 2.0 * SQRT3);
    let l1 = (s * t / (r * r)).ln();
    let l2 = (t / s).ln();
    let common = c * wedge * r * s * t;
    let k = neg_alpha.sqrt();
    Ok(VolumeDerivatives {
        d_alpha: SQRT3 / (648.0 * common * k) * (m * l1 + n * l2),
        d_omega: k / (12.0 * common) * (p * l1 + q * l2),
    })
}

fn check_kprime_domain(a: f64, b: f64) -> Result<()> {
    if !(a > 1.0 && a.is_finite()) {
        return Err(Error::DomainError { what: "kprime argument a (a > 1)", value: a });
    }
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::DomainError { what: "kprime argument b (0 < b < 1)", value: b });
    }
    Ok(())
}

/// `k'(a, b) = (a+b)(a-1) ln(a+b) - a(a+b-1) ln a`, positive for
/// `a > 1`, `0 < b < 1`.
pub fn kprime(a: f64, b: f64) -> Result<f64> {
    check_kprime_domain(a, b)?;
    Ok((a + b) * (a - 1.0) * (a + b).ln() - a * (a + b - 1.0) * a.ln())
}

/// `k'(a, b)` by partial sums of
/// `(a-1)(a+b-1) Σ_{n>=1} (q1^{n-1} - q2^{n-1}) / n`,
/// `q1 = (a+b-1)/(a+b)`, `q2 = (a-1)/a`, summed to double precision.
pub fn kprime_series(a: f64, b: f64) -> Result<f64> {
    check_kprime_domain(a, b)?;
    let q1 = (a + b - 1.0) / (a + b);
    let q2 = (a - 1.0) / a;
    let (mut p1, mut p2) = (1.0, 1.0);
    let mut sum = 0.0;
    let mut n = 1.0;
    loop {
        sum += (p1 - p2) / n;
        p1 *= q1;
        p2 *= q2;
        n += 1.0;
        // the remaining terms are bounded by q1^n (a+b) / n
        if p1 * (a + b) / n <= 1e-17 * sum || n > 1e7 {
            break;
        }
    }
    Ok((a - 1.0) * (a + b - 1.0) * sum)
}

/// Result of [`extremal_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalRecord {
    pub argmin_per: TriangleCoords,
    pub min_per: f64,
    pub argmin_det: TriangleCoords,
    pub min_det: f64,
    /// Smallest determinant among grid points violating a triangle inequality.
    pub min_det_outside_triangle: f64,
}

fn per_of(r: f64, s: f64, t: f64) -> f64 {
    (r * r + s * s + t * t).powi(2)
}

fn det_of(r: f64, s: f64, t: f64) -> f64 {
    -(r + s + t) * (-r + s + t) * (r - s + t) * (r + s - t)
}

/// Minimise `per` and `det` of the doubly stochastic pattern over the
/// simplex `r + s + t = 1`, `r, s, t >= 0`: a barycentric grid with
/// `grid_n` subdivisions, then zoomed grids around each minimiser.
pub fn extremal_scan(grid_n: usize) -> Result<ExtremalRecord> {
    if grid_n < 10 {
        return Err(Error::DomainError { what: "extremal grid size (>= 10)", value: grid_n as f64 });
    }
    let n = grid_n as f64;
    let mut best_per = (f64::INFINITY, [0.0; 3]);
    let mut best_det = (f64::INFINITY, [0.0; 3]);
    let mut outside = f64::INFINITY;
    for i in 0..=grid_n {
        for j in 0..=(grid_n - i) {
            let k = grid_n - i - j;
            let (r, s, t) = (i as f64 / n, j as f64 / n, k as f64 / n);
            let per = per_of(r, s, t);
            let det = det_of(r, s, t);
            if per < best_per.0 {
                best_per = (per, [r, s, t]);
            }
            if det < best_det.0 {
                best_det = (det, [r, s, t]);
            }
            let violates = [s + t - r, t + r - s, r + s - t].iter().any(|&x| x < -REGION_TOL);
            if violates {
                outside = outside.min(det);
            }
        }
    }
    let best_per = refine(best_per, 1.0 / n, per_of);
    let best_det = refine(best_det, 1.0 / n, det_of);
    let to_coords = |p: [f64; 3]| TriangleCoords::from_raw(p[0], p[1], p[2]);
    Ok(ExtremalRecord {
        argmin_per: to_coords(best_per.1),
        min_per: best_per.0,
        argmin_det: to_coords(best_det.1),
        min_det: best_det.0,
        min_det_outside_triangle: outside,
    })
}

fn refine(mut best: (f64, [f64; 3]), mut h: f64, f: fn(f64, f64, f64) -> f64) -> (f64, [f64; 3]) {
    const STEPS: i32 = 10;
    for _ in 0..8 {
        let [r0, s0, _] = best.1;
        let step = h / STEPS as f64;
        for i in -STEPS..=STEPS {
            for j in -STEPS..=STEPS {
                let r = r0 + i as f64 * step;
                let s = s0 + j as f64 * step;
                let t = 1.0 - r - s;
                if r < 0.0 || s < 0.0 || t < 0.0 {
                    continue;
                }
                let v = f(r, s, t);
                if v < best.0 {
                    best = (v, [r, s, t]);
                }
            }
        }
        h = step;
    }
    best
}

/// Determinant of a 4x4 matrix by cofactor expansion along 2x2 minors.
pub fn determinant(m: &[[f64; 4]; 4]) -> f64 {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    // Laplace expansion along rows {0,1} and their complement {2,3}
    let mut det = 0.0;
    for (idx, &(a, b)) in pairs.iter().enumerate() {
        let (c, d) = pairs[5 - idx];
        let sign = if (a + b) % 2 == 0 { -1.0 } else { 1.0 };
        det += sign * minor(0, 1, a, b) * minor(2, 3, c, d);
    }
    det
}

/// Permanent of a 4x4 matrix by Ryser's formula.
pub fn permanent(m: &[[f64; 4]; 4]) -> f64 {
    let mut total = 0.0;
    for subset in 1u32..16 {
        let prod: f64 = m
            .iter()
            .map(|row| (0..4).filter(|&j| subset >> j & 1 == 1).map(|j| row[j]).sum::<f64>())
            .product();
        let sign = if (4 - subset.count_ones()) % 2 == 1 { -1.0 } else { 1.0 };
        total += sign * prod;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const REGULAR_VOLUME: f64 = 1.014_941_606_409_653_625;

    fn sc(alpha: f64, omega: f64) -> SeidelCoords {
        SeidelCoords::new(alpha, omega).unwrap()
    }

    fn tc(r: f64, s: f64, t: f64) -> TriangleCoords {
        TriangleCoords::new(r, s, t).unwrap()
    }

    fn brute_force(m: &[[f64; 4]; 4], signed: bool) -> f64 {
        let mut total = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        if (0..4).any(|i| (0..i).any(|j| p[i] == p[j])) {
                            continue;
                        }
                        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        let sign = if signed && inversions % 2 == 1 { -1.0 } else { 1.0 };
                        total += sign * (0..4).map(|i| m[i][p[i]]).product::<f64>();
                    }
                }
            }
        }
        total
    }

    #[test]
    fn forward_examples() {
        let f = forward(&TriangleCoords::regular());
        assert_abs_diff_eq!(f.alpha(), -1.0 / 27.0, epsilon = 1e-16);
        assert_abs_diff_eq!(f.omega(), 1.0 / 3.0, epsilon = 1e-16);
        assert_eq!(forward(&tc(0.0, 0.5, 0.5)), sc(0.0, 0.5));
        assert_eq!(forward(&tc(0.25, 0.25, 0.5)), sc(0.0, 0.375));
    }

    #[test]
    fn forward_is_det_and_sqrt_per() {
        for coords in [TriangleCoords::regular(), tc(0.2, 0.35, 0.45), tc(0.5, 0.3, 0.2)] {
            let g = coords.gram_matrix();
            let f = forward(&coords);
            assert_abs_diff_eq!(determinant(&g), f.alpha(), epsilon = 1e-15);
            assert_abs_diff_eq!(permanent(&g).sqrt(), f.omega(), epsilon = 1e-15);
            assert_abs_diff_eq!(determinant(&g), brute_force(&g, true), epsilon = 1e-15);
            assert_abs_diff_eq!(permanent(&g), brute_force(&g, false), epsilon = 1e-15);
        }
    }

    #[test]
    fn det_and_permanent_of_general_matrix() {
        let m = [
            [1.0, -2.0, 0.5, 3.0],
            [0.3, 4.0, -1.0, 2.0],
            [2.5, 0.0, 1.5, -0.7],
            [-1.2, 0.8, 2.2, 0.9],
        ];
        assert_abs_diff_eq!(determinant(&m), brute_force(&m, true), epsilon = 1e-12);
        assert_abs_diff_eq!(permanent(&m), brute_force(&m, false), epsilon = 1e-12);
    }

    #[test]
    fn region_corners_and_curves() {
        let reg = region_boundary();
        assert_abs_diff_eq!(reg.f1(1.0 / 3.0), -1.0 / 27.0, epsilon = 1e-12);
        assert_abs_diff_eq!(reg.f2(1.0 / 3.0), -1.0 / 27.0, epsilon = 1e-12);
        assert_abs_diff_eq!(reg.f1(0.5), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(reg.f2(0.375), 0.0, epsilon = 1e-12);
        let expected = (14.0 - 5.0 * 10f64.sqrt()) / 432.0;
        assert_abs_diff_eq!(reg.f1(7.0 / 16.0), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(expected, -0.004_193_028_474_171_057, epsilon = 1e-17);
        assert!(region_contains(&SeidelCoords::regular()));
        assert!(region_contains(&sc(0.0, 0.5)));
        assert!(region_contains(&sc(0.0, 0.375)));
        assert!(!reg.contains(-0.05, 0.34));
        assert!(!reg.contains(-0.001, 0.34));
        assert!(SeidelCoords::new(-0.05, 0.34).is_err());
    }

    #[test]
    fn chords() {
        let reg = region_boundary();
        let (lo, hi) = reg.horizontal_chord(7.0 / 16.0).unwrap();
        assert_abs_diff_eq!(lo, (14.0 - 5.0 * 10f64.sqrt()) / 432.0, epsilon = 1e-15);
        assert_eq!(hi, 0.0);
        let (lo, hi) = reg.vertical_chord(-1.0 / 54.0).unwrap();
        assert_abs_diff_eq!(lo, (6.0 - SQRT3) / 12.0, epsilon = 1e-13);
        assert_abs_diff_eq!(hi, 0.375, epsilon = 1e-13);
        let (lo, hi) = reg.vertical_chord(0.0).unwrap();
        assert_abs_diff_eq!(lo, 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, 0.5, epsilon = 1e-15);
        assert!(matches!(reg.horizontal_chord(0.6), Err(Error::EmptyIntersection { .. })));
        assert!(matches!(reg.vertical_chord(0.01), Err(Error::EmptyIntersection { .. })));
    }

    #[test]
    fn invert_examples() {
        let p = invert(&SeidelCoords::regular()).unwrap();
        assert_eq!((p.c(), p.d()), (0.0, 0.0));
        let p = invert(&sc(0.0, 0.5)).unwrap();
        assert_abs_diff_eq!(p.c(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.d(), SQRT3 / 3.0, epsilon = 1e-15);
        let p = invert(&sc(0.0, 0.375)).unwrap();
        assert_abs_diff_eq!(p.c(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(p.d(), SQRT3 / 12.0, epsilon = 1e-15);
        assert!(matches!(invert(&sc(-0.001, 0.34)), Err(Error::OutsideRegion { .. })));
    }

    #[test]
    fn cubic_examples() {
        let roots = invert_via_cubic(&SeidelCoords::regular()).unwrap().as_array();
        for w in roots {
            assert_abs_diff_eq!(w, 1.0 / 3.0, epsilon = 1e-12);
        }
        let roots = invert_via_cubic(&sc(0.0, 0.5)).unwrap().as_array();
        assert_abs_diff_eq!(roots[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(roots[1], 0.5, epsilon = 1e-7);
        assert_abs_diff_eq!(roots[2], 0.5, epsilon = 1e-7);
        assert!(matches!(
            invert_via_cubic(&sc(-0.03, 0.45)),
            Err(Error::ComplexRoots(_))
        ));
    }

    #[test]
    fn chart_discriminant_identity() {
        // b0²/4 + a0³/27 = -27 c² (3d² - c²)² with a0 = 6(1-3ω), b0 = 27α-18ω+7
        for (c, d) in [(0.1, 0.2), (0.05, 0.4), (0.2, 0.15), (-0.1, 0.3)] {
            let (alpha, omega) = seidel_from_plane(&PlaneCoords::new(c, d).unwrap());
            let a0 = 6.0 * (1.0 - 3.0 * omega);
            let b0 = 27.0 * alpha - 18.0 * omega + 7.0;
            let lhs = b0 * b0 / 4.0 + a0.powi(3) / 27.0;
            let rhs = -27.0 * c * c * (3.0 * d * d - c * c).powi(2);
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
            assert!(lhs <= 1e-12);
        }
    }

    #[test]
    fn volume_examples() {
        assert_abs_diff_eq!(volume(&SeidelCoords::regular()).unwrap(), REGULAR_VOLUME, epsilon = 1e-14);
        assert_eq!(volume(&sc(0.0, 0.5)).unwrap(), 0.0);
        assert_abs_diff_eq!(volume(&sc(0.0, 0.375)).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(volume(&sc(0.0, 0.44)).unwrap(), 0.0, epsilon = 1e-11);
        let angles = DihedralAngles::new(PI / 3.0, PI / 3.0, PI / 3.0).unwrap();
        assert_abs_diff_eq!(volume_from_angles(&angles), REGULAR_VOLUME, epsilon = 1e-14);
        let flat = DihedralAngles::new(0.0, 0.0, PI).unwrap();
        assert_abs_diff_eq!(volume_from_angles(&flat), 0.0, epsilon = 1e-15);
        for theta in [0.3, 1.0, 2.5] {
            let a = DihedralAngles::new(0.0, theta, PI - theta).unwrap();
            assert_abs_diff_eq!(volume_from_angles(&a), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn derivative_reference_point() {
        let s = forward(&tc(0.2, 0.35, 0.45));
        let d = volume_derivatives(&s).unwrap();
        assert_abs_diff_eq!(d.d_alpha, -21.366_385_271, epsilon = 1e-8);
        assert_abs_diff_eq!(d.d_omega, 1.638_763_295_2, epsilon = 1e-9);
        assert_abs_diff_eq!(volume(&s).unwrap(), 0.741_437_425_879_026, epsilon = 1e-13);
    }

    #[test]
    fn derivatives_fail_on_boundary() {
        // isosceles r = s: c != 0 but 3d² = c²; s = t: c = 0
        for coords in [tc(0.3, 0.35, 0.35), tc(0.3, 0.3, 0.4), tc(0.25, 0.25, 0.5)] {
            assert_eq!(volume_derivatives(&forward(&coords)), Err(Error::BoundaryPoint));
        }
    }

    #[test]
    fn kprime_examples() {
        let k = kprime(2.0, 0.5).unwrap();
        assert_abs_diff_eq!(k, 2.5 * 2.5f64.ln() - 3.0 * 2f64.ln(), epsilon = 1e-15);
        assert!(k > 0.0);
        assert_abs_diff_eq!(k, 0.211_285_288_005_552, epsilon = 1e-14);
        let near = kprime(1.0 + 1e-8, 0.5).unwrap();
        assert!(near > 0.0 && near < 1e-7);
        assert!(kprime(1.0, 0.5).is_err());
        assert!(kprime(2.0, 1.0).is_err());
        assert!(kprime(2.0, 0.0).is_err());
        for (a, b) in [(1.5, 0.2), (2.0, 0.5), (10.0, 0.9), (100.0, 0.01)] {
            let k = kprime(a, b).unwrap();
            assert_abs_diff_eq!(kprime_series(a, b).unwrap(), k, epsilon = 1e-9 * k.abs().max(1.0));
        }
    }

    #[test]
    fn extremal_small_grid() {
        let rec = extremal_scan(200).unwrap();
        for (x, y) in rec.argmin_per.as_array().iter().zip(TriangleCoords::regular().as_array()) {
            assert!((x - y).abs() <= 1.0 / 200.0);
        }
        assert_abs_diff_eq!(rec.min_per, 1.0 / 9.0, epsilon = 1e-4);
        assert_abs_diff_eq!(rec.min_det, -1.0 / 27.0, epsilon = 1e-4);
        assert!(rec.min_det_outside_triangle >= 0.0);
        assert!(extremal_scan(5).is_err());
    }

    fn interior() -> impl Strategy<Value = TriangleCoords> {
        (0.02..0.96f64, 0.02..0.96f64).prop_filter_map("inside", |(a, b)| {
            let c = 1.0 - a - b;
            (c > 0.02).then(|| TriangleCoords::from_raw(0.5 * (b + c), 0.5 * (a + c), 0.5 * (a + b)))
        })
    }

    proptest! {
        #[test]
        fn round_trip(x in interior()) {
            let s = forward(&x);
            prop_assert!(region_contains(&s));
            let back = tetra::canonicalize(&tetra::plane_to_delta(&invert(&s).unwrap()));
            let want = tetra::canonicalize(&x);
            for (a, b) in back.as_array().iter().zip(want.as_array()) {
                prop_assert!((a - b).abs() <= 1e-9);
            }
            let cubic = invert_via_cubic(&s).unwrap();
            for (a, b) in cubic.as_array().iter().zip(want.as_array()) {
                prop_assert!((a - b).abs() <= 1e-9);
            }
        }

        #[test]
        fn invert_solves_chart_equations(x in interior()) {
            let s = forward(&x);
            let (alpha, omega) = seidel_from_plane(&invert(&s).unwrap());
            prop_assert!((alpha - s.alpha()).abs() <= 1e-10);
            prop_assert!((omega - s.omega()).abs() <= 1e-10);
        }

        #[test]
        fn volume_bounded(x in interior()) {
            let v = volume(&forward(&x)).unwrap();
            prop_assert!(v >= 0.0 && v <= REGULAR_VOLUME + 1e-12);
        }

        #[test]
        fn derivative_signs(x in interior()) {
            let x = tetra::canonicalize(&x);
            let [r, s, t] = x.as_array();
            prop_assume!(s - r > 1e-3 && t - s > 1e-3 && r + s - t > 1e-3);
            let d = volume_derivatives(&forward(&x)).unwrap();
            prop_assert!(d.d_alpha < 0.0);
            prop_assert!(d.d_omega > 0.0);
        }

        #[test]
        fn kprime_positive(a in 1.001..100.0f64, b in 0.001..0.999f64) {
            prop_assert!(kprime(a, b).unwrap() > 0.0);
        }
    }
}
