//! Seeded property suites over all modules, reported per property with
//! sample counts and the worst observed residual or margin.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exterior::{self, MultiVector, SIGMA};
use crate::lobachevsky::{lobachevsky, lobachevsky_quadrature};
use crate::seidel::{self, SeidelCoords};
use crate::tetra::{self, LabelledTetrahedron, Permutation, TriangleCoords};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Hodge,
    Gram,
    Lobachevsky,
    Roundtrip,
    Monotonicity,
    Extremal,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Hodge,
        Suite::Gram,
        Suite::Lobachevsky,
        Suite::Roundtrip,
        Suite::Monotonicity,
        Suite::Extremal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Hodge => "hodge",
            Suite::Gram => "gram",
            Suite::Lobachevsky => "lobachevsky",
            Suite::Roundtrip => "roundtrip",
            Suite::Monotonicity => "monotonicity",
            Suite::Extremal => "extremal",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Passes when the largest residual is at most the threshold.
    MaxResidual,
    /// Passes when the smallest margin exceeds the threshold.
    MinMargin,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::MaxResidual => "max_residual",
            Metric::MinMargin => "min_margin",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub suite: &'static str,
    pub property: &'static str,
    pub samples: usize,
    pub metric: Metric,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}/{}: n={} {}={:e} (threshold {:e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.property,
            self.samples,
            self.metric.name(),
            self.value,
            self.threshold
        )
    }
}

/// Collects residuals; a failed computation poisons the result with NaN.
struct Tally {
    metric: Metric,
    value: f64,
    samples: usize,
}

impl Tally {
    fn residuals() -> Self {
        Self { metric: Metric::MaxResidual, value: 0.0, samples: 0 }
    }

    fn margins() -> Self {
        Self { metric: Metric::MinMargin, value: f64::INFINITY, samples: 0 }
    }

    fn push(&mut self, x: f64) {
        self.samples += 1;
        if x.is_nan() || self.value.is_nan() {
            self.value = f64::NAN;
        } else if self.metric == Metric::MaxResidual {
            self.value = self.value.max(x);
        } else {
            self.value = self.value.min(x);
        }
    }

    fn push_result(&mut self, x: Result<f64>) {
        self.push(x.unwrap_or(f64::NAN));
    }

    fn report(self, suite: Suite, property: &'static str, threshold: f64) -> PropertyReport {
        let passed = match self.metric {
            Metric::MaxResidual => self.value <= threshold,
            Metric::MinMargin => self.value > threshold,
        };
        PropertyReport {
            suite: suite.name(),
            property,
            samples: self.samples,
            metric: self.metric,
            value: self.value,
            threshold,
            passed,
        }
    }
}

/// Run one suite (or all) with a deterministic generator seeded by `seed`.
pub fn run(suite: Suite, seed: u64) -> Vec<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| run_one(s, &mut rng)).collect(),
        s => run_one(s, &mut rng),
    }
}

fn run_one(suite: Suite, rng: &mut ChaCha8Rng) -> Vec<PropertyReport> {
    match suite {
        Suite::Hodge => hodge(rng),
        Suite::Gram => gram(rng),
        Suite::Lobachevsky => lobachevsky_suite(rng),
        Suite::Roundtrip => roundtrip(),
        Suite::Monotonicity => monotonicity(rng),
        Suite::Extremal => extremal(),
        Suite::All => unreachable!(),
    }
}

pub fn random_multivector(rng: &mut impl Rng, grade: usize) -> MultiVector {
    let coeffs: Vec<f64> = (0..exterior::blades(grade).len())
        .map(|_| rng.random_range(-2.0..2.0))
        .collect();
    MultiVector::new(grade, &coeffs).expect("grade in range")
}

/// Uniform point of the triangle with every triangle inequality slack above `margin`.
pub fn random_interior_coords(rng: &mut impl Rng, margin: f64) -> TriangleCoords {
    loop {
        // barycentric coordinates w.r.t. the triangle's vertices
        let (u, v): (f64, f64) = (rng.random(), rng.random());
        let (u, v) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
        let w = 1.0 - u - v;
        // the three triangle-inequality slacks are u, v, w
        if u.min(v).min(w) <= margin {
            continue;
        }
        return TriangleCoords::from_raw(0.5 * (v + w), 0.5 * (u + w), 0.5 * (u + v));
    }
}

/// The fundamental triangle `r <= s <= t` sampled on a grid of strictly
/// interior points (`count` points).
pub fn fundamental_grid(count: usize) -> Vec<TriangleCoords> {
    // barycentric grid of the sub-triangle with vertices (1/3,1/3,1/3),
    // (0,1/2,1/2), (1/4,1/4,1/2); grow the resolution until enough points
    let corners = [[1.0 / 3.0; 3], [0.0, 0.5, 0.5], [0.25, 0.25, 0.5]];
    let mut n = 3;
    loop {
        let mut pts = Vec::new();
        for i in 1..n {
            for j in 1..(n - i) {
                let k = n - i - j;
                let (a, b, c) = (i as f64 / n as f64, j as f64 / n as f64, k as f64 / n as f64);
                let p: [f64; 3] = std::array::from_fn(|m| a * corners[0][m] + b * corners[1][m] + c * corners[2][m]);
                pts.push(TriangleCoords::from_raw(p[0], p[1], p[2]));
            }
        }
        if pts.len() >= count {
            // evenly thinned to exactly `count`
            let step = pts.len() as f64 / count as f64;
            return (0..count).map(|i| pts[(i as f64 * step) as usize]).collect();
        }
        n += 1;
    }
}

fn star_sign(k: usize) -> f64 {
    if (k * (4 - k)) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn mv_distance(a: &MultiVector, b: &MultiVector) -> f64 {
    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn hodge(rng: &mut ChaCha8Rng) -> Vec<PropertyReport> {
    const N: usize = 1000;
    const TOL: f64 = 1e-12;
    let s = Suite::Hodge;
    let mut sym = Tally::residuals();
    let mut inner = Tally::residuals();
    let mut adjoint = Tally::residuals();
    let mut double = Tally::residuals();
    for _ in 0..N {
        let k = rng.random_range(0..=4usize);
        let (a, b) = (random_multivector(rng, k), random_multivector(rng, k));
        let l = exterior::wedge(&a, &exterior::hodge_star(&b)).map(|m| m.coeffs()[0]);
        let r = exterior::wedge(&b, &exterior::hodge_star(&a)).map(|m| m.coeffs()[0]);
        sym.push_result(l.and_then(|l| r.map(|r| (l - r).abs())));

        let lhs = exterior::induced_inner(&a, &b);
        let rhs = exterior::wedge(&a, &exterior::hodge_star(&b))
            .map(|m| SIGMA * exterior::hodge_star(&m).coeffs()[0]);
        inner.push_result(lhs.and_then(|l| rhs.map(|r| (l - r).abs())));

        let c = random_multivector(rng, 4 - k);
        let lhs = exterior::induced_inner(&a, &exterior::hodge_star(&c));
        let rhs = exterior::induced_inner(&exterior::hodge_star(&a), &c).map(|x| star_sign(k) * x);
        adjoint.push_result(lhs.and_then(|l| rhs.map(|r| (l - r).abs())));

        let expected = (star_sign(k) * SIGMA) * a;
        double.push(mv_distance(&exterior::hodge_star(&exterior::hodge_star(&a)), &expected));
    }
    let mut blades = Tally::residuals();
    for k in 0..=4 {
        for i in 0..exterior::blades(k).len() {
            let mut c = [0.0; 6];
            c[i] = 1.0;
            let e = MultiVector::new(k, &c[..exterior::blades(k).len()]).expect("valid blade");
            blades.push(mv_distance(&exterior::hodge_star(&exterior::hodge_star(&e)), &((star_sign(k) * SIGMA) * e)));
        }
    }
    vec![
        sym.report(s, "wedge_star_symmetric", TOL),
        inner.report(s, "inner_from_star", TOL),
        adjoint.report(s, "star_adjoint", TOL),
        double.report(s, "double_star", TOL),
        blades.report(s, "double_star_basis_exact", 0.0),
    ]
}

fn gram(rng: &mut ChaCha8Rng) -> Vec<PropertyReport> {
    const N: usize = 100;
    let s = Suite::Gram;
    let mut synth = Tally::residuals();
    let mut angles = Tally::residuals();
    let mut scale = Tally::residuals();
    let mut klein = Tally::residuals();
    let klein_perms = [[2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]].map(|p| Permutation::new(p).expect("valid"));
    for _ in 0..N {
        let x = random_interior_coords(rng, 1e-3);
        let Ok(t) = tetra::synthesize(&x) else {
            synth.push(f64::NAN);
            continue;
        };
        synth.push_result(tetra::doubly_stochastic_coords(&t).map(|y| coord_distance(&x, &y)));

        match tetra::angles_from_coords(&x) {
            Ok(th) => {
                for (i, j) in [(1, 2), (1, 3), (1, 4)] {
                    angles.push_result(t.dihedral_angle_at(i, j).map(|a| (a - th.at_edge(i, j)).abs()));
                }
            }
            Err(_) => angles.push(f64::NAN),
        }

        let vs: [_; 4] = std::array::from_fn(|i| {
            let mag = rng.random_range(0.05..20.0);
            let sign = if rng.random::<bool>() { -1.0 } else { 1.0 };
            (sign * mag) * t.vertices()[i]
        });
        let scaled = LabelledTetrahedron::new(vs).and_then(|u| tetra::doubly_stochastic_coords(&u));
        scale.push_result(scaled.map(|y| coord_distance(&x, &y)));

        for p in &klein_perms {
            let y = tetra::doubly_stochastic_coords(&tetra::permute_vertices(&t, p));
            klein.push_result(y.map(|y| coord_distance(&x, &y)));
        }
    }
    vec![
        synth.report(s, "synthesis_round_trip", 1e-10),
        angles.report(s, "vertex_vs_coordinate_angles", 1e-9),
        scale.report(s, "scale_invariance", 1e-12),
        klein.report(s, "klein_invariance", 1e-12),
    ]
}

fn coord_distance(a: &TriangleCoords, b: &TriangleCoords) -> f64 {
    a.as_array().iter().zip(b.as_array()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn lobachevsky_suite(rng: &mut ChaCha8Rng) -> Vec<PropertyReport> {
    let s = Suite::Lobachevsky;
    let mut odd = Tally::residuals();
    let mut periodic = Tally::residuals();
    for _ in 0..10_000 {
        let theta = rng.random_range(-10.0..10.0);
        odd.push((lobachevsky(theta) + lobachevsky(-theta)).abs());
        periodic.push((lobachevsky(theta + PI) - lobachevsky(theta)).abs());
    }
    let mut oracle = Tally::residuals();
    for i in 0..1000 {
        let theta = PI * i as f64 / 999.0;
        oracle.push_result(lobachevsky_quadrature(theta, 1e-13).map(|q| (q - lobachevsky(theta)).abs()));
    }
    vec![
        odd.report(s, "odd", 1e-12),
        periodic.report(s, "pi_periodic", 1e-12),
        oracle.report(s, "quadrature_agreement", 1e-11),
    ]
}

fn roundtrip() -> Vec<PropertyReport> {
    let s = Suite::Roundtrip;
    let mut inv = Tally::residuals();
    let mut cubic = Tally::residuals();
    let mut chart = Tally::residuals();
    for x in fundamental_grid(200) {
        let sc = seidel::forward(&x);
        let want = tetra::canonicalize(&x);
        let pc = seidel::invert(&sc);
        inv.push_result(
            pc.clone().map(|pc| coord_distance(&tetra::canonicalize(&tetra::plane_to_delta(&pc)), &want)),
        );
        cubic.push_result(seidel::invert_via_cubic(&sc).map(|y| coord_distance(&y, &want)));
        chart.push_result(pc.map(|pc| {
            let (a, w) = seidel::seidel_from_plane(&pc);
            (a - sc.alpha()).abs().max((w - sc.omega()).abs())
        }));
    }
    vec![
        inv.report(s, "forward_invert", 1e-9),
        cubic.report(s, "cubic_oracle", 1e-9),
        chart.report(s, "chart_equations", 1e-10),
    ]
}

/// Random point of the interior of `S` away from its boundary curves.
pub fn random_interior_seidel(rng: &mut impl Rng) -> SeidelCoords {
    loop {
        let x = tetra::canonicalize(&random_interior_coords(rng, 1e-2));
        let [r, s, t] = x.as_array();
        if s - r > 1e-2 && t - s > 1e-2 {
            return seidel::forward(&x);
        }
    }
}

/// Central-difference gradient of the volume with step `h`.
pub fn finite_difference_gradient(sc: &SeidelCoords, h: f64) -> Result<(f64, f64)> {
    let v = |a: f64, w: f64| SeidelCoords::new(a, w).and_then(|p| seidel::volume(&p));
    let (a, w) = (sc.alpha(), sc.omega());
    Ok((
        (v(a + h, w)? - v(a - h, w)?) / (2.0 * h),
        (v(a, w + h)? - v(a, w - h)?) / (2.0 * h),
    ))
}

/// Smallest adjacent decrease of the volume along `samples` points of a
/// chord of `S` (negative when monotonicity fails).
pub fn chord_margin(fixed_omega: Option<f64>, fixed_alpha: Option<f64>, samples: usize) -> Result<f64> {
    let reg = seidel::region_boundary();
    let (lo, hi, point): (f64, f64, Box<dyn Fn(f64) -> (f64, f64)>) = match (fixed_omega, fixed_alpha) {
        (Some(w), _) => {
            let (lo, hi) = reg.horizontal_chord(w)?;
            (lo, hi, Box::new(move |a| (a, w)))
        }
        (None, Some(a)) => {
            let (lo, hi) = reg.vertical_chord(a)?;
            (lo, hi, Box::new(move |w| (a, w)))
        }
        (None, None) => panic!("chord needs a fixed coordinate"),
    };
    let mut vols = Vec::with_capacity(samples);
    for i in 0..samples {
        let (a, w) = point(lo + (hi - lo) * i as f64 / (samples - 1) as f64);
        vols.push(seidel::volume(&SeidelCoords::new(a, w)?)?);
    }
    // decreasing in alpha, increasing in omega
    let sign = if fixed_omega.is_some() { 1.0 } else { -1.0 };
    Ok(vols.windows(2).map(|p| sign * (p[0] - p[1])).fold(f64::INFINITY, f64::min))
}

fn monotonicity(rng: &mut ChaCha8Rng) -> Vec<PropertyReport> {
    let s = Suite::Monotonicity;
    let mut signs = Tally::margins();
    let mut fd = Tally::residuals();
    for _ in 0..500 {
        let sc = random_interior_seidel(rng);
        let d = seidel::volume_derivatives(&sc);
        signs.push_result(d.clone().map(|d| (-d.d_alpha).min(d.d_omega)));
        let g = finite_difference_gradient(&sc, 1e-6);
        fd.push_result(d.and_then(|d| {
            g.map(|(ga, gw)| ((ga - d.d_alpha) / d.d_alpha).abs().max(((gw - d.d_omega) / d.d_omega).abs()))
        }));
    }
    let mut horizontal = Tally::margins();
    let mut vertical = Tally::margins();
    for k in 1..=20 {
        let w = 1.0 / 3.0 + (1.0 / 6.0) * k as f64 / 21.0;
        horizontal.push_result(chord_margin(Some(w), None, 41));
        let a = -(1.0 / 27.0) * k as f64 / 21.0;
        vertical.push_result(chord_margin(None, Some(a), 41));
    }
    let mut kpos = Tally::margins();
    let mut kseries = Tally::residuals();
    for (a, b) in kprime_grid(200) {
        let k = seidel::kprime(a, b);
        kpos.push_result(k.clone());
        kseries.push_result(k.and_then(|k| seidel::kprime_series(a, b).map(|s| (s - k).abs() / k.abs().max(1.0))));
    }
    vec![
        signs.report(s, "derivative_signs", 0.0),
        fd.report(s, "finite_difference_relative", 1e-5),
        horizontal.report(s, "horizontal_chords_decreasing", 1e-12),
        vertical.report(s, "vertical_chords_increasing", 1e-12),
        kpos.report(s, "kprime_positive", 0.0),
        kseries.report(s, "kprime_series", 1e-9),
    ]
}

/// `n x n` grid of `(a, b) ∈ (1, 100] x (0, 1)`.
pub fn kprime_grid(n: usize) -> Vec<(f64, f64)> {
    let mut pts = Vec::with_capacity(n * n);
    for i in 1..=n {
        let a = 1.0 + 99.0 * i as f64 / n as f64;
        for j in 1..=n {
            pts.push((a, j as f64 / (n + 1) as f64));
        }
    }
    pts
}

fn extremal() -> Vec<PropertyReport> {
    let s = Suite::Extremal;
    let third = TriangleCoords::regular();
    let mut dist = Tally::residuals();
    let mut per = Tally::residuals();
    let mut det = Tally::residuals();
    let mut outside = Tally::margins();
    match seidel::extremal_scan(400) {
        Ok(rec) => {
            dist.push(coord_distance(&rec.argmin_per, &third).max(coord_distance(&rec.argmin_det, &third)));
            per.push((rec.min_per - 1.0 / 9.0).abs());
            det.push((rec.min_det + 1.0 / 27.0).abs());
            // det >= 0 outside the triangle inequalities
            outside.push(rec.min_det_outside_triangle + 1e-15);
        }
        Err(_) => {
            for t in [&mut dist, &mut per, &mut det, &mut outside] {
                t.push(f64::NAN);
            }
        }
    }
    vec![
        dist.report(s, "argmin_distance", 1e-4),
        per.report(s, "min_permanent", 1e-6),
        det.report(s, "min_determinant", 1e-6),
        outside.report(s, "det_nonnegative_outside", 0.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fundamental_grid_is_interior() {
        let g = fundamental_grid(200);
        assert_eq!(g.len(), 200);
        for x in g {
            let [r, s, t] = x.as_array();
            assert!((r + s + t - 1.0).abs() < 1e-15);
            assert!(r <= s + 1e-15 && s <= t + 1e-15);
            assert!(r > 0.0 && r + s > t);
        }
    }

    #[test]
    fn hodge_suite_passes_and_is_deterministic() {
        let a = run(Suite::Hodge, 7);
        assert!(a.iter().all(|r| r.passed), "{a:?}");
        assert_eq!(a, run(Suite::Hodge, 7));
    }

    #[test]
    fn gram_and_roundtrip_suites_pass() {
        for s in [Suite::Gram, Suite::Roundtrip] {
            let r = run(s, 1);
            assert!(r.iter().all(|r| r.passed), "{r:?}");
        }
    }

    #[test]
    fn tally_flags_failures() {
        let mut t = Tally::residuals();
        t.push(1e-3);
        t.push_result(Err(crate::Error::BoundaryPoint));
        t.push(0.0);
        assert!(!t.report(Suite::Gram, "x", 1.0).passed);
    }
}
