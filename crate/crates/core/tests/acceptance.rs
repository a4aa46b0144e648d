//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits non-zero on any failure.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use idealtetra::exterior::{self, MultiVector, SIGMA};
use idealtetra::lobachevsky::{lobachevsky, lobachevsky_quadrature};
use idealtetra::seidel::{self, RegionS, SeidelCoords};
use idealtetra::tetra::{self, TriangleCoords};
use idealtetra::verify;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    // NaN-propagating maximum
    it.into_iter().fold(0.0, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

fn coord_err(a: &TriangleCoords, b: &TriangleCoords) -> f64 {
    max_abs(a.as_array().iter().zip(b.as_array()).map(|(x, y)| (x - y).abs()))
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn regular_volume() -> Outcome {
    let start = Instant::now();
    let oracle = 3.0 * lobachevsky_quadrature(PI / 3.0, 1e-13).expect("quadrature");
    let v = seidel::volume(&SeidelCoords::regular()).expect("volume");
    let err = (v - oracle).abs();
    let elapsed = start.elapsed();

    // 100 horizontal lines x 100 points across each chord of S
    let reg = RegionS;
    let mut excess = f64::NEG_INFINITY;
    let mut points = 0;
    for i in 0..100 {
        let w = 1.0 / 3.0 + (1.0 / 6.0) * i as f64 / 99.0;
        let (lo, hi) = reg.horizontal_chord(w).expect("chord");
        for j in 0..100 {
            let a = lo + (hi - lo) * j as f64 / 99.0;
            let vol = SeidelCoords::new(a, w).and_then(|p| seidel::volume(&p)).unwrap_or(f64::INFINITY);
            excess = excess.max(vol - v);
            points += 1;
        }
    }
    Outcome {
        passed: err <= 1e-10 && excess <= 1e-12 && within(elapsed, 1.0),
        detail: format!(
            "regular volume {v:.15} vs 3*quadrature {oracle:.15}: err {err:.2e} (tol 1e-10), {:.3}s (< 1s); \
             max excess over {points} grid points of S {excess:.2e} (tol 1e-12)",
            elapsed.as_secs_f64()
        ),
    }
}

fn degenerate_vanishing() -> Outcome {
    let worst = max_abs((0..100).map(|i| {
        let w = 0.375 + 0.125 * i as f64 / 99.0;
        SeidelCoords::new(0.0, w).and_then(|p| seidel::volume(&p)).map_or(f64::NAN, f64::abs)
    }));
    Outcome {
        passed: worst <= 1e-11,
        detail: format!("max |volume| on 100 points of alpha = 0: {worst:.2e} (tol 1e-11)"),
    }
}

fn bijectivity() -> Outcome {
    let start = Instant::now();
    let grid = verify::fundamental_grid(200);
    let mut inv = 0.0f64;
    let mut cubic = 0.0f64;
    for x in &grid {
        let sc = seidel::forward(x);
        let want = tetra::canonicalize(x);
        let back = seidel::invert(&sc).map(|pc| tetra::canonicalize(&tetra::plane_to_delta(&pc)));
        inv = max_abs([inv, back.map_or(f64::NAN, |b| coord_err(&b, &want))]);
        let roots = seidel::invert_via_cubic(&sc);
        cubic = max_abs([cubic, roots.map_or(f64::NAN, |r| coord_err(&r, &want))]);
    }
    let elapsed = start.elapsed();
    Outcome {
        passed: inv <= 1e-9 && cubic <= 1e-9 && within(elapsed, 5.0),
        detail: format!(
            "{} grid points of the fundamental triangle: round trip {inv:.2e}, cubic oracle {cubic:.2e} (tol 1e-9), {:.3}s (< 5s)",
            grid.len(),
            elapsed.as_secs_f64()
        ),
    }
}

fn angle_consistency(rng: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = verify::random_interior_coords(rng, 1e-3);
        let t = tetra::synthesize(&x).expect("synthesis");
        let th = tetra::angles_from_coords(&x).expect("angles");
        for (i, j) in [(1, 2), (1, 3), (1, 4)] {
            let a = t.dihedral_angle_at(i, j).map_or(f64::NAN, |a| (a - th.at_edge(i, j)).abs());
            worst = max_abs([worst, a]);
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        passed: worst <= 1e-9 && within(elapsed, 5.0),
        detail: format!(
            "100 synthesized tetrahedra, 3 edge classes: max angle difference {worst:.2e} (tol 1e-9), {:.3}s (< 5s)",
            elapsed.as_secs_f64()
        ),
    }
}

fn star_sign(k: usize) -> f64 {
    if (k * (4 - k)) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn hodge_identities(rng: &mut ChaCha8Rng) -> Outcome {
    let star = exterior::hodge_star;
    let top = |m: MultiVector| m.coeffs()[0];
    let mut worst = [0.0f64; 4];
    for _ in 0..1000 {
        let k = rng.random_range(0..=4usize);
        let a = verify::random_multivector(rng, k);
        let b = verify::random_multivector(rng, k);
        let c = verify::random_multivector(rng, 4 - k);
        // a ^ *b = b ^ *a
        let r0 = (top(exterior::wedge(&a, &star(&b)).unwrap()) - top(exterior::wedge(&b, &star(&a)).unwrap())).abs();
        // <a, b> = sigma * *(a ^ *b)
        let lhs = exterior::induced_inner(&a, &b).unwrap();
        let r1 = (lhs - SIGMA * top(star(&exterior::wedge(&a, &star(&b)).unwrap()))).abs();
        // <a, *c> = (-1)^{k(4-k)} <*a, c>
        let r2 = (exterior::induced_inner(&a, &star(&c)).unwrap()
            - star_sign(k) * exterior::induced_inner(&star(&a), &c).unwrap())
        .abs();
        // **a = (-1)^{k(4-k)} sigma a
        let expected = (star_sign(k) * SIGMA) * a;
        let r3 = max_abs(star(&star(&a)).coeffs().iter().zip(expected.coeffs()).map(|(x, y)| (x - y).abs()));
        for (w, r) in worst.iter_mut().zip([r0, r1, r2, r3]) {
            *w = max_abs([*w, r]);
        }
    }
    let mut exact = true;
    for k in 0..=4 {
        let n = exterior::blades(k).len();
        for i in 0..n {
            let mut c = vec![0.0; n];
            c[i] = 1.0;
            let e = MultiVector::new(k, &c).unwrap();
            exact &= star(&star(&e)) == (star_sign(k) * SIGMA) * e;
        }
    }
    Outcome {
        passed: worst.iter().all(|&w| w <= 1e-12) && exact,
        detail: format!(
            "1000 samples per identity: residuals {:.2e}, {:.2e}, {:.2e}, {:.2e} (tol 1e-12); double star exact on 16 blades: {exact}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    }
}

fn monotonicity(rng: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    let mut sign_margin = f64::INFINITY;
    let mut fd = 0.0f64;
    for _ in 0..500 {
        let sc = verify::random_interior_seidel(rng);
        match seidel::volume_derivatives(&sc) {
            Ok(d) => {
                sign_margin = sign_margin.min((-d.d_alpha).min(d.d_omega));
                let rel = verify::finite_difference_gradient(&sc, 1e-6).map_or(f64::NAN, |(ga, gw)| {
                    ((ga - d.d_alpha) / d.d_alpha).abs().max(((gw - d.d_omega) / d.d_omega).abs())
                });
                fd = max_abs([fd, rel]);
            }
            Err(_) => sign_margin = f64::NAN,
        }
    }
    let mut chord = f64::INFINITY;
    for k in 1..=20 {
        let w = 1.0 / 3.0 + (1.0 / 6.0) * k as f64 / 21.0;
        let a = -(1.0 / 27.0) * k as f64 / 21.0;
        for m in [verify::chord_margin(Some(w), None, 41), verify::chord_margin(None, Some(a), 41)] {
            chord = chord.min(m.unwrap_or(f64::NAN));
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        passed: sign_margin > 0.0 && fd <= 1e-5 && chord > 1e-12 && within(elapsed, 30.0),
        detail: format!(
            "500 interior points: min(-d_alpha, d_omega) {sign_margin:.3e} (> 0), finite differences {fd:.2e} relative (tol 1e-5); \
             20+20 chords min adjacent step {chord:.2e} (> 1e-12); {:.3}s (< 30s)",
            elapsed.as_secs_f64()
        ),
    }
}

fn section_eight_endpoints() -> Outcome {
    let reg = RegionS;
    let f1_target = (14.0 - 5.0 * 10f64.sqrt()) / 432.0;
    let e0 = (reg.f1(7.0 / 16.0) - f1_target).abs();
    let (lo, hi) = reg.horizontal_chord(7.0 / 16.0).expect("chord");
    let e1 = (lo - f1_target).abs().max(hi.abs());
    let (lo, hi) = reg.vertical_chord(-1.0 / 54.0).expect("chord");
    let e2 = (lo - (6.0 - 3f64.sqrt()) / 12.0).abs().max((hi - 0.375).abs());
    Outcome {
        passed: e0 <= 1e-12 && e1 <= 1e-10 && e2 <= 1e-10,
        detail: format!(
            "f1(7/16) err {e0:.2e} (tol 1e-12); alpha-sweep at omega = 7/16 endpoints err {e1:.2e}; \
             omega-sweep at alpha = -1/54 endpoints err {e2:.2e} (tol 1e-10)"
        ),
    }
}

fn extremal() -> Outcome {
    let start = Instant::now();
    let rec = seidel::extremal_scan(400).expect("scan");
    let elapsed = start.elapsed();
    let third = TriangleCoords::regular();
    let dist = coord_err(&rec.argmin_per, &third).max(coord_err(&rec.argmin_det, &third));
    let per = (rec.min_per - 1.0 / 9.0).abs();
    let det = (rec.min_det + 1.0 / 27.0).abs();
    Outcome {
        passed: dist <= 1e-4
            && per <= 1e-6
            && det <= 1e-6
            && rec.min_det_outside_triangle >= 0.0
            && within(elapsed, 10.0),
        detail: format!(
            "grid 400: argmin distance {dist:.2e} (tol 1e-4), |min per - 1/9| {per:.2e}, |min det + 1/27| {det:.2e} (tol 1e-6), \
             min det outside triangle {:.2e} (>= 0), {:.3}s (< 10s)",
            rec.min_det_outside_triangle,
            elapsed.as_secs_f64()
        ),
    }
}

fn kprime_positivity() -> Outcome {
    let mut min_k = f64::INFINITY;
    let mut series = 0.0f64;
    for (a, b) in verify::kprime_grid(200) {
        let k = seidel::kprime(a, b).unwrap_or(f64::NAN);
        min_k = min_k.min(k);
        let s = seidel::kprime_series(a, b).unwrap_or(f64::NAN);
        series = max_abs([series, (s - k).abs() / k.abs().max(1.0)]);
    }
    Outcome {
        passed: min_k > 0.0 && series <= 1e-9,
        detail: format!("200x200 grid: min k' {min_k:.3e} (> 0), series mismatch {series:.2e} (tol 1e-9, relative to max(|k'|, 1))"),
    }
}

fn lobachevsky_symmetries(rng: &mut ChaCha8Rng) -> Outcome {
    let mut odd = 0.0f64;
    let mut periodic = 0.0f64;
    for _ in 0..10_000 {
        let theta: f64 = rng.random_range(-10.0..10.0);
        odd = odd.max((lobachevsky(theta) + lobachevsky(-theta)).abs());
        periodic = periodic.max((lobachevsky(theta + PI) - lobachevsky(theta)).abs());
    }
    let oracle = max_abs((0..1000).map(|i| {
        let theta = PI * i as f64 / 999.0;
        lobachevsky_quadrature(theta, 1e-13).map_or(f64::NAN, |q| (q - lobachevsky(theta)).abs())
    }));
    Outcome {
        passed: odd <= 1e-12 && periodic <= 1e-12 && oracle <= 1e-11,
        detail: format!(
            "10^4 arguments: oddness {odd:.2e}, periodicity {periodic:.2e} (tol 1e-12); 1000-point quadrature agreement {oracle:.2e} (tol 1e-11)"
        ),
    }
}

fn main() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let results = [
        ("regular tetrahedron volume", regular_volume()),
        ("degenerate vanishing", degenerate_vanishing()),
        ("coordinate bijectivity", bijectivity()),
        ("dihedral angle consistency", angle_consistency(&mut rng)),
        ("Hodge identities", hodge_identities(&mut rng)),
        ("monotonicity", monotonicity(&mut rng)),
        ("sweep endpoints", section_eight_endpoints()),
        ("extremal theorems", extremal()),
        ("k' positivity", kprime_positivity()),
        ("Lobachevsky symmetries", lobachevsky_symmetries(&mut rng)),
    ];
    let mut failures = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {name}: {}", i + 1, outcome.detail);
        failures += usize::from(!outcome.passed);
    }
    let total = start.elapsed().as_secs_f64();
    let in_time = total < 120.0;
    println!("total runtime {total:.2}s (< 120s): {}", if in_time { "PASS" } else { "FAIL" });
    if failures > 0 || !in_time {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
