// Acceptance run: one PASS/FAIL line per criterion. Every library answer is
// re-checked here against the reference helpers in `common` (norms rebuilt from
// JSON, triples built by plain bisection, exact arithmetic redone by hand).
// Exits non-zero if any criterion fails.

mod common;

use std::time::Instant;

use common::{equilateral_triple, gaussian_unit, max_side_deviation, Oracle};
use num_traits::{Signed, Zero};
use petty::equilateral::{
    diff_polytope_vertex_check, extend_numeric, generate, petty_l1_points, ExtendConfig, ExtendStatus,
    GeneratorKind, VertexOutcome,
};
use petty::exactcert::{audit_certificate, l1_maximality_check, l1_maximality_general, Verdict};
use petty::norms::{smooth_approx, LevelSetBody, NormBall, SmoothingParams};
use petty::petty3d::{petty_extend, ExtensionResult, PettyConfig};
use petty::planar::{
    boundary_extent, circumcircle_equilateral, inscribe_homothet_2d_with, InscribeOptions, PlanarConfig, Triangle2D,
};
use petty::rational::{frac, int, to_f64, Rational, RVec};
use petty::{samples, NormSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rng(id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_97a0 + id)
}

fn pt2(v: &[f64]) -> [f64; 2] {
    [v[0], v[1]]
}

fn planar_norm(rng: &mut ChaCha8Rng, i: usize) -> NormSpec {
    if i.is_multiple_of(2) {
        let pairs = rng.gen_range(3..=10);
        samples::random_polygon_norm(rng, pairs)
    } else {
        samples::random_lp_norm(rng, 2, 1.1, 10.0)
    }
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn circumcircle_radius() -> Outcome {
    let mut rng = rng(1);
    let (mut worst_ratio, mut worst_dev, mut fails) = (0.0f64, 0.0f64, Vec::new());
    for i in 0..200 {
        let norm = planar_norm(&mut rng, i);
        let oracle = Oracle::new(&norm);
        let [a, b, c] = equilateral_triple(&oracle, 2, &mut rng);
        let p = oracle.dist(&a, &b);
        match circumcircle_equilateral(&norm, pt2(&a), pt2(&b), pt2(&c), &PlanarConfig::default()) {
            Ok(cc) => {
                // the radius is re-derived from the center with the reference norm
                let dev = [&a, &b, &c]
                    .iter()
                    .map(|x| (oracle.dist(x, &cc.center) - cc.radius).abs())
                    .fold(0.0, f64::max);
                worst_ratio = worst_ratio.max(cc.radius / p);
                worst_dev = worst_dev.max(dev);
                if cc.radius > p * (1.0 + 1e-8) || dev > 1e-8 {
                    fails.push(i);
                }
            }
            Err(e) => {
                eprintln!("circumcircle case {i}: {e}");
                fails.push(i);
            }
        }
    }
    verdict(
        fails.is_empty(),
        format!("200 norms, max R/p {worst_ratio:.4}, max deviation {worst_dev:.1e}, failures {fails:?}"),
    )
}

fn extent_values() -> Outcome {
    let mut rng = rng(2);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let norm = planar_norm(&mut rng, i);
        let oracle = Oracle::new(&norm);
        let [a, b, c] = equilateral_triple(&oracle, 2, &mut rng);
        let p = oracle.dist(&a, &b);
        let unit = |x: &[f64], y: &[f64]| [(x[0] - y[0]) / p, (x[1] - y[1]) / p];
        let ball = NormBall::new(&norm).map_err(|e| e.to_string())?;
        let f = boundary_extent(&ball, unit(&a, &c), unit(&c, &a)).map_err(|e| e.to_string())?;
        let g = boundary_extent(&ball, unit(&a, &b), unit(&b, &a)).map_err(|e| e.to_string())?;
        worst = worst.max((f - 2.0).abs()).max((g - 2.0).abs());
    }
    verdict(worst <= 1e-9, format!("50 triples, max |extent - 2| {worst:.1e}"))
}

struct PettyRuns {
    smooth: Vec<Result<(ExtensionResult, f64), String>>,
    nonsmooth: Vec<Result<(ExtensionResult, f64), String>>,
    /// Largest reference-norm gauge error of the central homothet's vertices.
    central_vertex_error: f64,
}

fn deviation(oracle: &Oracle, d: &[f64], pts: &[Vec<f64>; 3], p: f64) -> f64 {
    pts.iter().map(|x| (oracle.dist(d, x) - p).abs()).fold(0.0, f64::max) / p
}

fn run_petty() -> PettyRuns {
    let mut rng = rng(3);
    let cfg = PettyConfig::default();
    let mut runs = PettyRuns {
        smooth: Vec::new(),
        nonsmooth: Vec::new(),
        central_vertex_error: 0.0,
    };
    for i in 0..100 {
        let norm = match samples::random_smooth_norm_3d(&mut rng, i) {
            Ok(n) => n,
            Err(e) => {
                runs.smooth.push(Err(e.to_string()));
                continue;
            }
        };
        let oracle = Oracle::new(&norm);
        let pts = equilateral_triple(&oracle, 3, &mut rng);
        let p = oracle.dist(&pts[0], &pts[1]);
        let out = petty_extend(&norm, &pts[0], &pts[1], &pts[2], &cfg).map_err(|e| e.to_string());
        if let Ok(res) = &out {
            // the central section's homothet must touch the unit sphere at all three vertices
            let frame = &res.sweep.frame;
            if let Some(s) = res.sweep.samples.iter().find(|s| s.t == 0.0) {
                for x in &pts {
                    let u: Vec<f64> = x.iter().map(|v| v / p).collect();
                    let q = frame.coords(&u);
                    let y = frame.embed([s.z[0] + s.r * q[0], s.z[1] + s.r * q[1]], 0.0);
                    runs.central_vertex_error = runs.central_vertex_error.max((oracle.eval(&y) - 1.0).abs());
                }
            } else {
                runs.central_vertex_error = f64::INFINITY;
            }
        }
        runs.smooth.push(out.map(|r| {
            let dev = deviation(&oracle, &r.d, &pts, p);
            (r, dev)
        }));
    }
    let sequence = PettyConfig {
        try_direct: false,
        ..cfg
    };
    for i in 0..50 {
        let norm = samples::random_nonsmooth_norm_3d(&mut rng, i);
        let oracle = Oracle::new(&norm);
        let pts = equilateral_triple(&oracle, 3, &mut rng);
        let p = oracle.dist(&pts[0], &pts[1]);
        let out = petty_extend(&norm, &pts[0], &pts[1], &pts[2], &sequence).map_err(|e| e.to_string());
        runs.nonsmooth.push(out.map(|r| {
            let dev = deviation(&oracle, &r.d, &pts, p);
            (r, dev)
        }));
    }
    runs
}

fn petty_extension(runs: &PettyRuns) -> Outcome {
    let tally = |v: &[Result<(ExtensionResult, f64), String>], tol: f64| {
        let worst = v.iter().filter_map(|r| r.as_ref().ok()).map(|r| r.1).fold(0.0, f64::max);
        let fails: Vec<usize> = (0..v.len())
            .filter(|&i| v[i].as_ref().map_or(true, |r| r.1 > tol))
            .collect();
        (worst, fails)
    };
    let (sw, sf) = tally(&runs.smooth, 1e-6);
    let (nw, nf) = tally(&runs.nonsmooth, 1e-4);
    verdict(
        sf.is_empty() && nf.is_empty(),
        format!("smooth 100: max dev/p {sw:.1e} failures {sf:?}; non-smooth 50: max dev/p {nw:.1e} failures {nf:?}"),
    )
}

fn central_section(runs: &PettyRuns) -> Outcome {
    let mut min_r = f64::INFINITY;
    for (r, _) in runs.smooth.iter().chain(&runs.nonsmooth).filter_map(|r| r.as_ref().ok()) {
        min_r = min_r.min(r.sweep.central_r);
        for level in &r.smoothing {
            if let Some(c) = level.central_r {
                min_r = min_r.min(c);
            }
        }
    }
    let err = runs.central_vertex_error;
    verdict(
        min_r >= 1.0 - 1e-8 && err <= 1e-6,
        format!("min r(0) {min_r:.6}; central homothet vertices on the sphere within {err:.1e}"),
    )
}

/// Unit ball of `ℓp` moved by a linear map and translated.
fn smooth_body(rng: &mut ChaCha8Rng) -> (LevelSetBody<'static>, impl Fn([f64; 2]) -> f64) {
    let p = rng.gen_range(1.5..=6.0);
    let m = [
        [rng.gen_range(0.6..1.6), rng.gen_range(-0.4..0.4)],
        [rng.gen_range(-0.4..0.4), rng.gen_range(0.6..1.6)],
    ];
    let c = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
    let gauge = move |d: [f64; 2]| {
        let y = [m[0][0] * d[0] + m[0][1] * d[1], m[1][0] * d[0] + m[1][1] * d[1]];
        (y[0].abs().powf(p) + y[1].abs().powf(p)).powf(1.0 / p)
    };
    let level = move |q: [f64; 2]| gauge([q[0] - c[0], q[1] - c[1]]);
    (LevelSetBody::new(c, level, gauge), level)
}

fn homothet_uniqueness() -> Outcome {
    let mut rng = rng(5);
    let cfg = PlanarConfig::default();
    let (mut worst, mut on_boundary, mut fails) = (0.0f64, 0.0f64, Vec::new());
    for i in 0..100 {
        let (body, level) = smooth_body(&mut rng);
        let tri = loop {
            let p: [[f64; 2]; 3] = std::array::from_fn(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
            let area = ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1])).abs();
            if area > 0.2 {
                break Triangle2D::new(p[0], p[1], p[2]).unwrap();
            }
        };
        // second run: other anchor vertex, parametrized from a shifted interior point
        let centre = petty::norms::ConvexBody2D::interior_point(&body);
        let d = [rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2)];
        let (mut lo, mut hi) = (0.0, 100.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if level([centre[0] + mid * d[0], centre[1] + mid * d[1]]) <= 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let shifted = [centre[0] + 0.3 * lo * d[0], centre[1] + 0.3 * lo * d[1]];
        let first = inscribe_homothet_2d_with(&body, &tri, &cfg, &InscribeOptions { anchor: 0, hint: None });
        let body2 = body.with_interior(shifted);
        let second = inscribe_homothet_2d_with(&body2, &tri, &cfg, &InscribeOptions { anchor: 2, hint: None });
        match (first, second) {
            (Ok(x), Ok(y)) => {
                let gap = (x.z[0] - y.z[0]).hypot(x.z[1] - y.z[1]) + (x.r - y.r).abs();
                for v in x.vertices(&tri).iter().chain(&y.vertices(&tri)) {
                    on_boundary = on_boundary.max((level(*v) - 1.0).abs());
                }
                worst = worst.max(gap);
                if gap > 1e-6 {
                    fails.push(i);
                }
            }
            _ => fails.push(i),
        }
    }
    verdict(
        fails.is_empty() && on_boundary <= 1e-8,
        format!("100 bodies, max |dz| + |dr| {worst:.1e}, vertices on boundary within {on_boundary:.1e}, failures {fails:?}"),
    )
}

fn exact_dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |s, (x, y)| s + x * y)
}

fn exact_sub(a: &[Rational], b: &[Rational]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vertex_certificates() -> Outcome {
    let mut rng = rng(6);
    let (mut checked, mut fails) = (0usize, Vec::new());
    for i in 0..100 {
        let dim = 2 + i % 4;
        let pts: Vec<RVec> = (0..=dim)
            .map(|_| (0..dim).map(|_| frac(rng.gen_range(-60..=60), rng.gen_range(1..=12))).collect())
            .collect();
        let cert = match diff_polytope_vertex_check(&pts) {
            Ok(c) => c,
            // a random draw can be affinely dependent; the library must say so
            Err(_) => continue,
        };
        let m = pts.len();
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let mut ok = cert.reports.len() == pairs.len();
        for r in &cert.reports {
            let q = exact_sub(&pts[r.i], &pts[r.j]);
            match &r.outcome {
                VertexOutcome::Vertex { functional } => {
                    let top = exact_dot(functional, &q);
                    ok &= pairs
                        .iter()
                        .filter(|&&(k, l)| (k, l) != (r.i, r.j))
                        .all(|&(k, l)| exact_dot(functional, &exact_sub(&pts[k], &pts[l])) < top);
                    checked += 1;
                }
                VertexOutcome::NotVertex { .. } => ok = false,
            }
        }
        if !ok {
            fails.push(i);
        }
    }
    verdict(
        fails.is_empty() && checked > 0,
        format!("{checked} differences certified by exact substitution, failures {fails:?}"),
    )
}

fn l1(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |s, x| s + x.abs())
}

fn all_at_distance(pts: &[RVec], p: &Rational) -> bool {
    (0..pts.len()).all(|i| (i + 1..pts.len()).all(|j| &l1(&exact_sub(&pts[i], &pts[j])) == p))
}

fn l1_maximality() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 4..=8 {
        let t = Instant::now();
        let cert = l1_maximality_check(n, None).map_err(|e| e.to_string())?;
        let audit = audit_certificate(&cert).map_err(|e| e.to_string())?;
        let secs = t.elapsed().as_secs_f64();
        ok &= cert.verdict == Verdict::Maximal
            && audit.verdict == Verdict::Maximal
            && all_at_distance(&cert.points, &int(2))
            && cert.points.len() == 4;
        if n == 8 {
            ok &= secs < 120.0;
        }
        notes.push(format!("n={n} {:?} {secs:.1}s", cert.verdict));
    }
    let pts = petty_l1_points(4);
    let control = l1_maximality_general(&pts[..3], &int(2), None).map_err(|e| e.to_string())?;
    let witness_ok = !control.witnesses.is_empty()
        && control.witnesses.iter().all(|w| {
            let mut set = pts[..3].to_vec();
            set.push(w.clone());
            all_at_distance(&set, &int(2))
        });
    ok &= control.verdict == Verdict::Extendable && witness_ok;
    notes.push(format!("control {:?}", control.verdict));
    verdict(ok, notes.join(", "))
}

fn smoothing_sandwich() -> Outcome {
    let pts: Vec<Vec<f64>> = petty_l1_points(4).iter().map(|p| p.iter().map(to_f64).collect()).collect();
    let diff = |i: usize, j: usize| pts[i].iter().zip(&pts[j]).map(|(x, y)| x - y).collect::<Vec<f64>>();
    let anchors: Vec<Vec<f64>> = (0..4)
        .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| diff(i, j).iter().map(|v| v / 2.0).collect())
        .collect();
    let l1f = |x: &[f64]| x.iter().map(|v| v.abs()).sum::<f64>();
    let mut ok = anchors.len() == 12;
    let mut notes = Vec::new();
    for k in [2u32, 8, 32] {
        let eps = 1.0 / k as f64;
        let params = SmoothingParams {
            epsilon: eps,
            seed: k as u64,
            ..SmoothingParams::default()
        };
        let sm = smooth_approx(&NormSpec::l1(4), &anchors, &params).map_err(|e| e.to_string())?;
        let oracle = Oracle::new(&sm);
        let mut rng = rng(800 + k as u64);
        let mut violations = 0;
        for _ in 0..10_000 {
            let radius = 10f64.powf(rng.gen_range(-1.0..1.0));
            let x: Vec<f64> = gaussian_unit(&mut rng, 4).iter().map(|v| v * radius).collect();
            let (n, s) = (l1f(&x), oracle.eval(&x));
            if !((1.0 - eps) * s <= n * (1.0 + 1e-12) && n <= (1.0 + eps) * s * (1.0 + 1e-12)) {
                violations += 1;
            }
        }
        let anchor_dev = anchors.iter().map(|a| (oracle.eval(a) - 1.0).abs()).fold(0.0, f64::max);
        let dist_ok = (0..4).all(|i| {
            (i + 1..4).all(|j| {
                let d = oracle.eval(&diff(i, j));
                (2.0 * (1.0 - eps)..=2.0 * (1.0 + eps)).contains(&d)
            })
        });
        ok &= violations == 0 && anchor_dev <= 1e-9 && dist_ok;
        notes.push(format!("k={k}: {violations} violations, anchors within {anchor_dev:.0e}"));
    }
    verdict(ok, notes.join(", "))
}

fn generators() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    for n in 1..=10 {
        let cube = generate(GeneratorKind::LinfCube, n).map_err(|e| e.to_string())?;
        let exact = cube.exact.clone().unwrap_or_default();
        let linf = |v: &[Rational]| v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero);
        ok &= exact.len() == 1 << n
            && (0..exact.len()).all(|i| (i + 1..exact.len()).all(|j| linf(&exact_sub(&exact[i], &exact[j])) == int(1)));
        let simplex = generate(GeneratorKind::EuclideanSimplex, n).map_err(|e| e.to_string())?;
        let e = Oracle::Lp(2.0);
        let p = e.dist(&simplex.points[0], &simplex.points[1]);
        let dev = max_side_deviation(&e, &simplex.points, p) / p;
        worst = worst.max(dev);
        ok &= simplex.points.len() == n + 1 && dev <= 1e-12;
    }
    verdict(ok, format!("cubes 2^n at p = 1, simplices n+1 points, max deviation {worst:.1e} (n <= 10)"))
}

fn numeric_exact_agreement() -> Outcome {
    let mut instances: Vec<(Vec<RVec>, usize)> = Vec::new();
    for n in 4..=6 {
        let pts = petty_l1_points(n);
        instances.push((pts.clone(), n));
        instances.push((pts[..3].to_vec(), n));
    }
    // the cross-polytope vertices of the plane are maximal at distance 2
    instances.push((vec![vec![int(1), int(0)], vec![int(-1), int(0)], vec![int(0), int(1)], vec![int(0), int(-1)]], 2));
    let l1o = Oracle::Lp(1.0);
    let (mut maximal, mut extendable, mut bad) = (0, 0, Vec::new());
    for (idx, (pts, n)) in instances.iter().enumerate() {
        let cert = l1_maximality_general(pts, &int(2), None).map_err(|e| e.to_string())?;
        let fl: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().map(to_f64).collect()).collect();
        let out = extend_numeric(&NormSpec::l1(*n), &fl, 2.0, &ExtendConfig::default()).map_err(|e| e.to_string())?;
        let residual = fl.iter().map(|a| (l1o.dist(&out.best_point, a) - 2.0).abs()).fold(0.0, f64::max);
        let agree = match cert.verdict {
            Verdict::Maximal => {
                maximal += 1;
                out.status == ExtendStatus::NotFound
            }
            Verdict::Extendable => {
                extendable += 1;
                out.status == ExtendStatus::Found && residual <= 1e-6
            }
        };
        if !agree {
            bad.push(idx);
        }
    }
    verdict(
        bad.is_empty(),
        format!("{maximal} maximal, {extendable} extendable, disagreements {bad:?}"),
    )
}

fn main() {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, budget: f64, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        let (pass, detail) = match out {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        // budgets are for release builds; the test profile keeps debug assertions on
        let limit = if cfg!(debug_assertions) { 2.0 * budget } else { budget };
        let pass = pass && secs <= limit;
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {id:>2} ({name}): {detail} [{secs:.1}s]",
            if pass { "PASS" } else { "FAIL" }
        );
    };
    report(1, "circumcircle radius at most p", 30.0, &mut circumcircle_radius);
    report(2, "boundary extents equal 2", 30.0, &mut extent_values);
    let t = Instant::now();
    let runs = run_petty();
    let shared = t.elapsed().as_secs_f64();
    report(3, "fourth point in 3-D norms", 300.0 - shared, &mut || petty_extension(&runs));
    report(4, "central section r >= 1", 300.0 - shared, &mut || central_section(&runs));
    report(5, "inscribed homothet independent of bracket", 60.0, &mut homothet_uniqueness);
    report(6, "difference points are vertices (exact)", 60.0, &mut vertex_certificates);
    report(7, "l1 four-point set is maximal (exact)", 120.0, &mut l1_maximality);
    report(8, "smoothing sandwich and anchors", 60.0, &mut smoothing_sandwich);
    report(9, "generator families", 30.0, &mut generators);
    report(10, "numeric and exact verdicts agree", 120.0, &mut numeric_exact_agreement);
    println!("shared 3-D sweep time {shared:.1}s");
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
