//! Reproduction harness: runs every acceptance scenario and tabulates the outcome.

use std::cell::OnceCell;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::equilateral::{
    audit_vertex_certificate, diff_polytope_vertex_check, extend_numeric, generate, petty_l1_points,
    random_triple, verify_equilateral, verify_equilateral_exact, ExtendConfig, ExtendStatus, GeneratorKind,
};
use crate::error::{Error, Result};
use crate::exactcert::{audit_certificate, l1_maximality_check, l1_maximality_general, Verdict};
use crate::norms::{check_sandwich, smooth_approx, ConvexBody2D, NormBall, NormSpec, SmoothingParams};
use crate::petty3d::{petty_extend, PettyConfig};
use crate::planar::{
    boundary_extent, circumcircle_equilateral, inscribe_homothet_2d_with, InscribeOptions, PlanarConfig, Triangle2D,
};
use crate::rational::{self, frac, int, RVec};
use crate::samples;

/// Instance-count multiplier used by `--quick`.
pub const QUICK_SCALE: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproduceConfig {
    /// Multiplier on the number of random instances per criterion.
    pub scale: f64,
    /// Replaces the solver tolerances; the pass thresholds stay fixed.
    pub tol_override: Option<f64>,
    pub seed: u64,
}

impl Default for ReproduceConfig {
    fn default() -> Self {
        Self {
            scale: 1.0,
            tol_override: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionRow {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub version: String,
    pub config: ReproduceConfig,
    /// Settings that differ from the pinned reproduction defaults.
    pub config_drift: Vec<String>,
    pub rows: Vec<CriterionRow>,
    pub all_pass: bool,
}

impl Summary {
    pub fn table(&self) -> String {
        let mut s = String::from("| # | criterion | result | seconds | detail |\n|---|---|---|---|---|\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {:.2} | {} |",
                r.id,
                r.name,
                if r.pass { "PASS" } else { "FAIL" },
                r.seconds,
                r.detail.replace('|', "/")
            );
        }
        if !self.config_drift.is_empty() {
            let _ = writeln!(s, "\nconfiguration drift: {}", self.config_drift.join(", "));
        }
        s
    }
}

struct Ctx {
    cfg: ReproduceConfig,
    planar: PlanarConfig,
    petty: PettyConfig,
    /// Sweeps shared by the extension and central-section criteria.
    petty_run: OnceCell<Result<PettyRun>>,
}

impl Ctx {
    fn count(&self, full: usize) -> usize {
        ((full as f64 * self.cfg.scale).ceil() as usize).max(1)
    }

    fn rng(&self, id: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed.wrapping_mul(1_000_003).wrapping_add(id))
    }
}

type Check = fn(&Ctx) -> Result<(bool, String)>;

/// Runs all criteria, writes `summary.json` and `summary.md` into `out_dir`
/// (created if missing) and returns the summary.
pub fn reproduce_all(out_dir: &Path, cfg: &ReproduceConfig) -> Result<Summary> {
    if !(cfg.scale > 0.0) {
        return Err(Error::input("scale must be positive"));
    }
    fs::create_dir_all(out_dir).map_err(|e| Error::input(format!("cannot create {}: {e}", out_dir.display())))?;
    let mut planar = PlanarConfig::default();
    let mut petty = PettyConfig::default();
    let mut drift = Vec::new();
    if let Some(t) = cfg.tol_override {
        if !(t > 0.0) {
            return Err(Error::input("tolerance override must be positive"));
        }
        planar.tol = t;
        petty.planar.tol = t;
        petty.tol = t;
        drift.push(format!("solver tolerance {t:e} (pinned {:e})", PlanarConfig::default().tol));
    }
    if cfg.scale != 1.0 {
        drift.push(format!("instance counts scaled by {}", cfg.scale));
    }
    let ctx = Ctx {
        cfg: cfg.clone(),
        planar,
        petty,
        petty_run: OnceCell::new(),
    };
    let criteria: [(u32, &str, f64, Check); 10] = [
        (1, "planar circumcircle radius at most p", 30.0, circumcircle_bound),
        (2, "boundary extent equals 2 at a-c and a-b", 30.0, extent_values),
        (3, "fourth point in 3-D norms", 300.0, petty_extension),
        (4, "central section admits r >= 1", 300.0, central_section),
        (5, "inscribed homothet independent of bracket", 60.0, homothet_uniqueness),
        (6, "difference points are vertices (exact)", 60.0, vertex_certificates),
        (7, "l1 four-point set is maximal (exact)", 120.0, l1_maximal),
        (8, "smoothing sandwich and anchors", 60.0, smoothing_sandwich),
        (9, "generator families", 30.0, generators),
        (10, "numeric and exact verdicts agree", 120.0, agreement),
    ];
    let mut rows = Vec::new();
    for (id, name, budget, check) in criteria {
        let t = Instant::now();
        let (pass, detail) = match check(&ctx) {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        let seconds = t.elapsed().as_secs_f64();
        let over = seconds > budget * cfg.scale.max(1.0);
        rows.push(CriterionRow {
            id,
            name: name.into(),
            pass: pass && !over,
            detail: if over {
                format!("{detail}; exceeded {budget} s")
            } else {
                detail
            },
            seconds,
            budget_seconds: budget,
        });
    }
    let summary = Summary {
        version: crate::cli::VERSION.into(),
        config: cfg.clone(),
        config_drift: drift,
        all_pass: rows.iter().all(|r| r.pass),
        rows,
    };
    let json = serde_json::to_string_pretty(&summary).map_err(|e| Error::internal(e.to_string()))?;
    let io = |e: std::io::Error| Error::input(format!("cannot write summary: {e}"));
    fs::write(out_dir.join("summary.json"), json + "\n").map_err(io)?;
    fs::write(out_dir.join("summary.md"), summary.table()).map_err(io)?;
    Ok(summary)
}

fn random_planar_norm<R: Rng>(rng: &mut R, i: usize) -> NormSpec {
    if i.is_multiple_of(2) {
        let pairs = rng.gen_range(3..=10);
        samples::random_polygon_norm(rng, pairs)
    } else {
        samples::random_lp_norm(rng, 2, 1.1, 10.0)
    }
}

fn pt2(v: &[f64]) -> [f64; 2] {
    [v[0], v[1]]
}

fn circumcircle_bound(ctx: &Ctx) -> Result<(bool, String)> {
    let mut rng = ctx.rng(1);
    let count = ctx.count(200);
    let (mut worst_ratio, mut worst_dev, mut fails) = (0.0f64, 0.0f64, 0);
    for i in 0..count {
        let norm = random_planar_norm(&mut rng, i);
        let [a, b, c] = random_triple(&norm, &mut rng)?;
        match circumcircle_equilateral(&norm, pt2(&a), pt2(&b), pt2(&c), &ctx.planar) {
            Ok(cc) => {
                worst_ratio = worst_ratio.max(cc.radius / cc.p);
                worst_dev = worst_dev.max(cc.deviation);
                if cc.radius > cc.p * (1.0 + 1e-8) || cc.deviation > 1e-8 {
                    fails += 1;
                }
            }
            Err(_) => fails += 1,
        }
    }
    Ok((
        fails == 0,
        format!("{count} norms, max R/p {worst_ratio:.6}, max deviation {worst_dev:.2e}, {fails} failures"),
    ))
}

fn extent_values(ctx: &Ctx) -> Result<(bool, String)> {
    let mut rng = ctx.rng(2);
    let count = ctx.count(50);
    let mut worst = 0.0f64;
    for i in 0..count {
        let norm = random_planar_norm(&mut rng, i);
        let [a, b, c] = random_triple(&norm, &mut rng)?;
        let p = norm.eval(&[b[0] - a[0], b[1] - a[1]]);
        let s = |x: f64| x / p;
        let ball = NormBall::new(&norm)?;
        let f = boundary_extent(&ball, [s(a[0] - c[0]), s(a[1] - c[1])], [s(c[0] - a[0]), s(c[1] - a[1])])?;
        let g = boundary_extent(&ball, [s(a[0] - b[0]), s(a[1] - b[1])], [s(b[0] - a[0]), s(b[1] - a[1])])?;
        worst = worst.max((f - 2.0).abs()).max((g - 2.0).abs());
    }
    Ok((worst <= 1e-9, format!("{count} triples, max |extent - 2| {worst:.2e}")))
}

struct PettyRun {
    smooth_worst: f64,
    smooth_fails: usize,
    nonsmooth_worst: f64,
    nonsmooth_fails: usize,
    central_min: f64,
    count: (usize, usize),
}

fn run_petty(ctx: &Ctx) -> Result<PettyRun> {
    let mut rng = ctx.rng(3);
    let mut run = PettyRun {
        smooth_worst: 0.0,
        smooth_fails: 0,
        nonsmooth_worst: 0.0,
        nonsmooth_fails: 0,
        central_min: f64::INFINITY,
        count: (ctx.count(100), ctx.count(50)),
    };
    for i in 0..run.count.0 {
        let norm = samples::random_smooth_norm_3d(&mut rng, i)?;
        let [a, b, c] = random_triple(&norm, &mut rng)?;
        match petty_extend(&norm, &a, &b, &c, &ctx.petty) {
            Ok(res) => {
                let dev = res.deviations.iter().cloned().fold(0.0, f64::max) / res.p;
                run.smooth_worst = run.smooth_worst.max(dev);
                run.central_min = run.central_min.min(res.sweep.central_r);
                if dev > 1e-6 {
                    run.smooth_fails += 1;
                }
            }
            Err(_) => run.smooth_fails += 1,
        }
    }
    let sequence = PettyConfig {
        try_direct: false,
        ..ctx.petty.clone()
    };
    for i in 0..run.count.1 {
        let norm = samples::random_nonsmooth_norm_3d(&mut rng, i);
        let [a, b, c] = random_triple(&norm, &mut rng)?;
        match petty_extend(&norm, &a, &b, &c, &sequence) {
            Ok(res) => {
                let dev = res.deviations.iter().cloned().fold(0.0, f64::max) / res.p;
                run.nonsmooth_worst = run.nonsmooth_worst.max(dev);
                for l in &res.smoothing {
                    if let Some(r) = l.central_r {
                        run.central_min = run.central_min.min(r);
                    }
                }
                if dev > 1e-4 {
                    run.nonsmooth_fails += 1;
                }
            }
            Err(_) => run.nonsmooth_fails += 1,
        }
    }
    Ok(run)
}

fn petty_extension(ctx: &Ctx) -> Result<(bool, String)> {
    let r = ctx.petty_run.get_or_init(|| run_petty(ctx)).as_ref().map_err(Clone::clone)?;
    Ok((
        r.smooth_fails == 0 && r.nonsmooth_fails == 0,
        format!(
            "smooth {}: max dev/p {:.2e} ({} failures); non-smooth {}: max dev/p {:.2e} ({} failures)",
            r.count.0, r.smooth_worst, r.smooth_fails, r.count.1, r.nonsmooth_worst, r.nonsmooth_fails
        ),
    ))
}

fn central_section(ctx: &Ctx) -> Result<(bool, String)> {
    let r = ctx.petty_run.get_or_init(|| run_petty(ctx)).as_ref().map_err(Clone::clone)?;
    Ok((r.central_min >= 1.0 - 1e-8, format!("min r(0) = {:.9}", r.central_min)))
}

fn homothet_uniqueness(ctx: &Ctx) -> Result<(bool, String)> {
    let mut rng = ctx.rng(5);
    let count = ctx.count(100);
    let (mut worst, mut fails) = (0.0f64, 0);
    for _ in 0..count {
        let body = samples::random_smooth_body(&mut rng);
        let tri = loop {
            let p: [[f64; 2]; 3] = std::array::from_fn(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
            if let Ok(t) = Triangle2D::new(p[0], p[1], p[2]) {
                let area = ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1])).abs();
                if area > 0.2 {
                    break t;
                }
            }
        };
        let c = body.interior_point();
        // the second run parametrizes another vertex from a shifted centre,
        // so its boundary brackets are disjoint from the first run's
        let shifted = {
            let d = [rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2)];
            let s = body.ray_exit(c, d).unwrap_or(0.0);
            [c[0] + 0.3 * s * d[0], c[1] + 0.3 * s * d[1]]
        };
        let first = inscribe_homothet_2d_with(&body, &tri, &ctx.planar, &InscribeOptions { anchor: 0, hint: None });
        let body2 = body.with_interior(shifted);
        let second = inscribe_homothet_2d_with(&body2, &tri, &ctx.planar, &InscribeOptions { anchor: 2, hint: None });
        match (first, second) {
            (Ok(x), Ok(y)) => {
                let d = (x.z[0] - y.z[0]).hypot(x.z[1] - y.z[1]) + (x.r - y.r).abs();
                worst = worst.max(d);
                if d > 1e-6 {
                    fails += 1;
                }
            }
            _ => fails += 1,
        }
    }
    Ok((
        fails == 0,
        format!("{count} bodies, max |dz| + |dr| {worst:.2e}, {fails} disagreements"),
    ))
}

fn random_simplex<R: Rng>(rng: &mut R, dim: usize) -> Vec<RVec> {
    loop {
        let pts: Vec<RVec> = (0..=dim)
            .map(|_| (0..dim).map(|_| frac(rng.gen_range(-60..=60), rng.gen_range(1..=12))).collect())
            .collect();
        let diffs: Vec<RVec> = pts[1..].iter().map(|p| rational::sub(p, &pts[0])).collect();
        if crate::linalg::rank_exact(&diffs) == dim {
            return pts;
        }
    }
}

fn vertex_certificates(ctx: &Ctx) -> Result<(bool, String)> {
    let mut rng = ctx.rng(6);
    let count = ctx.count(100);
    let (mut pairs, mut fails) = (0usize, 0);
    for i in 0..count {
        let dim = 2 + i % 4;
        let pts = random_simplex(&mut rng, dim);
        let cert = diff_polytope_vertex_check(&pts)?;
        match audit_vertex_certificate(&cert) {
            Ok(k) if cert.all_vertices() => pairs += k,
            _ => fails += 1,
        }
    }
    Ok((fails == 0, format!("{count} simplices, {pairs} differences certified, {fails} failures")))
}

fn l1_maximal(_ctx: &Ctx) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 4..=8 {
        let t = Instant::now();
        let cert = l1_maximality_check(n, None)?;
        let audit = audit_certificate(&cert)?;
        let exact = cert.points.iter().enumerate().all(|(i, a)| {
            cert.points[i + 1..]
                .iter()
                .all(|b| rational::l1_norm(&rational::sub(a, b)) == int(2))
        });
        let good = cert.verdict == Verdict::Maximal && audit.verdict == Verdict::Maximal && exact;
        ok &= good;
        if n == 8 && t.elapsed().as_secs_f64() > 120.0 {
            ok = false;
        }
        notes.push(format!("n={n} {:?} ({} cells, {:.1}s)", cert.verdict, cert.cell_count, t.elapsed().as_secs_f64()));
    }
    let pts = petty_l1_points(4);
    let control = l1_maximality_general(&pts[..3], &int(2), None)?;
    audit_certificate(&control)?;
    let witness_ok = control.verdict == Verdict::Extendable
        && control
            .witnesses
            .iter()
            .all(|w| pts[..3].iter().all(|a| rational::l1_norm(&rational::sub(w, a)) == int(2)));
    ok &= witness_ok;
    notes.push(format!("control {:?} with {} witnesses", control.verdict, control.witnesses.len()));
    Ok((ok, notes.join("; ")))
}

fn smoothing_sandwich(ctx: &Ctx) -> Result<(bool, String)> {
    let pts = petty_l1_points(4);
    let fl: Vec<Vec<f64>> = pts.iter().map(|p| rational::vec_to_f64(p)).collect();
    let base = NormSpec::l1(4);
    let mut anchors = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                anchors.push(fl[i].iter().zip(&fl[j]).map(|(x, y)| (x - y) / 2.0).collect::<Vec<f64>>());
            }
        }
    }
    let samples = ctx.count(10_000);
    let mut ok = true;
    let mut notes = Vec::new();
    for k in [2u32, 8, 32] {
        let eps = 1.0 / k as f64;
        let params = SmoothingParams {
            epsilon: eps,
            sample_count: samples,
            seed: ctx.cfg.seed ^ k as u64,
            ..SmoothingParams::default()
        };
        let sm = smooth_approx(&base, &anchors, &params)?;
        let sandwich = check_sandwich(&base, &sm, eps, samples, ctx.cfg.seed.wrapping_add(k as u64));
        let anchor_dev = anchors.iter().map(|a| (sm.eval(a) - 1.0).abs()).fold(0.0, f64::max);
        let mut dist_ok = true;
        for i in 0..4 {
            for j in i + 1..4 {
                let d = sm.eval(&fl[i].iter().zip(&fl[j]).map(|(x, y)| x - y).collect::<Vec<f64>>());
                dist_ok &= d >= 2.0 * (1.0 - eps) && d <= 2.0 * (1.0 + eps);
            }
        }
        let good = sandwich.is_ok() && anchor_dev <= 1e-9 && dist_ok;
        ok &= good;
        notes.push(format!("k={k}: anchors within {anchor_dev:.1e}, sandwich {}", if sandwich.is_ok() { "ok" } else { "violated" }));
    }
    Ok((ok, notes.join("; ")))
}

fn generators(_ctx: &Ctx) -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst = 0.0f64;
    for n in 1..=10 {
        let cube = generate(GeneratorKind::LinfCube, n)?;
        let exact = cube.exact.as_ref().ok_or_else(|| Error::internal("cube without exact points"))?;
        let cert = verify_equilateral_exact(&cube.norm, exact, 1e-12)?;
        ok &= cert.valid && exact.len() == 1 << n && cert.exact.as_ref().and_then(|e| e.p.clone()) == Some(int(1));
        let simplex = generate(GeneratorKind::EuclideanSimplex, n)?;
        let cert = verify_equilateral(&simplex.norm, &simplex.points, 1e-12)?;
        let dev = cert.max_deviation / cert.p;
        worst = worst.max(dev);
        ok &= simplex.points.len() == n + 1 && dev <= 1e-12;
    }
    Ok((ok, format!("cubes 2^n at p = 1 for n <= 10; simplex max relative deviation {worst:.2e}")))
}

fn agreement(ctx: &Ctx) -> Result<(bool, String)> {
    let mut instances: Vec<(Vec<RVec>, usize)> = Vec::new();
    for n in 4..=6 {
        let pts = petty_l1_points(n);
        instances.push((pts.clone(), n));
        instances.push((pts[..3].to_vec(), n));
    }
    instances.push((
        vec![vec![int(1), int(0)], vec![int(-1), int(0)], vec![int(0), int(1)], vec![int(0), int(-1)]],
        2,
    ));
    let mut ok = true;
    let (mut maximal, mut extendable) = (0, 0);
    for (pts, n) in &instances {
        let cert = l1_maximality_general(pts, &int(2), None)?;
        let fl: Vec<Vec<f64>> = pts.iter().map(|p| rational::vec_to_f64(p)).collect();
        let out = extend_numeric(
            &NormSpec::l1(*n),
            &fl,
            2.0,
            &ExtendConfig {
                seed: ctx.cfg.seed,
                ..ExtendConfig::default()
            },
        )?;
        match cert.verdict {
            Verdict::Maximal => {
                maximal += 1;
                ok &= out.status == ExtendStatus::NotFound;
            }
            Verdict::Extendable => {
                extendable += 1;
                ok &= out.status == ExtendStatus::Found && out.best_residual <= 1e-6;
            }
        }
    }
    Ok((ok, format!("{maximal} maximal and {extendable} extendable instances checked")))
}
