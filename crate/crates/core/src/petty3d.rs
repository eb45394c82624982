//! Extension of an equilateral triple in a three-dimensional norm to an
//! equilateral quadruple.
//!
//! The triangle `a, b, c` spans an affine plane `π`. Sweeping the planes
//! `π₀ + t·v` parallel to it (`π₀` the linear plane through the origin, `v`
//! the Euclidean unit normal), each section `B_t` of the unit ball receives an
//! inscribed homothet `z(t) + r(t)·{a, b, c}` of the triangle. The central
//! section `t = 0` is a symmetric planar unit ball, where `r(0) ≥ 1`; towards
//! either end of the sweep the sections shrink to a point and `r → 0`. A root
//! of `r(t) = 1` yields the fourth point `d = −(z(t) + t·v)` (up to the offset
//! of `π` and the scaling by the common distance).
//!
//! Norms that are not smooth and strictly convex are first tried directly;
//! when that fails they are replaced by smoothed approximations `N_k` with
//! `ε = 1/k` that keep the triangle's edge directions at unit length, and the
//! solution for the largest useful `k` is polished in the original norm.

use serde::{Deserialize, Serialize};

use crate::equilateral::{extension_residual, pattern_search, polish_polyhedral};
use crate::error::{Error, Result};
use crate::norms::{smooth_approx, ConvexBody2D, LevelSetBody, NormSpec, SmoothingParams};
use crate::planar::{
    inscribe_homothet_2d_with, inscribe_on_difference_arc, HomothetSolution, InscribeOptions,
    PlanarConfig, Triangle2D,
};
use crate::roots::{brent_bracket, golden_min};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PettyConfig {
    /// Accepted deviation of the fourth point, relative to the side length.
    pub tol: f64,
    /// Relative tolerance for accepting the input triple as equilateral.
    pub equilateral_tol: f64,
    pub grid_size: usize,
    /// Grid used for the sweeps of each smoothing level.
    pub smoothing_grid: usize,
    /// Width of the final bracket on the sweep parameter.
    pub t_tol: f64,
    /// Sweeps with more failed sections than this fraction are rejected.
    pub max_gap_fraction: f64,
    /// Attempt the sweep on a non-smooth norm itself before smoothing it.
    pub try_direct: bool,
    pub smoothing_levels: Vec<u32>,
    pub smoothing_samples: usize,
    /// Smallest level whose solution is polished in the original norm.
    pub min_polish_level: u32,
    pub planar: PlanarConfig,
    pub seed: u64,
}

impl Default for PettyConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            equilateral_tol: 1e-9,
            grid_size: 64,
            smoothing_grid: 16,
            t_tol: 1e-12,
            max_gap_fraction: 0.25,
            try_direct: true,
            smoothing_levels: vec![2, 4, 8, 16, 32, 64, 128, 256],
            smoothing_samples: 2_000,
            min_polish_level: 4,
            planar: PlanarConfig::default(),
            seed: 0,
        }
    }
}

/// Orthonormal frame `e₁, e₂` of a plane together with its unit normal `v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneFrame {
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub v: [f64; 3],
}

impl PlaneFrame {
    /// Frame of the plane through `a, b, c`: `e₁` along `b − a`, `e₂` from `c − a`.
    pub fn from_triangle(a: &[f64], b: &[f64], c: &[f64]) -> Result<Self> {
        let ab = sub3(b, a);
        let ac = sub3(c, a);
        let l = norm3(ab);
        if l == 0.0 {
            return Err(Error::input("coincident triangle vertices"));
        }
        let e1 = scale3(ab, 1.0 / l);
        let w = sub3(&ac, &scale3(e1, dot3(e1, ac)));
        let lw = norm3(w);
        if !(lw > 1e-12 * norm3(ac).max(l)) {
            return Err(Error::input("collinear triangle vertices"));
        }
        let e2 = scale3(w, 1.0 / lw);
        Ok(Self {
            e1,
            e2,
            v: cross3(e1, e2),
        })
    }

    /// Frame of the plane orthogonal to `v`.
    pub fn from_normal(v: [f64; 3]) -> Result<Self> {
        let l = norm3(v);
        if !(l > 0.0) || !l.is_finite() {
            return Err(Error::input("plane normal must be a nonzero finite vector"));
        }
        let v = scale3(v, 1.0 / l);
        let k = (0..3)
            .min_by(|&i, &j| v[i].abs().total_cmp(&v[j].abs()))
            .unwrap_or(0);
        let mut axis = [0.0; 3];
        axis[k] = 1.0;
        let e1 = cross3(v, axis);
        let e1 = scale3(e1, 1.0 / norm3(e1));
        let e2 = cross3(v, e1);
        Ok(Self { e1, e2, v })
    }

    pub fn embed(&self, q: [f64; 2], t: f64) -> [f64; 3] {
        let mut x = [0.0; 3];
        for i in 0..3 {
            x[i] = q[0] * self.e1[i] + q[1] * self.e2[i] + t * self.v[i];
        }
        x
    }

    pub fn coords(&self, x: &[f64]) -> [f64; 2] {
        let x = [x[0], x[1], x[2]];
        [dot3(self.e1, x), dot3(self.e2, x)]
    }
}

/// Sections `{q : ‖q₁e₁ + q₂e₂ + t·v‖ ≤ 1}` of a three-dimensional unit ball.
pub struct SectionFamily<'a> {
    norm: &'a NormSpec,
    frame: PlaneFrame,
    /// `min_w ‖v + w‖` over the plane, attained at `w_min`.
    support: f64,
    w_min: [f64; 2],
}

impl<'a> SectionFamily<'a> {
    pub fn new(norm: &'a NormSpec, frame: PlaneFrame) -> Result<Self> {
        if norm.dim() != 3 {
            return Err(Error::input(format!(
                "sections need a 3-dimensional norm, got dim {}",
                norm.dim()
            )));
        }
        let phi = |w: [f64; 2]| norm.eval(&frame.embed(w, 1.0));
        // ‖v + w‖ ≥ c·|w| − ‖v‖, so minimizers satisfy |w| ≤ 2‖v‖/c
        let c = (0..64)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / 64.0;
                norm.eval(&frame.embed([a.cos(), a.sin()], 0.0))
            })
            .fold(f64::INFINITY, f64::min);
        let radius = 4.0 * norm.eval(&frame.v) / c;
        let xtol = 1e-10 * radius;
        let inner = |alpha: f64| golden_min(|beta| phi([alpha, beta]), -radius, radius, xtol);
        let (alpha, _) = golden_min(|alpha| inner(alpha).1, -radius, radius, xtol);
        let (beta, support) = inner(alpha);
        if !(support > 0.0) {
            return Err(Error::internal("section support value is not positive"));
        }
        Ok(Self {
            norm,
            frame,
            support,
            w_min: [alpha, beta],
        })
    }

    pub fn frame(&self) -> &PlaneFrame {
        &self.frame
    }

    /// Open interval of offsets with sections of more than one point.
    pub fn t_range(&self) -> (f64, f64) {
        (-1.0 / self.support, 1.0 / self.support)
    }

    pub fn section(&self, t: f64) -> Result<LevelSetBody<'a>> {
        let (lo, hi) = self.t_range();
        if !(t.abs() * self.support < 1.0 - 1e-12) {
            return Err(Error::SectionTrivial { t, lo, hi });
        }
        let norm = self.norm;
        let frame = self.frame;
        let body = LevelSetBody::new(
            [t * self.w_min[0], t * self.w_min[1]],
            move |q| norm.eval(&frame.embed(q, t)),
            move |d| norm.eval(&frame.embed(d, 0.0)),
        )
        .with_tolerance(1e-12);
        if t == 0.0 {
            return Ok(body);
        }
        // recentre on the centroid of a few boundary points
        let q0 = body.interior_point();
        let mut c = [0.0, 0.0];
        for k in 0..8 {
            let a = std::f64::consts::TAU * k as f64 / 8.0;
            let d = [a.cos(), a.sin()];
            let s = body.ray_exit(q0, d)?;
            c[0] += (q0[0] + s * d[0]) / 8.0;
            c[1] += (q0[1] + s * d[1]) / 8.0;
        }
        if body.level(c) < body.level(q0) {
            Ok(body.with_interior(c))
        } else {
            Ok(body)
        }
    }
}

/// Section of the unit ball of a three-dimensional norm by the plane
/// orthogonal to `v` at offset `t`, in coordinates of [`PlaneFrame::from_normal`].
pub fn section_body(norm: &NormSpec, v: [f64; 3], t: f64) -> Result<LevelSetBody<'_>> {
    SectionFamily::new(norm, PlaneFrame::from_normal(v)?)?.section(t)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSample {
    pub t: f64,
    pub z: [f64; 2],
    pub r: f64,
    pub residual: f64,
    pub theta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionSweep {
    pub frame: PlaneFrame,
    pub t_lo: f64,
    pub t_hi: f64,
    /// Samples sorted by `t`; includes the central section `t = 0`.
    pub samples: Vec<SweepSample>,
    /// Offsets where the planar solver failed.
    pub gaps: Vec<f64>,
    /// `r` at the section through the origin.
    pub central_r: f64,
    /// Largest `|Δr|/Δt` between consecutive samples.
    pub lipschitz_estimate: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionMethod {
    DirectSolve,
    SmoothingSequence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothingLevel {
    pub k: u32,
    pub d: Option<[f64; 3]>,
    /// Deviations `|‖d − x‖ − p|` in the original norm, relative to `p`.
    pub deviation_original: Option<f64>,
    /// The same in the smoothed norm.
    pub deviation_smoothed: Option<f64>,
    pub central_r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionResult {
    pub d: [f64; 3],
    /// `|‖d − a‖ − p|`, `|‖d − b‖ − p|`, `|‖d − c‖ − p|`.
    pub deviations: [f64; 3],
    pub p: f64,
    pub method: ExtensionMethod,
    pub t_star: f64,
    pub r_star: f64,
    /// Sweep of the norm that produced `d` (the last smoothed norm in sequence mode).
    pub sweep: SectionSweep,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub smoothing: Vec<SmoothingLevel>,
}

struct Setup<'a> {
    family: SectionFamily<'a>,
    tri: Triangle2D,
    /// Offset of the rescaled triangle's plane along `v`.
    h0: f64,
    p: f64,
}

impl<'a> Setup<'a> {
    fn new(norm: &'a NormSpec, pts: &[Vec<f64>; 3], p: f64, cfg: &PettyConfig) -> Result<Self> {
        let frame = PlaneFrame::from_triangle(&pts[0], &pts[1], &pts[2])?;
        let unit: Vec<Vec<f64>> = pts.iter().map(|x| x.iter().map(|v| v / p).collect()).collect();
        let tri = Triangle2D::with_threshold(
            [frame.coords(&unit[0]), frame.coords(&unit[1]), frame.coords(&unit[2])],
            cfg.planar.degeneracy,
        )?;
        let h0 = dot3(frame.v, [unit[0][0], unit[0][1], unit[0][2]]);
        Ok(Self {
            family: SectionFamily::new(norm, frame)?,
            tri,
            h0,
            p,
        })
    }

    fn solve_at(&self, t: f64, hint: Option<f64>, cfg: &PlanarConfig) -> Result<HomothetSolution> {
        let body = self.family.section(t)?;
        if t == 0.0 {
            if let Ok(sol) = inscribe_on_difference_arc(&body, &self.tri, cfg) {
                return Ok(sol);
            }
        }
        inscribe_homothet_2d_with(&body, &self.tri, cfg, &InscribeOptions { anchor: 0, hint })
    }

    fn sweep(&self, grid: usize, cfg: &PettyConfig) -> Result<SectionSweep> {
        let (t_lo, t_hi) = self.family.t_range();
        let ts: Vec<f64> = (0..grid)
            .map(|i| t_lo + (t_hi - t_lo) * (i + 1) as f64 / (grid + 1) as f64)
            .collect();
        let central = self.solve_at(0.0, None, &cfg.planar)?;
        let mut samples = vec![sample(0.0, &central)];
        let mut gaps = Vec::new();
        let pos: Vec<f64> = ts.iter().cloned().filter(|t| *t > 0.0).collect();
        let neg: Vec<f64> = ts.iter().rev().cloned().filter(|t| *t < 0.0).collect();
        for chain in [pos, neg] {
            let mut hint = Some(central.theta);
            for t in chain {
                match self.solve_at(t, hint, &cfg.planar) {
                    Ok(sol) => {
                        hint = Some(sol.theta);
                        samples.push(sample(t, &sol));
                    }
                    Err(_) => gaps.push(t),
                }
            }
        }
        if gaps.len() as f64 > cfg.max_gap_fraction * grid as f64 {
            return Err(Error::NoConvergence(format!(
                "planar solver failed on {} of {grid} sections",
                gaps.len()
            )));
        }
        samples.sort_by(|x, y| x.t.total_cmp(&y.t));
        gaps.sort_by(f64::total_cmp);
        let lipschitz_estimate = samples
            .windows(2)
            .map(|w| (w[1].r - w[0].r).abs() / (w[1].t - w[0].t))
            .fold(0.0, f64::max);
        Ok(SectionSweep {
            frame: *self.family.frame(),
            t_lo,
            t_hi,
            samples,
            gaps,
            central_r: central.r,
            lipschitz_estimate,
        })
    }

    /// Locates `r(t) = 1`, scanning outward from the central section, positive side first.
    fn root(&self, sweep: &SectionSweep, cfg: &PettyConfig) -> Result<(f64, HomothetSolution)> {
        let c = sweep
            .samples
            .iter()
            .position(|s| s.t == 0.0)
            .ok_or_else(|| Error::internal("sweep lacks the central section"))?;
        let central = &sweep.samples[c];
        if (central.r - 1.0).abs() <= 1e-13 {
            return Ok((0.0, self.solve_at(0.0, None, &cfg.planar)?));
        }
        let mut failures = Vec::new();
        let sides: [(Vec<SweepSample>, f64); 2] = [
            (sweep.samples[c..].to_vec(), sweep.t_hi),
            (sweep.samples[..=c].iter().rev().cloned().collect(), sweep.t_lo),
        ];
        for (mut side, end) in sides {
            let mut w = side
                .windows(2)
                .position(|w| (w[0].r - 1.0) * (w[1].r - 1.0) <= 0.0);
            if w.is_none() {
                w = self.probe_end(&mut side, end, cfg);
            }
            let Some(i) = w else { continue };
            match self.refine(&side[i], &side[i + 1], cfg) {
                Ok(found) => return Ok(found),
                Err(e) => failures.push(e.to_string()),
            }
        }
        Err(Error::SweepBracket(if failures.is_empty() {
            format!(
                "r(t) - 1 keeps its sign on the sweep grid (central r = {})",
                central.r
            )
        } else {
            failures.join("; ")
        }))
    }

    /// The last grid section can still hold a large homothet when the ball has
    /// a flat face parallel to the plane; probe geometrically towards the end.
    fn probe_end(&self, side: &mut Vec<SweepSample>, end: f64, cfg: &PettyConfig) -> Option<usize> {
        let last = side.last()?.clone();
        let mut hint = last.theta;
        for j in 1..=48 {
            let t = last.t + (end - last.t) * (1.0 - 0.5f64.powi(j));
            let Ok(sol) = self.solve_at(t, Some(hint), &cfg.planar) else {
                return None;
            };
            hint = sol.theta;
            side.push(sample(t, &sol));
            if sol.r <= 1.0 {
                return Some(side.len() - 2);
            }
        }
        None
    }

    fn refine(&self, a: &SweepSample, b: &SweepSample, cfg: &PettyConfig) -> Result<(f64, HomothetSolution)> {
        let mut hint = a.theta;
        let mut err = None;
        let mut eval = |t: f64| -> f64 {
            match self.solve_at(t, Some(hint), &cfg.planar) {
                Ok(sol) => {
                    hint = sol.theta;
                    sol.r - 1.0
                }
                Err(e) => {
                    err = Some(e);
                    f64::NAN
                }
            }
        };
        let (lo, hi) = brent_bracket(&mut eval, a.t, b.t, a.r - 1.0, b.r - 1.0, cfg.t_tol, 200);
        if let Some(e) = err {
            return Err(e);
        }
        let mut best: Option<(f64, HomothetSolution)> = None;
        for t in [lo, hi] {
            let sol = self.solve_at(t, Some(a.theta), &cfg.planar)?;
            if best.as_ref().is_none_or(|(_, s)| (sol.r - 1.0).abs() < (s.r - 1.0).abs()) {
                best = Some((t, sol));
            }
        }
        best.ok_or_else(|| Error::internal("empty refinement"))
    }

    fn fourth_point(&self, t: f64, sol: &HomothetSolution) -> [f64; 3] {
        let f = self.family.frame();
        let x = f.embed(sol.z, t - self.h0);
        scale3(x, -self.p)
    }
}

fn sample(t: f64, sol: &HomothetSolution) -> SweepSample {
    SweepSample {
        t,
        z: sol.z,
        r: sol.r,
        residual: sol.residuals.iter().cloned().fold(0.0, f64::max),
        theta: sol.theta,
    }
}

fn validate(norm: &NormSpec, a: &[f64], b: &[f64], c: &[f64], tol: f64) -> Result<([Vec<f64>; 3], f64)> {
    if norm.dim() != 3 || a.len() != 3 || b.len() != 3 || c.len() != 3 {
        return Err(Error::input("the sweep needs a 3-dimensional norm and 3-dimensional points"));
    }
    let pts = [a.to_vec(), b.to_vec(), c.to_vec()];
    let d = |x: &[f64], y: &[f64]| norm.eval(&[x[0] - y[0], x[1] - y[1], x[2] - y[2]]);
    let sides = [d(a, b), d(b, c), d(a, c)];
    let p = sides.iter().sum::<f64>() / 3.0;
    if !(p > 0.0) || sides.iter().any(|s| (s - p).abs() > tol * p) {
        return Err(Error::input(format!("points are not equilateral: side lengths {sides:?}")));
    }
    Ok((pts, p))
}

/// Samples `r(t)` on a uniform grid of the non-trivial section offsets.
pub fn sweep_r(norm: &NormSpec, a: &[f64], b: &[f64], c: &[f64], cfg: &PettyConfig) -> Result<SectionSweep> {
    let (pts, p) = validate(norm, a, b, c, cfg.equilateral_tol)?;
    Setup::new(norm, &pts, p, cfg)?.sweep(cfg.grid_size, cfg)
}

pub fn petty_extend(norm: &NormSpec, a: &[f64], b: &[f64], c: &[f64], cfg: &PettyConfig) -> Result<ExtensionResult> {
    let (pts, p) = validate(norm, a, b, c, cfg.equilateral_tol)?;
    if norm.is_smooth_strictly_convex() {
        let res = extend_direct(norm, norm, &pts, p, cfg.grid_size, cfg)?;
        let worst = res.deviations.iter().cloned().fold(0.0, f64::max);
        if worst > cfg.tol * p {
            return Err(Error::NoConvergence(format!(
                "fourth point deviates by {worst:e} (tolerance {:e})",
                cfg.tol * p
            )));
        }
        return Ok(res);
    }
    if cfg.try_direct {
        if let Ok(res) = extend_direct(norm, norm, &pts, p, cfg.grid_size, cfg) {
            if res.deviations.iter().all(|d| *d <= cfg.tol * p) {
                return Ok(res);
            }
        }
    }
    smoothing_sequence(norm, &pts, p, cfg)
}

fn extend_direct(
    solve_norm: &NormSpec,
    norm: &NormSpec,
    pts: &[Vec<f64>; 3],
    p: f64,
    grid: usize,
    cfg: &PettyConfig,
) -> Result<ExtensionResult> {
    let setup = Setup::new(solve_norm, pts, p, cfg)?;
    let sweep = setup.sweep(grid, cfg)?;
    let (t_star, sol) = setup.root(&sweep, cfg)?;
    let d = setup.fourth_point(t_star, &sol);
    Ok(ExtensionResult {
        d,
        deviations: deviations(norm, pts, p, &d),
        p,
        method: ExtensionMethod::DirectSolve,
        t_star,
        r_star: sol.r,
        sweep,
        smoothing: Vec::new(),
    })
}

fn deviations(norm: &NormSpec, pts: &[Vec<f64>; 3], p: f64, d: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (o, x) in out.iter_mut().zip(pts) {
        *o = (norm.eval(&sub3(d, x)) - p).abs();
    }
    out
}

fn smoothing_sequence(norm: &NormSpec, pts: &[Vec<f64>; 3], p: f64, cfg: &PettyConfig) -> Result<ExtensionResult> {
    let mut anchors = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let d = sub3(&pts[i], &pts[j]);
                anchors.push(scale3(d, 1.0 / norm.eval(&d)).to_vec());
            }
        }
    }
    let list = pts.to_vec();
    let mut levels = Vec::new();
    for &k in &cfg.smoothing_levels {
        let params = SmoothingParams {
            epsilon: 1.0 / k as f64,
            anchor_tolerance: 1e-9,
            sample_count: cfg.smoothing_samples,
            seed: cfg.seed ^ k as u64,
        };
        let attempt = smooth_approx(norm, &anchors, &params)
            .and_then(|sm| extend_direct(&sm, norm, pts, p, cfg.smoothing_grid, cfg).map(|r| (sm, r)));
        let (sm, res) = match attempt {
            Ok(x) => x,
            Err(e) => {
                levels.push(SmoothingLevel {
                    k,
                    d: None,
                    deviation_original: None,
                    deviation_smoothed: None,
                    central_r: None,
                    error: Some(e.to_string()),
                });
                continue;
            }
        };
        let dev_s = deviations(&sm, pts, p, &res.d).iter().cloned().fold(0.0, f64::max) / p;
        let dev_o = res.deviations.iter().cloned().fold(0.0, f64::max) / p;
        levels.push(SmoothingLevel {
            k,
            d: Some(res.d),
            deviation_original: Some(dev_o),
            deviation_smoothed: Some(dev_s),
            central_r: Some(res.sweep.central_r),
            error: None,
        });
        if k < cfg.min_polish_level {
            continue;
        }
        let polished = polish(norm, &list, p, &res.d, cfg.seed);
        let polished_dev = deviations(norm, pts, p, &polished);
        if polished_dev.iter().all(|d| *d <= cfg.tol * p) {
            let mut out = res;
            out.d = polished;
            out.deviations = polished_dev;
            out.method = ExtensionMethod::SmoothingSequence;
            out.smoothing = levels;
            return Ok(out);
        }
    }
    Err(Error::NoConvergence(format!(
        "smoothing sequence did not reach tolerance {:e}; levels: {}",
        cfg.tol,
        serde_json::to_string(&levels).unwrap_or_default()
    )))
}

/// Local refinement of a fourth point in the original norm.
fn polish(norm: &NormSpec, pts: &[Vec<f64>], p: f64, d: &[f64; 3], seed: u64) -> [f64; 3] {
    use rand::SeedableRng;
    let f = |x: &[f64]| extension_residual(norm, pts, p, x);
    let start = d.to_vec();
    let x = if norm.is_polyhedral() {
        polish_polyhedral(norm, pts, p, &start).unwrap_or(start)
    } else {
        let x = newton_polish(norm, pts, p, [start[0], start[1], start[2]]).to_vec();
        if f(&x) <= 1e-13 * p {
            x
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let r0 = f(&x).max(1e-12 * p);
            pattern_search(&f, x, 4.0 * r0, 1e-15 * p, 20_000, &mut rng)
        }
    };
    [x[0], x[1], x[2]]
}

/// Damped Newton on `‖x − aᵢ‖ = p` with a central-difference Jacobian.
fn newton_polish(norm: &NormSpec, pts: &[Vec<f64>], p: f64, mut x: [f64; 3]) -> [f64; 3] {
    let g = |x: &[f64; 3]| -> nalgebra::Vector3<f64> {
        nalgebra::Vector3::from_fn(|i, _| norm.eval(&sub3(x, &pts[i])) - p)
    };
    let h = 1e-7 * p;
    let mut gx = g(&x);
    for _ in 0..50 {
        if gx.amax() <= 1e-15 * p {
            break;
        }
        let mut jac = nalgebra::Matrix3::zeros();
        for k in 0..3 {
            let (mut xp, mut xm) = (x, x);
            xp[k] += h;
            xm[k] -= h;
            jac.set_column(k, &((g(&xp) - g(&xm)) / (2.0 * h)));
        }
        let Some(step) = jac.lu().solve(&gx) else { break };
        let mut lambda = 1.0;
        let mut improved = false;
        while lambda > 1e-4 {
            let y = [x[0] - lambda * step[0], x[1] - lambda * step[1], x[2] - lambda * step[2]];
            let gy = g(&y);
            if gy.amax() < gx.amax() {
                x = y;
                gx = gy;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if !improved {
            break;
        }
    }
    x
}

fn sub3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
