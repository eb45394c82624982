//! Planar solvers: boundary extents, inscribed triangle homothets and
//! circumcircles of equilateral triples in arbitrary planar norms.
//!
//! All three rest on one parametrization. A boundary point `x(θ)` is found by
//! a ray from the body's interior point at angle `θ`. Anchoring the homothet
//! at vertex `k`, the other two vertices are reached from `x` along the edge
//! directions `u₁ = p_{j₁} − p_k` and `u₂ = p_{j₂} − p_k`; the extents
//! `f(θ)`, `g(θ)` along those directions coincide exactly when
//! `x, x + r·u₁, x + r·u₂` all lie on the boundary with `r = f = g`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{ray_to_boundary, ConvexBody2D, NormBall, NormSpec};
use crate::roots::{bisect_predicate, brent_bracket};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarConfig {
    /// Residual tolerance for boundary membership of the homothet vertices.
    pub tol: f64,
    /// Relative tolerance for accepting an input triple as equilateral.
    pub equilateral_tol: f64,
    /// Boundary samples per scan.
    pub samples: usize,
    /// Twice the signed area must exceed `degeneracy · scale²`.
    pub degeneracy: f64,
    /// Half-width, in samples, of the window searched around a warm-start angle.
    pub hint_window: usize,
}

impl Default for PlanarConfig {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            equilateral_tol: 1e-9,
            samples: 256,
            degeneracy: 1e-12,
            hint_window: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triangle2D {
    pub p: [[f64; 2]; 3],
}

impl Triangle2D {
    pub fn new(p0: [f64; 2], p1: [f64; 2], p2: [f64; 2]) -> Result<Self> {
        Self::with_threshold([p0, p1, p2], PlanarConfig::default().degeneracy)
    }

    pub fn with_threshold(p: [[f64; 2]; 3], threshold: f64) -> Result<Self> {
        if p.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::input("triangle coordinates must be finite"));
        }
        let spread = |i: usize| {
            let lo = p.iter().map(|q| q[i]).fold(f64::INFINITY, f64::min);
            let hi = p.iter().map(|q| q[i]).fold(f64::NEG_INFINITY, f64::max);
            hi - lo
        };
        let scale = spread(0).max(spread(1));
        let area2 = cross(sub(p[1], p[0]), sub(p[2], p[0]));
        if !(area2.abs() > threshold * scale * scale) || scale == 0.0 {
            return Err(Error::input(format!("degenerate triangle {p:?}")));
        }
        Ok(Self { p })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomothetSolution {
    pub z: [f64; 2],
    pub r: f64,
    /// Boundary distances of `z + r·p_i`.
    pub residuals: [f64; 3],
    /// Boundary angle of the anchor vertex, seen from the interior point.
    pub theta: f64,
}

impl HomothetSolution {
    pub fn vertices(&self, tri: &Triangle2D) -> [[f64; 2]; 3] {
        tri.p.map(|q| [self.z[0] + self.r * q[0], self.z[1] + self.r * q[1]])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circumcircle {
    pub center: [f64; 2],
    pub radius: f64,
    /// Largest `|‖x − center‖ − radius|` over the three points.
    pub deviation: f64,
    /// Common side length of the input triple.
    pub p: f64,
    /// Homothet of the rescaled triple inscribed in the unit circle.
    pub homothet: HomothetSolution,
}

/// Which vertex rides the boundary parametrization, and an optional warm start.
#[derive(Clone, Debug, Default)]
pub struct InscribeOptions {
    pub anchor: usize,
    pub hint: Option<f64>,
}

/// `max{t ≥ 0 : x + t·v in the body}`.
pub fn boundary_extent<B: ConvexBody2D + ?Sized>(body: &B, x: [f64; 2], v: [f64; 2]) -> Result<f64> {
    if !(v[0].is_finite() && v[1].is_finite()) || (v[0] == 0.0 && v[1] == 0.0) {
        return Err(Error::input("extent direction must be a nonzero finite vector"));
    }
    if !body.contains(x) {
        return Err(Error::input(format!("{x:?} is not a member of the body")));
    }
    body.ray_exit(x, v)
}

pub fn inscribe_homothet_2d<B: ConvexBody2D + ?Sized>(
    body: &B,
    tri: &Triangle2D,
    cfg: &PlanarConfig,
) -> Result<HomothetSolution> {
    inscribe_homothet_2d_with(body, tri, cfg, &InscribeOptions::default())
}

pub fn inscribe_homothet_2d_with<B: ConvexBody2D + ?Sized>(
    body: &B,
    tri: &Triangle2D,
    cfg: &PlanarConfig,
    opts: &InscribeOptions,
) -> Result<HomothetSolution> {
    if opts.anchor > 2 {
        return Err(Error::input("anchor vertex index must be 0, 1 or 2"));
    }
    let prob = Problem::new(body, tri, opts.anchor);
    let n = cfg.samples.max(8);
    let step = std::f64::consts::TAU / n as f64;
    let mut last_err = None;
    if let Some(h) = opts.hint {
        let w = cfg.hint_window as f64 * step;
        match prob.solve_on_arc(h - w, h + w, 2 * cfg.hint_window + 1, false, cfg) {
            Ok(sol) => return Ok(sol),
            Err(e) => last_err = Some(e),
        }
    }
    match prob.solve_on_arc(0.0, std::f64::consts::TAU, n, true, cfg) {
        Ok(sol) => Ok(sol),
        Err(Error::NoBracket(msg)) => Err(Error::NoHomothet(match last_err {
            Some(_) => format!("{msg} (warm start also failed)"),
            None => msg,
        })),
        Err(e) => Err(e),
    }
}

/// Inscribes `tri` with the anchor vertex `p₀` restricted to the boundary arc
/// between the directions `p₀ − p₁` and `p₀ − p₂`. For a symmetric body with
/// interior point 0 and a triangle whose sides have norm 1, this is the arc on
/// which the extent difference is guaranteed to change sign, and the root has
/// ratio `r ≥ 1`.
pub fn inscribe_on_difference_arc<B: ConvexBody2D + ?Sized>(
    body: &B,
    tri: &Triangle2D,
    cfg: &PlanarConfig,
) -> Result<HomothetSolution> {
    // anchor p₀: f along p₂ − p₀, g along p₁ − p₀
    let prob = Problem {
        body,
        anchor: tri.p[0],
        u1: sub(tri.p[2], tri.p[0]),
        u2: sub(tri.p[1], tri.p[0]),
        tri: *tri,
    };
    let ab = sub(tri.p[0], tri.p[1]);
    let ac = sub(tri.p[0], tri.p[2]);
    let t1 = ab[1].atan2(ab[0]);
    let mut gap = ac[1].atan2(ac[0]) - t1;
    if gap > std::f64::consts::PI {
        gap -= std::f64::consts::TAU;
    } else if gap < -std::f64::consts::PI {
        gap += std::f64::consts::TAU;
    }
    prob.solve_on_arc(t1, t1 + gap, cfg.samples.max(8), false, cfg)
        .map_err(|e| match e {
            Error::NoBracket(m) => Error::NoBracket(format!("no sign change on the difference arc: {m}")),
            other => other,
        })
}

/// Circumcircle through an equilateral triple with radius at most the side length.
pub fn circumcircle_equilateral(
    norm: &NormSpec,
    a: [f64; 2],
    b: [f64; 2],
    c: [f64; 2],
    cfg: &PlanarConfig,
) -> Result<Circumcircle> {
    let ball = NormBall::new(norm)?;
    let dist = |x: [f64; 2], y: [f64; 2]| norm.eval(&sub(x, y));
    let sides = [dist(a, b), dist(b, c), dist(a, c)];
    let p = sides.iter().sum::<f64>() / 3.0;
    if !(p > 0.0) || sides.iter().any(|s| (s - p).abs() > cfg.equilateral_tol * p) {
        return Err(Error::input(format!(
            "points are not equilateral: side lengths {sides:?}"
        )));
    }
    let tri = Triangle2D::with_threshold(
        [scale(a, 1.0 / p), scale(b, 1.0 / p), scale(c, 1.0 / p)],
        cfg.degeneracy,
    )?;
    let sol = inscribe_on_difference_arc(&ball, &tri, cfg)?;
    if sol.r < 1.0 - 1e-8 {
        return Err(Error::internal(format!(
            "inscribed homothet ratio {} is below 1 on a symmetric unit ball",
            sol.r
        )));
    }
    let center = scale(sol.z, -p / sol.r);
    let radius = p / sol.r;
    let deviation = [a, b, c]
        .iter()
        .map(|x| (dist(*x, center) - radius).abs())
        .fold(0.0, f64::max);
    Ok(Circumcircle {
        center,
        radius,
        deviation,
        p,
        homothet: sol,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Class {
    Pos,
    Neg,
    Zero,
    Dead,
}

struct Sample {
    theta: f64,
    h: f64,
    class: Class,
}

struct Problem<'a, B: ConvexBody2D + ?Sized> {
    body: &'a B,
    tri: Triangle2D,
    anchor: [f64; 2],
    u1: [f64; 2],
    u2: [f64; 2],
}

impl<'a, B: ConvexBody2D + ?Sized> Problem<'a, B> {
    fn new(body: &'a B, tri: &Triangle2D, k: usize) -> Self {
        let (j1, j2) = ((k + 1) % 3, (k + 2) % 3);
        Self {
            body,
            tri: *tri,
            anchor: tri.p[k],
            u1: sub(tri.p[j1], tri.p[k]),
            u2: sub(tri.p[j2], tri.p[k]),
        }
    }

    fn point(&self, theta: f64) -> Result<[f64; 2]> {
        ray_to_boundary(self.body, self.body.interior_point(), [theta.cos(), theta.sin()])
    }

    fn extents(&self, theta: f64) -> Result<(f64, f64)> {
        let x = self.point(theta)?;
        Ok((self.body.ray_exit(x, self.u1)?, self.body.ray_exit(x, self.u2)?))
    }

    fn h(&self, theta: f64) -> Result<f64> {
        let (f, g) = self.extents(theta)?;
        Ok(f - g)
    }

    /// Scans `n` samples of `[t0, t1]` (the closed circle when `periodic`) and
    /// returns the first valid solution found.
    fn solve_on_arc(
        &self,
        t0: f64,
        t1: f64,
        n: usize,
        periodic: bool,
        cfg: &PlanarConfig,
    ) -> Result<HomothetSolution> {
        let count = if periodic { n } else { n.max(2) };
        let denom = if periodic { n as f64 } else { (count - 1) as f64 };
        let mut raw = Vec::with_capacity(count);
        let mut emax = 0.0f64;
        for i in 0..count {
            let theta = t0 + (t1 - t0) * i as f64 / denom;
            let (f, g) = self.extents(theta)?;
            emax = emax.max(f).max(g);
            raw.push((theta, f, g));
        }
        if !(emax > 0.0) {
            return Err(Error::NoBracket("both extents vanish on the whole arc".into()));
        }
        let dead = 1e-8 * emax;
        let zero = 1e-11 * emax;
        let samples: Vec<Sample> = raw
            .into_iter()
            .map(|(theta, f, g)| {
                let h = f - g;
                let class = if f.max(g) <= dead {
                    Class::Dead
                } else if h.abs() <= zero {
                    Class::Zero
                } else if h > 0.0 {
                    Class::Pos
                } else {
                    Class::Neg
                };
                Sample { theta, h, class }
            })
            .collect();

        let mut failures = Vec::new();
        for cand in candidates(&samples, periodic) {
            let theta = match cand {
                Candidate::Crossing(i, j) => {
                    let mut b = Sample { ..samples[j] };
                    if periodic && j < i {
                        // the pair wraps around the end of the scan
                        b.theta += std::f64::consts::TAU;
                    }
                    self.refine_crossing(&samples[i], &b, zero)
                }
                Candidate::ZeroRun(first, last, lo_out, hi_out) => {
                    self.zero_run_midpoint(&samples, first, last, lo_out, hi_out, zero, periodic)
                }
            };
            let theta = match theta {
                Ok(t) => t,
                Err(e) => {
                    failures.push(e.to_string());
                    continue;
                }
            };
            match self.finish(theta, cfg) {
                Ok(sol) => return Ok(sol),
                Err(e) => failures.push(e.to_string()),
            }
        }
        Err(Error::NoBracket(if failures.is_empty() {
            "no sign change of the extent difference on the scanned arc".into()
        } else {
            format!("all candidate roots failed: {}", failures.join("; "))
        }))
    }

    fn refine_crossing(&self, a: &Sample, b: &Sample, zero: f64) -> Result<f64> {
        let mut err = None;
        let (lo, hi) = brent_bracket(
            |t| match self.h(t) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    0.0
                }
            },
            a.theta,
            b.theta,
            a.h,
            b.h,
            1e-14,
            200,
        );
        if let Some(e) = err {
            return Err(e);
        }
        let root = 0.5 * (lo + hi);
        // a flat stretch of f − g inside the bracket: take its midpoint
        let delta = (b.theta - a.theta).abs() * 1e-3;
        let (lt, rt) = (root - delta.copysign(b.theta - a.theta), root + delta.copysign(b.theta - a.theta));
        if self.h(lt)?.abs() <= zero && self.h(rt)?.abs() <= zero {
            let is_zero = |t: f64| self.h(t).map(|v| v.abs() <= zero).unwrap_or(false);
            let (_, left) = bisect_predicate(|t| !is_zero(t), a.theta, lt, 1e-13);
            let (_, right) = bisect_predicate(is_zero, rt, b.theta, 1e-13);
            return Ok(0.5 * (left + right));
        }
        Ok(root)
    }

    #[allow(clippy::too_many_arguments)]
    fn zero_run_midpoint(
        &self,
        s: &[Sample],
        first: usize,
        last: usize,
        lo_out: Option<usize>,
        hi_out: Option<usize>,
        zero: f64,
        periodic: bool,
    ) -> Result<f64> {
        let span = if periodic { std::f64::consts::TAU } else { 0.0 };
        let unwrap = |i: usize, base: f64| {
            let mut t = s[i].theta;
            if periodic {
                while t < base {
                    t += span;
                }
            }
            t
        };
        let t_first = s[first].theta;
        let t_last = unwrap(last, t_first);
        let is_zero = |t: f64| self.h(t).map(|v| v.abs() <= zero).unwrap_or(false);
        let left = match lo_out {
            Some(i) => {
                let mut t = s[i].theta;
                if periodic && t > t_first {
                    t -= span;
                }
                bisect_predicate(|x| !is_zero(x), t, t_first, 1e-13).1
            }
            None => t_first,
        };
        let right = match hi_out {
            Some(i) => {
                let t = unwrap(i, t_last);
                bisect_predicate(is_zero, t_last, t, 1e-13).0
            }
            None => t_last,
        };
        Ok(0.5 * (left + right))
    }

    fn finish(&self, theta: f64, cfg: &PlanarConfig) -> Result<HomothetSolution> {
        let x = self.point(theta)?;
        let (f, g) = (self.body.ray_exit(x, self.u1)?, self.body.ray_exit(x, self.u2)?);
        let r = 0.5 * (f + g);
        // a vanishing ratio is the trivial crossing where both sides point outward
        let c = self.body.interior_point();
        let reach = (x[0] - c[0]).hypot(x[1] - c[1]);
        let side = self.u1[0].hypot(self.u1[1]).max(self.u2[0].hypot(self.u2[1]));
        if !(r * side > 1e-9 * reach) {
            return Err(Error::NoHomothet(format!("degenerate ratio r = {r} at θ = {theta}")));
        }
        let z = [x[0] - r * self.anchor[0], x[1] - r * self.anchor[1]];
        let mut residuals = [0.0; 3];
        for (res, q) in residuals.iter_mut().zip(self.tri.p) {
            *res = self.body.boundary_distance([z[0] + r * q[0], z[1] + r * q[1]])?;
        }
        let worst = residuals.iter().cloned().fold(0.0, f64::max);
        if !(worst <= cfg.tol) {
            return Err(Error::NoHomothet(format!(
                "residual {worst:e} exceeds tolerance {:e} at θ = {theta}",
                cfg.tol
            )));
        }
        Ok(HomothetSolution {
            z,
            r,
            residuals,
            theta,
        })
    }
}

enum Candidate {
    /// Adjacent strict sign change between two sample indices.
    Crossing(usize, usize),
    /// Run of zero samples `first..=last`, with the nonzero neighbours if any.
    ZeroRun(usize, usize, Option<usize>, Option<usize>),
}

/// Sign changes and zero runs of the sampled `f − g` not separated by a dead
/// stretch, in scan order.
fn candidates(s: &[Sample], periodic: bool) -> Vec<Candidate> {
    let n = s.len();
    let mut out = Vec::new();
    if s.iter().all(|x| x.class == Class::Zero) {
        out.push(Candidate::ZeroRun(0, n - 1, None, None));
        return out;
    }
    let next = |i: usize| -> Option<usize> {
        if i + 1 < n {
            Some(i + 1)
        } else if periodic {
            Some(0)
        } else {
            None
        }
    };
    let prev = |i: usize| -> Option<usize> {
        if i > 0 {
            Some(i - 1)
        } else if periodic {
            Some(n - 1)
        } else {
            None
        }
    };
    for i in 0..n {
        match s[i].class {
            Class::Pos | Class::Neg => {
                if let Some(j) = next(i) {
                    let opposite = matches!(
                        (s[i].class, s[j].class),
                        (Class::Pos, Class::Neg) | (Class::Neg, Class::Pos)
                    );
                    if opposite {
                        out.push(Candidate::Crossing(i, j));
                    }
                }
            }
            Class::Zero => {
                // start of a zero run
                let starts = match prev(i) {
                    Some(p) => s[p].class != Class::Zero,
                    None => true,
                };
                if !starts {
                    continue;
                }
                let mut last = i;
                while let Some(j) = next(last) {
                    if s[j].class != Class::Zero || j == i {
                        break;
                    }
                    last = j;
                }
                let lo = prev(i).filter(|&p| s[p].class != Class::Dead);
                let hi = next(last).filter(|&q| s[q].class != Class::Dead);
                let dead_lo = prev(i).map(|p| s[p].class == Class::Dead).unwrap_or(false);
                let dead_hi = next(last).map(|q| s[q].class == Class::Dead).unwrap_or(false);
                if !(dead_lo || dead_hi) {
                    out.push(Candidate::ZeroRun(i, last, lo, hi));
                }
            }
            Class::Dead => {}
        }
    }
    out
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn scale(a: [f64; 2], s: f64) -> [f64; 2] {
    [a[0] * s, a[1] * s]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{LevelSetBody, MembershipOracle};

    const S3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn extent_examples() {
        let e = NormSpec::euclidean(2);
        let disc = NormBall::new(&e).unwrap();
        let f = boundary_extent(&disc, [-1.0, 0.0], [1.0, 0.0]).unwrap();
        assert!((f - 2.0).abs() < 1e-12);
        assert_eq!(boundary_extent(&disc, [0.0, 1.0], [1.0, 0.0]).unwrap(), 0.0);
        assert!(boundary_extent(&disc, [2.0, 0.0], [1.0, 0.0]).is_err());
    }

    #[test]
    fn disc_inscribes_equilateral_with_ratio_sqrt3() {
        let e = NormSpec::euclidean(2);
        let disc = NormBall::new(&e).unwrap();
        // side 1, centered at the circumcenter
        let c = 1.0 / S3;
        let tri = Triangle2D::new(
            [c, 0.0],
            [-c / 2.0, 0.5],
            [-c / 2.0, -0.5],
        )
        .unwrap();
        let sol = inscribe_homothet_2d(&disc, &tri, &PlanarConfig::default()).unwrap();
        assert!((sol.r - S3).abs() < 1e-9, "{sol:?}");
        assert!(sol.z[0].abs() < 1e-9 && sol.z[1].abs() < 1e-9);
    }

    #[test]
    fn triangle_on_boundary_is_identity() {
        let ellipse = |q: [f64; 2]| (q[0] * q[0] / 4.0 + q[1] * q[1]).sqrt();
        let body = LevelSetBody::new([0.0, 0.0], ellipse, |d| d[0].abs().max(d[1].abs()) / 2.0);
        let tri = Triangle2D::new([2.0, 0.0], [0.0, 1.0], [-1.2, -0.8]).unwrap();
        let sol = inscribe_homothet_2d(&body, &tri, &PlanarConfig::default()).unwrap();
        assert!((sol.r - 1.0).abs() < 1e-8, "{sol:?}");
        assert!(sol.z[0].abs() < 1e-8 && sol.z[1].abs() < 1e-8);
    }

    #[test]
    fn ellipse_solution_is_anchor_independent() {
        let ellipse = |q: [f64; 2]| (q[0] * q[0] / 4.0 + q[1] * q[1]).sqrt();
        let body = LevelSetBody::new([0.0, 0.0], ellipse, |d| d[0].abs().max(d[1].abs()) / 2.0);
        let tri = Triangle2D::new([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]).unwrap();
        let cfg = PlanarConfig::default();
        let s0 = inscribe_homothet_2d_with(&body, &tri, &cfg, &InscribeOptions { anchor: 0, hint: None }).unwrap();
        let s1 = inscribe_homothet_2d_with(&body, &tri, &cfg, &InscribeOptions { anchor: 1, hint: None }).unwrap();
        let s2 = inscribe_homothet_2d_with(&body, &tri, &cfg, &InscribeOptions { anchor: 2, hint: None }).unwrap();
        for s in [&s1, &s2] {
            let d = (s.z[0] - s0.z[0]).hypot(s.z[1] - s0.z[1]) + (s.r - s0.r).abs();
            assert!(d < 1e-8, "{s0:?} {s:?}");
        }
        assert!(s0.residuals.iter().all(|r| *r <= 1e-9));
    }

    #[test]
    fn membership_only_body() {
        let body = MembershipOracle::new([0.1, 0.0], |q| q[0] * q[0] + 4.0 * q[1] * q[1] <= 1.0)
            .with_tolerance(1e-12);
        let tri = Triangle2D::new([0.0, 0.0], [1.0, 0.0], [0.3, 0.7]).unwrap();
        let cfg = PlanarConfig {
            tol: 1e-9,
            ..Default::default()
        };
        let sol = inscribe_homothet_2d(&body, &tri, &cfg).unwrap();
        for v in sol.vertices(&tri) {
            let q = v[0] * v[0] + 4.0 * v[1] * v[1];
            assert!((q - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn euclidean_circumradius() {
        let e = NormSpec::euclidean(2);
        let cc = circumcircle_equilateral(
            &e,
            [0.0, 0.0],
            [1.0, 0.0],
            [0.5, S3 / 2.0],
            &PlanarConfig::default(),
        )
        .unwrap();
        assert!((cc.radius - 1.0 / S3).abs() < 1e-9);
        assert!(cc.deviation < 1e-9);
        assert!((cc.center[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn polyhedral_circumcircles() {
        let cfg = PlanarConfig::default();
        let cc = circumcircle_equilateral(&NormSpec::linf(2), [0.0, 0.0], [1.0, 0.0], [0.0, 1.0], &cfg)
            .unwrap();
        assert!(cc.radius <= 1.0 + 1e-12 && cc.deviation < 1e-9, "{cc:?}");
        let cc = circumcircle_equilateral(&NormSpec::l1(2), [0.0, 0.0], [1.0, 1.0], [1.0, -1.0], &cfg)
            .unwrap();
        assert!(cc.radius <= 2.0 + 1e-12 && cc.deviation < 1e-9, "{cc:?}");
    }

    #[test]
    fn rejects_bad_input() {
        let e = NormSpec::euclidean(2);
        let cfg = PlanarConfig::default();
        assert!(matches!(
            circumcircle_equilateral(&e, [0.0, 0.0], [1.0, 0.0], [0.0, 2.0], &cfg),
            Err(Error::Input(_))
        ));
        assert!(Triangle2D::new([0.0, 0.0], [1.0, 1.0], [2.0, 2.0]).is_err());
    }
}
