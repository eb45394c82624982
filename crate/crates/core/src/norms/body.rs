//! Planar convex bodies given by an interior point and membership queries.
//!
//! Bodies need not be centrally symmetric: sections of a three-dimensional
//! unit ball by planes that miss the origin are the main consumer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::NormSpec;
use crate::error::{Error, Result};
use crate::roots::{bisect_predicate, brent_bracket};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_RADIUS: f64 = 1e6;

pub trait ConvexBody2D {
    fn interior_point(&self) -> [f64; 2];

    fn contains(&self, x: [f64; 2]) -> bool;

    fn tolerance(&self) -> f64 {
        DEFAULT_TOLERANCE
    }

    fn max_radius(&self) -> f64 {
        DEFAULT_MAX_RADIUS
    }

    /// Largest `s ≥ 0` with `origin + s·dir` in the body, to within tolerance.
    /// `origin` must be a member.
    fn ray_exit(&self, origin: [f64; 2], dir: [f64; 2]) -> Result<f64> {
        let len = dir[0].hypot(dir[1]);
        let at = |s: f64| [origin[0] + s * dir[0], origin[1] + s * dir[1]];
        let mut hi = 1.0 / len;
        while self.contains(at(hi)) {
            hi *= 2.0;
            if hi * len > self.max_radius() {
                return Err(Error::Unbounded(format!(
                    "ray from {origin:?} along {dir:?} stays inside beyond radius {}",
                    self.max_radius()
                )));
            }
        }
        let (lo, _) = bisect_predicate(|s| self.contains(at(s)), 0.0, hi, self.tolerance() / len);
        Ok(lo)
    }

    /// Euclidean distance from `q` to the boundary, measured along the ray
    /// from the interior point through `q`.
    fn boundary_distance(&self, q: [f64; 2]) -> Result<f64> {
        let c = self.interior_point();
        let d = [q[0] - c[0], q[1] - c[1]];
        let len = d[0].hypot(d[1]);
        if len == 0.0 {
            return Err(Error::input("point coincides with the interior reference point"));
        }
        let s = self.ray_exit(c, d)?;
        Ok((s - 1.0).abs() * len)
    }
}

/// Boundary point hit by the ray `origin + s·dir`, `s ≥ 0`.
pub fn ray_to_boundary<B: ConvexBody2D + ?Sized>(
    body: &B,
    origin: [f64; 2],
    dir: [f64; 2],
) -> Result<[f64; 2]> {
    if !(dir[0].is_finite() && dir[1].is_finite()) || (dir[0] == 0.0 && dir[1] == 0.0) {
        return Err(Error::input("ray direction must be a nonzero finite vector"));
    }
    if !body.contains(origin) {
        return Err(Error::input(format!("ray origin {origin:?} is not in the body")));
    }
    let s = body.ray_exit(origin, dir)?;
    Ok([origin[0] + s * dir[0], origin[1] + s * dir[1]])
}

/// Body given by a bare membership predicate.
pub struct MembershipOracle<'a> {
    pred: Box<dyn Fn([f64; 2]) -> bool + 'a>,
    interior: [f64; 2],
    tolerance: f64,
    max_radius: f64,
}

impl<'a> MembershipOracle<'a> {
    pub fn new(interior: [f64; 2], pred: impl Fn([f64; 2]) -> bool + 'a) -> Self {
        Self {
            pred: Box::new(pred),
            interior,
            tolerance: DEFAULT_TOLERANCE,
            max_radius: DEFAULT_MAX_RADIUS,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_max_radius(mut self, max_radius: f64) -> Self {
        self.max_radius = max_radius;
        self
    }
}

impl ConvexBody2D for MembershipOracle<'_> {
    fn interior_point(&self) -> [f64; 2] {
        self.interior
    }

    fn contains(&self, x: [f64; 2]) -> bool {
        (self.pred)(x)
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn max_radius(&self) -> f64 {
        self.max_radius
    }
}

/// Sublevel set `{q : φ(q) ≤ 1}` of a convex function with a known linear
/// growth bound `φ(o + s·d) ≥ s·growth(d) − φ(o)`; rays are resolved by Brent's
/// method instead of bisection.
pub struct LevelSetBody<'a> {
    phi: Box<dyn Fn([f64; 2]) -> f64 + 'a>,
    growth: Box<dyn Fn([f64; 2]) -> f64 + 'a>,
    interior: [f64; 2],
    tolerance: f64,
}

impl<'a> LevelSetBody<'a> {
    pub fn new(
        interior: [f64; 2],
        phi: impl Fn([f64; 2]) -> f64 + 'a,
        growth: impl Fn([f64; 2]) -> f64 + 'a,
    ) -> Self {
        Self {
            phi: Box::new(phi),
            growth: Box::new(growth),
            interior,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_interior(mut self, interior: [f64; 2]) -> Self {
        self.interior = interior;
        self
    }

    pub fn level(&self, x: [f64; 2]) -> f64 {
        (self.phi)(x)
    }
}

impl ConvexBody2D for LevelSetBody<'_> {
    fn interior_point(&self) -> [f64; 2] {
        self.interior
    }

    fn contains(&self, x: [f64; 2]) -> bool {
        (self.phi)(x) <= 1.0 + self.tolerance
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn ray_exit(&self, origin: [f64; 2], dir: [f64; 2]) -> Result<f64> {
        let phi0 = (self.phi)(origin);
        let growth = (self.growth)(dir);
        if !(growth > 0.0) {
            return Err(Error::Unbounded(format!(
                "level set has no growth along {dir:?}"
            )));
        }
        let bound = (1.0 + phi0.max(0.0)) / growth;
        level_exit(&*self.phi, origin, dir, phi0, bound, self.max_radius())
    }
}

/// Largest root of `φ(o + s·d) = 1` on `[0, bound]`, member side.
fn level_exit(
    phi: &dyn Fn([f64; 2]) -> f64,
    o: [f64; 2],
    d: [f64; 2],
    phi0: f64,
    bound: f64,
    max_radius: f64,
) -> Result<f64> {
    let g = |s: f64| phi([o[0] + s * d[0], o[1] + s * d[1]]) - 1.0;
    let (mut a, mut ga) = (0.0, phi0 - 1.0);
    // Near the boundary the level is only known to about 1e-15, so a root
    // search from s = 0 can latch onto rounding noise. Step inward at growing
    // distances until the level is clearly below 1; a nearly tangent chord
    // over a flat stretch can need a long step before that shows.
    const CLEAR: f64 = 1e-12;
    const FLAT: f64 = 1e-14;
    if ga > -CLEAR {
        const PROBES: [f64; 10] = [1e-13, 1e-11, 1e-9, 1e-7, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5];
        let mut inside = None;
        // last probe still on the boundary level, and the first one beyond it
        let mut flat = None;
        let mut beyond = 2.0 * bound;
        for k in PROBES {
            let s = k * bound;
            let v = g(s);
            if v < -CLEAR {
                inside = Some((s, v));
                break;
            }
            if v > FLAT {
                beyond = s;
                break;
            }
            flat = Some(s);
        }
        match (inside, flat) {
            (Some((s, v)), _) => {
                a = s;
                ga = v;
            }
            (None, Some(s)) => {
                // Either the ray runs along a flat piece of the boundary, or it
                // leaves a curved boundary tangentially and the level rises
                // quadratically; halfway along, a flat piece is still at the
                // noise floor while a curved one has risen to about a quarter.
                let end = bisect_predicate(|t| g(t) <= FLAT, s, beyond, 1e-15 * bound).0;
                return Ok(if g(0.5 * end) <= FLAT / 16.0 { end } else { 0.0 });
            }
            (None, None) => return Ok(0.0),
        }
    }
    let mut b = bound;
    let mut gb = g(b);
    while gb <= 0.0 {
        b *= 2.0;
        let len = d[0].hypot(d[1]);
        if b * len > max_radius {
            return Err(Error::Unbounded(format!(
                "ray from {o:?} along {d:?} stays inside beyond radius {max_radius}"
            )));
        }
        gb = g(b);
    }
    let (lo, _) = brent_bracket(g, a, b, ga, gb, 1e-15 * b, 200);
    Ok(lo)
}

/// Unit ball of a planar norm, centered at the origin.
pub struct NormBall<'a> {
    spec: &'a NormSpec,
    tolerance: f64,
}

impl<'a> NormBall<'a> {
    pub fn new(spec: &'a NormSpec) -> Result<Self> {
        if spec.dim() != 2 {
            return Err(Error::input(format!(
                "planar body needs a 2-dimensional norm, got dim {}",
                spec.dim()
            )));
        }
        Ok(Self {
            spec,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn spec(&self) -> &NormSpec {
        self.spec
    }
}

impl ConvexBody2D for NormBall<'_> {
    fn interior_point(&self) -> [f64; 2] {
        [0.0, 0.0]
    }

    fn contains(&self, x: [f64; 2]) -> bool {
        self.spec.eval(&x) <= 1.0 + self.tolerance
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn ray_exit(&self, origin: [f64; 2], dir: [f64; 2]) -> Result<f64> {
        let phi0 = self.spec.eval(&origin);
        let growth = self.spec.eval(&dir);
        let bound = (1.0 + phi0) / growth;
        level_exit(
            &|x| self.spec.eval(&x),
            origin,
            dir,
            phi0,
            bound,
            self.max_radius(),
        )
    }

    fn boundary_distance(&self, q: [f64; 2]) -> Result<f64> {
        let n = self.spec.eval(&q);
        if n == 0.0 {
            return Err(Error::input("point coincides with the interior reference point"));
        }
        Ok((1.0 / n - 1.0).abs() * q[0].hypot(q[1]))
    }
}

/// Samples the two body invariants: a margin ball around the interior point,
/// and convexity of the membership region along random chords.
pub fn validate_body<B: ConvexBody2D + ?Sized>(body: &B, pairs: usize, seed: u64) -> Result<()> {
    let c = body.interior_point();
    let tol = body.tolerance();
    for k in 0..8 {
        let a = std::f64::consts::TAU * k as f64 / 8.0;
        let q = [c[0] + tol * a.cos(), c[1] + tol * a.sin()];
        if !body.contains(q) {
            return Err(Error::input(format!(
                "interior point {c:?} has no margin of radius {tol}"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let member = |rng: &mut ChaCha8Rng| -> Result<[f64; 2]> {
        let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let d = [a.cos(), a.sin()];
        let s = body.ray_exit(c, d)? * rng.gen_range(0.0..1.0) * (1.0 - 1e-9);
        Ok([c[0] + s * d[0], c[1] + s * d[1]])
    };
    for _ in 0..pairs {
        let x = member(&mut rng)?;
        let y = member(&mut rng)?;
        for lam in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let m = [
                lam * x[0] + (1.0 - lam) * y[0],
                lam * x[1] + (1.0 - lam) * y[1],
            ];
            if !body.contains(m) {
                return Err(Error::input(format!(
                    "membership region is not convex: {m:?} lies between members {x:?} and {y:?}"
                )));
            }
        }
    }
    Ok(())
}
