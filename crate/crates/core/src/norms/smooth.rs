//! Smooth, strictly convex approximation of a norm that keeps prescribed
//! unit vectors ("anchors") on the unit sphere.
//!
//! The approximant is `S(x) = (1-η)·C(x) + η·√(xᵀQx)` where
//!
//! * `C` is the base norm itself when that is already smooth and strictly
//!   convex, and otherwise an `ℓq` aggregation `c·(Σ_k |f_k·x|^q)^{1/q}` of the
//!   functionals describing the base ball (`ℓq` of an injective linear map is
//!   smooth and strictly convex for `1 < q < ∞`);
//! * `Q` is positive definite and chosen, as the smallest change from a
//!   multiple of the identity, so that every anchor lands at `S(a) = 1`. The
//!   conditions `aᵀQa = s_a²` are linear in `Q`, so this is one linear solve.
//!
//! A sum of a smooth strictly convex norm and an ellipsoidal norm is again
//! smooth and strictly convex, so no convexity repair is needed. A linear
//! change of variables cannot do the anchor correction in general: near the
//! ridges of `C` its Jacobian loses rank. The two-sided bound
//! `(1-ε)S ≤ N ≤ (1+ε)S` is checked on random samples; when a sample violates
//! it the budgets are halved and the construction is retried.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::NormSpec;
use crate::error::{Error, Result};
use crate::linalg::{norm2, random_unit};
use crate::lp::{LinearProgram, LpOutcome, Relation};

const MAX_ATTEMPTS: usize = 6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothingParams {
    pub epsilon: f64,
    pub anchor_tolerance: f64,
    pub sample_count: usize,
    pub seed: u64,
}

impl Default for SmoothingParams {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            anchor_tolerance: 1e-9,
            sample_count: 10_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothConstruction {
    /// Exponent of the functional aggregation; absent when the base norm is the core.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functionals: Vec<Vec<f64>>,
    pub core_scale: f64,
    /// Weight `η` of the ellipsoidal term.
    pub euclid_weight: f64,
    /// Symmetric positive definite `Q`; empty when the weight is zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quadratic: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothedNorm {
    base: NormSpec,
    epsilon: f64,
    anchors: Vec<Vec<f64>>,
    construction: SmoothConstruction,
}

impl SmoothedNorm {
    pub(crate) fn from_parts(
        base: NormSpec,
        epsilon: f64,
        anchors: Vec<Vec<f64>>,
        construction: SmoothConstruction,
    ) -> Result<Self> {
        let n = base.dim();
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::input("smoothing epsilon must lie in (0, 1)"));
        }
        if anchors.iter().any(|a| a.len() != n) {
            return Err(Error::input("anchor dimension mismatch"));
        }
        let c = &construction;
        if c.functionals.iter().any(|f| f.len() != n) {
            return Err(Error::input("smoothing functional dimension mismatch"));
        }
        match c.exponent {
            Some(q) if !(q > 1.0) || c.functionals.is_empty() => {
                return Err(Error::input("aggregation needs exponent > 1 and functionals"))
            }
            None if !c.functionals.is_empty() => {
                return Err(Error::input("functionals given without an exponent"))
            }
            None if !base.is_smooth_strictly_convex() => {
                return Err(Error::input(
                    "base norm is not smooth and strictly convex; an aggregation exponent is required",
                ))
            }
            _ => {}
        }
        if !(0.0..1.0).contains(&c.euclid_weight) {
            return Err(Error::input("ellipsoidal weight must lie in [0, 1)"));
        }
        if c.euclid_weight > 0.0 && !positive_definite(&c.quadratic, n) {
            return Err(Error::input("ellipsoidal term needs a symmetric positive definite n×n matrix"));
        }
        Ok(Self {
            base,
            epsilon,
            anchors,
            construction,
        })
    }

    pub(crate) fn into_parts(self) -> (NormSpec, f64, Vec<Vec<f64>>, SmoothConstruction) {
        (self.base, self.epsilon, self.anchors, self.construction)
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &NormSpec {
        &self.base
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn anchors(&self) -> &[Vec<f64>] {
        &self.anchors
    }

    pub fn construction(&self) -> &SmoothConstruction {
        &self.construction
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        pre_eval(&self.base, &self.construction, x)
    }
}

fn positive_definite(q: &[Vec<f64>], n: usize) -> bool {
    if q.len() != n || q.iter().any(|r| r.len() != n) {
        return false;
    }
    let m = DMatrix::from_fn(n, n, |i, j| q[i][j]);
    m.iter().all(|v| v.is_finite()) && (&m - m.transpose()).amax() <= 1e-12 * m.amax() && m.cholesky().is_some()
}

fn quadratic_form(q: &[Vec<f64>], y: &[f64]) -> f64 {
    q.iter().zip(y).map(|(row, yi)| yi * dot(row, y)).sum::<f64>().max(0.0)
}

fn core_eval(base: &NormSpec, c: &SmoothConstruction, y: &[f64]) -> f64 {
    match c.exponent {
        None => base.eval(y),
        Some(q) => {
            let mut m = 0.0f64;
            for f in &c.functionals {
                m = m.max(dot(f, y).abs());
            }
            if m == 0.0 {
                return 0.0;
            }
            let mut s = 0.0;
            for f in &c.functionals {
                let r = dot(f, y).abs() / m;
                if r > 0.0 {
                    s += (q * r.ln()).exp();
                }
            }
            c.core_scale * m * s.powf(1.0 / q)
        }
    }
}

fn pre_eval(base: &NormSpec, c: &SmoothConstruction, y: &[f64]) -> f64 {
    let core = core_eval(base, c, y);
    if c.euclid_weight == 0.0 {
        core
    } else {
        (1.0 - c.euclid_weight) * core + c.euclid_weight * quadratic_form(&c.quadratic, y).sqrt()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Builds a [`NormSpec::Smoothed`] approximation of `spec` keeping `anchors` at norm 1.
pub fn smooth_approx(
    spec: &NormSpec,
    anchors: &[Vec<f64>],
    params: &SmoothingParams,
) -> Result<NormSpec> {
    let n = spec.dim();
    let eps = params.epsilon;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::input("smoothing epsilon must lie in (0, 1)"));
    }
    if !(params.anchor_tolerance > 0.0) || params.sample_count == 0 {
        return Err(Error::input("anchor tolerance and sample count must be positive"));
    }
    for a in anchors {
        if a.len() != n {
            return Err(Error::input("anchor dimension mismatch"));
        }
        let v = spec.eval(a);
        if (v - 1.0).abs() > params.anchor_tolerance {
            return Err(Error::input(format!(
                "anchor {a:?} is not a unit vector of the base norm (norm {v})"
            )));
        }
    }
    let reps = antipodal_representatives(anchors);
    check_polytope_vertices(&reps)?;
    if reps.len() > n * (n + 1) / 2 {
        return Err(Error::Smoothing(format!(
            "{} anchor pairs exceed the {} degrees of freedom of the ellipsoidal correction",
            reps.len(),
            n * (n + 1) / 2
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut last_violation = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let budget = eps / 4.0 / f64::powi(2.0, attempt as i32);
        let mut c = SmoothConstruction {
            exponent: None,
            functionals: Vec::new(),
            core_scale: 1.0,
            euclid_weight: 0.0,
            quadratic: Vec::new(),
        };
        if !spec.is_smooth_strictly_convex() {
            // the aggregate gets a quarter of the budget so that the
            // ellipsoidal targets s_a stay within 1 ± 1/4
            let functionals = smoothing_functionals(spec, budget / 4.0)?;
            let m = functionals.len() as f64;
            let q = if m > 1.0 {
                (m.ln() / (2.0 * (1.0 + budget / 4.0).ln())).max(2.0)
            } else {
                2.0
            };
            c.exponent = Some(q);
            c.core_scale = m.powf(-0.5 / q);
            c.functionals = functionals;
            // Euclidean term scaled to the middle of the observed ratio range.
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for _ in 0..512 {
                let u = random_unit(n, &mut rng);
                let r = norm2(&u) / core_eval(spec, &c, &u);
                lo = lo.min(r);
                hi = hi.max(r);
            }
            c.euclid_weight = budget;
            let kappa = 2.0 / (lo + hi);
            match anchor_quadratic(spec, &c, &reps, kappa) {
                Some(q) => c.quadratic = q,
                None => {
                    last_violation = "no positive definite ellipsoidal correction restores the anchors".into();
                    continue;
                }
            }
        }
        let smoothed = SmoothedNorm {
            base: spec.clone(),
            epsilon: eps,
            anchors: anchors.to_vec(),
            construction: c,
        };
        let candidate = NormSpec::Smoothed(Box::new(smoothed));
        if let Some(a) = anchors
            .iter()
            .find(|a| (candidate.eval(a) - 1.0).abs() > params.anchor_tolerance)
        {
            last_violation = format!("anchor {a:?} has smoothed norm {}", candidate.eval(a));
            continue;
        }
        match check_sandwich(
            spec,
            &candidate,
            eps,
            params.sample_count,
            params.seed ^ 0x5eed,
        ) {
            Ok(_) => return Ok(candidate),
            Err((x, ratio)) => {
                last_violation = format!("sample {x:?} has base/smoothed ratio {ratio}");
            }
        }
    }
    Err(Error::Smoothing(last_violation))
}

/// Checks `(1-ε)·S(x) ≤ N(x) ≤ (1+ε)·S(x)` on random samples. On success returns
/// the extreme ratios `N/S`; on failure the violating sample and its ratio.
pub fn check_sandwich(
    base: &NormSpec,
    smoothed: &NormSpec,
    eps: f64,
    samples: usize,
    seed: u64,
) -> std::result::Result<(f64, f64), (Vec<f64>, f64)> {
    let n = base.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..samples {
        let radius = 10f64.powf(rng.gen_range(-1.0..1.0));
        let x: Vec<f64> = random_unit(n, &mut rng).iter().map(|v| v * radius).collect();
        let ratio = base.eval(&x) / smoothed.eval(&x);
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        if ratio > 1.0 + eps + 1e-12 || ratio < 1.0 - eps - 1e-12 {
            return Err((x, ratio));
        }
    }
    Ok((lo, hi))
}

/// Smallest observed `1 - S((u+w)/2)` over random pairs of unit vectors that
/// are at least `min_sep` apart. Positive for strictly convex unit balls.
pub fn chord_convexity_margin(spec: &NormSpec, pairs: usize, min_sep: f64, seed: u64) -> f64 {
    let n = spec.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let mut done = 0;
    while done < pairs {
        let u = random_unit(n, &mut rng);
        let w = random_unit(n, &mut rng);
        let u: Vec<f64> = u.iter().map(|v| v / spec.eval(&u)).collect();
        let w: Vec<f64> = w.iter().map(|v| v / spec.eval(&w)).collect();
        let sep: f64 = u.iter().zip(&w).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        if sep < min_sep {
            continue;
        }
        let mid: Vec<f64> = u.iter().zip(&w).map(|(a, b)| 0.5 * (a + b)).collect();
        worst = worst.min(1.0 - spec.eval(&mid));
        done += 1;
    }
    worst
}

fn antipodal_representatives(anchors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut reps: Vec<Vec<f64>> = Vec::new();
    for a in anchors {
        let close = |b: &Vec<f64>, s: f64| a.iter().zip(b).all(|(x, y)| (x - s * y).abs() < 1e-12);
        if !reps.iter().any(|b| close(b, 1.0) || close(b, -1.0)) {
            reps.push(a.clone());
        }
    }
    reps
}

/// Every anchor must be a vertex of `conv{±anchors}`.
fn check_polytope_vertices(reps: &[Vec<f64>]) -> Result<()> {
    if reps.len() < 2 {
        return Ok(());
    }
    let n = reps[0].len();
    for (i, a) in reps.iter().enumerate() {
        let mut others: Vec<Vec<f64>> = vec![a.iter().map(|v| -v).collect()];
        for (j, b) in reps.iter().enumerate() {
            if j != i {
                others.push(b.clone());
                others.push(b.iter().map(|v| -v).collect());
            }
        }
        let k = others.len();
        let mut lp = LinearProgram::<f64>::new(k);
        for v in 0..k {
            lp.set_bounds(v, Some(0.0), None);
        }
        lp.add_row(vec![1.0; k], Relation::Eq, 1.0);
        for d in 0..n {
            lp.add_row(others.iter().map(|o| o[d]).collect(), Relation::Eq, a[d]);
        }
        if let LpOutcome::Optimal { .. } = lp.solve() {
            return Err(Error::input(format!(
                "anchor {a:?} is not a vertex of the symmetric polytope spanned by the anchors"
            )));
        }
    }
    Ok(())
}

/// Functionals `f_k` with `max_k |f_k·x|` within `budget/2` of the base norm.
fn smoothing_functionals(spec: &NormSpec, budget: f64) -> Result<Vec<Vec<f64>>> {
    if let Some(f) = spec.polyhedral_functionals() {
        return Ok(f);
    }
    match spec {
        NormSpec::L1PlusL2 { dim: 2 } => Ok(vec![vec![1.0, 1.0], vec![1.0, -1.0]]),
        NormSpec::L1PlusL2 { dim: 3 } => {
            // extreme points (1, cos φ, sin φ) of the dual cylinder
            let j = (std::f64::consts::PI / (1.0 - budget / 2.0).acos()).ceil() as usize;
            let j = j.max(8);
            Ok((0..j)
                .map(|k| {
                    let phi = std::f64::consts::TAU * k as f64 / j as f64;
                    vec![1.0, phi.cos(), phi.sin()]
                })
                .collect())
        }
        other => Err(Error::Smoothing(format!(
            "no functional description available for {other:?}"
        ))),
    }
}

/// Smallest change `Q = κ²I + Σ μ_a a aᵀ` with `S(a) = 1` for every anchor
/// representative, or `None` when the result is not positive definite.
fn anchor_quadratic(
    base: &NormSpec,
    c: &SmoothConstruction,
    reps: &[Vec<f64>],
    kappa: f64,
) -> Option<Vec<Vec<f64>>> {
    let n = base.dim();
    let w = c.euclid_weight;
    let mut q: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { kappa * kappa } else { 0.0 }).collect())
        .collect();
    if reps.is_empty() {
        return Some(q);
    }
    let m = reps.len();
    let mut rhs = DVector::zeros(m);
    for (i, a) in reps.iter().enumerate() {
        let s = (1.0 - (1.0 - w) * core_eval(base, c, a)) / w;
        if !(s > 0.0) {
            return None;
        }
        rhs[i] = s * s - quadratic_form(&q, a);
    }
    let gram = DMatrix::from_fn(m, m, |i, j| dot(&reps[i], &reps[j]).powi(2));
    let mu = gram.lu().solve(&rhs)?;
    for (a, mu) in reps.iter().zip(mu.iter()) {
        for r in 0..n {
            for s in 0..n {
                q[r][s] += mu * a[r] * a[s];
            }
        }
    }
    positive_definite(&q, n).then_some(q)
}
