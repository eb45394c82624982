//! Equilateral sets: verification, standard families, numeric extension
//! search, and vertex certificates for difference polytopes of simplices.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, norm2, random_orthonormal, random_unit};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::norms::NormSpec;
use crate::rational::{self, frac, int, serde_rational, serde_rvecs, RVec, Rational};
use crate::roots::brent_bracket;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquilateralCertificate {
    pub points: Vec<Vec<f64>>,
    /// Mean pairwise distance.
    pub p: f64,
    pub max_deviation: f64,
    pub tol: f64,
    pub valid: bool,
    /// Present when the norm is polyhedral and the points were given exactly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactDistances>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactDistances {
    #[serde(with = "serde_rvecs")]
    pub points: Vec<RVec>,
    /// Common distance when all pairwise distances agree exactly.
    #[serde(default, with = "opt_rational", skip_serializing_if = "Option::is_none")]
    pub p: Option<Rational>,
    #[serde(with = "serde_rational")]
    pub min_distance: Rational,
    #[serde(with = "serde_rational")]
    pub max_distance: Rational,
}

mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_str(&rational::format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let v: Option<rational::ExactNum> = Option::deserialize(d)?;
        Ok(v.map(|e| e.0))
    }
}

pub fn verify_equilateral(norm: &NormSpec, points: &[Vec<f64>], tol: f64) -> Result<EquilateralCertificate> {
    check_points(norm, points.iter().map(|p| p.as_slice()))?;
    for i in 0..points.len() {
        for j in 0..i {
            if points[i] == points[j] {
                return Err(Error::input(format!("duplicate point {:?}", points[i])));
            }
        }
    }
    let mut dists = Vec::new();
    for i in 0..points.len() {
        for j in 0..i {
            dists.push(norm.eval(&linalg::sub(&points[i], &points[j])));
        }
    }
    let p = dists.iter().sum::<f64>() / dists.len() as f64;
    let max_deviation = dists.iter().map(|d| (d - p).abs()).fold(0.0, f64::max);
    Ok(EquilateralCertificate {
        points: points.to_vec(),
        p,
        max_deviation,
        tol,
        valid: p > 0.0 && max_deviation <= tol * p,
        exact: None,
    })
}

/// As [`verify_equilateral`], with exact distances when the norm is polyhedral.
pub fn verify_equilateral_exact(norm: &NormSpec, points: &[RVec], tol: f64) -> Result<EquilateralCertificate> {
    let floats: Vec<Vec<f64>> = points.iter().map(|p| rational::vec_to_f64(p)).collect();
    for i in 0..points.len() {
        for j in 0..i {
            if points[i] == points[j] {
                return Err(Error::input(format!("duplicate point {:?}", floats[i])));
            }
        }
    }
    let mut cert = verify_equilateral(norm, &floats, tol)?;
    let mut exact = Vec::new();
    for i in 0..points.len() {
        for j in 0..i {
            match norm.eval_exact(&rational::sub(&points[i], &points[j])) {
                Some(d) => exact.push(d),
                None => return Ok(cert),
            }
        }
    }
    let min = exact.iter().min().cloned().unwrap_or_else(Rational::zero);
    let max = exact.iter().max().cloned().unwrap_or_else(Rational::zero);
    let p = (min == max).then(|| min.clone());
    if let Some(p) = &p {
        cert.p = rational::to_f64(p);
        cert.max_deviation = 0.0;
        cert.valid = p.is_positive();
    } else {
        let mean = exact.iter().fold(Rational::zero(), |a, d| a + d) / int(exact.len() as i64);
        let dev = exact.iter().map(|d| (d - &mean).abs()).max().unwrap_or_else(Rational::zero);
        cert.p = rational::to_f64(&mean);
        cert.max_deviation = rational::to_f64(&dev);
        cert.valid = cert.max_deviation <= tol * cert.p;
    }
    cert.exact = Some(ExactDistances {
        points: points.to_vec(),
        p,
        min_distance: min,
        max_distance: max,
    });
    Ok(cert)
}

fn check_points<'a>(norm: &NormSpec, mut points: impl Iterator<Item = &'a [f64]>) -> Result<()> {
    let n = norm.dim();
    let mut count = 0;
    for p in &mut points {
        if p.len() != n {
            return Err(Error::input(format!(
                "point of dimension {} for a norm of dimension {n}",
                p.len()
            )));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("point coordinates must be finite"));
        }
        count += 1;
    }
    if count < 2 {
        return Err(Error::input("an equilateral set needs at least two points"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    EuclideanSimplex,
    LinfCube,
    L1Crosspolytope,
    PettyL1,
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean-simplex" => Ok(Self::EuclideanSimplex),
            "linf-cube" => Ok(Self::LinfCube),
            "l1-crosspolytope" => Ok(Self::L1Crosspolytope),
            "petty-l1" => Ok(Self::PettyL1),
            other => Err(Error::input(format!("unknown generator {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratedSet {
    pub kind: GeneratorKind,
    pub n: usize,
    pub norm: NormSpec,
    pub points: Vec<Vec<f64>>,
    /// Exact coordinates for the rational families.
    #[serde(default, with = "opt_rvecs", skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<RVec>>,
}

mod opt_rvecs {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<RVec>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => serde_rvecs::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<RVec>>, D::Error> {
        let v: Option<Vec<Vec<rational::ExactNum>>> = Option::deserialize(d)?;
        Ok(v.map(|rows| rows.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect()))
    }
}

/// Largest cube dimension the generator will enumerate.
pub const MAX_CUBE_DIM: usize = 20;

pub fn generate(kind: GeneratorKind, n: usize) -> Result<GeneratedSet> {
    if n == 0 {
        return Err(Error::input("dimension must be positive"));
    }
    let (norm, exact, points) = match kind {
        GeneratorKind::EuclideanSimplex => {
            let pts = euclidean_simplex(n);
            (NormSpec::euclidean(n), None, pts)
        }
        GeneratorKind::LinfCube => {
            if n > MAX_CUBE_DIM {
                return Err(Error::input(format!("cube dimension {n} exceeds {MAX_CUBE_DIM}")));
            }
            let pts: Vec<RVec> = (0..1usize << n)
                .map(|m| (0..n).map(|i| int(((m >> i) & 1) as i64)).collect())
                .collect();
            (NormSpec::linf(n), Some(pts), Vec::new())
        }
        GeneratorKind::L1Crosspolytope => {
            let mut pts = Vec::with_capacity(2 * n);
            for i in 0..n {
                for s in [1, -1] {
                    let mut v = vec![int(0); n];
                    v[i] = int(s);
                    pts.push(v);
                }
            }
            (NormSpec::l1(n), Some(pts), Vec::new())
        }
        GeneratorKind::PettyL1 => {
            if n < 4 {
                return Err(Error::input("the maximal l1 configuration needs n >= 4"));
            }
            (NormSpec::l1(n), Some(petty_l1_points(n)), Vec::new())
        }
    };
    let points = match &exact {
        Some(e) => e.iter().map(|p| rational::vec_to_f64(p)).collect(),
        None => points,
    };
    Ok(GeneratedSet {
        kind,
        n,
        norm,
        points,
        exact,
    })
}

/// The four points `a₁ = e₁`, `a₂ = −e₁`, `a₃ = (0, 1/(n−1), …, 1/(n−1))` and
/// `a₄ = (0, −1/(2(n−1)), −3/(2(n−1)), −1/(n−1), …)`, pairwise at ℓ1 distance 2.
///
/// The uneven split of the second and third coordinates of `a₄` keeps the four
/// points affinely independent; its tail sums to `−1` so that `a₄` is a unit vector.
pub fn petty_l1_points(n: usize) -> Vec<RVec> {
    assert!(n >= 4);
    let m = (n - 1) as i64;
    let mut a1 = vec![int(0); n];
    a1[0] = int(1);
    let mut a2 = vec![int(0); n];
    a2[0] = int(-1);
    let mut a3 = vec![frac(1, m); n];
    a3[0] = int(0);
    let mut a4 = vec![frac(-1, m); n];
    a4[0] = int(0);
    a4[1] = frac(-1, 2 * m);
    a4[2] = frac(-3, 2 * m);
    vec![a1, a2, a3, a4]
}

/// Regular simplex with unit edges, built by stacking apexes over circumcenters.
fn euclidean_simplex(n: usize) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = vec![vec![0.0; n]];
    for k in 1..=n {
        let mut centroid = vec![0.0; n];
        for p in &pts {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / k as f64;
            }
        }
        // circumradius of a unit-edge simplex with k vertices
        let r2 = (k - 1) as f64 / (2.0 * k as f64);
        centroid[k - 1] = (1.0 - r2).sqrt();
        pts.push(centroid);
    }
    pts
}

/// Random equilateral triple in a planar or three-dimensional norm.
pub fn random_triple<R: Rng>(norm: &NormSpec, rng: &mut R) -> Result<[Vec<f64>; 3]> {
    let n = norm.dim();
    if !(2..=3).contains(&n) {
        return Err(Error::input("random triples are generated in dimension 2 or 3"));
    }
    let u = random_unit(n, rng);
    let b: Vec<f64> = linalg::scale(&u, 1.0 / norm.eval(&u));
    let w = if n == 2 {
        vec![-u[1], u[0]]
    } else {
        loop {
            let r = random_unit(3, rng);
            let d = linalg::dot(&r, &u);
            let w = linalg::sub(&r, &linalg::scale(&u, d));
            let len = norm2(&w);
            if len > 1e-3 {
                break linalg::scale(&w, 1.0 / len);
            }
        }
    };
    let point = |phi: f64| -> Vec<f64> {
        let d: Vec<f64> = u.iter().zip(&w).map(|(x, y)| phi.cos() * x + phi.sin() * y).collect();
        let s = norm.eval(&d);
        linalg::scale(&d, 1.0 / s)
    };
    let g = |phi: f64| norm.eval(&linalg::sub(&point(phi), &b)) - 1.0;
    let (lo, hi) = brent_bracket(g, 0.0, std::f64::consts::PI, g(0.0), g(std::f64::consts::PI), 1e-15, 200);
    let c = point(0.5 * (lo + hi));
    let s: f64 = rng.gen_range(0.5..2.0);
    let t: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let place = |x: &[f64]| -> Vec<f64> { x.iter().zip(&t).map(|(xi, ti)| ti + s * xi).collect() };
    Ok([t.clone(), place(&b), place(&c)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtendStatus {
    Found,
    NotFound,
    /// Best residual between the acceptance tolerance and the not-found threshold.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtendOutcome {
    pub status: ExtendStatus,
    pub best_point: Vec<f64>,
    /// `max_i |‖x − a_i‖ − p|` at the best point.
    pub best_residual: f64,
    pub p: f64,
    pub tol: f64,
    pub starts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtendConfig {
    pub tol: f64,
    pub starts: usize,
    pub seed: u64,
    /// Residual above `not_found_factor · tol · p` is reported as not found.
    pub not_found_factor: f64,
    pub max_evals: usize,
}

impl Default for ExtendConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            starts: 32,
            seed: 0,
            not_found_factor: 1e3,
            max_evals: 20_000,
        }
    }
}

/// `max_i |‖x − a_i‖ − p|`.
pub fn extension_residual(norm: &NormSpec, points: &[Vec<f64>], p: f64, x: &[f64]) -> f64 {
    let mut buf = vec![0.0; x.len()];
    let mut worst = 0.0f64;
    for a in points {
        for ((b, xi), ai) in buf.iter_mut().zip(x).zip(a) {
            *b = xi - ai;
        }
        worst = worst.max((norm.eval(&buf) - p).abs());
    }
    worst
}

/// Multistart derivative-free search for a point at distance `p` from all
/// `points`, followed by an LP polish for polyhedral norms.
pub fn extend_numeric(norm: &NormSpec, points: &[Vec<f64>], p: f64, cfg: &ExtendConfig) -> Result<ExtendOutcome> {
    check_points(norm, points.iter().map(|p| p.as_slice()))?;
    if !(p > 0.0) || !(cfg.tol > 0.0) {
        return Err(Error::input("distance and tolerance must be positive"));
    }
    let cert = verify_equilateral(norm, points, 1e-6)?;
    if !cert.valid || (cert.p - p).abs() > 1e-6 * p {
        return Err(Error::input(format!(
            "points are not equilateral at distance {p} (mean {}, deviation {})",
            cert.p, cert.max_deviation
        )));
    }
    let n = norm.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let centroid: Vec<f64> = (0..n)
        .map(|i| points.iter().map(|a| a[i]).sum::<f64>() / points.len() as f64)
        .collect();
    let mut starts: Vec<Vec<f64>> = vec![centroid.clone()];
    for a in points {
        if starts.len() >= cfg.starts {
            break;
        }
        starts.push(centroid.iter().zip(a).map(|(c, x)| 2.0 * c - x).collect());
    }
    while starts.len() < cfg.starts.max(1) {
        let u = random_unit(n, &mut rng);
        let rad = 2.0 * p * rng.gen::<f64>().powf(1.0 / n as f64);
        starts.push(centroid.iter().zip(&u).map(|(c, d)| c + rad * d).collect());
    }
    let f = |x: &[f64]| extension_residual(norm, points, p, x);
    let mut results: Vec<(f64, Vec<f64>)> = Vec::with_capacity(starts.len());
    for (k, s) in starts.iter().enumerate() {
        let mut srng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (0x9e37_79b9 + k as u64));
        let x = pattern_search(&f, s.clone(), 0.5 * p, 1e-13 * p, cfg.max_evals, &mut srng);
        results.push((f(&x), x));
    }
    sort_results(&mut results);
    if norm.is_polyhedral() {
        let mut polished = Vec::new();
        for (_, x) in results.iter().take(4) {
            if let Some(y) = polish_polyhedral(norm, points, p, x) {
                polished.push((f(&y), y));
            }
        }
        results.extend(polished);
        sort_results(&mut results);
    }
    let (best_residual, best_point) = results.swap_remove(0);
    let status = if best_residual <= cfg.tol * p {
        ExtendStatus::Found
    } else if best_residual > cfg.not_found_factor * cfg.tol * p {
        ExtendStatus::NotFound
    } else {
        ExtendStatus::Inconclusive
    };
    Ok(ExtendOutcome {
        status,
        best_point,
        best_residual,
        p,
        tol: cfg.tol,
        starts: starts.len(),
    })
}

fn sort_results(results: &mut [(f64, Vec<f64>)]) {
    results.sort_by(|a, b| {
        a.0.total_cmp(&b.0).then_with(|| {
            a.1.iter()
                .zip(&b.1)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
}

/// Compass search along a randomly rotated orthonormal frame.
pub(crate) fn pattern_search<F: Fn(&[f64]) -> f64, R: Rng>(
    f: &F,
    mut x: Vec<f64>,
    step: f64,
    min_step: f64,
    max_evals: usize,
    rng: &mut R,
) -> Vec<f64> {
    let n = x.len();
    let mut fx = f(&x);
    let mut s = step;
    let mut evals = 1;
    let mut basis = random_orthonormal(n, rng);
    let mut trial = vec![0.0; n];
    while s > min_step && evals < max_evals && fx > 0.0 {
        let mut improved = false;
        'poll: for b in &basis {
            for sign in [1.0, -1.0] {
                for ((t, xi), bi) in trial.iter_mut().zip(&x).zip(b) {
                    *t = xi + sign * s * bi;
                }
                let ft = f(&trial);
                evals += 1;
                if ft < fx {
                    fx = ft;
                    x.copy_from_slice(&trial);
                    improved = true;
                    break 'poll;
                }
            }
        }
        if !improved {
            s *= 0.5;
            basis = random_orthonormal(n, rng);
        }
    }
    x
}

/// Sequential linear programming on `max_i |‖x − a_i‖ − p|` for a polyhedral
/// norm. Upper bounds `‖x − a_i‖ ≤ p + τ` are kept exactly; each lower bound
/// is restricted to one nearly active facet, so every LP-feasible point is a
/// true feasible point and `τ` is a certified residual bound.
pub(crate) fn polish_polyhedral(norm: &NormSpec, points: &[Vec<f64>], p: f64, x0: &[f64]) -> Option<Vec<f64>> {
    let n = norm.dim();
    let l1 = matches!(norm, NormSpec::Lp { p, .. } if *p == 1.0);
    let facets = if l1 { Vec::new() } else { norm.polyhedral_functionals()? };
    let resid = |x: &[f64]| extension_residual(norm, points, p, x);
    let mut x = x0.to_vec();
    let mut tau = resid(&x);
    for _ in 0..30 {
        if tau <= 1e-15 * p {
            break;
        }
        let delta = 4.0 * tau + 1e-12 * p;
        // near-active signed functionals for each point
        let mut choices: Vec<Vec<Vec<f64>>> = Vec::new();
        for a in points {
            let y = linalg::sub(&x, a);
            let ny = norm.eval(&y);
            let mut c = Vec::new();
            if l1 {
                let free: Vec<usize> = (0..n).filter(|&j| y[j].abs() <= delta).collect();
                let k = free.len().min(6);
                for mask in 0..1usize << k {
                    let mut s: Vec<f64> = y.iter().map(|v| if *v >= 0.0 { 1.0 } else { -1.0 }).collect();
                    for (bit, &j) in free.iter().take(k).enumerate() {
                        s[j] = if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
                    }
                    c.push(s);
                }
            } else {
                for f in &facets {
                    let v = linalg::dot(f, &y);
                    if v.abs() >= ny - delta {
                        c.push(if v >= 0.0 { f.clone() } else { linalg::scale(f, -1.0) });
                    }
                }
            }
            c.truncate(16);
            choices.push(c);
        }
        let total: usize = choices.iter().map(|c| c.len().max(1)).product();
        let mut best: Option<(f64, Vec<f64>)> = None;
        for combo in 0..total.min(256) {
            let mut rest = combo;
            let picks: Vec<&Vec<f64>> = choices
                .iter()
                .map(|c| {
                    let k = rest % c.len();
                    rest /= c.len();
                    &c[k]
                })
                .collect();
            if let Some((_, y)) = slp_step(n, points, p, l1, &facets, &picks) {
                let t = resid(&y);
                if best.as_ref().is_none_or(|b| t < b.0) {
                    best = Some((t, y));
                }
            }
        }
        match best {
            Some((t, y)) if t < tau * (1.0 - 1e-3) => {
                tau = t;
                x = y;
            }
            Some((t, y)) if t < tau => {
                x = y;
                break;
            }
            _ => break,
        }
    }
    Some(x)
}

fn slp_step(
    n: usize,
    points: &[Vec<f64>],
    p: f64,
    l1: bool,
    facets: &[Vec<f64>],
    lower: &[&Vec<f64>],
) -> Option<(f64, Vec<f64>)> {
    let m = points.len();
    // variables: x (n), τ, and for ℓ1 the magnitudes u_ij
    let nv = n + 1 + if l1 { n * m } else { 0 };
    let mut lp = LinearProgram::<f64>::new(nv);
    lp.set_bounds(n, Some(0.0), None);
    let mut obj = vec![0.0; nv];
    obj[n] = 1.0;
    lp.set_objective(obj);
    for (i, a) in points.iter().enumerate() {
        if l1 {
            let base = n + 1 + i * n;
            for j in 0..n {
                for s in [1.0, -1.0] {
                    // u_ij ≥ s(x_j − a_ij)
                    let mut row = vec![0.0; nv];
                    row[base + j] = 1.0;
                    row[j] = -s;
                    lp.add_row(row, Relation::Ge, -s * a[j]);
                }
            }
            let mut row = vec![0.0; nv];
            for j in 0..n {
                row[base + j] = 1.0;
            }
            row[n] = -1.0;
            lp.add_row(row, Relation::Le, p);
        } else {
            for f in facets {
                let fa = linalg::dot(f, a);
                for s in [1.0, -1.0] {
                    let mut row = vec![0.0; nv];
                    for j in 0..n {
                        row[j] = s * f[j];
                    }
                    row[n] = -1.0;
                    lp.add_row(row, Relation::Le, p + s * fa);
                }
            }
        }
        let g = lower[i];
        let mut row = vec![0.0; nv];
        row[..n].copy_from_slice(&g[..n]);
        row[n] = 1.0;
        lp.add_row(row, Relation::Ge, p + linalg::dot(g, a));
    }
    match lp.solve() {
        LpOutcome::Optimal { x, value } => Some((value, x[..n].to_vec())),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexCertificate {
    #[serde(with = "serde_rvecs")]
    pub points: Vec<RVec>,
    pub reports: Vec<VertexReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexReport {
    pub i: usize,
    pub j: usize,
    pub outcome: VertexOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VertexOutcome {
    /// `y·(p_i − p_j) > y·(p_k − p_l)` for every other ordered pair.
    Vertex {
        #[serde(with = "crate::rational::serde_rvec")]
        functional: RVec,
    },
    /// `p_i − p_j` as a convex combination of the other differences.
    NotVertex { weights: Vec<PairWeight> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairWeight {
    pub k: usize,
    pub l: usize,
    #[serde(with = "serde_rational")]
    pub weight: Rational,
}

impl VertexCertificate {
    pub fn all_vertices(&self) -> bool {
        self.reports
            .iter()
            .all(|r| matches!(r.outcome, VertexOutcome::Vertex { .. }))
    }
}

fn ordered_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(m * (m - 1));
    for i in 0..m {
        for j in 0..m {
            if i != j {
                out.push((i, j));
            }
        }
    }
    out
}

/// Certifies that every difference `p_i − p_j` of affinely independent points
/// is a vertex of the convex hull of all such differences.
pub fn diff_polytope_vertex_check(points: &[RVec]) -> Result<VertexCertificate> {
    let m = points.len();
    if m < 2 {
        return Err(Error::input("need at least two points"));
    }
    let n = points[0].len();
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::input("points must share a dimension"));
    }
    let edges: Vec<RVec> = points[1..].iter().map(|p| rational::sub(p, &points[0])).collect();
    if linalg::rank_exact(&edges) != m - 1 {
        return Err(Error::input(
            "points are affinely dependent: they do not span a non-degenerate simplex",
        ));
    }
    let pairs = ordered_pairs(m);
    let diffs: Vec<RVec> = pairs
        .iter()
        .map(|&(k, l)| rational::sub(&points[k], &points[l]))
        .collect();
    let mut reports = Vec::with_capacity(pairs.len());
    for (idx, &(i, j)) in pairs.iter().enumerate() {
        let q = &diffs[idx];
        let mut lp = LinearProgram::<Rational>::new(n);
        for (other, w) in diffs.iter().enumerate() {
            if other != idx {
                lp.add_row(rational::sub(q, w), Relation::Ge, Rational::one());
            }
        }
        let outcome = match lp.solve() {
            LpOutcome::Optimal { x, .. } => VertexOutcome::Vertex { functional: x },
            LpOutcome::Unbounded => return Err(Error::internal("feasibility LP reported unbounded")),
            LpOutcome::Infeasible => VertexOutcome::NotVertex {
                weights: violating_combination(&diffs, &pairs, idx)?,
            },
        };
        reports.push(VertexReport { i, j, outcome });
    }
    Ok(VertexCertificate {
        points: points.to_vec(),
        reports,
    })
}

fn violating_combination(diffs: &[RVec], pairs: &[(usize, usize)], idx: usize) -> Result<Vec<PairWeight>> {
    let others: Vec<usize> = (0..diffs.len()).filter(|&k| k != idx).collect();
    let n = diffs[idx].len();
    let mut lp = LinearProgram::<Rational>::new(others.len());
    for v in 0..others.len() {
        lp.set_bounds(v, Some(Rational::zero()), None);
    }
    lp.add_row(vec![Rational::one(); others.len()], Relation::Eq, Rational::one());
    for d in 0..n {
        lp.add_row(others.iter().map(|&k| diffs[k][d].clone()).collect(), Relation::Eq, diffs[idx][d].clone());
    }
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => Ok(others
            .iter()
            .zip(x)
            .filter(|(_, w)| !w.is_zero())
            .map(|(&k, weight)| PairWeight {
                k: pairs[k].0,
                l: pairs[k].1,
                weight,
            })
            .collect()),
        _ => Err(Error::internal(
            "difference is neither separable nor a convex combination of the others",
        )),
    }
}

/// Re-checks every report by exact substitution; returns the number of vertex reports.
pub fn audit_vertex_certificate(cert: &VertexCertificate) -> Result<usize> {
    let m = cert.points.len();
    let pairs = ordered_pairs(m);
    if cert.reports.len() != pairs.len() {
        return Err(Error::input("certificate does not cover every ordered pair"));
    }
    let diff = |k: usize, l: usize| rational::sub(&cert.points[k], &cert.points[l]);
    let mut vertices = 0;
    for (r, &(i, j)) in cert.reports.iter().zip(&pairs) {
        if (r.i, r.j) != (i, j) {
            return Err(Error::input("certificate reports out of order"));
        }
        let q = diff(i, j);
        match &r.outcome {
            VertexOutcome::Vertex { functional } => {
                let top = rational::dot(functional, &q);
                for &(k, l) in &pairs {
                    if (k, l) != (i, j) && rational::dot(functional, &diff(k, l)) >= top {
                        return Err(Error::input(format!(
                            "functional for ({i},{j}) does not separate difference ({k},{l})"
                        )));
                    }
                }
                vertices += 1;
            }
            VertexOutcome::NotVertex { weights } => {
                let total = weights.iter().fold(Rational::zero(), |a, w| a + &w.weight);
                let mut comb = vec![Rational::zero(); q.len()];
                for w in weights {
                    if w.weight.is_negative() || (w.k, w.l) == (i, j) || w.k == w.l {
                        return Err(Error::input("invalid convex combination"));
                    }
                    for (c, d) in comb.iter_mut().zip(diff(w.k, w.l)) {
                        *c += &w.weight * d;
                    }
                }
                if !total.is_one() || comb != q {
                    return Err(Error::input(format!("combination for ({i},{j}) does not reproduce it")));
                }
            }
        }
    }
    Ok(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petty_points_coordinates_and_distances() {
        let pts = petty_l1_points(4);
        assert_eq!(pts[2], vec![int(0), frac(1, 3), frac(1, 3), frac(1, 3)]);
        assert_eq!(pts[3], vec![int(0), frac(-1, 6), frac(-1, 2), frac(-1, 3)]);
        for n in 4..=9 {
            let cert = verify_equilateral_exact(&NormSpec::l1(n), &petty_l1_points(n), 1e-12).unwrap();
            assert_eq!(cert.exact.unwrap().p, Some(int(2)));
            assert_eq!(cert.max_deviation, 0.0);
        }
    }

    #[test]
    fn quarter_split_variant_is_not_equilateral() {
        // splitting as -1/(4(n-1)), -3/(4(n-1)) leaves a4 with norm (n-2)/(n-1)
        let mut pts = petty_l1_points(4);
        pts[3][1] = frac(-1, 12);
        pts[3][2] = frac(-1, 4);
        let cert = verify_equilateral_exact(&NormSpec::l1(4), &pts, 1e-9).unwrap();
        let exact = cert.exact.unwrap();
        assert!(!cert.valid && exact.p.is_none());
        assert_eq!(exact.min_distance, frac(5, 3));
    }

    #[test]
    fn generator_families() {
        let cube = generate(GeneratorKind::LinfCube, 3).unwrap();
        assert_eq!(cube.points.len(), 8);
        let cert = verify_equilateral_exact(&cube.norm, cube.exact.as_ref().unwrap(), 0.0).unwrap();
        assert!(cert.valid && cert.p == 1.0);
        let cross = generate(GeneratorKind::L1Crosspolytope, 5).unwrap();
        let cert = verify_equilateral_exact(&cross.norm, cross.exact.as_ref().unwrap(), 0.0).unwrap();
        assert!(cert.valid && cert.p == 2.0);
        for n in 1..=10 {
            let s = generate(GeneratorKind::EuclideanSimplex, n).unwrap();
            assert_eq!(s.points.len(), n + 1);
            let cert = verify_equilateral(&s.norm, &s.points, 1e-12).unwrap();
            assert!(cert.valid && (cert.p - 1.0).abs() < 1e-12, "{n} {cert:?}");
        }
        assert!(generate(GeneratorKind::PettyL1, 3).is_err());
    }

    #[test]
    fn duplicates_are_rejected() {
        let e = NormSpec::euclidean(2);
        assert!(verify_equilateral(&e, &[vec![0.0, 0.0], vec![0.0, 0.0]], 1e-9).is_err());
        assert!(verify_equilateral(&e, &[vec![0.0, 0.0]], 1e-9).is_err());
    }

    #[test]
    fn extension_of_three_petty_points() {
        let pts: Vec<Vec<f64>> = petty_l1_points(4).iter().map(|p| rational::vec_to_f64(p)).collect();
        let out = extend_numeric(&NormSpec::l1(4), &pts[..3], 2.0, &ExtendConfig::default()).unwrap();
        assert_eq!(out.status, ExtendStatus::Found, "{out:?}");
        assert!(out.best_residual <= 1e-8);
        let out = extend_numeric(&NormSpec::l1(4), &pts, 2.0, &ExtendConfig::default()).unwrap();
        assert_eq!(out.status, ExtendStatus::NotFound, "{out:?}");
    }

    #[test]
    fn euclidean_apex() {
        let s = generate(GeneratorKind::EuclideanSimplex, 3).unwrap();
        let out = extend_numeric(&s.norm, &s.points[..3], 1.0, &ExtendConfig { tol: 1e-9, ..Default::default() }).unwrap();
        assert_eq!(out.status, ExtendStatus::Found);
    }

    #[test]
    fn difference_vertex_examples() {
        let tri = vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)]];
        let cert = diff_polytope_vertex_check(&tri).unwrap();
        assert_eq!(cert.reports.len(), 6);
        assert!(cert.all_vertices());
        assert_eq!(audit_vertex_certificate(&cert).unwrap(), 6);
        let cert = diff_polytope_vertex_check(&petty_l1_points(4)).unwrap();
        assert_eq!(audit_vertex_certificate(&cert).unwrap(), 12);
        let line = vec![vec![int(0), int(0)], vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(matches!(diff_polytope_vertex_check(&line), Err(Error::Input(_))));
    }

    #[test]
    fn tampered_certificate_fails_audit() {
        let tri = vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)]];
        let mut cert = diff_polytope_vertex_check(&tri).unwrap();
        if let VertexOutcome::Vertex { functional } = &mut cert.reports[0].outcome {
            *functional = vec![int(0), int(0)];
        }
        assert!(audit_vertex_certificate(&cert).is_err());
    }

    #[test]
    fn random_triples_are_equilateral() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for norm in [NormSpec::linf(3), NormSpec::lp(3.5, 2).unwrap(), NormSpec::l1(3)] {
            let t = random_triple(&norm, &mut rng).unwrap();
            let cert = verify_equilateral(&norm, &t, 1e-12).unwrap();
            assert!(cert.valid, "{cert:?}");
        }
    }
}
