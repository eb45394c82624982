// Reference implementations used to cross-check the library. Norms are
// rebuilt from their JSON description, so the checks go through none of the
// library's evaluation code.

#![allow(dead_code)]

use petty::NormSpec;
use rand::Rng;
use serde_json::Value;

pub enum Oracle {
    Lp(f64),
    /// Facet functionals `f` of a symmetric polytope; the gauge is `max |f·x|`.
    Facets(Vec<Vec<f64>>),
    L1L2,
    Smoothed {
        base: Box<Oracle>,
        exponent: Option<f64>,
        functionals: Vec<Vec<f64>>,
        core_scale: f64,
        weight: f64,
        quadratic: Vec<Vec<f64>>,
    },
}

fn num(v: &Value) -> f64 {
    match v {
        Value::Number(n) => n.as_f64().unwrap(),
        Value::String(s) if s == "inf" || s == "infinity" => f64::INFINITY,
        Value::String(s) => match s.split_once('/') {
            Some((a, b)) => a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap(),
            None => s.parse().unwrap(),
        },
        other => panic!("not a number: {other}"),
    }
}

fn matrix(v: &Value) -> Vec<Vec<f64>> {
    v.as_array()
        .map(|rows| rows.iter().map(|r| r.as_array().unwrap().iter().map(num).collect()).collect())
        .unwrap_or_default()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `m·x = rhs` by Gaussian elimination with partial pivoting.
fn solve(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| m[r][c] * x[c]).sum();
        x[r] = (rhs[r] - s) / m[r][r];
    }
    Some(x)
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..m {
        for mut rest in subsets(m, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out
}

/// Facets of `conv(±V)` by brute force over vertex subsets.
fn facets(vertices: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut all: Vec<Vec<f64>> = vertices.to_vec();
    all.extend(vertices.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<f64>>()));
    let n = all[0].len();
    let mut out: Vec<Vec<f64>> = Vec::new();
    for s in subsets(all.len(), n) {
        let m: Vec<Vec<f64>> = s.iter().map(|&i| all[i].clone()).collect();
        if let Some(f) = solve(m, vec![1.0; n]) {
            if all.iter().all(|v| dot(&f, v) <= 1.0 + 1e-9)
                && !out.iter().any(|g| g.iter().zip(&f).all(|(a, b)| (a - b).abs() < 1e-9))
            {
                out.push(f);
            }
        }
    }
    out
}

impl Oracle {
    pub fn new(spec: &NormSpec) -> Self {
        Self::from_json(&serde_json::to_value(spec).unwrap())
    }

    fn from_json(v: &Value) -> Self {
        match v["type"].as_str().unwrap() {
            "lp" => Oracle::Lp(num(&v["p"])),
            "polytope" => Oracle::Facets(facets(&matrix(&v["vertices"]))),
            "l1l2" => Oracle::L1L2,
            "smoothed" => {
                let c = &v["construction"];
                Oracle::Smoothed {
                    base: Box::new(Self::from_json(&v["base"])),
                    exponent: c.get("exponent").map(num),
                    functionals: c.get("functionals").map(matrix).unwrap_or_default(),
                    core_scale: num(&c["core_scale"]),
                    weight: num(&c["euclid_weight"]),
                    quadratic: c.get("quadratic").map(matrix).unwrap_or_default(),
                }
            }
            other => panic!("unknown norm type {other}"),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Oracle::Lp(p) if p.is_infinite() => x.iter().fold(0.0, |m, v| m.max(v.abs())),
            Oracle::Lp(p) => x.iter().map(|v| v.abs().powf(*p)).sum::<f64>().powf(1.0 / p),
            Oracle::Facets(fs) => fs.iter().map(|f| dot(f, x).abs()).fold(0.0, f64::max),
            Oracle::L1L2 => x[0].abs() + x[1..].iter().map(|v| v * v).sum::<f64>().sqrt(),
            Oracle::Smoothed {
                base,
                exponent,
                functionals,
                core_scale,
                weight,
                quadratic,
            } => {
                let core = match exponent {
                    None => base.eval(x),
                    Some(q) => {
                        let m = functionals.iter().map(|f| dot(f, x).abs()).fold(0.0, f64::max);
                        if m == 0.0 {
                            0.0
                        } else {
                            let s: f64 = functionals.iter().map(|f| (dot(f, x).abs() / m).powf(*q)).sum();
                            core_scale * m * s.powf(1.0 / q)
                        }
                    }
                };
                if *weight == 0.0 {
                    core
                } else {
                    let qf: f64 = quadratic.iter().zip(x).map(|(row, xi)| xi * dot(row, x)).sum();
                    (1.0 - weight) * core + weight * qf.max(0.0).sqrt()
                }
            }
        }
    }

    pub fn dist(&self, a: &[f64], b: &[f64]) -> f64 {
        self.eval(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<f64>>())
    }
}

pub fn gaussian_unit<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        // Box-Muller pairs
        let v: Vec<f64> = (0..n)
            .map(|_| {
                let (u1, u2): (f64, f64) = (rng.gen_range(1e-12..1.0), rng.gen());
                (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
            })
            .collect();
        let l = dot(&v, &v).sqrt();
        if l > 1e-6 {
            return v.iter().map(|x| x / l).collect();
        }
    }
}

/// Equilateral triple with side `scale`, built by bisection on the circle of
/// radius 1 around the origin in a random plane, then scaled and translated.
pub fn equilateral_triple<R: Rng>(norm: &Oracle, dim: usize, rng: &mut R) -> [Vec<f64>; 3] {
    let u = gaussian_unit(rng, dim);
    let w = loop {
        let r = gaussian_unit(rng, dim);
        let d = dot(&r, &u);
        let w: Vec<f64> = r.iter().zip(&u).map(|(a, b)| a - d * b).collect();
        let l = dot(&w, &w).sqrt();
        if l > 1e-3 {
            break w.iter().map(|x| x / l).collect::<Vec<f64>>();
        }
    };
    let on_circle = |phi: f64| {
        let d: Vec<f64> = u.iter().zip(&w).map(|(a, b)| phi.cos() * a + phi.sin() * b).collect();
        let s = norm.eval(&d);
        d.iter().map(|x| x / s).collect::<Vec<f64>>()
    };
    let b = on_circle(0.0);
    let (mut lo, mut hi) = (0.0, std::f64::consts::PI);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if norm.dist(&on_circle(mid), &b) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = on_circle(0.5 * (lo + hi));
    let s: f64 = rng.gen_range(0.5..2.0);
    let t: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let place = |x: &[f64]| x.iter().zip(&t).map(|(xi, ti)| ti + s * xi).collect::<Vec<f64>>();
    [t.clone(), place(&b), place(&c)]
}

pub fn max_side_deviation(norm: &Oracle, pts: &[Vec<f64>], p: f64) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            worst = worst.max((norm.dist(&pts[i], &pts[j]) - p).abs());
        }
    }
    worst
}
