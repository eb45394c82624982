//! Small dense helpers: exact elimination over rationals and a few f64 vector ops.

use num_traits::{One, Zero};

use crate::rational::{RVec, Rational};

/// Row-reduces `[a | b]` exactly. Returns `None` when the system is
/// inconsistent, otherwise one solution (free variables set to zero) and the rank.
pub fn solve_exact(a: &[RVec], b: &[Rational]) -> Option<(RVec, usize)> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<RVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for j in c..=cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some((x, pivots.len()))
}

pub fn rank_exact(rows: &[RVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let b = vec![Rational::zero(); rows.len()];
    solve_exact(rows, &b).map(|(_, r)| r).unwrap_or(0)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// Gram–Schmidt on random Gaussian columns; returns `n` orthonormal vectors.
pub fn random_orthonormal<R: rand::Rng>(n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    while basis.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        for b in &basis {
            let d = dot(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= d * bi;
            }
        }
        let len = norm2(&v);
        if len > 1e-8 {
            basis.push(scale(&v, 1.0 / len));
        }
    }
    basis
}

/// Box–Muller standard normal.
pub fn gaussian<R: rand::Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn random_unit<R: rand::Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let len = norm2(&v);
        if len > 1e-8 {
            return scale(&v, 1.0 / len);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn exact_solve_unique_and_inconsistent() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let (x, rank) = solve_exact(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);

        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve_exact(&a, &[int(1), int(3)]).is_none());
        assert_eq!(rank_exact(&a), 1);
    }

    #[test]
    fn orthonormal_basis_is_orthonormal() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let q = random_orthonormal(5, &mut rng);
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot(&q[i], &q[j]) - want).abs() < 1e-12);
            }
        }
    }
}
