//! Random norms and bodies for experiments and tests.
//!
//! Polytope vertices are rational points placed exactly on the unit circle or
//! sphere (so every listed point is a vertex of the hull) and then moved by a
//! random rational linear map.

use rand::Rng;

use crate::error::Result;
use crate::norms::{smooth_approx, LevelSetBody, NormSpec, PolytopeNorm, SmoothingParams};
use crate::rational::{frac, int, RVec, Rational};

/// Rational point on the unit circle at parameter `s` (rational in `[-1, 1]`).
fn circle_point(s: &Rational) -> RVec {
    let d = int(1) + s * s;
    vec![(int(1) - s * s) / &d, int(2) * s / &d]
}

/// Rational point on the unit sphere by inverse stereographic projection of `(u, v)`.
fn sphere_point(u: &Rational, v: &Rational) -> RVec {
    let q = u * u + v * v;
    let d = &q + int(1);
    vec![int(2) * u / &d, int(2) * v / &d, (q - int(1)) / &d]
}

fn random_frac<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    frac(rng.gen_range(lo * den..=hi * den), den)
}

/// Random invertible rational matrix close to the identity.
fn random_map<R: Rng>(rng: &mut R, n: usize) -> Vec<RVec> {
    loop {
        let m: Vec<RVec> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let base = if i == j { int(1) } else { int(0) };
                        base + frac(rng.gen_range(-40..=40), 100)
                    })
                    .collect()
            })
            .collect();
        if crate::linalg::rank_exact(&m) == n {
            return m;
        }
    }
}

fn apply(m: &[RVec], x: &[Rational]) -> RVec {
    m.iter().map(|row| crate::rational::dot(row, x)).collect()
}

fn symmetric_polytope(half: Vec<RVec>) -> Option<NormSpec> {
    PolytopeNorm::from_half(&half).ok().map(NormSpec::Polytope)
}

/// Symmetric polygon with `2·pairs` vertices.
pub fn random_polygon_norm<R: Rng>(rng: &mut R, pairs: usize) -> NormSpec {
    let pairs = pairs.max(2);
    loop {
        let map = random_map(rng, 2);
        // parameters in (-1, 1] cover a half circle, so no two points are antipodal
        let mut params: Vec<Rational> = (0..pairs).map(|_| random_frac(rng, -1, 1, 997)).collect();
        params.sort();
        params.dedup();
        if params.len() != pairs || params[0] == int(-1) {
            continue;
        }
        let half = params.iter().map(|s| apply(&map, &circle_point(s))).collect();
        if let Some(n) = symmetric_polytope(half) {
            return n;
        }
    }
}

/// Symmetric polytope in ℝ³ with `2·pairs` vertices.
pub fn random_polytope_norm_3d<R: Rng>(rng: &mut R, pairs: usize) -> NormSpec {
    let pairs = pairs.max(3);
    loop {
        let map = random_map(rng, 3);
        // parameters inside the unit disc land on the open lower hemisphere,
        // which rules out antipodal pairs
        let mut half = Vec::with_capacity(pairs);
        while half.len() < pairs {
            let u = random_frac(rng, -1, 1, 211);
            let v = random_frac(rng, -1, 1, 211);
            if &u * &u + &v * &v < int(1) {
                half.push(sphere_point(&u, &v));
            }
        }
        let half = half.iter().map(|x| apply(&map, x)).collect();
        if let Some(n) = symmetric_polytope(half) {
            return n;
        }
    }
}

/// `ℓp` with `p` drawn uniformly from `[lo, hi]`.
pub fn random_lp_norm<R: Rng>(rng: &mut R, dim: usize, lo: f64, hi: f64) -> NormSpec {
    NormSpec::lp(rng.gen_range(lo..=hi), dim).expect("p >= 1")
}

/// Smooth strictly convex norm in ℝ³: a smoothed random polytope or an `ℓp`
/// with `p ∈ [1.2, 8]`, alternating by `index`.
pub fn random_smooth_norm_3d<R: Rng>(rng: &mut R, index: usize) -> Result<NormSpec> {
    if index.is_multiple_of(2) {
        return Ok(random_lp_norm(rng, 3, 1.2, 8.0));
    }
    let pairs = rng.gen_range(4..=8);
    let base = random_polytope_norm_3d(rng, pairs);
    smooth_approx(
        &base,
        &[],
        &SmoothingParams {
            epsilon: rng.gen_range(0.05..0.3),
            sample_count: 2_000,
            seed: rng.gen(),
            ..SmoothingParams::default()
        },
    )
}

/// Non-smooth norm in ℝ³, cycling through `ℓ1`, `ℓ∞` and random polytopes.
pub fn random_nonsmooth_norm_3d<R: Rng>(rng: &mut R, index: usize) -> NormSpec {
    match index % 4 {
        0 => NormSpec::l1(3),
        1 => NormSpec::linf(3),
        _ => {
            let pairs = rng.gen_range(4..=8);
            random_polytope_norm_3d(rng, pairs)
        }
    }
}

/// A smooth strictly convex planar body: the unit ball of a random `ℓp`
/// (`p ∈ [1.5, 6]`) moved by a random linear map and translated.
pub fn random_smooth_body<R: Rng>(rng: &mut R) -> LevelSetBody<'static> {
    let p = rng.gen_range(1.5..=6.0);
    let m = [
        [rng.gen_range(0.6..1.6), rng.gen_range(-0.4..0.4)],
        [rng.gen_range(-0.4..0.4), rng.gen_range(0.6..1.6)],
    ];
    let c = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
    let norm = move |d: [f64; 2]| {
        let y = [m[0][0] * d[0] + m[0][1] * d[1], m[1][0] * d[0] + m[1][1] * d[1]];
        (y[0].abs().powf(p) + y[1].abs().powf(p)).powf(1.0 / p)
    };
    LevelSetBody::new(c, move |q| norm([q[0] - c[0], q[1] - c[1]]), norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::ConvexBody2D;
    use rand::SeedableRng;

    #[test]
    fn polygons_have_requested_vertices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for pairs in 3..=10 {
            let NormSpec::Polytope(p) = random_polygon_norm(&mut rng, pairs) else {
                panic!("expected a polytope");
            };
            assert_eq!(p.vertices().len(), 2 * pairs);
        }
    }

    #[test]
    fn polytopes_in_space_are_full() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let NormSpec::Polytope(p) = random_polytope_norm_3d(&mut rng, 5) else {
                panic!("expected a polytope");
            };
            assert_eq!(p.vertices().len(), 10);
            assert_eq!(p.dim(), 3);
        }
    }

    #[test]
    fn smooth_bodies_contain_their_centre() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let b = random_smooth_body(&mut rng);
        assert!(b.contains(b.interior_point()));
        assert!(random_smooth_norm_3d(&mut rng, 1).unwrap().is_smooth_strictly_convex());
    }
}
