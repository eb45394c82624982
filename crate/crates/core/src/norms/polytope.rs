//! Norms whose unit ball is a centrally symmetric polytope given by vertices.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank_exact, solve_exact};
use crate::lp::{self, LinearProgram, LpOutcome, Relation};
use crate::rational::{self, RVec, Rational};

/// Upper limit on vertex subsets examined during facet enumeration.
const MAX_SUBSETS: u128 = 5_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct PolytopeNorm {
    dim: usize,
    vertices: Vec<RVec>,
    /// One functional per antipodal facet pair: the ball is `{x : |f·x| ≤ 1 ∀f}`.
    facets: Vec<RVec>,
    facets_f64: Vec<Vec<f64>>,
}

impl PolytopeNorm {
    pub fn new(vertices: Vec<RVec>) -> Result<Self> {
        let dim = vertices
            .first()
            .map(|v| v.len())
            .ok_or_else(|| Error::input("polytope needs vertices"))?;
        if dim == 0 || vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::input("polytope vertices must share a positive dimension"));
        }
        let set: BTreeSet<&RVec> = vertices.iter().collect();
        if set.len() != vertices.len() {
            return Err(Error::input("duplicate polytope vertex"));
        }
        for v in &vertices {
            if v.iter().all(|x| x.is_zero()) {
                return Err(Error::input("origin cannot be a vertex of a unit ball"));
            }
            let neg: RVec = v.iter().map(|x| -x).collect();
            if !set.contains(&neg) {
                return Err(Error::input("polytope vertex set is not centrally symmetric"));
            }
        }
        if rank_exact(&vertices) != dim {
            return Err(Error::input("polytope vertices do not span the space"));
        }
        let facets = enumerate_facets(&vertices, dim)?;
        for v in &vertices {
            let g = facets
                .iter()
                .map(|f| rational::dot(f, v).abs())
                .max()
                .unwrap_or_else(Rational::zero);
            if !g.is_one() {
                return Err(Error::input(
                    "listed polytope vertex lies in the interior of the hull",
                ));
            }
        }
        let facets_f64 = facets.iter().map(|f| rational::vec_to_f64(f)).collect();
        Ok(Self {
            dim,
            vertices,
            facets,
            facets_f64,
        })
    }

    /// Builds the vertex list `±v` from one representative per antipodal pair.
    pub fn from_half(half: &[RVec]) -> Result<Self> {
        let mut all = Vec::with_capacity(2 * half.len());
        for v in half {
            all.push(v.clone());
            all.push(v.iter().map(|x| -x).collect());
        }
        Self::new(all)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[RVec] {
        &self.facets
    }

    pub fn facets_f64(&self) -> &[Vec<f64>] {
        &self.facets_f64
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.facets_f64
            .iter()
            .map(|f| f.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().abs())
            .fold(0.0, f64::max)
    }

    pub fn eval_exact(&self, x: &[Rational]) -> Rational {
        self.facets
            .iter()
            .map(|f| rational::dot(f, x).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Gauge by linear programming: `min λ` s.t. `x = Σ μ_k v_k`, `Σ μ_k = λ`, `μ ≥ 0`.
    /// Independent of the facet description.
    pub fn gauge_lp<T: lp::LpScalar>(&self, x: &[T], convert: impl Fn(&Rational) -> T) -> Result<T> {
        let m = self.vertices.len();
        let mut lp = LinearProgram::<T>::new(m);
        for k in 0..m {
            lp.set_bounds(k, Some(T::zero()), None);
        }
        lp.set_objective(vec![T::one(); m]);
        for i in 0..self.dim {
            let row = self.vertices.iter().map(|v| convert(&v[i])).collect();
            lp.add_row(row, Relation::Eq, x[i].clone());
        }
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => Ok(value),
            _ => Err(Error::internal(
                "gauge LP failed: point outside the cone of the hull",
            )),
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Facet hyperplanes `f·x = 1` through `dim` affinely spanning vertices with
/// every vertex on the inner side. Antipodal facets are stored once.
fn enumerate_facets(vertices: &[RVec], dim: usize) -> Result<Vec<RVec>> {
    let m = vertices.len();
    if binomial(m, dim) > MAX_SUBSETS {
        return Err(Error::input(format!(
            "polytope with {m} vertices in dimension {dim} is too large for facet enumeration"
        )));
    }
    let mut found: BTreeSet<RVec> = BTreeSet::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    let ones = vec![Rational::one(); dim];
    loop {
        let rows: Vec<RVec> = idx.iter().map(|&i| vertices[i].clone()).collect();
        if let Some((f, rank)) = solve_exact(&rows, &ones) {
            if rank == dim && vertices.iter().all(|v| rational::dot(&f, v) <= Rational::one()) {
                found.insert(canonical_sign(f));
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(found.into_iter().collect());
            }
            i -= 1;
            if idx[i] < m - dim + i {
                idx[i] += 1;
                for j in i + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn canonical_sign(f: RVec) -> RVec {
    match f.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => f.into_iter().map(|x| -x).collect(),
        _ => f,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn hexagon() -> PolytopeNorm {
        PolytopeNorm::from_half(&[
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(1)],
        ])
        .unwrap()
    }

    #[test]
    fn hexagon_facets_and_gauge() {
        let h = hexagon();
        assert_eq!(h.facets().len(), 3);
        assert_eq!(h.eval(&[1.0, 1.0]), 1.0);
        assert_eq!(h.eval_exact(&[int(1), int(-1)]), int(2));
        for v in h.vertices() {
            assert!(h.eval_exact(v).is_one());
        }
    }

    #[test]
    fn lp_gauge_matches_facets() {
        let h = hexagon();
        for x in [
            vec![frac(1, 3), frac(-2, 7)],
            vec![int(3), int(1)],
            vec![frac(-5, 2), int(4)],
        ] {
            let lp = h.gauge_lp(&x, |q| q.clone()).unwrap();
            assert_eq!(lp, h.eval_exact(&x));
        }
        let lp = h.gauge_lp(&[0.3, -0.2], rational::to_f64).unwrap();
        assert!((lp - h.eval(&[0.3, -0.2])).abs() < 1e-12);
    }

    #[test]
    fn rejects_asymmetric_degenerate_and_interior() {
        assert!(PolytopeNorm::new(vec![vec![int(1), int(0)], vec![int(-1), int(0)]]).is_err());
        assert!(PolytopeNorm::new(vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(-1), int(0)],
        ])
        .is_err());
        let inner = PolytopeNorm::from_half(&[
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![frac(1, 4), frac(1, 4)],
        ]);
        assert!(inner.is_err());
    }

    #[test]
    fn cube_in_three_dimensions() {
        let mut half = Vec::new();
        for s1 in [-1, 1] {
            for s2 in [-1, 1] {
                half.push(vec![int(1), int(s1), int(s2)]);
            }
        }
        let cube = PolytopeNorm::from_half(&half).unwrap();
        assert_eq!(cube.facets().len(), 3);
        assert_eq!(cube.eval(&[0.5, -2.0, 1.0]), 2.0);
    }
}
