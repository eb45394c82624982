//! Norm specifications, gauge evaluation, planar convex-body oracles and the
//! smooth strictly convex approximation operator.
//!
//! A [`NormSpec`] is declarative: it serializes to JSON and every evaluation
//! is derived from its fields.
//!
//! ```json
//! {"type": "lp", "p": 2, "dim": 3}
//! {"type": "lp", "p": "inf", "dim": 3}
//! {"type": "polytope", "vertices": [["1","0"], ["-1","0"], ["0","1"], ["0","-1"]]}
//! {"type": "l1l2", "dim": 4}
//! {"type": "smoothed", "base": {...}, "epsilon": 0.1, "anchors": [[1,0],[0,1]]}
//! ```
//!
//! Rationals are `"p/q"` strings. A `smoothed` spec may omit its
//! `construction` block, in which case it is rebuilt deterministically on load.

mod body;
mod polytope;
mod smooth;

pub use body::{
    ray_to_boundary, validate_body, ConvexBody2D, LevelSetBody, MembershipOracle, NormBall,
    DEFAULT_MAX_RADIUS, DEFAULT_TOLERANCE,
};
pub use polytope::PolytopeNorm;
pub use smooth::{
    check_sandwich, chord_convexity_margin, smooth_approx, SmoothConstruction, SmoothedNorm,
    SmoothingParams,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, serde_rvecs, RVec, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NormSpecJson", into = "NormSpecJson")]
pub enum NormSpec {
    /// `ℓp` on `ℝ^dim`; `p = f64::INFINITY` is the max norm.
    Lp { p: f64, dim: usize },
    Polytope(PolytopeNorm),
    /// `|x₁| + sqrt(x₂² + … + x_n²)`.
    L1PlusL2 { dim: usize },
    Smoothed(Box<SmoothedNorm>),
}

impl NormSpec {
    pub fn lp(p: f64, dim: usize) -> Result<Self> {
        if !(p >= 1.0) || dim == 0 {
            return Err(Error::input(format!("invalid lp norm p={p} dim={dim}")));
        }
        Ok(NormSpec::Lp { p, dim })
    }

    pub fn euclidean(dim: usize) -> Self {
        NormSpec::Lp { p: 2.0, dim }
    }

    pub fn l1(dim: usize) -> Self {
        NormSpec::Lp { p: 1.0, dim }
    }

    pub fn linf(dim: usize) -> Self {
        NormSpec::Lp {
            p: f64::INFINITY,
            dim,
        }
    }

    pub fn l1_plus_l2(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::input("l1l2 norm needs dim >= 2"));
        }
        Ok(NormSpec::L1PlusL2 { dim })
    }

    pub fn polytope(vertices: Vec<RVec>) -> Result<Self> {
        Ok(NormSpec::Polytope(PolytopeNorm::new(vertices)?))
    }

    pub fn dim(&self) -> usize {
        match self {
            NormSpec::Lp { dim, .. } | NormSpec::L1PlusL2 { dim } => *dim,
            NormSpec::Polytope(p) => p.dim(),
            NormSpec::Smoothed(s) => s.dim(),
        }
    }

    /// Unchecked evaluation; `x.len()` must equal `self.dim()`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        match self {
            NormSpec::Lp { p, .. } => lp_eval(*p, x),
            NormSpec::Polytope(poly) => poly.eval(x),
            NormSpec::L1PlusL2 { .. } => {
                x[0].abs() + x[1..].iter().fold(0.0f64, |acc, v| acc.hypot(*v))
            }
            NormSpec::Smoothed(s) => s.eval(x),
        }
    }

    /// Exact value for polyhedral norms on rational input; `None` otherwise.
    pub fn eval_exact(&self, x: &[Rational]) -> Option<Rational> {
        match self {
            NormSpec::Lp { p, .. } if *p == 1.0 => Some(rational::l1_norm(x)),
            NormSpec::Lp { p, .. } if p.is_infinite() => Some(rational::linf_norm(x)),
            NormSpec::Polytope(poly) => Some(poly.eval_exact(x)),
            _ => None,
        }
    }

    pub fn is_polyhedral(&self) -> bool {
        match self {
            NormSpec::Lp { p, .. } => *p == 1.0 || p.is_infinite(),
            NormSpec::Polytope(_) => true,
            _ => false,
        }
    }

    /// True when the unit ball is smooth and strictly convex by construction.
    pub fn is_smooth_strictly_convex(&self) -> bool {
        match self {
            NormSpec::Lp { p, .. } => *p > 1.0 && p.is_finite(),
            NormSpec::Smoothed(_) => true,
            _ => false,
        }
    }

    /// Linear functionals `f_k` with `‖x‖ = max_k |f_k·x|`, for polyhedral norms.
    pub fn polyhedral_functionals(&self) -> Option<Vec<Vec<f64>>> {
        match self {
            NormSpec::Lp { p, dim } if p.is_infinite() => Some(
                (0..*dim)
                    .map(|i| (0..*dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                    .collect(),
            ),
            NormSpec::Lp { p, dim } if *p == 1.0 && *dim <= 16 => {
                let n = *dim;
                Some(
                    (0..1usize << (n - 1))
                        .map(|mask| {
                            (0..n)
                                .map(|j| {
                                    if j == 0 || mask & (1 << (j - 1)) == 0 {
                                        1.0
                                    } else {
                                        -1.0
                                    }
                                })
                                .collect()
                        })
                        .collect(),
                )
            }
            NormSpec::Polytope(poly) => Some(poly.facets_f64().to_vec()),
            _ => None,
        }
    }
}

/// Checked evaluation of `‖x‖`.
pub fn norm_eval(spec: &NormSpec, x: &[f64]) -> Result<f64> {
    if x.len() != spec.dim() {
        return Err(Error::input(format!(
            "dimension mismatch: norm has dim {}, vector has {}",
            spec.dim(),
            x.len()
        )));
    }
    let v = spec.eval(x);
    if !v.is_finite() {
        return Err(Error::internal("norm evaluation produced a non-finite value"));
    }
    Ok(v)
}

fn lp_eval(p: f64, x: &[f64]) -> f64 {
    if p == 1.0 {
        x.iter().map(|v| v.abs()).sum()
    } else if p.is_infinite() {
        x.iter().fold(0.0, |m, v| m.max(v.abs()))
    } else if p == 2.0 {
        x.iter().fold(0.0f64, |acc, v| acc.hypot(*v))
    } else {
        let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if m == 0.0 {
            return 0.0;
        }
        let s: f64 = x.iter().map(|v| (v.abs() / m).powf(p)).sum();
        m * s.powf(1.0 / p)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum PValue {
    Num(f64),
    Str(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum NormSpecJson {
    Lp {
        p: PValue,
        dim: usize,
    },
    Polytope {
        #[serde(with = "serde_rvecs")]
        vertices: Vec<RVec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
    L1l2 {
        dim: usize,
    },
    Smoothed {
        base: Box<NormSpec>,
        epsilon: f64,
        anchors: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        construction: Option<SmoothConstruction>,
    },
}

impl TryFrom<NormSpecJson> for NormSpec {
    type Error = Error;

    fn try_from(j: NormSpecJson) -> Result<Self> {
        match j {
            NormSpecJson::Lp { p, dim } => {
                let p = match p {
                    PValue::Num(v) => v,
                    PValue::Str(s) if s == "inf" || s == "infinity" => f64::INFINITY,
                    PValue::Str(s) => s
                        .parse()
                        .map_err(|_| Error::input(format!("bad p value {s:?}")))?,
                };
                NormSpec::lp(p, dim)
            }
            NormSpecJson::Polytope { vertices, dim } => {
                let poly = PolytopeNorm::new(vertices)?;
                if let Some(d) = dim {
                    if d != poly.dim() {
                        return Err(Error::input("polytope dim field disagrees with vertices"));
                    }
                }
                Ok(NormSpec::Polytope(poly))
            }
            NormSpecJson::L1l2 { dim } => NormSpec::l1_plus_l2(dim),
            NormSpecJson::Smoothed {
                base,
                epsilon,
                anchors,
                construction,
            } => match construction {
                Some(c) => Ok(NormSpec::Smoothed(Box::new(SmoothedNorm::from_parts(
                    *base, epsilon, anchors, c,
                )?))),
                None => smooth_approx(
                    &base,
                    &anchors,
                    &SmoothingParams {
                        epsilon,
                        ..SmoothingParams::default()
                    },
                ),
            },
        }
    }
}

impl From<NormSpec> for NormSpecJson {
    fn from(n: NormSpec) -> Self {
        match n {
            NormSpec::Lp { p, dim } => NormSpecJson::Lp {
                p: if p.is_infinite() {
                    PValue::Str("inf".into())
                } else {
                    PValue::Num(p)
                },
                dim,
            },
            NormSpec::Polytope(poly) => NormSpecJson::Polytope {
                vertices: poly.vertices().to_vec(),
                dim: Some(poly.dim()),
            },
            NormSpec::L1PlusL2 { dim } => NormSpecJson::L1l2 { dim },
            NormSpec::Smoothed(s) => {
                let (base, epsilon, anchors, construction) = s.into_parts();
                NormSpecJson::Smoothed {
                    base: Box::new(base),
                    epsilon,
                    anchors,
                    construction: Some(construction),
                }
            }
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn spec_examples() {
        assert_eq!(NormSpec::l1(4).eval(&[1.0, 0.0, 0.0, 0.0]), 1.0);
        let l1l2 = NormSpec::l1_plus_l2(4).unwrap();
        assert_eq!(l1l2.eval(&[1.0, 2.0, 2.0, 1.0]), 4.0);
        let hex = NormSpec::polytope(vec![
            vec![int(1), int(0)],
            vec![int(-1), int(0)],
            vec![int(0), int(1)],
            vec![int(0), int(-1)],
            vec![int(1), int(1)],
            vec![int(-1), int(-1)],
        ])
        .unwrap();
        assert_eq!(hex.eval(&[1.0, 1.0]), 1.0);
    }

    #[test]
    fn dimension_mismatch_is_input_error() {
        let e = norm_eval(&NormSpec::euclidean(3), &[1.0, 2.0]).unwrap_err();
        assert!(matches!(e, Error::Input(_)));
    }

    #[test]
    fn lp_values() {
        let x = [3.0, -4.0];
        assert!((NormSpec::euclidean(2).eval(&x) - 5.0).abs() < 1e-15);
        assert_eq!(NormSpec::linf(2).eval(&x), 4.0);
        let l3 = NormSpec::lp(3.0, 2).unwrap().eval(&x);
        assert!((l3 - (27.0f64 + 64.0).cbrt()).abs() < 1e-12);
        assert!(NormSpec::lp(0.5, 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        for text in [
            r#"{"type":"lp","p":2.5,"dim":3}"#,
            r#"{"type":"lp","p":"inf","dim":2}"#,
            r#"{"type":"l1l2","dim":4}"#,
            r#"{"type":"polytope","vertices":[["1","0"],["-1","0"],["1/2","1"],["-1/2","-1"]]}"#,
        ] {
            let n: NormSpec = serde_json::from_str(text).unwrap();
            let back = serde_json::to_string(&n).unwrap();
            let again: NormSpec = serde_json::from_str(&back).unwrap();
            assert_eq!(n, again);
        }
        assert!(serde_json::from_str::<NormSpec>(r#"{"type":"lp","p":0.2,"dim":3}"#).is_err());
        assert!(serde_json::from_str::<NormSpec>(r#"{"type":"cube"}"#).is_err());
    }

    #[test]
    fn exact_evaluation_only_for_polyhedral() {
        let x = vec![rational::frac(1, 3), int(-2)];
        assert_eq!(NormSpec::l1(2).eval_exact(&x), Some(rational::frac(7, 3)));
        assert_eq!(NormSpec::linf(2).eval_exact(&x), Some(int(2)));
        assert!(NormSpec::euclidean(2).eval_exact(&x).is_none());
    }
}
