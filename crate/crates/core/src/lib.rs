//! Equilateral sets in finite-dimensional normed spaces.
//!
//! ```
//! use petty::norms::NormSpec;
//! use petty::planar::{circumcircle_equilateral, PlanarConfig};
//!
//! let norm = NormSpec::lp(3.0, 2)?;
//! let y = 0.875f64.cbrt();
//! let cc = circumcircle_equilateral(&norm, [0.0, 0.0], [1.0, 0.0], [0.5, y], &PlanarConfig::default())?;
//! assert!(cc.radius <= cc.p);
//! # Ok::<(), petty::Error>(())
//! ```

// `!(x > 0.0)` style checks are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod equilateral;
pub mod exactcert;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod norms;
pub mod petty3d;
pub mod planar;
pub mod rational;
pub mod roots;
pub mod samples;

pub use error::{Error, Result};
pub use norms::{norm_eval, NormSpec};
