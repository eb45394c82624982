//! Exact rational scalars and vectors.
//!
//! Rationals travel through JSON as `"p/q"` strings (or `"p"` for integers).
//! Coordinates supplied as plain JSON numbers are converted exactly from
//! their binary value, so `0.1` becomes `3602879701896397/36028797018963968`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RVec = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::input(format!("malformed rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::input(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(n, d))
    } else if let Ok(n) = BigInt::from_str(s) {
        Ok(Rational::from_integer(n))
    } else {
        let f: f64 = s.parse().map_err(|_| bad())?;
        from_f64(f)
    }
}

pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::input(format!("non-finite value {x}")))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for direct conversion
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn vec_to_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

pub fn vec_from_f64(v: &[f64]) -> Result<RVec> {
    v.iter().map(|&x| from_f64(x)).collect()
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn l1_norm(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x.abs())
}

pub fn linf_norm(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

/// Serde adapter for a single rational written as a `"p/q"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        Ok(d.deserialize_any(NumVisitor)?.0)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_rvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format_rational).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<RVec, D::Error> {
        let v: Vec<ExactNum> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|e| e.0).collect())
    }
}

/// Serde adapter for `Vec<Vec<Rational>>`.
pub mod serde_rvecs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[RVec], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = v
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<RVec>, D::Error> {
        let v: Vec<Vec<ExactNum>> = Vec::deserialize(d)?;
        Ok(v
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.0).collect())
            .collect())
    }
}

/// A rational that deserializes from either a `"p/q"` string or a JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactNum(pub Rational);

impl Serialize for ExactNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for ExactNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(NumVisitor)
    }
}

impl fmt::Display for ExactNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

struct NumVisitor;

impl<'de> Visitor<'de> for NumVisitor {
    type Value = ExactNum;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number or a \"p/q\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExactNum, E> {
        Ok(ExactNum(int(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExactNum, E> {
        Ok(ExactNum(Rational::from_integer(BigInt::from(v))))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExactNum, E> {
        from_f64(v).map(ExactNum).map_err(E::custom)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExactNum, E> {
        parse_rational(v).map(ExactNum).map_err(E::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/12").unwrap(), frac(1, 4));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" -1 / 12 ").unwrap(), frac(-1, 12));
        assert_eq!(parse_rational("0.5").unwrap(), frac(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&frac(6, -8)), "-3/4");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn json_accepts_strings_and_numbers() {
        let v: Vec<ExactNum> = serde_json::from_str(r#"["1/3", 2, -0.25]"#).unwrap();
        assert_eq!(v[0].0, frac(1, 3));
        assert_eq!(v[1].0, int(2));
        assert_eq!(v[2].0, frac(-1, 4));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/3","2","-1/4"]"#);
    }
}
