//! Exact arithmetic: integer polynomials, canonical rational functions and
//! truncated power series with rational coefficients.
//!
//! JSON form of a polynomial is an array of ascending coefficients written
//! as decimal strings; a rational function is `{"num": [...], "den": [...]}`.
//! Decoding accepts JSON integers as well as strings and re-normalizes.

mod poly;
mod rational;
mod series;

pub use poly::{poly_lcm, IntPoly};
pub use rational::{rf_normalize, RatFunc};
pub use series::TruncSeries;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

/// Degree of a rational function: `deg num - deg den`, `None` for zero.
pub fn rf_degree(f: &RatFunc) -> Option<i64> {
    f.degree()
}

pub fn rf_series(f: &RatFunc, order: usize) -> crate::Result<TruncSeries> {
    f.series(order)
}

pub fn rf_eval(f: &RatFunc, q: &num_rational::BigRational) -> crate::Result<num_rational::BigRational> {
    f.eval(q)
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs().iter().map(|c| c.to_string()))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coeff {
    Int(i64),
    Str(String),
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Coeff>::deserialize(d)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                Coeff::Int(v) => Ok(BigInt::from(v)),
                Coeff::Str(s) => s
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| de::Error::custom(format!("invalid integer coefficient {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RatFunc", 2)?;
        st.serialize_field("num", self.num())?;
        st.serialize_field("den", self.den())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            num: IntPoly,
            den: IntPoly,
        }
        let raw = Raw::deserialize(d)?;
        RatFunc::new(raw.num, raw.den).map_err(de::Error::custom)
    }
}
