//! Exact rationals and their JSON string encoding ("p/q" or "n").

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not a rational number: '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::invalid(format!("zero denominator in '{s}'")));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

/// `#[serde(with = "rat_str")]` for a single rational.
pub mod rat_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = RatInput::deserialize(d)?;
        s.into_rat().map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "rat_vec")]` for a list of rationals.
pub mod rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&rat_to_string(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        Vec::<RatInput>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_rat().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// `#[serde(with = "rat_matrix")]` for a square matrix of rationals.
pub mod rat_matrix {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    struct Row<'a>(&'a [Rat]);

    impl serde::Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            super::rat_vec::serialize(self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(m: &[Vec<Rat>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rat>>, D::Error> {
        Vec::<Vec<RatInput>>::deserialize(d)?
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| r.into_rat().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Accepts either a JSON string or a JSON integer.
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum RatInput {
    Str(String),
    Int(i64),
}

impl RatInput {
    fn into_rat(self) -> Result<Rat> {
        match self {
            RatInput::Str(s) => parse_rat(&s),
            RatInput::Int(n) => Ok(rat(n)),
        }
    }
}
