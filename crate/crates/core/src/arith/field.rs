use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::is_probable_prime;
use super::symbols::legendre;
use crate::error::{Error, Result};

/// A base field of characteristic other than two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rationals,
    FiniteField(BigUint),
    Reals,
    /// A quadratically closed field such as the algebraic closure of ℚ.
    QuadClosed,
}

impl FieldDesc {
    pub fn finite(p: impl Into<BigUint>) -> Result<FieldDesc> {
        let p = p.into();
        if p == BigUint::from(2u32) {
            return Err(Error::CharacteristicTwo);
        }
        if !is_probable_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(FieldDesc::FiniteField(p))
    }

    pub fn characteristic(&self) -> BigUint {
        match self {
            FieldDesc::FiniteField(p) => p.clone(),
            _ => BigUint::zero(),
        }
    }

    /// Whether forms over this field carry a signature.
    pub fn is_ordered(&self) -> bool {
        matches!(self, FieldDesc::Rationals | FieldDesc::Reals)
    }

    /// The least positive quadratic nonresidue modulo p.
    pub fn least_nonresidue(&self) -> Option<BigUint> {
        let FieldDesc::FiniteField(p) = self else {
            return None;
        };
        let mut a = BigInt::from(2);
        loop {
            if legendre(&a, p).ok()? == -1 {
                return a.to_biguint();
            }
            a += BigInt::one();
        }
    }

    pub(crate) fn ensure_same(&self, other: &FieldDesc) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::FiniteField(p) => write!(f, "Fp:{p}"),
            FieldDesc::Reals => write!(f, "R"),
            FieldDesc::QuadClosed => write!(f, "Cbar"),
        }
    }
}

impl FromStr for FieldDesc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "QQ" | "Rationals" => Ok(FieldDesc::Rationals),
            "R" | "RR" | "Reals" => Ok(FieldDesc::Reals),
            "Cbar" | "C" | "QuadClosed" => Ok(FieldDesc::QuadClosed),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .or_else(|| other.strip_prefix("F"))
                    .ok_or_else(|| Error::invalid(format!("unknown field '{other}'")))?;
                let p: BigUint = p
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad characteristic in '{other}'")))?;
                FieldDesc::finite(p)
            }
        }
    }
}

impl Serialize for FieldDesc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldDesc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_field_validation() {
        assert_eq!(FieldDesc::finite(2u32), Err(Error::CharacteristicTwo));
        assert!(matches!(FieldDesc::finite(9u32), Err(Error::NotPrime(_))));
        assert!(FieldDesc::finite(7u32).is_ok());
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["Q", "R", "Cbar", "Fp:11"] {
            let f: FieldDesc = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert_eq!("Fp:2".parse::<FieldDesc>(), Err(Error::CharacteristicTwo));
    }

    #[test]
    fn least_nonresidues() {
        let nr = |p: u32| FieldDesc::finite(p).unwrap().least_nonresidue().unwrap();
        assert_eq!(nr(3), BigUint::from(2u32));
        assert_eq!(nr(7), BigUint::from(3u32));
        assert_eq!(nr(17), BigUint::from(3u32));
        assert_eq!(nr(71), BigUint::from(7u32));
    }
}
