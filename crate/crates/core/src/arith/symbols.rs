//! Legendre and Hilbert symbols over ℚ.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::is_probable_prime;
use super::rat::Rat;
use super::square_class::{square_class, SquareClass};
use super::FieldDesc;
use crate::error::{Error, Result};

/// A place of ℚ. Primes sort before the infinite place.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(BigUint),
    Infinity,
}

impl Place {
    pub fn prime(p: impl Into<BigUint>) -> Result<Place> {
        let p = p.into();
        if !is_probable_prime(&p) {
            return Err(Error::invalid(format!("place {p} is not a prime, 2, or ∞")));
        }
        Ok(Place::Prime(p))
    }

    pub fn two() -> Place {
        Place::Prime(BigUint::from(2u32))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Place::Infinity),
            other => {
                let p: BigUint = other.parse().map_err(|_| {
                    Error::invalid(format!("place '{other}' is not a prime, 2, or ∞"))
                })?;
                Place::prime(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigUint) -> i8 {
    let mut a = a
        .mod_floor(&BigInt::from(n.clone()))
        .to_biguint()
        .unwrap_or_default();
    let mut n = n.clone();
    let mut result = 1i8;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n_mod_8 = (&n % 8u32).to_u32().unwrap_or(0);
        if tz % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
            result = -result;
        }
        if (&a % 4u32) == BigUint::from(3u32) && n_mod_8 % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: &BigInt, p: &BigUint) -> Result<i8> {
    if p.is_even() || !is_probable_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    Ok(jacobi(a, p))
}

pub(crate) fn legendre_unchecked(a: &BigInt, p: &BigUint) -> i8 {
    jacobi(a, p)
}

/// Hilbert symbol (a, b)_v of two nonzero rationals.
pub fn hilbert(a: &Rat, b: &Rat, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::invalid("Hilbert symbol needs nonzero arguments"));
    }
    if let Place::Prime(p) = place {
        if !is_probable_prime(p) {
            return Err(Error::invalid(format!("place {p} is not a prime, 2, or ∞")));
        }
    }
    let a = square_class(a, &FieldDesc::Rationals)?;
    let b = square_class(b, &FieldDesc::Rationals)?;
    Ok(hilbert_classes(&a, &b, place))
}

/// Splits a rational square class at p into (p divides it, signed unit part).
fn split_at(c: &SquareClass, p: &BigUint) -> (bool, BigInt) {
    let SquareClass::Rational { negative, primes } = c else {
        unreachable!("Hilbert symbols are defined for rational square classes only");
    };
    let mut divides = false;
    let mut unit = BigInt::one();
    for q in primes {
        if q == p {
            divides = true;
        } else {
            unit *= BigInt::from(q.clone());
        }
    }
    if *negative {
        unit = -unit;
    }
    (divides, unit)
}

fn mod_small(n: &BigInt, m: u32) -> u32 {
    n.mod_floor(&BigInt::from(m)).to_u32().unwrap_or(0)
}

/// Hilbert symbol on canonical rational square classes.
pub(crate) fn hilbert_classes(a: &SquareClass, b: &SquareClass, place: &Place) -> i8 {
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if *p == BigUint::from(2u32) => {
            let (alpha, u) = split_at(a, p);
            let (beta, v) = split_at(b, p);
            let eps = |x: &BigInt| u32::from(mod_small(x, 4) == 3);
            let omega = |x: &BigInt| {
                let r = mod_small(x, 8);
                u32::from(r == 3 || r == 5)
            };
            let e = eps(&u) * eps(&v) + u32::from(alpha) * omega(&v) + u32::from(beta) * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_at(a, p);
            let (beta, v) = split_at(b, p);
            let mut s = 1i8;
            if alpha && beta && (p % 4u32) == BigUint::from(3u32) {
                s = -s;
            }
            if beta {
                s *= legendre_unchecked(&u, p);
            }
            if alpha {
                s *= legendre_unchecked(&v, p);
            }
            s
        }
    }
}

/// Whether a rational square class becomes a square in the completion at `place`.
pub(crate) fn is_local_square(c: &SquareClass, place: &Place) -> bool {
    match place {
        Place::Infinity => !c.is_negative(),
        Place::Prime(p) => {
            let (divides, unit) = split_at(c, p);
            if divides {
                return false;
            }
            if *p == BigUint::from(2u32) {
                mod_small(&unit, 8) == 1
            } else {
                legendre_unchecked(&unit, p) == 1
            }
        }
    }
}
