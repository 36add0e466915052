//! Canonical representatives of k*/(k*)².

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::odd_primes_of;
use super::rat::Rat;
use super::symbols::legendre_unchecked;
use super::FieldDesc;
use crate::error::{Error, Result};

/// A square class of a field. The field itself is carried by the form that
/// owns the class; each variant is only meaningful for its field kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareClass {
    /// Over ℚ: the squarefree integer `±∏ primes`.
    Rational {
        negative: bool,
        primes: Vec<BigUint>,
    },
    /// Over 𝔽_p: 1 or the least quadratic nonresidue.
    Residue { nonsquare: bool },
    /// Over ℝ: ±1.
    Real { negative: bool },
    /// Over a quadratically closed field every unit is a square.
    Trivial,
}

impl SquareClass {
    pub fn one(field: &FieldDesc) -> SquareClass {
        match field {
            FieldDesc::Rationals => SquareClass::Rational {
                negative: false,
                primes: Vec::new(),
            },
            FieldDesc::FiniteField(_) => SquareClass::Residue { nonsquare: false },
            FieldDesc::Reals => SquareClass::Real { negative: false },
            FieldDesc::QuadClosed => SquareClass::Trivial,
        }
    }

    pub fn minus_one(field: &FieldDesc) -> SquareClass {
        match field {
            FieldDesc::Rationals => SquareClass::Rational {
                negative: true,
                primes: Vec::new(),
            },
            FieldDesc::FiniteField(p) => SquareClass::Residue {
                nonsquare: (p % 4u32) == BigUint::from(3u32),
            },
            FieldDesc::Reals => SquareClass::Real { negative: true },
            FieldDesc::QuadClosed => SquareClass::Trivial,
        }
    }

    /// Square class of a squarefree integer whose prime support is already known.
    pub(crate) fn rational_from_parts(negative: bool, mut primes: Vec<BigUint>) -> SquareClass {
        primes.sort();
        primes.dedup();
        SquareClass::Rational { negative, primes }
    }

    pub fn is_one(&self) -> bool {
        match self {
            SquareClass::Rational { negative, primes } => !negative && primes.is_empty(),
            SquareClass::Residue { nonsquare } => !nonsquare,
            SquareClass::Real { negative } => !negative,
            SquareClass::Trivial => true,
        }
    }

    /// True for negative classes over ℚ and ℝ.
    pub fn is_negative(&self) -> bool {
        match self {
            SquareClass::Rational { negative, .. } | SquareClass::Real { negative } => *negative,
            _ => false,
        }
    }

    /// +1 or −1 over ordered fields.
    pub fn sign(&self) -> Option<i8> {
        match self {
            SquareClass::Rational { negative, .. } | SquareClass::Real { negative } => {
                Some(if *negative { -1 } else { 1 })
            }
            _ => None,
        }
    }

    /// Primes of the squarefree representative (empty except over ℚ).
    pub fn primes(&self) -> &[BigUint] {
        match self {
            SquareClass::Rational { primes, .. } => primes,
            _ => &[],
        }
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        match (self, other) {
            (
                SquareClass::Rational {
                    negative: a,
                    primes: p,
                },
                SquareClass::Rational {
                    negative: b,
                    primes: q,
                },
            ) => {
                // symmetric difference of two sorted lists
                let mut out = Vec::with_capacity(p.len() + q.len());
                let (mut i, mut j) = (0, 0);
                while i < p.len() && j < q.len() {
                    match p[i].cmp(&q[j]) {
                        std::cmp::Ordering::Less => {
                            out.push(p[i].clone());
                            i += 1;
                        }
                        std::cmp::Ordering::Greater => {
                            out.push(q[j].clone());
                            j += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                    }
                }
                out.extend_from_slice(&p[i..]);
                out.extend_from_slice(&q[j..]);
                SquareClass::Rational {
                    negative: a ^ b,
                    primes: out,
                }
            }
            (SquareClass::Residue { nonsquare: a }, SquareClass::Residue { nonsquare: b }) => {
                SquareClass::Residue { nonsquare: a ^ b }
            }
            (SquareClass::Real { negative: a }, SquareClass::Real { negative: b }) => {
                SquareClass::Real { negative: a ^ b }
            }
            (SquareClass::Trivial, SquareClass::Trivial) => SquareClass::Trivial,
            (a, b) => unreachable!("square classes from different fields: {a:?} * {b:?}"),
        }
    }

    /// The canonical representative as an integer.
    pub fn rep(&self, field: &FieldDesc) -> BigInt {
        match self {
            SquareClass::Rational { negative, primes } => {
                let mut r = primes
                    .iter()
                    .fold(BigInt::one(), |acc, p| acc * BigInt::from(p.clone()));
                if *negative {
                    r = -r;
                }
                r
            }
            SquareClass::Residue { nonsquare } => {
                if *nonsquare {
                    BigInt::from(field.least_nonresidue().unwrap_or_else(BigUint::one))
                } else {
                    BigInt::one()
                }
            }
            SquareClass::Real { negative } => {
                if *negative {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            }
            SquareClass::Trivial => BigInt::one(),
        }
    }

    pub fn display<'a>(&'a self, field: &'a FieldDesc) -> impl fmt::Display + 'a {
        struct D<'a>(&'a SquareClass, &'a FieldDesc);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0.rep(self.1))
            }
        }
        D(self, field)
    }
}

/// Canonical square class of a nonzero rational in `field`.
pub fn square_class(a: &Rat, field: &FieldDesc) -> Result<SquareClass> {
    if a.is_zero() {
        return Err(Error::invalid("zero has no square class"));
    }
    match field {
        FieldDesc::Rationals => {
            let mut primes = odd_primes_of(a.numer())?;
            primes.extend(odd_primes_of(a.denom())?);
            Ok(SquareClass::rational_from_parts(a.is_negative(), primes))
        }
        FieldDesc::FiniteField(p) => {
            let residue = reduce_mod_p(a, p)?;
            Ok(SquareClass::Residue {
                nonsquare: legendre_unchecked(&residue, p) == -1,
            })
        }
        FieldDesc::Reals => Ok(SquareClass::Real {
            negative: a.is_negative(),
        }),
        FieldDesc::QuadClosed => Ok(SquareClass::Trivial),
    }
}

/// Image of a rational in 𝔽_p, as an integer in [0, p).
pub fn reduce_mod_p(a: &Rat, p: &BigUint) -> Result<BigInt> {
    let pi = BigInt::from(p.clone());
    let den = a.denom().mod_floor(&pi);
    if den.is_zero() {
        return Err(Error::invalid(format!(
            "{a} has p = {p} in its denominator"
        )));
    }
    let inv = den.modpow(&(&pi - 2), &pi);
    let r = (a.numer() * inv).mod_floor(&pi);
    if r.is_zero() {
        return Err(Error::invalid(format!("{a} vanishes modulo {p}")));
    }
    Ok(r)
}
