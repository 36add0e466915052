//! Dense univariate polynomials over ℚ.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rat::{rat_to_string, rat_vec};
use crate::arith::{rat, Rat};
use crate::error::{Error, Result};

/// Coefficients in ascending degree. Trailing zeros are stripped, so the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawPoly")]
pub struct Poly {
    #[serde(with = "rat_vec")]
    coeffs: Vec<Rat>,
}

#[derive(Deserialize)]
struct RawPoly {
    #[serde(with = "rat_vec")]
    coeffs: Vec<Rat>,
}

impl From<RawPoly> for Poly {
    fn from(raw: RawPoly) -> Poly {
        Poly::new(raw.coeffs)
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    /// x^k.
    pub fn monomial(k: usize) -> Poly {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of x^k, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&rat(-1))
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![Rat::zero(); n - dd + 1];
        for k in (dd..=n).rev() {
            let c = &rem[k] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] -= &c * b;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&(Rat::one() / self.leading()))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree().is_some() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Resultant as the determinant of the Sylvester matrix.
    pub fn resultant(&self, other: &Poly) -> Rat {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return Rat::zero();
        };
        if m + n == 0 {
            return Rat::one();
        }
        let size = m + n;
        let mut rows = vec![vec![Rat::zero(); size]; size];
        for i in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                rows[i][i + k] = c.clone();
            }
        }
        for i in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                rows[n + i][i + k] = c.clone();
            }
        }
        determinant(rows)
    }

    /// (−1)^{n(n−1)/2}·res(f, f′)/lc(f), which is Π_{i<j}(rᵢ − rⱼ)² for monic f.
    pub fn discriminant(&self) -> Rat {
        let Some(n) = self.degree() else {
            return Rat::zero();
        };
        let r = self.resultant(&self.derivative()) / self.leading();
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }
}

/// Determinant by fraction-exact Gaussian elimination.
pub(crate) fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one() && k > 0;
            if !unit {
                write!(f, "{}", rat_to_string(&a))?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Parses "[c0, c1, …]" or a bare comma-separated list of ascending coefficients.
pub fn parse_coeffs(s: &str) -> Result<Poly> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    if body.trim().is_empty() {
        return Err(Error::invalid("empty coefficient list"));
    }
    let coeffs = body
        .split(',')
        .map(|t| crate::arith::parse_rat(t.trim().trim_matches('"')))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}
