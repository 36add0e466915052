//! Symmetric Gram matrices and congruence diagonalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::DiagForm;
use crate::arith::rat::rat_matrix;
use crate::arith::{reduce_mod_p, square_class, FieldDesc, Rat};
use crate::error::{Error, Result};

/// A nondegenerate symmetric bilinear form given by its Gram matrix.
///
/// Entries are rationals; over 𝔽_p they are read modulo p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGram")]
pub struct GramForm {
    field: FieldDesc,
    #[serde(with = "rat_matrix")]
    gram: Vec<Vec<Rat>>,
}

#[derive(Deserialize)]
struct RawGram {
    field: FieldDesc,
    #[serde(with = "rat_matrix")]
    gram: Vec<Vec<Rat>>,
}

impl TryFrom<RawGram> for GramForm {
    type Error = Error;

    fn try_from(raw: RawGram) -> Result<Self> {
        GramForm::new(raw.field, raw.gram)
    }
}

/// Exact arithmetic in the field a Gram matrix lives over.
trait Scalars {
    type E: Clone + PartialEq;
    fn embed(&self, r: &Rat) -> Result<Self::E>;
    fn lift(&self, e: &Self::E) -> Rat;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, e: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn div(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

struct Rationals;

impl Scalars for Rationals {
    type E = Rat;
    fn embed(&self, r: &Rat) -> Result<Rat> {
        Ok(r.clone())
    }
    fn lift(&self, e: &Rat) -> Rat {
        e.clone()
    }
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, e: &Rat) -> bool {
        e.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn div(&self, a: &Rat, b: &Rat) -> Rat {
        a / b
    }
}

struct Residues {
    p: BigInt,
}

impl Scalars for Residues {
    type E = BigInt;
    fn embed(&self, r: &Rat) -> Result<BigInt> {
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let p = self.p.to_biguint().unwrap_or_default();
        match reduce_mod_p(r, &p) {
            Ok(v) => Ok(v),
            // a nonzero rational divisible by p is zero in 𝔽_p
            Err(_) if !(r.denom() % &self.p).is_zero() => Ok(BigInt::zero()),
            Err(e) => Err(e),
        }
    }
    fn lift(&self, e: &BigInt) -> Rat {
        Rat::from_integer(e.clone())
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a + b).mod_floor(&self.p)
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a - b).mod_floor(&self.p)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).mod_floor(&self.p)
    }
    fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let inv = b.modpow(&(&self.p - 2), &self.p);
        self.mul(a, &inv)
    }
}

fn rank_of<S: Scalars>(s: &S, mut m: Vec<Vec<S::E>>) -> usize {
    let n = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..n).find(|&r| !s.is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(rank, piv);
        for r in 0..n {
            if r != rank && !s.is_zero(&m[r][c]) {
                let f = s.div(&m[r][c], &m[rank][c]);
                for k in c..cols {
                    let t = s.mul(&f, &m[rank][k]);
                    m[r][k] = s.sub(&m[r][k], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Symmetric Gaussian elimination. Returns the diagonal and a matrix P with
/// Pᵀ·A·P equal to that diagonal, or the radical dimension when A is singular.
fn congruence_diagonalize<S: Scalars>(
    s: &S,
    a0: &[Vec<S::E>],
) -> std::result::Result<(Vec<S::E>, Vec<Vec<S::E>>), usize> {
    let n = a0.len();
    let mut a = a0.to_vec();
    let mut p: Vec<Vec<S::E>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { s.one() } else { s.zero() })
                .collect()
        })
        .collect();

    for k in 0..n {
        if s.is_zero(&a[k][k]) {
            if let Some(j) = (k + 1..n).find(|&j| !s.is_zero(&a[j][j])) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
                for row in p.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !s.is_zero(&a[k][j])) {
                // column k += c·column j and row k += c·row j with c = 1/(2·a[k][j]),
                // which makes the new pivot exactly 1
                let two = s.add(&a[k][j], &a[k][j]);
                let c = s.div(&s.one(), &two);
                for i in 0..n {
                    let t = s.mul(&c, &a[i][j]);
                    a[i][k] = s.add(&a[i][k], &t);
                    let t = s.mul(&c, &p[i][j]);
                    p[i][k] = s.add(&p[i][k], &t);
                }
                for i in 0..n {
                    let t = s.mul(&c, &a[j][i]);
                    a[k][i] = s.add(&a[k][i], &t);
                }
            } else {
                return Err(n - rank_of(s, a0.to_vec()));
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if s.is_zero(&a[i][k]) {
                continue;
            }
            let c = s.div(&a[i][k], &pivot);
            for r in 0..n {
                let t = s.mul(&c, &a[r][k]);
                a[r][i] = s.sub(&a[r][i], &t);
                let t = s.mul(&c, &p[r][k]);
                p[r][i] = s.sub(&p[r][i], &t);
            }
            for col in 0..n {
                let t = s.mul(&c, &a[k][col]);
                a[i][col] = s.sub(&a[i][col], &t);
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i].clone()).collect();
    Ok((diag, p))
}

impl GramForm {
    pub fn new(field: FieldDesc, gram: Vec<Vec<Rat>>) -> Result<GramForm> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::invalid("Gram matrix must be square"));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::invalid(format!(
                        "Gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let form = GramForm { field, gram };
        let radical_dim = form.radical_dim()?;
        if radical_dim > 0 {
            return Err(Error::Degenerate { radical_dim });
        }
        Ok(form)
    }

    /// Identity matrix of size n.
    pub fn identity(field: FieldDesc, n: usize) -> GramForm {
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        GramForm { field, gram }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    fn radical_dim(&self) -> Result<usize> {
        let n = self.dim();
        Ok(match &self.field {
            FieldDesc::FiniteField(p) => {
                let s = Residues {
                    p: BigInt::from(p.clone()),
                };
                n - rank_of(&s, embed_all(&s, &self.gram)?)
            }
            _ => n - rank_of(&Rationals, self.gram.clone()),
        })
    }

    /// Congruence-diagonalizes the form: returns the square-class reduction
    /// of Pᵀ·G·P together with the certificate P.
    pub fn diagonalize(&self) -> Result<(DiagForm, Vec<Vec<Rat>>)> {
        let (diag, cert) = self.diagonal_entries()?;
        let entries = diag
            .iter()
            .map(|d| square_class(d, &self.field))
            .collect::<Result<Vec<_>>>()?;
        Ok((DiagForm::from_classes(self.field.clone(), entries), cert))
    }

    /// The exact diagonal of Pᵀ·G·P before square-class reduction.
    pub fn diagonal_entries(&self) -> Result<(Vec<Rat>, Vec<Vec<Rat>>)> {
        match &self.field {
            FieldDesc::FiniteField(p) => {
                let s = Residues {
                    p: BigInt::from(p.clone()),
                };
                run(&s, &self.gram)
            }
            _ => run(&Rationals, &self.gram),
        }
    }
}

fn embed_all<S: Scalars>(s: &S, m: &[Vec<Rat>]) -> Result<Vec<Vec<S::E>>> {
    m.iter()
        .map(|row| row.iter().map(|x| s.embed(x)).collect())
        .collect()
}

fn run<S: Scalars>(s: &S, gram: &[Vec<Rat>]) -> Result<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let a = embed_all(s, gram)?;
    let (diag, p) =
        congruence_diagonalize(s, &a).map_err(|radical_dim| Error::Degenerate { radical_dim })?;
    let diag = diag.iter().map(|d| s.lift(d)).collect();
    let p = p
        .iter()
        .map(|row| row.iter().map(|x| s.lift(x)).collect())
        .collect();
    Ok((diag, p))
}

/// Pᵀ·G·P over the rationals; used to check diagonalization certificates.
pub fn congruent(gram: &[Vec<Rat>], p: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = gram.len();
    let gp: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rat::zero(), |acc, k| acc + &gram[i][k] * &p[k][j]))
                .collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rat::zero(), |acc, k| acc + &p[k][i] * &gp[k][j]))
                .collect()
        })
        .collect()
}
