//! ℚ[x]/(f) for squarefree monic f, with the trace pairing Tr(δ·xy).

use num_traits::Zero;
use serde::Serialize;

use super::Poly;
use crate::arith::{rat, FieldDesc, Rat};
use crate::error::{Error, Result};
use crate::quadform::{GramForm, GwElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaleAlgebra {
    modulus: Poly,
    degree: usize,
}

impl EtaleAlgebra {
    pub fn new(f: Poly) -> Result<EtaleAlgebra> {
        let degree = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::invalid("modulus must have degree at least 1")),
        };
        if !f.is_monic() {
            return Err(Error::invalid(format!("modulus {f} is not monic")));
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree(f.to_string()));
        }
        Ok(EtaleAlgebra { modulus: f, degree })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// δ mod f, rejected unless it is a unit.
    fn reduce_twist(&self, delta: &Poly) -> Result<Poly> {
        let d = delta.rem(&self.modulus);
        if self.modulus.resultant(&d).is_zero() {
            return Err(Error::NonInvertibleTwist(delta.to_string()));
        }
        Ok(d)
    }
}

/// [p_0, …, p_m] where p_k is the k-th power sum of the roots of monic f.
pub fn power_sums(f: &Poly, up_to: usize) -> Result<Vec<Rat>> {
    let n = match f.degree() {
        Some(n) if n >= 1 && f.is_monic() => n,
        _ => {
            return Err(Error::invalid(format!(
                "{f} is not monic of positive degree"
            )))
        }
    };
    // f = x^n + c_{n−1}x^{n−1} + … + c_0
    let c = |i: usize| f.coeff(i);
    let mut p: Vec<Rat> = Vec::with_capacity(up_to + 1);
    p.push(rat(n as i64));
    for k in 1..=up_to {
        let mut s = Rat::zero();
        for i in 1..=(k - 1).min(n) {
            s += c(n - i) * &p[k - i];
        }
        if k <= n {
            s += c(n - k) * rat(k as i64);
        }
        p.push(-s);
    }
    Ok(p)
}

/// Gram matrix of (u, v) ↦ Tr(δ·u·v) in the basis 1, x, …, x^{n−1}.
pub fn trace_gram(a: &EtaleAlgebra, delta: &Poly) -> Result<GramForm> {
    let d = a.reduce_twist(delta)?;
    let n = a.degree;
    let ds = d.degree().unwrap_or(0);
    let p = power_sums(&a.modulus, 2 * n - 2 + ds)?;
    let entry = |m: usize| -> Rat {
        d.coeffs()
            .iter()
            .enumerate()
            .map(|(k, dk)| dk * &p[m + k])
            .sum()
    };
    let traces: Vec<Rat> = (0..2 * n - 1).map(entry).collect();
    let gram = (0..n)
        .map(|i| (0..n).map(|j| traces[i + j].clone()).collect())
        .collect();
    GramForm::new(FieldDesc::Rationals, gram)
}

/// Tr_{A/ℚ}⟨δ⟩ in GW(ℚ).
pub fn transfer(a: &EtaleAlgebra, delta: &Poly) -> Result<GwElement> {
    let (q, _) = trace_gram(a, delta)?.diagonalize()?;
    Ok(GwElement::from(q))
}
