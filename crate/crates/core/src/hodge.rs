//! Hodge diamonds, the integer Euler characteristic computed two ways, and
//! the hyperbolic multiplicity m.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `h[i][j] = dim H^i(X, Ω^j)` for a connected smooth projective X of dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiamond")]
pub struct HodgeDiamond {
    dim: usize,
    h: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct RawDiamond {
    dim: usize,
    h: Vec<Vec<u64>>,
}

impl TryFrom<RawDiamond> for HodgeDiamond {
    type Error = Error;

    fn try_from(raw: RawDiamond) -> Result<Self> {
        HodgeDiamond::new(raw.dim, raw.h)
    }
}

/// Varieties with a closed-form diamond.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StandardVariety {
    ProjSpace {
        n: usize,
    },
    Curve {
        genus: u64,
    },
    Product {
        left: Box<StandardVariety>,
        right: Box<StandardVariety>,
    },
}

impl HodgeDiamond {
    /// Checks shape, Hodge symmetry, Serre symmetry and h[0][0] = 1.
    pub fn new(dim: usize, h: Vec<Vec<u64>>) -> Result<HodgeDiamond> {
        let n = dim;
        if h.len() != n + 1 || h.iter().any(|row| row.len() != n + 1) {
            return Err(Error::invalid(format!(
                "a dimension-{n} diamond needs a {0}×{0} grid",
                n + 1
            )));
        }
        for i in 0..=n {
            for j in 0..=n {
                if h[i][j] != h[j][i] || h[i][j] != h[n - i][n - j] {
                    return Err(Error::invalid(format!(
                        "h[{i}][{j}] breaks Hodge or Serre symmetry"
                    )));
                }
            }
        }
        if h[0][0] != 1 {
            return Err(Error::invalid("h[0][0] must be 1 for a connected variety"));
        }
        Ok(HodgeDiamond { dim, h })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self, i: usize, j: usize) -> u64 {
        self.h[i][j]
    }

    pub fn grid(&self) -> &[Vec<u64>] {
        &self.h
    }

    /// h[n][n] for dim = 2n, the rank of the middle form.
    pub fn middle(&self) -> Option<u64> {
        (self.dim % 2 == 0).then(|| self.h[self.dim / 2][self.dim / 2])
    }
}

pub fn proj_space(n: usize) -> HodgeDiamond {
    let h = (0..=n)
        .map(|i| (0..=n).map(|j| u64::from(i == j)).collect())
        .collect();
    HodgeDiamond { dim: n, h }
}

pub fn curve(genus: u64) -> HodgeDiamond {
    HodgeDiamond {
        dim: 1,
        h: vec![vec![1, genus], vec![genus, 1]],
    }
}

/// Künneth: h[i][j] = Σ h1[a][b]·h2[i−a][j−b].
pub fn product(x: &HodgeDiamond, y: &HodgeDiamond) -> HodgeDiamond {
    let n = x.dim + y.dim;
    let mut h = vec![vec![0u64; n + 1]; n + 1];
    for a in 0..=x.dim {
        for b in 0..=x.dim {
            for c in 0..=y.dim {
                for d in 0..=y.dim {
                    h[a + c][b + d] += x.h[a][b] * y.h[c][d];
                }
            }
        }
    }
    HodgeDiamond { dim: n, h }
}

pub fn hodge_standard(spec: &StandardVariety) -> HodgeDiamond {
    match spec {
        StandardVariety::ProjSpace { n } => proj_space(*n),
        StandardVariety::Curve { genus } => curve(*genus),
        StandardVariety::Product { left, right } => {
            product(&hodge_standard(left), &hodge_standard(right))
        }
    }
}

/// Number of exponent vectors in [0, bound]^vars with the given sum.
fn bounded_compositions(vars: usize, bound: u64, total: u64) -> Result<u64> {
    let total = total as usize;
    let mut ways = vec![0u64; total + 1];
    ways[0] = 1;
    for _ in 0..vars {
        let mut next = vec![0u64; total + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for e in 0..=bound as usize {
                if s + e > total {
                    break;
                }
                next[s + e] = next[s + e]
                    .checked_add(w)
                    .ok_or_else(|| Error::ResourceLimit("Hodge number exceeds 64 bits".into()))?;
            }
        }
        ways = next;
    }
    Ok(ways[total])
}

/// Diamond of a smooth degree-d hypersurface in ℙ^{n+1} over a field of characteristic 0.
pub fn hodge_hypersurface(n: usize, d: u64) -> Result<HodgeDiamond> {
    if n < 1 {
        return Err(Error::invalid("hypersurface dimension must be at least 1"));
    }
    if d < 2 {
        return Err(Error::invalid(format!(
            "hypersurface degree {d} must be at least 2"
        )));
    }
    let mut h = proj_space(n).h;
    for p in 0..=n {
        let target = (n as i64 + 1 - p as i64) * d as i64 - (n as i64 + 2);
        let primitive = if target < 0 {
            0
        } else {
            bounded_compositions(n + 2, d - 2, target as u64)?
        };
        h[p][n - p] = primitive + u64::from(2 * p == n);
    }
    Ok(HodgeDiamond { dim: n, h })
}

/// Σ (−1)^{i+j} h[i][j].
pub fn euler_rank(d: &HodgeDiamond) -> i64 {
    let mut total = 0i64;
    for (i, row) in d.h.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let v = v as i64;
            total += if (i + j) % 2 == 0 { v } else { -v };
        }
    }
    total
}

/// d·[hⁿ] (1+h)^{n+2}/(1+d·h), the degree of the top Chern class.
pub fn chi_top_hypersurface(n: usize, d: u64) -> BigInt {
    let mut binom = vec![BigInt::one(); n + 3];
    for k in 1..=n + 2 {
        binom[k] = &binom[k - 1] * BigInt::from(n + 3 - k) / BigInt::from(k);
    }
    let md = -BigInt::from(d);
    let mut pow = BigInt::one();
    let mut coeff = BigInt::zero();
    for k in 0..=n {
        coeff += &binom[n - k] * &pow;
        pow *= &md;
    }
    coeff * BigInt::from(d)
}

/// For dim 2n−1: Σ_{i+j<2n−1}(−1)^{i+j}h − Σ_{i<j, i+j=2n−1} h.
/// For dim 2n:   Σ_{i+j<2n}(−1)^{i+j}h + Σ_{i<j, i+j=2n} h.
pub fn m_coefficient(d: &HodgeDiamond) -> i64 {
    let dim = d.dim;
    let mut below = 0i64;
    let mut mid = 0i64;
    for i in 0..=dim {
        for j in 0..=dim {
            let v = d.h[i][j] as i64;
            if i + j < dim {
                below += if (i + j) % 2 == 0 { v } else { -v };
            } else if i + j == dim && i < j {
                mid += v;
            }
        }
    }
    if dim % 2 == 1 {
        below - mid
    } else {
        below + mid
    }
}
