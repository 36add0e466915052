//! Étale algebras ℚ[x]/(f) and their scaled trace forms.

mod etale;
mod poly;
mod sturm;

pub use etale::{power_sums, trace_gram, transfer, EtaleAlgebra};
pub use poly::{parse_coeffs, Poly};
pub use sturm::count_real_roots;
