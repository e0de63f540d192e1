//! Small self-contained linear-algebra and filtering kernel.
//!
//! Everything the solvers need and nothing more: dense LU with partial
//! pivoting for the bordered Newton systems, a cyclic banded LU (Woodbury
//! corner correction) for the periodic implicit steps, the three-point
//! binomial low-pass filter, and trapezoidal quadrature for diagnostics.

mod cyclic;
mod dense;
mod filter;
mod quad;

pub use cyclic::{solve_cyclic_banded, CyclicBandedSystem};
pub use dense::{solve_dense, DenseSystem, SquareMatrix};
pub use filter::low_pass_filter;
pub use quad::trapezoid_integral;

/// Relative pivot threshold below which a factorization is declared singular.
pub(crate) const PIVOT_RTOL: f64 = 1e-14;

pub(crate) fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}
