//! Numerical solitary waves of generalized KdV equations.
//!
//! The crate computes travelling-wave profiles of
//!
//! ```text
//! u_t + (alpha u^m)_x + (beta u + gamma u^n)_xxx = 0
//! ```
//!
//! by solving the associated nonlinear eigenvalue problem on a truncated
//! half-line, then evolves and collides the resulting waves with a fully
//! implicit Crank-Nicolson integrator on a periodic domain and quantifies
//! the outcome (peak tracks, speeds, collision ripple, refinement studies).
//!
//! Pipeline, end to end:
//!
//! 1. [`eigen`] — solve for a profile `f(xi)` and speed `lambda` with either
//!    a Dirichlet cutoff (compact support, `beta = 0`) or a decaying-tail
//!    Robin closure (`beta > 0`).
//! 2. [`eigen::scale_profile`] — map the unit-amplitude solution to any
//!    amplitude for pure K(m,n) models.
//! 3. [`evolve`] — embed profiles in a periodic field and march in time.
//! 4. [`analysis`] — track peaks, estimate speeds, measure ripple, compare
//!    grid refinements.
//!
//! [`io`] persists profiles, run directories and analysis reports; the
//! companion `gkdv-cli` crate exposes the pipeline as subcommands.

pub mod analysis;
pub mod eigen;
pub mod error;
pub mod evolve;
pub mod io;
pub mod model;
pub mod numerics;

pub use error::{Error, Result};
pub use model::{exact_compacton, ModelSpec};
