//! The power-law equation family and its closed-form compacton.
//!
//! Every equation handled by this crate has the form
//!
//! ```text
//! u_t + (alpha * u^m)_x + (beta * u + gamma * u^n)_xxx = 0
//! ```
//!
//! with integer exponents `m, n >= 1`. Familiar members:
//!
//! * KdV: `(alpha, m, beta, gamma, n) = (1, 2, 1, 0, 1)`
//! * K(m,n): `(1, m, 0, 1, n)` — nonlinear dispersion, compact-support
//!   solitary waves ("compactons") for `n > 1`
//! * KdV-K(2,2): `(2, 2, 1, 1, 2)` — mixed linear/nonlinear dispersion
//! * mKdV-K(3,3): `(2, 3, 1, 1, 3)` — all terms odd, so solutions come in
//!   `(u, -u)` pairs
//!
//! For the pure K(n,n) family the travelling compacton is known in closed
//! form and serves as the validation oracle for the discrete solvers:
//!
//! ```text
//! u(xi) = { 2*lambda*n/(n+1) * cos^2( (n-1)/(2n) * xi ) }^(1/(n-1))
//! ```
//!
//! on `|xi| <= n*pi/(n-1)` and identically zero outside, `xi = x - lambda*t`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// x^p by repeated multiplication. Exact for the small integer exponents the
/// family uses; avoids pow's libm path so results are bit-reproducible.
#[inline]
pub fn ipow(x: f64, p: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..p {
        acc *= x;
    }
    acc
}

/// Coefficients of `u_t + (alpha u^m)_x + (beta u + gamma u^n)_xxx = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModelSpec")]
pub struct ModelSpec {
    pub alpha: f64,
    pub m: u32,
    pub beta: f64,
    pub gamma: f64,
    pub n: u32,
}

#[derive(Deserialize)]
struct RawModelSpec {
    alpha: f64,
    m: u32,
    beta: f64,
    gamma: f64,
    n: u32,
}

impl TryFrom<RawModelSpec> for ModelSpec {
    type Error = Error;

    fn try_from(raw: RawModelSpec) -> Result<Self> {
        ModelSpec::new(raw.alpha, raw.m, raw.beta, raw.gamma, raw.n)
    }
}

impl ModelSpec {
    pub fn new(alpha: f64, m: u32, beta: f64, gamma: f64, n: u32) -> Result<Self> {
        if m < 1 || n < 1 {
            return Err(Error::InvalidModel(format!(
                "exponents must satisfy m >= 1 and n >= 1 (got m={m}, n={n})"
            )));
        }
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidModel(
                "coefficients must be finite".to_string(),
            ));
        }
        if beta < 0.0 {
            return Err(Error::InvalidModel(format!(
                "linear dispersion coefficient must be >= 0 (got beta={beta})"
            )));
        }
        if beta == 0.0 && gamma == 0.0 {
            return Err(Error::InvalidModel(
                "dispersion-free model: beta and gamma cannot both be zero".to_string(),
            ));
        }
        Ok(Self {
            alpha,
            m,
            beta,
            gamma,
            n,
        })
    }

    /// `u_t + (u^m)_x + (u^n)_xxx = 0`.
    pub fn k_mn(m: u32, n: u32) -> Result<Self> {
        Self::new(1.0, m, 0.0, 1.0, n)
    }

    /// `u_t + (u^2)_x + u_xxx = 0`.
    pub fn kdv() -> Self {
        Self::new(1.0, 2, 1.0, 0.0, 1).expect("KdV coefficients are valid")
    }

    /// `u_t + (2u^2)_x + (u + u^2)_xxx = 0`.
    pub fn kdv_k22() -> Self {
        Self::new(2.0, 2, 1.0, 1.0, 2).expect("KdV-K(2,2) coefficients are valid")
    }

    /// `u_t + (2u^3)_x + (u + u^3)_xxx = 0`.
    pub fn mkdv_k33() -> Self {
        Self::new(2.0, 3, 1.0, 1.0, 3).expect("mKdV-K(3,3) coefficients are valid")
    }

    /// True iff `u -> -u` maps solutions to solutions (all terms odd).
    pub fn odd_symmetric(&self) -> bool {
        self.m % 2 == 1 && self.n % 2 == 1
    }

    /// Convective and dispersive flux values `(alpha u^m, beta u + gamma u^n)`.
    #[inline]
    pub fn flux_values(&self, u: f64) -> (f64, f64) {
        (self.convective_flux(u), self.dispersive_flux(u))
    }

    #[inline]
    pub fn convective_flux(&self, u: f64) -> f64 {
        self.alpha * ipow(u, self.m)
    }

    #[inline]
    pub fn dispersive_flux(&self, u: f64) -> f64 {
        self.beta * u + self.gamma * ipow(u, self.n)
    }

    /// d/du of the convective flux: `m alpha u^(m-1)`.
    #[inline]
    pub fn convective_flux_prime(&self, u: f64) -> f64 {
        self.m as f64 * self.alpha * ipow(u, self.m - 1)
    }

    /// d/du of the dispersive flux: `beta + n gamma u^(n-1)`.
    #[inline]
    pub fn dispersive_flux_prime(&self, u: f64) -> f64 {
        self.beta + self.n as f64 * self.gamma * ipow(u, self.n - 1)
    }

    /// True iff the model is plain K(n,n) with `n >= 2`, the family whose
    /// compacton is known in closed form.
    pub fn admits_exact_compacton(&self) -> bool {
        self.alpha == 1.0 && self.gamma == 1.0 && self.beta == 0.0 && self.m == self.n && self.n >= 2
    }

    fn require_exact_compacton(&self) -> Result<()> {
        if self.admits_exact_compacton() {
            Ok(())
        } else {
            Err(Error::InvalidModel(format!(
                "closed-form compacton needs alpha=gamma=1, beta=0, m=n>=2 \
                 (got alpha={}, m={}, beta={}, gamma={}, n={})",
                self.alpha, self.m, self.beta, self.gamma, self.n
            )))
        }
    }

    /// Half-width `n pi / (n-1)` of the compacton support.
    pub fn compacton_support_half_width(&self) -> Result<f64> {
        self.require_exact_compacton()?;
        let n = self.n as f64;
        Ok(n * std::f64::consts::PI / (n - 1.0))
    }

    /// Peak value of the closed-form compacton travelling at speed `lambda`:
    /// `(2 lambda n / (n+1))^(1/(n-1))`.
    pub fn compacton_amplitude(&self, lambda: f64) -> Result<f64> {
        self.require_exact_compacton()?;
        let n = self.n as f64;
        Ok((2.0 * lambda * n / (n + 1.0)).powf(1.0 / (n - 1.0)))
    }

    /// Speed of the compacton with peak value `amplitude`: inverts
    /// `A = (2 lambda n/(n+1))^(1/(n-1))` to `lambda = A^(n-1) (n+1)/(2n)`.
    pub fn compacton_speed(&self, amplitude: f64) -> Result<f64> {
        self.require_exact_compacton()?;
        let n = self.n as f64;
        Ok(ipow(amplitude, self.n - 1) * (n + 1.0) / (2.0 * n))
    }
}

/// Closed-form K(n,n) compacton profile at offset `xi` from its crest.
///
/// Returns exactly zero at and outside the support edge `|xi| = n pi/(n-1)`;
/// the cosine branch agrees there, so the profile is continuous.
pub fn exact_compacton(model: &ModelSpec, lambda: f64, xi: f64) -> Result<f64> {
    model.require_exact_compacton()?;
    if !(lambda > 0.0) {
        return Err(Error::InvalidInput(format!(
            "compacton speed must be positive (got {lambda})"
        )));
    }
    let n = model.n as f64;
    let half_width = n * std::f64::consts::PI / (n - 1.0);
    if xi.abs() >= half_width {
        return Ok(0.0);
    }
    let c = (0.5 * (n - 1.0) / n * xi).cos();
    Ok((2.0 * lambda * n / (n + 1.0) * c * c).powf(1.0 / (n - 1.0)))
}
