//! Travelling-wave profiles as a discrete nonlinear eigenvalue problem.
//!
//! A travelling wave `u(x,t) = f(x - lambda t)` of
//! `u_t + (alpha u^m)_x + (beta u + gamma u^n)_xxx = 0` satisfies, after one
//! integration with decay at infinity,
//!
//! ```text
//! -lambda f + alpha f^m + (beta f + gamma f^n)'' = 0      on [0, inf)
//! f(0) = A,  f'(0) = 0,  f -> 0 as xi -> inf
//! ```
//!
//! with both the profile `f` and the speed `lambda` unknown. Pinning the
//! crest value `f(0) = A` removes the translation and scaling degeneracies
//! that make the raw problem unsolvable, and the half-line is truncated at an
//! artificial boundary `xi = b`:
//!
//! * **Dirichlet** (`beta = 0`, compact support): `f(b) = 0` with `b` beyond
//!   the support edge.
//! * **Robin** (`beta > 0`, exponential tail): linearizing the equation in
//!   the far field gives `f ~ exp(-sqrt(lambda/beta) xi)`, hence the
//!   absorbing condition `f'(b) = -sqrt(lambda/beta) f(b)`, valid for
//!   `lambda > 0`.
//!
//! Second-order central differences on the uniform grid `xi_i = i h`,
//! `h = b/N`, with the even-symmetry ghost value `f_{-1} = f_1`, turn this
//! into a square nonlinear system in `(f_1, ..., lambda)` solved by damped
//! Newton iteration ([`newton_solve`]).

mod newton;
mod scaling;

pub use newton::{newton_solve, newton_solve_from, FilterPolicy, NewtonConfig};
pub use scaling::{scale_profile, verify_against_exact, ExactComparison};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ipow, ModelSpec};
use crate::numerics::SquareMatrix;

/// Artificial boundary condition at the truncation point `xi = b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryMode {
    /// `f(b) = 0`; for compactly supported profiles of pure nonlinear
    /// dispersion (`beta = 0`).
    Dirichlet,
    /// `f'(b) = -sqrt(lambda/beta) f(b)`; absorbs the exponential tail of
    /// mixed-dispersion profiles (`beta > 0`), requires `lambda > 0`.
    Robin,
}

impl std::fmt::Display for BoundaryMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryMode::Dirichlet => write!(f, "dirichlet"),
            BoundaryMode::Robin => write!(f, "robin"),
        }
    }
}

/// The assembled discrete problem on `[0, b]` with `N` subintervals.
///
/// Unknowns and equations (always square, asserted at assembly):
///
/// * Dirichlet: unknowns `(f_1 .. f_{N-1}, lambda)`, equations `F_0 .. F_{N-1}`
///   with `f_0 = A` and `f_N = 0` pinned.
/// * Robin: unknowns `(f_1 .. f_N, lambda)`, equations `F_0 .. F_N`, where the
///   stencil at `i = N` uses the ghost value
///   `f_{N+1} = f_{N-1} - 2h sqrt(lambda/beta) f_N` implied by the boundary
///   condition discretized with a central first difference.
#[derive(Debug, Clone)]
pub struct DiscreteEigenProblem {
    model: ModelSpec,
    amplitude: f64,
    b: f64,
    n_sub: usize,
    mode: BoundaryMode,
}

impl DiscreteEigenProblem {
    pub fn new(
        model: ModelSpec,
        amplitude: f64,
        b: f64,
        n_sub: usize,
        mode: BoundaryMode,
    ) -> Result<Self> {
        if !(amplitude > 0.0 && amplitude.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "crest amplitude must be positive (got {amplitude})"
            )));
        }
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "truncation point must be positive (got {b})"
            )));
        }
        if n_sub < 8 {
            return Err(Error::InvalidInput(format!(
                "need at least 8 subintervals (got {n_sub})"
            )));
        }
        match mode {
            BoundaryMode::Dirichlet => {
                if model.beta != 0.0 {
                    return Err(Error::InvalidInput(
                        "Dirichlet truncation applies to beta = 0 models; \
                         use robin mode for mixed dispersion"
                            .to_string(),
                    ));
                }
                if model.admits_exact_compacton() {
                    let half_width = model.compacton_support_half_width()?;
                    if b < half_width - 1e-12 {
                        return Err(Error::InvalidInput(format!(
                            "truncation b = {b} lies inside the compacton support \
                             (half-width {half_width:.6})"
                        )));
                    }
                }
            }
            BoundaryMode::Robin => {
                if model.beta <= 0.0 {
                    return Err(Error::InvalidInput(
                        "Robin truncation needs beta > 0; use dirichlet mode for beta = 0"
                            .to_string(),
                    ));
                }
            }
        }
        Ok(Self {
            model,
            amplitude,
            b,
            n_sub,
            mode,
        })
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn truncation(&self) -> f64 {
        self.b
    }

    pub fn subintervals(&self) -> usize {
        self.n_sub
    }

    pub fn mode(&self) -> BoundaryMode {
        self.mode
    }

    pub fn grid_spacing(&self) -> f64 {
        self.b / self.n_sub as f64
    }

    pub fn grid(&self) -> Vec<f64> {
        let h = self.grid_spacing();
        (0..=self.n_sub).map(|i| i as f64 * h).collect()
    }

    /// Number of unknowns = number of equations.
    pub fn unknowns(&self) -> usize {
        match self.mode {
            BoundaryMode::Dirichlet => self.n_sub,
            BoundaryMode::Robin => self.n_sub + 1,
        }
    }

    /// Index of the last grid value treated as an unknown.
    fn last_free(&self) -> usize {
        match self.mode {
            BoundaryMode::Dirichlet => self.n_sub - 1,
            BoundaryMode::Robin => self.n_sub,
        }
    }

    fn robin_decay(&self, lambda: f64) -> Result<f64> {
        if lambda <= 0.0 {
            return Err(Error::EigenvalueSign { lambda });
        }
        Ok((lambda / self.model.beta).sqrt())
    }

    /// Residual of the discrete system at the full grid state `f_0 .. f_N`
    /// (length `N+1`; `f_0` and, in Dirichlet mode, `f_N` are taken as given).
    ///
    /// Returns one entry per equation; see the type-level docs for the
    /// layout. Robin mode rejects `lambda <= 0`, for which the decaying-tail
    /// closure does not exist.
    pub fn residual(&self, f: &[f64], lambda: f64) -> Result<Vec<f64>> {
        let n = self.n_sub;
        assert_eq!(f.len(), n + 1, "expected the full grid state f_0 .. f_N");
        let h = self.grid_spacing();
        let h2 = h * h;
        let w: Vec<f64> = f.iter().map(|&v| self.model.dispersive_flux(v)).collect();

        let mut out = Vec::with_capacity(self.unknowns());
        for i in 0..n {
            let w_prev = if i == 0 { w[1] } else { w[i - 1] };
            out.push(
                -lambda * f[i]
                    + self.model.convective_flux(f[i])
                    + (w[i + 1] - 2.0 * w[i] + w_prev) / h2,
            );
        }
        if self.mode == BoundaryMode::Robin {
            let s = self.robin_decay(lambda)?;
            let ghost = f[n - 1] - 2.0 * h * s * f[n];
            let w_ghost = self.model.dispersive_flux(ghost);
            out.push(
                -lambda * f[n]
                    + self.model.convective_flux(f[n])
                    + (w_ghost - 2.0 * w[n] + w[n - 1]) / h2,
            );
        }
        assert_eq!(out.len(), self.unknowns(), "system must stay square");
        Ok(out)
    }

    /// Analytic Jacobian of [`Self::residual`] with respect to the unknowns.
    ///
    /// Column `j` differentiates by `f_{j+1}` (the pinned `f_0`, and `f_N` in
    /// Dirichlet mode, have no columns); the final column differentiates by
    /// `lambda`.
    pub fn jacobian(&self, f: &[f64], lambda: f64) -> Result<SquareMatrix> {
        let n = self.n_sub;
        assert_eq!(f.len(), n + 1, "expected the full grid state f_0 .. f_N");
        let h = self.grid_spacing();
        let h2 = h * h;
        let dim = self.unknowns();
        let lambda_col = dim - 1;
        let last_free = self.last_free();

        let wp: Vec<f64> = f
            .iter()
            .map(|&v| self.model.dispersive_flux_prime(v))
            .collect();

        let mut jac = SquareMatrix::zeros(dim);
        for i in 0..n {
            jac.set(i, lambda_col, -f[i]);
            if i == 0 {
                // F_0 sees f_1 twice through the even-symmetry ghost
                jac.add(0, 0, 2.0 * wp[1] / h2);
                continue;
            }
            jac.add(
                i,
                i - 1,
                -lambda + self.model.convective_flux_prime(f[i]) - 2.0 * wp[i] / h2,
            );
            if i - 1 >= 1 {
                jac.add(i, i - 2, wp[i - 1] / h2);
            }
            if i + 1 <= last_free {
                jac.add(i, i, wp[i + 1] / h2);
            }
        }

        if self.mode == BoundaryMode::Robin {
            let s = self.robin_decay(lambda)?;
            let ghost = f[n - 1] - 2.0 * h * s * f[n];
            let wp_ghost = self.model.dispersive_flux_prime(ghost);
            let row = n;
            // d ghost / d lambda = -h f_N / sqrt(lambda beta)
            let sqrt_lb = (lambda * self.model.beta).sqrt();
            jac.set(
                row,
                lambda_col,
                -f[n] - wp_ghost * f[n] / (h * sqrt_lb),
            );
            jac.add(row, n - 2, (wp_ghost + wp[n - 1]) / h2);
            jac.add(
                row,
                n - 1,
                -lambda + self.model.convective_flux_prime(f[n])
                    + (wp_ghost * (-2.0 * h * s) - 2.0 * wp[n]) / h2,
            );
        }
        Ok(jac)
    }

    /// Starting point for the Newton iteration: a `sech^2` bump of the right
    /// amplitude (clipped to zero below 1e-14) and the convective-balance
    /// speed `lambda_0 = alpha A^{m-1} / 2`.
    pub fn initial_guess(&self) -> (Vec<f64>, f64) {
        let h = self.grid_spacing();
        let mut f: Vec<f64> = (0..=self.n_sub)
            .map(|i| {
                let xi = i as f64 * h;
                let s = 1.0 / (0.5 * xi).cosh();
                let v = self.amplitude * s * s;
                if v < 1e-14 {
                    0.0
                } else {
                    v
                }
            })
            .collect();
        if self.mode == BoundaryMode::Dirichlet {
            f[self.n_sub] = 0.0;
        }
        let lambda0 = 0.5 * self.model.alpha * ipow(self.amplitude, self.model.m - 1);
        (f, lambda0)
    }

    /// Split the unknown vector into a full grid state plus `lambda`.
    #[cfg(test)]
    fn state_from_unknowns(&self, z: &[f64]) -> (Vec<f64>, f64) {
        assert_eq!(z.len(), self.unknowns());
        let mut f = vec![0.0; self.n_sub + 1];
        f[0] = self.amplitude;
        let last_free = self.last_free();
        f[1..=last_free].copy_from_slice(&z[..last_free]);
        (f, z[self.unknowns() - 1])
    }

    #[cfg(test)]
    fn unknowns_from_state(&self, f: &[f64], lambda: f64) -> Vec<f64> {
        let last_free = self.last_free();
        let mut z = Vec::with_capacity(self.unknowns());
        z.extend_from_slice(&f[1..=last_free]);
        z.push(lambda);
        z
    }
}

/// A solved (or transformed) travelling-wave profile on `0 = xi_0 < .. < xi_N`.
///
/// The grid stays uniform; `values[0]` is the crest `A` and the even
/// extension `f(-xi) = f(xi)` is implied.
#[derive(Debug, Clone)]
pub struct SolitonProfile {
    pub model: ModelSpec,
    pub xi: Vec<f64>,
    pub values: Vec<f64>,
    pub lambda: f64,
    pub amplitude: f64,
    pub mode: BoundaryMode,
    pub residual_norm: f64,
}

impl SolitonProfile {
    pub fn grid_spacing(&self) -> f64 {
        self.xi[1] - self.xi[0]
    }

    pub fn truncation(&self) -> f64 {
        *self.xi.last().expect("profile grid is never empty")
    }

    /// Evaluate at any offset via the even extension and linear
    /// interpolation; zero beyond the truncation point.
    pub fn eval(&self, xi: f64) -> f64 {
        let d = xi.abs();
        let b = self.truncation();
        if d >= b {
            return 0.0;
        }
        let h = self.grid_spacing();
        let pos = d / h;
        let i = (pos.floor() as usize).min(self.values.len() - 2);
        let frac = pos - i as f64;
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::exact_compacton;
    use crate::numerics::inf_norm;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn k22_problem(h: f64, b: f64) -> DiscreteEigenProblem {
        let n = (b / h).round() as usize;
        DiscreteEigenProblem::new(
            ModelSpec::k_mn(2, 2).unwrap(),
            1.0,
            b,
            n,
            BoundaryMode::Dirichlet,
        )
        .unwrap()
    }

    #[test]
    fn system_is_square_in_both_modes() {
        let p = k22_problem(0.25, 8.0);
        assert_eq!(p.unknowns(), 32);
        let f = vec![0.5; 33];
        assert_eq!(p.residual(&f, 0.5).unwrap().len(), 32);

        let r = DiscreteEigenProblem::new(ModelSpec::kdv_k22(), 1.0, 8.0, 16, BoundaryMode::Robin)
            .unwrap();
        assert_eq!(r.unknowns(), 17);
        let f = vec![0.5; 17];
        assert_eq!(r.residual(&f, 0.5).unwrap().len(), 17);
    }

    #[test]
    fn mode_and_dispersion_must_agree() {
        assert!(DiscreteEigenProblem::new(
            ModelSpec::kdv_k22(),
            1.0,
            8.0,
            16,
            BoundaryMode::Dirichlet
        )
        .is_err());
        assert!(DiscreteEigenProblem::new(
            ModelSpec::k_mn(2, 2).unwrap(),
            1.0,
            8.0,
            16,
            BoundaryMode::Robin
        )
        .is_err());
    }

    #[test]
    fn dirichlet_truncation_must_clear_the_support() {
        // K(2,2) support half-width is 2 pi ~ 6.28
        assert!(DiscreteEigenProblem::new(
            ModelSpec::k_mn(2, 2).unwrap(),
            1.0,
            5.0,
            16,
            BoundaryMode::Dirichlet
        )
        .is_err());
    }

    #[test]
    fn crest_stencil_matches_hand_evaluation() {
        // f = (1, 0, 0, ...), lambda = 0.3, h = 0.5:
        // F_0 = -0.3 + 1 - 2 w(1)/h^2 = 0.7 - 8 = -7.3
        // F_1 = (w_2 - 2 w_1 + w_0)/h^2 = w(1)/h^2 = 4
        let p = k22_problem(0.5, 8.0);
        let mut f = vec![0.0; 17];
        f[0] = 1.0;
        let res = p.residual(&f, 0.3).unwrap();
        assert!((res[0] - (-7.3)).abs() < 1e-12, "F_0 = {}", res[0]);
        assert!((res[1] - 4.0).abs() < 1e-12, "F_1 = {}", res[1]);
        for (i, r) in res.iter().enumerate().skip(2) {
            assert_eq!(*r, 0.0, "F_{i} should vanish on the zero tail");
        }
    }

    #[test]
    fn robin_closure_vanishes_on_zero_tail() {
        let p = DiscreteEigenProblem::new(ModelSpec::kdv_k22(), 1.0, 10.0, 20, BoundaryMode::Robin)
            .unwrap();
        let mut f = vec![0.0; 21];
        f[0] = 1.0;
        f[1] = 0.4;
        let res = p.residual(&f, 0.8).unwrap();
        assert_eq!(*res.last().unwrap(), 0.0);
    }

    #[test]
    fn robin_rejects_nonpositive_eigenvalue() {
        let p = DiscreteEigenProblem::new(ModelSpec::kdv_k22(), 1.0, 10.0, 20, BoundaryMode::Robin)
            .unwrap();
        let f = vec![0.1; 21];
        assert!(matches!(
            p.residual(&f, -0.5),
            Err(crate::Error::EigenvalueSign { .. })
        ));
        assert!(matches!(
            p.jacobian(&f, 0.0),
            Err(crate::Error::EigenvalueSign { .. })
        ));
    }

    /// Sampling the closed-form compacton on a support-aligned grid must
    /// leave an O(h^2) residual: halving h divides the sup-norm by ~4.
    #[test]
    fn compacton_samples_are_second_order_roots() {
        for (n_exp, lambda) in [(2u32, 0.75), (3u32, 2.0 / 3.0)] {
            let model = ModelSpec::k_mn(n_exp, n_exp).unwrap();
            let b = model.compacton_support_half_width().unwrap();
            let mut norms = Vec::new();
            for n_sub in [628usize, 1256] {
                let p =
                    DiscreteEigenProblem::new(model, 1.0, b, n_sub, BoundaryMode::Dirichlet)
                        .unwrap();
                let f: Vec<f64> = p
                    .grid()
                    .iter()
                    .map(|&xi| exact_compacton(&model, lambda, xi).unwrap())
                    .collect();
                norms.push(inf_norm(&p.residual(&f, lambda).unwrap()));
            }
            assert!(
                norms[0] < 1e-4,
                "K({n_exp},{n_exp}): residual {:.3e} too large at h ~ 1e-2",
                norms[0]
            );
            let ratio = norms[0] / norms[1];
            assert!(
                (3.0..=5.0).contains(&ratio),
                "K({n_exp},{n_exp}): expected ~4x residual drop, got {ratio:.2} \
                 ({:.3e} -> {:.3e})",
                norms[0],
                norms[1]
            );
        }
    }

    fn fd_jacobian_check(p: &DiscreteEigenProblem, f: &[f64], lambda: f64) {
        let jac = p.jacobian(f, lambda).unwrap();
        let dim = p.unknowns();
        let z0 = p.unknowns_from_state(f, lambda);
        let eps = 1e-6;
        let mut max_entry = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                max_entry = max_entry.max(jac.get(i, j).abs());
            }
        }
        for j in 0..dim {
            let mut zp = z0.clone();
            let mut zm = z0.clone();
            zp[j] += eps;
            zm[j] -= eps;
            let (fp, lp) = p.state_from_unknowns(&zp);
            let (fm, lm) = p.state_from_unknowns(&zm);
            let rp = p.residual(&fp, lp).unwrap();
            let rm = p.residual(&fm, lm).unwrap();
            for i in 0..dim {
                let fd = (rp[i] - rm[i]) / (2.0 * eps);
                let diff = (fd - jac.get(i, j)).abs();
                assert!(
                    diff <= 1e-6 * (1.0 + max_entry),
                    "entry ({i},{j}): analytic {} vs fd {fd} (diff {diff:.3e})",
                    jac.get(i, j)
                );
            }
        }
    }

    #[test]
    fn jacobian_matches_central_differences() {
        let mut rng = StdRng::seed_from_u64(2024);
        for n_sub in [8usize, 16, 32] {
            // Dirichlet, pure nonlinear dispersion
            let model = ModelSpec::k_mn(2, 2).unwrap();
            let p = DiscreteEigenProblem::new(model, 1.0, 8.0, n_sub, BoundaryMode::Dirichlet)
                .unwrap();
            let mut f: Vec<f64> = (0..=n_sub).map(|_| rng.gen_range(0.1..1.2)).collect();
            f[0] = 1.0;
            f[n_sub] = 0.0;
            fd_jacobian_check(&p, &f, rng.gen_range(0.4..1.5));

            // Robin, mixed dispersion
            let p = DiscreteEigenProblem::new(
                ModelSpec::kdv_k22(),
                1.0,
                8.0,
                n_sub,
                BoundaryMode::Robin,
            )
            .unwrap();
            let mut f: Vec<f64> = (0..=n_sub).map(|_| rng.gen_range(0.05..1.2)).collect();
            f[0] = 1.0;
            fd_jacobian_check(&p, &f, rng.gen_range(0.4..1.5));
        }
    }

    #[test]
    fn lambda_column_is_minus_f_on_interior_rows() {
        let p = k22_problem(0.25, 8.0);
        let mut rng = StdRng::seed_from_u64(5);
        let mut f: Vec<f64> = (0..=32).map(|_| rng.gen_range(0.0..1.0)).collect();
        f[0] = 1.0;
        f[32] = 0.0;
        let jac = p.jacobian(&f, 0.7).unwrap();
        let lambda_col = p.unknowns() - 1;
        for i in 0..32 {
            assert_eq!(jac.get(i, lambda_col), -f[i]);
        }
    }

    #[test]
    fn linear_dispersion_model_has_state_independent_stencil_terms() {
        // m = n = 1 with gamma-only dispersion: w'(u) = gamma, g'(u) = alpha,
        // so the Jacobian does not depend on f (it is a linear problem).
        let model = ModelSpec::new(1.0, 1, 0.0, 1.0, 1).unwrap();
        let p = DiscreteEigenProblem::new(model, 1.0, 8.0, 16, BoundaryMode::Dirichlet).unwrap();
        let f1 = vec![0.3; 17];
        let f2: Vec<f64> = (0..17).map(|i| 0.1 + 0.05 * i as f64).collect();
        let lambda = 0.9;
        let j1 = p.jacobian(&f1, lambda).unwrap();
        let j2 = p.jacobian(&f2, lambda).unwrap();
        for i in 0..p.unknowns() {
            for j in 0..p.unknowns() - 1 {
                assert_eq!(j1.get(i, j), j2.get(i, j), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn initial_guess_has_pinned_crest_and_plausible_speed() {
        let p = k22_problem(0.25, 8.0);
        let (f, lambda0) = p.initial_guess();
        assert_eq!(f[0], 1.0);
        assert!(f.windows(2).all(|w| w[1] <= w[0]), "guess must decrease");
        assert_eq!(lambda0, 0.5);
        assert_eq!(*f.last().unwrap(), 0.0);

        let model = ModelSpec::new(2.0, 3, 0.0, 1.0, 3).unwrap();
        let p = DiscreteEigenProblem::new(model, 2.0, 8.0, 16, BoundaryMode::Dirichlet).unwrap();
        let (_, lambda0) = p.initial_guess();
        assert_eq!(lambda0, 4.0);
    }

    #[test]
    fn profile_eval_interpolates_and_vanishes_outside() {
        let profile = SolitonProfile {
            model: ModelSpec::k_mn(2, 2).unwrap(),
            xi: vec![0.0, 1.0, 2.0],
            values: vec![1.0, 0.5, 0.0],
            lambda: 0.75,
            amplitude: 1.0,
            mode: BoundaryMode::Dirichlet,
            residual_norm: 0.0,
        };
        assert_eq!(profile.eval(0.0), 1.0);
        assert_eq!(profile.eval(0.5), 0.75);
        assert_eq!(profile.eval(-0.5), 0.75, "even extension");
        assert_eq!(profile.eval(2.0), 0.0);
        assert_eq!(profile.eval(7.0), 0.0);
    }

    #[test]
    fn consistency_survives_off_support_truncation() {
        // with b beyond the support the flat tail satisfies the equations
        // exactly, so the sampled compacton residual stays small
        let model = ModelSpec::k_mn(2, 2).unwrap();
        let p = DiscreteEigenProblem::new(model, 1.0, 8.0, 800, BoundaryMode::Dirichlet).unwrap();
        let f: Vec<f64> = p
            .grid()
            .iter()
            .map(|&xi| exact_compacton(&model, 0.75, xi).unwrap())
            .collect();
        let res = p.residual(&f, 0.75).unwrap();
        // kink sits between grid points: local O(h^2) with a bigger constant
        assert!(inf_norm(&res) < 5e-3, "residual {:.3e}", inf_norm(&res));
        let _ = PI;
    }
}
