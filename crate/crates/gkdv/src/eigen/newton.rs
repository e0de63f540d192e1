//! Damped Newton driver for the discrete eigenproblem.

use crate::error::{Error, Result};
use crate::numerics::{inf_norm, low_pass_filter, solve_dense, DenseSystem};

use super::{BoundaryMode, DiscreteEigenProblem, SolitonProfile};

/// When the iterate profile gets smoothed.
///
/// Grid-refined compacton solves are prone to grid-scale oscillations that
/// stall or blow up the iteration; smoothing the iterate with the binomial
/// low-pass filter suppresses them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterPolicy {
    /// Filter after every accepted step while the residual is still above
    /// `NewtonConfig::filter_cutoff`. Filtering is switched off below the
    /// cutoff: the filter perturbs the iterate at O(h^2), so leaving it on
    /// would keep the final residual pinned far above the convergence
    /// tolerance.
    EveryStep,
    /// Filter only when a step failed to decrease the residual.
    OnResidualIncrease,
    Never,
}

impl FilterPolicy {
    /// Pure nonlinear dispersion with n > 1 is the blowup-prone regime and
    /// defaults to [`FilterPolicy::EveryStep`]; everything else filters only
    /// on stagnation.
    pub fn default_for(model: &crate::model::ModelSpec) -> Self {
        if model.beta == 0.0 && model.n > 1 {
            FilterPolicy::EveryStep
        } else {
            FilterPolicy::OnResidualIncrease
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct NewtonConfig {
    /// Convergence tolerance on the residual sup-norm.
    pub tol: f64,
    pub max_iter: usize,
    /// Smallest line-search step; a step this small is taken even without a
    /// residual decrease so the iteration cannot stall in place.
    pub damping_floor: f64,
    pub filter: FilterPolicy,
    /// Residual level below which [`FilterPolicy::EveryStep`] stops
    /// filtering.
    pub filter_cutoff: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 200,
            damping_floor: 2f64.powi(-8),
            filter: FilterPolicy::OnResidualIncrease,
            filter_cutoff: 1e-3,
        }
    }
}

impl NewtonConfig {
    pub fn for_model(model: &crate::model::ModelSpec) -> Self {
        Self {
            filter: FilterPolicy::default_for(model),
            ..Self::default()
        }
    }
}

/// Solve the eigenproblem starting from the built-in `sech^2` guess.
pub fn newton_solve(problem: &DiscreteEigenProblem, config: &NewtonConfig) -> Result<SolitonProfile> {
    let (f0, lambda0) = problem.initial_guess();
    newton_solve_from(problem, config, f0, lambda0)
}

/// Solve the eigenproblem from a caller-supplied starting state.
///
/// Iterates `J delta = -F` with a halving line search, optional iterate
/// smoothing per the filter policy, and (Dirichlet mode) clamping of
/// negative tail values: even dispersive powers are blind to sign flips in
/// the flat tail, and the clamp removes those spurious directions.
pub fn newton_solve_from(
    problem: &DiscreteEigenProblem,
    config: &NewtonConfig,
    f0: Vec<f64>,
    lambda0: f64,
) -> Result<SolitonProfile> {
    assert!(config.tol > 0.0, "tolerance must be positive");
    assert!(config.max_iter >= 1, "need at least one iteration");

    let n = problem.subintervals();
    assert_eq!(f0.len(), n + 1, "starting state must cover the full grid");
    let last_free = match problem.mode() {
        BoundaryMode::Dirichlet => n - 1,
        BoundaryMode::Robin => n,
    };

    let mut f = f0;
    let mut lambda = lambda0;
    let mut res = problem.residual(&f, lambda)?;
    let mut rnorm = inf_norm(&res);
    let mut iterations = 0;

    for _ in 0..config.max_iter {
        if rnorm <= config.tol {
            break;
        }
        iterations += 1;

        let jac = problem.jacobian(&f, lambda)?;
        let rhs: Vec<f64> = res.iter().map(|r| -r).collect();
        let delta = solve_dense(&DenseSystem::new(jac, rhs))?;

        // halving line search; the floor step is taken unconditionally
        let mut step = 1.0f64;
        let (f_new, lambda_new, res_new, rnorm_new);
        let decreased;
        loop {
            let mut ft = f.clone();
            for j in 1..=last_free {
                ft[j] += step * delta[j - 1];
            }
            let lt = lambda + step * delta[delta.len() - 1];
            match problem.residual(&ft, lt) {
                Ok(rt) => {
                    let nt = inf_norm(&rt);
                    if nt < rnorm || step <= config.damping_floor {
                        decreased = nt < rnorm;
                        (f_new, lambda_new, res_new, rnorm_new) = (ft, lt, rt, nt);
                        break;
                    }
                }
                Err(e) => {
                    if step <= config.damping_floor {
                        return Err(e);
                    }
                }
            }
            step *= 0.5;
        }
        f = f_new;
        lambda = lambda_new;
        res = res_new;
        rnorm = rnorm_new;

        let mut state_touched = false;
        let apply_filter = match config.filter {
            FilterPolicy::Never => false,
            FilterPolicy::EveryStep => rnorm > config.filter_cutoff,
            FilterPolicy::OnResidualIncrease => !decreased,
        };
        if apply_filter {
            f = low_pass_filter(&f, true)?;
            state_touched = true;
        }
        if problem.mode() == BoundaryMode::Dirichlet {
            for v in f[1..n].iter_mut() {
                if *v < 0.0 {
                    *v = 0.0;
                    state_touched = true;
                }
            }
        }
        if state_touched {
            res = problem.residual(&f, lambda)?;
            rnorm = inf_norm(&res);
        }

        let fmax = inf_norm(&f);
        if fmax > 1e3 * problem.amplitude() {
            return Err(Error::Blowup { norm: fmax });
        }
    }

    if rnorm <= config.tol {
        Ok(SolitonProfile {
            model: *problem.model(),
            xi: problem.grid(),
            values: f,
            lambda,
            amplitude: problem.amplitude(),
            mode: problem.mode(),
            residual_norm: rnorm,
        })
    } else {
        Err(Error::NoConvergence {
            iterations,
            residual: rnorm,
        })
    }
}
