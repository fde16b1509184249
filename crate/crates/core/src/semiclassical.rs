//! Bohr-Sommerfeld quantization with the deformed position operator.
//!
//! Writing `X = (1 + beta p^2) x` with canonical `[x, p] = i`, the classical
//! Hamiltonian is `H = p^2 - alpha / ((1 + beta p^2) x)`. At fixed `E < 0`
//! the orbit is `x(p) = alpha / ((1 + beta p^2)(p^2 - E))`. Leaving the origin
//! the momentum sweeps `+inf -> 0` and on return `0 -> -inf`, so
//! `oint p dx = -oint x dp = integral of x(p) over the real line`. The rule
//! `2 pi (n + delta) = oint p dx` then gives
//!
//! ```text
//! 2 pi (n + delta) = pi alpha / (sqrt(eps) + eps sqrt(beta)) = 2 pi q(eps)
//! ```
//!
//! No Maslov-type correction is added; all boundary effects live in `delta`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{self, BoundState, Method, ModelParams, SpectralFamily};
use crate::quadrature::{integrate_real_line, QuadratureSpec};
use crate::Complex;

/// A classical orbit at bound energy `energy = -epsilon < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalConfig {
    pub params: ModelParams,
    pub energy: f64,
    pub epsilon: f64,
}

impl ClassicalConfig {
    pub fn new(params: ModelParams, energy: f64) -> Result<Self> {
        if !(energy.is_finite() && energy < 0.0) {
            return Err(Error::Domain(format!(
                "bound orbits need E < 0, got {energy}"
            )));
        }
        Ok(Self {
            params,
            energy,
            epsilon: -energy,
        })
    }

    pub fn from_epsilon(params: ModelParams, epsilon: f64) -> Result<Self> {
        Self::new(params, -epsilon)
    }
}

/// `H(x, p) = p^2 - alpha / ((1 + beta p^2) x)`.
pub fn classical_hamiltonian(cfg: &ClassicalConfig, x: f64, p: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Singularity("H(x, p) diverges at x = 0".into()));
    }
    let params = &cfg.params;
    Ok(p * p - params.alpha() / ((1.0 + params.beta() * p * p) * x))
}

/// `x(p) = alpha / ((1 + beta p^2)(p^2 - E))`.
pub fn orbit_x_of_p(cfg: &ClassicalConfig, p: f64) -> f64 {
    let params = &cfg.params;
    params.alpha() / ((1.0 + params.beta() * p * p) * (p * p - cfg.energy))
}

/// `oint p dx` by quadrature of `x(p)` over the momentum sweep.
pub fn action_integral_numeric(cfg: &ClassicalConfig, spec: &QuadratureSpec) -> Result<f64> {
    let r = integrate_real_line(|p| Complex::new(orbit_x_of_p(cfg, p), 0.0), spec);
    Ok(r.into_value()?.re)
}

/// `pi alpha / (sqrt(eps) + eps sqrt(beta))`.
pub fn action_integral_closed(cfg: &ClassicalConfig) -> f64 {
    let params = &cfg.params;
    PI * params.alpha() / (cfg.epsilon.sqrt() + cfg.epsilon * params.sqrt_beta())
}

fn action_of_epsilon(params: &ModelParams, epsilon: f64) -> f64 {
    PI * params.alpha() / (epsilon.sqrt() + epsilon * params.sqrt_beta())
}

/// Level `n` from `2 pi (n + delta) = oint p dx`, solved by bisection on
/// the closed-form action.
pub fn wkb_level(
    params: &ModelParams,
    family: &SpectralFamily,
    n: u32,
    tol: f64,
) -> Result<BoundState> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    let nu = family.effective_index(n)?;
    let target = 2.0 * PI * nu;
    let guess = model::undeformed_epsilon(params.alpha(), nu);
    let eps = model::solve_decreasing(
        |e| action_of_epsilon(params, e),
        target,
        guess,
        2.0 * PI * tol,
    )?;
    Ok(BoundState::from_epsilon(n, eps, Method::Wkb))
}

/// The first `n_max` levels of the family.
pub fn wkb_spectrum(
    params: &ModelParams,
    family: &SpectralFamily,
    n_max: u32,
) -> Result<Vec<BoundState>> {
    family
        .levels(n_max)
        .map(|n| wkb_level(params, family, n, model::DEFAULT_ROOT_TOL))
        .collect()
}
