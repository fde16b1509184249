//! Normalized momentum-space eigenfunctions
//!
//! ```text
//! psi(p) = C / (eps + p^2) * exp(i phi(p))
//! phi(p) = -a [ atan(p / sqrt(eps)) / sqrt(eps) - sqrt(beta) atan(sqrt(beta) p) ],
//! a      = alpha / (1 - eps beta)
//! ```
//!
//! normalized against the measure `dp / (1 + beta p^2)`. The same function
//! can be written as a product of complex powers; only the real-phase form
//! is evaluated here since the power form needs a branch choice.
//!
//! `psi` solves the first-order equation obtained by multiplying the
//! eigenvalue problem by `X` for every `eps > 0`; the spectrum only enters
//! through the boundary constant `c[psi]` of the inverse-position operator.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{self, ModelParams, SpectralFamily, SINGULAR_MARGIN};
use crate::quadrature::{cumulative_to, CumulativeTable, IntegralResult, QuadratureSpec};
use crate::Complex;

/// `C_eps = sqrt(2/pi) eps^(3/4) (1 + sqrt(eps beta)) / sqrt(1 + 2 sqrt(eps beta))`.
pub fn normalization_constant(params: &ModelParams, epsilon: f64) -> Result<f64> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Domain(format!("epsilon must be > 0, got {epsilon}")));
    }
    let r = (epsilon * params.beta()).sqrt();
    Ok((2.0 / PI).sqrt() * epsilon.powf(0.75) * (1.0 + r) / (1.0 + 2.0 * r).sqrt())
}

/// A normalized eigenfunction of binding energy `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Wavefunction {
    params: ModelParams,
    epsilon: f64,
    norm_const: f64,
    phase_prefactor: f64,
    #[serde(skip)]
    sqrt_eps: f64,
}

impl Wavefunction {
    /// Refuses `eps beta >= 1 - 1e-9`, where the phase prefactor diverges.
    pub fn new(params: ModelParams, epsilon: f64) -> Result<Self> {
        let norm_const = normalization_constant(&params, epsilon)?;
        let eps_beta = epsilon * params.beta();
        if eps_beta >= 1.0 - SINGULAR_MARGIN {
            return Err(Error::SingularRegime { eps_beta });
        }
        Ok(Self {
            params,
            epsilon,
            norm_const,
            phase_prefactor: params.alpha() / (1.0 - eps_beta),
            sqrt_eps: epsilon.sqrt(),
        })
    }

    /// Eigenfunction of level `n` in `family` (closed-form energy).
    pub fn for_level(params: ModelParams, family: &SpectralFamily, n: u32) -> Result<Self> {
        let state = model::energy_closed_form(&params, family, n)?;
        Self::new(params, state.epsilon)
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn energy(&self) -> f64 {
        -self.epsilon
    }

    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    /// `alpha / (1 - eps beta)`.
    pub fn phase_prefactor(&self) -> f64 {
        self.phase_prefactor
    }

    /// `q(eps)`; an integer for `delta = 0` levels.
    pub fn quantization_value(&self) -> f64 {
        model::q_unchecked(&self.params, self.epsilon)
    }

    pub fn phase(&self, p: f64) -> f64 {
        let sb = self.params.sqrt_beta();
        -self.phase_prefactor * ((p / self.sqrt_eps).atan() / self.sqrt_eps - sb * (sb * p).atan())
    }

    /// `phi'(p) = -alpha / ((eps + p^2)(1 + beta p^2))`, the bracketed
    /// difference of the phase terms combined into one fraction.
    pub fn phase_derivative(&self, p: f64) -> f64 {
        let beta = self.params.beta();
        -self.params.alpha() / ((self.epsilon + p * p) * (1.0 + beta * p * p))
    }

    /// `|psi(p)| = C / (eps + p^2)`.
    pub fn modulus(&self, p: f64) -> f64 {
        self.norm_const / (self.epsilon + p * p)
    }

    pub fn evaluate(&self, p: f64) -> Complex {
        if p.is_infinite() {
            return Complex::new(0.0, 0.0);
        }
        Complex::from_polar(self.modulus(p), self.phase(p))
    }

    /// `psi'(p) = psi(p) (i phi'(p) - 2p / (eps + p^2))`.
    pub fn derivative(&self, p: f64) -> Complex {
        let log_slope = Complex::new(-2.0 * p / (self.epsilon + p * p), self.phase_derivative(p));
        self.evaluate(p) * log_slope
    }

    /// Residual of `i (1 + beta p^2) [p^2 psi' + 2p psi - E psi'] - alpha psi`
    /// with `E = -eps`.
    pub fn ode_residual(&self, p: f64) -> Complex {
        self.ode_residual_at_energy(p, self.energy())
    }

    /// Same residual with an arbitrary energy in place of `-eps`.
    pub fn ode_residual_at_energy(&self, p: f64, energy: f64) -> Complex {
        let psi = self.evaluate(p);
        let dpsi = self.derivative(p);
        let bracket = dpsi * (p * p - energy) + psi * (2.0 * p);
        Complex::i() * (1.0 + self.params.beta() * p * p) * bracket - psi * self.params.alpha()
    }

    /// Scale used to normalize residuals: `|psi| (1 + p^2) max(1, alpha)`.
    pub fn residual_scale(&self, p: f64) -> f64 {
        self.modulus(p) * (1.0 + p * p) * self.params.alpha().max(1.0)
    }

    /// `c[psi] = (C / alpha) exp(i pi q(eps))`.
    pub fn boundary_constant(&self) -> Complex {
        Complex::from_polar(
            self.norm_const / self.params.alpha(),
            PI * self.quantization_value(),
        )
    }

    /// `(1/alpha) lim_{p -> -inf} (p^2 + eps) psi(p)`, evaluated at a large
    /// negative `p`.
    pub fn boundary_constant_from_limit(&self, p: f64) -> Complex {
        self.evaluate(p) * (p * p + self.epsilon) / self.params.alpha()
    }

    /// `(2 C / alpha) sin(pi q(eps))`, the closed form of the measure integral.
    pub fn measure_integral_closed(&self) -> f64 {
        2.0 * self.norm_const / self.params.alpha() * (PI * self.quantization_value()).sin()
    }

    /// `psi(p) / (1 + beta p^2)`.
    pub fn weighted(&self, p: f64) -> Complex {
        self.evaluate(p) / (1.0 + self.params.beta() * p * p)
    }

    /// `(1/X) psi (p) = -i * integral_{-inf}^{p} psi(q)/(1 + beta q^2) dq + c[psi]`.
    pub fn inverse_x_apply(&self, p: f64, quad: &QuadratureSpec) -> Result<Complex> {
        let integral = cumulative_to(|q| self.weighted(q), p, quad).into_value()?;
        Ok(-Complex::i() * integral + self.boundary_constant())
    }

    /// The same operator without the boundary constant.
    pub fn inverse_x_apply_naive(&self, p: f64, quad: &QuadratureSpec) -> Result<Complex> {
        let integral = cumulative_to(|q| self.weighted(q), p, quad).into_value()?;
        Ok(-Complex::i() * integral)
    }

    /// Precomputes the running integral for repeated inverse-position
    /// evaluations on a grid.
    pub fn inverse_x(&self, quad: &QuadratureSpec) -> Result<InverseX<'_>> {
        let table = CumulativeTable::new(move |q| self.weighted(q), quad);
        table.total().into_value()?;
        Ok(InverseX {
            wf: self,
            table,
            boundary: self.boundary_constant(),
        })
    }
}

/// `(1/X) psi` backed by a [`CumulativeTable`].
pub struct InverseX<'a> {
    wf: &'a Wavefunction,
    table: CumulativeTable<'a>,
    boundary: Complex,
}

impl InverseX<'_> {
    /// `integral_{-inf}^{p} psi / (1 + beta q^2) dq`.
    pub fn running_integral(&self, p: f64) -> Complex {
        self.table.eval(p)
    }

    pub fn total(&self) -> IntegralResult {
        self.table.total()
    }

    pub fn apply(&self, p: f64) -> Complex {
        -Complex::i() * self.table.eval(p) + self.boundary
    }

    /// `p^2 psi + i alpha integral_{-inf}^{p} psi/(1 + beta q^2) - alpha c - E psi`.
    pub fn eigen_residual(&self, p: f64) -> Complex {
        let psi = self.wf.evaluate(p);
        let alpha = self.wf.params.alpha();
        psi * (p * p - self.wf.energy()) + Complex::i() * alpha * self.table.eval(p)
            - self.boundary * alpha
    }
}
