//! Adaptive integration over the real line.
//!
//! Integrands on `(-inf, inf)` are mapped to `(-pi/2, pi/2)` with
//! `p = tan(u)`, `dp = du / cos^2(u)`. Integrands decaying like `1/p^2`
//! become bounded on the compact interval, which covers every integral in
//! this crate (eigenfunctions decay as `1/p^2` and the measure adds another
//! factor).

mod gauss_kronrod;
mod states;

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Complex;
use gauss_kronrod::{adaptive, gk21, EVALS_PER_PANEL};

pub use states::{hermiticity_defect, inner_product, measure_integral, DefectReport};

// Uniform starting partition in u.
const INITIAL_PANELS: usize = 8;

/// Tolerances and limits for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Integrand evaluations above which iterated integrals report
    /// `over_budget`.
    pub eval_budget: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            eval_budget: 20_000_000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
            ..Self::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol.is_finite() && self.abs_tol > 0.0) {
            return Err(Error::Domain(format!(
                "abs_tol must be > 0, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(Error::Domain(format!(
                "rel_tol must be > 0, got {}",
                self.rel_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Domain("max_subdivisions must be >= 1".into()));
        }
        Ok(())
    }

    /// Same limits with both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }

    /// `max(abs_tol, rel_tol |value|)`.
    pub fn tolerance_for(&self, value: Complex) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Value of an integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralResult {
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex,
    pub error_estimate: f64,
    pub converged: bool,
    pub evaluations: usize,
}

fn serialize_complex<S: serde::Serializer>(
    z: &Complex,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

impl IntegralResult {
    fn zero() -> Self {
        Self {
            value: Complex::new(0.0, 0.0),
            error_estimate: 0.0,
            converged: true,
            evaluations: 0,
        }
    }

    /// The value, or [`Error::Quadrature`] if the run did not converge.
    pub fn into_value(self) -> Result<Complex> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::Quadrature {
                value: format!("{}", self.value),
                error_estimate: self.error_estimate,
            })
        }
    }
}

/// Integrand on the compactified variable: `f(tan u) / cos^2 u`.
fn compactified<F>(f: F) -> impl Fn(f64) -> Complex
where
    F: Fn(f64) -> Complex,
{
    move |u: f64| {
        let c = u.cos();
        f(u.tan()) / (c * c)
    }
}

/// `integral of f over (-inf, inf)`.
pub fn integrate_real_line<F>(f: F, spec: &QuadratureSpec) -> IntegralResult
where
    F: Fn(f64) -> Complex,
{
    integrate_u(&compactified(f), -FRAC_PI_2, FRAC_PI_2, spec)
}

/// `integral of f over (-inf, p]`. `p` may be `+inf` or `-inf`.
pub fn cumulative_to<F>(f: F, p: f64, spec: &QuadratureSpec) -> IntegralResult
where
    F: Fn(f64) -> Complex,
{
    if p == f64::NEG_INFINITY {
        return IntegralResult::zero();
    }
    let upper = p.atan();
    let panels =
        ((upper + FRAC_PI_2) / std::f64::consts::PI * INITIAL_PANELS as f64).ceil() as usize;
    integrate_u_with(&compactified(f), -FRAC_PI_2, upper, panels.max(1), spec)
}

fn integrate_u<G>(g: &G, a: f64, b: f64, spec: &QuadratureSpec) -> IntegralResult
where
    G: Fn(f64) -> Complex + ?Sized,
{
    integrate_u_with(g, a, b, INITIAL_PANELS, spec)
}

fn integrate_u_with<G>(
    g: &G,
    a: f64,
    b: f64,
    panels: usize,
    spec: &QuadratureSpec,
) -> IntegralResult
where
    G: Fn(f64) -> Complex + ?Sized,
{
    if a >= b {
        return IntegralResult::zero();
    }
    let run = adaptive(
        g,
        a,
        b,
        panels,
        spec.abs_tol,
        spec.rel_tol,
        spec.max_subdivisions,
    );
    IntegralResult {
        value: run.value,
        error_estimate: run.error,
        converged: run.converged,
        evaluations: run.evaluations,
    }
}

/// Running integral `F(p) = integral of f over (-inf, p]` for many `p`.
///
/// One adaptive pass over the whole line fixes a panel partition in `u`
/// with prefix sums at panel edges. `F(p)` is the prefix up to the panel
/// containing `atan(p)` plus one 21-point rule on the remaining piece, so
/// each lookup costs a binary search and 21 evaluations.
pub struct CumulativeTable<'a> {
    g: Box<dyn Fn(f64) -> Complex + 'a>,
    edges: Vec<f64>,
    prefix: Vec<Complex>,
    total: IntegralResult,
}

impl<'a> CumulativeTable<'a> {
    /// Integrates `f` (a function of `p`) over the real line and records
    /// the panel partition.
    pub fn new<F>(f: F, spec: &QuadratureSpec) -> Self
    where
        F: Fn(f64) -> Complex + 'a,
    {
        let g: Box<dyn Fn(f64) -> Complex + 'a> = Box::new(compactified(f));
        let run = adaptive(
            &*g,
            -FRAC_PI_2,
            FRAC_PI_2,
            INITIAL_PANELS,
            spec.abs_tol,
            spec.rel_tol,
            spec.max_subdivisions,
        );
        let mut edges = Vec::with_capacity(run.panels.len() + 1);
        let mut prefix = Vec::with_capacity(run.panels.len() + 1);
        let mut acc = Complex::new(0.0, 0.0);
        for panel in &run.panels {
            edges.push(panel.a);
            prefix.push(acc);
            acc += panel.value;
        }
        edges.push(FRAC_PI_2);
        prefix.push(acc);
        CumulativeTable {
            g,
            edges,
            prefix,
            total: IntegralResult {
                value: run.value,
                error_estimate: run.error,
                converged: run.converged,
                evaluations: run.evaluations,
            },
        }
    }

    /// Result of the full-line pass.
    pub fn total(&self) -> IntegralResult {
        self.total
    }

    /// Number of panels in the partition.
    pub fn panels(&self) -> usize {
        self.edges.len() - 1
    }

    /// `F(p)`.
    pub fn eval(&self, p: f64) -> Complex {
        if p == f64::NEG_INFINITY {
            return Complex::new(0.0, 0.0);
        }
        let u = p.atan();
        if u >= FRAC_PI_2 {
            return self.total.value;
        }
        // Index of the panel whose left edge is the last one <= u.
        let k = self
            .edges
            .partition_point(|&e| e <= u)
            .saturating_sub(1)
            .min(self.edges.len() - 2);
        let left = self.edges[k];
        if u <= left {
            return self.prefix[k];
        }
        self.prefix[k] + gk21(&*self.g, left, u).value
    }

    /// Evaluations used by a single [`eval`](Self::eval).
    pub fn evals_per_lookup(&self) -> usize {
        EVALS_PER_PANEL
    }
}
