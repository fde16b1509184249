//! Integrals over eigenfunctions with the deformed measure `dp / (1 + beta p^2)`.

use std::cell::Cell;

use serde::Serialize;

use super::{integrate_real_line, CumulativeTable, IntegralResult, QuadratureSpec};
use crate::error::{Error, Result};
use crate::wavefunction::Wavefunction;
use crate::Complex;

fn same_model(a: &Wavefunction, b: &Wavefunction) -> Result<()> {
    if a.params() == b.params() {
        Ok(())
    } else {
        Err(Error::ParamsMismatch)
    }
}

fn converged(r: IntegralResult) -> Result<IntegralResult> {
    r.into_value().map(|_| r)
}

/// `<a|b> = integral of conj(a(p)) b(p) / (1 + beta p^2) dp`.
pub fn inner_product(
    a: &Wavefunction,
    b: &Wavefunction,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    same_model(a, b)?;
    let beta = a.params().beta();
    converged(integrate_real_line(
        |p| a.evaluate(p).conj() * b.evaluate(p) / (1.0 + beta * p * p),
        spec,
    ))
}

/// `integral of psi(p) / (1 + beta p^2) dp`.
pub fn measure_integral(wf: &Wavefunction, spec: &QuadratureSpec) -> Result<IntegralResult> {
    converged(integrate_real_line(|p| wf.weighted(p), spec))
}

/// Outcome of [`hermiticity_defect`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DefectReport {
    /// `D(a, b)` with an error estimate that includes the inner tables.
    pub defect: IntegralResult,
    /// Integrand evaluations across the inner tables and the outer pass.
    pub evaluations: usize,
    pub over_budget: bool,
}

/// `D(a, b) = <(1/X) a | b> - <a | (1/X) b>` by direct iterated quadrature.
///
/// With `A(p)`, `B(p)` the running measure integrals of `a`, `b` and
/// `c_a`, `c_b` their boundary constants, the integrand is
///
/// ```text
/// [ (i conj(A) + conj(c_a)) b - conj(a) (-i B + c_b) ] / (1 + beta p^2)
/// ```
///
/// `A` and `B` come from [`CumulativeTable`]s built once, so the outer pass
/// costs one table lookup per node instead of a fresh inner integral.
pub fn hermiticity_defect(
    a: &Wavefunction,
    b: &Wavefunction,
    spec: &QuadratureSpec,
) -> Result<DefectReport> {
    same_model(a, b)?;
    let beta = a.params().beta();
    let lookups = Cell::new(0usize);

    let table_a = CumulativeTable::new(|p| a.weighted(p), spec);
    let table_b = CumulativeTable::new(|p| b.weighted(p), spec);
    let total_a = table_a.total();
    let total_b = table_b.total();
    total_a.into_value()?;
    total_b.into_value()?;

    let ca = a.boundary_constant();
    let cb = b.boundary_constant();
    let i = Complex::i();
    let outer = integrate_real_line(
        |p| {
            lookups.set(lookups.get() + 2);
            let left = (i * table_a.eval(p).conj() + ca.conj()) * b.evaluate(p);
            let right = a.evaluate(p).conj() * (-i * table_b.eval(p) + cb);
            (left - right) / (1.0 + beta * p * p)
        },
        spec,
    );

    // Inner errors propagate through integral of |psi| dp = C pi / sqrt(eps).
    let l1 = |w: &Wavefunction| w.norm_const() * std::f64::consts::PI / w.epsilon().sqrt();
    let inner_err = total_a.error_estimate * l1(b) + total_b.error_estimate * l1(a);
    let error_estimate = outer.error_estimate + inner_err;
    let evaluations = total_a.evaluations
        + total_b.evaluations
        + outer.evaluations
        + lookups.get() * table_a.evals_per_lookup();
    let defect = IntegralResult {
        value: outer.value,
        error_estimate,
        converged: outer.converged,
        evaluations,
    };
    Ok(DefectReport {
        defect: converged(defect)?,
        evaluations,
        over_budget: evaluations > spec.eval_budget,
    })
}
