//! Model parameters, the quantization function and the bound-state spectrum.
//!
//! Bound states satisfy `q(eps) = n + delta` where
//!
//! ```text
//! q(eps) = alpha / (2 (sqrt(eps) + sqrt(beta) eps))
//! ```
//!
//! and `eps = -E > 0`. `q` falls strictly from `+inf` to `0` on
//! `(0, inf)`, so every level `n + delta > 0` has exactly one root.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default absolute tolerance on `q(eps)` for root finding.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// Wavefunctions are refused once `eps * beta` reaches `1 - SINGULAR_MARGIN`.
pub const SINGULAR_MARGIN: f64 = 1e-9;

const MAX_BRACKET_EXPANSIONS: u32 = 4096;
const MAX_BISECTIONS: u32 = 400;

/// Coupling `alpha > 0` and deformation `beta >= 0` (hbar = 1, 2m = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    alpha: f64,
    beta: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::Domain(format!(
                "alpha must be finite and > 0 (attractive potential), got {alpha}"
            )));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::Domain(format!(
                "beta must be finite and >= 0, got {beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sqrt_beta(&self) -> f64 {
        self.beta.sqrt()
    }

    /// Minimal position uncertainty `sqrt(beta)` (hbar = 1).
    pub fn minimal_length(&self) -> f64 {
        self.sqrt_beta()
    }
}

/// Fractional offset `delta` in `[0, 1)` that selects one spectral family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralFamily {
    delta: f64,
}

impl SpectralFamily {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta.is_finite() && (0.0..1.0).contains(&delta)) {
            return Err(Error::Domain(format!(
                "delta must lie in [0, 1), got {delta}"
            )));
        }
        Ok(Self { delta })
    }

    /// The `delta = 0` family.
    pub fn zero() -> Self {
        Self { delta: 0.0 }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Lowest admissible level index: 1 for `delta = 0`, otherwise 0.
    pub fn first_level(&self) -> u32 {
        if self.delta == 0.0 {
            1
        } else {
            0
        }
    }

    /// The first `count` admissible level indices, in increasing order.
    pub fn levels(&self, count: u32) -> impl Iterator<Item = u32> {
        let first = self.first_level();
        first..first + count
    }

    /// `n + delta`, rejecting the degenerate `(n = 0, delta = 0)` level.
    pub fn effective_index(&self, n: u32) -> Result<f64> {
        if n == 0 && self.delta == 0.0 {
            return Err(Error::NoFiniteSolution { n });
        }
        Ok(n as f64 + self.delta)
    }
}

/// Which computation produced a [`BoundState`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Root,
    Series,
    Wkb,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Closed => "closed",
            Method::Root => "root",
            Method::Series => "series",
            Method::Wkb => "wkb",
        };
        f.write_str(s)
    }
}

/// A quantized level with binding energy `epsilon = -energy > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundState {
    pub n: u32,
    pub epsilon: f64,
    pub energy: f64,
    pub method: Method,
}

impl BoundState {
    pub(crate) fn from_epsilon(n: u32, epsilon: f64, method: Method) -> Self {
        Self {
            n,
            epsilon,
            energy: -epsilon,
            method,
        }
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "binding energy epsilon must be finite and > 0, got {epsilon}"
        )))
    }
}

/// `q(eps) = alpha / (2 (sqrt(eps) + sqrt(beta) eps))`.
pub fn quantization_value(params: &ModelParams, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    Ok(q_unchecked(params, epsilon))
}

#[inline]
pub(crate) fn q_unchecked(params: &ModelParams, epsilon: f64) -> f64 {
    params.alpha / (2.0 * (epsilon.sqrt() + params.sqrt_beta() * epsilon))
}

/// Binding energy solving `q(eps) = nu` in closed form.
///
/// With `s = sqrt(eps)` the condition is `sqrt(beta) s^2 + s - alpha/(2 nu) = 0`.
/// The positive root is written as
///
/// ```text
/// s = (alpha / nu) / (1 + sqrt(1 + 2 alpha sqrt(beta) / nu))
/// ```
///
/// which is free of cancellation and reduces to `alpha / (2 nu)` at `beta = 0`.
pub fn epsilon_for_index(params: &ModelParams, nu: f64) -> Result<f64> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(Error::Domain(format!("n + delta must be > 0, got {nu}")));
    }
    let a_over_nu = params.alpha / nu;
    let s = a_over_nu / (1.0 + (1.0 + 2.0 * a_over_nu * params.sqrt_beta()).sqrt());
    Ok(s * s)
}

/// Exact level `n` of the family.
pub fn energy_closed_form(
    params: &ModelParams,
    family: &SpectralFamily,
    n: u32,
) -> Result<BoundState> {
    let nu = family.effective_index(n)?;
    let eps = epsilon_for_index(params, nu)?;
    Ok(BoundState::from_epsilon(n, eps, Method::Closed))
}

/// Finds `eps` with `f(eps) = target` for a strictly decreasing `f`.
///
/// The bracket grows geometrically from `guess`, then bisection runs until
/// `|f(eps) - target| <= tol` or the bracket collapses to adjacent floats.
pub(crate) fn solve_decreasing<F>(f: F, target: f64, guess: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut lo = guess;
    let mut hi = guess;
    let mut expansions = 0;
    // f(lo) >= target >= f(hi)
    while f(lo) < target {
        lo *= 0.5;
        expansions += 1;
        if expansions > MAX_BRACKET_EXPANSIONS || lo == 0.0 {
            return Err(Error::BracketNotFound { target, expansions });
        }
    }
    while f(hi) > target {
        hi *= 2.0;
        expansions += 1;
        if expansions > MAX_BRACKET_EXPANSIONS || !hi.is_finite() {
            return Err(Error::BracketNotFound { target, expansions });
        }
    }

    let mut best = lo;
    let mut best_dev = (f(lo) - target).abs();
    let dev_hi = (f(hi) - target).abs();
    if dev_hi < best_dev {
        best = hi;
        best_dev = dev_hi;
    }
    for _ in 0..MAX_BISECTIONS {
        if best_dev <= tol {
            break;
        }
        let mid = if hi / lo > 4.0 {
            (lo * hi).sqrt()
        } else {
            0.5 * (lo + hi)
        };
        if mid <= lo || mid >= hi {
            break;
        }
        let value = f(mid);
        let dev = (value - target).abs();
        if dev < best_dev {
            best = mid;
            best_dev = dev;
        }
        if value > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best)
}

/// Level `n` found by bracketing and bisection on `q(eps) - (n + delta)`.
pub fn energy_root_find(
    params: &ModelParams,
    family: &SpectralFamily,
    n: u32,
    tol: f64,
) -> Result<BoundState> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    let nu = family.effective_index(n)?;
    let guess = undeformed_epsilon(params.alpha, nu);
    let eps = solve_decreasing(|e| q_unchecked(params, e), nu, guess, tol)?;
    Ok(BoundState::from_epsilon(n, eps, Method::Root))
}

/// `alpha^2 / (4 nu^2)`, the `beta = 0` binding energy.
pub(crate) fn undeformed_epsilon(alpha: f64, nu: f64) -> f64 {
    let half = alpha / (2.0 * nu);
    half * half
}

/// Small-`beta` expansion of the energy at effective index `nu = n + delta`,
/// keeping terms up to `sqrt(beta)^order`:
///
/// ```text
/// E = -a^2/(4 nu^2) + a^3/(4 nu^3) sqrt(beta) - 5 a^4/(16 nu^4) beta + ...
/// ```
pub fn energy_series(params: &ModelParams, nu: f64, order: u32) -> Result<f64> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(Error::Domain(format!("nu must be > 0, got {nu}")));
    }
    if order > 2 {
        return Err(Error::Domain(format!(
            "series order must be 0, 1 or 2, got {order}"
        )));
    }
    let x = params.alpha / nu;
    let sb = params.sqrt_beta();
    let terms = [
        -x * x / 4.0,
        x.powi(3) / 4.0 * sb,
        -5.0 * x.powi(4) / 16.0 * params.beta,
    ];
    Ok(terms[..=order as usize].iter().sum())
}

/// `BoundState` carrying the order-2 series value.
pub fn energy_series_state(
    params: &ModelParams,
    family: &SpectralFamily,
    n: u32,
) -> Result<BoundState> {
    let nu = family.effective_index(n)?;
    let e = energy_series(params, nu, 2)?;
    Ok(BoundState::from_epsilon(n, -e, Method::Series))
}

/// The family containing the level with binding energy `epsilon0`.
pub fn family_from_reference(params: &ModelParams, epsilon0: f64) -> Result<SpectralFamily> {
    let (family, _) = family_and_level(params, epsilon0)?;
    Ok(family)
}

/// Family and level index `floor(q(epsilon0))` of a reference level.
pub fn family_and_level(params: &ModelParams, epsilon0: f64) -> Result<(SpectralFamily, u32)> {
    let q = quantization_value(params, epsilon0)?;
    // A few ulps below an integer is a delta = 0 level, not delta -> 1.
    let nearest = q.round();
    let n = if (q - nearest).abs() <= 4.0 * f64::EPSILON * q {
        nearest
    } else {
        q.floor()
    };
    let delta = (q - n).max(0.0);
    if n > u32::MAX as f64 {
        return Err(Error::Domain(format!(
            "reference level index {n} is out of range"
        )));
    }
    Ok((SpectralFamily { delta }, n as u32))
}

/// Validity diagnostics for a level: how close `eps * beta` is to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeDiagnostics {
    pub epsilon: f64,
    pub eps_beta: f64,
    pub one_minus_eps_beta: f64,
    pub alpha_sqrt_beta: f64,
    /// `4 (n + delta)`; `eps * beta < 1` iff `alpha sqrt(beta)` is below it.
    pub bound: f64,
    pub flagged: bool,
}

pub fn validate_regime(params: &ModelParams, family: &SpectralFamily, n: u32) -> RegimeDiagnostics {
    let nu = n as f64 + family.delta;
    let epsilon = epsilon_for_index(params, nu).unwrap_or(f64::INFINITY);
    let eps_beta = if params.beta == 0.0 {
        0.0
    } else {
        epsilon * params.beta
    };
    let alpha_sqrt_beta = params.alpha * params.sqrt_beta();
    let bound = 4.0 * nu;
    let flagged = alpha_sqrt_beta >= bound || eps_beta >= 1.0 - SINGULAR_MARGIN;
    RegimeDiagnostics {
        epsilon,
        eps_beta,
        one_minus_eps_beta: 1.0 - eps_beta,
        alpha_sqrt_beta,
        bound,
        flagged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Independent oracle: bisection on sqrt(eps) + sqrt(beta) eps = alpha / (2 nu)
    // carried out directly on the quadratic, not through `q`.
    fn oracle_eps(alpha: f64, beta: f64, nu: f64) -> f64 {
        let target = alpha / (2.0 * nu);
        let g = |s: f64| s + beta.sqrt() * s * s - target;
        let (mut lo, mut hi) = (0.0_f64, target);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let s = 0.5 * (lo + hi);
        s * s
    }

    fn p(alpha: f64, beta: f64) -> ModelParams {
        ModelParams::new(alpha, beta).unwrap()
    }

    #[test]
    fn oracle_values_frozen() {
        // Frozen from the oracle above and cross-checked at 40 digits.
        assert_relative_eq!(
            oracle_eps(1.0, 0.01, 1.0),
            0.227_744_249_483_388_65,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            oracle_eps(1.0, 0.01, 0.5),
            0.839_202_169_003_839_6,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            oracle_eps(1.0, 0.01, 2.0),
            0.059_557_591_492_422_65,
            max_relative = 1e-13
        );
    }

    #[test]
    fn quantization_value_examples() {
        assert_relative_eq!(quantization_value(&p(1.0, 0.0), 0.25).unwrap(), 1.0);
        assert_relative_eq!(quantization_value(&p(2.0, 0.0), 1.0).unwrap(), 1.0);
        let q = quantization_value(&p(1.0, 0.01), 0.227_744_249_483_388_65).unwrap();
        assert_relative_eq!(q, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn quantization_value_rejects_nonpositive() {
        assert!(matches!(
            quantization_value(&p(1.0, 0.0), 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            quantization_value(&p(1.0, 0.0), -1.0),
            Err(Error::Domain(_))
        ));
        assert!(quantization_value(&p(1.0, 0.0), f64::NAN).is_err());
    }

    #[test]
    fn params_and_family_validation() {
        assert!(ModelParams::new(0.0, 0.0).is_err());
        assert!(ModelParams::new(-1.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, -1e-3).is_err());
        assert!(SpectralFamily::new(1.0).is_err());
        assert!(SpectralFamily::new(-0.1).is_err());
        assert_eq!(SpectralFamily::new(0.0).unwrap().first_level(), 1);
        assert_eq!(SpectralFamily::new(0.3).unwrap().first_level(), 0);
        let lv: Vec<_> = SpectralFamily::new(0.3).unwrap().levels(3).collect();
        assert_eq!(lv, vec![0, 1, 2]);
    }

    #[test]
    fn closed_form_examples() {
        let fam0 = SpectralFamily::zero();
        let e = energy_closed_form(&p(1.0, 0.0), &fam0, 1).unwrap();
        assert_eq!(e.energy, -0.25);
        assert_eq!(e.method, Method::Closed);
        let e = energy_closed_form(&p(1.0, 0.01), &fam0, 1).unwrap();
        assert_relative_eq!(e.energy, -oracle_eps(1.0, 0.01, 1.0), max_relative = 1e-13);
        let fam = SpectralFamily::new(0.5).unwrap();
        let e = energy_closed_form(&p(1.0, 0.01), &fam, 0).unwrap();
        assert_relative_eq!(e.energy, -0.839_202_169_003_839_6, max_relative = 1e-13);
    }

    #[test]
    fn closed_form_rejects_degenerate_level() {
        let r = energy_closed_form(&p(1.0, 0.01), &SpectralFamily::zero(), 0);
        assert_eq!(r, Err(Error::NoFiniteSolution { n: 0 }));
    }

    #[test]
    fn root_find_examples() {
        let fam0 = SpectralFamily::zero();
        let s = energy_root_find(&p(1.0, 0.0), &fam0, 2, 1e-12).unwrap();
        assert!((s.epsilon - 0.0625).abs() < 1e-10);
        assert_eq!(s.method, Method::Root);
        let s = energy_root_find(&p(1.0, 0.01), &fam0, 2, 1e-12).unwrap();
        assert_relative_eq!(s.epsilon, 0.059_557_591_492_422_65, max_relative = 1e-10);
        let params = p(3.0, 0.04);
        let fam = SpectralFamily::new(0.25).unwrap();
        let root = energy_root_find(&params, &fam, 1, 1e-12).unwrap();
        let closed = energy_closed_form(&params, &fam, 1).unwrap();
        assert_relative_eq!(root.epsilon, closed.epsilon, max_relative = 1e-10);
        assert_relative_eq!(root.epsilon, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn root_find_rejects_bad_tolerance() {
        let r = energy_root_find(&p(1.0, 0.0), &SpectralFamily::zero(), 1, 0.0);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn series_examples() {
        assert_eq!(energy_series(&p(1.0, 0.0), 1.0, 2).unwrap(), -0.25);
        assert_relative_eq!(
            energy_series(&p(1.0, 0.01), 1.0, 2).unwrap(),
            -0.228125,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            energy_series(&p(1.0, 0.01), 1.0, 1).unwrap(),
            -0.225,
            max_relative = 1e-15
        );
        assert_eq!(energy_series(&p(1.0, 0.01), 1.0, 0).unwrap(), -0.25);
        assert!(energy_series(&p(1.0, 0.01), 1.0, 3).is_err());
        assert!(energy_series(&p(1.0, 0.01), 0.0, 1).is_err());
    }

    #[test]
    fn family_from_reference_examples() {
        assert_eq!(
            family_from_reference(&p(1.0, 0.0), 0.25).unwrap().delta(),
            0.0
        );
        assert_eq!(
            family_from_reference(&p(1.0, 0.0), 1.0).unwrap().delta(),
            0.5
        );
        let d = family_from_reference(&p(1.0, 0.01), 0.839_202_0)
            .unwrap()
            .delta();
        assert!((d - 0.5).abs() < 1e-6);
        assert!(family_from_reference(&p(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn reference_level_is_reproduced() {
        let params = p(1.7, 0.003);
        let (fam, n) = family_and_level(&params, 0.123).unwrap();
        let e = energy_closed_form(&params, &fam, n).unwrap();
        assert_relative_eq!(e.epsilon, 0.123, max_relative = 1e-12);
    }

    #[test]
    fn regime_examples() {
        let d = validate_regime(&p(1.0, 0.01), &SpectralFamily::zero(), 1);
        assert!(!d.flagged);
        assert!((d.eps_beta - 0.002_277_442_494_833_886).abs() < 1e-15);
        let d = validate_regime(&p(1.0, 0.0), &SpectralFamily::zero(), 1);
        assert_eq!(d.eps_beta, 0.0);
        assert!(!d.flagged);
        let d = validate_regime(&p(100.0, 0.01), &SpectralFamily::zero(), 1);
        assert!(d.flagged);
        assert!(d.eps_beta > 1.0);
        assert_eq!(d.alpha_sqrt_beta, 10.0);
    }

    #[test]
    fn regime_bound_matches_eps_beta() {
        // alpha sqrt(beta) = 4 nu is the exact boundary eps beta = 1.
        for &(alpha, beta, nu) in &[(4.0, 1.0, 1.0), (8.0, 0.25, 1.0), (2.0, 0.25, 0.25)] {
            let eps = epsilon_for_index(&p(alpha, beta), nu).unwrap();
            assert_relative_eq!(eps * beta, 1.0, max_relative = 1e-14);
        }
    }
}
