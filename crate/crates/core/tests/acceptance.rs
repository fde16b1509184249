//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Every tolerance below is fixed here.

use std::f64::consts::{E, PI, SQRT_2};
use std::time::Instant;

use minlen_coulomb::model::{self, ModelParams, SpectralFamily, DEFAULT_ROOT_TOL};
use minlen_coulomb::quadrature::{self, integrate_real_line, QuadratureSpec};
use minlen_coulomb::semiclassical::{self, ClassicalConfig};
use minlen_coulomb::{Complex, Error, Wavefunction};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

const ALPHAS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
const BETAS: [f64; 4] = [0.0, 1e-6, 1e-4, 1e-2];
const DELTAS: [f64; 4] = [0.0, 0.25, 0.5, 0.9];
const N_MAX: u32 = 10;

/// Every unflagged (params, family, n) of the standard grid, n <= 10.
fn standard_grid() -> Vec<(ModelParams, SpectralFamily, u32)> {
    let mut out = Vec::new();
    for &a in &ALPHAS {
        for &b in &BETAS {
            for &d in &DELTAS {
                let params = ModelParams::new(a, b).unwrap();
                let family = SpectralFamily::new(d).unwrap();
                for n in family.first_level()..=N_MAX {
                    if !model::validate_regime(&params, &family, n).flagged {
                        out.push((params, family, n));
                    }
                }
            }
        }
    }
    out
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// p-grid [-50, 50] with 1001 points.
fn p_grid() -> Vec<f64> {
    (0..1001).map(|k| -50.0 + 0.1 * k as f64).collect()
}

/// The 12 states used by the eigenfunction criteria: 3 levels from each of
/// four (alpha, beta, delta) families.
fn twelve_states() -> Vec<(String, Wavefunction)> {
    let families = [
        (1.0, 0.0, 0.0),
        (1.0, 0.01, 0.0),
        (1.0, 0.01, 0.5),
        (2.0, 1e-4, 0.25),
    ];
    let mut out = Vec::new();
    for (a, b, d) in families {
        let params = ModelParams::new(a, b).unwrap();
        let family = SpectralFamily::new(d).unwrap();
        for n in family.levels(3) {
            let label = format!("a={a},b={b},d={d},n={n}");
            out.push((label, Wavefunction::for_level(params, &family, n).unwrap()));
        }
    }
    out
}

fn c1_hydrogen_limit() -> Outcome {
    let params = ModelParams::new(1.0, 0.0).unwrap();
    let family = SpectralFamily::zero();
    let mut worst = 0.0_f64;
    for n in 1..=10u32 {
        let exact = -1.0 / (4.0 * (n * n) as f64);
        for e in [
            model::energy_closed_form(&params, &family, n)
                .unwrap()
                .energy,
            model::energy_root_find(&params, &family, n, DEFAULT_ROOT_TOL)
                .unwrap()
                .energy,
            semiclassical::wkb_level(&params, &family, n, DEFAULT_ROOT_TOL)
                .unwrap()
                .energy,
        ] {
            worst = worst.max(rel(e, exact));
        }
    }
    outcome(
        worst <= 1e-12,
        format!("max rel err {worst:.3e} (tol 1e-12), n = 1..10"),
    )
}

fn c2_closed_vs_root() -> Outcome {
    let grid = standard_grid();
    let worst = grid
        .iter()
        .map(|(p, f, n)| {
            let closed = model::energy_closed_form(p, f, *n).unwrap().energy;
            let root = model::energy_root_find(p, f, *n, DEFAULT_ROOT_TOL)
                .unwrap()
                .energy;
            rel(root, closed)
        })
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-10,
        format!(
            "max rel dev {worst:.3e} (tol 1e-10) over {} levels",
            grid.len()
        ),
    )
}

fn c3_wkb_coincidence() -> Outcome {
    let grid = standard_grid();
    let worst = grid
        .iter()
        .map(|(p, f, n)| {
            let closed = model::energy_closed_form(p, f, *n).unwrap().energy;
            let wkb = semiclassical::wkb_level(p, f, *n, DEFAULT_ROOT_TOL)
                .unwrap()
                .energy;
            rel(wkb, closed)
        })
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-10,
        format!(
            "max rel dev {worst:.3e} (tol 1e-10) over {} levels",
            grid.len()
        ),
    )
}

fn c4_action_identity() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0_f64;
    let mut count = 0;
    for beta in [0.0, 1e-4, 1e-2, 0.1, 1.0] {
        for eps in [1e-3, 0.1, 1.0, 10.0] {
            let cfg =
                ClassicalConfig::from_epsilon(ModelParams::new(1.0, beta).unwrap(), eps).unwrap();
            let num = semiclassical::action_integral_numeric(&cfg, &spec).unwrap();
            worst = worst.max(rel(num, semiclassical::action_integral_closed(&cfg)));
            count += 1;
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max rel err {worst:.3e} (tol 1e-9) over {count} (beta, eps) pairs"),
    )
}

fn c5_sqrt_beta_correction() -> Outcome {
    let family = SpectralFamily::zero();
    let e0 = model::energy_closed_form(&ModelParams::new(1.0, 0.0).unwrap(), &family, 1)
        .unwrap()
        .energy;
    let ratio = |beta: f64| {
        let e = model::energy_closed_form(&ModelParams::new(1.0, beta).unwrap(), &family, 1)
            .unwrap()
            .energy;
        (e - e0) / beta.sqrt()
    };
    let target = 0.25;
    let dev6 = rel(ratio(1e-6), target);
    let dev8 = rel(ratio(1e-8), target);
    let pass = dev6 <= 1e-2 && dev8 <= 1e-4;
    outcome(
        pass,
        format!(
            "ratio {:.10} at beta=1e-6 (rel dev {dev6:.3e}, tol 1e-2); ratio {:.10} at beta=1e-8 \
             (rel dev {dev8:.3e}, tol 1e-4); next series term predicts rel dev 1.25*sqrt(beta)",
            ratio(1e-6),
            ratio(1e-8)
        ),
    )
}

fn c6_ode_residual(states: &[(String, Wavefunction)]) -> Outcome {
    let grid = p_grid();
    let mut worst = 0.0_f64;
    for (_, wf) in states {
        for &p in &grid {
            worst = worst.max(wf.ode_residual(p).norm() / wf.residual_scale(p));
        }
    }
    // Negative control: eps shifted by 1e-3, residual at the unshifted energy.
    let (_, base) = &states[3];
    let bad = Wavefunction::new(*base.params(), base.epsilon() + 1e-3).unwrap();
    let control = grid
        .iter()
        .map(|&p| bad.ode_residual_at_energy(p, base.energy()).norm() / bad.residual_scale(p))
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-9 && control >= 1e-4,
        format!(
            "max normalized residual {worst:.3e} (tol 1e-9) over {} states; negative control {control:.3e} (>= 1e-4)",
            states.len()
        ),
    )
}

fn c7_normalization(states: &[(String, Wavefunction)]) -> Outcome {
    let spec = QuadratureSpec::default();
    let worst = states
        .iter()
        .map(|(_, wf)| {
            let v = quadrature::inner_product(wf, wf, &spec).unwrap().value;
            (v - Complex::new(1.0, 0.0)).norm()
        })
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-8,
        format!("max |<psi|psi> - 1| = {worst:.3e} (tol 1e-8)"),
    )
}

fn c8_measure_identity(states: &[(String, Wavefunction)]) -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0_f64;
    let mut worst_zero = 0.0_f64;
    for (_, wf) in states {
        let v = quadrature::measure_integral(wf, &spec).unwrap().value;
        worst = worst.max((v - Complex::new(wf.measure_integral_closed(), 0.0)).norm());
        let q = wf.quantization_value();
        if (q - q.round()).abs() < 1e-9 {
            worst_zero = worst_zero.max(v.norm());
        }
    }
    outcome(
        worst <= 1e-8 && worst_zero <= 1e-9,
        format!("max |numeric - closed| {worst:.3e} (tol 1e-8); delta=0 levels max |integral| {worst_zero:.3e} (tol 1e-9)"),
    )
}

fn c9_hermiticity(states: &[(String, Wavefunction)]) -> Outcome {
    let spec = QuadratureSpec::default();
    let mut same = 0.0_f64;
    let mut pairs = 0;
    for family in states.chunks(3) {
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                let d = quadrature::hermiticity_defect(&family[i].1, &family[j].1, &spec).unwrap();
                same = same.max(d.defect.value.norm());
                pairs += 1;
            }
        }
    }
    let params = ModelParams::new(1.0, 0.01).unwrap();
    let a = Wavefunction::for_level(params, &SpectralFamily::zero(), 1).unwrap();
    let b = Wavefunction::for_level(params, &SpectralFamily::new(0.5).unwrap(), 0).unwrap();
    let cross = quadrature::hermiticity_defect(&a, &b, &spec)
        .unwrap()
        .defect
        .value
        .norm();
    outcome(
        same <= 1e-6 && cross >= 1e-3,
        format!("same-family max |D| {same:.3e} over {pairs} pairs (tol 1e-6); cross-family |D| {cross:.3e} (>= 1e-3)"),
    )
}

fn c10_eigen_equation(states: &[(String, Wavefunction)]) -> Outcome {
    let spec = QuadratureSpec::default();
    let grid = p_grid();
    let mut worst = 0.0_f64;
    for (_, wf) in states {
        let inv = wf.inverse_x(&spec).unwrap();
        for &p in &grid {
            worst = worst.max(inv.eigen_residual(p).norm());
        }
    }
    outcome(
        worst <= 1e-7,
        format!("max pointwise residual {worst:.3e} (tol 1e-7) on 1001-point grid"),
    )
}

fn c11_degenerate_level() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for beta in [0.0, 0.01] {
        let params = ModelParams::new(1.0, beta).unwrap();
        let rejected = matches!(
            model::energy_closed_form(&params, &SpectralFamily::zero(), 0),
            Err(Error::NoFiniteSolution { n: 0 })
        ) && matches!(
            model::energy_root_find(&params, &SpectralFamily::zero(), 0, DEFAULT_ROOT_TOL),
            Err(Error::NoFiniteSolution { n: 0 })
        );
        let eps: Vec<f64> = (1..=6)
            .map(|k| {
                let family = SpectralFamily::new(10f64.powi(-k)).unwrap();
                model::energy_closed_form(&params, &family, 0)
                    .unwrap()
                    .epsilon
            })
            .collect();
        let increasing = eps.windows(2).all(|w| w[1] > w[0]);
        ok &= rejected && increasing;
        detail.push(format!(
            "beta={beta}: rejected={rejected}, eps(k=1..6) increasing={increasing} up to {:.3e}",
            eps[5]
        ));
    }
    outcome(ok, detail.join("; "))
}

type Integrand = Box<dyn Fn(f64) -> Complex>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn real(f: impl Fn(f64) -> f64 + 'static) -> Integrand {
    Box::new(move |p| Complex::new(f(p), 0.0))
}

/// Closed-form testbed: rational, Gaussian and oscillatory integrands.
fn testbed() -> Vec<(&'static str, Integrand, Complex)> {
    let eps = 0.227_744_249_483_388_65;
    let r = |x: f64| Complex::new(x, 0.0);
    vec![
        ("1/(1+p^2)", real(|p| 1.0 / (1.0 + p * p)), r(PI)),
        (
            "1/(1+p^2)^2",
            real(|p| 1.0 / (1.0 + p * p).powi(2)),
            r(PI / 2.0),
        ),
        ("1/(p^2+4)", real(|p| 1.0 / (p * p + 4.0)), r(PI / 2.0)),
        (
            "1/((1+p^2)(4+p^2))",
            real(|p| 1.0 / ((1.0 + p * p) * (4.0 + p * p))),
            r(PI / 6.0),
        ),
        (
            "p^2/(1+p^2)^2",
            real(|p| p * p / (1.0 + p * p).powi(2)),
            r(PI / 2.0),
        ),
        (
            "1/(1+p^4)",
            real(|p| 1.0 / (1.0 + p.powi(4))),
            r(PI / SQRT_2),
        ),
        (
            "1/(1+(p-3)^2)",
            real(|p| 1.0 / (1.0 + (p - 3.0).powi(2))),
            r(PI),
        ),
        ("1/(p^2+0.01)", real(|p| 1.0 / (p * p + 0.01)), r(10.0 * PI)),
        (
            "1/((p^2+eps)(1+0.01p^2))",
            real(move |p| 1.0 / ((p * p + eps) * (1.0 + 0.01 * p * p))),
            r(PI / (eps.sqrt() + 0.1 * eps)),
        ),
        ("exp(-p^2)", real(|p| (-p * p).exp()), r(PI.sqrt())),
        (
            "exp(-2p^2)",
            real(|p| (-2.0 * p * p).exp()),
            r((PI / 2.0).sqrt()),
        ),
        (
            "p^2 exp(-p^2)",
            real(|p| p * p * (-p * p).exp()),
            r(PI.sqrt() / 2.0),
        ),
        (
            "cos(p) exp(-p^2)",
            real(|p| p.cos() * (-p * p).exp()),
            r(PI.sqrt() * (-0.25f64).exp()),
        ),
        ("sech^2(p)", real(|p| 1.0 / p.cosh().powi(2)), r(2.0)),
        ("sech(p)", real(|p| 1.0 / p.cosh()), r(PI)),
        ("exp(-|p|)", real(|p| (-p.abs()).exp()), r(2.0)),
        (
            "cos(p)/(1+p^2)^2",
            real(|p| p.cos() / (1.0 + p * p).powi(2)),
            r(PI / E),
        ),
        (
            "p sin(p) exp(-p^2)",
            real(|p| p * p.sin() * (-p * p).exp()),
            r(PI.sqrt() / 2.0 * (-0.25f64).exp()),
        ),
        (
            "exp(i atan p)/(1+p^2)",
            Box::new(|p: f64| Complex::from_polar(1.0 / (1.0 + p * p), p.atan())),
            r(2.0),
        ),
        (
            "exp(3i atan p)/(1+p^2)",
            Box::new(|p: f64| Complex::from_polar(1.0 / (1.0 + p * p), 3.0 * p.atan())),
            r(-2.0 / 3.0),
        ),
    ]
}

fn c12_quadrature_testbed() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut failures = Vec::new();
    let mut worst_ratio = 0.0_f64;
    let cases = testbed();
    for (name, f, exact) in &cases {
        let r = integrate_real_line(f, &spec);
        let err = (r.value - exact).norm();
        // Within the stated tolerance, and the estimate is not beaten by more than 10x.
        let within = r.converged && err <= spec.tolerance_for(*exact);
        let honest = err <= 10.0 * r.error_estimate.max(f64::EPSILON * exact.norm());
        worst_ratio = worst_ratio.max(err / r.error_estimate.max(f64::MIN_POSITIVE));
        if !(within && honest) {
            failures.push(format!(
                "{name}: err {err:.2e}, est {:.2e}, converged {}",
                r.error_estimate, r.converged
            ));
        }
    }
    let detail = if failures.is_empty() {
        format!(
            "{} integrands; max true/estimated error ratio {worst_ratio:.3e} (<= 10)",
            cases.len()
        )
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

fn main() {
    let states = twelve_states();
    let criteria: Vec<Criterion> = vec![
        ("C1  hydrogen limit", Box::new(c1_hydrogen_limit)),
        (
            "C2  closed form vs root finding",
            Box::new(c2_closed_vs_root),
        ),
        (
            "C3  Bohr-Sommerfeld coincidence",
            Box::new(c3_wkb_coincidence),
        ),
        ("C4  action identity", Box::new(c4_action_identity)),
        (
            "C5  sqrt(beta) leading correction",
            Box::new(c5_sqrt_beta_correction),
        ),
        ("C6  ODE residual", Box::new(|| c6_ode_residual(&states))),
        ("C7  normalization", Box::new(|| c7_normalization(&states))),
        (
            "C8  measure integral identity",
            Box::new(|| c8_measure_identity(&states)),
        ),
        (
            "C9  hermiticity defect",
            Box::new(|| c9_hermiticity(&states)),
        ),
        (
            "C10 eigen-equation with boundary constant",
            Box::new(|| c10_eigen_equation(&states)),
        ),
        (
            "C11 degenerate level contract",
            Box::new(c11_degenerate_level),
        ),
        ("C12 quadrature testbed", Box::new(c12_quadrature_testbed)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {name}: {} ({:.2}s)",
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
