//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 regime refusal.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::error::Error;
use crate::model::{self, ModelParams, SpectralFamily, DEFAULT_ROOT_TOL};
use crate::quadrature::{self, QuadratureSpec};
use crate::report::{CheckRecord, Comparison, Format, RunReport, Table};
use crate::semiclassical::{self, ClassicalConfig};
use crate::wavefunction::Wavefunction;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REGIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "minlen-coulomb",
    version,
    about = "Spectrum and eigenfunctions of -alpha/X with a minimal-length deformed algebra"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels by closed form, root finding, Bohr-Sommerfeld and series.
    Spectrum(SpectrumArgs),
    /// Momentum-space eigenfunction on a grid.
    Wavefunction(WavefunctionArgs),
    /// Run verification suites and report pass/fail per check.
    Verify(VerifyArgs),
    /// Spectral family (delta) containing a reference binding energy.
    Families(FamiliesArgs),
    /// Exact energy vs. small-beta series over a sweep of beta.
    Expand(ExpandArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Coupling strength (> 0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Deformation parameter (>= 0).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
    /// Spectral family offset in [0, 1).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta: f64,
    /// Number of levels, starting at the family's lowest level.
    #[arg(long, default_value_t = 5)]
    levels: u32,
    /// Level index for single-level commands (default: lowest level).
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long, default_value_t = 1e-11)]
    abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Proceed for levels with eps*beta near or above 1.
    #[arg(long)]
    allow_flagged: bool,
}

#[derive(Debug, Args)]
struct Grid {
    #[arg(long, default_value_t = -50.0, allow_negative_numbers = true)]
    p_min: f64,
    #[arg(long, default_value_t = 50.0, allow_negative_numbers = true)]
    p_max: f64,
    #[arg(long, default_value_t = 1001)]
    points: usize,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    common: Common,
    /// Root-finding tolerance on the quantization function.
    #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
    tol: f64,
}

#[derive(Debug, Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    grid: Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Ode,
    Norm,
    Ortho,
    X6,
    Hermiticity,
    InverseX,
    Wkb,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    grid: Grid,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Level pair for the same-family hermiticity check, e.g. `1,2`.
    #[arg(long, value_delimiter = ',')]
    pair: Option<Vec<u32>>,
    /// Two deltas for a cross-family hermiticity check, e.g. `0,0.5`.
    #[arg(long, value_delimiter = ',')]
    cross_family: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct FamiliesArgs {
    #[command(flatten)]
    common: Common,
    /// Reference binding energy declared to be in the spectrum.
    #[arg(long)]
    epsilon0: f64,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    #[command(flatten)]
    common: Common,
    /// Beta values to sweep.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.0, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8])]
    betas: Vec<f64>,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Regime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularRegime { .. } => Failure::Regime(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<Output, Failure>;

enum Output {
    Table(Table),
    Report(RunReport),
}

impl Common {
    fn params(&self) -> Result<ModelParams, Failure> {
        Ok(ModelParams::new(self.alpha, self.beta)?)
    }

    fn family(&self) -> Result<SpectralFamily, Failure> {
        Ok(SpectralFamily::new(self.delta)?)
    }

    fn quad(&self) -> Result<QuadratureSpec, Failure> {
        Ok(QuadratureSpec::new(
            self.abs_tol,
            self.rel_tol,
            QuadratureSpec::default().max_subdivisions,
        )?)
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }

    fn level(&self, family: &SpectralFamily) -> u32 {
        self.n.unwrap_or_else(|| family.first_level())
    }

    fn meta(&self, command: &str) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), command.into());
        m.insert("alpha".into(), self.alpha.into());
        m.insert("beta".into(), self.beta.into());
        m.insert("delta".into(), self.delta.into());
        m.insert("abs_tol".into(), self.abs_tol.into());
        m.insert("rel_tol".into(), self.rel_tol.into());
        m
    }

    /// Refuses flagged levels unless `--allow-flagged`.
    fn check_regime(
        &self,
        params: &ModelParams,
        family: &SpectralFamily,
        n: u32,
    ) -> Result<bool, Failure> {
        let diag = model::validate_regime(params, family, n);
        if diag.flagged && !self.allow_flagged {
            return Err(Failure::Regime(format!(
                "level n = {n} is in the flagged regime: eps*beta = {:.6e}, alpha*sqrt(beta) = {} >= 4(n+delta) = {} \
                 (pass --allow-flagged to proceed)",
                diag.eps_beta, diag.alpha_sqrt_beta, diag.bound
            )));
        }
        Ok(diag.flagged)
    }
}

impl Grid {
    fn points(&self) -> Result<Vec<f64>, Failure> {
        if !(self.p_min.is_finite() && self.p_max.is_finite() && self.p_min < self.p_max) {
            return Err(Failure::Usage("grid needs finite p_min < p_max".into()));
        }
        if self.points < 2 {
            return Err(Failure::Usage("grid needs at least 2 points".into()));
        }
        // Built about the midpoint so a grid centred on 0 mirrors exactly.
        let mid = 0.5 * (self.p_min + self.p_max);
        let half = 0.5 * (self.p_max - self.p_min);
        let last = (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|k| mid + half * ((2 * k) as f64 - last) / last)
            .collect())
    }
}

fn cmd_spectrum(args: &SpectrumArgs) -> CmdResult {
    let c = &args.common;
    let params = c.params()?;
    let family = c.family()?;
    let mut table = Table::new(vec![
        "n",
        "E_closed",
        "E_root",
        "E_wkb",
        "E_series",
        "eps_beta",
        "regime_flag",
    ]);
    table.meta = c.meta("spectrum");
    for n in family.levels(c.levels) {
        let flagged = c.check_regime(&params, &family, n)?;
        let closed = model::energy_closed_form(&params, &family, n)?;
        let root = model::energy_root_find(&params, &family, n, args.tol)?;
        let wkb = semiclassical::wkb_level(&params, &family, n, args.tol)?;
        let series = model::energy_series(&params, n as f64 + family.delta(), 2)?;
        table.push(vec![
            n.into(),
            closed.energy.into(),
            root.energy.into(),
            wkb.energy.into(),
            series.into(),
            (closed.epsilon * params.beta()).into(),
            flagged.into(),
        ]);
    }
    Ok(Output::Table(table))
}

fn cmd_wavefunction(args: &WavefunctionArgs) -> CmdResult {
    let c = &args.common;
    let params = c.params()?;
    let family = c.family()?;
    let n = c.level(&family);
    family.effective_index(n)?;
    c.check_regime(&params, &family, n)?;
    let wf = Wavefunction::for_level(params, &family, n)?;
    let mut table = Table::new(vec!["p", "re_psi", "im_psi", "abs_psi", "phase"]);
    table.meta = c.meta("wavefunction");
    table.meta.insert("n".into(), n.into());
    table.meta.insert("epsilon".into(), wf.epsilon().into());
    table
        .meta
        .insert("norm_const".into(), wf.norm_const().into());
    for p in args.grid.points()? {
        let psi = wf.evaluate(p);
        table.push(vec![
            p.into(),
            psi.re.into(),
            psi.im.into(),
            psi.norm().into(),
            wf.phase(p).into(),
        ]);
    }
    Ok(Output::Table(table))
}

fn cmd_families(args: &FamiliesArgs) -> CmdResult {
    let c = &args.common;
    let params = c.params()?;
    let (family, n) = model::family_and_level(&params, args.epsilon0)?;
    let mut table = Table::new(vec!["delta", "n"]);
    table.meta = c.meta("families");
    table.meta.insert("epsilon0".into(), args.epsilon0.into());
    table.push(vec![family.delta().into(), n.into()]);
    Ok(Output::Table(table))
}

fn cmd_expand(args: &ExpandArgs) -> CmdResult {
    let c = &args.common;
    let family = c.family()?;
    let n = c.level(&family);
    let nu = family.effective_index(n)?;
    let base = ModelParams::new(c.alpha, 0.0)?;
    let e0 = model::energy_closed_form(&base, &family, n)?.energy;
    let mut table = Table::new(vec![
        "beta",
        "E_exact",
        "E_series",
        "remainder",
        "remainder_over_beta_3_2",
        "shift_over_sqrt_beta",
    ]);
    table.meta = c.meta("expand");
    table.meta.insert("n".into(), n.into());
    table.meta.insert(
        "leading_coefficient".into(),
        (c.alpha.powi(3) / (4.0 * nu.powi(3))).into(),
    );
    for &beta in &args.betas {
        let params = ModelParams::new(c.alpha, beta)?;
        let exact = model::energy_closed_form(&params, &family, n)?.energy;
        let series = model::energy_series(&params, nu, 2)?;
        let remainder = exact - series;
        let (scaled_rem, shift) = if beta > 0.0 {
            (
                Some(remainder / beta.powf(1.5)),
                Some((exact - e0) / beta.sqrt()),
            )
        } else {
            (None, None)
        };
        table.push(vec![
            beta.into(),
            exact.into(),
            series.into(),
            remainder.into(),
            scaled_rem.into(),
            shift.into(),
        ]);
    }
    Ok(Output::Table(table))
}

// ---- verify ----

struct VerifyCtx {
    params: ModelParams,
    family: SpectralFamily,
    quad: QuadratureSpec,
    grid: Vec<f64>,
    states: Vec<(u32, Result<Wavefunction, Error>)>,
}

impl VerifyCtx {
    fn each_state<F>(&self, suite: &str, checks: &mut Vec<CheckRecord>, mut f: F)
    where
        F: FnMut(u32, &Wavefunction, &mut Vec<CheckRecord>),
    {
        for (n, wf) in &self.states {
            match wf {
                Ok(wf) => f(*n, wf, checks),
                Err(e) => checks.push(CheckRecord::failed(
                    format!("{suite}.n{n}.construct"),
                    e.to_string(),
                )),
            }
        }
    }
}

fn quad_failure(name: String, e: Error) -> CheckRecord {
    CheckRecord::failed(name, e.to_string())
}

fn suite_ode(ctx: &VerifyCtx, checks: &mut Vec<CheckRecord>) {
    ctx.each_state("ode", checks, |n, wf, checks| {
        let worst = ctx
            .grid
            .iter()
            .map(|&p| wf.ode_residual(p).norm() / wf.residual_scale(p))
            .fold(0.0, f64::max);
        checks.push(CheckRecord::at_most(
            format!("ode.n{n}.residual"),
            worst,
            1e-9,
        ));
    });
    // Negative control: eps shifted by 1e-3, residual taken at the true energy.
    if let Some((n, Ok(wf))) = ctx.states.first() {
        if let Ok(bad) = Wavefunction::new(ctx.params, wf.epsilon() + 1e-3) {
            let worst = ctx
                .grid
                .iter()
                .map(|&p| bad.ode_residual_at_energy(p, wf.energy()).norm() / bad.residual_scale(p))
                .fold(0.0, f64::max);
            checks.push(
                CheckRecord::new(
                    format!("ode.n{n}.negative_control"),
                    worst,
                    0.0,
                    1e-4,
                    Comparison::AtLeast,
                )
                .with_note("expected-violation"),
            );
        }
    }
}

fn suite_norm(ctx: &VerifyCtx, checks: &mut Vec<CheckRecord>) {
    ctx.each_state("norm", checks, |n, wf, checks| {
        let name = format!("norm.n{n}");
        match quadrature::inner_product(wf, wf, &ctx.quad) {
            Ok(r) => checks.push(CheckRecord::new(
                name,
                r.value.re,
                1.0,
                1e-8,
                Comparison::AbsDiff,
            )),
            Err(e) => checks.push(quad_failure(name, e)),
        }
    });
}

fn suite_ortho(ctx: &VerifyCtx, checks: &mut Vec<CheckRecord>) {
    let ok: Vec<_> = ctx
        .states
        .iter()
        .filter_map(|(n, wf)| wf.as_ref().ok().map(|w| (*n, w)))
        .collect();
    if ok.len() < ctx.states.len() {
        checks.push(CheckRecord::failed(
            "ortho.construct",
            "some levels could not be constructed",
        ));
    }
    for (i, (n, a)) in ok.iter().enumerate() {
        for (m, b) in &ok[i + 1..] {
            let name = format!("ortho.n{n}.n{m}");
            match quadrature::inner_product(a, b, &ctx.quad) {
                Ok(r) => checks.push(CheckRecord::at_most(name, r.value.norm(), 1e-6)),
                Err(e) => checks.push(quad_failure(name, e)),
            }
        }
    }
}

fn suite_x6(ctx: &VerifyCtx, checks: &mut Vec<CheckRecord>) {
    let delta_zero = ctx.family.delta() == 0.0;
    ctx.each_state("x6", checks, |n, wf, checks| {
        let name = format!("x6.n{n}");
        match quadrature::measure_integral(wf, &ctx.quad) {
            Ok(r) => {
                let closed = wf.measure_integral_closed();
                let dev = (r.value - crate::Complex::new(closed, 0.0)).norm();
                checks.push(
                    CheckRecord::at_most(name.clone(), dev, 1e-8)
                        .with_note(format!("closed form {closed:.6e}")),
                );
                if delta_zero {
                    checks.push(CheckRecord::at_most(
                        format!("{name}.vanishes"),
                        r.value.norm(),
                        1e-9,
                    ));
                }
            }
            Err(e) => checks.push(quad_failure(name, e)),
        }
    });
}

fn defect_check(
    name: String,
    a: &Wavefunction,
    b: &Wavefunction,
    quad: &QuadratureSpec,
    expect_zero: bool,
) -> CheckRecord {
    match quadrature::hermiticity_defect(a, b, quad) {
        Ok(r) => {
            let d = r.defect.value.norm();
            let rec = if expect_zero {
                CheckRecord::at_most(name, d, 1e-6)
            } else {
                CheckRecord::new(name, d, 0.0, 1e-3, Comparison::AtLeast)
                    .with_note("expected-violation")
            };
            if r.over_budget {
                let note = format!(
                    "{} evaluations exceed budget {}",
                    r.evaluations, quad.eval_budget
                );
                let joined = if rec.note.is_empty() {
                    note
                } else {
                    format!("{}; {note}", rec.note)
                };
                rec.with_note(joined)
            } else {
                rec
            }
        }
        Err(e) => quad_failure(name, e),
    }
}

fn suite_hermiticity(
    ctx: &VerifyCtx,
    common: &Common,
    pair: Option<&[u32]>,
    cross: Option<&[f64]>,
    checks: &mut Vec<CheckRecord>,
) -> Result<(), Failure> {
    let first = ctx.family.first_level();
    let (n, m) = match pair {
        Some(p) => (p[0], p[1]),
        None => (first, first + 1),
    };
    for k in [n, m] {
        ctx.family.effective_index(k)?;
        common.check_regime(&ctx.params, &ctx.family, k)?;
    }
    let a = Wavefunction::for_level(ctx.params, &ctx.family, n);
    let b = Wavefunction::for_level(ctx.params, &ctx.family, m);
    let name = format!("hermiticity.n{n}.n{m}");
    match (a, b) {
        (Ok(a), Ok(b)) => checks.push(defect_check(name, &a, &b, &ctx.quad, true)),
        (Err(e), _) | (_, Err(e)) => checks.push(CheckRecord::failed(name, e.to_string())),
    }

    if let Some(deltas) = cross {
        let fa = SpectralFamily::new(deltas[0])?;
        let fb = SpectralFamily::new(deltas[1])?;
        let na = common.n.unwrap_or_else(|| fa.first_level());
        let nb = common.n.unwrap_or_else(|| fb.first_level());
        common.check_regime(&ctx.params, &fa, na)?;
        common.check_regime(&ctx.params, &fb, nb)?;
        let a = Wavefunction::for_level(ctx.params, &fa, na)?;
        let b = Wavefunction::for_level(ctx.params, &fb, nb)?;
        let name = format!("hermiticity.cross.d{}n{na}.d{}n{nb}", deltas[0], deltas[1]);
        // Same delta means same family: the defect must vanish.
        let same = fa == fb;
        checks.push(defect_check(name, &a, &b, &ctx.quad, same));
    }
    Ok(())
}

fn suite_inverse_x(ctx: &VerifyCtx, checks: &mut Vec<CheckRecord>) {
    ctx.each_state("inverse_x", checks, |n, wf, checks| {
        let name = format!("inverse_x.n{n}.eigen_residual");
        match wf.inverse_x(&ctx.quad) {
            Ok(inv) => {
                let worst = ctx
                    .grid
                    .iter()
                    .map(|&p| inv.eigen_residual(p).norm())
                    .fold(0.0, f64::max);
                checks.push(CheckRecord::at_most(name, worst, 1e-7));
            }
            Err(e) => checks.push(quad_failure(name, e)),
        }
    });
}

fn suite_wkb(ctx: &VerifyCtx, levels: u32, checks: &mut Vec<CheckRecord>) -> Result<(), Failure> {
    let wkb = semiclassical::wkb_spectrum(&ctx.params, &ctx.family, levels)?;
    let mut worst = 0.0_f64;
    for s in &wkb {
        let exact = model::energy_closed_form(&ctx.params, &ctx.family, s.n)?;
        worst = worst.max(((s.energy - exact.energy) / exact.energy).abs());
        let cfg = ClassicalConfig::new(ctx.params, exact.energy)?;
        let name = format!("wkb.n{}.action", s.n);
        match semiclassical::action_integral_numeric(&cfg, &ctx.quad) {
            Ok(num) => {
                let closed = semiclassical::action_integral_closed(&cfg);
                checks.push(CheckRecord::at_most(
                    name,
                    ((num - closed) / closed).abs(),
                    1e-9,
                ));
            }
            Err(e) => checks.push(quad_failure(name, e)),
        }
    }
    checks.push(CheckRecord::at_most("wkb.max_rel_deviation", worst, 1e-10));
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let c = &args.common;
    if args.pair.as_ref().is_some_and(|p| p.len() != 2) {
        return Err(Failure::Usage(
            "--pair takes exactly two levels, e.g. 1,2".into(),
        ));
    }
    if args.cross_family.as_ref().is_some_and(|d| d.len() != 2) {
        return Err(Failure::Usage(
            "--cross-family takes exactly two deltas, e.g. 0,0.5".into(),
        ));
    }
    let params = c.params()?;
    let family = c.family()?;
    let quad = c.quad()?;
    let grid = args.grid.points()?;
    let needs_states = !matches!(args.suite, Suite::Hermiticity | Suite::Wkb);
    let mut states = Vec::new();
    if needs_states {
        for n in family.levels(c.levels) {
            c.check_regime(&params, &family, n)?;
            states.push((n, Wavefunction::for_level(params, &family, n)));
        }
    }
    let ctx = VerifyCtx {
        params,
        family,
        quad,
        grid,
        states,
    };

    let mut checks = Vec::new();
    let run = |s: Suite| args.suite == s || args.suite == Suite::All;
    if run(Suite::Ode) {
        suite_ode(&ctx, &mut checks);
    }
    if run(Suite::Norm) {
        suite_norm(&ctx, &mut checks);
    }
    if run(Suite::Ortho) {
        suite_ortho(&ctx, &mut checks);
    }
    if run(Suite::X6) {
        suite_x6(&ctx, &mut checks);
    }
    if run(Suite::Hermiticity) {
        suite_hermiticity(
            &ctx,
            c,
            args.pair.as_deref(),
            args.cross_family.as_deref(),
            &mut checks,
        )?;
    }
    if run(Suite::InverseX) {
        suite_inverse_x(&ctx, &mut checks);
    }
    if run(Suite::Wkb) {
        for n in family.levels(c.levels) {
            c.check_regime(&params, &family, n)?;
        }
        suite_wkb(&ctx, c.levels, &mut checks)?;
    }

    let mut meta = c.meta("verify");
    let suite = Suite::to_possible_value(&args.suite).map(|v| v.get_name().to_owned());
    meta.insert("suite".into(), suite.unwrap_or_default().into());
    meta.insert("levels".into(), c.levels.into());
    Ok(Output::Report(RunReport::new("verify", meta, checks)))
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::Spectrum(a) => &a.common,
        Command::Wavefunction(a) => &a.common,
        Command::Verify(a) => &a.common,
        Command::Families(a) => &a.common,
        Command::Expand(a) => &a.common,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code. Results go to `stdout` unless `--out`
/// is given; diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };

    // Shared flags are checked even by commands that ignore some of them.
    let common = common_of(&cli.command);
    let result = common.quad().and_then(|_| match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Wavefunction(a) => cmd_wavefunction(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Families(a) => cmd_families(a),
        Command::Expand(a) => cmd_expand(a),
    });

    let (output, code) = match result {
        Ok(Output::Report(r)) => {
            let code = if r.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
            if !r.pass {
                let failed = r.checks.iter().filter(|c| !c.pass).count();
                let _ = writeln!(
                    stderr,
                    "verification failed: {failed} of {} checks",
                    r.checks.len()
                );
            }
            (Output::Report(r), code)
        }
        Ok(out) => (out, EXIT_OK),
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Regime(msg)) => {
            let _ = writeln!(stderr, "refused: {msg}");
            return EXIT_REGIME;
        }
    };

    let mut buf = Vec::new();
    let written = match &output {
        Output::Table(t) => t.write(common.format(), &mut buf),
        Output::Report(r) => r.write(common.format(), &mut buf),
    };
    let written = written.and_then(|_| match &common.out {
        Some(path) => std::fs::write(path, &buf),
        None => stdout.write_all(&buf),
    });
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    code
}
