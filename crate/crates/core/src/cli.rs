//! Command-line front end: operator inspection, invariant tables, the
//! verification suites and precession runs.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage or configuration error,
//! 3 numeric divergence. Every error is reported as one line on stderr.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bmt::{
    conserved_report, integrate, moving_axis, quantum_init, DynState, FieldTensor, PhysParams,
};
use crate::clifford::{CMat4, DiracBasis};
use crate::conventions::{convention_sheet_json, MatrixEntry};
use crate::error::{Error, Result};
use crate::projectors::{
    axis_projections, classical_chains, invariant_chain_eq8, invariant_chain_eq9, kinematic_invariants,
    projector_frame, spread, ExtremeCase, FieldProjector, VELOCITY_FLOOR,
};
use crate::spin_operators::{classical_spin, MomentumState, OperatorSet, SigmaVariant, SpinAxis};
use crate::tensor::Vec3;
use crate::verify::{run_verify, VerifyConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DIVERGENCE: i32 = 3;

pub const PRECESS_CSV_HEADER: &str = "tau,v0,vx,vy,vz,Phix,Phiy,Phiz,Pix,Piy,Piz,HdotPi,HtdotPi,PiNorm,AxisProj";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    /// Print the convention sheet (matrices, metric, signs, residuals) as JSON.
    Conventions,
    /// Print one operator matrix for the given momentum.
    Show {
        /// h, P+, pi0..pi3, Phix..Phiz, Pix..Piz, Sigmax..Sigmaz, gamma0..gamma3,
        /// gamma5, rho1..rho3, sigma1..sigma3, alpha1..alpha3, sigma^01..sigma^23
        operator: String,
    },
    /// Run every invariant suite and report the largest residual of each check.
    Verify,
    /// Print the invariant projection chains for one configuration.
    Invariants,
    /// Integrate spin precession and stream the trajectory.
    Precess,
}

#[derive(Debug, Parser)]
#[command(name = "spin-invariants", version, about = "Dirac spin operators, invariant spin projections and BMT precession")]
struct Cli {
    #[command(subcommand)]
    command: CommandKind,
    /// Dimensionless momentum b = p/(m0 c)
    #[arg(long, global = true, value_name = "X,Y,Z", default_value = "0,0,0", value_parser = parse_vec3, allow_hyphen_values = true)]
    b: Vec3,
    /// Spin axis in the rest frame
    #[arg(long, global = true, value_name = "X,Y,Z", default_value = "0,0,1", value_parser = parse_vec3, allow_hyphen_values = true)]
    nu: Vec3,
    /// Spin projection sign, +1 or -1
    #[arg(long, global = true, default_value = "1", value_parser = parse_zeta, allow_hyphen_values = true)]
    zeta: i8,
    #[arg(long, global = true, value_name = "X,Y,Z", default_value = "0,0,0", value_parser = parse_vec3, allow_hyphen_values = true)]
    efield: Vec3,
    #[arg(long, global = true, value_name = "X,Y,Z", default_value = "0,0,1", value_parser = parse_vec3, allow_hyphen_values = true)]
    hfield: Vec3,
    #[arg(long, global = true, default_value_t = 2.0, allow_hyphen_values = true)]
    g: f64,
    #[arg(long, global = true, default_value_t = -1.0, allow_hyphen_values = true)]
    charge: f64,
    #[arg(long, global = true, default_value_t = 1.0, allow_hyphen_values = true)]
    mass: f64,
    #[arg(long = "light-speed", global = true, default_value_t = 1.0, allow_hyphen_values = true)]
    light_speed: f64,
    #[arg(long, global = true, default_value_t = 1e-3, allow_hyphen_values = true)]
    dtau: f64,
    #[arg(long, global = true, default_value_t = 1000)]
    steps: usize,
    #[arg(long, global = true, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    /// Random momenta per operator suite in `verify`
    #[arg(long, global = true, default_value_t = VerifyConfig::default().samples)]
    samples: usize,
    /// Random configurations for the projector suite in `verify`
    #[arg(long = "projector-samples", global = true, default_value_t = VerifyConfig::default().projector_samples)]
    projector_samples: usize,
    /// Precession runs in `verify`
    #[arg(long = "bmt-runs", global = true, default_value_t = VerifyConfig::default().bmt_runs)]
    bmt_runs: usize,
    /// Output format; `precess` defaults to csv, everything else to json
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Tolerance override for a named check, repeatable
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    /// Σ̂ variant for `show`: sigma, rho3sigma, stech, fw
    #[arg(long, global = true, default_value = "sigma", value_parser = parse_variant)]
    variant: SigmaVariant,
    /// Require the motion-induced chains in `invariants` (fails at rest)
    #[arg(long, global = true)]
    kinematic: bool,
}

fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

pub fn parse_vec3(s: &str) -> std::result::Result<Vec3, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got '{s}'"));
    }
    Ok(Vec3::new(parse_f64(parts[0])?, parse_f64(parts[1])?, parse_f64(parts[2])?))
}

pub fn parse_zeta(s: &str) -> std::result::Result<i8, String> {
    match s.trim() {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(format!("zeta must be +1 or -1, got '{other}'")),
    }
}

pub fn parse_tol(s: &str) -> std::result::Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    Ok((name.trim().to_string(), parse_f64(value)?))
}

fn parse_variant(s: &str) -> std::result::Result<SigmaVariant, String> {
    SigmaVariant::parse(s).ok_or_else(|| format!("unknown variant '{s}' (sigma, rho3sigma, stech, fw)"))
}

/// Fully parsed and validated command-line configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub b: Vec3,
    pub nu: Vec3,
    pub zeta: i8,
    pub efield: Vec3,
    pub hfield: Vec3,
    pub params: PhysParams,
    pub dtau: f64,
    pub steps: usize,
    pub seed: u64,
    pub samples: usize,
    pub projector_samples: usize,
    pub bmt_runs: usize,
    pub format: Format,
    pub tolerances: BTreeMap<String, f64>,
    pub variant: SigmaVariant,
    pub kinematic: bool,
}

impl RunConfig {
    pub fn axis(&self) -> Result<SpinAxis> {
        SpinAxis::new(self.nu, self.zeta)
    }

    pub fn field(&self) -> FieldTensor {
        FieldTensor::new(self.efield, self.hfield)
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            seed: self.seed,
            samples: self.samples,
            projector_samples: self.projector_samples,
            bmt_runs: self.bmt_runs,
            bmt_steps: self.steps,
            bmt_dtau: self.dtau,
            tolerances: self.tolerances.clone(),
        }
    }

    /// Checks every input before any computation starts.
    pub fn validate(&self) -> Result<()> {
        self.axis()?;
        self.params.validate()?;
        if !(self.dtau.is_finite() && self.dtau > 0.0) {
            return Err(Error::InvalidParameter(format!("dtau must be positive, got {}", self.dtau)));
        }
        if self.steps == 0 {
            return Err(Error::InvalidParameter("steps must be at least 1".into()));
        }
        match &self.command {
            CommandKind::Verify => self.verify_config().validate()?,
            CommandKind::Precess if self.params.charge * self.params.g == 0.0 => {
                return Err(Error::InvalidParameter("precession needs charge·g != 0".into()))
            }
            CommandKind::Show { operator } => {
                operator_matrix(operator, &OperatorSet::new(&MomentumState::at_rest()), SigmaVariant::Sigma)
                    .map(|_| ())?;
                if self.variant == SigmaVariant::Stech && self.b == Vec3::ZERO && operator.starts_with("Sigma") {
                    return Err(Error::SingularVariant("Stech operator needs b != 0 (γ²-1 = 0)"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Argument vector that parses back to this configuration.
    pub fn to_args(&self) -> Vec<String> {
        let v = |x: Vec3| format!("{},{},{}", x[0], x[1], x[2]);
        let mut args = vec!["spin-invariants".to_string()];
        match &self.command {
            CommandKind::Conventions => args.push("conventions".into()),
            CommandKind::Show { operator } => args.extend(["show".into(), operator.clone()]),
            CommandKind::Verify => args.push("verify".into()),
            CommandKind::Invariants => args.push("invariants".into()),
            CommandKind::Precess => args.push("precess".into()),
        }
        let pairs = [
            ("--b", v(self.b)),
            ("--nu", v(self.nu)),
            ("--zeta", self.zeta.to_string()),
            ("--efield", v(self.efield)),
            ("--hfield", v(self.hfield)),
            ("--g", self.params.g.to_string()),
            ("--charge", self.params.charge.to_string()),
            ("--mass", self.params.mass.to_string()),
            ("--light-speed", self.params.c.to_string()),
            ("--dtau", self.dtau.to_string()),
            ("--steps", self.steps.to_string()),
            ("--seed", self.seed.to_string()),
            ("--samples", self.samples.to_string()),
            ("--projector-samples", self.projector_samples.to_string()),
            ("--bmt-runs", self.bmt_runs.to_string()),
            ("--format", match self.format { Format::Json => "json", Format::Csv => "csv" }.to_string()),
            ("--variant", self.variant.name().to_string()),
        ];
        for (flag, value) in pairs {
            args.push(format!("{flag}={value}"));
        }
        for (name, tol) in &self.tolerances {
            args.push(format!("--tol={name}={tol}"));
        }
        if self.kinematic {
            args.push("--kinematic".into());
        }
        args
    }
}

/// Outcome of argument parsing that is not a configuration.
#[derive(Debug)]
pub enum ParseOutcome {
    /// `--help` or `--version`: text for stdout.
    Info(String),
    /// One-line usage error.
    Usage(String),
}

pub fn parse_args<I, T>(args: I) -> std::result::Result<RunConfig, ParseOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                ParseOutcome::Info(e.render().to_string())
            }
            _ => ParseOutcome::Usage(first_line(&e.render().to_string())),
        }
    })?;
    let format = cli.format.unwrap_or(match cli.command {
        CommandKind::Precess => Format::Csv,
        _ => Format::Json,
    });
    Ok(RunConfig {
        command: cli.command,
        b: cli.b,
        nu: cli.nu,
        zeta: cli.zeta,
        efield: cli.efield,
        hfield: cli.hfield,
        params: PhysParams { charge: cli.charge, mass: cli.mass, c: cli.light_speed, g: cli.g },
        dtau: cli.dtau,
        steps: cli.steps,
        seed: cli.seed,
        samples: cli.samples,
        projector_samples: cli.projector_samples,
        bmt_runs: cli.bmt_runs,
        format,
        tolerances: cli.tol.into_iter().collect(),
        variant: cli.variant,
        kinematic: cli.kinematic,
    })
}

fn first_line(s: &str) -> String {
    let line = s.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("invalid arguments");
    line.strip_prefix("error: ").unwrap_or(line).to_string()
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_)
        | Error::InvalidVelocity(_)
        | Error::IndexOutOfRange { .. }
        | Error::SingularVariant(_) => EXIT_USAGE,
        Error::Divergence { .. } => EXIT_DIVERGENCE,
        _ => EXIT_CHECK_FAILED,
    }
}

/// Parses, runs and reports; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(args) {
        Ok(cfg) => cfg,
        Err(ParseOutcome::Info(text)) => {
            let _ = write!(out, "{text}");
            return EXIT_PASS;
        }
        Err(ParseOutcome::Usage(msg)) => {
            let _ = writeln!(err, "error: usage: {}", one_line(&msg));
            return EXIT_USAGE;
        }
    };
    match cfg.validate().and_then(|_| execute(&cfg, out)) {
        Ok(code) => code,
        Err(Error::Internal(m)) if m == OUTPUT_CLOSED => EXIT_PASS,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {}", e.kind(), one_line(&e.to_string()));
            exit_code(&e)
        }
    }
}

/// Shortest round-trip text; scientific notation outside `[1e-4, 1e16)`.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e16).contains(&a) {
        format!("{}", x + 0.0)
    } else {
        format!("{x:e}")
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

// a reader that stops early (`| head`) is not an error
const OUTPUT_CLOSED: &str = "output closed";

fn io_err(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return Error::Internal(OUTPUT_CLOSED.into());
    }
    Error::Internal(format!("write failed: {e}"))
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_err)
}

/// Executes a validated configuration.
pub fn execute(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match &cfg.command {
        CommandKind::Conventions => cmd_conventions(out),
        CommandKind::Show { operator } => cmd_show(cfg, operator, out),
        CommandKind::Verify => cmd_verify(cfg, out),
        CommandKind::Invariants => cmd_invariants(cfg, out),
        CommandKind::Precess => cmd_precess(cfg, out),
    }
}

pub fn cmd_conventions(out: &mut dyn Write) -> Result<i32> {
    writeln!(out, "{}", convention_sheet_json()?).map_err(io_err)?;
    Ok(EXIT_PASS)
}

fn indexed(name: &str, prefix: &str, lo: usize, hi: usize) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let i: usize = rest.parse().ok()?;
    (lo..=hi).contains(&i).then_some(i)
}

fn axis_index(name: &str, prefix: &str) -> Option<usize> {
    match name.strip_prefix(prefix)? {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => None,
    }
}

/// Looks up an operator by name.
pub fn operator_matrix(name: &str, ops: &OperatorSet, variant: SigmaVariant) -> Result<CMat4> {
    let d = DiracBasis::new();
    let unknown = || Error::InvalidParameter(format!("unknown operator '{name}'"));
    if name == "h" {
        return Ok(ops.hamiltonian);
    }
    if name == "P+" {
        return Ok(ops.projector);
    }
    if name == "gamma5" {
        return Ok(d.gamma5);
    }
    if let Some(rest) = name.strip_prefix("sigma^") {
        let idx: Vec<usize> = rest.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        return match idx.as_slice() {
            [mu, nu] if rest.len() == 2 && *mu < 4 && *nu < 4 => Ok(d.sigma_tensor(*mu, *nu)),
            _ => Err(unknown()),
        };
    }
    if let Some(k) = axis_index(name, "Sigma") {
        return Ok(ops.sigma(variant)?[k]);
    }
    if let Some(k) = axis_index(name, "Phi") {
        return Ok(ops.tensor.polar[k]);
    }
    if let Some(k) = axis_index(name, "Pi") {
        return Ok(ops.tensor.axial[k]);
    }
    if let Some(mu) = indexed(name, "pi", 0, 3) {
        return Ok(ops.pi[mu]);
    }
    if let Some(mu) = indexed(name, "gamma", 0, 3) {
        return Ok(d.gamma[mu]);
    }
    for (prefix, family) in [("rho", &d.rho), ("sigma", &d.sigma), ("alpha", &d.alpha)] {
        if let Some(k) = indexed(name, prefix, 1, 3) {
            return Ok(family[k - 1]);
        }
    }
    Err(unknown())
}

#[derive(Serialize)]
struct ShowOutput {
    b: Vec3,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<&'static str>,
    #[serde(flatten)]
    matrix: MatrixEntry,
}

pub fn cmd_show(cfg: &RunConfig, operator: &str, out: &mut dyn Write) -> Result<i32> {
    let ops = OperatorSet::new(&MomentumState::new(cfg.b));
    let m = operator_matrix(operator, &ops, cfg.variant)?;
    let entry = MatrixEntry::new(operator, &m);
    match cfg.format {
        Format::Json => write_json(
            out,
            &ShowOutput {
                b: cfg.b,
                variant: operator.starts_with("Sigma").then(|| cfg.variant.name()),
                matrix: entry,
            },
        )?,
        Format::Csv => {
            writeln!(out, "row,col,re,im").map_err(io_err)?;
            for (i, row) in entry.rows.iter().enumerate() {
                for (j, [re, im]) in row.iter().enumerate() {
                    writeln!(out, "{i},{j},{},{}", fmt_num(*re), fmt_num(*im)).map_err(io_err)?;
                }
            }
        }
    }
    Ok(EXIT_PASS)
}

pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let report = run_verify(&cfg.verify_config())?;
    match cfg.format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            writeln!(out, "name,suite,samples,max_residual,tolerance,pass").map_err(io_err)?;
            for c in &report.checks {
                writeln!(out, "{},{},{},{:e},{:e},{}", c.name, c.suite, c.samples, c.max_residual, c.tolerance, c.pass)
                    .map_err(io_err)?;
            }
        }
    }
    Ok(if report.pass { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainMember {
    pub label: String,
    pub value: f64,
    pub delta_from_first: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainTable {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    pub members: Vec<ChainMember>,
    pub max_pairwise_delta: f64,
}

impl ChainTable {
    fn new(name: &'static str, note: Option<&'static str>, members: &[(&str, f64)]) -> Self {
        let first = members.first().map(|m| m.1).unwrap_or(0.0);
        let values: Vec<f64> = members.iter().map(|m| m.1).collect();
        ChainTable {
            name,
            note,
            members: members
                .iter()
                .map(|(label, value)| ChainMember { label: label.to_string(), value: *value, delta_from_first: value - first })
                .collect(),
            max_pairwise_delta: spread(&values),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameSummary {
    pub eta: Vec3,
    pub tensor_polar: Vec3,
    pub tensor_axial: Vec3,
    pub s: [f64; 4],
    pub nu: Vec3,
    pub i1: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsOutput {
    pub b: Vec3,
    pub gamma: f64,
    pub beta: Vec3,
    pub axis_nu: Vec3,
    pub zeta: i8,
    pub h: Vec3,
    pub frame: FrameSummary,
    /// `ζ(ν_axis·ν_frame)`, the common value of the covariant chains.
    pub expected_value: f64,
    pub extreme_case: ExtremeCase,
    pub chains: Vec<ChainTable>,
}

/// All chain tables for one configuration.
pub fn invariants_table(cfg: &RunConfig) -> Result<InvariantsOutput> {
    let m = MomentumState::new(cfg.b);
    let axis = cfg.axis()?;
    let frame = projector_frame(&FieldProjector::new(cfg.efield, cfg.hfield), &m)?;
    let (a, b) = invariant_chain_eq8(&frame, &m, &axis)?;
    let (x, y, z) = invariant_chain_eq9(&frame, &m, &axis)?;
    let (pi, big_pi) = classical_spin(&m, &axis)?;
    let (c8, c9) = classical_chains(&frame, axis.nu() * axis.zeta_f64(), pi, &big_pi);

    let mut chains = vec![
        ChainTable::new("covariant", None, &[("s_a pi^a", a), ("S_mn Pi^mn/2", b)]),
        ChainTable::new("rest_axis", None, &[("nu.Sigma", x), ("S.pi/gamma", y), ("s.Pi/gamma", z)]),
        ChainTable::new("covariant_classical", None, &[("s_a pi^a", c8[0]), ("S_mn Pi^mn/2", c8[1])]),
        ChainTable::new(
            "rest_axis_classical",
            None,
            &[("zeta nu_axis.nu", c9[0]), ("S.pi/gamma", c9[1]), ("s.Pi/gamma", c9[2])],
        ),
    ];

    let k = cfg.hfield.normalize().ok_or(Error::DegenerateProjector(0.0))?;
    let ap = axis_projections(&m, &axis, k)?;
    let labels = match ap.case {
        ExtremeCase::Parallel => ["k.Sigma", "k.pi/gamma", "k.Pi"],
        ExtremeCase::Perpendicular => ["k.Sigma", "k.pi", "k.Pi/gamma"],
        ExtremeCase::General => ["k.Sigma", "k.pi", "k.Pi"],
    };
    let mv = ap.members();
    let note = (ap.case == ExtremeCase::General).then_some("beta neither parallel nor perpendicular to k; members need not agree");
    chains.push(ChainTable::new("k_projection", note, &[(labels[0], mv[0]), (labels[1], mv[1]), (labels[2], mv[2])]));

    if cfg.kinematic || m.beta().norm() >= VELOCITY_FLOOR {
        let kc = kinematic_invariants(&m, &axis, &frame)?;
        let h = kc.helicity;
        chains.push(ChainTable::new(
            "helicity",
            None,
            &[("sigma.beta", h[0]), ("Sigma.beta", h[1]), ("beta.pi/gamma", h[2]), ("beta.Pi", h[3])],
        ));
        let t = kc.transverse;
        let perpendicular = cfg.hfield.dot(m.beta()).abs() <= 1e-12 * cfg.hfield.norm() * m.beta().norm();
        chains.push(ChainTable::new(
            "transverse",
            (!perpendicular).then_some("h not perpendicular to beta; members need not agree"),
            &[("nu.Phi", t[0]), ("s.Phi", t[1]), ("[eta x beta].Pi/gamma", t[2]), ("eta.Phi/gamma", t[3])],
        ));
        chains.push(ChainTable::new(
            "transverse_reference",
            Some("S.Pi/gamma for comparison; not a chain member"),
            &[("S.Pi/gamma", kc.transverse_s_pi)],
        ));
    }

    Ok(InvariantsOutput {
        b: m.b(),
        gamma: m.gamma(),
        beta: m.beta(),
        axis_nu: axis.nu(),
        zeta: axis.zeta(),
        h: cfg.hfield,
        frame: FrameSummary {
            eta: frame.eta,
            tensor_polar: frame.q_polar(),
            tensor_axial: frame.s_axial(),
            s: frame.s.to_array(),
            nu: frame.nu,
            i1: frame.i1,
        },
        expected_value: axis.zeta_f64() * axis.nu().dot(frame.nu),
        extreme_case: ap.case,
        chains,
    })
}

pub fn cmd_invariants(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let table = invariants_table(cfg)?;
    match cfg.format {
        Format::Json => write_json(out, &table)?,
        Format::Csv => {
            writeln!(out, "chain,member,value,delta_from_first").map_err(io_err)?;
            for c in &table.chains {
                for m in &c.members {
                    writeln!(out, "{},{},{},{}", c.name, m.label, fmt_num(m.value), fmt_num(m.delta_from_first))
                        .map_err(io_err)?;
                }
            }
        }
    }
    Ok(EXIT_PASS)
}

/// One precession output row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrecessRecord {
    pub tau: f64,
    pub v: [f64; 4],
    pub phi: Vec3,
    pub pi: Vec3,
    pub h_dot_pi: f64,
    pub htilde_dot_pi: f64,
    pub pi_norm: f64,
    /// `None` when the field vanishes identically and no axis exists.
    pub axis_projection: Option<f64>,
}

pub fn precess_records(cfg: &RunConfig) -> Result<Vec<PrecessRecord>> {
    let field = cfg.field();
    let p = cfg.params;
    let state0 = quantum_init(&MomentumState::new(cfg.b), &cfg.axis()?, &p)?;
    let traj = integrate(&state0, &field, &p, cfg.dtau, cfg.steps)?;
    let report = conserved_report(&traj, &field, &p)?;
    let axis_of = |s: &DynState| -> Result<Option<f64>> {
        if field.is_zero() {
            return Ok(None);
        }
        Ok(Some(moving_axis(s, &field, &p)?.contract(&s.spin)))
    };
    traj.iter()
        .zip(&report)
        .map(|(s, r)| {
            Ok(PrecessRecord {
                tau: s.tau,
                v: s.v.to_array(),
                phi: s.spin.polar(),
                pi: s.spin.axial(),
                h_dot_pi: r.h_dot_pi,
                htilde_dot_pi: r.htilde_dot_pi,
                pi_norm: r.pi_norm,
                axis_projection: axis_of(s)?,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct PrecessOutput<'a> {
    params: PhysParams,
    field: FieldTensor,
    dtau: f64,
    steps: usize,
    records: &'a [PrecessRecord],
}

pub fn cmd_precess(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let records = precess_records(cfg)?;
    match cfg.format {
        Format::Json => write_json(
            out,
            &PrecessOutput { params: cfg.params, field: cfg.field(), dtau: cfg.dtau, steps: cfg.steps, records: &records },
        )?,
        Format::Csv => {
            let mut buf = std::io::BufWriter::new(out);
            writeln!(buf, "{PRECESS_CSV_HEADER}").map_err(io_err)?;
            for r in &records {
                let mut fields: Vec<String> = [
                    r.tau, r.v[0], r.v[1], r.v[2], r.v[3], r.phi[0], r.phi[1], r.phi[2], r.pi[0], r.pi[1], r.pi[2],
                    r.h_dot_pi, r.htilde_dot_pi, r.pi_norm,
                ]
                .into_iter()
                .map(fmt_num)
                .collect();
                fields.push(r.axis_projection.map(fmt_num).unwrap_or_default());
                writeln!(buf, "{}", fields.join(",")).map_err(io_err)?;
            }
            buf.flush().map_err(io_err)?;
        }
    }
    Ok(EXIT_PASS)
}
