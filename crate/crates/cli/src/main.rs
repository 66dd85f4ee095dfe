//! `ckqw`: verification suites, golden tables and data emission.
//!
//! Exit status is 0 when every reported check passes, 1 when one fails and 2
//! for usage, configuration and I/O errors.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use ckqw::classical::{elementary_rotation, orbit_sample, OrbitPlane};
use ckqw::config::{Format, RunConfig};
use ckqw::dual::pairing_report;
use ckqw::dual::{choose_convention, PairingReport};
use ckqw::frt::{rmatrix3, FrtData};
use ckqw::pimenov::{parse_complex, parse_element, pim_apply, Kernel, MAX_TAGS};
use ckqw::report::Report;
use ckqw::suite::{run_suite, Suite};
use ckqw::ParameterSignature;

use output::Sink;

#[derive(Parser)]
#[command(name = "ckqw", version, about = "Cayley-Klein quantum groups over Pimenov algebras")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Signature as a comma list of 1, n, i (e.g. `n,1`).
    #[arg(long = "j", global = true, value_name = "SIG")]
    signature: Option<String>,
    /// Deformation parameter samples, `a+bi`; repeat or separate by commas.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    v: Vec<String>,
    /// Truncation order of the w-series and of the X02 degree.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    #[arg(long, global = true, value_name = "json|table|csv")]
    format: Option<String>,
    /// TOML configuration file; flags take precedence over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized checks; overrides `CKQW_SEED` and the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Add wall-clock times to reports.
    #[arg(long, global = true)]
    timing: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pimenov algebra elements.
    #[command(subcommand)]
    Pim(PimCmd),
    /// Classical Cayley-Klein groups.
    #[command(subcommand)]
    Ck(CkCmd),
    /// The quantum group side.
    #[command(subcommand)]
    Frt(FrtCmd),
    /// The dual quantum algebra.
    #[command(subcommand)]
    Dual(DualCmd),
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Emit data tables.
    Emit {
        #[arg(value_enum)]
        what: EmitArg,
        #[command(flatten)]
        orbit: OrbitArgs,
    },
}

#[derive(Subcommand)]
enum PimCmd {
    /// Parse an element such as `1 + 2*i1 - 0.5*i1*i2` and optionally lift a function to it.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// exp, sin, cos, sinh, cosh, log, sqrt or inv.
        #[arg(long)]
        apply: Option<String>,
        /// Number of nilpotent generators.
        #[arg(long, default_value_t = MAX_TAGS)]
        tags: usize,
    },
}

#[derive(Subcommand)]
enum CkCmd {
    /// The rotation matrix in one coordinate plane.
    Rotate {
        /// Matrix size; defaults to the signature length plus one.
        #[arg(long)]
        n: Option<usize>,
        /// Plane `μ,ν` with 1 ≤ μ < ν ≤ N.
        #[arg(long, default_value = "1,2")]
        plane: String,
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
    },
    /// Orbit of a point of a plane under its rotation group, as CSV `phi,x0,x1`.
    Orbit(OrbitArgs),
    /// Classical property suite, over every signature of size N unless `--j` is given.
    Verify {
        #[arg(value_enum, default_value = "classical")]
        suite: ClassicalArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Args)]
struct OrbitArgs {
    /// euclid, galilei or minkowski.
    #[arg(long, default_value = "euclid")]
    plane: String,
    #[arg(long, default_value = "1,0.5", allow_hyphen_values = true)]
    from: String,
    #[arg(long, default_value_t = 64)]
    steps: usize,
}

#[derive(Subcommand)]
enum FrtCmd {
    /// The 9×9 R-matrix.
    Rmatrix,
    /// RTT and orthogonality relations as JSON.
    Relations,
    Verify {
        #[arg(value_enum)]
        what: FrtCheck,
    },
}

#[derive(Subcommand)]
enum DualCmd {
    Verify {
        #[arg(value_enum)]
        what: DualCheck,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Pimenov,
    Classical,
    Frt,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassicalArg {
    Classical,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FrtCheck {
    Qybe,
    Confluence,
    Antipode,
    Coproduct,
    Contraction,
}

#[derive(Clone, Copy, ValueEnum)]
enum DualCheck {
    Pairing,
    Lrel,
    Commutators,
    SowHopf,
    Iso,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Rmatrix,
    Relations,
    Orbit,
    PairingTable,
}

/// Outcome of a command: `Ok(true)` when every check passed.
type Outcome = Result<bool, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn describe(e: ckqw::Error, cfg: &RunConfig) -> String {
    match e {
        ckqw::Error::ImaginarySlot => format!(
            "signature `{}` has an `i` slot, but the quantum constructions accept only the two values 1 and n per slot",
            cfg.signature
        ),
        other => other.to_string(),
    }
}

fn parse_signature(s: &str) -> Result<ParameterSignature, String> {
    s.parse().map_err(|e: ckqw::Error| format!("--j `{s}`: {e}"))
}

/// Defaults, then the config file, then `CKQW_SEED`, then flags.
fn build_config(c: &Common) -> Result<RunConfig, String> {
    let mut cfg = match &c.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            RunConfig::from_toml(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => RunConfig::default(),
    };
    if let Ok(s) = std::env::var("CKQW_SEED") {
        cfg.seed = s.trim().parse().map_err(|_| format!("CKQW_SEED `{s}` is not a non-negative integer"))?;
    }
    if let Some(s) = &c.signature {
        cfg.signature = parse_signature(s)?;
    }
    if !c.v.is_empty() {
        cfg.v = c
            .v
            .iter()
            .map(|s| parse_complex(s).map_err(|e| format!("--v `{s}`: {e}")))
            .collect::<Result<_, _>>()?;
    }
    if let Some(d) = c.trunc {
        if !(1..=16).contains(&d) {
            return Err(format!("--trunc {d} outside 1..=16"));
        }
        cfg.trunc_w = d;
        cfg.trunc_x = d;
    }
    if let Some(f) = &c.format {
        cfg.format = f.parse().map_err(|e: ckqw::Error| e.to_string())?;
    }
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    cfg.timing |= c.timing;
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn run(cli: Cli) -> Outcome {
    let cfg = build_config(&cli.common)?;
    let explicit = cli.common.format.is_some();
    let mut sink = Sink::open(cli.common.out.as_deref())?;
    let ok = match cli.cmd {
        Cmd::Pim(PimCmd::Eval { expr, apply, tags }) => pim_eval(&mut sink, &cfg, &expr, apply.as_deref(), tags)?,
        Cmd::Ck(CkCmd::Rotate { n, plane, phi }) => {
            let fmt = if explicit { cfg.format } else { Format::Table };
            ck_rotate(&mut sink, &cfg, cli.common.signature.is_some(), n, &plane, phi, fmt)?
        }
        Cmd::Ck(CkCmd::Orbit(o)) => emit_orbit(&mut sink, &o, explicit.then_some(cfg.format))?,
        Cmd::Ck(CkCmd::Verify { n, .. }) => ck_verify(&mut sink, &cfg, cli.common.signature.is_some(), n)?,
        Cmd::Frt(FrtCmd::Rmatrix) => emit_rmatrix(&mut sink, &cfg, if explicit { cfg.format } else { Format::Json })?,
        Cmd::Frt(FrtCmd::Relations) => emit_relations(&mut sink, &cfg)?,
        Cmd::Frt(FrtCmd::Verify { what }) => frt_verify(&mut sink, &cfg, what)?,
        Cmd::Dual(DualCmd::Verify { what }) => dual_verify(&mut sink, &cfg, what)?,
        Cmd::Verify { suite } => {
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Pimenov => Suite::Pimenov,
                SuiteArg::Classical => Suite::Classical,
                SuiteArg::Frt => Suite::Frt,
                SuiteArg::Dual => Suite::Dual,
            };
            let reports = run_suite(&cfg, suite).map_err(|e| describe(e, &cfg))?;
            sink.reports(&reports, cfg.format)?
        }
        Cmd::Emit { what, orbit } => match what {
            EmitArg::Rmatrix => emit_rmatrix(&mut sink, &cfg, if explicit { cfg.format } else { Format::Table })?,
            EmitArg::Relations => emit_relations(&mut sink, &cfg)?,
            EmitArg::Orbit => emit_orbit(&mut sink, &orbit, explicit.then_some(cfg.format))?,
            EmitArg::PairingTable => {
                emit_pairing(&mut sink, &cfg, if explicit { cfg.format } else { Format::Table })?
            }
        },
    };
    sink.finish()?;
    Ok(ok)
}

fn pim_eval(sink: &mut Sink, cfg: &RunConfig, expr: &str, apply: Option<&str>, tags: usize) -> Outcome {
    let a = parse_element(expr, tags).map_err(|e| format!("`{expr}`: {e}"))?;
    let value = match apply {
        None => a.clone(),
        Some(name) => {
            let k = Kernel::from_name(name).ok_or_else(|| format!("unknown function `{name}`"))?;
            pim_apply(&k, &a).map_err(|e| e.to_string())?
        }
    };
    if cfg.format == Format::Json {
        let mut obj = serde_json::Map::new();
        obj.insert("input".into(), a.to_string().into());
        if let Some(name) = apply {
            obj.insert("apply".into(), name.into());
        }
        obj.insert("value".into(), value.to_string().into());
        obj.insert(
            "coefficients".into(),
            value.support().map(|m| serde_json::json!({"mask": m, "re": value.coeff(m).re, "im": value.coeff(m).im})).collect(),
        );
        sink.line(&serde_json::Value::Object(obj).to_string())?;
    } else {
        sink.line(&value.to_string())?;
    }
    Ok(true)
}

fn pair(s: &str, what: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(x), Ok(y)) => Ok((x, y)),
            _ => Err(format!("{what} `{s}`: expected two numbers")),
        },
        _ => Err(format!("{what} `{s}`: expected two comma-separated values")),
    }
}

fn ck_rotate(
    sink: &mut Sink,
    cfg: &RunConfig,
    has_sig: bool,
    n: Option<usize>,
    plane: &str,
    phi: f64,
    fmt: Format,
) -> Outcome {
    let sig = match (has_sig, n) {
        (true, Some(n)) if n != cfg.signature.size() => {
            return Err(format!("--n {n} does not match the signature `{}` of size {}", cfg.signature, cfg.signature.size()))
        }
        (false, Some(n)) if n >= 2 => ParameterSignature::new(vec![ckqw::Slot::One; n - 1]).map_err(|e| e.to_string())?,
        (false, Some(n)) => return Err(format!("--n {n}: the size must be at least 2")),
        _ => cfg.signature.clone(),
    };
    let (mu, nu) = pair(plane, "--plane")?;
    if mu.fract() != 0.0 || nu.fract() != 0.0 || mu < 1.0 || nu < 1.0 {
        return Err(format!("--plane `{plane}`: expected indices such as 1,2"));
    }
    let m = elementary_rotation(&sig, mu as usize, nu as usize, phi).map_err(|e| e.to_string())?;
    sink.matrix(&m, fmt)?;
    Ok(true)
}

fn ck_verify(sink: &mut Sink, cfg: &RunConfig, has_sig: bool, n: usize) -> Outcome {
    let sigs = if has_sig {
        vec![cfg.signature.clone()]
    } else if (2..=6).contains(&n) {
        ParameterSignature::all(n - 1)
    } else {
        return Err(format!("--n {n} outside 2..=6"));
    };
    let mut reports: Vec<Report> = Vec::new();
    for sig in sigs {
        let c = RunConfig { signature: sig, ..cfg.clone() };
        reports.extend(run_suite(&c, Suite::Classical).map_err(|e| describe(e, &c))?);
    }
    sink.reports(&reports, cfg.format)
}

fn emit_orbit(sink: &mut Sink, o: &OrbitArgs, fmt: Option<Format>) -> Outcome {
    let plane = OrbitPlane::parse(&o.plane).map_err(|e| e.to_string())?;
    let x = pair(&o.from, "--from")?;
    let pts = orbit_sample(plane, x, o.steps).map_err(|e| e.to_string())?;
    sink.orbit(&pts, fmt.unwrap_or(Format::Csv))?;
    Ok(true)
}

fn quantum(cfg: &RunConfig) -> Result<Complex64, String> {
    cfg.signature.require_quantum().map_err(|e| describe(e, cfg))?;
    Ok(cfg.v[0])
}

fn emit_rmatrix(sink: &mut Sink, cfg: &RunConfig, fmt: Format) -> Outcome {
    let v = quantum(cfg)?;
    let r = rmatrix3(&cfg.signature, v).map_err(|e| describe(e, cfg))?;
    sink.matrix(&r, fmt)?;
    Ok(true)
}

fn emit_relations(sink: &mut Sink, cfg: &RunConfig) -> Outcome {
    let v = quantum(cfg)?;
    let data = FrtData::new(&cfg.signature, v).map_err(|e| describe(e, cfg))?;
    sink.line(&data.relation_set().to_json_string())?;
    Ok(true)
}

fn emit_pairing(sink: &mut Sink, cfg: &RunConfig, fmt: Format) -> Outcome {
    let v = quantum(cfg)?;
    let tol = 1e-10;
    let conv = choose_convention(v, tol).map_err(|e| describe(e, cfg))?;
    let rep: PairingReport = pairing_report(&cfg.signature, v, conv, tol).map_err(|e| describe(e, cfg))?;
    sink.pairing(&rep, fmt)?;
    Ok(true)
}

fn select(cfg: &RunConfig, suite: Suite, ids: &[&str]) -> Result<Vec<Report>, String> {
    let all = run_suite(cfg, suite).map_err(|e| describe(e, cfg))?;
    Ok(all.into_iter().filter(|r| ids.contains(&r.check.as_str())).collect())
}

fn frt_verify(sink: &mut Sink, cfg: &RunConfig, what: FrtCheck) -> Outcome {
    if what == FrtCheck::Contraction && !cfg.signature.is_contracted() {
        return Err(format!("the contraction check needs a contracted signature, got `{}`", cfg.signature));
    }
    let ids: &[&str] = match what {
        FrtCheck::Qybe => &["frt.qybe", "frt.qybe-control"],
        FrtCheck::Confluence => &["frt.confluence"],
        FrtCheck::Antipode => &["frt.antipode"],
        FrtCheck::Coproduct => &["frt.coproduct"],
        FrtCheck::Contraction => &["frt.contraction"],
    };
    let reports = select(cfg, Suite::Frt, ids)?;
    sink.reports(&reports, cfg.format)
}

fn dual_verify(sink: &mut Sink, cfg: &RunConfig, what: DualCheck) -> Outcome {
    let ids: &[&str] = match what {
        DualCheck::Pairing => &["dual.pairing-table"],
        DualCheck::Lrel => &["dual.l-relations", "dual.rho-homomorphism"],
        DualCheck::Commutators => &["dual.commutators"],
        DualCheck::SowHopf => &["dual.sow-hopf", "dual.sow-hopf-decay", "dual.sow-diamond"],
        DualCheck::Iso => &["dual.isomorphism", "dual.isomorphism-decay"],
    };
    let reports = select(cfg, Suite::Dual, ids)?;
    sink.reports(&reports, cfg.format)
}
