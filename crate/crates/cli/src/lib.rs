//! Command-line front end: `monolith-forge <verb> [<family>] [flags]`.
//!
//! Exit codes: 0 when every non-informational check passes, 1 on a failed
//! check, 2 on a configuration error, 3 when a truncation did not
//! stabilize.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use chrono::{SecondsFormat, Utc};
use clap::{Args, Parser, Subcommand, ValueEnum};
use monolith_core::algebra::Family;
use monolith_core::arith::{parse_scalar, Scalar};
use monolith_core::pipeline::{self, PipelineConfig};
use monolith_core::report::{emit_report, render_json, ReportFormat, RunReport, Status};
use monolith_core::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "monolith-forge", version, about = "Exact verification of monolithic-module constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// List the families and their default parameters.
    List,
    /// Check the standing assumptions and the family's identities.
    Verify {
        family: FamilyArg,
        #[command(flatten)]
        params: ParamFlags,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Build the monolithic module and probe essentiality.
    Construct {
        family: FamilyArg,
        #[command(flatten)]
        params: ParamFlags,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Run the whole battery over the default families.
    Suite {
        #[command(flatten)]
        run: RunFlags,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    QuantumPlane,
    Weyl,
    Ore,
    DownUp,
}

/// Family parameters: a rational literal or `t`.
#[derive(Args, Debug, Default)]
pub struct ParamFlags {
    #[arg(long, value_parser = parse_param)]
    pub q: Option<Scalar>,
    #[arg(long, value_parser = parse_param)]
    pub eta: Option<Scalar>,
    #[arg(long, value_parser = parse_param)]
    pub kappa: Option<Scalar>,
    #[arg(long, value_parser = parse_param)]
    pub r: Option<Scalar>,
}

#[derive(Args, Debug)]
pub struct RunFlags {
    #[arg(long, default_value_t = 8)]
    pub degree: u32,
    #[arg(long)]
    pub slack_cap: Option<u32>,
    #[arg(long, default_value_t = 4)]
    pub m_max: u32,
    #[arg(long)]
    pub probes: Option<usize>,
    #[arg(long)]
    pub coeff_bound: Option<i64>,
    #[arg(long)]
    pub margin: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the structured report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

fn parse_param(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

fn ore_r(r: Option<&Scalar>) -> Result<u32, Error> {
    let Some(r) = r else { return Ok(1) };
    let bad = || Error::InvalidParameter(format!("r must be a positive integer, got {r}"));
    let Scalar::Rat(q) = r else { return Err(bad()) };
    if !q.is_integer() {
        return Err(bad());
    }
    u32::try_from(q.to_integer()).ok().filter(|&v| v >= 1).ok_or_else(bad)
}

/// Resolves a family and its flags to a pipeline configuration. Flags that
/// do not belong to the family are configuration errors.
pub fn family_config(family: FamilyArg, params: &ParamFlags, run: &RunFlags) -> Result<PipelineConfig, Error> {
    let reject = |name: &str, given: bool| {
        if given {
            Err(Error::InvalidParameter(format!("--{name} does not apply to {family:?}")))
        } else {
            Ok(())
        }
    };
    let fam = match family {
        FamilyArg::QuantumPlane => Family::QuantumPlane,
        FamilyArg::Weyl => Family::QuantizedWeyl,
        FamilyArg::Ore => Family::OreExtension { r: ore_r(params.r.as_ref())? },
        FamilyArg::DownUp => Family::DownUpExtended,
    };
    let mut cfg = PipelineConfig::new(fam);
    match family {
        FamilyArg::QuantumPlane | FamilyArg::Weyl => {
            reject("eta", params.eta.is_some())?;
            reject("kappa", params.kappa.is_some())?;
            reject("r", params.r.is_some())?;
            if let Some(q) = &params.q {
                cfg.parameter = Some(q.clone());
            }
        }
        FamilyArg::Ore => {
            reject("q", params.q.is_some())?;
            reject("eta", params.eta.is_some())?;
            reject("kappa", params.kappa.is_some())?;
        }
        FamilyArg::DownUp => {
            reject("q", params.q.is_some())?;
            reject("r", params.r.is_some())?;
            if let Some(e) = &params.eta {
                cfg.parameter = Some(e.clone());
            }
            if let Some(k) = &params.kappa {
                cfg.kappa = Some(k.clone());
            }
        }
    }
    apply_run_flags(&mut cfg, run);
    Ok(cfg)
}

fn apply_run_flags(cfg: &mut PipelineConfig, run: &RunFlags) {
    cfg.degree = run.degree;
    cfg.slack_cap = run.slack_cap;
    cfg.m_max = run.m_max;
    cfg.probe.seed = run.seed;
    cfg.probe.margin = run.margin;
    if let Some(p) = run.probes {
        cfg.probe.probes = p;
    }
    if let Some(b) = run.coeff_bound {
        cfg.probe.coefficient_bound = b;
    }
}

fn list_text() -> String {
    let mut out = String::new();
    for cfg in pipeline::default_families() {
        let echo = cfg.echo();
        let mut parts = vec![cfg.family.cli_name().to_string()];
        if let Family::OreExtension { r } = cfg.family {
            parts.push(format!("r={r}"));
        }
        let name = match cfg.family {
            Family::DownUpExtended => "eta",
            _ => "q",
        };
        if let Some(p) = echo.get("parameter") {
            parts.push(format!("{name}={p}"));
        }
        if let Some(k) = echo.get("kappa") {
            parts.push(format!("kappa={k}"));
        }
        parts.push(format!("degree={} m_max={}", cfg.degree, cfg.m_max));
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

fn timestamp() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true)
}

fn report_for(verb: &Verb) -> Result<(RunReport, &RunFlags), Error> {
    let version = env!("CARGO_PKG_VERSION");
    let (cfg, run, checks) = match verb {
        Verb::List => unreachable!("list has no report"),
        Verb::Verify { family, params, run } => {
            let cfg = family_config(*family, params, run)?;
            let rep = pipeline::verify(&cfg)?;
            (cfg, run, vec![rep])
        }
        Verb::Construct { family, params, run } => {
            let cfg = family_config(*family, params, run)?;
            let rep = pipeline::construct(&cfg)?;
            (cfg, run, vec![rep])
        }
        Verb::Suite { run } => {
            let mut cfg = PipelineConfig::new(Family::QuantumPlane);
            apply_run_flags(&mut cfg, run);
            let reps = pipeline::suite(&cfg)?;
            (cfg, run, reps)
        }
    };
    let mut echo = cfg.echo();
    let verb_name = match verb {
        Verb::Verify { .. } => "verify",
        Verb::Construct { .. } => "construct",
        _ => "suite",
    };
    echo.insert("verb".into(), verb_name.into());
    if verb_name == "suite" {
        for key in ["family", "parameter", "kappa"] {
            echo.remove(key);
        }
    }
    let mut report = RunReport::new(version, timestamp(), echo);
    for c in checks {
        report.push(c);
    }
    Ok((report, run))
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::NoStabilization { .. } => EXIT_UNSTABLE,
        _ => EXIT_CONFIG,
    }
}

/// Exit code for a finished report.
pub fn status_code(status: Status) -> i32 {
    match status {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Unstable => EXIT_UNSTABLE,
    }
}

/// Parses `argv` (program name first), runs the verb and writes reports.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // --help and --version arrive here too
            if e.exit_code() == 0 {
                let _ = write!(out, "{e}");
                return EXIT_PASS;
            }
            let _ = write!(err, "{e}");
            return EXIT_CONFIG;
        }
    };
    if let Verb::List = cli.verb {
        return match out.write_all(list_text().as_bytes()) {
            Ok(()) => EXIT_PASS,
            Err(_) => EXIT_CONFIG,
        };
    }
    let (report, run) = match report_for(&cli.verb) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return error_code(&e);
        }
    };
    let format = match run.format {
        OutputFormat::Text => ReportFormat::Text,
        OutputFormat::Json => ReportFormat::Json,
    };
    let written = emit_report(&report, format, out).and_then(|()| match &run.json {
        Some(path) => std::fs::write(path, render_json(&report) + "\n")
            .map_err(|e| Error::SinkUnwritable(format!("{}: {e}", path.display()))),
        None => Ok(()),
    });
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_CONFIG;
    }
    status_code(report.overall)
}
