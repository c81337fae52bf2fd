//! `qsym`: batch front-end for qsym-core.
//!
//! Exit codes: 0 all checks pass / all axioms Proven, 1 validation failure or
//! numeric refutation, 2 parse or shape error, 3 only Inconclusive left.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Value};

use qsym_core::catalog::{self, CatalogObject};
use qsym_core::coaction::{
    verify_all, AxiomReport, AxiomStatus, CoactionCertificate, NumericCheck,
};
use qsym_core::filtration::{validate, FiltrationSpec, ValidationReport};
use qsym_core::numeric::{classical_points, falsify, PointStrategy, RELATION_TOL};
use qsym_core::rewrite::RewriteConfig;
use qsym_core::{NcPoly, Presentation};

const DEFAULT_SEED: u64 = 0x5eed;
const DEFAULT_DEGREE: usize = 6;
const RANDOM_SAMPLES: usize = 64;

#[derive(Parser)]
#[command(
    name = "qsym",
    version,
    about = "Quantum symmetries of orthogonal filtrations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Word-length bound D for the rewriting engine.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(2..))]
    degree: Option<u64>,
    /// Absolute tolerance for numeric refutation.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for random classical points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also write the report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a filtration spec against the orthogonal filtration axioms.
    Validate { spec: String },
    /// Emit the generators-and-relations presentation of the universal object.
    Present { spec: String },
    /// Verify a coaction certificate against a spec.
    Verify {
        spec: String,
        /// Omitted when SPEC is a catalog URI carrying a certificate.
        certificate: Option<String>,
    },
    /// Evaluate relations at classical points of a presentation.
    Falsify {
        /// Presentation, certificate (its target) or catalog URI.
        target: String,
        /// Polynomials to test; defaults to the target's own relations.
        polys: Vec<String>,
        /// File with one polynomial per line (`#` starts a comment).
        #[arg(long)]
        relations: Option<PathBuf>,
    },
    /// Built-in objects addressed by `catalog:` URIs.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    /// Print the JSON of a catalog object.
    Export {
        uri: String,
    },
}

struct Outcome {
    exit: u8,
    json: Value,
    text: String,
}

impl Outcome {
    fn error(command: &str, msg: String) -> Outcome {
        Outcome {
            exit: 2,
            json: json!({ "command": command, "exit_code": 2, "error": msg }),
            text: format!("error: {msg}"),
        }
    }
}

type CmdResult = std::result::Result<Outcome, String>;

fn read(path: &str) -> std::result::Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn resolve(uri: &str) -> std::result::Result<Option<CatalogObject>, String> {
    if uri.starts_with(catalog::SCHEME) {
        catalog::resolve(uri).map(Some).map_err(|e| e.to_string())
    } else {
        Ok(None)
    }
}

fn load_spec(arg: &str) -> std::result::Result<FiltrationSpec, String> {
    match resolve(arg)? {
        Some(obj) => obj
            .spec()
            .cloned()
            .ok_or_else(|| format!("{arg} is not a filtration spec")),
        None => FiltrationSpec::from_json(&read(arg)?).map_err(|e| format!("{arg}: {e}")),
    }
}

fn load_certificate(arg: &str) -> std::result::Result<CoactionCertificate, String> {
    match resolve(arg)? {
        Some(obj) => obj
            .certificate()
            .cloned()
            .ok_or_else(|| format!("{arg} carries no certificate")),
        None => CoactionCertificate::from_json(&read(arg)?).map_err(|e| format!("{arg}: {e}")),
    }
}

fn load_presentation(arg: &str) -> std::result::Result<Presentation, String> {
    match resolve(arg)? {
        Some(obj) => obj
            .presentation()
            .cloned()
            .ok_or_else(|| format!("{arg} is not a presentation")),
        None => {
            let text = read(arg)?;
            Presentation::from_json(&text)
                .or_else(|e| {
                    CoactionCertificate::from_json(&text)
                        .map(|c| c.target)
                        .map_err(|_| e)
                })
                .map_err(|e| format!("{arg}: {e}"))
        }
    }
}

fn validation_outcome(report: &ValidationReport, input: &str) -> Outcome {
    let exit = if report.all_passed() { 0 } else { 1 };
    let text = report
        .checks
        .iter()
        .map(|(k, c)| {
            let mark = if c.passed { "pass" } else { "FAIL" };
            match &c.witness {
                Some(w) if !c.passed => format!("{mark}  {k}: {w}"),
                _ => format!("{mark}  {k}"),
            }
        })
        .join("\n");
    Outcome {
        exit,
        json: json!({
            "command": "validate",
            "input": input,
            "exit_code": exit,
            "valid": exit == 0,
            "report": report,
        }),
        text,
    }
}

fn cmd_validate(spec: &str) -> CmdResult {
    let s = load_spec(spec)?;
    Ok(validation_outcome(&validate(&s), spec))
}

fn cmd_present(spec: &str, opts: &Opts) -> CmdResult {
    let s = load_spec(spec)?;
    let report = validate(&s);
    if !report.all_passed() {
        return Ok(validation_outcome(&report, spec));
    }
    let cfg = RewriteConfig::new(opts.degree.map_or(DEFAULT_DEGREE, |d| d as usize));
    let p = catalog::universal_presentation(&s, cfg).map_err(|e| e.to_string())?;
    let text = std::iter::once(p.name.clone())
        .chain(
            p.families
                .iter()
                .map(|f| format!("family {}[{}] {}x{}", f.label, f.block, f.rows, f.cols)),
        )
        .chain(p.relations.iter().map(|r| format!("{r} = 0")))
        .join("\n");
    let json = serde_json::from_str(&p.to_json()).map_err(|e| e.to_string())?;
    Ok(Outcome {
        exit: 0,
        json,
        text,
    })
}

fn numeric(opts: &Opts) -> NumericCheck {
    NumericCheck {
        tolerance: opts.tolerance.unwrap_or(RELATION_TOL),
        strategy: PointStrategy::Exhaustive {
            seed: opts.seed,
            samples: RANDOM_SAMPLES,
        },
    }
}

fn status_name(s: AxiomStatus) -> &'static str {
    match s {
        AxiomStatus::Proven => "Proven",
        AxiomStatus::Inconclusive => "Inconclusive",
        AxiomStatus::RefutedNumerically => "RefutedNumerically",
    }
}

fn report_exit(r: &AxiomReport) -> u8 {
    match r.overall() {
        AxiomStatus::Proven => 0,
        AxiomStatus::RefutedNumerically => 1,
        AxiomStatus::Inconclusive => 3,
    }
}

fn cmd_verify(spec: &str, certificate: Option<&str>, opts: &Opts) -> CmdResult {
    let s = load_spec(spec)?;
    let mut cert = load_certificate(certificate.unwrap_or(spec))?;
    let validation = validate(&s);
    if !validation.all_passed() {
        return Ok(validation_outcome(&validation, spec));
    }
    if let Some(d) = opts.degree {
        cert.rewrite_cfg.max_degree = d as usize;
    }
    let report = verify_all(&s, &cert, Some(&numeric(opts))).map_err(|e| e.to_string())?;
    let exit = report_exit(&report);
    let text = report
        .axioms
        .iter()
        .map(|(k, e)| {
            let line = format!(
                "{:<18} {:<24} {}/{}",
                status_name(e.status),
                k,
                e.proven,
                e.identities
            );
            match &e.witness {
                Some(w) => format!("{line}  {w}"),
                None => line,
            }
        })
        .chain(std::iter::once(format!(
            "overall: {}",
            status_name(report.overall())
        )))
        .join("\n");
    Ok(Outcome {
        exit,
        json: json!({
            "command": "verify",
            "spec": spec,
            "certificate": certificate.unwrap_or(spec),
            "degree": cert.rewrite_cfg.max_degree,
            "exit_code": exit,
            "overall": report.overall(),
            "report": report,
        }),
        text,
    })
}

fn parse_polys(lines: impl Iterator<Item = String>) -> std::result::Result<Vec<NcPoly>, String> {
    lines
        .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
        .filter(|l| !l.is_empty())
        .map(|l| NcPoly::parse(&l).map_err(|e| format!("`{l}`: {e}")))
        .collect()
}

fn cmd_falsify(
    target: &str,
    polys: &[String],
    relations: Option<&PathBuf>,
    opts: &Opts,
) -> CmdResult {
    let p = load_presentation(target)?;
    let mut list = parse_polys(polys.iter().cloned())?;
    if let Some(path) = relations {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        list.extend(parse_polys(text.lines().map(str::to_string))?);
    }
    if polys.is_empty() && relations.is_none() {
        list = p.relations.clone();
    }
    let tol = opts.tolerance.unwrap_or(RELATION_TOL);
    let points = classical_points(&p, &numeric(opts).strategy, tol);
    let witness = falsify(&list, &points, tol).map_err(|e| e.to_string())?;
    let exit = match (&witness, points.is_empty()) {
        (Some(_), _) => 1,
        (None, true) => 3,
        (None, false) => 0,
    };
    let wjson = witness.as_ref().map(|w| {
        json!({
            "relation": w.relation,
            "poly": list[w.relation].to_string(),
            "value": [w.value.re, w.value.im],
            "description": w.to_string(),
        })
    });
    let text = match &witness {
        Some(w) => format!("refuted: {} ({})", w, list[w.relation]),
        None if points.is_empty() => "no classical points found".to_string(),
        None => format!(
            "{} relations hold at {} classical points",
            list.len(),
            points.len()
        ),
    };
    Ok(Outcome {
        exit,
        json: json!({
            "command": "falsify",
            "target": target,
            "exit_code": exit,
            "relations": list.len(),
            "points": points.len(),
            "witness": wjson,
        }),
        text,
    })
}

fn cmd_catalog(c: &CatalogCommand) -> CmdResult {
    match c {
        CatalogCommand::List => {
            let entries = catalog::list();
            let text = entries
                .iter()
                .map(|(p, d)| format!("{}{p:<28} {d}", catalog::SCHEME))
                .join("\n");
            let json = entries
                .iter()
                .map(|(p, d)| json!({ "uri": format!("{}{p}", catalog::SCHEME), "description": d }))
                .collect();
            Ok(Outcome {
                exit: 0,
                json: Value::Array(json),
                text,
            })
        }
        CatalogCommand::Export { uri } => {
            let full = if uri.starts_with(catalog::SCHEME) {
                uri.clone()
            } else {
                format!("{}{uri}", catalog::SCHEME)
            };
            let obj = catalog::resolve(&full).map_err(|e| e.to_string())?;
            let text = obj.to_json();
            let json = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            Ok(Outcome {
                exit: 0,
                json,
                text,
            })
        }
    }
}

fn render(o: &Outcome, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&o.json).expect("json values serialize"),
        Format::Text => o.text.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = &cli.opts;
    let (name, result) = match &cli.command {
        Command::Validate { spec } => ("validate", cmd_validate(spec)),
        Command::Present { spec } => ("present", cmd_present(spec, opts)),
        Command::Verify { spec, certificate } => {
            ("verify", cmd_verify(spec, certificate.as_deref(), opts))
        }
        Command::Falsify {
            target,
            polys,
            relations,
        } => (
            "falsify",
            cmd_falsify(target, polys, relations.as_ref(), opts),
        ),
        Command::Catalog(c) => ("catalog", cmd_catalog(c)),
    };
    let outcome = result.unwrap_or_else(|msg| Outcome::error(name, msg));
    let out = render(&outcome, opts.format);
    if let Some(path) = &opts.report {
        if let Err(e) = fs::write(path, format!("{out}\n")) {
            eprintln!("{}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let _ = if outcome.exit == 2 && opts.format == Format::Text {
        writeln!(std::io::stderr(), "{out}")
    } else {
        writeln!(std::io::stdout(), "{out}")
    };
    ExitCode::from(outcome.exit)
}
