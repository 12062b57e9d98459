//! The `brauer-forge` command line.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::harness::catalog::{load_group, CatalogGroup};
use crate::harness::checks;
use crate::harness::{Report, Verdict};
use crate::linalg::Field;
use crate::semidihedral::structure_report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Groups whose module pipelines only run with `--extended`.
const EXTENDED_ONLY: &[&str] = &["m11"];

#[derive(Debug, Parser)]
#[command(name = "brauer-forge", version, about = "Brauer indecomposability of Scott modules over GF(2^m)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the full report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Allow the long-running groups (m11).
    #[arg(long, global = true)]
    pub extended: bool,
    /// Suppress the summary on standard output.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Work over GF(2^m).
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=8))]
    pub field: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Subgroup structure of SD_{2^n}, e.g. `structure sd16`.
    Structure { group: String },
    /// Extract Sc(G, H).
    Scott { group: String, subgroup: String },
    /// Brauer indecomposability of Sc(G, P).
    Brauer { group: String, p: String },
    /// Saturation, 2-nilpotent centralizers and the Brauer test for a semidihedral P.
    Thm1 { group: String, p: String },
    /// Sc(G x G', delta P) for two groups with the same semidihedral Sylow 2-subgroup.
    Thm2 { left: String, right: String },
    /// Compare Sc(G, P)(Q) with Sc(N_G(Q), N_P(Q)).
    Ik1 { group: String, p: String, q: String },
    /// Centralizers of the subgroups of order at least 8 of a semidihedral Sylow 2-subgroup.
    Lemma31 { group: String },
    /// Equality of the fusion systems of two groups over their identified Sylow subgroups.
    FusionEq { left: String, right: String },
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if !cli.quiet {
                print!("{}", report.summary());
            }
            if let Some(path) = &cli.json {
                let written = report.to_json().and_then(|s| Ok(std::fs::write(path, s)?));
                if let Err(e) = written {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            }
            match report.verdict {
                Verdict::Pass => EXIT_PASS,
                Verdict::Fail => {
                    dump_counterexamples(&cli, &report);
                    EXIT_FAIL
                }
                // a resource bound stopped part of the run
                Verdict::Skipped(_) => EXIT_USAGE,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn dump_counterexamples(cli: &Cli, report: &Report) {
    if report.counterexamples.is_empty() {
        return;
    }
    let path = match &cli.json {
        Some(p) => p.with_extension("counterexample.json"),
        None => PathBuf::from("brauer-forge-counterexample.json"),
    };
    match serde_json::to_string_pretty(&report.counterexamples) {
        Ok(s) => match std::fs::write(&path, s) {
            Ok(()) => eprintln!("counterexample bundle written to {}", path.display()),
            Err(e) => eprintln!("could not write counterexample bundle: {e}"),
        },
        Err(e) => eprintln!("could not serialize counterexample bundle: {e}"),
    }
}

fn load(cli: &Cli, source: &str) -> Result<CatalogGroup> {
    if EXTENDED_ONLY.contains(&source) && !cli.extended {
        return Err(Error::InvalidArgument(format!("{source} runs only with --extended")));
    }
    load_group(source)
}

/// Q-specs on a product default to the diagonal copy.
fn product_spec(g: &CatalogGroup, spec: &str) -> String {
    let plain = spec.starts_with("delta") || spec.starts_with('(') || matches!(spec, "sylow" | "1" | "trivial");
    if g.product.is_some() && !plain {
        format!("delta:{spec}")
    } else {
        spec.to_string()
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let field = Field::new(cli.field as usize)?;
    let seed = cli.seed;
    match &cli.command {
        Command::Structure { group } => {
            let n = group
                .strip_prefix("sd")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|o| o.is_power_of_two() && *o >= 16)
                .ok_or_else(|| Error::InvalidArgument(format!("expected sd16, sd32, ..., got {group}")))?;
            structure_report(n.trailing_zeros())
        }
        Command::Scott { group, subgroup } => {
            let g = load(cli, group)?;
            let h = g.subgroup(&product_spec(&g, subgroup))?;
            checks::check_scott(&g.name, &g.group, &h, field, seed)
        }
        Command::Brauer { group, p } => {
            let g = load(cli, group)?;
            let p = g.subgroup(&product_spec(&g, p))?;
            checks::check_brauer_indecomposability(&g.name, &g.group, &p, field, seed)
        }
        Command::Thm1 { group, p } => {
            let g = load(cli, group)?;
            let p = g.subgroup(&product_spec(&g, p))?;
            checks::check_theorem1(&g.name, &g.group, &p, field, seed)
        }
        Command::Thm2 { left, right } => {
            let (a, b) = (load(cli, left)?, load(cli, right)?);
            checks::check_theorem2(&a, &b, field, seed)
        }
        Command::Ik1 { group, p, q } => {
            let g = load(cli, group)?;
            let p = g.subgroup(&product_spec(&g, p))?;
            let q = g.subgroup(&product_spec(&g, q))?;
            checks::check_ik1_consequence(&g.name, &g.group, &p, &q, field, seed)
        }
        Command::Lemma31 { group } => {
            let g = load(cli, group)?;
            checks::check_lemma31(&g.name, &g.group, &g.sylow, seed)
        }
        Command::FusionEq { left, right } => {
            let (a, b) = (load(cli, left)?, load(cli, right)?);
            checks::check_fusion_equal(&a, &b, seed)
        }
    }
}
