//! The `ibr` command line: argument handling, rendering and exit codes.
//!
//! Everything is returned as strings so the same code path can be driven from
//! tests without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ibr_core::brauer::{self, GroupData, RestrictionReport};
use ibr_core::classes::ClassList;
use ibr_core::group::DEFAULT_ENUMERATION_CAP;
use ibr_core::sweep::{self, SweepConfig, SweepRow};
use ibr_core::{parse_group_spec, parse_subgroup_spec, verify, SubgroupLimits};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CAP: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

pub const TOOL: &str = "ibr";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ibr_core::Error),
    #[error("time budget of {0:?} exhausted")]
    Budget(Duration),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_cap() => EXIT_CAP,
            CliError::Budget(_) => EXIT_CAP,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ibr",
    version,
    about = "Injectivity of restriction of generalized Brauer characters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze restriction from a group to a subgroup at one prime.
    Analyze(AnalyzeArgs),
    /// Print the exact ordinary character table of a group.
    Table(TableArgs),
    /// Analyze every conjugacy class of subgroups against a list of primes.
    Sweep(SweepArgs),
    /// Re-run the built-in worked examples.
    VerifyPaper(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long)]
    group: String,
    /// Subgroup as `gens:` cycles inside the group.
    #[arg(long)]
    subgroup: String,
    #[arg(long)]
    prime: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Largest group order that will be enumerated.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_order: usize,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_order: usize,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    group: String,
    /// Restrict to one prime; the default is every prime dividing |G| plus
    /// the smallest one that does not.
    #[arg(long, conflicts_with = "primes")]
    prime: Option<u64>,
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long, default_value_t = SubgroupLimits::default().max_order)]
    max_order: usize,
    #[arg(long, default_value_t = SubgroupLimits::default().max_subgroups)]
    max_subgroups: usize,
    /// Wall-clock budget in seconds; exceeding it exits with the cap code.
    #[arg(long)]
    time_budget: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Where a structured document came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    /// Canonical class order of `G`, one `representative size order` per class.
    pub group_classes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_classes: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeDocument {
    pub provenance: Provenance,
    #[serde(flatten)]
    pub report: RestrictionReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub provenance: Provenance,
    pub table: ibr_core::chartab::TableDump,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub provenance: Provenance,
    pub primes: Vec<u64>,
    pub rows: Vec<SweepRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub tool: String,
    pub version: String,
    pub passed: bool,
    pub checks: Vec<verify::Check>,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                // --help and --version
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => analyze(&a).map(|s| (EXIT_OK, s)),
        Command::Table(a) => table(&a).map(|s| (EXIT_OK, s)),
        Command::Sweep(a) => sweep_cmd(&a).map(|s| (EXIT_OK, s)),
        Command::VerifyPaper(a) => verify_paper(&a),
    };
    match result {
        Ok((code, stdout)) => Output {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Output {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn class_lines(classes: &ClassList) -> Vec<String> {
    classes
        .classes()
        .iter()
        .map(|c| format!("{} {} {}", c.representative, c.size, c.element_order))
        .collect()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn check_prime(p: u64) -> Result<(), CliError> {
    // the library reports this too, but only after the tables are built
    if p < 2
        || (2..p)
            .take_while(|d| d * d <= p)
            .any(|d| p.is_multiple_of(d))
    {
        return Err(ibr_core::Error::NotPrime(p).into());
    }
    Ok(())
}

fn index_text(index: &Option<ibr_core::BigInt>) -> String {
    index
        .as_ref()
        .map_or_else(|| "none".to_string(), ToString::to_string)
}

fn analyze(a: &AnalyzeArgs) -> Result<String, CliError> {
    check_prime(a.prime)?;
    let g = parse_group_spec(&a.group)?;
    let emb = parse_subgroup_spec(&g, &a.subgroup)?;
    let gd = GroupData::new(&g, a.max_order)?;
    let hd = GroupData::new(emb.subgroup(), a.max_order)?;
    let report = brauer::analyze(&gd, &hd, a.prime)?;
    Ok(match a.format {
        Format::Structured => json(&AnalyzeDocument {
            provenance: Provenance {
                tool: TOOL.into(),
                version: VERSION.into(),
                command: "analyze".into(),
                group: a.group.clone(),
                subgroup: Some(a.subgroup.clone()),
                group_classes: class_lines(gd.classes()),
                subgroup_classes: Some(class_lines(hd.classes())),
            },
            report,
        }),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "group        {} (order {})", a.group, report.group_order);
            let _ = writeln!(
                s,
                "subgroup     {} (order {})",
                a.subgroup, report.subgroup_order
            );
            let _ = writeln!(s, "prime        {}", report.prime);
            let _ = writeln!(s, "r_G          {}", report.r_g);
            let _ = writeln!(s, "r_H          {}", report.r_h);
            let _ = writeln!(s, "coverage     {}", report.coverage);
            let _ = writeln!(s, "injective    {}", report.injective);
            let _ = writeln!(s, "consistent   {}", report.theorem_a_consistent);
            let _ = writeln!(s, "bijection    {}", report.class_meet_bijection);
            let _ = writeln!(s, "image_index  {}", index_text(&report.image_index));
            let _ = writeln!(s, "isomorphism  {}", report.isomorphism);
            s
        }
    })
}

fn table(a: &TableArgs) -> Result<String, CliError> {
    let g = parse_group_spec(&a.group)?;
    let gd = GroupData::new(&g, a.max_order)?;
    let dump = gd.table().dump();
    Ok(match a.format {
        Format::Structured => json(&TableDocument {
            provenance: Provenance {
                tool: TOOL.into(),
                version: VERSION.into(),
                command: "table".into(),
                group: a.group.clone(),
                subgroup: None,
                group_classes: class_lines(gd.classes()),
                subgroup_classes: None,
            },
            table: dump,
        }),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# {} order {} classes {} conductor {}",
                a.group,
                dump.order,
                dump.classes.len(),
                dump.conductor
            );
            for (i, c) in dump.classes.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "class {} {} size {} order {}",
                    i + 1,
                    c.representative,
                    c.size,
                    c.element_order
                );
            }
            for (i, (row, d)) in dump.rows.iter().zip(&dump.degrees).enumerate() {
                let _ = writeln!(s, "X.{} degree {}: {}", i + 1, d, row.join(" | "));
            }
            s
        }
    })
}

fn sweep_cmd(a: &SweepArgs) -> Result<String, CliError> {
    let start = Instant::now();
    let budget = match a.time_budget {
        Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
        Some(t) => {
            return Err(CliError::Usage(format!(
                "time budget must be positive, got {t}"
            )))
        }
        None => None,
    };
    if a.max_order == 0 || a.max_subgroups == 0 {
        return Err(CliError::Usage("caps must be positive".into()));
    }
    let explicit = a.prime.map(|p| vec![p]).or_else(|| a.primes.clone());
    if let Some(ps) = &explicit {
        if ps.is_empty() {
            return Err(CliError::Usage("empty prime list".into()));
        }
        ps.iter().try_for_each(|&p| check_prime(p))?;
    }
    let over = |start: Instant| budget.is_some_and(|b| start.elapsed() > b);

    let g = parse_group_spec(&a.group)?;
    let limits = SubgroupLimits {
        max_order: a.max_order,
        max_subgroups: a.max_subgroups,
    };
    let cfg = SweepConfig {
        primes: explicit,
        limits,
    };
    // the subgroup cap is checked before any table is built
    if g.order_u64().is_none_or(|n| n > a.max_order as u64) {
        return Err(ibr_core::Error::CapExceeded {
            what: "group order",
            size: g.order().to_string(),
            cap: a.max_order,
        }
        .into());
    }
    let gd = GroupData::new(&g, a.max_order)?;
    let primes = cfg.primes_for(gd.order() as u64);
    let subgroups = sweep::sweep_subgroups(&gd, &cfg)?;
    if over(start) {
        return Err(CliError::Budget(budget.unwrap()));
    }
    // analyzed concurrently, collected in subgroup order
    let chunks: Vec<Result<Vec<SweepRow>, CliError>> = subgroups
        .par_iter()
        .enumerate()
        .map(|(i, emb)| {
            if over(start) {
                return Err(CliError::Budget(budget.unwrap()));
            }
            Ok(sweep::subgroup_rows(&gd, i, emb, &primes)?)
        })
        .collect();
    let mut rows = Vec::new();
    for chunk in chunks {
        rows.extend(chunk?);
    }
    if over(start) {
        return Err(CliError::Budget(budget.unwrap()));
    }

    Ok(match a.format {
        Format::Structured => json(&SweepDocument {
            provenance: Provenance {
                tool: TOOL.into(),
                version: VERSION.into(),
                command: "sweep".into(),
                group: a.group.clone(),
                subgroup: None,
                group_classes: class_lines(gd.classes()),
                subgroup_classes: None,
            },
            primes,
            rows,
        }),
        Format::Text => render_sweep(&a.group, gd.order(), &primes, subgroups.len(), &rows),
    })
}

fn render_sweep(
    group: &str,
    order: usize,
    primes: &[u64],
    classes: usize,
    rows: &[SweepRow],
) -> String {
    let mut s = String::new();
    let primes: Vec<String> = primes.iter().map(ToString::to_string).collect();
    let _ = writeln!(
        s,
        "# {group} order {order}, {classes} subgroup classes, primes {}",
        primes.join(",")
    );
    let _ = writeln!(
        s,
        "{:>4} {:>6} {:>3} {:>4} {:>4} {:>8} {:>9} {:>9} {:>6} {:>11}  subgroup",
        "H", "|H|", "p", "r_G", "r_H", "coverage", "injective", "bijection", "index", "isomorphism"
    );
    for row in rows {
        let r = &row.report;
        let _ = writeln!(
            s,
            "{:>4} {:>6} {:>3} {:>4} {:>4} {:>8} {:>9} {:>9} {:>6} {:>11}  {}{}",
            row.subgroup_index + 1,
            r.subgroup_order,
            r.prime,
            r.r_g,
            r.r_h,
            r.coverage,
            r.injective,
            r.class_meet_bijection,
            index_text(&r.image_index),
            r.isomorphism,
            row.subgroup,
            if row.candidate { "  <- candidate" } else { "" }
        );
    }
    let bad: Vec<&SweepRow> = rows
        .iter()
        .filter(|r| !r.report.invariant_violations().is_empty())
        .collect();
    let _ = writeln!(
        s,
        "# {} rows, {} invariant violations",
        rows.len(),
        bad.len()
    );
    s
}

fn verify_paper(a: &VerifyArgs) -> Result<(u8, String), CliError> {
    let summary = verify::run()?;
    let code = verify_exit_code(&summary);
    Ok((code, render_verify(summary, a.format)))
}

/// `0` when every check passed, `3` otherwise.
pub fn verify_exit_code(summary: &verify::Summary) -> u8 {
    if summary.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}

pub fn render_verify(summary: verify::Summary, format: Format) -> String {
    match format {
        Format::Structured => json(&VerifyDocument {
            tool: TOOL.into(),
            version: VERSION.into(),
            passed: summary.passed(),
            checks: summary.checks,
        }),
        Format::Text => {
            let mut s = String::new();
            for c in &summary.checks {
                let _ = write!(s, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
                if !c.detail.is_empty() {
                    let _ = write!(s, " ({})", c.detail);
                }
                s.push('\n');
            }
            let failed = summary.checks.iter().filter(|c| !c.passed).count();
            let _ = writeln!(s, "{} checks, {} failed", summary.checks.len(), failed);
            s
        }
    }
}
