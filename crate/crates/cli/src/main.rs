//! Command-line frontend: list the identity catalog, run verifications,
//! print the count tables, and drive the embed/peel bijection pipeline.
//!
//! Exit codes: 0 when every report passes, 1 on any verification failure
//! or evaluation error, 2 on usage or parameter errors.

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schmidt_core::bijection;
use schmidt_core::error::Error;
use schmidt_core::partition::{
    self, Cap, ClassFilter, Partition, PartitionClass, TwoColorConstraint,
};
use schmidt_core::registry::{
    self, BoundsProfile, GridOverrides, Mode, Status, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "schmidt-lab",
    about = "Exact verification lab for partition identities of Schmidt type",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output to a file instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered identity families
    List {
        /// Keep only families whose id contains this substring
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate both sides of identity instances and compare exactly
    Verify {
        /// Family id; repeatable. All families when omitted
        #[arg(long = "identity")]
        identities: Vec<String>,
        /// Largest-part bound N (pins the grid)
        #[arg(long = "N")]
        n_bound: Option<u32>,
        /// Alternating-sum refinement j
        #[arg(long)]
        j: Option<u32>,
        /// Statistic size n for counting families
        #[arg(long)]
        n: Option<u64>,
        /// q-degree window (overrides every per-family default)
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        /// Sign parameter of the general family (+1 or -1)
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<i8>,
        /// Include the formal four-variable instances of the formula families
        #[arg(long = "four-variable", default_value_t = true, action = clap::ArgAction::Set, num_args = 0..=1, require_equals = false, default_missing_value = "true")]
        four_variable: bool,
        /// Worker threads (defaults to available parallelism)
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the two enumerated sides of a counting identity
    Table {
        /// Family id (a counting family)
        #[arg(long = "identity")]
        identity: String,
        /// Size of the counted statistic
        #[arg(long)]
        n: u64,
        /// Largest-part bound N
        #[arg(long = "N")]
        n_bound: Option<u32>,
        /// Alternating-sum refinement j
        #[arg(long)]
        j: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a partition through the column embedding and the hook peeling
    Bijection {
        /// Comma-separated descending parts; empty string for the empty partition
        #[arg(long)]
        partition: String,
        /// Column height of the embedding (at least the number of parts)
        #[arg(long)]
        j: u32,
        /// Optional largest-part bound to check transport against
        #[arg(long = "N")]
        n_bound: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn writer(out: &Option<String>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout()),
    })
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::List { filter, output } => cmd_list(filter, output),
        Command::Verify {
            identities,
            n_bound,
            j,
            n,
            degree,
            r,
            t,
            s,
            eps,
            four_variable,
            workers,
            output,
        } => {
            let mut profile = BoundsProfile::default();
            if let Some(d) = degree {
                profile = profile.with_degree(d);
            }
            profile.four_variable = four_variable;
            let overrides = GridOverrides {
                n_bound,
                j,
                n,
                r,
                t,
                s,
                eps,
            };
            let families = if identities.is_empty() {
                None
            } else {
                Some(identities)
            };
            cmd_verify(families, overrides, profile, workers, output)
        }
        Command::Table {
            identity,
            n,
            n_bound,
            j,
            output,
        } => cmd_table(&identity, n, n_bound, j, output),
        Command::Bijection {
            partition,
            j,
            n_bound,
        } => cmd_bijection(&partition, j, n_bound),
    }
}

fn cmd_list(
    filter: Option<String>,
    output: OutputArgs,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let mut w = writer(&output.out)?;
    let families: Vec<_> = registry::registry()
        .iter()
        .filter(|f| filter.as_deref().is_none_or(|s| f.id.contains(s)))
        .collect();
    match output.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &families)?;
            writeln!(w)?;
        }
        Format::Text => {
            for f in &families {
                let mode = match f.mode {
                    Mode::Series => "series",
                    Mode::Count => "count ",
                };
                writeln!(w, "{:<22} {}  {}", f.id, mode, f.statement)?;
            }
            writeln!(w, "{} identity families", families.len())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    families: Option<Vec<String>>,
    overrides: GridOverrides,
    profile: BoundsProfile,
    workers: Option<usize>,
    output: OutputArgs,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    if let Some(k) = workers {
        if k == 0 {
            return Err(Box::new(Error::Params("workers must be at least 1".into())));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .ok();
    }
    let reports = registry::verify_suite(families.as_deref(), &overrides, &profile)?;
    let mut w = writer(&output.out)?;
    let all_pass = reports.iter().all(|r| r.status == Status::Pass);
    match output.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &reports)?;
            writeln!(w)?;
        }
        Format::Text => {
            for r in &reports {
                writeln!(w, "{}", report_line(r))?;
            }
            let (pass, fail, err) = tally(&reports);
            writeln!(
                w,
                "{} instances: {pass} pass, {fail} fail, {err} error",
                reports.len()
            )?;
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn tally(reports: &[VerificationReport]) -> (usize, usize, usize) {
    let mut t = (0, 0, 0);
    for r in reports {
        match r.status {
            Status::Pass => t.0 += 1,
            Status::Fail => t.1 += 1,
            Status::Error => t.2 += 1,
        }
    }
    t
}

fn report_line(r: &VerificationReport) -> String {
    let status = match r.status {
        Status::Pass => "pass ",
        Status::Fail => "FAIL ",
        Status::Error => "ERROR",
    };
    let mut line = format!(
        "{status}  {:<22} {:<40} bound={:<4} {}ms",
        r.id,
        r.params.to_string(),
        r.checked_bound,
        r.elapsed_ms
    );
    if let Some(mm) = &r.first_mismatch {
        line.push_str(&format!(
            "  first mismatch at {}: lhs={} rhs={}",
            mm.monomial, mm.lhs, mm.rhs
        ));
    }
    if let Some(msg) = &r.message {
        line.push_str(&format!("  ({msg})"));
    }
    line
}

/// The two enumerated sides of a counting identity, as printable rows.
fn table_sides(
    identity: &str,
    n: u64,
    n_bound: Option<u32>,
    j: Option<u32>,
) -> Result<(String, Vec<String>, String, Vec<String>), Error> {
    let need_n_bound = || n_bound.ok_or_else(|| Error::Params("this table needs --N".into()));
    let need_j = || j.ok_or_else(|| Error::Params("this table needs --j".into()));
    match identity {
        "hook-count" | "hook-refined" => {
            let nb = need_n_bound()?;
            let jv = if identity == "hook-refined" {
                Some(need_j()? as u64)
            } else {
                None
            };
            let filter =
                ClassFilter::new(PartitionClass::Distinct, Cap::OddSum(n)).with_max_part(nb);
            let left: Vec<String> = partition::enumerate(&filter)?
                .into_iter()
                .filter(|p| {
                    let s = p.stats();
                    s.odd_sum == n && jv.is_none_or(|g| s.gamma == g)
                })
                .map(|p| p.to_string())
                .collect();
            let hooks =
                ClassFilter::new(PartitionClass::Ordinary, Cap::Size(n)).with_max_part(nb);
            let right: Vec<String> = partition::enumerate(&hooks)?
                .into_iter()
                .filter(|p| {
                    p.size() == n
                        && p.stats().max_hook <= nb as u64
                        && jv.is_none_or(|g| p.len() as u64 == g)
                })
                .map(|p| p.to_string())
                .collect();
            Ok((
                format!("distinct parts <= {nb} with O = {n}"),
                left,
                format!("partitions of {n} with hook <= {nb}"),
                right,
            ))
        }
        "two-color" | "two-color-refined" => {
            let nb = need_n_bound()?;
            let jv = if identity == "two-color-refined" {
                Some(need_j()?)
            } else {
                None
            };
            let filter =
                ClassFilter::new(PartitionClass::Ordinary, Cap::OddSum(n)).with_max_part(nb);
            let left: Vec<String> = partition::enumerate(&filter)?
                .into_iter()
                .filter(|p| {
                    let s = p.stats();
                    s.odd_sum == n && jv.is_none_or(|g| s.gamma == g as u64)
                })
                .map(|p| p.to_string())
                .collect();
            let pairs = match jv {
                None => partition::enumerate_two_color(
                    n,
                    None,
                    TwoColorConstraint::CountPlusMaxGreenAtMost(nb),
                ),
                Some(jv) => {
                    if jv > nb {
                        return Err(Error::Params("j must not exceed N".into()));
                    }
                    partition::enumerate_two_color(
                        n,
                        Some(jv as u64),
                        TwoColorConstraint::MaxGreenAtMost(nb - jv),
                    )
                }
            };
            let right: Vec<String> = pairs.iter().map(|p| p.to_string()).collect();
            Ok((
                format!("parts <= {nb} with O = {n}"),
                left,
                format!("two-color partitions of {n}"),
                right,
            ))
        }
        "parts-leq-j" | "E-two-color" => {
            let jv = need_j()?;
            let class = if identity == "parts-leq-j" {
                PartitionClass::Distinct
            } else {
                PartitionClass::Ordinary
            };
            let filter =
                ClassFilter::new(class, Cap::EvenSum(n)).with_max_part((n + jv as u64) as u32);
            let left: Vec<String> = partition::enumerate(&filter)?
                .into_iter()
                .filter(|p| {
                    let s = p.stats();
                    s.even_sum == n && s.gamma == jv as u64
                })
                .map(|p| p.to_string())
                .collect();
            let (right_title, right): (String, Vec<String>) = if identity == "parts-leq-j" {
                let f =
                    ClassFilter::new(PartitionClass::Ordinary, Cap::Size(n)).with_max_part(jv);
                (
                    format!("partitions of {n} into parts <= {jv}"),
                    partition::enumerate(&f)?
                        .into_iter()
                        .filter(|p| p.size() == n)
                        .map(|p| p.to_string())
                        .collect(),
                )
            } else {
                (
                    format!("two-color partitions of {n} with red parts <= {jv}"),
                    partition::enumerate_two_color(
                        n,
                        None,
                        TwoColorConstraint::RedPartsAtMost(jv),
                    )
                    .iter()
                    .map(|p| p.to_string())
                    .collect(),
                )
            };
            Ok((format!("E = {n} and gamma = {jv}"), left, right_title, right))
        }
        other => Err(Error::Params(format!(
            "{other:?} has no table; counting families are hook-count, hook-refined, two-color, two-color-refined, parts-leq-j, E-two-color"
        ))),
    }
}

fn cmd_table(
    identity: &str,
    n: u64,
    n_bound: Option<u32>,
    j: Option<u32>,
    output: OutputArgs,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let (lhs_title, lhs, rhs_title, rhs) = table_sides(identity, n, n_bound, j)?;
    let mut w = writer(&output.out)?;
    match output.format {
        Format::Json => {
            let value = serde_json::json!({
                "identity": identity,
                "lhs": { "title": lhs_title, "count": lhs.len(), "members": lhs },
                "rhs": { "title": rhs_title, "count": rhs.len(), "members": rhs },
            });
            serde_json::to_writer_pretty(&mut w, &value)?;
            writeln!(w)?;
        }
        Format::Text => {
            writeln!(w, "{lhs_title}: {}", lhs.len())?;
            for m in &lhs {
                writeln!(w, "  {m}")?;
            }
            writeln!(w, "{rhs_title}: {}", rhs.len())?;
            for m in &rhs {
                writeln!(w, "  {m}")?;
            }
            writeln!(
                w,
                "counts {}",
                if lhs.len() == rhs.len() {
                    "match"
                } else {
                    "DIFFER"
                }
            )?;
        }
    }
    Ok(if lhs.len() == rhs.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_bijection(
    partition: &str,
    j: u32,
    n_bound: Option<u32>,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let pi = Partition::parse(partition)?;
    if let Some(nb) = n_bound {
        if pi.first_part() + j > nb {
            return Err(Box::new(Error::Params(format!(
                "largest part {} exceeds N - j = {}",
                pi.first_part(),
                nb.saturating_sub(j)
            ))));
        }
    }
    let mu = bijection::embed(&pi, j)?;
    let nu = bijection::sylvester(&mu);
    let s = nu.stats();
    println!("pi    = {pi}");
    println!("pi_o  = {mu}");
    println!("pi_d  = {nu}");
    println!("gamma(pi_d) = {}  (column height j = {j})", s.gamma);
    println!("E(pi_d)     = {}  (size of pi = {})", s.even_sum, pi.size());
    match n_bound {
        Some(nb) => println!("max(pi_d)   = {}  (bound N = {nb})", nu.first_part()),
        None => println!("max(pi_d)   = {}", nu.first_part()),
    }
    let back = bijection::sylvester_inverse(&nu)?;
    if back.partition() != mu.partition() {
        eprintln!("internal error: inverse does not round-trip");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
