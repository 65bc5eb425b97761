//! Command-line verifier for the Néron–Severi lattice of the Kummer surface
//! of a (1, k(k+1)/…)-style generically polarized Abelian surface: runs the
//! per-k verification suites, prints human-readable or JSON certificate
//! reports, and exposes each module operation as a subcommand.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 enumeration budget exceeded, 4 output I/O error.

mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kummer_lattice::ns::{build_ns_basis, KummerContext};
use kummer_lattice::report::VerificationReport;
use kummer_lattice::{Error as CoreError, DEFAULT_BUDGET};

use output::{render_report, write_output, Format};
use suites::SuiteSelection;

#[derive(Parser)]
#[command(
    name = "kummer",
    version,
    about = "Exact-arithmetic verification of Kummer-surface Néron–Severi lattices,\n\
             their double 16-curve configurations, isometries, and covers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Polarization parameter (the square is k(k+1)); must be >= 1
    #[arg(long)]
    k: i64,
    /// Distinguished node index in 1..=16
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// Run every node index t = 1..=16 instead of a single one
    #[arg(long, default_value_t = false)]
    all_t: bool,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Ceiling on candidates visited per bounded enumeration
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated subset of {ns,nikulin,isometry,covers}; empty for none
    #[arg(long)]
    suites: Option<String>,
    /// Number of recurrence steps in the rank-2 decomposition checks
    #[arg(long, default_value_t = 10)]
    m_max: usize,
    /// Perturb a companion class so a check must fail (self-test)
    #[arg(long, hide = true, default_value_t = false)]
    inject_fault: bool,
}

#[derive(Args)]
struct PellArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of recurrence steps to verify
    #[arg(long, default_value_t = 10)]
    m_max: usize,
}

#[derive(Args)]
struct SweepArgs {
    /// Smallest k (inclusive)
    #[arg(long)]
    k_min: i64,
    /// Largest k (inclusive)
    #[arg(long)]
    k_max: i64,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Ceiling on candidates visited per bounded enumeration
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run the selected verification suites for one k
    Verify(VerifyArgs),
    /// Run the full verification across a k-range and print summary rows
    Sweep(SweepArgs),
    /// Lattice structure: discriminant group and form, membership census
    Ns(CommonArgs),
    /// Second node configuration: nef/big certificates and model facts
    Nikulin(CommonArgs),
    /// Involutions, spectral data, discriminant actions, extensions
    Isometry(CommonArgs),
    /// Bidouble-cover invariants and singularity configurations
    Covers(CommonArgs),
    /// Pell solutions and rank-2 (-2)-class decompositions
    Pell(PellArgs),
    /// Glued unimodular rank-22 overlattice and extended isometries
    Glue(CommonArgs),
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("usage error: {msg}");
    ExitCode::from(2)
}

impl CommonArgs {
    fn validate(&self) -> Result<(), String> {
        if self.k < 1 {
            return Err(format!("--k must be a positive integer, got {}", self.k));
        }
        if !(1..=16).contains(&self.t) {
            return Err(format!("--t must lie in 1..=16, got {}", self.t));
        }
        Ok(())
    }

    fn node_indices(&self) -> Vec<usize> {
        if self.all_t {
            (1..=16).collect()
        } else {
            vec![self.t]
        }
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

/// Render, write, and turn a finished report plus optional mid-run error
/// into the documented exit code.
fn finish(
    common: &CommonArgs,
    mut report: VerificationReport,
    err: Option<CoreError>,
    started: Instant,
) -> ExitCode {
    report.runtime_ms = started.elapsed().as_millis() as u64;
    let rendered = render_report(&report, common.format());
    if let Err(e) = write_output(common.out.as_deref(), &rendered) {
        eprintln!("i/o error: {e}");
        return ExitCode::from(4);
    }
    if let Some(e) = err {
        eprintln!("aborted: {e}");
        return match e {
            CoreError::BudgetExceeded { .. } => ExitCode::from(3),
            _ => ExitCode::from(1),
        };
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_single(
    common: &CommonArgs,
    selection: &SuiteSelection,
    m_max: usize,
    inject_fault: bool,
) -> ExitCode {
    if let Err(msg) = common.validate() {
        return usage_error(&msg);
    }
    let started = Instant::now();
    let ctx = match KummerContext::new(common.k) {
        Ok(c) => c,
        Err(e) => return usage_error(&e.to_string()),
    };
    let basis = build_ns_basis(&ctx);
    let (report, err) = suites::run_verify(
        &basis,
        selection,
        &common.node_indices(),
        common.budget,
        m_max,
        inject_fault,
    );
    finish(common, report, err, started)
}

fn run_sweep(args: &SweepArgs) -> ExitCode {
    if args.k_min < 1 {
        return usage_error(&format!(
            "--k-min must be a positive integer, got {}",
            args.k_min
        ));
    }
    if args.k_min > args.k_max {
        return usage_error(&format!(
            "--k-min {} exceeds --k-max {}",
            args.k_min, args.k_max
        ));
    }
    let started = Instant::now();
    let (summary, err) = suites::run_sweep(args.k_min, args.k_max, args.budget);
    let format = match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let rendered = output::render_sweep(&summary, format, started.elapsed().as_millis() as u64);
    if let Err(e) = write_output(args.out.as_deref(), &rendered) {
        eprintln!("i/o error: {e}");
        return ExitCode::from(4);
    }
    if let Some(e) = err {
        eprintln!("aborted: {e}");
        return match e {
            CoreError::BudgetExceeded { .. } => ExitCode::from(3),
            _ => ExitCode::from(1),
        };
    }
    if summary.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify(args) => {
            let selection = match SuiteSelection::parse(args.suites.as_deref()) {
                Ok(s) => s,
                Err(msg) => return usage_error(&msg),
            };
            run_single(&args.common, &selection, args.m_max, args.inject_fault)
        }
        Command::Sweep(args) => run_sweep(args),
        Command::Ns(common) => run_single(common, &SuiteSelection::only("ns"), 10, false),
        Command::Nikulin(common) => {
            run_single(common, &SuiteSelection::only("nikulin"), 10, false)
        }
        Command::Isometry(common) => {
            run_single(common, &SuiteSelection::only("isometry"), 10, false)
        }
        Command::Covers(common) => run_single(common, &SuiteSelection::only("covers"), 10, false),
        Command::Pell(args) => {
            run_single(&args.common, &SuiteSelection::only("pell"), args.m_max, false)
        }
        Command::Glue(common) => run_single(common, &SuiteSelection::only("glue"), 10, false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_cover_dispatch() {
        for name in suites::ALL_SUITES {
            SuiteSelection::only(name);
        }
    }
}
