//! `crossprod`: build the rank-4 context, run the verification checks,
//! and print tables.
//!
//! Exit status: 0 when every asserted check passes, 1 when one fails,
//! 2 for usage or configuration errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crossprod::construction::{BuildOptions, Context, OmegaVariant};
use crossprod::group::is_prime;
use crossprod::report::{check_ids, is_check_id, Report, Status, Verifier, VerifyOptions};
use crossprod::serial::ContextSnapshot;

/// Primes at or above this size need `--long-running`.
const LONG_RUNNING_P: u32 = 5;

#[derive(Parser)]
#[command(name = "crossprod", version, about = "Exact lattice and cohomology checks for a rank-4 crossed-product construction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Odd prime p; the group is (Z/p)^4.
    #[arg(long, global = true, default_value_t = 3)]
    p: u32,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for subgroup sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// One family member per element of G12, repeats included.
    #[arg(long = "multiset-H", alias = "multiset-h", global = true)]
    multiset_h: bool,
    /// Use u12 = (s1-1)d2 - (s2-1)d1 instead of (s2-1)d1 - (s1-1)d2.
    #[arg(long, global = true)]
    alt_u12_sign: bool,
    /// Use w = c12 + c3 + c4 instead of c12 - c3 - c4.
    #[arg(long, global = true, conflicts_with = "control_omega")]
    alt_omega_sign: bool,
    /// Use w = -c3 - c4 (no rank-2 part).
    #[arg(long, global = true)]
    control_omega: bool,
    /// Allow p >= 5, where sweeps take hours.
    #[arg(long, global = true)]
    long_running: bool,
    /// Sweep only this many evenly spaced subgroups.
    #[arg(long, global = true)]
    sample: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Build the context and write its canonical snapshot.
    Build,
    /// Run verification checks.
    Verify {
        /// Run every check.
        #[arg(long, conflicts_with = "id")]
        all: bool,
        /// Run the named check (repeatable); see `list`.
        #[arg(long)]
        id: Vec<String>,
    },
    /// H1(H, M_w) for every subgroup H, with the expected cyclic order.
    H1Table,
    /// Class orders of (i+1)c12 - i*c3 - i*c4.
    ExponentTable,
    /// Non-degeneracy certificate, pairwise scan and control experiment.
    Degeneracy,
    /// List check ids.
    List,
}

enum Failure {
    Usage(String),
    Checks,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let c = &cli.common;
    if let Command::List = cli.command {
        let text: String = check_ids().map(|id| format!("{id}\n")).collect();
        return emit(c, &text);
    }
    if c.p == 2 {
        return Err(Failure::Usage("p = 2 is not supported: the construction needs an odd prime (p != 2)".into()));
    }
    if !is_prime(c.p) {
        return Err(Failure::Usage(format!("p = {} is not prime", c.p)));
    }
    if c.p >= LONG_RUNNING_P && !c.long_running {
        return Err(Failure::Usage(format!("p = {} takes hours; pass --long-running to proceed", c.p)));
    }
    let ids: Vec<String> = match &cli.command {
        Command::Verify { all, id } => {
            if !all && id.is_empty() {
                return Err(Failure::Usage("verify needs --all or at least one --id".into()));
            }
            if let Some(bad) = id.iter().find(|i| !is_check_id(i)) {
                return Err(Failure::Usage(format!("unknown check id {bad:?}; run `crossprod list`")));
            }
            if *all {
                check_ids().map(String::from).collect()
            } else {
                id.clone()
            }
        }
        Command::H1Table => vec!["h1-table".into()],
        Command::ExponentTable => vec!["exponent-table".into()],
        Command::Degeneracy => vec!["non-degenerate".into(), "degeneracy-scan".into(), "control".into()],
        Command::Build | Command::List => Vec::new(),
    };

    let omega = if c.alt_omega_sign {
        OmegaVariant::Alternate
    } else if c.control_omega {
        OmegaVariant::Control
    } else {
        OmegaVariant::Standard
    };
    let options = BuildOptions { multiset_family: c.multiset_h, alternate_u_sign: c.alt_u12_sign, omega };
    let start = Instant::now();
    let ctx = Context::build(c.p, options).map_err(|e| Failure::Usage(e.to_string()))?;
    let [q, mw, pr, m] = ctx.ranks();
    eprintln!("context p={} ranks Q={q} M_w={mw} P={pr} M={m} ({:.2?})", c.p, start.elapsed());
    let snapshot = ContextSnapshot::of(&ctx);

    if let Command::Build = cli.command {
        return emit(c, &snapshot.to_json());
    }

    let verifier = Verifier::new(&ctx, VerifyOptions { jobs: c.jobs, sample: c.sample });
    let mut checks = Vec::with_capacity(ids.len());
    for id in &ids {
        let t = Instant::now();
        let record = verifier.run(id).expect("validated id");
        eprintln!("[{}] {id}: {} ({:.2?})", record.status.label(), record.summary, t.elapsed());
        checks.push(record);
    }
    let failed = checks.iter().any(|r| r.status == Status::Fail);
    let report = Report::new(&ctx, snapshot.fingerprint(), checks);
    let text = match c.format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    };
    emit(c, &text)?;
    if failed {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

fn emit(c: &Common, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Usage(format!("cannot write output: {e}"));
    match &c.out {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(io),
    }
}
