//! The `statman` command line.
//!
//! Exit codes: 0 for yes or pass, 1 for no or fail, 2 for usage, parse and
//! type errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use statman_core::cert::{from_json, to_json};
use statman_core::classify::hierarchy_class;
use statman_core::decide::{decide, Relation};
use statman_core::enumerate::Enumerator;
use statman_core::normalize::lnf_at;
use statman_core::par::Execution;
use statman_core::synth::witness;
use statman_core::syntax::{parse_term, parse_type, print_term};
use statman_core::verify::{check_injective, validate_certificate, VerifyConfig};
use statman_core::{Context, SimpleType};

#[derive(Parser, Debug)]
#[command(name = "statman", version, about = "Reducibility of simple types: classes, decisions and witnesses")]
pub struct Cli {
    /// Worker threads for verification; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the hierarchy class of a type.
    Classify { ty: String },
    /// Say whether a type has a closed inhabitant.
    Inhabited { ty: String },
    /// Decide `A <= B` for a relation.
    Decide {
        #[arg(long)]
        rel: Relation,
        a: String,
        b: String,
    },
    /// Synthesize a certificate for `A <= B`.
    Witness {
        #[arg(long)]
        rel: Relation,
        a: String,
        b: String,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check injectivity on this many source inhabitants.
        #[arg(long)]
        verify: Option<usize>,
    },
    /// List the closed long normal inhabitants of a type.
    Enumerate {
        ty: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Validate a certificate and check its injectivity.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Print the long normal form of a closed term.
    Normalize {
        #[arg(long = "type")]
        ty: String,
        term: String,
    },
}

/// A failure that maps to exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn ty(s: &str) -> Result<SimpleType, Usage> {
    parse_type(s).map_err(|e| Usage(format!("bad type `{s}`: {e}")))
}

fn verdict(out: &mut dyn Write, yes: bool) -> Result<i32, Usage> {
    writeln!(out, "{}", if yes { "yes" } else { "no" })?;
    Ok(if yes { 0 } else { 1 })
}

fn config(samples: usize, execution: Execution) -> VerifyConfig {
    VerifyConfig {
        sample_limit: samples,
        execution,
        ..VerifyConfig::default()
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Usage> {
    let execution = match cli.jobs {
        Some(1) => Execution::Sequential,
        _ => Execution::Parallel,
    };
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.jobs.filter(|&n| n > 1) {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Classify { ty: t } => {
            writeln!(out, "{}", hierarchy_class(&ty(&t)?))?;
            Ok(0)
        }
        Command::Inhabited { ty: t } => verdict(out, ty(&t)?.is_inhabited()),
        Command::Decide { rel, a, b } => verdict(out, decide(rel, &ty(&a)?, &ty(&b)?)),
        Command::Witness { rel, a, b, out: path, verify } => {
            let (a, b) = (ty(&a)?, ty(&b)?);
            let cert = match witness(rel, &a, &b) {
                Ok(c) => c,
                Err(e) => {
                    writeln!(err, "{e}")?;
                    return verdict(out, false);
                }
            };
            let doc = to_json(&cert);
            let report_to_err = path.is_none();
            match &path {
                Some(p) => fs::write(p, doc + "\n")?,
                None => writeln!(out, "{doc}")?,
            }
            let Some(n) = verify else { return Ok(0) };
            let reports = [validate_certificate(&cert), check_injective(&cert, &config(n, execution))];
            let sink: &mut dyn Write = if report_to_err { err } else { out };
            for r in &reports {
                writeln!(sink, "{r}")?;
            }
            Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
        }
        Command::Enumerate { ty: t, max_size, count_only } => {
            let t = ty(&t)?;
            let mut en = Enumerator::new(Context::empty());
            if count_only {
                writeln!(out, "{}", en.count_up_to(&t, max_size))?;
            } else {
                for m in en.up_to(&t, max_size) {
                    writeln!(out, "{}", print_term(&m))?;
                }
            }
            Ok(0)
        }
        Command::Verify { cert, samples } => {
            let text = fs::read_to_string(&cert).map_err(|e| Usage(format!("{}: {e}", cert.display())))?;
            let cert = from_json(&text)?;
            let reports = [validate_certificate(&cert), check_injective(&cert, &config(samples, execution))];
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
        }
        Command::Normalize { ty: t, term } => {
            let t = ty(&t)?;
            let m = parse_term(&term).map_err(|e| Usage(format!("bad term: {e}")))?;
            let n = lnf_at(&m, &t, &Context::empty())?;
            writeln!(out, "{}", print_term(&n))?;
            Ok(0)
        }
    }
}

/// Runs the command line on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
