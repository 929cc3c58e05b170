//! Command-line front end for `qmds-core`.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on invalid
//! input.

mod commands;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{decode_test, figure, profile, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qmds", version)]
#[command(about = "Vandermonde quantum MDS codes: subsystem entropies and erasure decoding")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code and print its JSON descriptor
    Construct {
        #[command(flatten)]
        params: ParamArgs,

        /// Write the output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy of every subsystem of R Q1..Qn
    Profile {
        #[command(flatten)]
        code: CodeArgs,

        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,

        /// Also report subsystems holding only part of R (no expected value)
        #[arg(long = "extended-R")]
        extended_r: bool,

        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the entropy formula with one or both oracles
    Verify {
        #[command(flatten)]
        code: CodeArgs,

        #[arg(long, value_enum, default_value_t = Oracle::Both)]
        oracle: Oracle,

        /// Run the product-state and entropy-inequality suites as well
        #[arg(long)]
        inequalities: bool,

        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate erasure decoding and report fidelities
    DecodeTest {
        #[command(flatten)]
        code: CodeArgs,

        /// Erased coded qudits, 1-based (exactly d-1 of them)
        #[arg(long, value_delimiter = ',', conflicts_with = "all")]
        erasures: Option<Vec<usize>>,

        /// Try every erasure pattern of size d-1 (the default)
        #[arg(long)]
        all: bool,

        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of (size, entropy) from the closed-form formula
    Figure {
        #[arg(long)]
        k: usize,

        #[arg(long)]
        d: usize,

        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Inline code parameters.
#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Code length
    #[arg(long)]
    pub n: Option<usize>,

    /// Source qudits
    #[arg(long)]
    pub k: Option<usize>,

    /// Minimum distance
    #[arg(long)]
    pub d: Option<usize>,

    /// Field modulus (default: smallest prime >= n)
    #[arg(long)]
    pub q: Option<u64>,

    /// Distinct evaluation points (default: 0,1,...,n-1)
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<u64>>,
}

/// A code given either as a descriptor file or inline.
#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    /// JSON code descriptor
    #[arg(long, conflicts_with_all = ["n", "k", "d", "q", "alphas"])]
    pub code: Option<PathBuf>,

    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    Lemma,
    Statevec,
    Both,
}

impl Oracle {
    pub fn lemma(self) -> bool {
        matches!(self, Oracle::Lemma | Oracle::Both)
    }

    pub fn statevec(self) -> bool {
        matches!(self, Oracle::Statevec | Oracle::Both)
    }
}

/// Why a command stopped.
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) => write!(f, "invalid input: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<qmds_core::Error> for CliError {
    fn from(e: qmds_core::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Text produced by a command plus its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            exit_code: EXIT_OK,
        }
    }

    fn checked(output: String, passed: bool) -> Self {
        Self {
            output,
            exit_code: if passed { EXIT_OK } else { EXIT_FAILED },
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Output goes to `stdout` or the `--out` file,
/// diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };

    let (result, out) = match &cli.command {
        Command::Construct { params, out } => (commands::construct(params), out),
        Command::Profile {
            code,
            format,
            extended_r,
            out,
        } => (
            commands::load_code(code).and_then(|c| profile(&c, *format, *extended_r)),
            out,
        ),
        Command::Verify {
            code,
            oracle,
            inequalities,
            out,
        } => (
            commands::load_code(code).and_then(|c| verify(&c, *oracle, *inequalities)),
            out,
        ),
        Command::DecodeTest {
            code,
            erasures,
            all: _,
            out,
        } => (
            commands::load_code(code).and_then(|c| decode_test(&c, erasures.as_deref())),
            out,
        ),
        Command::Figure { k, d, out } => (figure(*k, *d), out),
    };

    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let written = match out {
        Some(path) => std::fs::write(path, &outcome.output),
        None => stdout.write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INVALID;
    }
    outcome.exit_code
}
