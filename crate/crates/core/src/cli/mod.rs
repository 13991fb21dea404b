//! Command-line front end.

pub mod commands;
pub mod report;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
pub use report::{Check, Format, Outcome, REPORT_SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "sl2cremona", version, about = "Exact checks of SL(2,Z) embeddings into the Cremona group")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Number of iterates (or steps for ρ-words).
    #[arg(long, global = true)]
    pub max_iterates: Option<usize>,
    /// Word-length bound for orbit checks.
    #[arg(long, global = true, default_value_t = 6)]
    pub depth: usize,
    /// Width of spectral-radius enclosures.
    #[arg(long, global = true, default_value = "1e-6")]
    pub tol: f64,
    /// Abort once a component exceeds this many terms.
    #[arg(long, global = true, default_value_t = crate::birmap::growth::DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, Default, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Rational function in `x`, e.g. `(x-2)/(x-3)`.
    #[arg(long = "P")]
    pub p: Option<String>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub mu: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Auto,
    Exact,
    Certified,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Matrix, trace and type of a word.
    Classify { word: String },
    /// Degrees of the iterates of θ(w).
    Degrees {
        family: String,
        word: String,
        #[command(flatten)]
        params: FamilyArgs,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Dynamical degree estimate and growth class of θ(w).
    Lambda {
        family: String,
        word: String,
        #[command(flatten)]
        params: FamilyArgs,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Run checks on a family, `picard` or `cayley`.
    Verify {
        target: String,
        #[command(flatten)]
        params: FamilyArgs,
        /// Picard case: `j1`, `j23`, `all` or a matrix tag such as `M6-i`.
        #[arg(long, default_value = "all")]
        case: String,
        #[arg(long, default_value_t = 12)]
        maxlen: usize,
    },
    /// ℓ-sequence, inequalities and spectral radius for ρ-words.
    PicardWord {
        #[arg(long)]
        case: String,
        /// e.g. `"1 2 2"`.
        #[arg(long, conflicts_with = "maxlen")]
        word: Option<String>,
        /// Sweep every word up to this length.
        #[arg(long)]
        maxlen: Option<usize>,
        /// Rounds of the word used by the growth certificate.
        #[arg(long, default_value_t = 4)]
        powers: usize,
        /// Also certify spectral radii in sweep mode.
        #[arg(long)]
        spectral: bool,
    },
    /// Solve for the unknown intersection numbers on the five-class lattice.
    GramDerive {
        #[arg(long, default_value = "all")]
        case: String,
    },
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    use commands::*;
    let c = &cli.common;
    match &cli.command {
        Command::Classify { word } => cmd_classify(word),
        Command::Degrees {
            family,
            word,
            params,
            method,
        } => cmd_degrees(family, word, params, *method, c),
        Command::Lambda {
            family,
            word,
            params,
            method,
        } => cmd_lambda(family, word, params, *method, c),
        Command::Verify {
            target,
            params,
            case,
            maxlen,
        } => cmd_verify(target, params, case, *maxlen, c),
        Command::PicardWord {
            case,
            word,
            maxlen,
            powers,
            spectral,
        } => cmd_picard_word(case, word.as_deref(), *maxlen, *powers, *spectral, c),
        Command::GramDerive { case } => cmd_gram_derive(case),
    }
}

/// Exit status: 0 when every check passed, 1 on a failed check or a
/// computation error, 2 on bad input.
pub fn run_with<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok(out) => (if out.passed() { 0 } else { 1 }, out.render(cli.common.format)),
        Err(e) => {
            let code = match e {
                CliError::Word(_) | CliError::Usage(_) | CliError::Picard(_) => 2,
                CliError::Embedding(crate::error::EmbeddingError::Spec(_)) => 2,
                _ => 1,
            };
            (code, format!("error: {e}\n"))
        }
    }
}

pub fn run() -> i32 {
    let (code, text) = run_with(std::env::args_os());
    if code == 0 || code == 1 && !text.starts_with("error:") {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    code
}
