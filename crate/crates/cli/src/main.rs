//! `repring`: command-line access to representation ring computations.

mod commands;
mod output;
mod source;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use repring::RingError;

use output::Format;
use source::RingArgs;

const AFTER_HELP: &str = "\
Elements are written with basis labels, integers (multiples of the identity),
+, -, *, ^ (non-negative powers), parentheses and a postfix ~ for the duality
involution, e.g. '2*J1 + J3~' or 'J2*(J3+J4)^2'. The star is written ~ so that
no shell quoting of * is needed after a label.

Ideals are proj, max, empty or an explicit set such as '{J4,J5}'.

Exit status: 0 on success, 1 when a computation fails, 2 on usage errors.
Set REPRING_CACHE_DIR to cache generated family tables as JSON.";

#[derive(Parser, Debug)]
#[command(name = "repring", version, about = "Exact computations in representation rings", after_help = AFTER_HELP)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomised steps (species search); output is deterministic per seed.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Built-in ring families.
    Families {
        #[command(subcommand)]
        action: FamiliesAction,
    },
    /// Build a ring and write it as JSON.
    Build {
        #[command(flatten)]
        ring: RingArgs,
        /// Output file (standard output if omitted).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Check the representation ring axioms.
    Verify {
        #[command(flatten)]
        ring: RingArgs,
        /// Sample budget for rings too large for exhaustive checks.
        #[arg(long, default_value_t = 2000)]
        budget: usize,
    },
    /// The gamma invariant of an element modulo an ideal.
    Gamma {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = commands::Method::Auto)]
        method: commands::Method,
        /// Length of the core dimension sequence.
        #[arg(long = "N", default_value_t = 64)]
        terms: usize,
    },
    /// Cores of the powers of an element.
    Core {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        target: Target,
        #[arg(long = "N", default_value_t = 12)]
        terms: usize,
    },
    /// Resolve an ideal literal and list its members.
    Ideal {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value = "proj")]
        ideal: String,
        /// Replace an explicit set by the ideal it generates.
        #[arg(long)]
        close: bool,
    },
    /// The species table.
    Species {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// The nil radical.
    Radical {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Adams operation psi^k on a(Z/p).
    Psi {
        #[arg(long)]
        p: u64,
        /// The exponent k of psi^k.
        #[arg(long)]
        power: u64,
        /// Element expression, e.g. 'J2' or '2*J3 - J1'.
        #[arg(long)]
        element: String,
    },
    /// The quotient map shat_ell from a(Z/p^(n+1)) to a(Z/p^n).
    Shat {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        ell: u64,
        /// Element of a(Z/p^(n+1)).
        #[arg(long)]
        element: String,
    },
    /// All species of a(Z/p^n) as composites of quotient maps.
    SpeciesChain {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
    /// Norms of an element.
    Norms {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        target: Target,
    },
    /// The multiplication table (compact block notation for cyclic groups).
    Table {
        #[command(flatten)]
        ring: RingArgs,
    },
}

#[derive(Subcommand, Debug)]
enum FamiliesAction {
    /// List the families and their parameters.
    List,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Element expression; `~` is the duality involution.
    #[arg(long)]
    pub element: String,
    /// proj, max, empty or a set such as '{J4,J5}'.
    #[arg(long, default_value = "proj")]
    pub ideal: String,
    /// Close an explicit ideal set instead of rejecting it when not closed.
    #[arg(long)]
    pub close: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(RingError),
    /// The command ran but its check failed; the report is still printed.
    Failed(String),
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Syntax { .. }
            | RingError::UnknownIndex(_)
            | RingError::Parse(_)
            | RingError::BadParams(_)
            | RingError::NotPrime(_)
            | RingError::NotPrimePower(_) => CliError::Usage(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let format = cli.format;
    let out = match cli.command {
        Command::Families { action: FamiliesAction::List } => commands::families(),
        Command::Build { ring, out } => return commands::build(&ring, out.as_deref()),
        Command::Verify { ring, budget } => {
            let (output, passed) = commands::verify(&ring, budget)?;
            let text = output.render(format);
            if !passed {
                print!("{text}");
                return Err(CliError::Failed("axiom check failed".into()));
            }
            return Ok(text);
        }
        Command::Gamma { ring, target, method, terms } => commands::gamma(&ring, &target, method, terms, cli.seed)?,
        Command::Core { ring, target, terms } => commands::core_sequence(&ring, &target, terms)?,
        Command::Ideal { ring, ideal, close } => commands::ideal(&ring, &ideal, close)?,
        Command::Species { ring } => commands::species(&ring, cli.seed)?,
        Command::Radical { ring } => commands::radical(&ring)?,
        Command::Psi { p, power, element } => commands::psi(p, power, &element)?,
        Command::Shat { p, n, ell, element } => commands::shat(p, n, ell, &element)?,
        Command::SpeciesChain { p, n } => commands::species_chain(p, n)?,
        Command::Norms { ring, target } => commands::norms(&ring, &target)?,
        Command::Table { ring } => commands::table(&ring)?,
    };
    Ok(out.render(format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
