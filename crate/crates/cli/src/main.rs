//! `ait`: command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 experiment
//! aborted because a formal system proved something false.

use std::path::PathBuf;
use std::process::ExitCode;

use ait_core::bitio::BitString;
use ait_core::hierarchy::Ordinal;
use ait_core::machines::MachineId;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

mod commands;
mod config;

use config::{FileConfig, RunConfig, Settings};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Abort(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Abort(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ait",
    version,
    about = "Desk-scale algorithmic information theory"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Emit a JSON report
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV rows, where the report is tabular
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads for sweeps (0 = all cores); results do not depend on it
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// TOML file with the same fields as the flags; flags win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Machine: c2, sd or total
    #[arg(long, global = true)]
    machine: Option<MachineId>,
    /// Largest program size in bits
    #[arg(long = "L", global = true)]
    max_bits: Option<usize>,
    /// Step budget per run
    #[arg(long = "B", global = true)]
    budget: Option<u64>,
    /// Bit cap for exact values in the fast-growing hierarchy
    #[arg(long, global = true)]
    cap_bits: Option<u64>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Code-word sets
    Bits {
        #[command(subcommand)]
        op: BitsOp,
    },
    /// Expression text and its bit encoding
    Sexpr {
        #[command(subcommand)]
        op: SexprOp,
    },
    /// Run one program
    Run(RunArgs),
    /// Complexity table of a sweep
    Sweep,
    /// Complexity upper bound of one string
    Complexity { x: BitString },
    /// Least programs per output
    Elegant,
    /// Algorithmic probability of one string
    Prob { x: BitString },
    /// Coding-theorem direction: prob(x) >= 2^-h(x)
    Coding,
    /// Chain-rule direction for pairs of short strings
    Chain(ChainArgs),
    /// Halting-probability bounds
    Omega {
        #[command(subcommand)]
        op: OmegaOp,
    },
    /// Block-frequency test
    Normality(NormalityArgs),
    /// Toy formal systems
    Fas {
        #[command(subcommand)]
        op: FasOp,
    },
    /// Fast-growing hierarchy
    Fgh {
        #[command(subcommand)]
        op: FghOp,
    },
    /// Diagonal function over a family of total programs
    Diag(DiagArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum BitsOp {
    /// Kraft sum of the words
    Kraft { words: Vec<BitString> },
    /// Whether no word is a proper prefix of another
    Prefixfree { words: Vec<BitString> },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SexprOp {
    /// Canonical text and size
    Parse { text: String },
    /// Bits of an expression
    Encode { text: String },
    /// Expression from the front of a bit string
    Decode { bits: BitString },
}

#[derive(Debug, Args, Serialize)]
struct RunArgs {
    /// Raw program bits
    #[arg(long, conflicts_with_all = ["prefix", "payload"])]
    raw: Option<BitString>,
    /// Program prefix as expression text
    #[arg(long)]
    prefix: Option<String>,
    /// Payload bits after the prefix
    #[arg(long, requires = "prefix")]
    payload: Option<BitString>,
    /// Aux channel contents
    #[arg(long)]
    aux: Option<BitString>,
    /// Step budget (defaults to --B)
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
struct ChainArgs {
    /// Pairs of strings up to this length
    #[arg(long, default_value_t = 2)]
    max_len: usize,
    /// Sweep size for h(y|x*)
    #[arg(long, default_value_t = 32)]
    relative_bits: usize,
    /// Sweep size for pair outputs
    #[arg(long, default_value_t = 48)]
    joint_bits: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum OmegaOp {
    /// Lower bound from the programs found at (L, B)
    Lower {
        #[arg(long)]
        emit_bits: Option<usize>,
    },
    /// Exact value for the total machine capped at L bits
    Exact {
        #[arg(long)]
        emit_bits: Option<usize>,
    },
    /// First k digits of the capped value
    Bits {
        #[arg(long)]
        k: usize,
    },
    /// Decide halting up to k bits from k digits of the capped value
    Oracle {
        /// The digits; defaults to the true first k digits
        #[arg(long)]
        kbits: Option<BitString>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = ait_core::omega::DEFAULT_ORACLE_GUARD)]
        guard: u64,
    },
    /// Sum of 2^-h(n) for n = 1..N
    DoublePrime {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Args, Serialize)]
struct NormalityArgs {
    /// String to test; defaults to digits of the capped value
    #[arg(long)]
    bits: Option<BitString>,
    /// Digits of the capped value to test when --bits is absent
    #[arg(long, default_value_t = 64)]
    digits: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0.1)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
enum System {
    Sound,
    Unsound,
    Empty,
    OmegaBits,
}

#[derive(Debug, Args, Serialize)]
struct FasArgs {
    /// A bundled system
    #[arg(long, value_enum, default_value = "sound")]
    system: System,
    /// Custom enumerator prefix, replacing --system
    #[arg(long)]
    enumerator: Option<String>,
    #[arg(long, requires = "enumerator")]
    payload: Option<BitString>,
    /// Machine that runs a custom enumerator
    #[arg(long, default_value = "total")]
    fas_machine: MachineId,
    /// Digits stated by the omega-bits system
    #[arg(long, default_value_t = 8)]
    omega_k: usize,
    /// Flip this digit in the omega-bits system
    #[arg(long)]
    flip: Option<usize>,
    /// Step budget for enumerators and the Berry driver
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Size cap of the exhaustive elegance oracle
    #[arg(long, default_value_t = ait_core::incompleteness::DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FasOp {
    Theorems(FasArgs),
    Berry(FasArgs),
    Ceiling(FasArgs),
    Omegabits(FasArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FghOp {
    /// f_alpha(n)
    Eval {
        #[arg(long)]
        ordinal: Ordinal,
        #[arg(long)]
        n: u64,
    },
    /// Compare f_alpha and f_beta at points
    Dominate {
        #[arg(long)]
        alpha: Ordinal,
        #[arg(long)]
        beta: Ordinal,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        points: Vec<u64>,
    },
}

#[derive(Debug, Args, Serialize)]
struct DiagArgs {
    /// Use the family f_i(n) = (i+1)n with this many members
    #[arg(long, default_value_t = 3)]
    members: usize,
    /// Custom family: expressions in the parameter atom n, separated by ';'
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: u64,
}

impl Command {
    fn name(&self) -> String {
        let name = match self {
            Command::Bits {
                op: BitsOp::Kraft { .. },
            } => "bits kraft",
            Command::Bits {
                op: BitsOp::Prefixfree { .. },
            } => "bits prefixfree",
            Command::Sexpr {
                op: SexprOp::Parse { .. },
            } => "sexpr parse",
            Command::Sexpr {
                op: SexprOp::Encode { .. },
            } => "sexpr encode",
            Command::Sexpr {
                op: SexprOp::Decode { .. },
            } => "sexpr decode",
            Command::Run(_) => "run",
            Command::Sweep => "sweep",
            Command::Complexity { .. } => "complexity",
            Command::Elegant => "elegant",
            Command::Prob { .. } => "prob",
            Command::Coding => "coding",
            Command::Chain(_) => "chain",
            Command::Omega {
                op: OmegaOp::Lower { .. },
            } => "omega lower",
            Command::Omega {
                op: OmegaOp::Exact { .. },
            } => "omega exact",
            Command::Omega {
                op: OmegaOp::Bits { .. },
            } => "omega bits",
            Command::Omega {
                op: OmegaOp::Oracle { .. },
            } => "omega oracle",
            Command::Omega {
                op: OmegaOp::DoublePrime { .. },
            } => "omega double-prime",
            Command::Normality(_) => "normality",
            Command::Fas {
                op: FasOp::Theorems(_),
            } => "fas theorems",
            Command::Fas {
                op: FasOp::Berry(_),
            } => "fas berry",
            Command::Fas {
                op: FasOp::Ceiling(_),
            } => "fas ceiling",
            Command::Fas {
                op: FasOp::Omegabits(_),
            } => "fas omegabits",
            Command::Fgh {
                op: FghOp::Eval { .. },
            } => "fgh eval",
            Command::Fgh {
                op: FghOp::Dominate { .. },
            } => "fgh dominate",
            Command::Diag(_) => "diag",
        };
        name.to_string()
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let file = match &cli.common.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let settings = Settings::merge(&cli.common, file)?;
    let rendered = commands::dispatch(&cli.command, &settings)?;
    let config = RunConfig {
        command: cli.command.name(),
        machine: rendered.machine,
        max_bits: settings.max_bits,
        budget: settings.budget,
        cap_bits: settings.cap_bits,
        format: settings.format,
        args: serde_json::to_value(&cli.command).expect("commands serialize"),
    };
    match settings.format {
        config::Format::Json => Ok(ait_core::report::to_json(&config, &rendered.report)),
        config::Format::Csv => rendered.csv.ok_or_else(|| {
            CliError::Usage(format!(
                "{} has no tabular form; use --json",
                config.command
            ))
        }),
        config::Format::Text => Ok(rendered.text),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
