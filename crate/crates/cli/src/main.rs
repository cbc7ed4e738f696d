use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cli::{AutOptions, Class, CliError, ConvertMode, Output};

#[derive(Parser)]
#[command(name = "autg", version, about = "Automorphism groups of interval, circle and permutation graphs")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Aut(G) as a group term, cross-checked by the oracle when n <= cap.
    Aut {
        #[arg(required_unless_present = "batch")]
        file: Option<PathBuf>,
        /// Process every *.el file in a directory.
        #[arg(long, conflicts_with_all = ["file", "dot"])]
        batch: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        class: Class,
        #[arg(long = "oracle-cap")]
        oracle_cap: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Write the decomposition tree as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Fail with exit 4 if the oracle cannot run.
        #[arg(long)]
        verify: bool,
    },
    /// Print the oracle's generators and order as JSON.
    Oracle {
        file: PathBuf,
        #[arg(long = "oracle-cap")]
        oracle_cap: Option<usize>,
    },
    /// Encode a connected non-cycle graph as a dimension-4 comparability graph.
    Dim4 {
        file: PathBuf,
        /// Directory for encoded.el, chains.txt and gadget.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "oracle-cap")]
        oracle_cap: Option<usize>,
    },
    /// Convert between interval graphs and trees with isomorphic groups.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ConvertMode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "oracle-cap")]
        oracle_cap: Option<usize>,
    },
    /// Count transitive orientations.
    CountTo {
        file: PathBuf,
        /// Compare against all 2^m edge directions (m <= 16).
        #[arg(long)]
        verify: bool,
    },
}

fn run(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Aut { file, batch, class, oracle_cap, json, dot, verify } => {
            let opts = AutOptions { class, cap: cli::cap_from_env(oracle_cap)?, json, dot, verify };
            match (batch, file) {
                (Some(dir), _) => cli::cmd_aut_batch(&dir, &opts),
                (None, Some(file)) => cli::cmd_aut(&file, &opts),
                (None, None) => unreachable!("clap requires a file or --batch"),
            }
        }
        Command::Oracle { file, oracle_cap } => cli::cmd_oracle(&file, cli::cap_from_env(oracle_cap)?),
        Command::Dim4 { file, out, oracle_cap } => {
            cli::cmd_dim4(&file, out.as_deref(), cli::cap_from_env_or(oracle_cap, cli::DIM4_DEFAULT_CAP)?)
        }
        Command::Convert { file, mode, out, oracle_cap } => {
            cli::cmd_convert(&file, mode, out.as_deref(), cli::cap_from_env(oracle_cap)?)
        }
        Command::CountTo { file, verify } => cli::cmd_count_to(&file, verify),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let out = run(args.command).unwrap_or_else(|e| Output {
        stderr: format!("error: {e}\n"),
        code: e.exit_code(),
        ..Output::default()
    });
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
