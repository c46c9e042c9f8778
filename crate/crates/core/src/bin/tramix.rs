use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tramix::cli::{self, CliError, MixCommand, OutputFormat, RunConfig};
use tramix::mixture::{SetOp, DEFAULT_MAX_KBITS};

#[derive(Parser)]
#[command(name = "tramix", version, about = "Triple-row-activation substrate simulator and Mixture tools")]
struct Args {
    /// Subarray rows.
    #[arg(long, global = true, default_value_t = 16)]
    rows: usize,
    /// Subarray width in bits.
    #[arg(long, global = true, default_value_t = 64)]
    width: usize,
    /// Seed for randomized demos.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// `text` or `json` (one JSON object per line).
    #[arg(long, global = true, default_value = "text")]
    format: OutputFormat,
    /// Largest accepted universe exponent K.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_KBITS)]
    kbits_cap: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a micro-op trace (`-` reads standard input).
    Run { trace: PathBuf },
    /// Lower a boolean s-expression to a micro-op trace.
    Compile {
        expr: String,
        /// Variable rows, e.g. `a=5,b=6`. Defaults to consecutive DATA rows.
        #[arg(long)]
        bind: Option<String>,
        /// Input bits, e.g. `a=1,b=0`; adds WRITE/READ lines around the program.
        #[arg(long)]
        assign: Option<String>,
    },
    /// Compare substrate set algebra with per-value queries on random sets.
    DemoDuality {
        #[arg(long, default_value_t = 8)]
        kbits: u32,
    },
    /// Operate on MIX1 files.
    Mix {
        #[command(subcommand)]
        action: MixAction,
    },
}

#[derive(Subcommand)]
enum MixAction {
    New { file: PathBuf, #[arg(long)] kbits: u32, values: Vec<u64> },
    Insert { file: PathBuf, values: Vec<u64> },
    Contains { file: PathBuf, value: u64 },
    Rank { file: PathBuf, value: u64 },
    Select { file: PathBuf, k: u64 },
    Union { a: PathBuf, b: PathBuf, out: PathBuf },
    Intersect { a: PathBuf, b: PathBuf, out: PathBuf },
    Difference { a: PathBuf, b: PathBuf, out: PathBuf },
    Show { file: PathBuf },
}

impl From<MixAction> for MixCommand {
    fn from(action: MixAction) -> Self {
        match action {
            MixAction::New { file, kbits, values } => MixCommand::New { path: file, kbits, values },
            MixAction::Insert { file, values } => MixCommand::Insert { path: file, values },
            MixAction::Contains { file, value } => MixCommand::Contains { path: file, value },
            MixAction::Rank { file, value } => MixCommand::Rank { path: file, value },
            MixAction::Select { file, k } => MixCommand::Select { path: file, k },
            MixAction::Union { a, b, out } => MixCommand::Combine { op: SetOp::Union, a, b, out },
            MixAction::Intersect { a, b, out } => MixCommand::Combine { op: SetOp::Intersect, a, b, out },
            MixAction::Difference { a, b, out } => MixCommand::Combine { op: SetOp::Difference, a, b, out },
            MixAction::Show { file } => MixCommand::Show { path: file },
        }
    }
}

fn read_input(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
    }
}

fn dispatch(command: Command, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Run { trace } => cli::cmd_run(&read_input(&trace)?, cfg, out).map(drop),
        Command::Compile { expr, bind, assign } => {
            cli::cmd_compile(&expr, bind.as_deref(), assign.as_deref(), cfg, out).map(drop)
        }
        Command::DemoDuality { kbits } => cli::cmd_demo_duality(kbits, cfg, out).map(drop),
        Command::Mix { action } => cli::cmd_mix(&action.into(), cfg, out),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = RunConfig {
        rows: args.rows,
        width: args.width,
        seed: args.seed,
        format: args.format,
        kbits_cap: args.kbits_cap,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(args.command, &cfg, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let _ = out.flush();
            let _ = err.report(cfg.format, &mut io::stderr());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
