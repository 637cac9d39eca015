use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use mixmult_cli::error::EXIT_INPUT;
use mixmult_cli::{run, CliError, Command, Options, ProblemFile};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Table,
    Mixed,
    Fc,
    Verify,
    Hsm,
    Free,
    Difftest,
}

/// Exact mixed multiplicities of ideal families.
#[derive(Parser, Debug)]
#[command(name = "mm", version)]
struct Args {
    command: Cmd,
    /// Problem file (not used by `free` and `difftest`).
    problem: Option<PathBuf>,
    /// Mixed type, e.g. `0,1`.
    #[arg(long = "type", value_delimiter = ',')]
    ty: Option<Vec<u32>>,
    /// Verify every type.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    base0: Option<u32>,
    #[arg(long)]
    window: Option<u32>,
    #[arg(long)]
    retries: Option<u32>,
    /// Generators of the ideal H for `hsm`, comma separated.
    #[arg(long, value_delimiter = ',')]
    h: Option<Vec<String>>,
    /// Dimension of the regular base ring for `free`.
    #[arg(long)]
    d: Option<usize>,
    /// Block sizes for `free`, comma separated.
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<u32>>,
    /// Generators of J for `free` (default: the maximal ideal).
    #[arg(long = "J", value_delimiter = ',')]
    j: Option<Vec<String>>,
    /// 1-based blocks losing one variable each, for the `free` ledger.
    #[arg(long, value_delimiter = ',')]
    kill: Option<Vec<usize>>,
    /// Number of instances for `difftest`.
    #[arg(long)]
    count: Option<u64>,
    /// Also write the report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn command(c: Cmd) -> Command {
    match c {
        Cmd::Table => Command::Table,
        Cmd::Mixed => Command::Mixed,
        Cmd::Fc => Command::Fc,
        Cmd::Verify => Command::Verify,
        Cmd::Hsm => Command::Hsm,
        Cmd::Free => Command::Free,
        Cmd::Difftest => Command::Difftest,
    }
}

fn execute(args: &Args) -> Result<(serde_json::Value, i32), CliError> {
    let cmd = command(args.command);
    let file = match &args.problem {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
            Some(ProblemFile::parse(&text)?)
        }
        None if cmd.needs_problem() => return Err(CliError::input("missing problem file")),
        None => None,
    };
    let opts = Options {
        seed: args.seed,
        base0: args.base0,
        window: args.window,
        retries: args.retries,
        ty: args.ty.clone(),
        all: args.all,
        h: args.h.clone(),
        d: args.d,
        t: args.t.clone(),
        j: args.j.clone(),
        kill: args.kill.clone(),
        count: args.count,
    };
    let out = run(cmd, file.as_ref(), &opts)?;
    Ok((out.json, out.exit))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (json, code) = match execute(&args) {
        Ok(r) => r,
        Err(e) => (e.to_json(), e.exit),
    };
    let text = serde_json::to_string(&json).expect("reports serialize");
    println!("{text}");
    if let Some(path) = &args.json {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(code as u8)
}
