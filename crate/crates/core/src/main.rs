use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ekl::cli::{error_json, render_pretty, run, Command, JobSpec};
use ekl::{Error, ErrorClass};

/// Exact EKL classes, local A1-degrees and arithmetic Milnor numbers.
///
/// Jobs are JSON objects read from --input or stdin. Output is JSON unless
/// --pretty is given. Exit codes: 0 ok, 1 parse error, 2 mathematical
/// error, 3 internal error.
#[derive(Parser, Debug)]
#[command(name = "ekl", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Field override: QQ, RR, Fp:<p> or Qp:<p>.
    #[arg(long, global = true)]
    field: Option<String>,

    /// Read the job from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Human-readable output.
    #[arg(long, global = true, conflicts_with = "json")]
    pretty: bool,

    /// JSON output (the default).
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// EKL class of a map at a rational zero.
    Ekl,
    /// Arithmetic Milnor number of a function at the origin.
    Milnor,
    /// Arithmetic type of a node at a closed point.
    NodeType,
    /// Local degree at an etale closed point.
    DegreeEtale,
    /// Sum of local degrees over one or several fibers.
    FiberSum,
    /// Invariants of a Gram matrix.
    Classify,
    /// Regression table for the ADE singularities.
    AdeTable,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Ekl => Command::Ekl,
            Cmd::Milnor => Command::Milnor,
            Cmd::NodeType => Command::NodeType,
            Cmd::DegreeEtale => Command::DegreeEtale,
            Cmd::FiberSum => Command::FiberSum,
            Cmd::Classify => Command::Classify,
            Cmd::AdeTable => Command::AdeTable,
        }
    }
}

fn read_job(cli: &Cli, cmd: Command) -> Result<JobSpec, Error> {
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?,
        None if cmd == Command::AdeTable => String::new(),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    JobSpec::from_json(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd: Command = cli.command.into();
    let result = read_job(&cli, cmd).and_then(|job| run(cmd, &job, cli.field.as_deref()));
    let (value, code) = match result {
        Ok(v) => (v, 0),
        Err(e) => {
            let code = match e.class() {
                ErrorClass::Parse => 1,
                ErrorClass::Math => 2,
                ErrorClass::Internal => 3,
            };
            (error_json(&e), code)
        }
    };
    if cli.pretty {
        print!("{}", render_pretty(cmd, &value));
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    }
    ExitCode::from(code)
}
