use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use toric_elliptic_cli::job::{exit, run_job, Command, JobSpec};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Validate,
    Genus,
    Equivariant,
    Rigidity,
    Vanishing,
    Blowup,
    Singular,
    Limit,
    Suite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Exact elliptic genera of toric varieties and pairs.
#[derive(Parser, Debug)]
#[command(name = "toric-ell", version)]
struct Args {
    command: Cmd,

    /// Fan/pair description file.
    input: Option<PathBuf>,

    /// Truncation order in q.
    #[arg(long)]
    order: Option<usize>,

    /// One-parameter subgroup, e.g. "1,2".
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    xi: Option<Vec<i64>>,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Extra interpolation checkpoints per q-order.
    #[arg(long, default_value_t = 3)]
    validation_extra: usize,

    /// Maximal cone to blow up, as ray indices.
    #[arg(long, value_delimiter = ',')]
    cone: Option<Vec<usize>>,

    /// Rays of the cone whose sum is the new ray (defaults to the whole cone).
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<usize>>,

    /// Seed for the randomized acceptance inputs.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Cmd::Validate => Command::Validate,
        Cmd::Genus => Command::Genus,
        Cmd::Equivariant => Command::Equivariant,
        Cmd::Rigidity => Command::Rigidity,
        Cmd::Vanishing => Command::Vanishing,
        Cmd::Blowup => Command::Blowup,
        Cmd::Singular => Command::Singular,
        Cmd::Limit => Command::Limit,
        Cmd::Suite => Command::Suite,
    };
    let spec = JobSpec {
        command,
        input: args.input,
        order: args.order,
        xi: args.xi,
        validation: args.validation_extra,
        cone: args.cone,
        subset: args.subset,
        seed: args.seed,
    };
    let outcome = run_job(&spec);
    let failed = outcome.exit != exit::OK && outcome.exit != exit::POLE;
    let body = match args.format {
        Format::Structured => format!("{}\n", serde_json::to_string_pretty(&outcome.structured).expect("json")),
        Format::Text => outcome.text.clone(),
    };
    if failed && args.format == Format::Text {
        let _ = std::io::stderr().write_all(body.as_bytes());
    } else {
        // A closed pipe downstream is not an error.
        let _ = std::io::stdout().write_all(body.as_bytes());
        if failed {
            if let Some(msg) = outcome.structured.get("error").and_then(|e| e.get("message")) {
                eprintln!("error: {}", msg.as_str().unwrap_or_default());
            }
        }
    }
    ExitCode::from(outcome.exit as u8)
}
