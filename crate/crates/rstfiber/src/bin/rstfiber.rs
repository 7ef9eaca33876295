use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use rstfiber::report::{
    analyze, emit_dot, emit_json, emit_picture, parse_q, run_sweep, InputSpec, Overrides,
};
use rstfiber::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Full report document.
    Json,
    /// Dual graph of the special fiber, Graphviz DOT.
    Dot,
    /// Cluster picture and invariants, plain text.
    Picture,
    /// Sweep over the declared one-parameter family.
    Csv,
}

/// Cluster pictures and special fibers of hyperelliptic curves y^2 = f(x)
/// over 2-adic fields, from the roots of f.
#[derive(Parser, Debug)]
#[command(name = "rstfiber", version, about)]
struct Args {
    /// Input description (JSON).
    #[arg(long)]
    input: PathBuf,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Override the working precision.
    #[arg(long)]
    precision: Option<u32>,

    /// Override the cap on t-improvement iterations.
    #[arg(long = "max-iters")]
    max_iters: Option<u32>,

    /// Override v(pi) for thickness scaling, e.g. 1 or 4/3.
    #[arg(long)]
    uniformizer: Option<String>,

    /// Worker threads for sweeps.
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Recorded in report metadata; no semantic effect.
    #[arg(long)]
    seed: Option<u64>,
}

fn run(args: &Args) -> Result<String> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Error::SchemaError(format!("read {}: {e}", args.input.display())))?;
    let overrides = Overrides {
        precision: args.precision,
        max_iterations: args.max_iters,
        uniformizer: args.uniformizer.as_deref().map(parse_q).transpose()?,
        seed: args.seed,
    };
    let input = InputSpec::from_json(&text)?.normalized(&overrides)?;
    match args.format {
        Format::Json => Ok(emit_json(&analyze(&input, args.seed)?.report)),
        Format::Dot => Ok(emit_dot(&analyze(&input, args.seed)?)),
        Format::Picture => Ok(emit_picture(&analyze(&input, args.seed)?)),
        Format::Csv => run_sweep(&input, args.jobs),
    }
}

fn main() {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            // a downstream `head` closing the pipe is normal termination
            if let Err(e) = io::stdout().write_all(out.as_bytes()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    std::process::exit(2);
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
