use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use dgsymp::{run, CliError, InputDocument, Overrides, COMMANDS};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact computations with shifted symplectic structures on semi-free cdgas.
#[derive(Parser, Debug)]
#[command(name = "dgsymp", version)]
struct Args {
    /// One of: validate, dr, closed-forms, check-symplectic, quadform, qf-space,
    /// tangent-prsymp, cotangent-prsymp, cotangent-st, base-change, validate-coalgebroid
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(COMMANDS))]
    command: String,
    #[arg(long)]
    input: String,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i32>,
    #[arg(long)]
    max_weight: Option<u32>,
    #[arg(long)]
    max_polydeg: Option<u32>,
    /// Name of the symplectic form (defaults to the first form).
    #[arg(long)]
    omega: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    output: Format,
    /// Exit with status 4 when a result touched the truncation window.
    #[arg(long)]
    strict_window: bool,
}

fn execute(args: &Args) -> Result<(String, bool), CliError> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| CliError::Io { path: args.input.clone(), message: e.to_string() })?;
    let doc = InputDocument::parse(&text)?;
    let overrides = Overrides {
        p: args.p,
        n: args.n,
        max_weight: args.max_weight,
        max_polydeg: args.max_polydeg,
        omega: args.omega.clone(),
        alpha: args.alpha.clone(),
        beta: args.beta.clone(),
    };
    let report = run(&args.command, &doc, &overrides)?;
    let out = match args.output {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    Ok((out, report.window_limited))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok((out, limited)) => {
            print!("{out}");
            if limited && args.strict_window {
                eprintln!("result is window-limited");
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
