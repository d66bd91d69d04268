use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parity_lab::arith::Place;
use parity_lab::fields::{Sign, DEFAULT_BOUND};
use parity_lab_cli::batch::run_batch;
use parity_lab_cli::commands::execute;
use parity_lab_cli::{CliError, CurveInput, Format, Registry, Report, Request};

#[derive(Parser)]
#[command(name = "parity-lab", version, about = "Exact parity computations for elliptic curves over Q")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// `a1,a2,a3,a4,a6` or `tt:a,b`
    #[arg(long, allow_hyphen_values = true)]
    curve: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i128>,
    #[arg(long)]
    p: Option<u128>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: i128,
    /// `inf` or a prime
    #[arg(long)]
    place: Option<Place>,
    /// twist-search mode
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// sign of m for split-all-bad
    #[arg(long, value_enum)]
    sign: Option<SignArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    SplitAllBad,
    WeakApprox,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Negative,
    Positive,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants, conductor and local data
    Curve(Common),
    /// Global root number, and over Q(sqrt m) with --m
    Rootnumber(Common),
    /// Cassels product and per-place identity for a 2-torsion model
    Parity(Common),
    /// Quadratic field search
    TwistSearch(Common),
    /// Rank-growth certificate
    Larsen(Common),
    /// Run a command over every curve in a file, as JSON lines
    Batch {
        #[arg(long)]
        batch: String,
        /// command applied to each line
        #[arg(long, default_value = "curve")]
        command: String,
        #[command(flatten)]
        common: Common,
    },
}

fn request(c: &Common) -> Result<Request, CliError> {
    let curve = match &c.curve {
        Some(s) => Some(s.parse::<CurveInput>().map_err(CliError::from)?),
        None => None,
    };
    Ok(Request {
        curve,
        m: c.m,
        p: c.p,
        r: c.r,
        bound: c.bound,
        place: c.place,
        mode: c.mode.map(|m| match m {
            Mode::SplitAllBad => "split-all-bad".to_string(),
            Mode::WeakApprox => "weak-approx".to_string(),
        }),
        sign: c.sign.map(|s| match s {
            SignArg::Negative => Sign::Negative,
            SignArg::Positive => Sign::Positive,
        }),
    })
}

fn finish(report: &Report, code: i32, format: Format) -> ExitCode {
    // a closed pipe downstream is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", report.render(format));
    if let Some(err) = &report.error {
        eprintln!("parity-lab: {}", err.message);
    }
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let registry = Registry::default();
    let (name, common) = match &cli.command {
        Cmd::Curve(c) => ("curve", c),
        Cmd::Rootnumber(c) => ("rootnumber", c),
        Cmd::Parity(c) => ("parity", c),
        Cmd::TwistSearch(c) => ("twist-search", c),
        Cmd::Larsen(c) => ("larsen", c),
        Cmd::Batch {
            batch,
            command,
            common,
        } => {
            let Some(cmd) = registry.get(command) else {
                eprintln!(
                    "parity-lab: unknown command `{command}` (known: {})",
                    registry.names().join(", ")
                );
                return ExitCode::from(2);
            };
            let text = match std::fs::read_to_string(batch) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("parity-lab: cannot read {batch}: {e}");
                    return ExitCode::from(2);
                }
            };
            let template = match request(common) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("parity-lab: {e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            };
            let outcome = run_batch(cmd, &template, &text);
            let _ = write!(std::io::stdout().lock(), "{}", outcome.to_json_lines());
            return ExitCode::from(outcome.exit_code as u8);
        }
    };
    let cmd = registry.get(name).expect("every subcommand is registered");
    match request(common) {
        Ok(req) => {
            let (report, code) = execute(cmd, &req);
            finish(&report, code, cli.format)
        }
        Err(e) => {
            let inputs = serde_json::json!({ "curve": common.curve });
            finish(&Report::failed(name, inputs, &e), e.exit_code(), cli.format)
        }
    }
}
