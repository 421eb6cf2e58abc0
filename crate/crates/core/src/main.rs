use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use vshift::dynamics::{replay, steer_to_target, Configuration, Move, DEFAULT_RETRY_BUDGET};
use vshift::groups::VHom;
use vshift::thompson::VElement;
use vshift::verify::{cmd_verify, render_report, Report, SuiteConfig};
use vshift::words::{BinaryWord, Point};
use vshift::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

/// Exact computation in Thompson's group V and its induced actions.
#[derive(Parser)]
#[command(name = "vshift", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and print a JSON report.
    Verify {
        #[command(flatten)]
        config: ConfigArgs,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include per-suite wall time in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate an element on an eventually periodic point.
    Eval {
        /// JSON file holding the element as an array of {"u", "v"} pairs.
        #[arg(long)]
        elem: PathBuf,
        /// The point, as `pre(per)` or a JSON object {"pre", "per"}.
        #[arg(long)]
        point: String,
        /// Number of image bits to print.
        #[arg(long)]
        bits: usize,
    },
    /// Steer a configuration into target cylinders and certify the result.
    Steer {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Render a JSON report as text.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per suite; each suite has its own default.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 8)]
    max_word_len: usize,
    #[arg(long, default_value_t = 4)]
    max_window: usize,
    #[arg(long, default_value_t = 12)]
    max_depth: usize,
    #[arg(long, default_value_t = DEFAULT_RETRY_BUDGET)]
    budget: usize,
    /// Seconds.
    #[arg(long, default_value_t = 300)]
    time_limit: u64,
}

impl ConfigArgs {
    fn config(&self, timings: bool) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            trials: self.trials,
            max_word_len: self.max_word_len,
            max_window: self.max_window,
            max_depth: self.max_depth,
            retry_budget: self.budget,
            time_limit: self.time_limit,
            timings,
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted { .. } => EXIT_EXHAUSTED,
            Error::WitnessFailed(_) => EXIT_FAIL,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure {
        code: EXIT_FAIL,
        message: format!("{}: {e}", path.display()),
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn verify(config: SuiteConfig, out: Option<PathBuf>) -> Result<u8, Failure> {
    let report = cmd_verify(&config)?;
    let json = to_json(&report);
    match out {
        Some(path) => write(&path, &json)?,
        None => print!("{json}"),
    }
    let (text, code) = render_report(&report);
    eprint!("{text}");
    Ok(code as u8)
}

#[derive(Serialize)]
struct EvalOutput {
    bits: String,
    image: Point,
}

fn eval(elem: &Path, point: &str, bits: usize) -> Result<u8, Failure> {
    let f: VElement = parse_json(elem)?;
    let x: Point = point.parse()?;
    let image = f.act(&x);
    let streamed: Vec<u8> = (0..bits).map(|n| f.eval_bit(&x, n)).collect();
    if BinaryWord::from_bits(streamed.iter().copied()) != image.prefix(bits) {
        return Err(Failure {
            code: EXIT_FAIL,
            message: format!("bit evaluation disagrees with the image {image}"),
        });
    }
    let out = EvalOutput {
        bits: streamed.iter().map(|b| char::from(b'0' + b)).collect(),
        image,
    };
    print!("{}", to_json(&out));
    Ok(0)
}

#[derive(Deserialize)]
struct SteerInput {
    #[serde(flatten)]
    configuration: Configuration,
    targets: Vec<BinaryWord>,
    #[serde(default)]
    dhom: Option<VHom>,
}

#[derive(Serialize)]
struct Certificate {
    final_values: Vec<Point>,
    targets: Vec<BinaryWord>,
    memberships: Vec<bool>,
    all_hold: bool,
}

#[derive(Serialize)]
struct SteerOutput {
    moves: Vec<Move>,
    certificate: Certificate,
}

fn steer(input: &Path, out: &Path, config: SuiteConfig) -> Result<u8, Failure> {
    config.validate()?;
    let SteerInput {
        configuration,
        targets,
        dhom,
    } = parse_json(input)?;
    let dhom = dhom.unwrap_or_else(VHom::default_d);
    let moves = steer_to_target(
        &configuration,
        &targets,
        &dhom,
        config.retry_budget,
        config.seed,
    )?;
    let end = replay(&configuration, &moves, &dhom)?;
    let memberships = end.lands_in(&targets);
    let all_hold = memberships.iter().all(|&b| b);
    let output = SteerOutput {
        moves,
        certificate: Certificate {
            final_values: end.values().to_vec(),
            targets,
            memberships,
            all_hold,
        },
    };
    write(out, &to_json(&output))?;
    Ok(if all_hold { 0 } else { EXIT_FAIL })
}

fn report(input: &Path) -> Result<u8, Failure> {
    let report: Report = parse_json(input)?;
    let (text, code) = render_report(&report);
    print!("{text}");
    Ok(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            config,
            out,
            timings,
        } => verify(config.config(timings), out),
        Command::Eval { elem, point, bits } => eval(&elem, &point, bits),
        Command::Steer { input, out, config } => steer(&input, &out, config.config(false)),
        Command::Report { input } => report(&input),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
