use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use treeinv::bench::{format_table, run_bench};
use treeinv::io::{mcspit_result, parse_instance_with_scale, riovspt_result, write_instance, Scale};
use treeinv::oracle::{generate_instance, verify_random, GeneratorConfig, TreeShape, DEFAULT_BUDGET};
use treeinv::{solve_mcspit, solve_riovspt, Status};

const EXIT_ERROR: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "treeinv",
    version,
    about = "Bottleneck Hamming inverse shortest-path solvers on trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Restricted inverse optimal value problem: P0 exactly D, all paths >= D.
    SolveRiovspt(SolveArgs),
    /// Minimum-cost interdiction: all root-leaf paths >= D by upgrading edges.
    SolveMcspit(SolveArgs),
    /// Write a random instance document.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "random-attachment")]
        shape: TreeShape,
        /// Scale written to the document; generated integers are stored as-is.
        #[arg(long, default_value_t = 1)]
        scale: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare both solvers with the exhaustive oracles on random instances.
    Verify {
        #[arg(long, default_value_t = 500)]
        count: u64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time both solvers on random trees of the given sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1000,3000,5000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the records as JSON to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// Read decimals at this scale instead of the document's.
    #[arg(long)]
    scale: Option<i64>,
    /// Write the result document here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(EXIT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn parse_scale(factor: i64) -> Result<Scale, String> {
    Scale::new(factor).ok_or_else(|| format!("scale {factor} is not a power of ten"))
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("stdout: {e}")),
    }
}

fn exit_for(status: Status) -> ExitCode {
    match status {
        Status::Infeasible => ExitCode::from(EXIT_INFEASIBLE),
        Status::Solved | Status::AlreadyOptimal => ExitCode::SUCCESS,
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::SolveRiovspt(args) => {
            let parsed = load(&args)?;
            let report = solve_riovspt(&parsed.instance).map_err(|e| e.to_string())?;
            let doc = riovspt_result(&parsed.instance, parsed.scale, &report);
            emit(args.output.as_ref(), &doc.to_json())?;
            Ok(exit_for(report.status))
        }
        Command::SolveMcspit(args) => {
            let parsed = load(&args)?;
            let report = solve_mcspit(&parsed.instance).map_err(|e| e.to_string())?;
            let doc = mcspit_result(&parsed.instance, parsed.scale, &report);
            emit(args.output.as_ref(), &doc.to_json())?;
            Ok(exit_for(report.status))
        }
        Command::Gen {
            n,
            seed,
            shape,
            scale,
            output,
        } => {
            let scale = parse_scale(scale)?;
            let config = GeneratorConfig::new(n, seed).with_shape(shape);
            let instance = generate_instance(&config).map_err(|e| e.to_string())?;
            emit(output.as_ref(), &write_instance(&instance, scale))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { count, max_n, seed } => {
            let summary = verify_random(count, max_n, seed, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            match summary.first_failure {
                None => {
                    println!("verify: {}/{} instances agree", summary.agreed, summary.checked);
                    Ok(ExitCode::SUCCESS)
                }
                Some(failure) => {
                    println!(
                        "verify: disagreement on instance {} after {} agreements: {}",
                        failure.index, summary.agreed, failure.reason
                    );
                    print!("{}", write_instance(&failure.instance, Scale::default()));
                    Ok(ExitCode::from(EXIT_ERROR))
                }
            }
        }
        Command::Bench {
            sizes,
            trials,
            seed,
            output,
        } => {
            let records = run_bench(&sizes, trials, seed).map_err(|e| e.to_string())?;
            print!("{}", format_table(&records));
            if let Some(path) = output {
                let json = serde_json::to_string_pretty(&records).map_err(|e| e.to_string())?;
                fs::write(&path, json + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load(args: &SolveArgs) -> Result<treeinv::io::ParsedInstance, String> {
    let text = fs::read_to_string(&args.instance).map_err(|e| format!("{}: {e}", args.instance.display()))?;
    let scale = args.scale.map(parse_scale).transpose()?;
    parse_instance_with_scale(&text, scale).map_err(|e| format!("{}: {e}", args.instance.display()))
}
