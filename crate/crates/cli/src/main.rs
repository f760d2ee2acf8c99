use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dimcalc_core::dsl::{self, Outcome};
use dimcalc_core::harness::{run_suites, GeneratorConfig};

/// Dimension calculator for pullbacks and their tensor products.
#[derive(Parser)]
#[command(name = "dimcalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the queries of a program file.
    Eval {
        file: PathBuf,
        /// One JSON object per query on stdout.
        #[arg(long)]
        json: bool,
        /// Print the derivation of each answer.
        #[arg(long)]
        trace: bool,
    },
    /// Run the randomized consistency suites.
    Check {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, default_value_t = 8)]
        max_tdeg: u32,
        #[arg(long, default_value_t = 4)]
        max_dim: u32,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Eval { file, json, trace } => eval(&file, json, trace),
        Command::Check {
            seed,
            count,
            depth,
            max_tdeg,
            max_dim,
            json,
        } => check(GeneratorConfig {
            max_depth: depth,
            max_tdeg,
            max_dim,
            seed,
            count,
        }, json),
    }
}

fn eval(file: &PathBuf, json: bool, trace: bool) -> ExitCode {
    let name = file.display().to_string();
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{name}: error: {e}");
            return ExitCode::from(1);
        }
    };
    let outcome = match dsl::run(&src) {
        Ok(o) => o,
        Err(d) => {
            eprintln!("{}", d.render(&name));
            if !d.expected.is_empty() {
                eprintln!("  expected: {}", d.expected.join(", "));
            }
            return ExitCode::from(d.exit_code() as u8);
        }
    };
    if json {
        print_json(&outcome);
    } else {
        print!("{}", outcome.render_text(trace));
    }
    for d in outcome.diagnostics() {
        eprintln!("{}", d.render(&name));
    }
    ExitCode::from(outcome.exit_code() as u8)
}

fn print_json(outcome: &Outcome) {
    for r in outcome.successes() {
        println!("{}", serde_json::to_string(r).expect("results serialize"));
    }
}

fn check(cfg: GeneratorConfig, json: bool) -> ExitCode {
    let report = run_suites(&cfg);
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", report.render_text());
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
