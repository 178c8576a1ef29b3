//! `thompson`: a calculator and verifier for Thompson's group F.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thompson_core::cayley::{Limits, DEFAULT_MAX_ELEMENTS};

use commands::{CliError, Report};

#[derive(Parser)]
#[command(name = "thompson", version, about = "Exact computations in Thompson's group F")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct Global {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for cached balls.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Stop searches after this many distinct elements.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS)]
    pub max_elements: usize,
    /// Stop searches after this many seconds.
    #[arg(long, global = true)]
    pub max_seconds: Option<f64>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RenderFormat {
    Ascii,
    Dot,
    Parens,
}

#[derive(Subcommand)]
pub enum Command {
    /// Length breakdown of an element.
    Len { element: String },
    /// Canonical diagram of a word or of any valid diagram.
    Normalize {
        element: String,
        /// Print the input diagram as parsed, before reduction.
        #[arg(long)]
        raw: bool,
    },
    /// Product `a b`.
    Mul { a: String, b: String },
    /// Inverse.
    Inv { element: String },
    /// A word of minimum length.
    Geodesic { element: String },
    /// Enumerate the ball of the given radius.
    Ball {
        radius: usize,
        /// Also list every element with its depth.
        #[arg(long)]
        list: bool,
    },
    /// Table of the convexity function up to the given radius.
    Convexity { radius: usize },
    /// Check the witness pair, the in-ball paths and the three-letter exits.
    Verify {
        #[arg(long)]
        n: usize,
        /// Include the restricted search.
        #[arg(long, conflicts_with = "examples_only")]
        full: bool,
        /// Only the in-ball example paths.
        #[arg(long)]
        examples_only: bool,
    },
    /// Trace the right foot along a path from a start element.
    AnalyzePath {
        start: String,
        word: String,
        /// Ball radius used for the in-ball column; defaults to the larger
        /// endpoint length.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Shortest path between two elements inside a ball.
    Restricted {
        u: String,
        v: String,
        #[arg(long)]
        radius: usize,
    },
    /// Explore the shifted pair for `n` inside `B_(2n+2)`; nothing is asserted.
    ShiftedPair { n: usize },
    /// Piecewise-linear map of an element.
    Plmap { element: String },
    /// Evaluate the piecewise-linear map at a dyadic rational.
    PlEval { element: String, point: String },
    /// Draw a diagram.
    Render {
        element: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: RenderFormat,
    },
    /// Randomized consistency checks driven by --seed.
    Sweep {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cancel = Arc::new(AtomicBool::new(false));
    {
        let cancel = cancel.clone();
        // Without a handler Ctrl-C still terminates the process.
        let _ = ctrlc::set_handler(move || cancel.store(true, Ordering::Relaxed));
    }
    let limits = Limits {
        max_elements: cli.global.max_elements,
        max_seconds: cli.global.max_seconds,
        cancel: Some(cancel),
    };
    let json = cli.global.json;
    match commands::run(&cli.command, &cli.global, &limits) {
        Ok(report) => emit(&report, json),
        Err(e) => fail(e, json),
    }
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", serde_json::to_string_pretty(&report.json).expect("json value"));
    } else {
        print!("{}", report.text);
    }
    ExitCode::from(report.code as u8)
}

fn fail(e: CliError, json: bool) -> ExitCode {
    let code = e.code();
    match e {
        CliError::Partial(report) => {
            emit(&report, json);
        }
        other => {
            if json {
                let body = serde_json::json!({ "error": other.to_string(), "exit_code": code as u8 });
                println!("{}", serde_json::to_string_pretty(&body).expect("json value"));
            }
            eprintln!("error: {other}");
        }
    }
    ExitCode::from(code as u8)
}
