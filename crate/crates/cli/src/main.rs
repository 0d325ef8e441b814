mod commands;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use bgprod_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "bgprod",
    version,
    about = "Tate cohomology and secondary products for finite groups"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Resolution depth D (the window [0, D]).
    #[arg(long, global = true, env = "BGPROD_DEPTH")]
    pub depth: Option<usize>,

    /// TOML file with defaults for json, depth, timings and coeff.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Serialize, Debug, Clone)]
#[serde(tag = "verb", rename_all = "lowercase")]
pub enum Command {
    /// Integral or mod-p homology of BG.
    Homology {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0)]
        min_degree: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Tate cohomology groups in a degree range.
    Tate {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        to: i64,
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Product of two generator classes (secondary by default).
    Product {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Generator index in H_k.
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// Generator index in H_l.
        #[arg(long, default_value_t = 0)]
        j: usize,
        #[arg(long)]
        coeff: Option<String>,
        /// Compute the primary product instead.
        #[arg(long)]
        primary: bool,
    },
    /// Secondary products of all generator pairs.
    Table {
        #[arg(long)]
        group: String,
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        lmax: usize,
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Join product of lens models over Z/m.
    Join {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Run a verification suite.
    Verify {
        /// `paper` or `properties`.
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Run only these items.
        #[arg(long)]
        item: Vec<String>,
    },
    /// Transfer to a subgroup, optionally checking product compatibility.
    Transfer {
        #[arg(long)]
        group: String,
        /// Subgroup elements as indices of the ambient group, comma separated.
        #[arg(long)]
        subgroup: String,
        /// Known group the subgroup equals (same multiplication table).
        #[arg(long = "as")]
        #[serde(rename = "as")]
        as_group: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Also check tr(a∗b) = ±tr(a)∗tr(b) for degrees up to this bound.
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Check naturality of the secondary product along a surjection.
    Covering {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// Images of the source elements; defaults to the cyclic projection.
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceCap(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = match config::Settings::resolve(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli.command, &settings) {
        Ok(outcome) => {
            let out = if settings.json {
                outcome.report.to_json_string(&settings)
            } else {
                outcome.text
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
