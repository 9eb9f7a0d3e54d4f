use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cbid_cli::commands::{
    cmd_derive, cmd_expand, cmd_grid, cmd_verify, resolve_config, Format, GridMode, Mode,
};
use cbid_cli::Outcome;

/// Build, expand, verify, derive, and fuzz the Chaundy-Bullard identity
/// and its generalizations, with exact rational arithmetic.
#[derive(Parser)]
#[command(name = "cbid", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify one identity exactly, by randomized evaluation, or both
    Verify {
        /// Identity family (cb, homogeneous, gkp, base_n, inverse_n,
        /// n_powers, knuth3, s2_one, transformed, three_param, ks27)
        family: String,
        /// Family parameters (e.g. `cb 2 3`, `inverse_n 1 0 2`)
        #[arg(required = true, num_args = 1..)]
        params: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Emit the report as one JSON document
        #[arg(long)]
        json: bool,
        /// Fuzz seed (overrides the CBID_SEED environment variable)
        #[arg(long)]
        seed: Option<u64>,
        /// Number of fuzz trials (default 64)
        #[arg(long)]
        trials: Option<u32>,
        /// Fuzz field modulus; must be prime (default 2^61 - 1)
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Print an identity's expanded terms
    Expand {
        family: String,
        #[arg(required = true, num_args = 1..)]
        params: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Re-derive the inverse-power identity by applying the differential
    /// operator to the base identity, and compare both stages against the
    /// closed-form builders
    Derive {
        /// Differentiation orders m_1 m_2 ... (at least two)
        #[arg(required = true, num_args = 2..)]
        orders: Vec<i64>,
    },
    /// Verify every parameter tuple of a family up to a bound
    Grid {
        family: String,
        bound: i64,
        #[arg(long, value_enum, default_value_t = GridMode::Exact)]
        mode: GridMode,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u32>,
        #[arg(long)]
        prime: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Cmd::Verify {
            family,
            params,
            mode,
            json,
            seed,
            trials,
            prime,
        } => match resolve_config(seed, trials, prime) {
            Ok(cfg) => cmd_verify(&family, &params, mode, json, &cfg),
            Err(e) => {
                eprintln!("error: {e}");
                Outcome::UsageError
            }
        },
        Cmd::Expand {
            family,
            params,
            format,
        } => cmd_expand(&family, &params, format),
        Cmd::Derive { orders } => cmd_derive(&orders),
        Cmd::Grid {
            family,
            bound,
            mode,
            seed,
            trials,
            prime,
        } => match resolve_config(seed, trials, prime) {
            Ok(cfg) => cmd_grid(&family, bound, mode, &cfg),
            Err(e) => {
                eprintln!("error: {e}");
                Outcome::UsageError
            }
        },
    };
    ExitCode::from(outcome.code())
}
