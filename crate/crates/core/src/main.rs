use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use adhm::commands::{self, CommandResult, PRODUCT_VERBS};

#[derive(Parser)]
#[command(name = "adhm", version, about = "Exact computations with ADHM data")]
struct Cli {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for point counts.
    #[arg(long, global = true, default_value_t = default_workers())]
    workers: usize,
    /// Permit long-running configurations.
    #[arg(long, global = true)]
    allow_long: bool,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a datum file: invariants, moment map, stability.
    Verify { path: PathBuf },
    /// Run a product pipeline on datum files.
    Product {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(PRODUCT_VERBS))]
        verb: String,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Invariant Hilbert series of the SO(3), k = 2 zero fibre.
    Hilbert {
        #[arg(long, default_value_t = 8)]
        trunc: usize,
        /// Cross-check against brute-force invariants up to this degree.
        #[arg(long)]
        oracle: Option<usize>,
    },
    /// Exact point counts over F_p.
    #[command(subcommand)]
    Count(CountCmd),
    /// Current-algebra computations.
    #[command(subcommand)]
    Current(CurrentCmd),
}

#[derive(Subcommand)]
enum CountCmd {
    So3 {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        prime: u64,
    },
    Homw {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        prime: u64,
    },
    Mux {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prime: u64,
    },
    /// Stratum dimension formula against measured slopes.
    DimFormula {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [3, 5, 7])]
        primes: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum CurrentCmd {
    Stabilizer {
        #[arg(long)]
        d: usize,
        /// Shorthand such as `e1`, `e2z^2`, `0`, or a JSON file.
        #[arg(long)]
        x: String,
    },
    Fiber {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
}

fn dispatch(cli: &Cli) -> CommandResult {
    let w = cli.workers.max(1);
    match &cli.cmd {
        Cmd::Verify { path } => commands::cmd_verify(path),
        Cmd::Product { verb, paths } => {
            let paths: Vec<&std::path::Path> = paths.iter().map(PathBuf::as_path).collect();
            commands::cmd_product(verb, &paths, cli.seed)
        }
        Cmd::Hilbert { trunc, oracle } => commands::cmd_hilbert(*trunc, *oracle),
        Cmd::Count(c) => match c {
            CountCmd::So3 { k, prime } => commands::cmd_count_so3(*k, *prime, w, cli.allow_long),
            CountCmd::Homw { d, prime } => commands::cmd_count_homw(*d, *prime, w, cli.allow_long),
            CountCmd::Mux { d, n, prime } => commands::cmd_count_mux(*d, *n, *prime, w),
            CountCmd::DimFormula { d, primes } => commands::cmd_dim_formula(*d, primes, w),
        },
        Cmd::Current(c) => match c {
            CurrentCmd::Stabilizer { d, x } => commands::cmd_current_stabilizer(*d, x),
            CurrentCmd::Fiber { d, n } => commands::cmd_current_fiber(*d, *n),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut result = dispatch(&cli);
    if result.provenance.seed.is_none() {
        result.provenance.seed = Some(cli.seed);
    }
    let out = if cli.pretty { serde_json::to_string_pretty(&result) } else { serde_json::to_string(&result) };
    // A closed pipe on stdout is not an error worth a panic.
    let _ = writeln!(std::io::stdout(), "{}", out.expect("serializable"));
    ExitCode::from(result.exit_code() as u8)
}
