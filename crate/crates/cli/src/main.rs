mod commands;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use seedmat::cluster_matroid::BuildMode;
use seedmat::enumeration::DEFAULT_CAP;

use error::CliError;

#[derive(Parser)]
#[command(name = "seedmat", version, about = "Cluster-algebra seeds, exchange graphs and cluster matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; each subcommand accepts a subset.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a seed at one or more 1-based positions, in order.
    Mutate {
        #[arg(long)]
        seed: String,
        #[arg(long = "at", required = true)]
        at: Vec<usize>,
    },
    /// Enumerate the mutation class and its exchange graph.
    Enumerate {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Decide finite type and name the Cartan type.
    Classify {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Build the cluster matroid of a finite-type seed.
    MatroidBuild {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value = "algebraic", value_parser = parse_mode)]
        mode: BuildMode,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Decide independence by exact symbolic elimination only.
        #[arg(long)]
        exact: bool,
    },
    /// Operations on a matroid given as JSON.
    MatroidOp {
        #[arg(value_enum)]
        op: MatroidOp,
        /// Matroid JSON file or inline JSON.
        #[arg(long)]
        matroid: Option<String>,
        /// Comma-separated element labels for delete and contract.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        elements: Vec<String>,
        /// Rank of the uniform matroid to construct.
        #[arg(long)]
        rank: Option<usize>,
        /// Ground-set size of the uniform matroid to construct.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Re-express every cluster variable in every extended cluster.
    LaurentCheck {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Linear independence of cluster monomials up to a total degree.
    Monomials {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Triangulations, flips and flip graphs of a convex polygon.
    Polygon {
        #[arg(value_enum)]
        op: PolygonOp,
        #[arg(long, default_value_t = 8)]
        p: u32,
        /// Comma-separated diagonals such as `1-3,1-4`; defaults to the fan
        /// at vertex 1.
        #[arg(long)]
        triangulation: Option<String>,
    },
    /// Compare the flip graph of the (n+3)-gon with the A_n exchange graph.
    CompareGraphs {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatroidOp {
    Dual,
    Delete,
    Contract,
    Circuits,
    Connected,
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolygonOp {
    Triangulations,
    Flips,
    FlipGraph,
    Counterexample,
}

fn parse_mode(s: &str) -> Result<BuildMode, String> {
    s.parse()
}

/// Result body plus a one-line human summary for stderr.
pub struct Report {
    pub body: String,
    pub summary: String,
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let f = cli.format;
    match cli.command {
        Command::Mutate { seed, at } => commands::mutate(&seed, &at, f),
        Command::Enumerate { seed, cap } => commands::enumerate(&seed, cap, f),
        Command::Classify { seed, cap } => commands::classify(&seed, cap, f),
        Command::MatroidBuild {
            seed,
            mode,
            cap,
            rng_seed,
            trials,
            exact,
        } => commands::matroid_build(&seed, mode, cap, rng_seed, trials, exact, f),
        Command::MatroidOp {
            op,
            matroid,
            elements,
            rank,
            size,
        } => commands::matroid_op(op, matroid.as_deref(), &elements, rank, size, f),
        Command::LaurentCheck { seed, cap } => commands::laurent(&seed, cap, f),
        Command::Monomials { seed, max_degree, cap } => commands::monomials(&seed, max_degree, cap, f),
        Command::Polygon { op, p, triangulation } => commands::polygon(op, p, triangulation.as_deref(), f),
        Command::CompareGraphs { n } => commands::compare_graphs(n, f),
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli) {
        Ok(report) => {
            let written = match &output {
                Some(path) => std::fs::write(path, &report.body),
                None => emit(&report.body),
            };
            if let Err(e) = written {
                let err = CliError::from(e);
                let _ = emit(&(err.to_json().to_string() + "\n"));
                return ExitCode::from(err.exit_code() as u8);
            }
            eprintln!("{}", report.summary);
            ExitCode::SUCCESS
        }
        Err(err) => {
            match &err {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Domain { message, .. } => {
                    let _ = emit(&(serde_json::to_string_pretty(&err.to_json()).expect("plain JSON") + "\n"));
                    eprintln!("error: {message}");
                }
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
