//! Command dispatch for the `probconn` binary.
//!
//! Every command reads a graph file and prints one JSON result document on
//! standard output. Exit codes: 0 success, 2 usage or input error, 3 when the
//! exact engine's edge limit is exceeded.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use probconn::report::Engine;
use probconn::{
    compute_bounds, exact_connectivity, find_critical_vertices_in, mc_connectivity,
    parse_graph_file, rank_improvements, spectral_report, walk_probabilities, ConnectivityMatrix,
    Error, ProbGraph, ResultDocument, WalkMatrix, DEFAULT_BOUNDS_TOLERANCE,
    DEFAULT_CRITICAL_TOLERANCE, DEFAULT_MAX_EDGES, DEFAULT_SEED, DEFAULT_SPECTRAL_TOLERANCE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_EDGE_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "probconn",
    version,
    about = "Connectivity quality of networks with unreliable links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Graph file, or `-` for standard input
    #[arg(long)]
    input: PathBuf,
    /// Largest number of uncertain links per component the exact engine enumerates
    #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
    max_edges: usize,
    /// Override the numerical slack of every check the command runs
    #[arg(long)]
    tolerance: Option<f64>,
    /// Indent the JSON output
    #[arg(long)]
    pretty: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact connectivity matrix with spectrum, bounds and components
    Compute(Common),
    /// Monte Carlo estimate of the connectivity matrix
    Mc {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Lower and upper bounds on every path probability
    Bounds(Common),
    /// Eigenvalues and the largest-eigenvalue quality metric
    Spectrum(Common),
    /// Vertices every path between some pair must cross
    Critical(Common),
    /// Walk-probability matrix for walks of a given length
    Walk {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        z: usize,
    },
    /// Rank single-link improvements by their effect on the largest eigenvalue
    Rank {
        #[command(flatten)]
        common: Common,
        /// Also score vertex pairs that have no link yet
        #[arg(long)]
        include_absent: bool,
    },
}

enum Failure {
    Usage(String),
    Input(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

/// Runs one command line. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return EXIT_INPUT;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = writeln!(stdout, "{text}");
            EXIT_OK
        }
        Err(Failure::Usage(msg) | Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Engine(e @ Error::EdgeLimitExceeded { .. })) => {
            let _ = writeln!(stderr, "error: {e}");
            let _ = writeln!(
                stderr,
                "hint: `probconn mc` estimates the same matrix by sampling"
            );
            EXIT_EDGE_LIMIT
        }
        Err(Failure::Engine(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn load(common: &Common) -> Result<ProbGraph, Failure> {
    let text = if common.input.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(&common.input)
            .map_err(|e| Failure::Input(format!("reading {}: {e}", common.input.display())))?
    };
    parse_graph_file(&text).map_err(|e| Failure::Input(format!("{}: {e}", common.input.display())))
}

fn tolerance(common: &Common, default: f64) -> Result<f64, Failure> {
    match common.tolerance {
        None => Ok(default),
        Some(t) if t.is_finite() && t >= 0.0 => Ok(t),
        Some(t) => Err(Failure::Usage(format!(
            "--tolerance must be finite and non-negative, got {t}"
        ))),
    }
}

fn exact(g: &ProbGraph, common: &Common) -> Result<ConnectivityMatrix, Failure> {
    Ok(exact_connectivity(g, common.max_edges)?)
}

fn execute(command: Command) -> Result<String, Failure> {
    let (doc, pretty) = match command {
        Command::Compute(c) => {
            let g = load(&c)?;
            let q = exact(&g, &c)?;
            let spectrum = spectral_report(
                &q,
                &g.support_components(),
                tolerance(&c, DEFAULT_SPECTRAL_TOLERANCE)?,
            )?;
            let bounds = compute_bounds(
                &g.adjacency_matrix(),
                &q,
                tolerance(&c, DEFAULT_BOUNDS_TOLERANCE)?,
            )?;
            let doc = ResultDocument::new("compute", &g)
                .with_q(Engine::Exact, &q)
                .with_spectrum(&spectrum)
                .with_bounds(&bounds);
            (doc, c.pretty)
        }
        Command::Mc {
            common: c,
            samples,
            seed,
        } => {
            let g = load(&c)?;
            if samples == 0 {
                return Err(Failure::Usage("--samples must be at least 1".into()));
            }
            let est = mc_connectivity(&g, samples, seed)?;
            let spectrum = spectral_report(
                &est.q_hat,
                &g.support_components(),
                tolerance(&c, DEFAULT_SPECTRAL_TOLERANCE)?,
            )?;
            let doc = ResultDocument::new("mc", &g)
                .with_q(Engine::Mc, &est.q_hat)
                .with_spectrum(&spectrum)
                .with_mc(&est);
            (doc, c.pretty)
        }
        Command::Bounds(c) => {
            let g = load(&c)?;
            let q = exact(&g, &c)?;
            let bounds = compute_bounds(
                &g.adjacency_matrix(),
                &q,
                tolerance(&c, DEFAULT_BOUNDS_TOLERANCE)?,
            )?;
            (
                ResultDocument::new("bounds", &g)
                    .with_q(Engine::Exact, &q)
                    .with_bounds(&bounds),
                c.pretty,
            )
        }
        Command::Spectrum(c) => {
            let g = load(&c)?;
            let q = exact(&g, &c)?;
            let spectrum = spectral_report(
                &q,
                &g.support_components(),
                tolerance(&c, DEFAULT_SPECTRAL_TOLERANCE)?,
            )?;
            (
                ResultDocument::new("spectrum", &g)
                    .with_q(Engine::Exact, &q)
                    .with_spectrum(&spectrum),
                c.pretty,
            )
        }
        Command::Critical(c) => {
            let g = load(&c)?;
            let q = exact(&g, &c)?;
            let found =
                find_critical_vertices_in(&g, &q, tolerance(&c, DEFAULT_CRITICAL_TOLERANCE)?)?;
            (
                ResultDocument::new("critical", &g)
                    .with_q(Engine::Exact, &q)
                    .with_critical(&found),
                c.pretty,
            )
        }
        Command::Walk { common: c, z } => {
            let g = load(&c)?;
            if z == 0 {
                return Err(Failure::Usage("--z must be at least 1".into()));
            }
            let w = walk_probabilities(&WalkMatrix::from_graph(&g), z)?;
            (ResultDocument::new("walk", &g).with_walk(&w), c.pretty)
        }
        Command::Rank {
            common: c,
            include_absent,
        } => {
            let g = load(&c)?;
            let ranking = rank_improvements(&g, include_absent, c.max_edges)?;
            (
                ResultDocument::new("rank", &g).with_ranking(&ranking),
                c.pretty,
            )
        }
    };
    Ok(doc.to_json(pretty))
}
