use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use picspace::homology::{self, PoincareSeries};
use picspace::orchard::{self, OrchardRing};
use picspace::poly::parse_coefficient_list;
use picspace::recurrence::{CacheMode, SharedCache};
use picspace::schubert;
use picspace::tutte;
use picspace::{Error, IntPolynomial, Limits, Multigraph};

/// Exact invariants of graph picture spaces.
#[derive(Parser)]
#[command(name = "picspace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Graph file (`v <id>` and `e <id> <u> <w>` lines).
    graph: PathBuf,
    /// Print machine-readable JSON.
    #[arg(long)]
    json: bool,
    /// Lift the size guards on exponential enumerations.
    #[arg(long)]
    force: bool,
    /// Memo table for deletion-contraction.
    #[arg(long, value_enum, default_value_t = Cache::Local)]
    cache: Cache,
}

#[derive(Args)]
struct Dim {
    /// Projective dimension, at least 2.
    #[arg(short = 'd', long = "dim")]
    d: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cache {
    /// One table per computation.
    Local,
    /// A single table shared by every computation in this run.
    Shared,
    /// No memoization.
    None,
}

#[derive(Subcommand)]
enum Command {
    /// Tutte polynomial T(x, y).
    Tutte {
        #[command(flatten)]
        common: Common,
    },
    /// Compressed Poincaré series of the picture space in P^d.
    Poincare {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        dim: Dim,
        /// Evaluate the Tutte specialization instead of the recurrence.
        #[arg(long)]
        closed_form: bool,
    },
    /// Poincaré series for pictures on a manifold with cell-count polynomial P_M.
    PoincareManifold {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        dim: Dim,
        /// Coefficients of P_M, constant term first, comma separated.
        #[arg(long)]
        pm: String,
    },
    /// d-parallel independence of the edge set.
    Parallel {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        dim: Dim,
    },
    /// Largest cellule dimension and the partitions attaining it.
    Cellules {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        dim: Dim,
    },
    /// Whether every edge is a loop or an isthmus.
    OrchardCheck {
        #[command(flatten)]
        common: Common,
    },
    /// Integral cohomology ring of an orchard picture space, as JSON.
    Ring {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        dim: Dim,
    },
    /// Reduced cohomology class of a point.
    Pointclass {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        dim: Dim,
    },
    /// Number of pictures meeting a list of Schubert conditions.
    Intersect {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        dim: Dim,
        /// JSON list of {"vertex", "edge", "permutation"} objects.
        #[arg(long)]
        conditions: PathBuf,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Tutte { common }
            | Command::Poincare { common, .. }
            | Command::PoincareManifold { common, .. }
            | Command::Parallel { common, .. }
            | Command::Cellules { common, .. }
            | Command::OrchardCheck { common }
            | Command::Ring { common, .. }
            | Command::Pointclass { common, .. }
            | Command::Intersect { common, .. } => common,
        }
    }
}

enum Failure {
    Domain(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn poly_out(p: &IntPolynomial, json: bool) -> String {
    if json {
        p.to_json().to_string()
    } else {
        p.to_string()
    }
}

fn series_out(p: &PoincareSeries, json: bool) -> String {
    let coeffs: Vec<String> = p.coefficients().iter().map(|c| c.to_string()).collect();
    if json {
        json!({"d": p.d, "polynomial": p.polynomial.to_json(), "coefficients": coeffs}).to_string()
    } else {
        format!("{}\ncoefficients: [{}]", p.polynomial, coeffs.join(", "))
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let common = cli.command.common();
    if common.force {
        eprintln!("warning: --force lifts the size guards; exponential enumerations may run for a very long time");
    }
    let limits = if common.force { Limits::unbounded() } else { Limits::default() };
    let shared = SharedCache::new();
    let cache = match common.cache {
        Cache::Local => CacheMode::PerCall,
        Cache::Shared => CacheMode::Shared(&shared),
        Cache::None => CacheMode::Disabled,
    };
    let g = Multigraph::parse(&read(&common.graph)?)?;
    let json = common.json;

    let out = match &cli.command {
        Command::Tutte { .. } => poly_out(&tutte::tutte_cached(&g, cache), json),
        Command::Poincare { dim, closed_form, .. } => {
            let p = if *closed_form {
                homology::poincare_closed_form_with(&g, dim.d, &limits)?
            } else {
                homology::poincare_with(&g, dim.d, &limits, cache)?
            };
            series_out(&p, json)
        }
        Command::PoincareManifold { dim, pm, .. } => {
            let pm = parse_coefficient_list(pm)?;
            poly_out(&homology::poincare_manifold_with(&g, dim.d, &pm, &limits)?, json)
        }
        Command::Parallel { dim, .. } => {
            let v = homology::parallel_independent_with(&g, dim.d, &limits)?;
            let verdict = if v.independent { "INDEPENDENT" } else { "DEPENDENT" };
            if json {
                json!({
                    "verdict": verdict,
                    "witness": v.witness_polynomial.to_json(),
                    "expected_degree": v.expected_degree,
                })
                .to_string()
            } else {
                format!("{verdict}\nwitness: {}\nexpected: monic of degree {}", v.witness_polynomial, v.expected_degree)
            }
        }
        Command::Cellules { dim, .. } => {
            let (best, parts) = homology::cellule_maxima(&g, dim.d, &limits)?;
            if json {
                let parts: Vec<Vec<Vec<String>>> = parts
                    .iter()
                    .map(|p| p.blocks().iter().map(|b| b.iter().map(|v| v.to_string()).collect()).collect())
                    .collect();
                json!({"max_dimension": best, "partitions": parts}).to_string()
            } else {
                let mut s = format!("max dimension: {best}");
                for p in parts {
                    write!(s, "\n{p}").unwrap();
                }
                s
            }
        }
        Command::OrchardCheck { .. } => {
            let bad: Vec<String> = g
                .edges()
                .filter(|(id, e)| !e.is_loop() && !g.is_isthmus(id).unwrap())
                .map(|(id, _)| id.to_string())
                .collect();
            let is = orchard::is_orchard(&g);
            if json {
                json!({"orchard": is, "offending_edges": bad}).to_string()
            } else if is {
                "ORCHARD".to_string()
            } else {
                format!("NOT ORCHARD\nedges on cycles: {}", bad.join(" "))
            }
        }
        Command::Ring { dim, .. } => {
            let ring = OrchardRing::build_with(&g, dim.d, &limits)?;
            serde_json::to_string_pretty(&ring.to_json()).unwrap()
        }
        Command::Pointclass { dim, .. } => {
            let ring = OrchardRing::build_with(&g, dim.d, &limits)?;
            poly_out(ring.point_class().polynomial(), json)
        }
        Command::Intersect { dim, conditions, .. } => {
            let conditions = schubert::parse_conditions(&read(conditions)?)?;
            let ring = OrchardRing::build_with(&g, dim.d, &limits)?;
            let n = schubert::count_pictures(&ring, &conditions)?;
            if json {
                Value::String(n.to_string()).to_string()
            } else {
                n.to_string()
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
