use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use wmge::constraint_graph::build_constraint_graph;
use wmge::embedder::{brass_baseline, solve_min_perimeter, ExtentAssignment, SolveMetrics};
use wmge::geometry::{self, CheckOptions, GridEmbedding, Metrics};
use wmge::oracle::{self, Objective, Optimum, OracleError, DEFAULT_CEILING};
use wmge::render::{render_svg, RenderOptions};
use wmge::{derive, PathPair};

/// Solutions with more vertices than this are not re-validated by `solve`;
/// the pairwise segment check is quadratic.
const VERIFY_LIMIT: usize = 5_000;

#[derive(Parser)]
#[command(
    name = "wmge",
    version,
    about = "Minimum-perimeter grid embeddings of an x-monotone and a y-monotone path"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-perimeter embedding as JSON.
    Solve(IoArgs),
    /// Rank placement on the n x n grid.
    Baseline(IoArgs),
    /// Validate an embedding; exit 0 iff valid, 1 on violations.
    Check {
        #[command(flatten)]
        io: IoArgs,
        /// Embedding document (`{"points": [[x, y], ...]}`).
        #[arg(short = 'e', long)]
        embedding: PathBuf,
        /// Drop the monotonicity requirements.
        #[arg(long)]
        strict_planarity: bool,
        /// Also reject proper crossings between edges of different paths.
        #[arg(long)]
        forbid_crossings: bool,
    },
    /// Brute-force optimum at small scale.
    Oracle {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Perimeter)]
        objective: ObjectiveArg,
        /// Grid side bound; defaults to n - 1 (at least 1 for drawing objectives).
        #[arg(long)]
        max_side: Option<u64>,
        /// Maximum number of candidates to examine.
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: u64,
    },
    /// Constraint graph in Graphviz DOT.
    Graph(IoArgs),
    /// SVG drawing of an embedding (the minimum-perimeter one by default).
    Render {
        #[command(flatten)]
        io: IoArgs,
        #[arg(short = 'e', long)]
        embedding: Option<PathBuf>,
        /// Pixels per grid unit.
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..))]
        cell: u32,
    },
}

#[derive(Args)]
struct IoArgs {
    /// Instance document; stdin when omitted or `-`.
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Output file; stdout when omitted or `-`.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Perimeter,
    MaxEdge,
    TotalLength,
    Unit,
}

enum Failure {
    /// Invalid embedding or infeasible instance.
    Semantic(Option<String>),
    Input(String),
    Guard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Semantic(_) => 1,
            Failure::Input(_) => 2,
            Failure::Guard(_) => 3,
        }
    }
}

fn read_source(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn write_sink(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        _ => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("cannot write stdout: {e}"))),
    }
}

fn load_instance(io: &IoArgs) -> Result<PathPair, Failure> {
    let text = read_source(io.input.as_deref())?;
    PathPair::parse(&text).map_err(|e| Failure::Input(e.to_string()))
}

fn load_embedding(path: &Path, p: &PathPair) -> Result<GridEmbedding, Failure> {
    let text = read_source(Some(path))?;
    let emb: GridEmbedding = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("malformed embedding: {e}")))?;
    if emb.len() != p.n() {
        return Err(Failure::Input(format!(
            "embedding has {} points for {} vertices",
            emb.len(),
            p.n()
        )));
    }
    Ok(emb)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
struct LayoutBox {
    perimeter: i64,
    width: i64,
    height: i64,
}

#[derive(Serialize)]
struct SolveDocument<'a> {
    #[serde(flatten)]
    embedding: &'a GridEmbedding,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [String]>,
    metrics: SolveMetrics,
    extents: &'a ExtentAssignment,
    /// Whether the output was re-validated by the exact checker.
    verified: bool,
}

#[derive(Serialize)]
struct EmbeddingDocument<'a> {
    #[serde(flatten)]
    embedding: &'a GridEmbedding,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [String]>,
    metrics: LayoutBox,
    details: Metrics,
}

fn cmd_solve(io: &IoArgs) -> Result<(), Failure> {
    let p = load_instance(io)?;
    let s = solve_min_perimeter(&p).map_err(|e| Failure::Semantic(Some(e.to_string())))?;
    let verified = p.n() <= VERIFY_LIMIT;
    if verified {
        let report = geometry::check_wmge(&p, &s.embedding).expect("one point per vertex");
        if !report.valid {
            return Err(Failure::Semantic(Some(format!(
                "solver output failed validation:\n{}",
                to_json(&report)
            ))));
        }
    }
    let doc = SolveDocument {
        embedding: &s.embedding,
        labels: p.labels(),
        metrics: s.metrics,
        extents: &s.extents,
        verified,
    };
    write_sink(io.output.as_deref(), &to_json(&doc))
}

fn cmd_baseline(io: &IoArgs) -> Result<(), Failure> {
    let p = load_instance(io)?;
    let emb = brass_baseline(&p);
    let details = geometry::metrics(&p, &emb);
    let doc = EmbeddingDocument {
        embedding: &emb,
        labels: p.labels(),
        metrics: LayoutBox {
            perimeter: details.perimeter,
            width: details.width,
            height: details.height,
        },
        details,
    };
    write_sink(io.output.as_deref(), &to_json(&doc))
}

fn cmd_check(
    io: &IoArgs,
    embedding: &Path,
    strict_planarity: bool,
    forbid_crossings: bool,
) -> Result<(), Failure> {
    let p = load_instance(io)?;
    let emb = load_embedding(embedding, &p)?;
    let opts = CheckOptions {
        monotone: !strict_planarity,
        forbid_cross_path_crossings: forbid_crossings,
    };
    let report = geometry::check(&p, &emb, opts).map_err(|e| Failure::Input(e.to_string()))?;
    write_sink(io.output.as_deref(), &to_json(&report))?;
    if report.valid {
        Ok(())
    } else {
        Err(Failure::Semantic(None))
    }
}

fn cmd_oracle(
    io: &IoArgs,
    objective: ObjectiveArg,
    max_side: Option<u64>,
    ceiling: u64,
) -> Result<(), Failure> {
    let p = load_instance(io)?;
    let span = p.edge_count() as u64;
    let result = match objective {
        ObjectiveArg::Perimeter => {
            oracle::min_perimeter_by_placement(&p, max_side.unwrap_or(span), ceiling)
        }
        ObjectiveArg::MaxEdge => oracle::min_objective_bruteforce(
            &p,
            Objective::MaxEdge,
            max_side.unwrap_or(span.max(1)),
            ceiling,
        ),
        ObjectiveArg::TotalLength => oracle::min_objective_bruteforce(
            &p,
            Objective::TotalLength,
            max_side.unwrap_or(span.max(1)),
            ceiling,
        ),
        ObjectiveArg::Unit => {
            oracle::unit_length_feasible(&p, max_side.unwrap_or(span.max(1)), ceiling)
        }
    }
    .map_err(|e| match e {
        OracleError::NoPlacement { .. } => Failure::Semantic(Some(e.to_string())),
        _ => Failure::Guard(e.to_string()),
    })?;
    write_sink(io.output.as_deref(), &to_json(&result))?;
    if result.optimum == Optimum::Bool(false) {
        return Err(Failure::Semantic(None));
    }
    Ok(())
}

fn cmd_graph(io: &IoArgs) -> Result<(), Failure> {
    let p = load_instance(io)?;
    let g = build_constraint_graph(&p, &derive(&p));
    write_sink(io.output.as_deref(), &g.to_dot())
}

fn cmd_render(io: &IoArgs, embedding: Option<&Path>, cell: u32) -> Result<(), Failure> {
    let p = load_instance(io)?;
    let emb = match embedding {
        Some(path) => load_embedding(path, &p)?,
        None => {
            solve_min_perimeter(&p)
                .map_err(|e| Failure::Semantic(Some(e.to_string())))?
                .embedding
        }
    };
    let opts = RenderOptions {
        cell,
        ..RenderOptions::default()
    };
    write_sink(io.output.as_deref(), &render_svg(&p, &emb, &opts))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve(io) => cmd_solve(io),
        Command::Baseline(io) => cmd_baseline(io),
        Command::Check {
            io,
            embedding,
            strict_planarity,
            forbid_crossings,
        } => cmd_check(io, embedding, *strict_planarity, *forbid_crossings),
        Command::Oracle {
            io,
            objective,
            max_side,
            ceiling,
        } => cmd_oracle(io, *objective, *max_side, *ceiling),
        Command::Graph(io) => cmd_graph(io),
        Command::Render {
            io,
            embedding,
            cell,
        } => cmd_render(io, embedding.as_deref(), *cell),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Semantic(Some(msg)) | Failure::Input(msg) | Failure::Guard(msg) => {
                    eprintln!("wmge: {msg}")
                }
                Failure::Semantic(None) => {}
            }
            ExitCode::from(f.code())
        }
    }
}
