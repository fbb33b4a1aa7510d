//! `prodembed` command-line front-end.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use prodembed::complex::{product_vertex_link, SimplicialComplex};
use prodembed::geometry::{random_embedding, GeometryError};
use prodembed::graph::{builtin_graph, min_embedding_dim, parse_graph, Graph, GraphError};
use prodembed::linking::{
    campaign, compute_obstruction, join_sphere_complex, standard_join_embedding, CampaignKind, LinkingError,
    DEFAULT_MAX_N,
};

const SCHEMA: u32 = 1;
const MAX_N_VAR: &str = "PRODEMBED_MAX_N";

#[derive(Parser)]
#[command(name = "prodembed", version, about = "Embedding dimension of graph products and linking checks")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal d such that the product embeds in R^d.
    Dim {
        /// Builtin names (k5, k33, kn:N, knn:N, cycle:N, path:N, triod) or edge-list files.
        #[arg(required = true)]
        factors: Vec<String>,
        #[arg(long, default_value_t = 0)]
        circles: usize,
        #[arg(long, default_value_t = 0)]
        intervals: usize,
    },
    /// Run a verification campaign over random embeddings.
    Verify {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Linked pairs and the obstruction v of one embedding.
    Obstruction {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Embedding::Standard)]
        embedding: Embedding,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base simplex as comma-separated vertices in 1..=4, one per group.
        #[arg(long, value_delimiter = ',')]
        base: Option<Vec<usize>>,
    },
    /// Print a construction in the complex text format.
    DumpComplex {
        #[command(subcommand)]
        what: Construction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sacks,
    K6,
    Invariance,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Embedding {
    Standard,
    Random,
}

#[derive(Subcommand)]
enum Construction {
    /// The join of n copies of a four-point set.
    Join {
        #[arg(long)]
        n: usize,
    },
    /// The standard embedding of the n-fold join in Q^{2n-1}.
    Standard {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A random general-position embedding of the n-fold join in Q^{2n-1}.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The vertex link of a product of graphs with the given vertex degrees.
    ProductLink {
        #[arg(required = true)]
        degrees: Vec<usize>,
    },
}

/// A failed command: exit code and message.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn hypothesis(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }

    fn with_context(mut self, what: &str) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = if e.is_parse_error() { 2 } else { 3 };
        Failure { code, message: e.to_string() }
    }
}

impl From<LinkingError> for Failure {
    fn from(e: LinkingError) -> Self {
        let code = if e.is_geometric() { 5 } else { 3 };
        Failure { code, message: e.to_string() }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        LinkingError::from(e).into()
    }
}

/// Result payload plus its text rendering and exit code.
struct Outcome {
    inputs: Value,
    result: Value,
    text: String,
    code: u8,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn max_n() -> Result<usize, Failure> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::parse(format!("{MAX_N_VAR}={v} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::hypothesis("n must be at least 1"));
    }
    let cap = max_n()?;
    if n > cap {
        return Err(Failure::hypothesis(format!("n = {n} exceeds the cap {cap}; set {MAX_N_VAR} to raise it")));
    }
    Ok(())
}

fn load_factor(source: &str) -> Result<Graph, Failure> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{source}: {e}")))?;
        let g = parse_graph(&text).map_err(|e| Failure::from(e).with_context(source))?;
        let name = path.file_stem().map_or(source.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok(g.with_name(name));
    }
    match builtin_graph(source) {
        Some(g) => Ok(g?),
        None => Err(Failure::parse(format!("`{source}` is neither a builtin graph nor a readable file"))),
    }
}

fn cmd_dim(factors: &[String], circles: usize, intervals: usize) -> Result<Outcome, Failure> {
    let graphs = factors.iter().map(|f| load_factor(f)).collect::<Result<Vec<_>, _>>()?;
    let r = min_embedding_dim(&graphs, circles, intervals)?;
    let text = format!(
        "d = {}\ncase = {}\nn = {}, s = {}, i = {}\n",
        r.d,
        r.case.number(),
        r.n,
        r.s,
        r.i
    );
    Ok(Outcome {
        inputs: json!({ "factors": factors, "s": circles, "i": intervals, "seed": Value::Null }),
        result: to_value(&r),
        text,
        code: 0,
    })
}

fn cmd_verify(kind: Kind, n: usize, trials: usize, seed: u64) -> Result<Outcome, Failure> {
    let kind = match kind {
        Kind::Sacks => CampaignKind::SacksN,
        Kind::K6 => CampaignKind::ConwayGordonK6,
        Kind::Invariance => CampaignKind::ObstructionInvariance,
    };
    if kind != CampaignKind::ConwayGordonK6 {
        check_n(n)?;
    }
    let r = campaign(kind, n, trials, seed)?;
    let violated = !r.failing_seeds.is_empty() || !r.cross_check_mismatches.is_empty();
    let code = if violated {
        4
    } else if !r.exhausted_seeds.is_empty() {
        5
    } else {
        0
    };
    let mut text = format!(
        "kind = {}\nn = {}\ntrials = {}, completed = {}\nlinked fraction = {}\nv histogram: 0 -> {}, 1 -> {}\n",
        to_value(&r.kind).as_str().unwrap_or_default(),
        r.n,
        r.trials,
        r.completed,
        r.linked_fraction,
        r.v_histogram["0"],
        r.v_histogram["1"],
    );
    let seeds = |s: &[u64]| s.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    if !r.failing_seeds.is_empty() {
        text += &format!("PROPERTY VIOLATED at seeds: {}\n", seeds(&r.failing_seeds));
    }
    if !r.cross_check_mismatches.is_empty() {
        text += &format!("cone-lift mismatch at seeds: {}\n", seeds(&r.cross_check_mismatches));
    }
    if !r.exhausted_seeds.is_empty() {
        text += &format!("degenerate sampling exhausted at seeds: {}\n", seeds(&r.exhausted_seeds));
    }
    text += if code == 0 { "status: ok\n" } else { "status: FAILED\n" };
    Ok(Outcome {
        inputs: json!({ "kind": r.kind, "n": r.n, "trials": trials, "seed": seed }),
        result: to_value(&r),
        text,
        code,
    })
}

fn cmd_obstruction(n: usize, embedding: Embedding, seed: u64, base: Option<&[usize]>) -> Result<Outcome, Failure> {
    check_n(n)?;
    // 1-based on the command line
    let base: Option<Vec<usize>> = base
        .map(|b| {
            b.iter()
                .map(|&v| v.checked_sub(1).ok_or_else(|| Failure::parse("base vertices are numbered from 1")))
                .collect()
        })
        .transpose()?;
    let g = match embedding {
        Embedding::Standard => standard_join_embedding(n, seed)?.complex,
        Embedding::Random => random_embedding(&join_sphere_complex(n), 2 * n - 1, seed)?,
    };
    let r = compute_obstruction(&g, base.as_deref())?;
    let mut text = format!(
        "n = {}\nbase simplex = {}\npairs examined = {}\nlinked pairs = {}\n",
        r.n,
        r.base_simplex.join(" "),
        r.pairs_examined,
        r.linked_pairs.len()
    );
    for p in &r.linked_pairs {
        text += &format!("  {p}\n");
    }
    text += &format!("v = {}\n", r.v);
    Ok(Outcome {
        inputs: json!({ "n": n, "embedding": embedding, "seed": seed, "base": base.map(|b| b.iter().map(|v| v + 1).collect::<Vec<_>>()) }),
        result: to_value(&r),
        text,
        code: 0,
    })
}

fn complex_summary(c: &SimplicialComplex, text: String) -> Value {
    json!({
        "vertices": c.vertex_count(),
        "facets": c.facets().len(),
        "dim": c.dim(),
        "f_vector": c.f_vector(),
        "text": text,
    })
}

fn cmd_dump(what: &Construction) -> Result<Outcome, Failure> {
    let (inputs, c, text) = match what {
        Construction::Join { n } => {
            check_n(*n)?;
            let c = join_sphere_complex(*n);
            let text = c.to_text();
            (json!({ "construction": "join", "n": n, "seed": Value::Null }), c, text)
        }
        Construction::Standard { n, seed } => {
            check_n(*n)?;
            let e = standard_join_embedding(*n, *seed)?;
            let text = e.complex.to_text();
            (json!({ "construction": "standard", "n": n, "seed": seed }), e.complex.complex().clone(), text)
        }
        Construction::Random { n, seed } => {
            check_n(*n)?;
            let g = random_embedding(&join_sphere_complex(*n), 2 * n - 1, *seed)?;
            let text = g.to_text();
            (json!({ "construction": "random", "n": n, "seed": seed }), g.complex().clone(), text)
        }
        Construction::ProductLink { degrees } => {
            let c = product_vertex_link(degrees).map_err(|e| Failure::hypothesis(e.to_string()))?;
            let text = c.to_text();
            (json!({ "construction": "product_link", "degrees": degrees, "seed": Value::Null }), c, text)
        }
    };
    Ok(Outcome {
        inputs,
        result: complex_summary(&c, text.clone()),
        text,
        code: 0,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Dim { .. } => "dim",
        Command::Verify { .. } => "verify",
        Command::Obstruction { .. } => "obstruction",
        Command::DumpComplex { .. } => "dump-complex",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Dim { factors, circles, intervals } => cmd_dim(factors, *circles, *intervals),
        Command::Verify { kind, n, trials, seed } => cmd_verify(*kind, *n, *trials, *seed),
        Command::Obstruction { n, embedding, seed, base } => cmd_obstruction(*n, *embedding, *seed, base.as_deref()),
        Command::DumpComplex { what } => cmd_dump(what),
    };
    match outcome {
        Ok(o) => {
            if cli.json {
                let report = json!({
                    "schema": SCHEMA,
                    "command": command_name(&cli.command),
                    "version": prodembed::VERSION,
                    "inputs": o.inputs,
                    "result": o.result,
                    "exit_code": o.code,
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                });
                println!("{}", serde_json::to_string_pretty(&report).expect("valid JSON"));
            } else {
                print!("{}", o.text);
            }
            ExitCode::from(o.code)
        }
        Err(f) => {
            if cli.json {
                let report = json!({
                    "schema": SCHEMA,
                    "command": command_name(&cli.command),
                    "version": prodembed::VERSION,
                    "error": f.message,
                    "exit_code": f.code,
                });
                println!("{}", serde_json::to_string_pretty(&report).expect("valid JSON"));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
