//! Command-line front end tying the workbench together.
//!
//! Exit codes: 0 on success, 1 for usage or I/O errors, 2 when a
//! verification check fails. Primary output on stdout is deterministic
//! for fixed arguments and cache state; timings and search statistics go
//! to stderr.

mod cache;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cache::{cache_get, cache_put, CacheRecord, TOOL_VERSION};
use turan_core::cliques::{count_cliques, count_cliques_through};
use turan_core::constructions::{build_conjecture_join, build_conjecture_union};
use turan_core::formulas::{
    conjecture_value, f_formula, g_threshold, luo_f, thm_lower_with, thm_upper_with,
    BinomConvention, P3ClosedOracle,
};
use turan_core::graph::{Graph, VertexSet};
use turan_core::graph6;
use turan_core::packing::{has_k_disjoint, max_p3_packing, PatternGraph};
use turan_core::search::{exact_ex_from_stream, exact_ex_jobs, SearchResult};
use turan_core::verify::{verify_bounds, verify_conjecture_jobs};

#[derive(Parser)]
#[command(
    name = "turan",
    version,
    about = "Exact clique maximization in graphs forbidding disjoint pattern copies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed formula and print the integer.
    Formula {
        #[command(subcommand)]
        which: FormulaCmd,
    },
    /// Build a named extremal graph and print it (graph6 or stats).
    Construct {
        #[command(subcommand)]
        which: ConstructCmd,
    },
    /// Count s-cliques in a graph, optionally through prescribed roots.
    Count(CountArgs),
    /// Packing numbers and disjoint-copy decisions.
    Pack(PackArgs),
    /// Exact optimum by exhaustive isomorph-free search.
    Exact(ExactArgs),
    /// Verify a law against exhaustive search; exit 2 on disagreement.
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
    /// Emit one row per n comparing formulas, constructions and search.
    Table(TableArgs),
}

#[derive(Subcommand)]
enum FormulaCmd {
    /// f(n,k,s), the join-construction clique count.
    F { n: usize, k: usize, s: usize },
    /// g(k,s), the large-n threshold.
    G { k: usize, s: usize },
    /// The path-free clique bound f_s(n,k,a).
    Luo {
        n: usize,
        k: usize,
        a: usize,
        s: usize,
    },
    /// max{C(3k-1,s), f(n,k,s)}, the conjectured optimum.
    Conjecture { n: usize, k: usize, s: usize },
}

#[derive(Copy, Clone, ValueEnum)]
enum EmitKind {
    Graph6,
    Stats,
}

#[derive(Args)]
struct ConstructCommon {
    /// What to print for the built graph.
    #[arg(long, value_enum, default_value = "graph6")]
    emit: EmitKind,
    /// First clique size in the stats range.
    #[arg(long, default_value_t = 3)]
    s_from: usize,
    /// Last clique size in the stats range.
    #[arg(long, default_value_t = 6)]
    s_to: usize,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// K_{3k-1} disjoint-union a maximal matching.
    Union {
        n: usize,
        k: usize,
        #[command(flatten)]
        common: ConstructCommon,
    },
    /// K_{k-1} joined to a maximal matching.
    Join {
        n: usize,
        k: usize,
        #[command(flatten)]
        common: ConstructCommon,
    },
    /// The fan: c triangles sharing one vertex.
    Fan {
        c: usize,
        #[command(flatten)]
        common: ConstructCommon,
    },
}

#[derive(Args)]
struct CountArgs {
    /// graph6 string, or "-" to read one line from stdin.
    #[arg(long)]
    graph: String,
    #[arg(long)]
    s: usize,
    /// Comma-separated vertices every counted clique must contain.
    #[arg(long)]
    through: Option<String>,
}

#[derive(Args)]
struct PackArgs {
    /// graph6 string, or "-" to read one line from stdin.
    #[arg(long)]
    graph: String,
    /// graph6 of the pattern; the 3-vertex path when omitted.
    #[arg(long)]
    pattern: Option<String>,
    /// When given, print whether k disjoint copies exist instead of the
    /// packing number.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s: usize,
    /// graph6 of the forbidden pattern; the 3-vertex path when omitted.
    #[arg(long)]
    pattern: Option<String>,
    /// Parallelism budget for the search.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Append-only result cache (newline-delimited JSON).
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Stream every visited class to this file as graph6 lines.
    #[arg(long)]
    emit_classes: Option<PathBuf>,
    /// Read candidate graphs from this graph6 file instead of
    /// enumerating internally.
    #[arg(long)]
    classes_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Compare the search optimum and witness shapes to the conjectured
    /// law for the 3-vertex path.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check lower <= exact <= upper for an arbitrary small pattern.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        /// graph6 of the forbidden pattern.
        #[arg(long)]
        pattern: String,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    n_from: usize,
    #[arg(long)]
    n_to: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    /// Diagnostic: evaluate the bound sums with the convention
    /// C(0,s)=1 instead of the standard one.
    #[arg(long, default_value_t = false)]
    zero_chooses_one: bool,
}

enum CliError {
    /// Bad arguments or I/O trouble; exit 1.
    Usage(String),
    /// A verification check failed; exit 2 (the report was printed).
    CheckFailed,
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn core_usage(context: &str, e: turan_core::Error) -> CliError {
    CliError::Usage(format!("{context}: {e}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not usage errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::CheckFailed) => ExitCode::from(2),
    }
}

fn parse_graph_arg(flag: &str, value: &str) -> Result<Graph, CliError> {
    let text = if value == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        match buf.lines().next() {
            Some(line) => line.to_string(),
            None => return usage(format!("{flag}: empty stdin")),
        }
    } else {
        value.to_string()
    };
    graph6::decode_str(&text).map_err(|e| core_usage(flag, e))
}

fn parse_pattern_arg(flag: &str, value: Option<&str>) -> Result<PatternGraph, CliError> {
    match value {
        None => Ok(PatternGraph::p3()),
        Some(text) => {
            let g = graph6::decode_str(text).map_err(|e| core_usage(flag, e))?;
            PatternGraph::new(g).map_err(|e| core_usage(flag, e))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Formula { which } => run_formula(which),
        Command::Construct { which } => run_construct(which),
        Command::Count(args) => run_count(args),
        Command::Pack(args) => run_pack(args),
        Command::Exact(args) => run_exact(args),
        Command::Verify { which } => run_verify(which),
        Command::Table(args) => run_table(args),
    }
}

fn run_formula(which: FormulaCmd) -> Result<(), CliError> {
    let value = match which {
        FormulaCmd::F { n, k, s } => f_formula(n, k, s).map_err(|e| core_usage("formula f", e))?,
        FormulaCmd::G { k, s } => g_threshold(k, s).map_err(|e| core_usage("formula g", e))?,
        FormulaCmd::Luo { n, k, a, s } => {
            luo_f(n, k, a, s).map_err(|e| core_usage("formula luo", e))?
        }
        FormulaCmd::Conjecture { n, k, s } => {
            conjecture_value(n, k, s).map_err(|e| core_usage("formula conjecture", e))?
        }
    };
    println!("{value}");
    Ok(())
}

fn emit_graph(g: &Graph, common: &ConstructCommon) -> Result<(), CliError> {
    match common.emit {
        EmitKind::Graph6 => println!("{}", g.to_graph6()),
        EmitKind::Stats => {
            if common.s_from > common.s_to {
                return usage("--s-from must not exceed --s-to");
            }
            println!("order: {}", g.order());
            println!("edges: {}", g.edge_count());
            for s in common.s_from..=common.s_to {
                let c = count_cliques(g, s).map_err(|e| core_usage("stats", e))?;
                println!("cliques[{s}]: {c}");
            }
        }
    }
    Ok(())
}

fn run_construct(which: ConstructCmd) -> Result<(), CliError> {
    match which {
        ConstructCmd::Union { n, k, common } => {
            let g = build_conjecture_union(n, k).map_err(|e| core_usage("construct union", e))?;
            emit_graph(&g, &common)
        }
        ConstructCmd::Join { n, k, common } => {
            let g = build_conjecture_join(n, k).map_err(|e| core_usage("construct join", e))?;
            emit_graph(&g, &common)
        }
        ConstructCmd::Fan { c, common } => {
            let g = Graph::fan(c).map_err(|e| core_usage("construct fan", e))?;
            emit_graph(&g, &common)
        }
    }
}

fn run_count(args: CountArgs) -> Result<(), CliError> {
    let g = parse_graph_arg("--graph", &args.graph)?;
    let value = match &args.through {
        None => count_cliques(&g, args.s).map_err(|e| core_usage("count", e))?,
        Some(list) => {
            let mut roots = VertexSet::EMPTY;
            for part in list.split(',') {
                let v: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("--through: bad vertex {part:?}")))?;
                if v >= g.order() {
                    return usage(format!(
                        "--through: vertex {v} outside order {}",
                        g.order()
                    ));
                }
                roots.insert(v);
            }
            count_cliques_through(&g, args.s, roots).map_err(|e| core_usage("count", e))?
        }
    };
    println!("{value}");
    Ok(())
}

fn run_pack(args: PackArgs) -> Result<(), CliError> {
    let g = parse_graph_arg("--graph", &args.graph)?;
    let pattern = parse_pattern_arg("--pattern", args.pattern.as_deref())?;
    match (args.pattern.is_some(), args.k) {
        // Plain P3 packing number.
        (false, None) => println!("{}", max_p3_packing(&g)),
        // Decision: k disjoint copies of the pattern?
        (_, Some(k)) => {
            let answer = if pattern.is_p3() {
                max_p3_packing(&g) >= k
            } else {
                has_k_disjoint(&g, &pattern, k).map_err(|e| core_usage("pack", e))?
            };
            println!("{answer}");
        }
        // Packing number for a general pattern via iterated decisions.
        (true, None) => {
            if pattern.is_p3() {
                println!("{}", max_p3_packing(&g));
                return Ok(());
            }
            let ceiling = g.order() / pattern.order();
            let mut value = 0;
            for k in 1..=ceiling {
                if has_k_disjoint(&g, &pattern, k).map_err(|e| core_usage("pack", e))? {
                    value = k;
                } else {
                    break;
                }
            }
            println!("{value}");
        }
    }
    Ok(())
}

fn search_to_record(result: &SearchResult) -> CacheRecord {
    CacheRecord {
        n: result.n,
        k: result.k,
        s: result.s,
        pattern: result.pattern.clone(),
        value: result.value,
        witnesses: result.witnesses.iter().map(|w| w.to_string()).collect(),
        method: result.method,
        tool_version: TOOL_VERSION.to_string(),
    }
}

fn run_exact(args: ExactArgs) -> Result<(), CliError> {
    let pattern = parse_pattern_arg("--pattern", args.pattern.as_deref())?;
    let pattern_g6 = turan_core::canonical_label(pattern.graph()).to_string();
    if args.jobs == 0 {
        return usage("--jobs must be at least 1");
    }

    if let Some(path) = &args.cache {
        let lookup = cache_get(path, args.n, args.k, args.s, &pattern_g6)?;
        if lookup.corrupt_lines > 0 {
            eprintln!("cache: skipped {} corrupt lines", lookup.corrupt_lines);
        }
        if let Some(record) = lookup.record {
            eprintln!("cache: hit");
            println!("{}", serde_json::to_string(&record).expect("serializes"));
            return Ok(());
        }
    }

    let result = if let Some(path) = &args.classes_file {
        let text = std::fs::read_to_string(path)?;
        let graphs = graph6::decode_lines(&text)
            .map_err(|e| core_usage("--classes-file", e))?;
        exact_ex_from_stream(args.n, args.s, args.k, &pattern, graphs)
            .map_err(|e| core_usage("exact", e))?
    } else if let Some(path) = &args.emit_classes {
        let file = Mutex::new(std::io::BufWriter::new(std::fs::File::create(path)?));
        let sink = |g: &Graph| {
            use std::io::Write;
            let mut f = file.lock().unwrap();
            let _ = writeln!(f, "{}", g.to_graph6());
        };
        exact_ex_jobs(args.n, args.s, args.k, &pattern, args.jobs, Some(&sink))
            .map_err(|e| core_usage("exact", e))?
    } else {
        exact_ex_jobs(args.n, args.s, args.k, &pattern, args.jobs, None)
            .map_err(|e| core_usage("exact", e))?
    };

    eprintln!(
        "stats: classes_visited={} nodes_pruned={} elapsed={:?}",
        result.classes_visited, result.nodes_pruned, result.elapsed
    );
    let record = search_to_record(&result);
    if let Some(path) = &args.cache {
        cache_put(path, &record)?;
    }
    println!("{}", serde_json::to_string(&record).expect("serializes"));
    Ok(())
}

fn run_verify(which: VerifyCmd) -> Result<(), CliError> {
    match which {
        VerifyCmd::Conjecture { n, k, s, jobs } => {
            let report =
                verify_conjecture_jobs(n, k, s, jobs).map_err(|e| core_usage("verify", e))?;
            println!("{}", report.to_json());
            if report.ok() {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        VerifyCmd::Bounds { n, k, s, pattern } => {
            let h = parse_pattern_arg("--pattern", Some(&pattern))?;
            let report = verify_bounds(n, k, s, &h).map_err(|e| core_usage("verify", e))?;
            println!("{}", serde_json::to_string(&report).expect("serializes"));
            if report.chain_ok == Some(true) {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
    }
}

#[derive(serde::Serialize)]
struct TableRow {
    n: usize,
    k: usize,
    s: usize,
    formula: Option<u64>,
    construction: Option<u64>,
    exact: Option<u64>,
    lower: Option<u64>,
    upper: Option<u64>,
}

fn opt_cell(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn run_table(args: TableArgs) -> Result<(), CliError> {
    if args.n_from > args.n_to {
        return usage("--n-from must not exceed --n-to");
    }
    let conv = if args.zero_chooses_one {
        BinomConvention::ZeroChoosesOne
    } else {
        BinomConvention::Standard
    };
    let oracle = P3ClosedOracle;
    let p3 = PatternGraph::p3();
    let mut rows = Vec::new();
    for n in args.n_from..=args.n_to {
        let formula = conjecture_value(n, args.k, args.s).ok();

        let union_count = build_conjecture_union(n, args.k)
            .ok()
            .map(|g| count_cliques(&g, args.s))
            .transpose()
            .map_err(|e| core_usage("table", e))?;
        let join_count = build_conjecture_join(n, args.k)
            .ok()
            .map(|g| count_cliques(&g, args.s))
            .transpose()
            .map_err(|e| core_usage("table", e))?;
        let construction = match (union_count, join_count) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };

        let exact = if n <= turan_core::search::ENUM_CAP {
            Some(
                exact_ex_jobs(n, args.s, args.k, &p3, 1, None)
                    .map_err(|e| core_usage("table", e))?
                    .value,
            )
        } else {
            None
        };

        let lower = thm_lower_with(n, args.k, args.s, 3, &oracle, conv)
            .ok()
            .map(|b| b.best);
        let upper = thm_upper_with(n, args.k, args.s, 3, &oracle, conv).ok();

        rows.push(TableRow {
            n,
            k: args.k,
            s: args.s,
            formula,
            construction,
            exact,
            lower,
            upper,
        });
    }

    match args.format {
        TableFormat::Csv => {
            println!("n,k,s,formula,construction,exact,lower,upper");
            for r in rows {
                println!(
                    "{},{},{},{},{},{},{},{}",
                    r.n,
                    r.k,
                    r.s,
                    opt_cell(r.formula),
                    opt_cell(r.construction),
                    opt_cell(r.exact),
                    opt_cell(r.lower),
                    opt_cell(r.upper)
                );
            }
        }
        TableFormat::Json => {
            println!("{}", serde_json::to_string(&rows).expect("serializes"));
        }
    }
    Ok(())
}
