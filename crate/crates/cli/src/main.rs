//! Batch front end: solve, recognize, distance, gen, and bench
//! subcommands over the text graph format, with JSON/CSV output and a
//! fixed exit-code contract (0 ok, 1 parse/usage, 2 bad certificate,
//! 3 budget exceeded, 4 not in class).

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use edgedistant::comparability::{recognize_and_orient, ComparabilityBackend};
use edgedistant::distance::{find_distance, DistanceOutcome};
use edgedistant::gen::{flipped_instance, matching_deletion_instance, random_weights};
use edgedistant::oracle::{brute_wmc, brute_wmis, MAX_SUBSET_VERTICES};
use edgedistant::solver::{wmc_k, wmis_k, SolveStats};
use edgedistant::{DistantEdgeSet, Error, Graph, Solution};

const EXIT_OK: i32 = 0;
const EXIT_PARSE: i32 = 1;
const EXIT_CERTIFICATE: i32 = 2;
const EXIT_BUDGET: i32 = 3;
const EXIT_NOT_IN_CLASS: i32 = 4;

#[derive(Parser)]
#[command(
    name = "edgedistant",
    version,
    about = "Weighted clique and independent set on graphs a few edge edits from comparability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem given a distant-edge set, or search for one first
    Solve(SolveArgs),
    /// Test comparability membership and emit a transitive orientation
    Recognize(RecognizeArgs),
    /// Compute the transitive-edge-distance and a witness set
    Distance(DistanceArgs),
    /// Generate a random instance with a known certificate
    Gen(GenArgs),
    /// Time solves across k and emit a CSV scaling table
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    /// Maximum-weight clique
    Clique,
    /// Maximum-weight independent set
    Is,
}

impl ProblemArg {
    fn as_str(self) -> &'static str {
        match self {
            ProblemArg::Clique => "clique",
            ProblemArg::Is => "is",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    /// Graphs admitting a transitive orientation
    Comparability,
}

#[derive(Args)]
#[command(group = ArgGroup::new("certificate").required(true).args(["set", "search"]))]
struct SolveArgs {
    /// Graph file in the text format
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Backend class
    #[arg(long, value_enum, default_value = "comparability")]
    class: ClassArg,
    /// Distant-edge-set file certifying the graph
    #[arg(long)]
    set: Option<PathBuf>,
    /// Search for a smallest distant-edge set before solving
    #[arg(long)]
    search: bool,
    /// Depth budget for --search
    #[arg(long, default_value_t = 8)]
    kmax: usize,
    /// Cross-check the answer against the brute-force oracle (n <= 24)
    #[arg(long)]
    verify: bool,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Emit JSON (always on; flag kept for scripts)
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RecognizeArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Write the orientation dump to this file on success
    #[arg(long)]
    emit_orientation: Option<PathBuf>,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Depth budget
    #[arg(long, default_value_t = 8)]
    kmax: usize,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Emit JSON (always on; flag kept for scripts)
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Vertex count
    #[arg(long)]
    n: usize,
    /// Edit count (flips applied to the comparability base)
    #[arg(long)]
    k: usize,
    /// Arc probability before transitive closure, in [0, 1]
    #[arg(long)]
    density: f64,
    /// RNG seed
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Vertex count per instance
    #[arg(long)]
    n: usize,
    /// Largest edit count; one CSV block per k in 0..=kmax
    #[arg(long)]
    kmax: usize,
    /// Instances per k
    #[arg(long)]
    trials: usize,
    /// RNG seed
    #[arg(long)]
    seed: u64,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_PARSE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Recognize(args) => cmd_recognize(args),
        Command::Distance(args) => cmd_distance(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench(args) => cmd_bench(args),
    };
    std::process::exit(code);
}

fn configure_threads(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        // ignore failure: the global pool can only be sized once
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

fn fail(code: i32, message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    code
}

/// Writes a line to stdout, treating a closed pipe (e.g. `| head`) as a
/// normal end of output rather than a panic.
fn emit(text: impl std::fmt::Display) {
    use std::io::Write;
    if writeln!(std::io::stdout(), "{text}").is_err() {
        std::process::exit(0);
    }
}

/// Like emit, without the trailing newline.
fn emit_raw(text: impl std::fmt::Display) {
    use std::io::Write;
    if write!(std::io::stdout(), "{text}").is_err() {
        std::process::exit(0);
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::NotInClass => EXIT_NOT_IN_CLASS,
        Error::CertificateFailed
        | Error::BadSet(_)
        | Error::SelfPair(_)
        | Error::NotAnEdge { .. }
        | Error::AlreadyAnEdge { .. }
        | Error::OutOfRange { .. } => EXIT_CERTIFICATE,
        Error::TooLarge { .. } => EXIT_PARSE,
    }
}

fn read_graph(path: &Path) -> Result<Graph, i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_PARSE, format_args!("{}: {e}", path.display())))?;
    Graph::parse(&text).map_err(|e| fail(EXIT_PARSE, format_args!("{}: {e}", path.display())))
}

fn print_json(value: &serde_json::Value) {
    emit(serde_json::to_string(value).expect("valid JSON"));
}

fn runtime_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn cmd_solve(args: SolveArgs) -> i32 {
    configure_threads(args.threads);
    let ClassArg::Comparability = args.class;
    let g = match read_graph(&args.graph) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let backend = ComparabilityBackend::new();
    let start = Instant::now();
    let set = if let Some(path) = &args.set {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return fail(EXIT_PARSE, format_args!("{}: {e}", path.display())),
        };
        match DistantEdgeSet::parse(&text) {
            Ok(s) => s,
            Err(e) => return fail(error_code(&e), format_args!("{}: {e}", path.display())),
        }
    } else {
        match find_distance(&g, &backend, args.kmax) {
            DistanceOutcome::Found(report) => report.witness,
            DistanceOutcome::ExceedsKMax { k_max, .. } => {
                return fail(
                    EXIT_BUDGET,
                    format_args!("no distant-edge set within kmax = {k_max}"),
                )
            }
        }
    };
    let solved: Result<(Solution, SolveStats), Error> = match args.problem {
        ProblemArg::Clique => wmc_k(&g, &set, &backend),
        ProblemArg::Is => wmis_k(&g, &set, &backend),
    };
    let (solution, stats) = match solved {
        Ok(pair) => pair,
        Err(e) => return fail(error_code(&e), e),
    };
    let elapsed = runtime_ms(start);
    let verified = if args.verify && g.n() <= MAX_SUBSET_VERTICES {
        let oracle = match args.problem {
            ProblemArg::Clique => brute_wmc(&g),
            ProblemArg::Is => brute_wmis(&g),
        };
        match oracle {
            Ok(reference) => json!(reference.weight == solution.weight),
            Err(e) => return fail(error_code(&e), e),
        }
    } else {
        json!(null)
    };
    print_json(&json!({
        "problem": args.problem.as_str(),
        "class": "comparability",
        "n": g.n(),
        "m": g.m(),
        "k": set.k(),
        "mode": set.mode().as_str(),
        "vertices": solution.vertices,
        "weight": solution.weight,
        "leaf_calls": stats.leaf_calls,
        "runtime_ms": elapsed,
        "verified": verified,
    }));
    EXIT_OK
}

fn cmd_recognize(args: RecognizeArgs) -> i32 {
    let g = match read_graph(&args.graph) {
        Ok(g) => g,
        Err(code) => return code,
    };
    match recognize_and_orient(&g) {
        Some(orientation) => {
            if let Some(path) = &args.emit_orientation {
                if let Err(e) = std::fs::write(path, orientation.dump()) {
                    return fail(EXIT_PARSE, format_args!("{}: {e}", path.display()));
                }
            }
            let arcs: Vec<[usize; 2]> =
                orientation.edges().iter().map(|&(u, v)| [u, v]).collect();
            print_json(&json!({
                "is_comparability": true,
                "n": g.n(),
                "m": g.m(),
                "orientation": arcs,
            }));
            EXIT_OK
        }
        None => {
            print_json(&json!({
                "is_comparability": false,
                "n": g.n(),
                "m": g.m(),
            }));
            EXIT_NOT_IN_CLASS
        }
    }
}

fn cmd_distance(args: DistanceArgs) -> i32 {
    configure_threads(args.threads);
    let g = match read_graph(&args.graph) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let backend = ComparabilityBackend::new();
    let start = Instant::now();
    match find_distance(&g, &backend, args.kmax) {
        DistanceOutcome::Found(report) => {
            let pairs: Vec<[usize; 2]> = report
                .witness
                .pairs()
                .iter()
                .map(|&(u, v)| [u, v])
                .collect();
            print_json(&json!({
                "xi": report.xi,
                "mode": report.witness.mode().as_str(),
                "pairs": pairs,
                "memberships_tested": report.memberships_tested,
                "runtime_ms": runtime_ms(start),
            }));
            EXIT_OK
        }
        DistanceOutcome::ExceedsKMax {
            k_max,
            memberships_tested,
        } => {
            print_json(&json!({
                "exceeds_kmax": true,
                "kmax": k_max,
                "memberships_tested": memberships_tested,
                "runtime_ms": runtime_ms(start),
            }));
            EXIT_BUDGET
        }
    }
}

fn cmd_gen(args: GenArgs) -> i32 {
    if !(0.0..=1.0).contains(&args.density) {
        return fail(
            EXIT_PARSE,
            format_args!("density {} is outside [0, 1]", args.density),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (g, set) = match flipped_instance(args.n, args.density, args.k, &mut rng) {
        Ok(pair) => pair,
        Err(e) => return fail(error_code(&e), e),
    };
    emit(format_args!(
        "# seed {} density {} flips {}\n# distant-edge set certifying the graph:",
        args.seed, args.density, args.k
    ));
    for line in set.to_text().lines() {
        emit(format_args!("# {line}"));
    }
    emit_raw(g.to_text());
    EXIT_OK
}

fn cmd_bench(args: BenchArgs) -> i32 {
    configure_threads(args.threads);
    let backend = ComparabilityBackend::new();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    emit("n,m,k,leaf_calls,runtime_ms,oracle_match");
    for k in 0..=args.kmax {
        for _ in 0..args.trials {
            let (bare, set) = match matching_deletion_instance(args.n, 0.4, k, &mut rng) {
                Ok(pair) => pair,
                Err(e) => return fail(error_code(&e), e),
            };
            let g = random_weights(&bare, 0, 100, &mut rng);
            let start = Instant::now();
            let (solution, stats) = match wmc_k(&g, &set, &backend) {
                Ok(pair) => pair,
                Err(e) => return fail(error_code(&e), e),
            };
            let elapsed = runtime_ms(start);
            let oracle_match = if g.n() <= MAX_SUBSET_VERTICES {
                match brute_wmc(&g) {
                    Ok(reference) => (reference.weight == solution.weight).to_string(),
                    Err(e) => return fail(error_code(&e), e),
                }
            } else {
                String::new()
            };
            emit(format_args!(
                "{},{},{},{},{},{}",
                g.n(),
                g.m(),
                k,
                stats.leaf_calls,
                elapsed,
                oracle_match
            ));
        }
    }
    EXIT_OK
}
