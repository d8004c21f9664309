//! `mdlcausa`: cause-effect inference on discrete tables by two-part MDL
//! codelength comparison, plus the benchmark, lab and DAG-search commands.
//!
//! Exit codes: 0 on success, 2 on usage or parse errors, 3 when a resource
//! guard rejects the request.

mod dataset;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mdlcausa::codecs::Codec;
use mdlcausa::dag::{self, SearchResult};
use mdlcausa::driver::{run_pair_benchmark, BenchmarkSummary, GeneratorKind, PairBenchmarkConfig};
use mdlcausa::inference::{infer_direction, Direction, DirectionScore, InferenceOptions};
use mdlcausa::lab;
use mdlcausa::{rng, JointTable};

use dataset::Dataset;

/// Error carrying the process exit code.
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<mdlcausa::Error> for CliError {
    fn from(e: mdlcausa::Error) -> Self {
        let code = match &e {
            mdlcausa::Error::ResourceLimit(_) => 3,
            mdlcausa::Error::InvalidArgument(_) => 2,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "mdlcausa",
    version,
    about = "Cause-effect inference for discrete data via two-part MDL codelengths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Infer the causal direction between two columns of a table.
    Infer(InferArgs),
    /// Generate seeded synthetic pairs with known direction and score them.
    Benchmark(BenchmarkArgs),
    /// Desk-scale experiments on the theory.
    #[command(subcommand)]
    Lab(LabCommand),
    /// Exhaustively search all DAGs over the columns of a table.
    Dag(DagArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DelimiterArg {
    Comma,
    Tab,
}

impl DelimiterArg {
    fn to_char(self) -> char {
        match self {
            DelimiterArg::Comma => ',',
            DelimiterArg::Tab => '\t',
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CodecArg {
    Crude,
    Nml,
}

impl CodecArg {
    fn to_codec(self) -> Codec {
        match self {
            CodecArg::Crude => Codec::CrudeTwoPart,
            CodecArg::Nml => Codec::Nml,
        }
    }

    fn name(self) -> &'static str {
        match self {
            CodecArg::Crude => "crude",
            CodecArg::Nml => "nml",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct TableArgs {
    /// Input table (CSV or TSV).
    path: PathBuf,
    /// Field delimiter; comma or tab is auto-detected by default.
    #[arg(long, value_enum)]
    delimiter: Option<DelimiterArg>,
    /// Treat the first row as data instead of a header.
    #[arg(long)]
    no_header: bool,
    /// Report the label-to-code maps on stderr.
    #[arg(long)]
    verbose: bool,
}

impl TableArgs {
    fn load(&self) -> Result<Dataset, CliError> {
        let data = dataset::load_table(
            &self.path,
            self.delimiter.map(DelimiterArg::to_char),
            !self.no_header,
        )?;
        if self.verbose {
            for (name, levels) in data.names.iter().zip(&data.levels) {
                let map: Vec<String> = levels
                    .iter()
                    .enumerate()
                    .map(|(code, label)| format!("{label}={code}"))
                    .collect();
                eprintln!("# column {name}: {}", map.join(","));
            }
        }
        Ok(data)
    }
}

#[derive(Args)]
struct ScoringArgs {
    /// Codec used for both directions.
    #[arg(long, value_enum, default_value = "crude")]
    codec: CodecArg,
    /// Tie tolerance in bits.
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
    /// Significance level of the dependence gate.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Skip the dependence gate and treat every pair as dependent.
    #[arg(long)]
    no_gate: bool,
}

impl ScoringArgs {
    fn options(&self) -> Result<InferenceOptions, CliError> {
        if self.eps < 0.0 {
            return Err(CliError::usage("--eps must be >= 0"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CliError::usage("--alpha must lie in (0, 1)"));
        }
        Ok(InferenceOptions {
            codec: self.codec.to_codec(),
            eps: self.eps,
            alpha: self.alpha,
            gate: !self.no_gate,
        })
    }
}

#[derive(Args)]
struct InferArgs {
    #[command(flatten)]
    table: TableArgs,
    /// Candidate cause column (name or zero-based index).
    #[arg(long)]
    x: String,
    /// Candidate effect column (name or zero-based index).
    #[arg(long)]
    y: String,
    #[command(flatten)]
    scoring: ScoringArgs,
    #[arg(long, value_enum, default_value = "json", env = "MDLCAUSA_FORMAT")]
    format: FormatArg,
}

#[derive(Args)]
struct BenchmarkArgs {
    /// Number of generated pairs.
    #[arg(long, default_value_t = 200)]
    pairs: usize,
    /// Observations per pair.
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    kx: usize,
    #[arg(long, default_value_t = 4)]
    ky: usize,
    /// Generator family; ground truth is always X -> Y.
    #[arg(long = "gen", value_enum, default_value = "anm")]
    generator: GeneratorArg,
    /// Dirichlet concentration of the generators.
    #[arg(long, default_value_t = 1.0)]
    alpha_dir: f64,
    #[command(flatten)]
    scoring: ScoringArgs,
    #[arg(long, default_value_t = 0, env = "MDLCAUSA_SEED")]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv", env = "MDLCAUSA_FORMAT")]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratorArg {
    Dirichlet,
    Anm,
}

#[derive(Subcommand)]
enum LabCommand {
    /// Convergence of sampled codelengths to the joint entropy.
    Theorem1(Theorem1Args),
    /// Joint-encoding scores next to the two-part scores of one table.
    Symmetry(SymmetryArgs),
}

#[derive(Args)]
struct Theorem1Args {
    /// `random` for a seeded Dirichlet joint, or a path to a probability
    /// matrix (one row per cause symbol).
    #[arg(long, default_value = "random")]
    joint: String,
    /// Cause alphabet of the random joint.
    #[arg(long, default_value_t = 3)]
    kx: usize,
    /// Effect alphabet of the random joint.
    #[arg(long, default_value_t = 3)]
    ky: usize,
    /// Dirichlet concentration of the random joint.
    #[arg(long, default_value_t = 1.0)]
    alpha_dir: f64,
    /// Comma-separated sample sizes.
    #[arg(long, default_value = "100,1000,10000")]
    n_grid: String,
    /// Repetitions per sample size.
    #[arg(long, default_value_t = 10)]
    reps: usize,
    #[arg(long, default_value_t = 0, env = "MDLCAUSA_SEED")]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv", env = "MDLCAUSA_FORMAT")]
    format: FormatArg,
}

#[derive(Args)]
struct SymmetryArgs {
    #[command(flatten)]
    table: TableArgs,
    /// First column (name or zero-based index).
    #[arg(long, default_value = "0")]
    x: String,
    /// Second column (name or zero-based index).
    #[arg(long, default_value = "1")]
    y: String,
    #[arg(long, value_enum, default_value = "json", env = "MDLCAUSA_FORMAT")]
    format: FormatArg,
}

#[derive(Args)]
struct DagArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long, value_enum, default_value = "crude")]
    codec: CodecArg,
    /// Refuse to search above this many variables.
    #[arg(long, default_value_t = 5)]
    max_m: usize,
    /// Keep only the best this many DAGs in the reported ranking.
    #[arg(long)]
    top: Option<usize>,
    #[arg(long, value_enum, default_value = "json", env = "MDLCAUSA_FORMAT")]
    format: FormatArg,
}

fn direction_label(d: Direction) -> &'static str {
    match d {
        Direction::XtoY => "X->Y",
        Direction::YtoX => "Y->X",
        Direction::Undecided => "undecided",
    }
}

#[derive(Serialize)]
struct InferOutput<'a> {
    direction: &'a str,
    l_xy_bits: f64,
    l_yx_bits: f64,
    delta_bits: f64,
    confidence: f64,
    dependent: bool,
    n: usize,
    k_x: usize,
    k_y: usize,
    codec: &'a str,
}

fn cmd_infer(args: InferArgs) -> Result<String, CliError> {
    let data = args.table.load()?;
    let col_x = data.resolve_column(&args.x)?;
    let col_y = data.resolve_column(&args.y)?;
    if col_x == col_y {
        return Err(CliError::usage("--x and --y must name different columns"));
    }
    let opts = args.scoring.options()?;
    let score: DirectionScore = infer_direction(&data.sample, col_x, col_y, &opts)?;
    let out = InferOutput {
        direction: direction_label(score.decision),
        l_xy_bits: score.l_xy,
        l_yx_bits: score.l_yx,
        delta_bits: score.delta,
        confidence: score.confidence,
        dependent: score.dependent,
        n: score.n,
        k_x: data.sample.alphabet_size(col_x),
        k_y: data.sample.alphabet_size(col_y),
        codec: args.scoring.codec.name(),
    };
    Ok(match args.format {
        FormatArg::Json => serde_json::to_string(&out).expect("finite scores serialize"),
        FormatArg::Csv => {
            let mut s = String::new();
            s.push_str(
                "direction,l_xy_bits,l_yx_bits,delta_bits,confidence,dependent,n,k_x,k_y,codec\n",
            );
            let _ = write!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                out.direction,
                out.l_xy_bits,
                out.l_yx_bits,
                out.delta_bits,
                out.confidence,
                out.dependent,
                out.n,
                out.k_x,
                out.k_y,
                out.codec
            );
            s
        }
    })
}

#[derive(Serialize)]
struct BenchmarkPairOutput<'a> {
    pair_id: usize,
    truth: &'a str,
    decision: &'a str,
    l_xy: f64,
    l_yx: f64,
    delta: f64,
}

#[derive(Serialize)]
struct BenchmarkOutput<'a> {
    pairs: Vec<BenchmarkPairOutput<'a>>,
    decided: usize,
    correct: usize,
    accuracy: f64,
    decision_rate: f64,
}

fn cmd_benchmark(args: BenchmarkArgs) -> Result<String, CliError> {
    let scoring = args.scoring.options()?;
    if args.kx < 2 || args.ky < 2 {
        return Err(CliError::usage("--kx and --ky must be >= 2"));
    }
    if args.pairs > 0 && args.n == 0 {
        return Err(CliError::usage("--n must be >= 1"));
    }
    let cfg = PairBenchmarkConfig {
        pairs: args.pairs,
        n: args.n,
        k_x: args.kx,
        k_y: args.ky,
        generator: match args.generator {
            GeneratorArg::Dirichlet => GeneratorKind::Dirichlet,
            GeneratorArg::Anm => GeneratorKind::Anm,
        },
        alpha_dir: args.alpha_dir,
        codec: scoring.codec,
        eps: scoring.eps,
        alpha: scoring.alpha,
        gate: scoring.gate,
        seed: args.seed,
    };
    let records = run_pair_benchmark(&cfg, true)?;
    let summary = BenchmarkSummary::from_records(&records);
    let pairs: Vec<BenchmarkPairOutput> = records
        .iter()
        .map(|r| BenchmarkPairOutput {
            pair_id: r.pair_id,
            truth: "X->Y",
            decision: direction_label(r.score.decision),
            l_xy: r.score.l_xy,
            l_yx: r.score.l_yx,
            delta: r.score.delta,
        })
        .collect();
    Ok(match args.format {
        FormatArg::Json => serde_json::to_string(&BenchmarkOutput {
            pairs,
            decided: summary.decided,
            correct: summary.correct,
            accuracy: summary.accuracy,
            decision_rate: summary.decision_rate,
        })
        .expect("finite scores serialize"),
        FormatArg::Csv => {
            let mut s = String::from("pair_id,truth,decision,l_xy,l_yx,delta\n");
            for p in &pairs {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    p.pair_id, p.truth, p.decision, p.l_xy, p.l_yx, p.delta
                );
            }
            let _ = write!(
                s,
                "# accuracy={} decision_rate={}",
                summary.accuracy, summary.decision_rate
            );
            s
        }
    })
}

#[derive(Serialize)]
struct LabRowOutput<'a> {
    experiment: &'a str,
    n: usize,
    rep: usize,
    direction: &'a str,
    value_bits: f64,
    reference_bits: f64,
    gap_bits: f64,
}

fn cmd_lab_theorem1(args: Theorem1Args) -> Result<String, CliError> {
    let joint = if args.joint == "random" {
        if args.kx < 1 || args.ky < 1 {
            return Err(CliError::usage("--kx and --ky must be >= 1"));
        }
        let cells = mdlcausa::distributions::dirichlet_categorical(
            args.kx * args.ky,
            args.alpha_dir,
            &mut rng::substream(args.seed, u64::MAX),
        )?;
        JointTable::new(
            (0..args.kx)
                .map(|x| cells.probs()[x * args.ky..(x + 1) * args.ky].to_vec())
                .collect(),
        )?
    } else {
        dataset::load_joint(std::path::Path::new(&args.joint), None)?
    };
    let n_grid = args
        .n_grid
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| CliError::usage(format!("--n-grid: '{tok}' is not a sample size")))
        })
        .collect::<Result<Vec<usize>, CliError>>()?;
    let rows = lab::theorem1_convergence(&joint, &n_grid, args.reps, args.seed, true)?;
    let outputs: Vec<LabRowOutput> = rows
        .iter()
        .map(|r| LabRowOutput {
            experiment: &r.experiment,
            n: r.n,
            rep: r.rep,
            direction: direction_label(r.direction),
            value_bits: r.value_bits,
            reference_bits: r.reference_bits,
            gap_bits: r.gap_bits,
        })
        .collect();
    Ok(match args.format {
        FormatArg::Json => serde_json::to_string(&outputs).expect("finite rows serialize"),
        FormatArg::Csv => {
            let mut s =
                String::from("experiment,n,rep,direction,value_bits,reference_bits,gap_bits");
            for r in &outputs {
                let _ = write!(
                    s,
                    "\n{},{},{},{},{},{},{}",
                    r.experiment,
                    r.n,
                    r.rep,
                    r.direction,
                    r.value_bits,
                    r.reference_bits,
                    r.gap_bits
                );
            }
            s
        }
    })
}

#[derive(Serialize)]
struct SymmetryOutput {
    l_joint_xy: f64,
    l_joint_yx: f64,
    crude_l_xy: f64,
    crude_l_yx: f64,
}

fn cmd_lab_symmetry(args: SymmetryArgs) -> Result<String, CliError> {
    let data = args.table.load()?;
    let col_x = data.resolve_column(&args.x)?;
    let col_y = data.resolve_column(&args.y)?;
    if col_x == col_y {
        return Err(CliError::usage("--x and --y must name different columns"));
    }
    let scores = lab::symmetry_collapse(&data.sample, col_x, col_y)?;
    let out = SymmetryOutput {
        l_joint_xy: scores.l_joint_xy,
        l_joint_yx: scores.l_joint_yx,
        crude_l_xy: scores.crude_l_xy,
        crude_l_yx: scores.crude_l_yx,
    };
    Ok(match args.format {
        FormatArg::Json => serde_json::to_string(&out).expect("finite scores serialize"),
        FormatArg::Csv => format!(
            "l_joint_xy,l_joint_yx,crude_l_xy,crude_l_yx\n{},{},{},{}",
            out.l_joint_xy, out.l_joint_yx, out.crude_l_xy, out.crude_l_yx
        ),
    })
}

fn edge_lines(dag: &dag::Dag, names: &[String]) -> Vec<String> {
    dag.parent_sets()
        .iter()
        .enumerate()
        .filter(|(_, ps)| !ps.is_empty())
        .map(|(child, ps)| {
            let parents: Vec<&str> = ps.iter().map(|&p| names[p].as_str()).collect();
            format!("{} <- {}", names[child], parents.join(","))
        })
        .collect()
}

#[derive(Serialize)]
struct DagRankingEntry {
    score_bits: f64,
    parents: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct DagOutput {
    score_bits: f64,
    nodes: Vec<String>,
    parents: Vec<Vec<usize>>,
    edges: Vec<String>,
    ranking: Vec<DagRankingEntry>,
}

fn cmd_dag(args: DagArgs) -> Result<String, CliError> {
    let data = args.table.load()?;
    let result: SearchResult =
        dag::exhaustive_search(&data.sample, &args.codec.to_codec(), args.max_m, true)?;
    let kept = args.top.unwrap_or(result.ranking.len());
    Ok(match args.format {
        FormatArg::Json => {
            let out = DagOutput {
                score_bits: result.score,
                nodes: data.names.clone(),
                parents: result.best.parent_sets().to_vec(),
                edges: edge_lines(&result.best, &data.names),
                ranking: result
                    .ranking
                    .iter()
                    .take(kept)
                    .map(|(d, score)| DagRankingEntry {
                        score_bits: *score,
                        parents: d.parent_sets().to_vec(),
                    })
                    .collect(),
            };
            serde_json::to_string(&out).expect("finite scores serialize")
        }
        FormatArg::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "score_bits,{}", result.score);
            for line in edge_lines(&result.best, &data.names) {
                let _ = writeln!(s, "{line}");
            }
            s.push_str("rank,score_bits,dag");
            for (rank, (d, score)) in result.ranking.iter().take(kept).enumerate() {
                let edges: Vec<String> = d
                    .parent_sets()
                    .iter()
                    .enumerate()
                    .filter(|(_, ps)| !ps.is_empty())
                    .map(|(child, ps)| {
                        let parents: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                        format!("{child}<-{}", parents.join("+"))
                    })
                    .collect();
                let _ = write!(s, "\n{rank},{score},{}", edges.join(" "));
            }
            s
        }
    })
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Infer(args) => cmd_infer(args),
        Command::Benchmark(args) => cmd_benchmark(args),
        Command::Lab(LabCommand::Theorem1(args)) => cmd_lab_theorem1(args),
        Command::Lab(LabCommand::Symmetry(args)) => cmd_lab_symmetry(args),
        Command::Dag(args) => cmd_dag(args),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => println!("{output}"),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
