//! `treespec`: analyze single graphs, verify corpora, generate graph6 streams.
//!
//! Exit codes: 0 when every verdict holds or is not applicable, 1 when any
//! verdict is violated, 2 on usage, config or parse errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use treespec::corpus::{
    self, graph6_lines, parse_checks, CorpusSource, Family, GeneratorSpec, OutputFormat, RunConfig,
    SizeRange,
};
use treespec::graph::{parse_graph6, read_graph6_lines};
use treespec::Graph;

#[derive(Parser)]
#[command(
    name = "treespec",
    version,
    about = "Exact spectral checks on graph corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report invariants and every verdict for one graph6 string, or for each
    /// graph in a graph6 file.
    Analyze {
        /// graph6 string or path to a graph6 file.
        graph: String,
        #[arg(long, default_value = "human")]
        format: String,
        /// Seed for sampled incidence checks on graphs with many edges.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run checkers over a corpus.
    Verify(VerifyArgs),
    /// Print a generated corpus as graph6 lines.
    Generate {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Default)]
struct GeneratorArgs {
    /// trees, unicyclic, connected-random, complete or cycles.
    #[arg(long)]
    family: Option<String>,
    /// Inclusive order range `A..B`.
    #[arg(long)]
    sizes: Option<String>,
    /// Number of graphs for random families.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Edge probability for connected-random.
    #[arg(long)]
    edge_prob: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// graph6 corpus file.
    #[arg(long, conflicts_with = "family")]
    corpus: Option<PathBuf>,
    #[command(flatten)]
    generator: GeneratorArgs,
    /// Comma-separated claim ids, or `all`.
    #[arg(long)]
    checks: Option<String>,
    #[arg(long, env = "TREESPEC_JOBS")]
    jobs: Option<usize>,
    /// json, csv or human.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    fail_fast: bool,
}

/// Flat config file mirroring the `verify` flags.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    corpus: Option<PathBuf>,
    family: Option<String>,
    sizes: Option<String>,
    count: Option<usize>,
    seed: Option<u64>,
    edge_prob: Option<f64>,
    checks: Option<Checks>,
    jobs: Option<usize>,
    format: Option<String>,
    out: Option<PathBuf>,
    fail_fast: Option<bool>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Checks {
    One(String),
    Many(Vec<String>),
}

impl Checks {
    fn joined(self) -> String {
        match self {
            Checks::One(s) => s,
            Checks::Many(v) => v.join(","),
        }
    }
}

type Failure = String;

fn generator_spec(g: GeneratorArgs) -> Result<GeneratorSpec, Failure> {
    let family: Family = g
        .family
        .ok_or("a generator corpus needs --family")?
        .parse()
        .map_err(err)?;
    let sizes: SizeRange = g
        .sizes
        .ok_or("a generator corpus needs --sizes")?
        .parse()
        .map_err(err)?;
    Ok(GeneratorSpec {
        family,
        sizes,
        count: g.count.unwrap_or(1),
        seed: g.seed,
        edge_prob: g.edge_prob.unwrap_or(GeneratorSpec::DEFAULT_EDGE_PROB),
    })
}

fn err(e: impl std::fmt::Display) -> Failure {
    e.to_string()
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn read_config(path: &Path) -> Result<FileConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn build_config(args: VerifyArgs) -> Result<(RunConfig, Option<PathBuf>), Failure> {
    let file = match &args.config {
        Some(p) => read_config(p)?,
        None => FileConfig::default(),
    };
    let flag_generator = args.generator.family.is_some();
    let generator = GeneratorArgs {
        family: args.generator.family.or(file.family),
        sizes: args.generator.sizes.or(file.sizes),
        count: args.generator.count.or(file.count),
        seed: args.generator.seed.or(file.seed),
        edge_prob: args.generator.edge_prob.or(file.edge_prob),
    };
    // A family given on the command line replaces a corpus file from the config.
    let corpus = args
        .corpus
        .or(if flag_generator { None } else { file.corpus });
    let source = match corpus {
        Some(path) => CorpusSource::File(path),
        None if generator.family.is_some() => CorpusSource::Generator(generator_spec(generator)?),
        None => return Err("give --corpus FILE or --family NAME".into()),
    };
    let checks = match args.checks.or(file.checks.map(Checks::joined)) {
        Some(list) => parse_checks(&list).map_err(err)?,
        None => Vec::new(),
    };
    let format: OutputFormat = args
        .format
        .or(file.format)
        .as_deref()
        .unwrap_or("json")
        .parse()
        .map_err(err)?;
    let jobs = args.jobs.or(file.jobs).unwrap_or_else(default_jobs);
    let fail_fast = args.fail_fast || file.fail_fast.unwrap_or(false);
    let out = args.out.or(file.out);
    Ok((
        RunConfig::new(source, &checks, jobs, format, fail_fast),
        out,
    ))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(err),
    }
}

fn analyze_graphs(input: &str) -> Result<Vec<Graph>, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {input}: {e}"))?;
        read_graph6_lines(&text).map_err(|(line, e)| format!("{input}:{line}: {e}"))
    } else {
        parse_graph6(input).map(|g| vec![g]).map_err(err)
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze {
            graph,
            format,
            seed,
        } => {
            let graphs = analyze_graphs(&graph)?;
            let format: OutputFormat = format.parse().map_err(err)?;
            let mut violated = false;
            let mut text = String::new();
            for g in &graphs {
                let report = corpus::analyze(g, seed);
                violated |= report.verdicts.iter().any(|v| v.is_violated());
                text.push_str(&match format {
                    OutputFormat::Human => report.to_human(),
                    _ => report.to_json(),
                });
            }
            emit(&text, None)?;
            Ok(u8::from(violated))
        }
        Command::Verify(args) => {
            let (config, out) = build_config(args)?;
            let report = corpus::verify(&config).map_err(err)?;
            emit(&report.render(), out.as_deref())?;
            Ok(u8::from(report.has_violations()))
        }
        Command::Generate { generator, out } => {
            let graphs = corpus::generate(&generator_spec(generator)?).map_err(err)?;
            emit(&graph6_lines(&graphs).map_err(err)?, out.as_deref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("treespec: {message}");
            ExitCode::from(2)
        }
    }
}
