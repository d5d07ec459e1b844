//! Corpus sources, batch verification and reports.
//!
//! A corpus is either a graph6 file or a seeded generator spec. [`verify`]
//! runs the selected checkers over every graph on a bounded thread pool and
//! assembles a [`RunReport`] ordered by input index, then by claim, so the
//! report does not depend on the number of workers.

mod analyze;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::checks::ClaimId;
use crate::graph::{self, read_graph6_lines, Graph, GraphError, MAX_GRAPH6_ORDER};

pub use analyze::analyze;
pub use report::{
    graph6_lines, verify, verify_graphs, ClaimSummary, GraphRecord, RunReport, SCHEMA_VERSION,
};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {source}")]
    Parse { line: usize, source: GraphError },
    #[error(
        "unknown family {0:?}; expected trees, unicyclic, connected-random, complete or cycles"
    )]
    InvalidFamily(String),
    #[error("invalid size range {0:?}")]
    InvalidSizeRange(String),
    #[error("unknown output format {0:?}; expected json, csv or human")]
    InvalidFormat(String),
    #[error("family {0} is random and needs a seed")]
    MissingSeed(Family),
    #[error("jobs must be at least 1")]
    InvalidJobs,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Trees,
    Unicyclic,
    ConnectedRandom,
    Complete,
    Cycles,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Trees,
        Family::Unicyclic,
        Family::ConnectedRandom,
        Family::Complete,
        Family::Cycles,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Trees => "trees",
            Family::Unicyclic => "unicyclic",
            Family::ConnectedRandom => "connected-random",
            Family::Complete => "complete",
            Family::Cycles => "cycles",
        }
    }

    pub fn is_random(self) -> bool {
        matches!(
            self,
            Family::Trees | Family::Unicyclic | Family::ConnectedRandom
        )
    }

    /// Smallest order the generator accepts.
    pub fn min_order(self) -> usize {
        match self {
            Family::Unicyclic | Family::Cycles => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == wanted)
            .ok_or_else(|| CorpusError::InvalidFamily(s.to_string()))
    }
}

/// Inclusive order range, written `A..B` or just `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SizeRange {
    pub min: usize,
    pub max: usize,
}

impl SizeRange {
    pub fn new(min: usize, max: usize) -> Result<Self, CorpusError> {
        if min > max || min == 0 || max > MAX_GRAPH6_ORDER {
            return Err(CorpusError::InvalidSizeRange(format!("{min}..{max}")));
        }
        Ok(Self { min, max })
    }
}

impl fmt::Display for SizeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.min, self.max)
    }
}

impl FromStr for SizeRange {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CorpusError::InvalidSizeRange(s.to_string());
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        Self::new(a, b).map_err(|_| bad())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub sizes: SizeRange,
    /// Number of graphs for random families. Deterministic families emit
    /// one graph per order and ignore it.
    pub count: usize,
    pub seed: Option<u64>,
    /// Edge probability for `connected-random`.
    pub edge_prob: f64,
}

impl GeneratorSpec {
    pub const DEFAULT_EDGE_PROB: f64 = 0.5;

    fn validate(&self) -> Result<(), CorpusError> {
        if self.family.is_random() && self.seed.is_none() {
            return Err(CorpusError::MissingSeed(self.family));
        }
        if self.sizes.min < self.family.min_order() {
            return Err(CorpusError::InvalidSizeRange(format!(
                "{} (family {} needs order at least {})",
                self.sizes,
                self.family,
                self.family.min_order()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusSource {
    File(PathBuf),
    Generator(GeneratorSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Human,
}

impl FromStr for OutputFormat {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "human" => Ok(OutputFormat::Human),
            _ => Err(CorpusError::InvalidFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub source: CorpusSource,
    /// Sorted and deduplicated by [`RunConfig::new`].
    pub checks: Vec<ClaimId>,
    /// Worker threads. Left out of the serialized echo so that reports do not
    /// depend on it.
    #[serde(skip)]
    pub jobs: usize,
    pub format: OutputFormat,
    pub fail_fast: bool,
}

impl RunConfig {
    /// An empty `checks` list selects every claim.
    pub fn new(
        source: CorpusSource,
        checks: &[ClaimId],
        jobs: usize,
        format: OutputFormat,
        fail_fast: bool,
    ) -> Self {
        let mut checks = if checks.is_empty() {
            ClaimId::ALL.to_vec()
        } else {
            checks.to_vec()
        };
        checks.sort_unstable();
        checks.dedup();
        Self {
            source,
            checks,
            jobs,
            format,
            fail_fast,
        }
    }

    /// Seed for the sampling checkers; 0 for file corpora.
    pub fn base_seed(&self) -> u64 {
        match &self.source {
            CorpusSource::Generator(spec) => spec.seed.unwrap_or(0),
            CorpusSource::File(_) => 0,
        }
    }
}

/// Parses checker names separated by commas or whitespace. `all` selects
/// every claim.
pub fn parse_checks(list: &str) -> Result<Vec<ClaimId>, crate::checks::UnknownClaim> {
    let names: Vec<&str> = list
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if names.iter().any(|n| n.eq_ignore_ascii_case("all")) {
        return Ok(ClaimId::ALL.to_vec());
    }
    names.into_iter().map(str::parse).collect()
}

/// Graphs described by `spec`, in a fixed order for fixed arguments.
pub fn generate(spec: &GeneratorSpec) -> Result<Vec<Graph>, CorpusError> {
    spec.validate()?;
    let orders = spec.sizes.min..=spec.sizes.max;
    let graphs = match spec.family {
        Family::Complete => orders
            .map(graph::complete_graph)
            .collect::<Result<_, _>>()?,
        Family::Cycles => orders.map(graph::cycle).collect::<Result<_, _>>()?,
        family => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.expect("validated"));
            let mut out = Vec::with_capacity(spec.count);
            for _ in 0..spec.count {
                let n = rng.random_range(orders.clone());
                let sub_seed: u64 = rng.random();
                out.push(match family {
                    Family::Trees => graph::random_tree(n, sub_seed)?,
                    Family::Unicyclic => graph::random_unicyclic(n, sub_seed)?,
                    _ => graph::random_connected(n, spec.edge_prob, sub_seed)?,
                });
            }
            out
        }
    };
    Ok(graphs)
}

/// Reads a graph6 file (one graph per line, `#` comments allowed).
pub fn load_graph6_file(path: &std::path::Path) -> Result<Vec<Graph>, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_graph6_lines(&text).map_err(|(line, source)| CorpusError::Parse { line, source })
}

/// The graphs named by a corpus source.
pub fn load(source: &CorpusSource) -> Result<Vec<Graph>, CorpusError> {
    match source {
        CorpusSource::File(path) => load_graph6_file(path),
        CorpusSource::Generator(spec) => generate(spec),
    }
}
