use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{load, CorpusError, RunConfig};
use crate::checks::{run_check, ClaimId, Status, Verdict};
use crate::graph::{to_graph6, Graph};

pub const SCHEMA_VERSION: u32 = 1;
const TOOL: &str = "treespec";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClaimSummary {
    pub holds: usize,
    pub violated: usize,
    pub not_applicable: usize,
    pub tight: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphRecord {
    pub index: usize,
    pub graph6: String,
    pub order: usize,
    pub size: usize,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub wall_time_ms: u64,
    /// Number of graphs in the report; smaller than the corpus when a
    /// fail-fast run stopped early.
    pub graph_count: usize,
    pub violated: usize,
    pub summary: BTreeMap<ClaimId, ClaimSummary>,
    pub graphs: Vec<GraphRecord>,
}

/// Mixes the run seed with the graph index so each graph gets its own
/// sampling stream regardless of scheduling.
fn graph_seed(base: u64, index: usize) -> u64 {
    base ^ (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn record(index: usize, g: &Graph, checks: &[ClaimId], base_seed: u64) -> GraphRecord {
    let seed = graph_seed(base_seed, index);
    GraphRecord {
        index,
        graph6: crate::checks::graph_id(g),
        order: g.order(),
        size: g.size(),
        verdicts: checks.iter().map(|&c| run_check(c, g, seed)).collect(),
    }
}

fn has_violation(r: &GraphRecord) -> bool {
    r.verdicts.iter().any(Verdict::is_violated)
}

/// Loads the configured corpus and verifies it.
pub fn verify(config: &RunConfig) -> Result<RunReport, CorpusError> {
    let graphs = load(&config.source)?;
    verify_graphs(config, &graphs)
}

/// Runs the configured checkers on `graphs`, one graph per task.
pub fn verify_graphs(config: &RunConfig, graphs: &[Graph]) -> Result<RunReport, CorpusError> {
    if config.jobs == 0 {
        return Err(CorpusError::InvalidJobs);
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CorpusError::ThreadPool(e.to_string()))?;
    let base = config.base_seed();
    let indexed: Vec<(usize, &Graph)> = graphs.iter().enumerate().collect();
    let records: Vec<GraphRecord> = if config.fail_fast {
        // Chunks run in input order; the report ends at the first violating
        // graph, which does not depend on the chunk size.
        let mut out = Vec::new();
        for chunk in indexed.chunks(config.jobs * 4) {
            let batch: Vec<GraphRecord> = pool.install(|| {
                chunk
                    .par_iter()
                    .map(|&(i, g)| record(i, g, &config.checks, base))
                    .collect()
            });
            if let Some(pos) = batch.iter().position(has_violation) {
                out.extend(batch.into_iter().take(pos + 1));
                break;
            }
            out.extend(batch);
        }
        out
    } else {
        pool.install(|| {
            indexed
                .par_iter()
                .map(|&(i, g)| record(i, g, &config.checks, base))
                .collect()
        })
    };

    let mut summary: BTreeMap<ClaimId, ClaimSummary> = config
        .checks
        .iter()
        .map(|&c| (c, ClaimSummary::default()))
        .collect();
    for v in records.iter().flat_map(|r| &r.verdicts) {
        let s = summary.entry(v.claim).or_default();
        match v.status {
            Status::Holds => s.holds += 1,
            Status::Violated => s.violated += 1,
            Status::NotApplicable => s.not_applicable += 1,
        }
        s.tight += usize::from(v.tight);
    }
    let violated = summary.values().map(|s| s.violated).sum();
    Ok(RunReport {
        schema: SCHEMA_VERSION,
        tool: TOOL,
        version: env!("CARGO_PKG_VERSION"),
        config: config.clone(),
        wall_time_ms: u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX),
        graph_count: records.len(),
        violated,
        summary,
        graphs: records,
    })
}

impl RunReport {
    pub fn has_violations(&self) -> bool {
        self.violated > 0
    }

    /// 0 when nothing is violated, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_violations())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per verdict; the witness is embedded as compact JSON.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "index", "graph6", "order", "size", "claim", "status", "tight", "note", "witness",
        ])
        .expect("in-memory write");
        for r in &self.graphs {
            for v in &r.verdicts {
                w.write_record([
                    r.index.to_string(),
                    r.graph6.clone(),
                    r.order.to_string(),
                    r.size.to_string(),
                    v.claim.to_string(),
                    v.status.to_string(),
                    v.tight.to_string(),
                    v.note.clone().unwrap_or_default(),
                    v.witness.to_string(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
    }

    /// Per-claim table followed by every violated verdict.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {}: {} graphs, {} ms",
            self.tool, self.version, self.graph_count, self.wall_time_ms
        );
        let _ = writeln!(
            out,
            "{:<16} {:>7} {:>9} {:>7} {:>6}",
            "claim", "holds", "violated", "n/a", "tight"
        );
        for (claim, s) in &self.summary {
            let _ = writeln!(
                out,
                "{:<16} {:>7} {:>9} {:>7} {:>6}",
                claim.as_str(),
                s.holds,
                s.violated,
                s.not_applicable,
                s.tight
            );
        }
        for r in &self.graphs {
            for v in r.verdicts.iter().filter(|v| v.is_violated()) {
                let _ = writeln!(
                    out,
                    "VIOLATED {} on #{} {}: {}",
                    v.claim, r.index, r.graph6, v.witness
                );
            }
        }
        let _ = writeln!(out, "{}", if self.has_violations() { "FAIL" } else { "OK" });
        out
    }

    pub fn render(&self) -> String {
        match self.config.format {
            super::OutputFormat::Json => self.to_json(),
            super::OutputFormat::Csv => self.to_csv(),
            super::OutputFormat::Human => self.to_human(),
        }
    }
}

/// One graph6 string per line.
pub fn graph6_lines(graphs: &[Graph]) -> Result<String, crate::graph::GraphError> {
    let mut out = String::new();
    for g in graphs {
        out.push_str(&to_graph6(g)?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{CorpusSource, Family, GeneratorSpec, OutputFormat};

    fn cycles_config(jobs: usize) -> RunConfig {
        let spec = GeneratorSpec {
            family: Family::Cycles,
            sizes: "3..12".parse().unwrap(),
            count: 1,
            seed: None,
            edge_prob: 0.5,
        };
        RunConfig::new(
            CorpusSource::Generator(spec),
            &[],
            jobs,
            OutputFormat::Json,
            false,
        )
    }

    #[test]
    fn cycles_run_clean() {
        let report = verify(&cycles_config(2)).unwrap();
        assert_eq!(report.graph_count, 10);
        assert_eq!(report.exit_code(), 0);
        let uni = report.summary[&ClaimId::CorUnicyclic];
        assert_eq!(uni.holds, 10);
        let nullity_two: Vec<usize> = report
            .graphs
            .iter()
            .filter(|r| {
                r.verdicts
                    .iter()
                    .any(|v| v.claim == ClaimId::CorUnicyclic && v.witness["line_nullity"] == 2)
            })
            .map(|r| r.order)
            .collect();
        assert_eq!(nullity_two, vec![4, 8, 12]);
    }

    #[test]
    fn summary_matches_records() {
        let report = verify(&cycles_config(3)).unwrap();
        for (claim, s) in &report.summary {
            let verdicts: Vec<&Verdict> = report
                .graphs
                .iter()
                .flat_map(|r| &r.verdicts)
                .filter(|v| v.claim == *claim)
                .collect();
            assert_eq!(s.holds + s.violated + s.not_applicable, verdicts.len());
            assert_eq!(s.tight, verdicts.iter().filter(|v| v.tight).count());
        }
    }

    #[test]
    fn report_is_independent_of_jobs() {
        let strip = |mut r: RunReport| {
            r.wall_time_ms = 0;
            r.to_json()
        };
        assert_eq!(
            strip(verify(&cycles_config(1)).unwrap()),
            strip(verify(&cycles_config(4)).unwrap())
        );
    }

    #[test]
    fn renderings() {
        let mut config = cycles_config(1);
        config.checks = vec![ClaimId::ThmDoob];
        let report = verify(&config).unwrap();
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 11);
        assert!(csv.starts_with("index,graph6,order,size,claim,status,tight,note,witness"));
        assert!(report.to_human().contains("THM_DOOB"));
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["schema"], 1);
        assert!(json["config"].get("jobs").is_none());
        assert_eq!(json["summary"]["THM_DOOB"]["holds"], 10);
        assert_eq!(
            graph6_lines(&[crate::graph::cycle(3).unwrap()]).unwrap(),
            "Bw\n"
        );
    }

    #[test]
    fn zero_jobs_is_rejected() {
        assert!(matches!(
            verify(&cycles_config(0)),
            Err(CorpusError::InvalidJobs)
        ));
    }
}
