//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (integer equality, zero tolerance). Runtime
//! targets are reported next to the measured time and enforced.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use treespec::checks::{run_check, ClaimId, Status, Verdict};
use treespec::corpus::{
    analyze, verify, CorpusSource, Family, GeneratorSpec, OutputFormat, RunConfig,
};
use treespec::graph::{
    complete_graph, cycle, random_connected, random_tree, random_unicyclic, read_graph6_lines,
};
use treespec::Graph;

const SEED: u64 = 20_240_601;

fn fixture(name: &str) -> Vec<Graph> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    let text = std::fs::read_to_string(&path).expect("fixture present");
    read_graph6_lines(&text).expect("fixture parses")
}

/// Connected graphs on at most 10 vertices with varying density.
fn random_small(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=10);
            let p = rng.random_range(0.2..0.8);
            random_connected(n, p, rng.random()).expect("valid parameters")
        })
        .collect()
}

/// Connected graphs with `min_e <= e <= max_e` and `n <= 10`, by rejection.
fn random_with_edges(count: usize, min_e: usize, max_e: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=10);
        let g = random_connected(n, rng.random_range(0.15..0.7), rng.random())
            .expect("valid parameters");
        if (min_e..=max_e).contains(&g.size()) {
            out.push(g);
        }
    }
    out
}

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            ok,
            detail: detail.into(),
        }
    }
}

/// Runs `claims` on every graph; returns the number of verdicts per status and
/// the first violated verdict.
fn sweep(graphs: &[Graph], claims: &[ClaimId]) -> (BTreeMap<Status, usize>, Option<Verdict>) {
    let mut counts = BTreeMap::new();
    let mut first = None;
    for (i, g) in graphs.iter().enumerate() {
        for &c in claims {
            let v = run_check(c, g, SEED ^ i as u64);
            *counts.entry(v.status).or_insert(0) += 1;
            if v.is_violated() && first.is_none() {
                first = Some(v);
            }
        }
    }
    (counts, first)
}

fn describe(counts: &BTreeMap<Status, usize>, first: &Option<Verdict>) -> String {
    let get = |s| counts.get(&s).copied().unwrap_or(0);
    let mut d = format!(
        "holds={} violated={} n/a={}",
        get(Status::Holds),
        get(Status::Violated),
        get(Status::NotApplicable)
    );
    if let Some(v) = first {
        d.push_str(&format!(
            "; first violation {} on {}: {}",
            v.claim, v.graph_id, v.witness
        ));
    }
    d
}

fn all_hold(graphs: &[Graph], claims: &[ClaimId]) -> Outcome {
    let (counts, first) = sweep(graphs, claims);
    let violated = counts.get(&Status::Violated).copied().unwrap_or(0);
    Outcome::new(violated == 0, describe(&counts, &first))
}

fn within(ok: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    let detail = format!("{} [{:.2?}, target < {:.0?}]", ok.detail, elapsed, limit);
    Outcome::new(ok.ok && elapsed < limit, detail)
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f();
    within(out, start.elapsed(), limit)
}

struct Corpora {
    atlas: Vec<Graph>,
    small_edges: Vec<Graph>,
    random_small: Vec<Graph>,
    random_e12: Vec<Graph>,
    trees: Vec<Graph>,
    unicyclic: Vec<Graph>,
    cycles: Vec<Graph>,
    complete: Vec<Graph>,
}

impl Corpora {
    fn build() -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let trees = (0..500)
            .map(|_| random_tree(rng.random_range(1..=14), rng.random()).unwrap())
            .collect();
        let unicyclic = (0..500)
            .map(|_| random_unicyclic(rng.random_range(3..=14), rng.random()).unwrap())
            .collect();
        Self {
            atlas: fixture("connected_upto6.g6"),
            small_edges: fixture("connected_e_upto6.g6"),
            random_small: random_small(500, SEED + 1),
            random_e12: random_with_edges(100, 1, 12, SEED + 2),
            trees,
            unicyclic,
            cycles: (3..=16).map(|n| cycle(n).unwrap()).collect(),
            complete: (3..=9).map(|n| complete_graph(n).unwrap()).collect(),
        }
    }
}

fn criterion_1(c: &Corpora) -> Outcome {
    timed(Duration::from_secs(30), || {
        let graphs: Vec<Graph> = c.atlas.iter().chain(&c.random_small).cloned().collect();
        all_hold(&graphs, &[ClaimId::Eq1Shift])
    })
}

fn criterion_2(c: &Corpora) -> Outcome {
    timed(Duration::from_secs(300), || {
        let graphs: Vec<Graph> = c.atlas.iter().chain(&c.random_e12).cloned().collect();
        let (counts, first) = sweep(&graphs, &[ClaimId::ThmCoef]);
        // Every graph here is within the enumeration cap, so nothing may be skipped.
        let ok = counts.get(&Status::Holds).copied() == Some(graphs.len());
        Outcome::new(ok, describe(&counts, &first))
    })
}

fn criterion_3(c: &Corpora) -> Outcome {
    let graphs: Vec<Graph> = c.atlas.iter().chain(&c.random_e12).cloned().collect();
    let (counts, first) = sweep(&graphs, &[ClaimId::MatrixTree, ClaimId::SnfTau]);
    let ok = counts.get(&Status::Holds).copied() == Some(2 * graphs.len());
    Outcome::new(ok, describe(&counts, &first))
}

fn criterion_4(c: &Corpora) -> Outcome {
    let graphs: Vec<Graph> = [
        &c.atlas,
        &c.random_small,
        &c.random_e12,
        &c.trees,
        &c.unicyclic,
        &c.cycles,
        &c.complete,
    ]
    .into_iter()
    .flatten()
    .filter(|g| g.size() > 0)
    .cloned()
    .collect();
    let (counts, first) = sweep(&graphs, &[ClaimId::ThmDoob]);
    let ok = counts.get(&Status::Holds).copied() == Some(graphs.len());
    Outcome::new(ok, describe(&counts, &first))
}

fn criterion_5() -> Outcome {
    timed(Duration::from_secs(1), || {
        let report = analyze(&complete_graph(6).unwrap(), 0);
        let tau = report.tree_count.as_ref().expect("connected");
        let q4 = report
            .spectra
            .signless_laplacian
            .integer_spectrum
            .multiplicity_of(4);
        let v = report
            .verdicts
            .iter()
            .find(|v| v.claim == ClaimId::ThmTplus1Q)
            .expect("present");
        let ok = tau.tau == 1296u32.into()
            && tau.t == 4
            && tau.s == 81u32.into()
            && q4 == 5
            && v.holds()
            && v.tight;
        Outcome::new(
            ok,
            format!(
                "tau={} = 2^{} * {}, mult(4 in Q)={}, {} tight={}",
                tau.tau, tau.t, tau.s, q4, v.status, v.tight
            ),
        )
    })
}

const SPECTRAL_CLAIMS: [ClaimId; 6] = [
    ClaimId::ThmTplus1Q,
    ClaimId::ThmTplus1Line,
    ClaimId::ThmMinBound,
    ClaimId::ThmNodd,
    ClaimId::ThmMult2,
    ClaimId::ThmGeneralL,
];

fn criterion_6(c: &Corpora) -> Outcome {
    timed(Duration::from_secs(600), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for (name, graphs) in [
            ("atlas", &c.atlas),
            ("trees", &c.trees),
            ("unicyclic", &c.unicyclic),
            ("cycles", &c.cycles),
            ("complete", &c.complete),
        ] {
            let (counts, first) = sweep(graphs, &SPECTRAL_CLAIMS);
            let violated = counts.get(&Status::Violated).copied().unwrap_or(0);
            ok &= violated == 0;
            parts.push(format!("{name}: {}", describe(&counts, &first)));
        }
        Outcome::new(ok, parts.join(" | "))
    })
}

fn criterion_7(c: &Corpora) -> Outcome {
    let graphs: Vec<&Graph> = [&c.atlas, &c.unicyclic, &c.cycles]
        .into_iter()
        .flatten()
        .filter(|g| g.is_connected() && g.is_unicyclic())
        .collect();
    let mut nullity_two = 0;
    let mut bad = Vec::new();
    for g in &graphs {
        let v = run_check(ClaimId::CorUnicyclic, g, 0);
        if v.witness["line_nullity"] == 2 {
            nullity_two += 1;
        }
        if !v.holds() {
            bad.push(v.graph_id.clone());
        }
    }
    let c4 = run_check(ClaimId::CorUnicyclic, &cycle(4).unwrap(), 0);
    let c4_spectrum = c4.witness["q_spectrum"].clone();
    let c4_ok = c4.witness["line_nullity"] == 2
        && c4_spectrum == serde_json::json!([[4, 1], [2, 2], [0, 1]]);
    Outcome::new(
        bad.is_empty() && c4_ok && nullity_two > 0,
        format!(
            "{} unicyclic graphs, {} with nullity 2, failures {:?}; C4 Q spectrum {}",
            graphs.len(),
            nullity_two,
            bad,
            c4_spectrum
        ),
    )
}

fn criterion_8(c: &Corpora) -> Outcome {
    let claims = [ClaimId::LemInvertD, ClaimId::LemInvertX];
    let per_edges: Vec<usize> = (0..=6)
        .map(|e| c.small_edges.iter().filter(|g| g.size() == e).count())
        .collect();
    // Connected graphs by number of edges, up to isomorphism.
    let census_ok = per_edges == [1, 1, 1, 3, 5, 12, 30];

    let mut pairs = 0u64;
    let mut mode_ok = true;
    let mut first = None;
    let random = random_with_edges(50, 7, 45, SEED + 3);
    for (exhaustive, graphs) in [(true, &c.small_edges), (false, &random)] {
        for (i, g) in graphs.iter().enumerate() {
            for &claim in &claims {
                let v = run_check(claim, g, SEED ^ (i as u64) << 8);
                if v.status == Status::NotApplicable {
                    mode_ok &= g.size() == 0;
                    continue;
                }
                let mode = if exhaustive { "exhaustive" } else { "random" };
                mode_ok &= v.witness["mode"] == mode;
                if !exhaustive {
                    mode_ok &= v.witness["pairs_checked"] == 1000;
                }
                pairs += v.witness["pairs_checked"].as_u64().unwrap_or(0);
                if !v.holds() && first.is_none() {
                    first = Some(v);
                }
            }
        }
    }
    let mut detail = format!(
        "{} small graphs (by edges {:?}), 50 random graphs, {} (R,S) pairs checked",
        c.small_edges.len(),
        per_edges,
        pairs
    );
    if let Some(v) = &first {
        detail.push_str(&format!(
            "; first failure {} on {}: {}",
            v.claim, v.graph_id, v.witness
        ));
    }
    Outcome::new(census_ok && mode_ok && first.is_none(), detail)
}

fn strip_wall_time(json: &str) -> Value {
    let mut v: Value = serde_json::from_str(json).expect("report is JSON");
    v.as_object_mut().expect("object").remove("wall_time_ms");
    v
}

fn criterion_9() -> Outcome {
    let spec = GeneratorSpec {
        family: Family::ConnectedRandom,
        sizes: "3..10".parse().unwrap(),
        count: 60,
        seed: Some(SEED),
        edge_prob: 0.4,
    };
    let run = |jobs| {
        let config = RunConfig::new(
            CorpusSource::Generator(spec.clone()),
            &[],
            jobs,
            OutputFormat::Json,
            false,
        );
        verify(&config).expect("run succeeds").to_json()
    };
    let (one, four) = (run(1), run(4));
    let same = strip_wall_time(&one) == strip_wall_time(&four);
    let bytes_same = one
        .lines()
        .filter(|l| !l.contains("wall_time_ms"))
        .eq(four.lines().filter(|l| !l.contains("wall_time_ms")));
    Outcome::new(
        same && bytes_same,
        format!(
            "jobs=1 vs jobs=4: {} bytes vs {} bytes",
            one.len(),
            four.len()
        ),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let start = Instant::now();
    let corpora = Corpora::build();
    let atlas_by_order: Vec<usize> = (1..=6)
        .map(|n| corpora.atlas.iter().filter(|g| g.order() == n).count())
        .collect();
    let atlas_ok =
        atlas_by_order == [1, 1, 2, 6, 21, 112] && corpora.atlas.iter().all(Graph::is_connected);
    println!(
        "{} fixture: connected graphs on 1..6 vertices by order {:?}",
        if atlas_ok { "PASS" } else { "FAIL" },
        atlas_by_order
    );

    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        (
            "1 line-graph shift identity",
            Box::new(|| criterion_1(&corpora)),
        ),
        ("2 coefficient oracle", Box::new(|| criterion_2(&corpora))),
        (
            "3 matrix-tree and Smith invariants",
            Box::new(|| criterion_3(&corpora)),
        ),
        (
            "4 binary rank of the line graph",
            Box::new(|| criterion_4(&corpora)),
        ),
        ("5 K6 tightness", Box::new(criterion_5)),
        (
            "6 even-eigenvalue multiplicity bounds",
            Box::new(|| criterion_6(&corpora)),
        ),
        (
            "7 unicyclic line-graph nullity",
            Box::new(|| criterion_7(&corpora)),
        ),
        (
            "8 incidence submatrix invertibility",
            Box::new(|| criterion_8(&corpora)),
        ),
        ("9 report determinism across --jobs", Box::new(criterion_9)),
    ];
    let mut failed = usize::from(!atlas_ok);
    for (name, run) in criteria {
        let t = Instant::now();
        let out = run();
        failed += usize::from(!out.ok);
        println!(
            "{} criterion {name}: {} ({:.2?})",
            if out.ok { "PASS" } else { "FAIL" },
            out.detail,
            t.elapsed()
        );
    }
    println!(
        "acceptance: {} failed, total {:.2?}",
        failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
