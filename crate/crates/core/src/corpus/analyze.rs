use std::fmt::Write as _;

use serde::Serialize;

use crate::checks::{graph_id, run_all, tree_count, Verdict};
use crate::graph::Graph;
use crate::linalg::{
    char_poly, integer_eigenvalues, rank_gf2, smith_normal_form, IntMatrix, IntegerSpectrum,
    SmithForm,
};
use crate::oracle::{factor_tree_count, TreeCountFactored};

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub char_poly: String,
    pub integer_spectrum: IntegerSpectrum,
}

impl SpectrumReport {
    fn of(m: &IntMatrix) -> Self {
        let p = char_poly(m).expect("square");
        let integer_spectrum = integer_eigenvalues(&p).expect("monic");
        Self {
            char_poly: p.to_string(),
            integer_spectrum,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Spectra {
    pub adjacency: SpectrumReport,
    pub laplacian: SpectrumReport,
    pub signless_laplacian: SpectrumReport,
    /// `None` for an edgeless graph.
    pub line_adjacency: Option<SpectrumReport>,
}

/// Everything known about one graph.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub graph6: String,
    pub order: usize,
    pub size: usize,
    pub connected: bool,
    pub bipartite: bool,
    /// `None` when the graph is disconnected.
    pub tree_count: Option<TreeCountFactored>,
    pub spectra: Spectra,
    pub laplacian_smith: SmithForm,
    pub line_adjacency_rank_gf2: Option<usize>,
    pub verdicts: Vec<Verdict>,
}

/// Full structural and spectral report for `g`; `seed` drives the sampled
/// incidence checks on larger graphs.
pub fn analyze(g: &Graph, seed: u64) -> AnalyzeReport {
    let line = (g.size() > 0).then(|| g.line_graph().adjacency());
    AnalyzeReport {
        graph6: graph_id(g),
        order: g.order(),
        size: g.size(),
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        tree_count: factor_tree_count(&tree_count(g)).ok(),
        spectra: Spectra {
            adjacency: SpectrumReport::of(&g.adjacency()),
            laplacian: SpectrumReport::of(&g.laplacian()),
            signless_laplacian: SpectrumReport::of(&g.signless_laplacian()),
            line_adjacency: line.as_ref().map(SpectrumReport::of),
        },
        laplacian_smith: smith_normal_form(&g.laplacian()),
        line_adjacency_rank_gf2: line.as_ref().map(rank_gf2),
        verdicts: run_all(g, seed),
    }
}

fn spectrum_text(s: &IntegerSpectrum) -> String {
    let mut parts: Vec<String> = s.iter().map(|(l, m)| format!("{l}^{m}")).collect();
    if let Some(d) = s.residual.degree().filter(|&d| d > 0) {
        parts.push(format!("(+{d} non-integer)"));
    }
    parts.join(" ")
}

impl AnalyzeReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph6      {}", self.graph6);
        let _ = writeln!(out, "order/size  {} / {}", self.order, self.size);
        let _ = writeln!(out, "connected   {}", self.connected);
        let _ = writeln!(out, "bipartite   {}", self.bipartite);
        match &self.tree_count {
            Some(f) => {
                let _ = writeln!(out, "tau         {} = 2^{} * {}", f.tau, f.t, f.s);
            }
            None => {
                let _ = writeln!(out, "tau         0");
            }
        }
        let rows = [
            ("spec A", Some(&self.spectra.adjacency)),
            ("spec L", Some(&self.spectra.laplacian)),
            ("spec Q", Some(&self.spectra.signless_laplacian)),
            ("spec A(LG)", self.spectra.line_adjacency.as_ref()),
        ];
        for (name, s) in rows {
            let text = s.map_or_else(|| "-".to_string(), |s| spectrum_text(&s.integer_spectrum));
            let _ = writeln!(out, "{name:<11} {text}");
        }
        let smith: Vec<String> = self
            .laplacian_smith
            .invariant_factors
            .iter()
            .map(ToString::to_string)
            .collect();
        let _ = writeln!(out, "smith L     {}", smith.join(" "));
        let rank = self
            .line_adjacency_rank_gf2
            .map_or_else(|| "-".to_string(), |r| r.to_string());
        let _ = writeln!(out, "rank2 A(LG) {rank}");
        for v in &self.verdicts {
            let tight = if v.tight { " TIGHT" } else { "" };
            let note = v
                .note
                .as_deref()
                .map(|n| format!(" ({n})"))
                .unwrap_or_default();
            let _ = writeln!(out, "{:<16} {}{tight}{note}", v.claim.as_str(), v.status);
        }
        out
    }
}
