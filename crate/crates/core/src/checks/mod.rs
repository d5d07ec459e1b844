//! Executable predicates for every verified statement.
//!
//! Each checker takes a graph (plus, for the incidence-submatrix checks, a row/column
//! selection) and returns a [`Verdict`]. Checkers recompute what they need
//! from the graph; nothing is shared between them. Every integer eigenvalue
//! multiplicity comes from exact synthetic division of an integer
//! characteristic polynomial.

mod incidence;
mod spectral;
mod structural;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{to_graph6, Graph, GraphError};
use crate::linalg::{char_poly, det, integer_eigenvalues, IntMatrix, IntegerSpectrum};

pub use incidence::{
    check_lemma_invert_d, check_lemma_invert_x, sweep_lemma_invert_d, sweep_lemma_invert_x,
    EXHAUSTIVE_EDGE_LIMIT, EXHAUSTIVE_SUBSET_LIMIT, RANDOM_PAIRS,
};
pub use spectral::{
    check_general_laplacian, check_min_bound, check_mult2, check_nodd, check_tplus1_line,
    check_tplus1_q, check_unicyclic_corollary,
};
pub use structural::{
    check_coef_theorem, check_doob, check_eq1_shift, check_matrix_tree, check_principal,
    check_snf_tau,
};

/// One identifier per verified statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimId {
    /// `A(L(G)) + 2I = XᵀX`.
    Eq1Shift,
    /// Invertible square submatrices of the oriented incidence matrix.
    LemInvertD,
    /// Invertible square submatrices of the unoriented incidence matrix.
    LemInvertX,
    /// Characteristic-polynomial coefficients as weighted subgraph sums.
    ThmCoef,
    /// Symmetric matrices of binary rank `r` have a full-rank `r × r`
    /// principal submatrix.
    LemPrinc,
    /// Binary rank of `A(L(G))` is `n − 1` or `n − 2` by parity of `n`.
    ThmDoob,
    /// Even eigenvalues of `Q` have multiplicity at most `t + 1`.
    ThmTplus1Q,
    /// Even eigenvalues `≠ −2` of `A(L(G))` have multiplicity at most `t + 1`.
    ThmTplus1Line,
    /// The same with the bound `min{t + 1, e − 2⌈n/2⌉ + 2}`.
    ThmMinBound,
    /// Odd order and `4 ∤ τ` restrict the even eigenvalues of `L` and `Q`.
    ThmNodd,
    /// A repeated even eigenvalue of `L` or `Q` forces `4 | τ`.
    ThmMult2,
    /// Unicyclic graphs with line-graph nullity 2 have cycle length `≡ 0 (mod 4)`.
    CorUnicyclic,
    /// The 2-adic refinement for Laplacian eigenvalues.
    ThmGeneralL,
    /// Product of the Smith invariants of `L` equals `τ`.
    SnfTau,
    /// Cofactors of `L`, the linear coefficient of `p_L`, and brute force agree on `τ`.
    MatrixTree,
}

impl ClaimId {
    pub const ALL: [ClaimId; 15] = [
        ClaimId::Eq1Shift,
        ClaimId::LemInvertD,
        ClaimId::LemInvertX,
        ClaimId::ThmCoef,
        ClaimId::LemPrinc,
        ClaimId::ThmDoob,
        ClaimId::ThmTplus1Q,
        ClaimId::ThmTplus1Line,
        ClaimId::ThmMinBound,
        ClaimId::ThmNodd,
        ClaimId::ThmMult2,
        ClaimId::CorUnicyclic,
        ClaimId::ThmGeneralL,
        ClaimId::SnfTau,
        ClaimId::MatrixTree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Eq1Shift => "EQ1_SHIFT",
            ClaimId::LemInvertD => "LEM_INVERT_D",
            ClaimId::LemInvertX => "LEM_INVERT_X",
            ClaimId::ThmCoef => "THM_COEF",
            ClaimId::LemPrinc => "LEM_PRINC",
            ClaimId::ThmDoob => "THM_DOOB",
            ClaimId::ThmTplus1Q => "THM_TPLUS1_Q",
            ClaimId::ThmTplus1Line => "THM_TPLUS1_LINE",
            ClaimId::ThmMinBound => "THM_MIN_BOUND",
            ClaimId::ThmNodd => "THM_NODD",
            ClaimId::ThmMult2 => "THM_MULT2",
            ClaimId::CorUnicyclic => "COR_UNICYCLIC",
            ClaimId::ThmGeneralL => "THM_GENERAL_L",
            ClaimId::SnfTau => "SNF_TAU",
            ClaimId::MatrixTree => "MATRIX_TREE",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown claim id {0:?}")]
pub struct UnknownClaim(pub String);

impl FromStr for ClaimId {
    type Err = UnknownClaim;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == wanted)
            .ok_or_else(|| UnknownClaim(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Holds,
    Violated,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "HOLDS",
            Status::Violated => "VIOLATED",
            Status::NotApplicable => "NOT_APPLICABLE",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one checker on one graph.
///
/// `witness` is always a JSON object. A `NotApplicable` verdict names the
/// failed precondition in `note`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub claim: ClaimId,
    pub status: Status,
    pub tight: bool,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub graph_id: String,
}

impl Verdict {
    fn new(claim: ClaimId, g: &Graph, status: Status, witness: Value) -> Self {
        Self {
            claim,
            status,
            tight: false,
            witness,
            note: None,
            graph_id: graph_id(g),
        }
    }

    pub(crate) fn decide(claim: ClaimId, g: &Graph, ok: bool, witness: Value) -> Self {
        Self::new(
            claim,
            g,
            if ok { Status::Holds } else { Status::Violated },
            witness,
        )
    }

    pub(crate) fn not_applicable(claim: ClaimId, g: &Graph, reason: impl Into<String>) -> Self {
        let mut v = Self::new(claim, g, Status::NotApplicable, json!({}));
        v.note = Some(reason.into());
        v
    }

    pub(crate) fn with_tight(mut self, tight: bool) -> Self {
        self.tight = tight && self.status == Status::Holds;
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_violated(&self) -> bool {
        self.status == Status::Violated
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("|R| = {rows} and |S| = {cols} must be equal and at least 1")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// graph6 when the order allows it, otherwise an explicit edge listing.
pub fn graph_id(g: &Graph) -> String {
    to_graph6(g).unwrap_or_else(|_| format!("order={};edges={:?}", g.order(), g.edges()))
}

/// Runs one checker. `seed` drives the random `(R, S)` sampling of the
/// incidence-submatrix sweeps and is ignored by every other checker.
pub fn run_check(claim: ClaimId, g: &Graph, seed: u64) -> Verdict {
    match claim {
        ClaimId::Eq1Shift => check_eq1_shift(g),
        ClaimId::LemInvertD => sweep_lemma_invert_d(g, seed),
        ClaimId::LemInvertX => sweep_lemma_invert_x(g, seed),
        ClaimId::ThmCoef => check_coef_theorem(g),
        ClaimId::LemPrinc => check_principal(g),
        ClaimId::ThmDoob => check_doob(g),
        ClaimId::ThmTplus1Q => check_tplus1_q(g),
        ClaimId::ThmTplus1Line => check_tplus1_line(g),
        ClaimId::ThmMinBound => check_min_bound(g),
        ClaimId::ThmNodd => check_nodd(g),
        ClaimId::ThmMult2 => check_mult2(g),
        ClaimId::CorUnicyclic => check_unicyclic_corollary(g),
        ClaimId::ThmGeneralL => check_general_laplacian(g),
        ClaimId::SnfTau => check_snf_tau(g),
        ClaimId::MatrixTree => check_matrix_tree(g),
    }
}

pub fn run_all(g: &Graph, seed: u64) -> Vec<Verdict> {
    ClaimId::ALL
        .iter()
        .map(|&c| run_check(c, g, seed))
        .collect()
}

// Shared numeric helpers.

/// A big integer as a JSON number when it fits in `i64`, else as a string.
pub(crate) fn big(x: &BigInt) -> Value {
    x.to_i64()
        .map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub(crate) fn spectrum_json(s: &IntegerSpectrum) -> Value {
    Value::Array(s.iter().map(|(l, m)| json!([big(l), m])).collect())
}

/// `τ(G)` as the `(0, 0)` cofactor of the Laplacian.
pub fn tree_count(g: &Graph) -> BigInt {
    det(&g.laplacian().minor_matrix(0, 0).expect("order >= 1")).expect("square")
}

pub(crate) fn integer_spectrum(m: &IntMatrix) -> IntegerSpectrum {
    let p = char_poly(m).expect("square integer matrix");
    integer_eigenvalues(&p).expect("characteristic polynomials are monic")
}

const DISCONNECTED: &str = "graph is disconnected";
