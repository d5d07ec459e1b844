//! Exact spectral and combinatorial invariants of simple graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: the [`Graph`] type, incidence and Laplacian matrices, line
//!   graphs, seeded generators and graph6 I/O.
//! - [`linalg`]: big-integer determinants, characteristic polynomials, Smith
//!   invariants, GF(2) rank and integer-root extraction.
//! - [`oracle`]: brute-force enumeration of forests and TU-subgraphs, used as
//!   an independent route to characteristic-polynomial coefficients and
//!   spanning-tree counts.
//! - [`checks`]: every verified statement as a predicate returning a
//!   [`Verdict`](checks::Verdict).
//! - [`corpus`]: corpus generation, batch verification and report rendering.

pub mod checks;
pub mod corpus;
pub mod graph;
pub mod linalg;
pub mod oracle;

pub use checks::{ClaimId, Status, Verdict};
pub use graph::{Graph, GraphError, Orientation};
pub use linalg::{IntMatrix, IntPolynomial, IntegerSpectrum, LinalgError, SmithForm};
pub use oracle::{OracleError, TreeCountFactored, TuSubgraph};
