//! Exact linear algebra over arbitrary-precision integers.
//!
//! Nothing here touches floating point. Determinants use Bareiss elimination,
//! characteristic polynomials use Faddeev–LeVerrier with checked exact
//! division, Smith invariants use gcd-pivot elimination, and binary rank runs
//! on packed bit rows.

mod charpoly;
mod det;
mod gf2;
mod poly;
mod smith;

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use charpoly::char_poly;
pub use det::det;
pub use gf2::{principal_full_rank_submatrix_gf2, rank_gf2, BitMatrix};
pub use poly::{integer_eigenvalues, IntPolynomial, IntegerSpectrum};
pub use smith::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("inexact division at step {step} of the characteristic polynomial")]
    InexactDivision { step: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no full-rank principal submatrix found (rank {rank})")]
    NoPrincipalSubmatrix { rank: usize },
}

/// Dense row-major matrix of big integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    /// `k · I_n`.
    pub fn scalar(n: usize, k: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, k);
        }
        m
    }

    /// Builds from `i64` rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<BigInt>,
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: impl Into<BigInt>) {
        self.entries[r * self.cols + c] = value.into();
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub(crate) fn require_square(&self) -> Result<usize, LinalgError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// Matrix product. Panics if the inner dimensions differ.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Entrywise sum. Panics on shape mismatch.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// `M(R, S)`: rows `R`, columns `S`, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self, LinalgError> {
        if let Some(&index) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(LinalgError::IndexOutOfRange {
                index,
                dim: self.rows,
            });
        }
        if let Some(&index) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(LinalgError::IndexOutOfRange {
                index,
                dim: self.cols,
            });
        }
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        Ok(Self {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        })
    }

    /// Principal submatrix on `indices`.
    pub fn principal(&self, indices: &[usize]) -> Result<Self, LinalgError> {
        self.submatrix(indices, indices)
    }

    /// Deletes row `r` and column `c`.
    pub fn minor_matrix(&self, r: usize, c: usize) -> Result<Self, LinalgError> {
        if r >= self.rows {
            return Err(LinalgError::IndexOutOfRange {
                index: r,
                dim: self.rows,
            });
        }
        if c >= self.cols {
            return Err(LinalgError::IndexOutOfRange {
                index: c,
                dim: self.cols,
            });
        }
        let rows: Vec<_> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<_> = (0..self.cols).filter(|&j| j != c).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        self.get(r, c)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries(self.to_rows().iter().map(|r| {
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            }))
            .finish()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(serializer)
    }
}
