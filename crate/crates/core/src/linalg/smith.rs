use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::IntMatrix;

/// Invariant factors `s_1 | s_2 | ⋯ | s_r` of an integer matrix of rank `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// `s_1 ⋯ s_i`, which equals the gcd `d_i` of all `i × i` minors.
    pub fn determinantal_divisor(&self, i: usize) -> BigInt {
        if i > self.rank() {
            return BigInt::zero();
        }
        self.invariant_factors[..i].iter().product()
    }

    pub fn product(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

impl Serialize for SmithForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("SmithForm", 2)?;
        let factors: Vec<String> = self
            .invariant_factors
            .iter()
            .map(ToString::to_string)
            .collect();
        s.serialize_field("invariant_factors", &factors)?;
        s.serialize_field("rank", &self.rank())?;
        s.end()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
    }

    /// Smallest-magnitude nonzero entry in the trailing block from `(k, k)`.
    fn min_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `k` by integer division against the pivot.
    /// Returns false if some remainder survived.
    fn reduce_cross(&mut self, k: usize) -> bool {
        let pivot = self.a[k][k].clone();
        let mut clean = true;
        for i in k + 1..self.rows {
            if self.a[i][k].is_zero() {
                continue;
            }
            let q = self.a[i][k].div_floor(&pivot);
            for j in k..self.cols {
                let delta = &q * &self.a[k][j];
                self.a[i][j] -= delta;
            }
            clean &= self.a[i][k].is_zero();
        }
        for j in k + 1..self.cols {
            if self.a[k][j].is_zero() {
                continue;
            }
            let q = self.a[k][j].div_floor(&pivot);
            for i in k..self.rows {
                let delta = &q * &self.a[i][k];
                self.a[i][j] -= delta;
            }
            clean &= self.a[k][j].is_zero();
        }
        clean
    }

    /// First trailing entry the pivot does not divide.
    fn non_divisible(&self, k: usize) -> Option<usize> {
        let pivot = &self.a[k][k];
        (k + 1..self.rows)
            .find(|&i| (k + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(pivot)))
    }
}

/// Invariant factors by repeated gcd-pivot elimination. Only the diagonal is
/// tracked; the unimodular transforms are not formed.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut w = Work {
        a: m.to_rows(),
        rows: m.rows(),
        cols: m.cols(),
    };
    let mut factors = Vec::new();
    for k in 0..w.rows.min(w.cols) {
        loop {
            let Some((pi, pj)) = w.min_pivot(k) else {
                return SmithForm {
                    invariant_factors: factors,
                };
            };
            w.a.swap(k, pi);
            w.swap_cols(k, pj);
            if !w.reduce_cross(k) {
                // A remainder smaller than the pivot appeared; pivot on it.
                continue;
            }
            match w.non_divisible(k) {
                Some(i) => {
                    // Fold row i into row k; the next reduction leaves a
                    // smaller remainder in row k.
                    for j in k..w.cols {
                        let v = w.a[i][j].clone();
                        w.a[k][j] += v;
                    }
                }
                None => break,
            }
        }
        factors.push(w.a[k][k].abs());
    }
    SmithForm {
        invariant_factors: factors,
    }
}
