use num_integer::Integer;

use super::{IntMatrix, LinalgError};

/// Matrix over GF(2) with each row packed into `u64` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    /// Reduces every entry mod 2.
    pub fn from_int(m: &IntMatrix) -> Self {
        let mut b = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.get(r, c).is_odd() {
                    b.set(r, c);
                }
            }
        }
        b
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] |= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    pub fn rank(&self) -> usize {
        self.independent_rows().len()
    }

    /// Indices of rows that are not in the span of the rows before them.
    /// They form a basis of the row space.
    pub fn independent_rows(&self) -> Vec<usize> {
        // Reduced basis vectors, each tagged with its leading bit.
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut picked = Vec::new();
        for r in 0..self.rows {
            let mut v = self.row(r).to_vec();
            for (lead, b) in &basis {
                if v[lead / 64] >> (lead % 64) & 1 == 1 {
                    v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
                }
            }
            if let Some(lead) = leading_bit(&v) {
                // Keep the basis fully reduced on its leading positions.
                for (_, b) in basis.iter_mut() {
                    if b[lead / 64] >> (lead % 64) & 1 == 1 {
                        b.iter_mut().zip(&v).for_each(|(x, y)| *x ^= y);
                    }
                }
                basis.push((lead, v));
                picked.push(r);
            }
        }
        picked
    }
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Rank of `m` reduced mod 2.
pub fn rank_gf2(m: &IntMatrix) -> usize {
    BitMatrix::from_int(m).rank()
}

/// Index set `I` with `|I| = rank_gf2(m)` and `m(I, I)` invertible mod 2.
///
/// For a symmetric matrix, the principal submatrix on any row basis is
/// nonsingular, so the greedy pivot rows are tried first and certified. An
/// exhaustive subset search backs this up for orders below 12.
pub fn principal_full_rank_submatrix_gf2(m: &IntMatrix) -> Result<Vec<usize>, LinalgError> {
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let bits = BitMatrix::from_int(m);
    let greedy = bits.independent_rows();
    let rank = greedy.len();
    let certified =
        |idx: &[usize]| rank_gf2(&m.principal(idx).expect("indices in range")) == idx.len();
    if certified(&greedy) {
        return Ok(greedy);
    }
    if m.rows() < 12 {
        let n = m.rows();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != rank {
                continue;
            }
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if certified(&idx) {
                return Ok(idx);
            }
        }
    }
    Err(LinalgError::NoPrincipalSubmatrix { rank })
}
