//! Packed GF(2) matrices: determinant parity, rank, and nullspace basis by
//! Gaussian elimination with leftmost-pivot-first order.

use crate::exactla::SymMatrix;
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::One;

/// Bit matrix with rows packed 64 bits per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Gf2Matrix {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::new(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Entries of a symmetric matrix reduced mod 2. Errors if any entry is
    /// not an integer.
    pub fn from_sym_mod2(m: &SymMatrix) -> Result<Gf2Matrix> {
        let n = m.n();
        let mut out = Gf2Matrix::new(n, n);
        for (i, j, v) in m.iter() {
            if !v.denom().is_one() {
                return Err(Error::Precondition(format!(
                    "entry ({i},{j}) = {v} is not an integer"
                )));
            }
            if v.numer().is_odd() {
                out.set(i, j, true);
                out.set(j, i, true);
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = i * self.words + j / 64;
        let mask = 1u64 << (j % 64);
        if value {
            self.bits[w] |= mask;
        } else {
            self.bits[w] &= !mask;
        }
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words, src * self.words);
        for k in 0..self.words {
            let v = self.bits[s + k];
            self.bits[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.bits.swap(a * self.words + k, b * self.words + k);
        }
    }

    /// Row-reduces in place; returns the pivot column of each pivot row.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(r) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(row, r);
            for other in 0..self.rows {
                if other != row && self.get(other, col) {
                    self.xor_row(other, row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }
}

/// Determinant over GF(2). Errors on non-square input.
pub fn det_gf2(a: &Gf2Matrix) -> Result<bool> {
    if a.rows != a.cols {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    Ok(a.rank() == a.rows)
}

/// Basis of {x : Ax = 0 over GF(2)}, one vector per free column.
/// Empty iff A has full column rank.
pub fn nullspace_gf2(a: &Gf2Matrix) -> Vec<Vec<bool>> {
    let mut m = a.clone();
    let pivots = m.eliminate();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut x = vec![false; m.cols];
        x[free] = true;
        for (row, &pc) in pivots.iter().enumerate() {
            if m.get(row, free) {
                x[pc] = true;
            }
        }
        basis.push(x);
    }
    basis
}

/// A x over GF(2).
pub fn mul_vec(a: &Gf2Matrix, x: &[bool]) -> Vec<bool> {
    assert_eq!(x.len(), a.cols);
    (0..a.rows)
        .map(|i| (0..a.cols).filter(|&j| x[j]).fold(false, |acc, j| acc ^ a.get(i, j)))
        .collect()
}
