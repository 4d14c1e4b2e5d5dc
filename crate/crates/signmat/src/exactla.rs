//! Exact linear algebra over arbitrary-precision rationals: determinants via
//! fraction-free elimination, Schur complements, and an exact positive
//! semidefiniteness test. No floating point anywhere.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar. Always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Rational p/q. Panics if q = 0.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses "p" or "p/q" with optional sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (s, None),
    };
    let p = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let q = match den {
        Some(q) => BigInt::from_str(q).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(p, q))
}

/// Formats as "p" when integral, otherwise "p/q".
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Symmetric rational matrix, upper triangle stored sparsely.
/// Entries absent from the map are zero; explicit zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SymMatrix {
    /// Zero matrix of dimension n. Requires n >= 1.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "SymMatrix dimension must be at least 1");
        SymMatrix {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SymMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, rat(1));
        }
        m
    }

    /// Builds from dense rows; panics if the rows are not symmetric.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let n = rows.len();
        let mut m = SymMatrix::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            for (j, v) in row.iter().enumerate() {
                if i <= j {
                    assert_eq!(rows[j][i], *v, "matrix not symmetric at ({i},{j})");
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    /// Builds from dense integer rows; panics if not symmetric.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| rat(v)).collect())
            .collect();
        SymMatrix::from_rows(&rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.entries.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sets M[i,j] and M[j,i]. Zero values erase the entry.
    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.n && j < self.n);
        let key = if i <= j { (i, j) } else { (j, i) };
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
    }

    /// Stored (upper-triangle) nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut rows = vec![vec![Rational::zero(); self.n]; self.n];
        for (i, j, v) in self.iter() {
            rows[i][j] = v.clone();
            rows[j][i] = v.clone();
        }
        rows
    }

    /// Entrywise negation.
    pub fn neg(&self) -> SymMatrix {
        let mut m = SymMatrix::zero(self.n);
        for (i, j, v) in self.iter() {
            m.set(i, j, -v.clone());
        }
        m
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Split of a symmetric matrix D into a leading p x p block A, the coupling
/// block B (p x q), and the trailing q x q block C.
#[derive(Debug, Clone, Copy)]
pub struct BlockSplit {
    pub p: usize,
}

impl BlockSplit {
    pub fn new(p: usize, n: usize) -> Result<Self> {
        if p == 0 || p >= n {
            return Err(Error::BadSplit { p, n });
        }
        Ok(BlockSplit { p })
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination over big
/// integers, after clearing each row's denominators.
pub fn det_exact(m: &SymMatrix) -> Rational {
    let n = m.n();
    let dense = m.to_dense();
    // Scale row i by the lcm of its denominators; divide the integer
    // determinant by the product of the scales at the end.
    let mut scale_product = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in &dense {
        let mut l = BigInt::one();
        for v in row {
            l = l.lcm(v.denom());
        }
        scale_product *= &l;
        a.push(
            row.iter()
                .map(|v| v.numer() * (&l / v.denom()))
                .collect(),
        );
    }
    let d = det_bareiss_bigint(&mut a);
    Rational::new(d, scale_product)
}

fn det_bareiss_bigint(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact by Bareiss
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Fraction-free determinant of a small integer matrix in machine words.
/// Exact as long as every minor fits in i128; with entries in {-1,0,1} this
/// holds comfortably for n <= 20 (Hadamard bound n^(n/2)).
pub fn det_bareiss_i128(a: &mut [Vec<i128>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Schur complement D_C = C - B^T A^{-1} B for the given split.
/// Errors if the leading block A is singular.
pub fn schur_complement(d: &SymMatrix, split: BlockSplit) -> Result<SymMatrix> {
    let n = d.n();
    let p = split.p;
    if p == 0 || p >= n {
        return Err(Error::BadSplit { p, n });
    }
    let q = n - p;
    let dense = d.to_dense();
    // Solve A X = B by rational Gaussian elimination; X is p x q.
    let mut aug: Vec<Vec<Rational>> = (0..p)
        .map(|i| {
            let mut row: Vec<Rational> = dense[i][..p].to_vec();
            row.extend_from_slice(&dense[i][p..]);
            row
        })
        .collect();
    for k in 0..p {
        let Some(r) = (k..p).find(|&r| !aug[r][k].is_zero()) else {
            return Err(Error::SingularBlock);
        };
        aug.swap(k, r);
        let piv = aug[k][k].clone();
        for j in k..p + q {
            aug[k][j] = &aug[k][j] / &piv;
        }
        for i in 0..p {
            if i != k && !aug[i][k].is_zero() {
                let f = aug[i][k].clone();
                for j in k..p + q {
                    let sub = &f * &aug[k][j];
                    aug[i][j] = &aug[i][j] - &sub;
                }
            }
        }
    }
    // D_C[i][j] = C[i][j] - sum_k B[k][i] * X[k][j], where B[k][i] = D[k][p+i].
    let mut out = SymMatrix::zero(q);
    for i in 0..q {
        for j in i..q {
            let mut v = dense[p + i][p + j].clone();
            for k in 0..p {
                let t = &dense[k][p + i] * &aug[k][p + j];
                v = v - t;
            }
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Exact positive-semidefiniteness test by recursive symmetric elimination:
/// reject on a negative diagonal entry or a zero diagonal entry with a
/// nonzero row; otherwise pivot on a positive diagonal entry and recurse on
/// the Schur complement.
pub fn is_psd_exact(m: &SymMatrix) -> bool {
    let n = m.n();
    let mut a = m.to_dense();
    let mut active: Vec<usize> = (0..n).collect();
    loop {
        if active.is_empty() {
            return true;
        }
        if active.iter().any(|&i| a[i][i].is_negative()) {
            return false;
        }
        // Zero diagonal forces a zero row in a psd matrix.
        for &i in &active {
            if a[i][i].is_zero() && active.iter().any(|&j| !a[i][j].is_zero()) {
                return false;
            }
        }
        let Some(pos) = active.iter().position(|&i| a[i][i].is_positive()) else {
            // All remaining diagonal entries are zero with zero rows.
            return true;
        };
        let piv = active.remove(pos);
        let d = a[piv][piv].clone();
        for ai in 0..active.len() {
            let i = active[ai];
            if a[i][piv].is_zero() {
                continue;
            }
            let f = &a[i][piv] / &d;
            for aj in 0..active.len() {
                let j = active[aj];
                let sub = &f * &a[piv][j];
                a[i][j] = &a[i][j] - &sub;
            }
        }
    }
}

/// True iff the largest eigenvalue of M is at most lambda, decided exactly
/// as psd(lambda*I - M).
pub fn max_eigenvalue_leq(m: &SymMatrix, lambda: &Rational) -> bool {
    let n = m.n();
    let mut shifted = m.neg();
    for i in 0..n {
        let v = lambda - m.get(i, i);
        shifted.set(i, i, v);
    }
    is_psd_exact(&shifted)
}
