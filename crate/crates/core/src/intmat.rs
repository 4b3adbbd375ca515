//! Integer matrices and their Smith normal form divisor chain.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Panics if the dimensions are zero or `entries` has the wrong length.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix must be at least 1x1");
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.as_ref().len(), cols, "ragged rows");
                r.as_ref().iter().map(|&v| BigInt::from(v))
            })
            .collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    fn to_grid(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for v in &mut self.entries[r * self.cols..(r + 1) * self.cols] {
            *v = -&*v;
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = &mut self.entries[r * self.cols + c];
            *v = -&*v;
        }
    }

    /// `row[dst] += factor * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let add = factor * &self.entries[src * self.cols + c];
            self.entries[dst * self.cols + c] += add;
        }
    }

    /// `col[dst] += factor * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let add = factor * &self.entries[r * self.cols + src];
            self.entries[r * self.cols + dst] += add;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            f.write_str("[")?;
            for (i, v) in self.row(r).iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// The diagonal `d1 | d2 | ... | dk` of a Smith normal form, one entry per
/// column. Entries are nonnegative and zeros trail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryDivisors(Vec<BigInt>);

impl ElementaryDivisors {
    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<BigInt> {
        self.0
    }

    /// Number of nonzero divisors, i.e. the rank of the matrix.
    pub fn rank(&self) -> usize {
        self.0.iter().take_while(|d| !d.is_zero()).count()
    }

    /// `d1 * d2 * ... * dk`; zero when the matrix is rank deficient.
    pub fn product(&self) -> BigInt {
        self.0.iter().product()
    }

    /// Checks nonnegativity, the divisibility chain and trailing zeros.
    pub fn is_chain(&self) -> bool {
        let rank = self.rank();
        self.0.iter().all(|d| !d.is_negative())
            && self.0[rank..].iter().all(Zero::is_zero)
            && self.0[..rank]
                .windows(2)
                .all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl From<Vec<i64>> for ElementaryDivisors {
    fn from(v: Vec<i64>) -> Self {
        ElementaryDivisors(v.into_iter().map(BigInt::from).collect())
    }
}

/// Elementary divisors of `m` by gcd-driven pivoting with unimodular row and
/// column operations.
pub fn smith_normal_form(m: &IntMatrix) -> ElementaryDivisors {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.to_grid();
    let mut diag = Vec::with_capacity(cols);

    'outer: for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, v) in row.iter().enumerate().skip(t) {
                    if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &pivot;
                let (top, rest) = a.split_at_mut(i);
                for (dst, src) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                    *dst -= &q * src;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &pivot;
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }

            // pivot must divide the whole trailing block; otherwise fold the
            // offending row into the pivot row and reduce again
            let offender =
                (t + 1..rows).find(|&i| a[i][t + 1..].iter().any(|v| !v.is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (dst, src) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *dst += src;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag.resize(cols, BigInt::zero());
    ElementaryDivisors(diag)
}

pub fn divisor_product(d: &ElementaryDivisors) -> BigInt {
    d.product()
}

/// Absolute determinant via the divisor chain; only meaningful for square
/// matrices. Used as a cross-check in tests.
pub fn abs_det_via_snf(m: &IntMatrix) -> BigInt {
    debug_assert_eq!(m.rows, m.cols);
    let d = smith_normal_form(m);
    if d.rank() < m.cols {
        BigInt::zero()
    } else {
        d.product()
    }
}
