//! Relation matrices over `Z[q]`: construction from monomial exponent rows,
//! symbolic maximal minors, and evaluation at a concrete `q`.
//!
//! Columns correspond to unknowns. After the equation rows the builder
//! appends the `k` membership rows `(q^n - 1) e_i`, which force every unknown
//! into the multiplicative group of `F_{q^n}` and give the matrix full column
//! rank for every `q >= 2`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::poly::IntPoly;

/// Soft limit on the number of row subsets enumerated by
/// [`RelationMatrix::maximal_minors`] before a warning is logged.
pub const DEFAULT_MINOR_SOFT_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    k: usize,
    n: usize,
    equations: usize,
    rows: Vec<Vec<IntPoly>>,
}

impl RelationMatrix {
    /// Append the membership rows to `equation_rows`.
    pub fn build(equation_rows: &[Vec<IntPoly>], k: usize, n: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid(
                "a relation matrix needs k >= 1 columns".into(),
            ));
        }
        if n == 0 {
            return Err(Error::Invalid("extension degree n must be >= 1".into()));
        }
        if let Some((row, r)) = equation_rows.iter().enumerate().find(|(_, r)| r.len() != k) {
            return Err(Error::RowLength {
                row,
                expected: k,
                found: r.len(),
            });
        }
        let mut rows = equation_rows.to_vec();
        let membership = IntPoly::x_pow_minus_one(n);
        for i in 0..k {
            let mut row = alloc::vec![IntPoly::zero(); k];
            row[i] = membership.clone();
            rows.push(row);
        }
        Ok(Self {
            k,
            n,
            equations: equation_rows.len(),
            rows,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<IntPoly>] {
        &self.rows
    }

    /// Rows supplied by the caller, without the membership rows.
    pub fn equation_rows(&self) -> &[Vec<IntPoly>] {
        &self.rows[..self.equations]
    }

    /// Determinants of every `k`-row subset, subsets in lexicographic order.
    pub fn maximal_minors(&self) -> Vec<IntPoly> {
        self.maximal_minors_with_limit(DEFAULT_MINOR_SOFT_LIMIT)
    }

    /// As [`maximal_minors`](Self::maximal_minors) with a configurable soft
    /// limit; exceeding it only logs a warning.
    pub fn maximal_minors_with_limit(&self, soft_limit: u64) -> Vec<IntPoly> {
        let total = binomial(self.rows.len() as u64, self.k as u64);
        if total > soft_limit {
            log::warn!(
                "enumerating {total} maximal minors ({} rows, {} columns) exceeds soft limit {soft_limit}",
                self.rows.len(),
                self.k
            );
        }
        Combinations::new(self.rows.len(), self.k)
            .map(|subset| {
                let sub: Vec<Vec<IntPoly>> = subset.iter().map(|&r| self.rows[r].clone()).collect();
                determinant(&sub)
            })
            .collect()
    }

    /// Entrywise evaluation at `q0`; requires `q0^n - 1 > 0`.
    pub fn evaluate(&self, q0: &BigInt) -> Result<IntMatrix> {
        if *q0 <= BigInt::one() {
            return Err(Error::DegenerateModulus);
        }
        let entries = self
            .rows
            .iter()
            .flat_map(|row| row.iter().map(|p| p.eval(q0)))
            .collect();
        Ok(IntMatrix::new(self.rows.len(), self.k, entries))
    }
}

pub fn build_relation_matrix(
    equation_rows: &[Vec<IntPoly>],
    k: usize,
    n: usize,
) -> Result<RelationMatrix> {
    RelationMatrix::build(equation_rows, k, n)
}

pub fn maximal_minors(m: &RelationMatrix) -> Vec<IntPoly> {
    m.maximal_minors()
}

pub fn evaluate_matrix(m: &RelationMatrix, q0: &BigInt) -> Result<IntMatrix> {
    m.evaluate(q0)
}

/// Gcd of the absolute values of `polys` at `x`, ignoring zero values.
pub fn gcd_of_values(polys: &[IntPoly], x: &BigInt) -> BigInt {
    polys.iter().fold(BigInt::zero(), |g, p| g.gcd(&p.eval(x)))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination. Falls back to cofactor expansion if an exact division ever
/// fails.
pub fn determinant(m: &[Vec<IntPoly>]) -> IntPoly {
    bareiss(m).unwrap_or_else(|| {
        log::warn!("fraction-free elimination hit an inexact division; using cofactor expansion");
        cofactor_determinant(m)
    })
}

fn bareiss(m: &[Vec<IntPoly>]) -> Option<IntPoly> {
    let k = m.len();
    if k == 0 {
        return Some(IntPoly::one());
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = IntPoly::one();
    for p in 0..k - 1 {
        if a[p][p].is_zero() {
            let Some(swap) = (p + 1..k).find(|&r| !a[r][p].is_zero()) else {
                return Some(IntPoly::zero());
            };
            a.swap(p, swap);
            negate = !negate;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let num = &(&a[i][j] * &a[p][p]) - &(&a[i][p] * &a[p][j]);
                a[i][j] = num.exact_div(&prev)?;
            }
            a[i][p] = IntPoly::zero();
        }
        prev = a[p][p].clone();
    }
    let det = a[k - 1][k - 1].clone();
    Some(if negate { -det } else { det })
}

/// Laplace expansion along the first row.
pub fn cofactor_determinant(m: &[Vec<IntPoly>]) -> IntPoly {
    let k = m.len();
    match k {
        0 => IntPoly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = IntPoly::zero();
            for c in 0..k {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<IntPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * &cofactor_determinant(&minor);
                acc = if c % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}
