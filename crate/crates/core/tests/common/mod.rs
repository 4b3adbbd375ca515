#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use num_bigint::BigInt;
use porc_core::{parse_system, IntMatrix, IntPoly, MonomialSystem};
use rand::rngs::StdRng;
use rand::Rng;

pub const NORM_SQUARE_ROOT: &str = include_str!("../corpus/norm_square_root.sys");

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

/// Every `.sys` file in the corpus, sorted by name.
pub fn corpus() -> Vec<(String, MonomialSystem)> {
    let mut entries: Vec<_> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "sys"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            let sys = parse_system(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (p.file_stem().unwrap().to_string_lossy().into_owned(), sys)
        })
        .collect()
}

/// `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

pub fn random_poly(rng: &mut StdRng, max_deg: usize, bound: i64) -> IntPoly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntPoly::from_i64s(&coeffs)
}

/// A list of 1..=`max_len` polynomials, not all zero. Half the time the
/// members share a random common factor so that the gcd is nontrivial.
pub fn random_family(rng: &mut StdRng, max_len: usize, max_deg: usize, bound: i64) -> Vec<IntPoly> {
    loop {
        let len = rng.gen_range(1..=max_len);
        let common = if rng.gen_bool(0.5) {
            random_poly(rng, 2, 4)
        } else {
            IntPoly::one()
        };
        if common.is_zero() {
            continue;
        }
        let fs: Vec<IntPoly> = (0..len)
            .map(|_| {
                let p = &random_poly(rng, max_deg.saturating_sub(2), bound) * &common;
                if p.degree().unwrap_or(0) > max_deg {
                    random_poly(rng, max_deg, bound)
                } else {
                    p
                }
            })
            .collect();
        if fs.iter().any(|f| !f.is_zero()) {
            return fs;
        }
    }
}

/// Random system with `k <= 3` unknowns, `n <= 2`, up to `max_eq` equations
/// and `max_neq` inequations, exponents of degree `<= 2`.
pub fn random_system(rng: &mut StdRng, max_eq: usize, max_neq: usize) -> MonomialSystem {
    let k = rng.gen_range(1..=3);
    let n = rng.gen_range(1..=2);
    let mut sys = MonomialSystem::with_unknowns(k, n).unwrap();
    let row =
        |rng: &mut StdRng| -> Vec<IntPoly> { (0..k).map(|_| random_poly(rng, 2, 3)).collect() };
    for _ in 0..rng.gen_range(0..=max_eq) {
        let r = row(rng);
        sys.equation(r).unwrap();
    }
    for _ in 0..rng.gen_range(0..=max_neq) {
        let r = row(rng);
        sys.inequation(r).unwrap();
    }
    sys
}

pub fn random_matrix(rng: &mut StdRng, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(rows, cols, entries)
}

/// Applies `count` random unimodular row or column operations in place.
pub fn scramble(rng: &mut StdRng, m: &mut IntMatrix, count: usize) {
    for _ in 0..count {
        let on_rows = rng.gen_bool(0.5);
        let dim = if on_rows { m.rows() } else { m.cols() };
        let a = rng.gen_range(0..dim);
        let b = rng.gen_range(0..dim);
        match (rng.gen_range(0..3), on_rows) {
            (0, true) => m.swap_rows(a, b),
            (0, false) => m.swap_cols(a, b),
            (1, true) => m.negate_row(a),
            (1, false) => m.negate_col(a),
            (_, _) if a == b => {}
            (_, true) => m.add_row_multiple(a, b, &BigInt::from(rng.gen_range(-3..=3))),
            (_, false) => m.add_col_multiple(a, b, &BigInt::from(rng.gen_range(-3..=3))),
        }
    }
}

/// Independent gcd over integers, by Euclid on `BigInt`.
pub fn gcd_all(values: impl IntoIterator<Item = BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::from(0), |a, b| {
        let (mut x, mut y) = (a, b);
        while y != BigInt::from(0) {
            let r = &x % &y;
            x = y;
            y = r;
        }
        if x < BigInt::from(0) {
            -x
        } else {
            x
        }
    })
}
