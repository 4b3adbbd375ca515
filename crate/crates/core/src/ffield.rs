//! Verification oracles: explicit arithmetic in `F_{p^n}` and enumeration in
//! the exponent group `Z_{q^n-1}^k`.
//!
//! Elements of a [`FieldContext`] are encoded as integers `sum c_i p^i` in
//! `[0, p^n)`, where `c_i` are the coefficients of the residue polynomial
//! modulo the defining polynomial. Code `0` is zero and code `1` is one.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{big_mod, is_prime};
use crate::error::{Error, Result};
use crate::system::{MonomialSystem, RelationKind};

/// Largest field order [`make_field`] will construct.
pub const MAX_FIELD_ORDER: u64 = 1_000_000;

/// Default cap on the number of tuples either oracle enumerates.
pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;

/// `F_{p^n}` as `F_p[t] / (modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldContext {
    p: u64,
    degree: usize,
    /// Monic, ascending coefficients, length `degree + 1`.
    modulus: Vec<u64>,
    order: u64,
}

/// Builds `F_{p^n}` with the smallest monic irreducible modulus, where
/// polynomials are ordered by their code `sum c_i p^i`.
pub fn make_field(p: u64, n: usize) -> Result<FieldContext> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::Invalid("field degree must be >= 1".into()));
    }
    let order = checked_pow(p, n)
        .filter(|&o| o <= MAX_FIELD_ORDER)
        .ok_or_else(|| Error::scale("field order", alloc::format!("{p}^{n}"), MAX_FIELD_ORDER))?;
    let modulus = (0..order)
        .map(|code| {
            let mut m = digits(code, p, n);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial of every degree exists");
    Ok(FieldContext {
        p,
        degree: n,
        modulus,
        order,
    })
}

fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    (0..exp).try_fold(1u64, |acc, _| acc.checked_mul(base))
}

fn digits(mut code: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = vec![0; n];
    for c in &mut out {
        *c = code % p;
        code /= p;
    }
    out
}

/// Remainder of `a` modulo the monic `m`, both ascending over `F_p`.
fn rem_monic(a: &mut Vec<u64>, m: &[u64], p: u64) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let top = a.pop().unwrap();
        if top != 0 {
            let base = a.len() - dm;
            for (j, &c) in m[..dm].iter().enumerate() {
                a[base + j] = (a[base + j] + (p - top) * c) % p;
            }
        }
    }
}

/// No monic factor of degree `1..=deg/2`. Exhaustive; fine at oracle scale.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = checked_pow(p, d).expect("oracle-scale field");
        for code in 0..count {
            let mut g = digits(code, p, d);
            g.push(1);
            let mut r = m.to_vec();
            rem_monic(&mut r, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldContext {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.order - 1
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    pub fn decode(&self, x: u64) -> Vec<u64> {
        debug_assert!(x < self.order);
        digits(x, self.p, self.degree)
    }

    pub fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let s: Vec<u64> = self
            .decode(a)
            .iter()
            .map(|&u| (self.p - u) % self.p)
            .collect();
        self.encode(&s)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.decode(a), self.decode(b));
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.degree - 1];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % p;
            }
        }
        rem_monic(&mut prod, &self.modulus, p);
        self.encode(&prod)
    }

    pub fn pow_u64(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^e` for any integer `e`; for nonzero `x` the exponent is reduced mod
    /// `p^n - 1`, so negative exponents invert. `0^e` is `1` for `e = 0`,
    /// `0` for `e > 0`, and an error for `e < 0`.
    pub fn pow(&self, x: u64, e: &BigInt) -> Result<u64> {
        if x == 0 {
            return match e.sign() {
                num_bigint::Sign::NoSign => Ok(1),
                num_bigint::Sign::Plus => Ok(0),
                num_bigint::Sign::Minus => {
                    Err(Error::Invalid("zero has no multiplicative inverse".into()))
                }
            };
        }
        Ok(self.pow_u64(x, big_mod(e, self.group_order())))
    }

    pub fn inv(&self, x: u64) -> Option<u64> {
        (x != 0).then(|| self.pow_u64(x, self.group_order() - 1))
    }

    /// `x -> x^(p^e)`, the Frobenius of the subfield of order `p^e`.
    pub fn frobenius(&self, x: u64, e: u32) -> u64 {
        (0..e).fold(x, |acc, _| self.pow_u64(acc, self.p))
    }
}

/// Exponent of every relation at `q = q0`, reduced mod `group`. Rows are
/// returned with their kind.
fn reduced_rows(sys: &MonomialSystem, q0: &BigInt, group: u64) -> Vec<(RelationKind, Vec<u64>)> {
    sys.relations()
        .iter()
        .map(|r| {
            let row = r
                .exponents
                .iter()
                .map(|e| big_mod(&e.eval(q0), group))
                .collect();
            (r.kind, row)
        })
        .collect()
}

fn check_enum(group: u64, k: usize, cap: u64) -> Result<()> {
    let total = u32::try_from(k)
        .ok()
        .and_then(|k| group.checked_pow(k))
        .filter(|&t| t <= cap);
    match total {
        Some(_) => Ok(()),
        None => Err(Error::scale(
            "enumeration",
            alloc::format!("{group}^{k}"),
            cap,
        )),
    }
}

/// Depth-first enumeration over `k` coordinates. `accum[i]` holds the
/// running value of relation `i`; `step(i, acc, coord, value)` folds in one
/// coordinate and `accept(i, acc)` judges the finished value.
fn enumerate<S, A>(
    k: usize,
    values: &[u64],
    kinds: &[RelationKind],
    init: u64,
    step: &S,
    holds: &A,
) -> u64
where
    S: Fn(usize, u64, usize, u64) -> u64,
    A: Fn(u64) -> bool,
{
    fn rec<S, A>(
        j: usize,
        k: usize,
        values: &[u64],
        kinds: &[RelationKind],
        acc: &mut Vec<u64>,
        step: &S,
        holds: &A,
    ) -> u64
    where
        S: Fn(usize, u64, usize, u64) -> u64,
        A: Fn(u64) -> bool,
    {
        if j == k {
            let ok = acc.iter().zip(kinds).all(|(&v, kind)| match kind {
                RelationKind::Equation => holds(v),
                RelationKind::Inequation => !holds(v),
            });
            return u64::from(ok);
        }
        let saved = acc.clone();
        let mut total = 0;
        for &x in values {
            for (i, a) in acc.iter_mut().enumerate() {
                *a = step(i, saved[i], j, x);
            }
            total += rec(j + 1, k, values, kinds, acc, step, holds);
        }
        acc.copy_from_slice(&saved);
        total
    }
    let mut acc = vec![init; kinds.len()];
    rec(0, k, values, kinds, &mut acc, step, holds)
}

/// Counts tuples of nonzero elements of `F_{q^n}`, `q = p^e`, satisfying
/// every relation of `sys`, by direct enumeration in the field
/// `F_{p^{e n}}`. At most `max_enum` tuples are visited.
pub fn brute_force_count(sys: &MonomialSystem, p: u64, e: u32, max_enum: u64) -> Result<u64> {
    if e == 0 {
        return Err(Error::Invalid("prime-power exponent must be >= 1".into()));
    }
    let field = make_field(p, e as usize * sys.n())?;
    let group = field.group_order();
    check_enum(group, sys.k(), max_enum)?;
    let q = checked_pow(p, e as usize).expect("q below field order");
    // x^q must fix exactly the subfield of order q
    debug_assert!(
        (1..field.order()).all(|x| { field.frobenius(x, e) != x || field.pow_u64(x, q - 1) == 1 })
    );
    let rows = reduced_rows(sys, &BigInt::from(q), group);
    let kinds: Vec<RelationKind> = rows.iter().map(|(kind, _)| *kind).collect();
    let elements: Vec<u64> = (1..field.order()).collect();
    // powers[i][j][x - 1] = x^(row i, column j)
    let powers: Vec<Vec<Vec<u64>>> = rows
        .iter()
        .map(|(_, row)| {
            row.iter()
                .map(|&exp| elements.iter().map(|&x| field.pow_u64(x, exp)).collect())
                .collect()
        })
        .collect();
    let step =
        |i: usize, acc: u64, j: usize, x: u64| field.mul(acc, powers[i][j][(x - 1) as usize]);
    Ok(enumerate(sys.k(), &elements, &kinds, 1, &step, &|v| v == 1))
}

/// Counts exponent vectors `(m_1, ..., m_k)` in `Z_{q0^n-1}^k` with
/// `sum a_j m_j = 0` for every equation row and `!= 0` for every
/// inequation row, the `a_j` being the exponents evaluated at `q0`.
pub fn exponent_space_count(sys: &MonomialSystem, q0: u64, max_enum: u64) -> Result<u64> {
    if q0 <= 1 {
        return Err(Error::DegenerateModulus);
    }
    let group = BigInt::from(q0).pow(sys.n() as u32) - 1u32;
    let group = group
        .to_u64()
        .filter(|&g| g <= max_enum)
        .ok_or_else(|| Error::scale("exponent group order", &group, max_enum))?;
    check_enum(group, sys.k(), max_enum)?;
    let rows = reduced_rows(sys, &BigInt::from(q0), group);
    let kinds: Vec<RelationKind> = rows.iter().map(|(kind, _)| *kind).collect();
    let values: Vec<u64> = (0..group).collect();
    let step = |i: usize, acc: u64, j: usize, m: u64| {
        ((acc as u128 + rows[i].1[j] as u128 * m as u128) % group as u128) as u64
    };
    Ok(enumerate(sys.k(), &values, &kinds, 0, &step, &|v| v == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_system;

    const NORM_SQUARE_ROOT: &str =
        "field GF(q^2); vars x1, x2; eq x1^(q^2-1) = 1; neq x1^(q-1) = 1; eq x1^(q+1)*x2^-2 = 1";

    #[test]
    fn field_moduli() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), [1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), [1, 0, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus(), [1, 1, 0, 1]);
        assert_eq!(make_field(5, 1).unwrap().modulus(), [0, 1]);
        assert_eq!(make_field(4, 1), Err(Error::NotPrime(4)));
        assert!(make_field(2, 20).unwrap_err().is_scale());
    }

    #[test]
    fn group_and_frobenius() {
        for (p, n) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = make_field(p, n).unwrap();
            for x in 1..f.order() {
                assert_eq!(f.pow_u64(x, f.group_order()), 1);
                assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
            }
            for a in (0..f.order()).step_by(3) {
                for b in (0..f.order()).step_by(7) {
                    assert_eq!(
                        f.frobenius(f.add(a, b), 1),
                        f.add(f.frobenius(a, 1), f.frobenius(b, 1))
                    );
                }
            }
        }
    }

    #[test]
    fn negative_exponents_invert() {
        let f = make_field(3, 2).unwrap();
        for x in 1..9 {
            let inv = f.pow(x, &BigInt::from(-1)).unwrap();
            assert_eq!(f.mul(x, inv), 1);
        }
        assert!(f.pow(0, &BigInt::from(-1)).is_err());
        assert_eq!(f.pow(0, &BigInt::from(0)).unwrap(), 1);
    }

    #[test]
    fn oracle_examples() {
        let s = parse_system(NORM_SQUARE_ROOT).unwrap();
        assert_eq!(brute_force_count(&s, 3, 1, DEFAULT_MAX_ENUM).unwrap(), 12);
        assert_eq!(brute_force_count(&s, 2, 2, DEFAULT_MAX_ENUM).unwrap(), 12);
        assert_eq!(exponent_space_count(&s, 3, DEFAULT_MAX_ENUM).unwrap(), 12);
        assert_eq!(
            exponent_space_count(&s.equations_only(), 3, DEFAULT_MAX_ENUM).unwrap(),
            16
        );
        let empty = MonomialSystem::with_unknowns(1, 1).unwrap();
        assert_eq!(
            brute_force_count(&empty, 2, 1, DEFAULT_MAX_ENUM).unwrap(),
            1
        );
        let empty = MonomialSystem::with_unknowns(2, 2).unwrap();
        assert_eq!(
            exponent_space_count(&empty, 2, DEFAULT_MAX_ENUM).unwrap(),
            9
        );
    }

    #[test]
    fn enumeration_cap() {
        let s = MonomialSystem::with_unknowns(3, 2).unwrap();
        // 80^3 = 512000
        assert!(exponent_space_count(&s, 9, 500_000).unwrap_err().is_scale());
        assert_eq!(exponent_space_count(&s, 9, 600_000).unwrap(), 512_000);
    }
}
