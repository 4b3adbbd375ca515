//! Closed forms for the gcd of the values of integer polynomials.
//!
//! Given `f_1, ..., f_s` in `Z[x]`, write `f` for their primitive gcd in
//! `Q[x]` and `sum f_i g_i = f` for Bezout cofactors with denominator lcm
//! `m`. Then `h(x) = gcd(f_1(x), ..., f_s(x)) = d(x) * |f(x)|` wherever
//! `f(x) != 0`, where `d(x)` divides `m` and depends only on `x mod m`. This
//! module finds `d` as a rational combination of `gcd(x - n_i, m_i)` terms.
//!
//! Two constructions produce `d`:
//!
//! * **direct** (small `m`): profile `d` on every residue class and combine
//!   the shifted indicators `k(x - a) / k(m)`, where
//!   `k(x) = sum_{T subset of primes(m)} (-1)^|T| gcd(x, m / prod T)` vanishes
//!   off the class `0 mod m`;
//! * **factored** (large `m`): split `d` over the prime powers of `m` by CRT,
//!   build each local factor (common roots mod `p` for `p || m`, residue
//!   indicators mod `p^e` on the lifts of those roots otherwise) and multiply
//!   the local expressions. Products of gcds with coprime moduli are gcds
//!   with the product modulus, so every modulus divides `m`. Moduli need not
//!   be `m` over a square-free divisor here, unlike the direct construction.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::fproots;
use crate::poly::{bezout_cofactors, BigRational, IntPoly};
use crate::porc::{porc_canonicalize, GcdPorcFunction, PorcExpression, Sign};

/// Largest `m` handled by the direct construction under [`Strategy::Auto`].
pub const DIRECT_LIMIT: u64 = 1024;
/// Largest residue modulus [`residue_gcd_profile`] will enumerate.
pub const PROFILE_LIMIT: u64 = 1 << 20;
/// Primes up to this bound have their common roots found by trying every residue.
pub const LOCAL_ENUM_LIMIT: u64 = 1 << 16;
/// Cap on intermediate term counts in the factored construction.
pub const EXPANSION_LIMIT: u64 = 1 << 20;

/// The indicator `k(x) = sum_T (-1)^|T| gcd(x, m / d_T)` over every subset
/// `T` of the prime factors of `m` (including the empty set and all of them).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorScheme {
    pub m: u64,
    pub prime_factors: Vec<u64>,
    /// `(sign, m / d_T)` per subset, subsets in bitmask order.
    pub subset_terms: Vec<(Sign, u64)>,
    /// `k(m)`, equal to Euler's totient of `m`.
    pub c: u64,
}

pub fn build_indicator(m: u64) -> Result<IndicatorScheme> {
    if m <= 1 {
        return Err(Error::IndicatorModulus(m));
    }
    let prime_factors: Vec<u64> = arith::factor(m).into_iter().map(|(p, _)| p).collect();
    let subset_terms: Vec<(Sign, u64)> = (0u32..1 << prime_factors.len())
        .map(|mask| {
            let d_t: u64 = prime_factors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| p)
                .product();
            (Sign::from_parity(mask.count_ones() % 2 == 1), m / d_t)
        })
        .collect();
    let c = subset_terms.iter().fold(0i128, |acc, &(s, modulus)| {
        acc + i128::from(s.as_i8()) * i128::from(modulus)
    });
    Ok(IndicatorScheme {
        m,
        prime_factors,
        subset_terms,
        c: c as u64,
    })
}

impl IndicatorScheme {
    /// `k(x)`: zero unless `x = 0 (mod m)`, where it equals `c`.
    pub fn eval(&self, x: &BigInt) -> i128 {
        self.subset_terms.iter().fold(0i128, |acc, &(s, modulus)| {
            let g = arith::gcd(arith::big_mod(x, modulus), modulus);
            acc + i128::from(s.as_i8()) * i128::from(g)
        })
    }
}

pub fn indicator_eval(s: &IndicatorScheme, x: &BigInt) -> i128 {
    s.eval(x)
}

/// `d(a)` for `a = 1..=m`: the gcd of the `f_i` values divided by `|f|`, at
/// the smallest representative `x = a + t*m` (`t >= 0`) with `f(x) != 0`.
pub fn residue_gcd_profile(fs: &[IntPoly], f: &IntPoly, m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::Invalid("residue modulus must be positive".into()));
    }
    if m > PROFILE_LIMIT {
        return Err(Error::scale("residue profile modulus", m, PROFILE_LIMIT));
    }
    let mb = BigInt::from(m);
    (1..=m)
        .map(|a| {
            let mut x = BigInt::from(a);
            let fx = loop {
                let v = f.eval(&x);
                if !v.is_zero() {
                    break v;
                }
                x += &mb;
            };
            let h = fs.iter().fold(BigInt::zero(), |g, fi| g.gcd(&fi.eval(&x)));
            let (q, r) = h.div_rem(&fx.abs());
            if !r.is_zero() {
                return Err(Error::Inconsistent(alloc::format!(
                    "f({x}) = {fx} does not divide gcd {h}"
                )));
            }
            q.to_u64().filter(|v| *v >= 1 && m % v == 0).ok_or_else(|| {
                Error::Inconsistent(alloc::format!("d({a}) = {q} does not divide m = {m}"))
            })
        })
        .collect()
}

/// Which construction [`synthesize_gcd_function_with`] uses for `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Direct for `m <= DIRECT_LIMIT`, factored above.
    #[default]
    Auto,
    Direct,
    Factored,
}

pub fn synthesize_gcd_function(fs: &[IntPoly]) -> Result<GcdPorcFunction> {
    synthesize_gcd_function_with(fs, Strategy::Auto)
}

pub fn synthesize_gcd_function_with(fs: &[IntPoly], strategy: Strategy) -> Result<GcdPorcFunction> {
    let bezout = bezout_cofactors(fs)?;
    let f = bezout.gcd;
    let m = bezout
        .denominator_lcm
        .to_u64()
        .ok_or_else(|| Error::scale("residue modulus m", &bezout.denominator_lcm, u64::MAX))?;
    if m == 1 {
        return Ok(GcdPorcFunction {
            f,
            d: PorcExpression::one(),
            m,
        });
    }
    let direct = match strategy {
        Strategy::Auto => m <= DIRECT_LIMIT,
        Strategy::Direct => true,
        Strategy::Factored => false,
    };
    let d = if direct {
        direct_expression(fs, &f, m)?
    } else {
        let quotients = fs
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                p.exact_div(&f).ok_or_else(|| {
                    Error::Inconsistent(alloc::format!("gcd {f} does not divide {p} in Z[x]"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        factored_expression(&quotients, m)?
    };
    Ok(GcdPorcFunction { f, d, m })
}

fn direct_expression(fs: &[IntPoly], f: &IntPoly, m: u64) -> Result<PorcExpression> {
    let profile = residue_gcd_profile(fs, f, m)?;
    let scheme = build_indicator(m)?;
    let c = BigInt::from(scheme.c);
    // d(x) = sum_a d(a)/c * k(x - a); k(x - a) = sum_T sign * gcd(x - a, m/d_T)
    let mut raw: BTreeMap<(u64, u64), BigInt> = BTreeMap::new();
    for (idx, &value) in profile.iter().enumerate() {
        let a = idx as u64 + 1;
        for &(sign, modulus) in &scheme.subset_terms {
            let entry = raw.entry((modulus, a % modulus)).or_default();
            match sign {
                Sign::Plus => *entry += value,
                Sign::Minus => *entry -= value,
            }
        }
    }
    Ok(porc_canonicalize(
        BigRational::zero(),
        raw.into_iter().map(|((modulus, n), num)| {
            (BigRational::new(num, c.clone()), BigInt::from(n), modulus)
        }),
    ))
}

/// A raw `coeff * gcd(x - n, modulus)` term.
type Raw = (BigRational, u64, u64);

fn factored_expression(quotients: &[IntPoly], m: u64) -> Result<PorcExpression> {
    let mut expansion: Vec<Raw> = vec![(BigRational::one(), 0, 1)];
    for (p, e) in arith::factor(m) {
        let local = local_expression(quotients, p, e)?;
        let size = expansion.len() as u64 * local.len() as u64;
        if size > EXPANSION_LIMIT {
            return Err(Error::scale("gcd term expansion", size, EXPANSION_LIMIT));
        }
        let mut next = Vec::with_capacity(size as usize);
        for (c1, r1, m1) in &expansion {
            for (c2, r2, m2) in &local {
                next.push((c1 * c2, arith::crt_pair(*r1, *m1, *r2, *m2), m1 * m2));
            }
        }
        expansion = merge(next);
    }
    // residue-zero terms are rewritten over every residue of their modulus
    let rewrite_cost: u64 = expansion
        .iter()
        .filter(|(_, n, modulus)| *n == 0 && *modulus > 1)
        .map(|(_, _, modulus)| *modulus)
        .fold(0u64, u64::saturating_add);
    if rewrite_cost > EXPANSION_LIMIT {
        return Err(Error::scale(
            "residue-zero gcd rewrite",
            rewrite_cost,
            EXPANSION_LIMIT,
        ));
    }
    Ok(porc_canonicalize(
        BigRational::zero(),
        expansion
            .into_iter()
            .map(|(c, n, modulus)| (c, BigInt::from(n), modulus)),
    ))
}

fn merge(terms: Vec<Raw>) -> Vec<Raw> {
    let mut map: BTreeMap<(u64, u64), BigRational> = BTreeMap::new();
    for (c, n, modulus) in terms {
        *map.entry((modulus, n)).or_insert_with(BigRational::zero) += c;
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((modulus, n), c)| (c, n, modulus))
        .collect()
}

/// Expression for the `p`-part `p^{v_p(d(x))}` of `d`, using only moduli
/// `p^e` and `p^{e-1}`.
fn local_expression(quotients: &[IntPoly], p: u64, e: u32) -> Result<Vec<Raw>> {
    let int = |v: i64| BigRational::from_integer(v.into());
    // residues mod p where p divides every quotient; None when all do
    let roots = if p <= LOCAL_ENUM_LIMIT {
        let all: Vec<u64> = (0..p)
            .filter(|&a| quotients.iter().all(|u| u.eval_mod(a, p) == 0))
            .collect();
        (all.len() as u64 != p).then_some(all)
    } else {
        fproots::common_roots(quotients, p)
    };
    if e == 1 {
        // d's p-part is p on common roots mod p and 1 elsewhere
        return Ok(match roots {
            None => vec![(int(p as i64), 0, 1)],
            Some(roots) => {
                let mut out: Vec<Raw> = Vec::with_capacity(roots.len() + 1);
                let constant = 1 - roots.len() as i64;
                if constant != 0 {
                    out.push((int(constant), 0, 1));
                }
                out.extend(roots.into_iter().map(|r| (int(1), r, p)));
                out
            }
        });
    }
    // p-part is 1 off the lifts of the roots, so
    // d_p(x) = 1 + sum_a (p^v(a) - 1) [x = a (mod p^e)], where the indicator is
    // (gcd(x - a, p^e) - gcd(x - a, p^(e-1))) / phi(p^e)
    let pe = p.checked_pow(e).ok_or_else(|| {
        Error::scale(
            "prime power component of m",
            alloc::format!("{p}^{e}"),
            u64::MAX,
        )
    })?;
    let lower = pe / p;
    let roots: Vec<u64> = roots.unwrap_or_else(|| (0..p).collect());
    let lifts = (roots.len() as u64).saturating_mul(lower);
    if lifts > EXPANSION_LIMIT {
        return Err(Error::scale(
            "lifted residues mod p^e",
            lifts,
            EXPANSION_LIMIT,
        ));
    }
    let phi = BigInt::from(pe - lower);
    let mut raw: Vec<Raw> = vec![(int(1), 0, 1)];
    for &r in &roots {
        for t in 0..lower {
            let a = r + t * p;
            let v = quotients
                .iter()
                .map(|u| arith::valuation_capped(u.eval_mod(a, pe), p, e))
                .min()
                .unwrap_or(e);
            if v == 0 {
                continue;
            }
            let coeff = BigRational::new(BigInt::from(p.pow(v) - 1), phi.clone());
            raw.push((-coeff.clone(), a % lower, lower));
            raw.push((coeff, a, pe));
        }
    }
    Ok(merge(raw))
}

/// Checks the structural promises of a synthesized function: canonical
/// terms, every modulus a divisor of `m` greater than one, and coefficient denominators dividing `k(m) = phi(m)`.
pub fn check_structure(g: &GcdPorcFunction) -> Result<()> {
    let m = g.m;
    let phi = BigInt::from(arith::euler_phi(m.max(1)));
    let fail = |msg: alloc::string::String| Err(Error::Inconsistent(msg));
    if !phi.is_multiple_of(g.d.alpha().denom()) {
        return fail(alloc::format!("alpha denominator does not divide phi({m})"));
    }
    for t in g.d.terms() {
        if t.m <= 1 || t.n == 0 || t.n >= t.m || t.coeff.is_zero() {
            return fail(alloc::format!("non-canonical term {t:?}"));
        }
        if m % t.m != 0 {
            return fail(alloc::format!("modulus {} does not divide m = {m}", t.m));
        }
        if !phi.is_multiple_of(t.coeff.denom()) {
            return fail(alloc::format!(
                "coefficient {} has denominator not dividing phi({m}) = {phi}",
                t.coeff
            ));
        }
    }
    Ok(())
}
