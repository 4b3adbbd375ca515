//! PORC expressions `d(x) = alpha + sum coeff_i * gcd(x - n_i, m_i)` and the
//! functions built from them: `d * f` pairs and signed sums of such pairs.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::{render_factor, BigRational, IntPoly, RatPoly};

/// One `coeff * gcd(x - n, m)` term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PorcTerm {
    pub coeff: BigRational,
    pub n: u64,
    pub m: u64,
}

/// `alpha + sum coeff_i * gcd(x - n_i, m_i)` in canonical form: every
/// `m_i > 1`, `0 < n_i < m_i`, no repeated `(n_i, m_i)`, no zero
/// coefficients, terms sorted by `(m_i, n_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PorcExpression {
    alpha: BigRational,
    terms: Vec<PorcTerm>,
}

/// `gcd(x, m)` with the convention `gcd(0, m) = m`.
fn gcd_at(x: &BigInt, n: u64, m: u64) -> u64 {
    let r = arith::big_mod(&(x - BigInt::from(n)), m);
    arith::gcd(r, m)
}

impl PorcExpression {
    pub fn constant(alpha: BigRational) -> Self {
        Self {
            alpha,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// Builds from parts that must already satisfy the canonical invariants.
    pub fn from_parts(alpha: BigRational, terms: Vec<PorcTerm>) -> Result<Self> {
        let mut seen = alloc::collections::BTreeSet::new();
        for t in &terms {
            if t.m <= 1 {
                return Err(Error::Invalid(alloc::format!(
                    "gcd modulus {} must exceed 1",
                    t.m
                )));
            }
            if t.n == 0 || t.n >= t.m {
                return Err(Error::Invalid(alloc::format!(
                    "residue {} must satisfy 0 < n < {}",
                    t.n,
                    t.m
                )));
            }
            if t.coeff.is_zero() {
                return Err(Error::Invalid("zero coefficient in PORC expression".into()));
            }
            if !seen.insert((t.m, t.n)) {
                return Err(Error::Invalid(alloc::format!(
                    "duplicate term gcd(x-{},{})",
                    t.n,
                    t.m
                )));
            }
        }
        let mut terms = terms;
        terms.sort_by_key(|t| (t.m, t.n));
        Ok(Self { alpha, terms })
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn terms(&self) -> &[PorcTerm] {
        &self.terms
    }

    pub fn is_one(&self) -> bool {
        self.terms.is_empty() && self.alpha.is_one()
    }

    /// True when the expression is a single `gcd(x - n, m)` with coefficient 1.
    fn is_bare_gcd(&self) -> bool {
        self.alpha.is_zero() && self.terms.len() == 1 && self.terms[0].coeff.is_one()
    }

    /// Exact value at `x`.
    pub fn eval(&self, x: &BigInt) -> BigRational {
        self.terms.iter().fold(self.alpha.clone(), |acc, t| {
            acc + &t.coeff * BigRational::from_integer(gcd_at(x, t.n, t.m).into())
        })
    }

    /// Lcm of all term moduli (1 for a constant).
    pub fn period(&self) -> Option<u64> {
        self.terms
            .iter()
            .try_fold(1u64, |acc, t| arith::lcm(acc, t.m))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::constant(BigRational::zero());
        }
        Self {
            alpha: &self.alpha * c,
            terms: self
                .terms
                .iter()
                .map(|t| PorcTerm {
                    coeff: &t.coeff * c,
                    n: t.n,
                    m: t.m,
                })
                .collect(),
        }
    }

    pub fn display_with<'a>(&'a self, var: &'a str) -> PorcDisplay<'a> {
        PorcDisplay { expr: self, var }
    }
}

pub fn porc_eval(e: &PorcExpression, x: &BigInt) -> BigRational {
    e.eval(x)
}

/// Bring an arbitrary rational combination of gcd terms into canonical form.
///
/// Residues are reduced modulo their modulus; modulus-one terms fold into the
/// constant; a term with residue zero is rewritten through the identity
/// `sum_{a=0}^{m-1} gcd(x - a, m) = const`, so it becomes a constant minus
/// the terms with residues `1..m`. Like terms merge and zeros drop.
///
/// Rewriting a residue-zero term costs `O(m)`; panics if a modulus is zero.
pub fn porc_canonicalize<I>(alpha: BigRational, terms: I) -> PorcExpression
where
    I: IntoIterator<Item = (BigRational, BigInt, u64)>,
{
    let mut alpha = alpha;
    let mut acc: BTreeMap<(u64, u64), BigRational> = BTreeMap::new();
    let mut zero_residue: BTreeMap<u64, BigRational> = BTreeMap::new();
    for (coeff, n, m) in terms {
        assert!(m >= 1, "gcd modulus must be positive");
        if coeff.is_zero() {
            continue;
        }
        if m == 1 {
            alpha += coeff;
            continue;
        }
        let n = arith::big_mod(&n, m);
        if n == 0 {
            *zero_residue.entry(m).or_insert_with(BigRational::zero) += coeff;
        } else {
            *acc.entry((m, n)).or_insert_with(BigRational::zero) += coeff;
        }
    }
    for (m, coeff) in zero_residue {
        if coeff.is_zero() {
            continue;
        }
        let mut pillai = 0u128;
        for a in 0..m {
            pillai += arith::gcd(a, m) as u128;
            if a > 0 {
                *acc.entry((m, a)).or_insert_with(BigRational::zero) -= &coeff;
            }
        }
        alpha += &coeff * BigRational::from_integer(BigInt::from(pillai));
    }
    let terms = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((m, n), coeff)| PorcTerm { coeff, n, m })
        .collect();
    PorcExpression { alpha, terms }
}

impl PorcExpression {
    /// Canonicalize `self` plus extra raw terms.
    pub fn canonicalize_with<I>(&self, extra: I) -> PorcExpression
    where
        I: IntoIterator<Item = (BigRational, BigInt, u64)>,
    {
        porc_canonicalize(
            self.alpha.clone(),
            self.terms
                .iter()
                .map(|t| (t.coeff.clone(), BigInt::from(t.n), t.m))
                .chain(extra),
        )
    }
}

/// Rendering of a [`PorcExpression`], e.g. `gcd(q-1,2)` or
/// `(3 - 1/2*gcd(q-1,4))`. Terms appear sorted by `(m, n)`.
pub struct PorcDisplay<'a> {
    expr: &'a PorcExpression,
    var: &'a str,
}

fn write_gcd(f: &mut fmt::Formatter<'_>, var: &str, n: u64, m: u64) -> fmt::Result {
    write!(f, "gcd({var}-{n},{m})")
}

impl fmt::Display for PorcDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.expr;
        if e.terms.is_empty() {
            return write!(f, "{}", e.alpha);
        }
        if e.is_bare_gcd() {
            let t = &e.terms[0];
            return write_gcd(f, self.var, t.n, t.m);
        }
        f.write_char('(')?;
        let mut first = true;
        if !e.alpha.is_zero() {
            write!(f, "{}", e.alpha)?;
            first = false;
        }
        for t in &e.terms {
            let neg = t.coeff.is_negative();
            match (first, neg) {
                (true, true) => f.write_char('-')?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let a = t.coeff.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write_gcd(f, self.var, t.n, t.m)?;
        }
        f.write_char(')')
    }
}

impl fmt::Display for PorcExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("x").fmt(f)
    }
}

/// `h(x) = d(x) * |f(x)|` together with the residue modulus `m` that the
/// synthesis worked modulo.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GcdPorcFunction {
    pub f: IntPoly,
    pub d: PorcExpression,
    pub m: u64,
}

impl GcdPorcFunction {
    /// `d(x) * |f(x)|`.
    pub fn eval(&self, x: &BigInt) -> BigRational {
        self.d.eval(x) * BigRational::from_integer(self.f.eval(x).abs())
    }

    /// `d(x) * f(x)`, the signed product; agrees with [`eval`](Self::eval)
    /// wherever `f(x) >= 0`.
    pub fn eval_signed(&self, x: &BigInt) -> BigRational {
        self.d.eval(x) * BigRational::from_integer(self.f.eval(x))
    }

    /// Residue-class table of the signed product `d * f`.
    pub fn residue_table(&self) -> Result<ResidueTable> {
        residue_table(core::iter::once((Sign::Plus, self)))
    }

    pub fn display_with<'a>(&'a self, var: &'a str) -> TermDisplay<'a> {
        TermDisplay { g: self, var }
    }
}

/// Renders `d*f` as e.g. `gcd(q-1,2)*(q^2-1)`.
pub struct TermDisplay<'a> {
    g: &'a GcdPorcFunction,
    var: &'a str,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (d, poly) = (&self.g.d, &self.g.f);
        match (d.is_one(), poly.is_one()) {
            (true, true) => f.write_char('1'),
            (true, false) => f.write_str(&render_factor(poly, self.var)),
            (false, true) => write!(f, "{}", d.display_with(self.var)),
            (false, false) => write!(
                f,
                "{}*{}",
                d.display_with(self.var),
                render_factor(poly, self.var)
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn apply(self, v: BigRational) -> BigRational {
        match self {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }
}

/// A signed sum of `d * f` terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountingFunction {
    pub terms: Vec<(Sign, GcdPorcFunction)>,
}

impl CountingFunction {
    /// `sum sign * d(x) * |f(x)|`, exact.
    pub fn eval_rational(&self, x: &BigInt) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (s, g)| acc + s.apply(g.eval(x)))
    }

    /// Evaluates and checks the result is a nonnegative integer.
    pub fn eval(&self, x: &BigInt) -> Result<BigInt> {
        let v = self.eval_rational(x);
        if !v.is_integer() {
            return Err(Error::Inconsistent(alloc::format!(
                "counting function is non-integral ({v}) at {x}"
            )));
        }
        let v = v.to_integer();
        if v.is_negative() {
            return Err(Error::Inconsistent(alloc::format!(
                "counting function is negative ({v}) at {x}"
            )));
        }
        Ok(v)
    }

    pub fn residue_table(&self) -> Result<ResidueTable> {
        residue_table(self.terms.iter().map(|(s, g)| (*s, g)))
    }

    pub fn display_with<'a>(&'a self, var: &'a str) -> CountingDisplay<'a> {
        CountingDisplay { cf: self, var }
    }
}

pub struct CountingDisplay<'a> {
    cf: &'a CountingFunction,
    var: &'a str,
}

impl fmt::Display for CountingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cf.terms.is_empty() {
            return f.write_char('0');
        }
        for (i, (sign, g)) in self.cf.terms.iter().enumerate() {
            match (i, sign) {
                (0, Sign::Plus) => {}
                (0, Sign::Minus) => f.write_char('-')?,
                (_, Sign::Plus) => f.write_str(" + ")?,
                (_, Sign::Minus) => f.write_str(" - ")?,
            }
            write!(f, "{}", g.display_with(self.var))?;
        }
        Ok(())
    }
}

/// A PORC function collapsed to one plain polynomial per residue class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueTable {
    pub modulus: u64,
    /// Entry `r` is the polynomial valid on arguments `= r (mod modulus)`.
    pub polys: Vec<IntPoly>,
}

impl ResidueTable {
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let r = arith::big_mod(x, self.modulus) as usize;
        self.polys[r].eval(x)
    }

    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (r, p) in self.polys.iter().enumerate() {
            let _ = writeln!(
                out,
                "{var} = {r} (mod {}): {}",
                self.modulus,
                p.display_with(var)
            );
        }
        out
    }
}

/// Anything that collapses to a [`ResidueTable`].
pub trait Tabulate {
    fn residue_table(&self) -> Result<ResidueTable>;
}

impl Tabulate for GcdPorcFunction {
    fn residue_table(&self) -> Result<ResidueTable> {
        GcdPorcFunction::residue_table(self)
    }
}

impl Tabulate for CountingFunction {
    fn residue_table(&self) -> Result<ResidueTable> {
        CountingFunction::residue_table(self)
    }
}

/// One polynomial per residue class modulo the lcm of the periods of the
/// `d` parts.
pub fn porc_to_residue_table<T: Tabulate + ?Sized>(g: &T) -> Result<ResidueTable> {
    g.residue_table()
}

/// Cap on residue-table size.
pub const MAX_TABLE_MODULUS: u64 = 1 << 20;

fn residue_table<'a, I>(terms: I) -> Result<ResidueTable>
where
    I: IntoIterator<Item = (Sign, &'a GcdPorcFunction)> + Clone,
{
    let modulus = terms.clone().into_iter().try_fold(1u64, |acc, (_, g)| {
        g.d.period().and_then(|p| arith::lcm(acc, p))
    });
    let modulus = modulus
        .ok_or_else(|| Error::scale("residue table modulus", "> 2^64", MAX_TABLE_MODULUS))?;
    if modulus > MAX_TABLE_MODULUS {
        return Err(Error::scale(
            "residue table modulus",
            modulus,
            MAX_TABLE_MODULUS,
        ));
    }
    let mut polys = Vec::with_capacity(modulus as usize);
    for r in 0..modulus {
        let x = BigInt::from(r);
        let mut acc = RatPoly::zero();
        for (sign, g) in terms.clone() {
            let c = sign.apply(g.d.eval(&x));
            acc = &acc + &g.f.to_rat().scale(&c);
        }
        let p = acc.to_int().ok_or_else(|| {
            Error::Inconsistent(alloc::format!(
                "residue class {r} mod {modulus} collapses to a non-integral polynomial"
            ))
        })?;
        polys.push(p);
    }
    Ok(ResidueTable { modulus, polys })
}
