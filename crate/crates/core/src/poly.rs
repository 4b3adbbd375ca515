//! Exact univariate polynomials over the integers and the rationals.
//!
//! Coefficients are stored in ascending order of degree: `coeffs[i]` is the
//! coefficient of `x^i`. The zero polynomial is the empty coefficient vector,
//! so the leading coefficient of a stored polynomial is never zero.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `x^n - 1`, the membership entry for `F_{q^n}`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Evaluation modulo `m`, result in `[0, m)`.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let xr = x % m;
        self.coeffs.iter().rev().fold(0u64, |acc, c| {
            let c = crate::arith::big_mod(c, m);
            crate::arith::add_mod(crate::arith::mul_mod(acc, xr, m), c, m)
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Integer gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Split into `(content, primitive)` with `content * primitive == self`
    /// and the primitive part having a positive leading coefficient.
    pub fn content_and_primitive(&self) -> Result<(BigInt, IntPoly)> {
        let lead = self.leading().ok_or(Error::NoPrimitivePart)?;
        let mut content = self.content();
        if lead.is_negative() {
            content = -content;
        }
        let primitive = Self::new(self.coeffs.iter().map(|c| c / &content).collect());
        Ok((content, primitive))
    }

    /// Exact division in `Z[x]`; `None` if `divisor` does not divide `self`
    /// with an integral quotient.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dlead = divisor.leading()?;
        let ddeg = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + ddeg];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Render with the given variable name, e.g. `3*q^2-q+1`.
    pub fn display_with<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Textual rendering of an [`IntPoly`] in a named variable.
pub struct PolyDisplay<'a> {
    poly: &'a IntPoly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_char('0');
        }
        let mut first = true;
        for (deg, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_char('-')?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            match deg {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    f.write_str(self.var)?;
                    if deg > 1 {
                        write!(f, "^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("x").fmt(f)
    }
}

fn add_coeffs<T: Clone + Zero + for<'a> core::ops::AddAssign<&'a T>>(a: &[T], b: &[T]) -> Vec<T> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn mul_coeffs<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Clone + Zero + for<'a> core::ops::AddAssign<&'a T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

macro_rules! poly_ops {
    ($ty:ident, $coef:ty) => {
        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $ty::new(add_coeffs(&self.coeffs, &rhs.coeffs))
            }
        }
        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self + &(-rhs)
            }
        }
        impl Mul<&$ty> for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                $ty::new(mul_coeffs(&self.coeffs, &rhs.coeffs))
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    coeffs: self.coeffs.iter().map(|c| -c).collect(),
                }
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl From<Vec<$coef>> for $ty {
            fn from(v: Vec<$coef>) -> $ty {
                $ty::new(v)
            }
        }
    };
}

poly_ops!(IntPoly, BigInt);
poly_ops!(RatPoly, BigRational);

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dlead = divisor.leading().expect("division by zero polynomial");
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + ddeg];
            if top.is_zero() {
                continue;
            }
            let q = top / dlead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        rem.truncate(ddeg);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Lcm of the coefficient denominators (one for the zero polynomial).
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Write `self = scale * primitive` with `primitive` a primitive integer
    /// polynomial with positive leading coefficient. `None` for zero.
    pub fn to_primitive(&self) -> Option<(BigRational, IntPoly)> {
        if self.is_zero() {
            return None;
        }
        let den = self.denominator_lcm();
        let cleared = IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * &den).to_integer())
                .collect(),
        );
        let (content, primitive) = cleared.content_and_primitive().ok()?;
        Some((BigRational::new(content, den), primitive))
    }

    /// The integer polynomial equal to `self`, if every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> Self {
        p.to_rat()
    }
}

/// Extended Euclid in `Q[x]`: returns `(g, s, t)` with `s*a + t*b = g` and
/// `g` monic. Both inputs must not be zero simultaneously.
pub fn ext_gcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
    let one = RatPoly::constant(BigRational::one());
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), RatPoly::zero());
    let (mut t0, mut t1) = (RatPoly::zero(), one);
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    let inv = r0
        .leading()
        .expect("ext_gcd of two zero polynomials")
        .recip();
    (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
}

/// Result of [`bezout_cofactors`]: `sum(fs[i] * cofactors[i]) == gcd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bezout {
    /// Primitive gcd with positive leading coefficient.
    pub gcd: IntPoly,
    /// One cofactor per input; zero for zero inputs.
    pub cofactors: Vec<RatPoly>,
    /// Lcm of every cofactor coefficient denominator.
    pub denominator_lcm: BigInt,
}

/// Gcd in `Q[x]` with Bezout cofactors, folding the two-argument extended
/// Euclid from left to right. Zero inputs are skipped.
pub fn bezout_cofactors(fs: &[IntPoly]) -> Result<Bezout> {
    let mut acc: Option<RatPoly> = None;
    let mut cofactors: Vec<RatPoly> = Vec::with_capacity(fs.len());
    for f in fs {
        if f.is_zero() {
            cofactors.push(RatPoly::zero());
            continue;
        }
        let fr = f.to_rat();
        match acc.take() {
            None => {
                cofactors.push(RatPoly::constant(BigRational::one()));
                acc = Some(fr);
            }
            Some(g) => {
                let (g2, s, t) = ext_gcd(&g, &fr);
                for c in cofactors.iter_mut() {
                    *c = &*c * &s;
                }
                cofactors.push(t);
                acc = Some(g2);
            }
        }
    }
    let g = acc.ok_or(Error::GcdUndefined)?;
    let (scale, gcd) = g.to_primitive().ok_or(Error::GcdUndefined)?;
    let inv = scale.recip();
    let cofactors: Vec<RatPoly> = cofactors.iter().map(|c| c.scale(&inv)).collect();
    let denominator_lcm = cofactors
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    Ok(Bezout {
        gcd,
        cofactors,
        denominator_lcm,
    })
}

/// Primitive, positive-leading generator of the gcd of `fs` in `Q[x]`.
pub fn rational_gcd(fs: &[IntPoly]) -> Result<IntPoly> {
    let mut acc: Option<RatPoly> = None;
    for f in fs.iter().filter(|f| !f.is_zero()) {
        let fr = f.to_rat();
        acc = Some(match acc {
            None => fr,
            Some(g) => ext_gcd(&g, &fr).0,
        });
    }
    acc.and_then(|g| g.to_primitive())
        .map(|(_, p)| p)
        .ok_or(Error::GcdUndefined)
}

pub fn eval_poly(p: &IntPoly, x: &BigInt) -> BigInt {
    p.eval(x)
}

/// Multi-line friendly rendering helper used by the porc printers.
pub(crate) fn render_factor(p: &IntPoly, var: &str) -> String {
    let s = alloc::format!("{}", p.display_with(var));
    if p.term_count() > 1 {
        alloc::format!("({s})")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-1, 0, 1]).eval(&3.into()), 8.into());
        assert_eq!(IntPoly::zero().eval(&17.into()), 0.into());
        assert_eq!(p(&[344, 39, 3]).eval(&5.into()), 614.into());
        assert_eq!(p(&[344, 39, 3]).eval_mod(5, 7), 614 % 7);
        assert_eq!(p(&[-3, 1]).eval_mod(1, 5), 3);
    }

    #[test]
    fn content_primitive_examples() {
        assert_eq!(
            p(&[0, 4, 6]).content_and_primitive().unwrap(),
            (2.into(), p(&[0, 2, 3]))
        );
        assert_eq!(
            p(&[0, -3]).content_and_primitive().unwrap(),
            ((-3).into(), p(&[0, 1]))
        );
        assert_eq!(
            p(&[5]).content_and_primitive().unwrap(),
            (5.into(), p(&[1]))
        );
        assert_eq!(
            IntPoly::zero().content_and_primitive(),
            Err(Error::NoPrimitivePart)
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            rational_gcd(&[p(&[-1, 0, 1]), p(&[-1, 0, 0, 1])]).unwrap(),
            p(&[-1, 1])
        );
        assert_eq!(
            rational_gcd(&[p(&[0, 1, 1]), p(&[0, -1, 1])]).unwrap(),
            p(&[0, 1])
        );
        assert_eq!(rational_gcd(&[p(&[2, 2]), p(&[2, 2])]).unwrap(), p(&[1, 1]));
        assert_eq!(
            rational_gcd(&[IntPoly::zero(), IntPoly::zero()]),
            Err(Error::GcdUndefined)
        );
        assert_eq!(rational_gcd(&[]), Err(Error::GcdUndefined));
    }

    #[test]
    fn bezout_examples() {
        let b = bezout_cofactors(&[p(&[-1, 0, 1]), p(&[-1, 0, 0, 1])]).unwrap();
        assert_eq!(b.gcd, p(&[-1, 1]));
        assert_eq!(b.cofactors, [p(&[0, -1]).to_rat(), p(&[1]).to_rat()]);
        assert_eq!(b.denominator_lcm, 1.into());

        let b = bezout_cofactors(&[p(&[0, 1, 1]), p(&[0, -1, 1])]).unwrap();
        assert_eq!(b.gcd, p(&[0, 1]));
        assert_eq!(
            b.cofactors,
            [RatPoly::constant(r(1, 2)), RatPoly::constant(r(-1, 2))]
        );
        assert_eq!(b.denominator_lcm, 2.into());

        let b = bezout_cofactors(&[p(&[0, 1])]).unwrap();
        assert_eq!(b.gcd, p(&[0, 1]));
        assert_eq!(b.cofactors, [p(&[1]).to_rat()]);
        assert_eq!(b.denominator_lcm, 1.into());
    }

    #[test]
    fn bezout_skips_zeros() {
        let b = bezout_cofactors(&[IntPoly::zero(), p(&[2, 2]), IntPoly::zero()]).unwrap();
        assert_eq!(b.gcd, p(&[1, 1]));
        assert!(b.cofactors[0].is_zero() && b.cofactors[2].is_zero());
        assert_eq!(b.cofactors[1], RatPoly::constant(r(1, 2)));
        assert_eq!(
            bezout_cofactors(&[IntPoly::zero()]),
            Err(Error::GcdUndefined)
        );
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.exact_div(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.exact_div(&p(&[0, 2])), None);
        assert_eq!(p(&[0, 2]).exact_div(&p(&[0, 1])), Some(p(&[2])));
        assert_eq!(p(&[1]).exact_div(&p(&[0, 1])), None);
        assert_eq!(IntPoly::zero().exact_div(&p(&[3])), Some(IntPoly::zero()));
    }

    #[test]
    fn rendering() {
        assert_eq!(
            alloc::format!("{}", p(&[-1, 0, 1]).display_with("q")),
            "q^2-1"
        );
        assert_eq!(
            alloc::format!("{}", p(&[344, 39, 3]).display_with("p")),
            "3*p^2+39*p+344"
        );
        assert_eq!(alloc::format!("{}", p(&[0, -1])), "-x");
        assert_eq!(alloc::format!("{}", IntPoly::zero()), "0");
        assert_eq!(render_factor(&p(&[-1, 1]), "q"), "(q-1)");
        assert_eq!(render_factor(&p(&[0, 0, 1]), "q"), "q^2");
    }
}
