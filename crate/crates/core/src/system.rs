//! Monomial systems over `F_{q^n}` and their PORC counting functions.
//!
//! A system chooses nonzero `x_1, ..., x_k` in `F_{q^n}` subject to
//! relations `x_1^{e_1(q)} ... x_k^{e_k(q)} = 1` (or `!= 1`), the exponents
//! being integer polynomials in `q`. Equations alone are counted by the
//! divisor product of the relation matrix; inequations are removed by
//! inclusion-exclusion over the subsets of inequations promoted to
//! equations.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intmat::smith_normal_form;
use crate::poly::IntPoly;
use crate::polymat::RelationMatrix;
use crate::porc::{CountingFunction, Sign};
use crate::synth::synthesize_gcd_function;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Equation,
    Inequation,
}

/// One monomial constraint: the exponent of each unknown, and `= 1` or
/// `!= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialRelation {
    pub exponents: Vec<IntPoly>,
    pub kind: RelationKind,
}

/// Unknowns, extension degree and relations. Membership of each unknown in
/// the multiplicative group of `F_{q^n}` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialSystem {
    vars: Vec<String>,
    n: usize,
    relations: Vec<MonomialRelation>,
}

/// Default cap on the number of inequations.
pub const DEFAULT_MAX_NEQ: usize = 20;

impl MonomialSystem {
    pub fn new(vars: Vec<String>, n: usize) -> Result<Self> {
        Self::from_parts(vars, n, Vec::new())
    }

    pub fn from_parts(
        vars: Vec<String>,
        n: usize,
        relations: Vec<MonomialRelation>,
    ) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::Invalid("a system needs at least one unknown".into()));
        }
        if n == 0 {
            return Err(Error::Invalid("extension degree n must be >= 1".into()));
        }
        let k = vars.len();
        if let Some((row, r)) = relations
            .iter()
            .enumerate()
            .find(|(_, r)| r.exponents.len() != k)
        {
            return Err(Error::RowLength {
                row,
                expected: k,
                found: r.exponents.len(),
            });
        }
        Ok(Self { vars, n, relations })
    }

    /// Unknowns named `x1..xk`.
    pub fn with_unknowns(k: usize, n: usize) -> Result<Self> {
        Self::new((1..=k).map(|i| alloc::format!("x{i}")).collect(), n)
    }

    pub fn push(&mut self, relation: MonomialRelation) -> Result<()> {
        if relation.exponents.len() != self.k() {
            return Err(Error::RowLength {
                row: self.relations.len(),
                expected: self.k(),
                found: relation.exponents.len(),
            });
        }
        self.relations.push(relation);
        Ok(())
    }

    pub fn equation(&mut self, exponents: Vec<IntPoly>) -> Result<()> {
        self.push(MonomialRelation {
            exponents,
            kind: RelationKind::Equation,
        })
    }

    pub fn inequation(&mut self, exponents: Vec<IntPoly>) -> Result<()> {
        self.push(MonomialRelation {
            exponents,
            kind: RelationKind::Inequation,
        })
    }

    pub fn k(&self) -> usize {
        self.vars.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn relations(&self) -> &[MonomialRelation] {
        &self.relations
    }

    fn rows_of(&self, kind: RelationKind) -> Vec<&Vec<IntPoly>> {
        self.relations
            .iter()
            .filter(|r| r.kind == kind)
            .map(|r| &r.exponents)
            .collect()
    }

    pub fn equations(&self) -> Vec<&Vec<IntPoly>> {
        self.rows_of(RelationKind::Equation)
    }

    pub fn inequations(&self) -> Vec<&Vec<IntPoly>> {
        self.rows_of(RelationKind::Inequation)
    }

    /// The same system with every inequation dropped.
    pub fn equations_only(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            n: self.n,
            relations: self
                .relations
                .iter()
                .filter(|r| r.kind == RelationKind::Equation)
                .cloned()
                .collect(),
        }
    }

    /// Relation matrices for each inclusion-exclusion subset, in ascending
    /// bitmask order over the inequations, with the subset's sign.
    pub fn inclusion_exclusion_matrices(
        &self,
        max_neq: usize,
    ) -> Result<Vec<(Sign, RelationMatrix)>> {
        let eqs = self.equations();
        let neqs = self.inequations();
        if neqs.len() > max_neq || neqs.len() >= 64 {
            return Err(Error::TooManyInequations {
                count: neqs.len(),
                max: max_neq.min(63),
            });
        }
        (0u64..1 << neqs.len())
            .map(|mask| {
                let mut rows: Vec<Vec<IntPoly>> = eqs.iter().map(|r| (*r).clone()).collect();
                rows.extend(
                    neqs.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, r)| (*r).clone()),
                );
                let sign = Sign::from_parity(mask.count_ones() % 2 == 1);
                Ok((sign, RelationMatrix::build(&rows, self.k(), self.n)?))
            })
            .collect()
    }
}

impl fmt::Display for MonomialSystem {
    /// Renders the system back into the input language.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field GF(q^{});", self.n)?;
        writeln!(f, "vars {};", self.vars.join(", "))?;
        for r in &self.relations {
            let kw = match r.kind {
                RelationKind::Equation => "eq",
                RelationKind::Inequation => "neq",
            };
            let factors: Vec<String> = r
                .exponents
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, v)| alloc::format!("{v}^{}", crate::dsl::render_exponent(e)))
                .collect();
            if factors.is_empty() {
                // x^0 = 1: trivially true; keep the relation with a zero exponent
                writeln!(f, "{kw} {}^0 = 1;", self.vars[0])?;
            } else {
                writeln!(f, "{kw} {} = 1;", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Options shared by [`count_at_with`] and [`synthesize_counting_function_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub max_neq: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self {
            max_neq: DEFAULT_MAX_NEQ,
        }
    }
}

pub fn count_at(sys: &MonomialSystem, q0: u64) -> Result<BigInt> {
    count_at_with(sys, q0, CountOptions::default())
}

/// Number of solutions at `q = q0` via Smith normal forms and
/// inclusion-exclusion. Exact for prime powers; for other `q0` it is the
/// same gcd-of-minors quantity the synthesized function describes.
pub fn count_at_with(sys: &MonomialSystem, q0: u64, opts: CountOptions) -> Result<BigInt> {
    if q0 <= 1 {
        return Err(Error::DegenerateModulus);
    }
    let q = BigInt::from(q0);
    let mut total = BigInt::zero();
    for (sign, m) in sys.inclusion_exclusion_matrices(opts.max_neq)? {
        let d = smith_normal_form(&m.evaluate(&q)?);
        if d.rank() < sys.k() {
            return Err(Error::Inconsistent(alloc::format!(
                "relation matrix is rank deficient at q = {q0}"
            )));
        }
        match sign {
            Sign::Plus => total += d.product(),
            Sign::Minus => total -= d.product(),
        }
    }
    Ok(total)
}

pub fn synthesize_counting_function(sys: &MonomialSystem) -> Result<CountingFunction> {
    synthesize_counting_function_with(sys, CountOptions::default())
}

/// One `sign * d * f` term per inclusion-exclusion subset, each from the gcd
/// of the maximal minors of that subset's relation matrix.
pub fn synthesize_counting_function_with(
    sys: &MonomialSystem,
    opts: CountOptions,
) -> Result<CountingFunction> {
    let terms = sys
        .inclusion_exclusion_matrices(opts.max_neq)?
        .into_iter()
        .map(|(sign, m)| Ok((sign, synthesize_gcd_function(&m.maximal_minors())?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountingFunction { terms })
}

/// Evaluates a counting function at `q0 >= 2`.
pub fn counting_eval(cf: &CountingFunction, q0: u64) -> Result<BigInt> {
    if q0 <= 1 {
        return Err(Error::DegenerateModulus);
    }
    cf.eval(&BigInt::from(q0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_system;
    use alloc::format;
    use alloc::vec;

    const NORM_SQUARE_ROOT: &str =
        "field GF(q^2); vars x1, x2; eq x1^(q^2-1) = 1; neq x1^(q-1) = 1; eq x1^(q+1)*x2^-2 = 1";

    #[test]
    fn count_examples() {
        let s = parse_system(NORM_SQUARE_ROOT).unwrap();
        assert_eq!(count_at(&s, 3).unwrap(), 12.into());
        assert_eq!(count_at(&s, 2).unwrap(), 2.into());
        let empty = MonomialSystem::with_unknowns(2, 1).unwrap();
        assert_eq!(count_at(&empty, 2).unwrap(), 1.into());
        assert_eq!(count_at(&empty, 1), Err(Error::DegenerateModulus));
    }

    #[test]
    fn synthesis_examples() {
        let s = parse_system(NORM_SQUARE_ROOT).unwrap();
        let cf = synthesize_counting_function(&s).unwrap();
        assert_eq!(
            format!("{}", cf.display_with("q")),
            "gcd(q-1,2)*(q^2-1) - gcd(q-1,2)*(q-1)"
        );
        assert_eq!(counting_eval(&cf, 5).unwrap(), 40.into());
        assert_eq!(counting_eval(&cf, 4).unwrap(), 12.into());

        let eqs = synthesize_counting_function(&s.equations_only()).unwrap();
        assert_eq!(format!("{}", eqs.display_with("q")), "gcd(q-1,2)*(q^2-1)");

        let empty = MonomialSystem::with_unknowns(1, 2).unwrap();
        let cf = synthesize_counting_function(&empty).unwrap();
        assert_eq!(format!("{}", cf.display_with("q")), "(q^2-1)");
        assert_eq!(counting_eval(&cf, 3).unwrap(), 8.into());
    }

    #[test]
    fn too_many_inequations() {
        let mut s = MonomialSystem::with_unknowns(1, 1).unwrap();
        for i in 0..3 {
            s.inequation(vec![IntPoly::from_i64s(&[i + 1])]).unwrap();
        }
        let opts = CountOptions { max_neq: 2 };
        assert_eq!(
            count_at_with(&s, 5, opts),
            Err(Error::TooManyInequations { count: 3, max: 2 })
        );
        assert!(synthesize_counting_function_with(&s, opts).is_err());
    }

    #[test]
    fn inequation_duplicating_equation_counts_zero() {
        let mut s = MonomialSystem::with_unknowns(1, 2).unwrap();
        s.equation(vec![IntPoly::from_i64s(&[-1, 1])]).unwrap();
        s.inequation(vec![IntPoly::from_i64s(&[-1, 1])]).unwrap();
        for q in 2..12 {
            assert_eq!(count_at(&s, q).unwrap(), 0.into());
        }
    }

    #[test]
    fn display_round_trips_through_parser() {
        let s = parse_system(NORM_SQUARE_ROOT).unwrap();
        let again = parse_system(&format!("{s}")).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn rejects_wrong_width() {
        let mut s = MonomialSystem::with_unknowns(2, 1).unwrap();
        assert!(s.equation(vec![IntPoly::one()]).is_err());
    }
}
