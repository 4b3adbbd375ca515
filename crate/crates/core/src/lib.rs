//! Exact synthesis of PORC (polynomial on residue classes) counting
//! functions for monomial systems over finite fields.
//!
//! The pipeline runs: parse a system ([`dsl`]), build its relation matrix
//! over `Z[q]` ([`polymat`]), take the gcd of the maximal minors as a
//! function of `q` ([`synth`]), and combine inclusion-exclusion terms into a
//! [`CountingFunction`] ([`system`]). [`intmat`] and [`ffield`] provide the
//! numeric Smith normal form and brute-force oracles used to check it.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod dsl;
pub mod error;
pub mod ffield;
mod fproots;
pub mod intmat;
pub mod poly;
pub mod polymat;
pub mod porc;
pub mod synth;
pub mod system;

pub use dsl::{parse_polynomial, parse_polynomial_lines, parse_system, ParseError, ParseErrorKind};
pub use error::{Error, Result};
pub use ffield::{brute_force_count, exponent_space_count, make_field, FieldContext};
pub use intmat::{divisor_product, smith_normal_form, ElementaryDivisors, IntMatrix};
pub use poly::{bezout_cofactors, eval_poly, Bezout, BigRational, IntPoly, RatPoly};
pub use polymat::{build_relation_matrix, evaluate_matrix, maximal_minors, RelationMatrix};
pub use porc::{
    porc_canonicalize, porc_eval, porc_to_residue_table, CountingFunction, GcdPorcFunction,
    PorcExpression, PorcTerm, ResidueTable, Sign, Tabulate,
};
pub use synth::{
    build_indicator, check_structure, residue_gcd_profile, synthesize_gcd_function,
    synthesize_gcd_function_with, IndicatorScheme, Strategy,
};
pub use system::{
    count_at, count_at_with, counting_eval, synthesize_counting_function,
    synthesize_counting_function_with, CountOptions, MonomialRelation, MonomialSystem,
    RelationKind,
};
