//! Exact JSON encodings.
//!
//! Polynomials are coefficient arrays in ascending degree, with integers of
//! any size written as JSON numbers. Rationals are strings `"num/den"` or
//! `"num"`. For example `gcd(x-1,2) * x` with `m = 2` is
//!
//! ```json
//! {"f":[0,1],"d":{"alpha":"0","terms":[{"coeff":"1","n":1,"m":2}]},"m":2}
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use porc_core::{
    BigRational, CountingFunction, GcdPorcFunction, IntPoly, PorcExpression, PorcTerm,
    ResidueTable, Sign,
};
use serde::{Deserialize, Serialize};
use serde_json::Number;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid value: {0}")]
    Value(String),
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    n: u64,
    m: u64,
}

#[derive(Serialize, Deserialize)]
struct ExprJson {
    alpha: String,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct GcdJson {
    f: Vec<Number>,
    d: ExprJson,
    m: u64,
}

#[derive(Serialize, Deserialize)]
struct SignedJson {
    sign: i8,
    f: Vec<Number>,
    d: ExprJson,
    m: u64,
}

#[derive(Serialize, Deserialize)]
struct CountingJson {
    terms: Vec<SignedJson>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    modulus: u64,
    polys: Vec<Vec<Number>>,
}

pub fn integer(v: &BigInt) -> Number {
    Number::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

fn parse_integer(n: &Number) -> Result<BigInt, JsonError> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| JsonError::Value(format!("`{n}` is not an integer")))
}

pub fn rational(r: &BigRational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational, JsonError> {
    let bad = || JsonError::Value(format!("`{s}` is not a rational"));
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((num, den)) => {
            let num = BigInt::from_str(num).map_err(|_| bad())?;
            let den = BigInt::from_str(den).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
    }
}

fn poly_json(p: &IntPoly) -> Vec<Number> {
    p.coeffs().iter().map(integer).collect()
}

fn parse_poly(v: &[Number]) -> Result<IntPoly, JsonError> {
    Ok(IntPoly::new(
        v.iter().map(parse_integer).collect::<Result<_, _>>()?,
    ))
}

fn expr_json(e: &PorcExpression) -> ExprJson {
    ExprJson {
        alpha: rational(e.alpha()),
        terms: e
            .terms()
            .iter()
            .map(|t| TermJson {
                coeff: rational(&t.coeff),
                n: t.n,
                m: t.m,
            })
            .collect(),
    }
}

fn parse_expr(e: &ExprJson) -> Result<PorcExpression, JsonError> {
    let terms = e
        .terms
        .iter()
        .map(|t| {
            Ok(PorcTerm {
                coeff: parse_rational(&t.coeff)?,
                n: t.n,
                m: t.m,
            })
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    PorcExpression::from_parts(parse_rational(&e.alpha)?, terms)
        .map_err(|err| JsonError::Value(err.to_string()))
}

fn gcd_json(g: &GcdPorcFunction) -> GcdJson {
    GcdJson {
        f: poly_json(&g.f),
        d: expr_json(&g.d),
        m: g.m,
    }
}

pub fn gcd_function_value(g: &GcdPorcFunction) -> serde_json::Value {
    serde_json::to_value(gcd_json(g)).expect("serializable")
}

pub fn gcd_function_to_string(g: &GcdPorcFunction) -> String {
    serde_json::to_string(&gcd_json(g)).expect("serializable")
}

pub fn gcd_function_from_str(s: &str) -> Result<GcdPorcFunction, JsonError> {
    let j: GcdJson = serde_json::from_str(s)?;
    Ok(GcdPorcFunction {
        f: parse_poly(&j.f)?,
        d: parse_expr(&j.d)?,
        m: j.m,
    })
}

fn counting_json(cf: &CountingFunction) -> CountingJson {
    CountingJson {
        terms: cf
            .terms
            .iter()
            .map(|(sign, g)| {
                let GcdJson { f, d, m } = gcd_json(g);
                SignedJson {
                    sign: sign.as_i8(),
                    f,
                    d,
                    m,
                }
            })
            .collect(),
    }
}

pub fn counting_function_value(cf: &CountingFunction) -> serde_json::Value {
    serde_json::to_value(counting_json(cf)).expect("serializable")
}

pub fn counting_function_to_string(cf: &CountingFunction) -> String {
    serde_json::to_string(&counting_json(cf)).expect("serializable")
}

pub fn counting_function_from_str(s: &str) -> Result<CountingFunction, JsonError> {
    let j: CountingJson = serde_json::from_str(s)?;
    let terms = j
        .terms
        .iter()
        .map(|t| {
            let sign = match t.sign {
                1 => Sign::Plus,
                -1 => Sign::Minus,
                other => {
                    return Err(JsonError::Value(format!(
                        "sign must be 1 or -1, got {other}"
                    )))
                }
            };
            Ok((
                sign,
                GcdPorcFunction {
                    f: parse_poly(&t.f)?,
                    d: parse_expr(&t.d)?,
                    m: t.m,
                },
            ))
        })
        .collect::<Result<_, JsonError>>()?;
    Ok(CountingFunction { terms })
}

pub fn table_value(t: &ResidueTable) -> serde_json::Value {
    serde_json::to_value(TableJson {
        modulus: t.modulus,
        polys: t.polys.iter().map(poly_json).collect(),
    })
    .expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use porc_core::synthesize_gcd_function;

    #[test]
    fn gcd_example_encoding() {
        let fs = [
            IntPoly::from_i64s(&[0, 1, 1]),
            IntPoly::from_i64s(&[0, -1, 1]),
        ];
        let g = synthesize_gcd_function(&fs).unwrap();
        let text = gcd_function_to_string(&g);
        assert_eq!(
            text,
            r#"{"f":[0,1],"d":{"alpha":"0","terms":[{"coeff":"1","n":1,"m":2}]},"m":2}"#
        );
        assert_eq!(gcd_function_from_str(&text).unwrap(), g);
    }

    #[test]
    fn big_integers_stay_exact() {
        let big = BigInt::from_str("123456789012345678901234567890").unwrap();
        let g = GcdPorcFunction {
            f: IntPoly::new(vec![big.clone(), BigInt::from(1)]),
            d: PorcExpression::one(),
            m: 1,
        };
        let text = gcd_function_to_string(&g);
        assert!(text.contains("123456789012345678901234567890"));
        assert_eq!(gcd_function_from_str(&text).unwrap().f.coeffs()[0], big);
    }

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert_eq!(
            parse_rational("7").unwrap(),
            BigRational::from_integer(7.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rejects_non_canonical_terms() {
        let text = r#"{"f":[1],"d":{"alpha":"0","terms":[{"coeff":"1","n":0,"m":2}]},"m":2}"#;
        assert!(matches!(
            gcd_function_from_str(text),
            Err(JsonError::Value(_))
        ));
        let text = r#"{"terms":[{"sign":2,"f":[1],"d":{"alpha":"1","terms":[]},"m":1}]}"#;
        assert!(counting_function_from_str(text).is_err());
    }
}
