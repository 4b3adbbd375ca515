//! Parser for the monomial-system language and for bare integer polynomials.
//!
//! ```text
//! system     := field_decl var_decl relation* ;
//! field_decl := "field" "GF" "(" "q" "^" INT ")" ";"
//! var_decl   := "vars" IDENT ("," IDENT)* ";"
//! relation   := ("eq" | "neq") monomial "=" "1" ";"
//! monomial   := factor ("*" factor)*
//! factor     := IDENT "^" exponent
//! exponent   := "(" intpoly ")" | INT | "-" INT
//! intpoly    := term (("+"|"-") term)*
//! term       := [INT "*"] "q" ["^" INT] | INT
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end
//! of the line. A few conveniences are accepted on top of the grammar: the
//! final `;` may be omitted, a leading sign in `intpoly`, `-(...)`
//! exponents, a bare `IDENT` factor meaning exponent one, and `GF(q)` for
//! `n = 1`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::IntPoly;
use crate::system::{MonomialRelation, MonomialSystem, RelationKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Unexpected token or character.
    Syntax(String),
    UnknownVariable(String),
    DuplicateVariable(String),
    NonIntegerCoefficient(String),
    /// The `field GF(q^n);` header is absent or has `n < 1`.
    BadField(String),
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::DuplicateVariable(v) => write!(f, "variable `{v}` declared twice"),
            ParseErrorKind::NonIntegerCoefficient(t) => {
                write!(f, "non-integer coefficient `{t}`")
            }
            ParseErrorKind::BadField(m) => write!(f, "bad field declaration: {m}"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            // reject rationals and decimals like 1/2 or 1.5
            if i + 1 < chars.len()
                && (chars[i] == '.' || chars[i] == '/')
                && chars[i + 1].is_ascii_digit()
            {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                    j += 1;
                }
                return Err(ParseError {
                    line: tl,
                    col: tc,
                    kind: ParseErrorKind::NonIntegerCoefficient(chars[start..j].iter().collect()),
                });
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Int(text.parse().expect("digits")),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: tl,
                col: tc,
            });
            continue;
        }
        if "()^;,=*+-".contains(c) {
            i += 1;
            col += 1;
            out.push(Spanned {
                tok: Tok::Punct(c),
                line: tl,
                col: tc,
            });
            continue;
        }
        return Err(ParseError {
            line: tl,
            col: tc,
            kind: ParseErrorKind::Syntax(alloc::format!("unexpected character `{c}`")),
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Self {
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let s = self.here();
        ParseError {
            line: s.line,
            col: s.col,
            kind,
        }
    }

    fn syntax(&self, expected: &str) -> ParseError {
        self.error_here(ParseErrorKind::Syntax(alloc::format!(
            "expected {expected}, found {}",
            self.peek()
        )))
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            Err(self.syntax(&alloc::format!("`{c}`")))
        }
    }

    /// `;` ends every declaration; the last one may omit it at end of input.
    fn end_item(&mut self) -> Result<(), ParseError> {
        if self.eat_punct(';') || *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.syntax("`;`"))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(&alloc::format!("`{kw}`")))
        }
    }

    fn expect_int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => Err(self.syntax("an integer")),
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.syntax("an identifier")),
        }
    }

    fn small_exponent(&mut self) -> Result<usize, ParseError> {
        let at = self.here().clone();
        let v = self.expect_int()?;
        v.to_usize().filter(|&e| e <= 4096).ok_or(ParseError {
            line: at.line,
            col: at.col,
            kind: ParseErrorKind::Syntax(alloc::format!("degree {v} out of range")),
        })
    }

    /// `intpoly` in the variable `var`; `var == None` accepts the first
    /// identifier seen and then requires it throughout.
    fn int_poly(&mut self, var: &mut Option<String>) -> Result<IntPoly, ParseError> {
        let mut acc = IntPoly::zero();
        let mut negate = self.eat_punct('-');
        if !negate {
            self.eat_punct('+');
        }
        loop {
            let t = self.poly_term(var)?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat_punct('+') {
                negate = false;
            } else if self.eat_punct('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_var(&mut self, var: &mut Option<String>) -> Result<(), ParseError> {
        let at = self.here().clone();
        let name = self.expect_ident()?;
        match var {
            Some(v) if *v != name => Err(ParseError {
                line: at.line,
                col: at.col,
                kind: ParseErrorKind::UnknownVariable(name),
            }),
            Some(_) => Ok(()),
            None => {
                *var = Some(name);
                Ok(())
            }
        }
    }

    fn poly_term(&mut self, var: &mut Option<String>) -> Result<IntPoly, ParseError> {
        let coeff = match self.peek() {
            Tok::Int(_) => {
                let c = self.expect_int()?;
                let explicit = self.eat_punct('*');
                if !explicit && !matches!(self.peek(), Tok::Ident(_)) {
                    return Ok(IntPoly::constant(c));
                }
                c
            }
            Tok::Ident(_) => BigInt::one(),
            _ => return Err(self.syntax("a polynomial term")),
        };
        self.poly_var(var)?;
        let deg = if self.eat_punct('^') {
            self.small_exponent()?
        } else {
            1
        };
        Ok(IntPoly::monomial(coeff, deg))
    }

    fn exponent(&mut self, var: &mut Option<String>) -> Result<IntPoly, ParseError> {
        let negate = self.eat_punct('-');
        let e = if self.eat_punct('(') {
            let p = self.int_poly(var)?;
            self.expect_punct(')')?;
            p
        } else if let Tok::Int(_) = self.peek() {
            IntPoly::constant(self.expect_int()?)
        } else {
            return Err(self.syntax("an exponent: integer or parenthesized polynomial in q"));
        };
        Ok(if negate { -e } else { e })
    }

    fn field_decl(&mut self) -> Result<usize, ParseError> {
        if !self.is_keyword("field") {
            return Err(self.error_here(ParseErrorKind::BadField(
                "system must start with `field GF(q^n);`".into(),
            )));
        }
        self.bump();
        self.expect_keyword("GF")?;
        self.expect_punct('(')?;
        self.expect_keyword("q")?;
        let n = if self.eat_punct('^') {
            let at = self.here().clone();
            let n = self.expect_int()?;
            match n.to_usize() {
                Some(n) if (1..=64).contains(&n) => n,
                _ => {
                    return Err(ParseError {
                        line: at.line,
                        col: at.col,
                        kind: ParseErrorKind::BadField(alloc::format!(
                            "extension degree must be in 1..=64, got {n}"
                        )),
                    })
                }
            }
        } else {
            1
        };
        self.expect_punct(')')?;
        self.end_item()?;
        Ok(n)
    }

    fn var_decl(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect_keyword("vars")?;
        let mut vars: Vec<String> = Vec::new();
        loop {
            let at = self.here().clone();
            let v = self.expect_ident()?;
            if vars.contains(&v) {
                return Err(ParseError {
                    line: at.line,
                    col: at.col,
                    kind: ParseErrorKind::DuplicateVariable(v),
                });
            }
            vars.push(v);
            if !self.eat_punct(',') {
                break;
            }
        }
        self.end_item()?;
        Ok(vars)
    }

    fn relation(&mut self, vars: &[String]) -> Result<MonomialRelation, ParseError> {
        let kind = if self.is_keyword("eq") {
            RelationKind::Equation
        } else if self.is_keyword("neq") {
            RelationKind::Inequation
        } else {
            return Err(self.syntax("`eq` or `neq`"));
        };
        self.bump();
        let mut exponents = alloc::vec![IntPoly::zero(); vars.len()];
        loop {
            let at = self.here().clone();
            let name = self.expect_ident()?;
            let idx = vars.iter().position(|v| *v == name).ok_or(ParseError {
                line: at.line,
                col: at.col,
                kind: ParseErrorKind::UnknownVariable(name),
            })?;
            let e = if self.eat_punct('^') {
                self.exponent(&mut Some("q".to_string()))?
            } else {
                IntPoly::one()
            };
            exponents[idx] = &exponents[idx] + &e;
            if !self.eat_punct('*') {
                break;
            }
        }
        self.expect_punct('=')?;
        let at = self.here().clone();
        let rhs = self.expect_int()?;
        if !rhs.is_one() {
            return Err(ParseError {
                line: at.line,
                col: at.col,
                kind: ParseErrorKind::Syntax(alloc::format!(
                    "right-hand side must be 1, found {rhs}"
                )),
            });
        }
        self.end_item()?;
        Ok(MonomialRelation { exponents, kind })
    }
}

/// Parse a monomial system.
pub fn parse_system(text: &str) -> Result<MonomialSystem, ParseError> {
    let mut p = Parser::new(text)?;
    let n = p.field_decl()?;
    let vars = p.var_decl()?;
    let mut relations = Vec::new();
    while *p.peek() != Tok::Eof {
        relations.push(p.relation(&vars)?);
    }
    Ok(MonomialSystem::from_parts(vars, n, relations)
        .expect("parser only builds well-formed systems"))
}

/// Parse a single integer polynomial such as `x^2+x` or `3*q^2-1`, in any
/// one variable. Returns the polynomial and the variable name, if any.
pub fn parse_polynomial(text: &str) -> Result<(IntPoly, Option<String>), ParseError> {
    let mut p = Parser::new(text)?;
    let mut var = None;
    let poly = p.int_poly(&mut var)?;
    if *p.peek() != Tok::Eof {
        return Err(p.syntax("end of polynomial"));
    }
    Ok((poly, var))
}

/// Parse one polynomial per nonblank, non-comment line.
pub fn parse_polynomial_lines(text: &str) -> Result<Vec<IntPoly>, ParseError> {
    let mut out = Vec::new();
    let mut var: Option<String> = None;
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let mut p = Parser::new(body).map_err(|e| relocate(e, lineno))?;
        let poly = p.int_poly(&mut var).map_err(|e| relocate(e, lineno))?;
        if *p.peek() != Tok::Eof {
            return Err(relocate(p.syntax("end of line"), lineno));
        }
        out.push(poly);
    }
    Ok(out)
}

fn relocate(mut e: ParseError, lineno: usize) -> ParseError {
    e.line = lineno + 1;
    e
}

/// Render an exponent polynomial back into DSL syntax.
pub(crate) fn render_exponent(p: &IntPoly) -> String {
    if p.degree().unwrap_or(0) == 0 {
        let c = p.coeffs().first().cloned().unwrap_or_else(BigInt::zero);
        return alloc::format!("{c}");
    }
    let lead_neg = p.leading().is_some_and(Signed::is_negative);
    if lead_neg {
        alloc::format!("-({})", (-p).display_with("q"))
    } else {
        alloc::format!("({})", p.display_with("q"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    pub(crate) const NORM_SQUARE_ROOT: &str =
        "field GF(q^2); vars x1, x2; eq x1^(q^2-1) = 1; neq x1^(q-1) = 1; eq x1^(q+1)*x2^-2 = 1";

    #[test]
    fn parses_norm_square_root() {
        let s = parse_system(NORM_SQUARE_ROOT).unwrap();
        assert_eq!((s.k(), s.n()), (2, 2));
        assert_eq!(s.vars(), ["x1", "x2"]);
        let rels = s.relations();
        assert_eq!(rels.len(), 3);
        assert_eq!(rels[0].exponents, vec![p(&[-1, 0, 1]), p(&[])]);
        assert_eq!(rels[0].kind, RelationKind::Equation);
        assert_eq!(rels[1].exponents, vec![p(&[-1, 1]), p(&[])]);
        assert_eq!(rels[1].kind, RelationKind::Inequation);
        assert_eq!(rels[2].exponents, vec![p(&[1, 1]), p(&[-2])]);
    }

    #[test]
    fn parses_empty_system() {
        let s = parse_system("field GF(q^3); vars y").unwrap();
        assert_eq!((s.k(), s.n(), s.relations().len()), (1, 3, 0));
        let s = parse_system("field GF(q^3); vars y;").unwrap();
        assert_eq!((s.k(), s.n(), s.relations().len()), (1, 3, 0));
        let e = parse_system("field GF(q^3); vars y eq y^2 = 1").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn reports_malformed_exponent() {
        let e = parse_system("field GF(q^2); vars x; eq x^(q+) = 1;").unwrap_err();
        assert_eq!((e.line, e.col), (1, 32));
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn error_kinds() {
        let e = parse_system("field GF(q^2); vars x; eq y^2 = 1;").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("y".into()));
        let e = parse_system("field GF(q^2); vars x; eq x^(1/2*q) = 1;").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::NonIntegerCoefficient(_)));
        let e = parse_system("vars x; eq x^2 = 1;").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::BadField(_)));
        let e = parse_system("field GF(q^0); vars x;").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::BadField(_)));
        let e = parse_system("field GF(q^2); vars x, x;").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateVariable("x".into()));
        let e = parse_system("field GF(q^2); vars x; eq x^2 = 2;").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_system("field GF(q^2); vars x; eq x^(p+1) = 1;").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("p".into()));
    }

    #[test]
    fn comments_and_layout() {
        let text = "# header\nfield GF(q^2);   # the field\nvars a,\n  b;\n\neq a^2 * b^(3*q^2 - q + 4) * a = 1;\n";
        let s = parse_system(text).unwrap();
        assert_eq!(s.relations()[0].exponents, vec![p(&[3]), p(&[4, -1, 3])]);
        let e = parse_system("field GF(q^2);\nvars x;\neq x^ = 1;").unwrap_err();
        assert_eq!((e.line, e.col), (3, 7));
    }

    #[test]
    fn polynomials() {
        assert_eq!(
            parse_polynomial("x^2+x").unwrap(),
            (p(&[0, 1, 1]), Some("x".into()))
        );
        assert_eq!(parse_polynomial("-3*q^2+2q-7").unwrap().0, p(&[-7, 2, -3]));
        assert_eq!(parse_polynomial("12").unwrap(), (p(&[12]), None));
        assert!(parse_polynomial("x^2+y").is_err());
        assert_eq!(
            parse_polynomial_lines("x^2+x\n\n# skip\nx^2-x\n").unwrap(),
            vec![p(&[0, 1, 1]), p(&[0, -1, 1])]
        );
        let e = parse_polynomial_lines("x\nx+\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn exponent_rendering_round_trips() {
        for e in [p(&[-1, 0, 1]), p(&[-2]), p(&[1, -1]), p(&[0, 3]), p(&[5])] {
            let text = alloc::format!("field GF(q); vars x; eq x^{} = 1;", render_exponent(&e));
            let s = parse_system(&text).unwrap();
            assert_eq!(s.relations()[0].exponents[0], e, "{text}");
        }
    }
}
