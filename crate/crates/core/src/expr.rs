//! Text syntax for polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' ['-'] integer)?
//! atom   := rational | symbol | '(' expr ')'
//! ```
//!
//! Rationals are `n` or `n/d`. Negative exponents are accepted only on
//! invertible values (nonzero constants and monomials in `q` and `x`).
//! Parsing is bounded in nesting depth, exponent size and result size so
//! hostile input fails fast instead of exhausting memory.

use thiserror::Error;

use crate::polyring::{MultiPoly, Symbol};
use crate::rational::{ExactRational, RationalParseError};

pub const MAX_DEPTH: usize = 64;
pub const MAX_EXPONENT: i64 = 256;
pub const MAX_LITERAL_DIGITS: usize = 512;
const MAX_TERMS: usize = 20_000;
const MAX_MUL_WORK: usize = 2_000_000;
const MAX_RESULT_EXPONENT: i64 = 4096;
const MAX_COEFF_BITS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {}", expected.join(" or "))]
    Syntax { position: usize, expected: Vec<&'static str> },
    #[error("unknown symbol {name:?} at byte {position}")]
    UnknownSymbol { position: usize, name: String },
    #[error("bad rational literal at byte {position}: {source}")]
    Rational { position: usize, source: RationalParseError },
    #[error("exponent at byte {position} exceeds {MAX_EXPONENT} in magnitude")]
    ExponentOutOfRange { position: usize },
    #[error("negative power at byte {position} of a non-invertible value")]
    NotInvertible { position: usize },
    #[error("parentheses nested deeper than {MAX_DEPTH}")]
    TooDeep,
    #[error("expression too large to expand")]
    TooLarge,
}

/// Parsed expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(ExactRational),
    Var(Symbol),
    /// Terms with a flag marking subtraction.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow { base: Box<Expr>, exp: i64, position: usize },
}

impl Expr {
    /// Expands to a canonical polynomial.
    pub fn to_poly(&self) -> Result<MultiPoly, ParseError> {
        match self {
            Expr::Num(r) => Ok(MultiPoly::constant(r.clone())),
            Expr::Var(s) => Ok(MultiPoly::var(*s)),
            Expr::Sum(terms) => {
                let mut acc = MultiPoly::zero();
                for (negated, e) in terms {
                    let p = e.to_poly()?;
                    acc = if *negated { &acc - &p } else { &acc + &p };
                    check_size(&acc)?;
                }
                Ok(acc)
            }
            Expr::Product(factors) => {
                let mut acc = MultiPoly::one();
                for f in factors {
                    acc = guarded_mul(&acc, &f.to_poly()?)?;
                }
                Ok(acc)
            }
            Expr::Pow { base, exp, position } => {
                let b = base.to_poly()?;
                let b = if *exp < 0 {
                    b.unit_inverse().ok_or(ParseError::NotInvertible { position: *position })?
                } else {
                    b
                };
                let n = exp.unsigned_abs();
                if b.len() == 1 {
                    // Single terms cannot grow in term count; bound exponents and size directly.
                    if b.max_abs_exponent().saturating_mul(n as i64) > MAX_RESULT_EXPONENT
                        || coeff_bits(&b).saturating_mul(n) > MAX_COEFF_BITS
                    {
                        return Err(ParseError::TooLarge);
                    }
                    return Ok(b.pow(n as u32));
                }
                let mut acc = MultiPoly::one();
                for _ in 0..n {
                    acc = guarded_mul(&acc, &b)?;
                }
                Ok(acc)
            }
        }
    }
}

fn coeff_bits(p: &MultiPoly) -> u64 {
    p.terms()
        .map(|(_, c)| c.numerator().bits() + c.denominator().bits())
        .max()
        .unwrap_or(0)
}

fn check_size(p: &MultiPoly) -> Result<(), ParseError> {
    if p.len() > MAX_TERMS {
        Err(ParseError::TooLarge)
    } else {
        Ok(())
    }
}

fn guarded_mul(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, ParseError> {
    if a.len().saturating_mul(b.len()) > MAX_MUL_WORK
        || a.max_abs_exponent() + b.max_abs_exponent() > MAX_RESULT_EXPONENT
        || coeff_bits(a) + coeff_bits(b) > MAX_COEFF_BITS
    {
        return Err(ParseError::TooLarge);
    }
    let p = a * b;
    check_size(&p)?;
    Ok(p)
}

/// Parses and expands `text`.
pub fn parse_expr(text: &str) -> Result<MultiPoly, ParseError> {
    parse(text)?.to_poly()
}

/// Parses `text` without expanding it.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text, pos: 0, depth: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.syntax(&["+", "-", "*", "^", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn syntax(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax { position: self.pos, expected: expected.to_vec() }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![];
        let first_negated = self.eat('-');
        terms.push((first_negated, self.term()?));
        loop {
            if self.eat('+') {
                terms.push((false, self.term()?));
            } else if self.eat('-') {
                terms.push((true, self.term()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 {
            terms.pop().expect("one term").1
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let position = self.pos;
        let negative = self.eat('-');
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.syntax(if negative { &["integer"] } else { &["-", "integer"] }));
        }
        let magnitude = match digits.parse::<i64>() {
            Ok(m) if m <= MAX_EXPONENT => m,
            _ => return Err(ParseError::ExponentOutOfRange { position }),
        };
        let exp = if negative { -magnitude } else { magnitude };
        Ok(Expr::Pow { base: Box::new(base), exp, position })
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(ParseError::TooDeep);
                }
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.syntax(&[")", "+", "-", "*", "^"]));
                }
                self.depth -= 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                self.digits();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    if self.digits().is_empty() {
                        return Err(self.syntax(&["integer"]));
                    }
                }
                let literal = &self.src[start..self.pos];
                if literal.len() > MAX_LITERAL_DIGITS {
                    return Err(ParseError::TooLarge);
                }
                literal
                    .parse::<ExactRational>()
                    .map(Expr::Num)
                    .map_err(|source| ParseError::Rational { position: start, source })
            }
            Some(c) if c.is_alphabetic() => {
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += self.peek().expect("peeked").len_utf8();
                }
                let name = &self.src[start..self.pos];
                Symbol::from_name(name)
                    .map(Expr::Var)
                    .ok_or_else(|| ParseError::UnknownSymbol { position: start, name: name.to_string() })
            }
            _ => Err(self.syntax(&["rational", "symbol", "("])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, var, Monomial};
    use crate::qkernel::cauchy_poly;
    use proptest::prelude::*;

    const X: Symbol = Symbol::X;
    const Y: Symbol = Symbol::Y;
    const Q: Symbol = Symbol::Q;

    #[test]
    fn cauchy_two_from_text() {
        assert_eq!(parse_expr("x^2 - (1+q)*x*y + q*y^2").unwrap(), cauchy_poly(2));
    }

    #[test]
    fn constant_literal() {
        assert_eq!(parse_expr("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_expr(" -6/8 ").unwrap(), rat(-3, 4));
    }

    #[test]
    fn open_paren_reports_offset_one() {
        match parse_expr("(") {
            Err(ParseError::Syntax { position, expected }) => {
                assert_eq!(position, 1);
                assert!(expected.contains(&"symbol"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_exponents() {
        assert_eq!(parse_expr("q^-2*x^-1").unwrap(), MultiPoly::var_pow(Q, -2).unwrap() * MultiPoly::var_pow(X, -1).unwrap());
        assert_eq!(parse_expr("(2*q)^-1").unwrap(), MultiPoly::var_pow(Q, -1).unwrap().scale(&ExactRational::new(1, 2)));
        assert_eq!(parse_expr("y^-1"), Err(ParseError::NotInvertible { position: 2 }));
        assert_eq!(parse_expr("(1+q)^-1"), Err(ParseError::NotInvertible { position: 6 }));
    }

    #[test]
    fn greek_aliases_and_offsets() {
        assert_eq!(parse_expr("λ*μ").unwrap(), var(Symbol::LAMBDA) * var(Symbol::MU));
        assert_eq!(
            parse_expr("λ + w"),
            Err(ParseError::UnknownSymbol { position: 5, name: "w".into() })
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("x +"), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_expr("x y"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_expr("1/0"), Err(ParseError::Rational { position: 0, .. })));
        assert!(matches!(parse_expr("1/"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_expr("x^999"), Err(ParseError::ExponentOutOfRange { position: 2 })));
        assert!(matches!(parse_expr("--x"), Err(ParseError::Syntax { position: 1, .. })));
        assert_eq!(parse_expr(&"(".repeat(100)), Err(ParseError::TooDeep));
        assert_eq!(parse_expr("((x^200)^200)"), Err(ParseError::TooLarge));
        assert_eq!(parse_expr("(x+y+z+a+b+s+r+c)^200"), Err(ParseError::TooLarge));
    }

    #[test]
    fn precedence() {
        // -x^2 is -(x^2); 2*x - 3*y + 1
        assert_eq!(parse_expr("-x^2").unwrap(), -var(X).pow(2));
        assert_eq!(parse_expr("2*x-3*y+1").unwrap(), &(&var(X).scale(&ExactRational::from(2)) - &var(Y).scale(&ExactRational::from(3))) + &MultiPoly::one());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        let syms = [Symbol::Q, Symbol::X, Symbol::Y, Symbol::A];
        let term = (-9i64..=9, 1i64..=5, prop::collection::vec(-3i32..=3, 4)).prop_map(move |(n, d, es)| {
            let mut m = Monomial::one();
            for (s, e) in syms.iter().zip(es) {
                let e = if s.laurent_allowed() { e } else { e.abs() };
                m = m.mul(&Monomial::var_pow(*s, e).expect("allowed"));
            }
            MultiPoly::term(ExactRational::new(n, d), m)
        });
        prop::collection::vec(term, 0..6).prop_map(|ts| ts.iter().fold(MultiPoly::zero(), |a, t| &a + t))
    }

    proptest! {
        #[test]
        fn render_round_trip(p in small_poly()) {
            prop_assert_eq!(parse_expr(&p.to_string()).unwrap(), p);
        }

        #[test]
        fn arbitrary_text_never_panics(s in "[-+*^()/ 0-9xyq]{0,40}") {
            let _ = parse_expr(&s);
        }
    }
}
