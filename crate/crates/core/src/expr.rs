//! Arithmetic expressions over rational literals, lowered to exact dot
//! streams.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | 'neg(' expr ')' | 'min(' expr ',' expr ')'
//!         | 'max(' expr ',' expr ')' | '(' expr ')'
//! ```
//!
//! Rational literals are unsigned `p/q`, integer, or exact decimal forms;
//! subtraction lowers to addition of a negation.

use num_rational::BigRational;

use crate::arith::{
    add_transducer, eval, max_map, min_map, mul_transducer, neg_map, pair_point_with_fuel,
    DyadicAnswer,
};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::parse_rational;
use crate::spaces::lean::{from_rational, SigmaR};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Lit(BigRational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            got => Err(Error::Parse(format!(
                "expected {:?} at byte {}, found {:?}",
                c as char,
                self.pos,
                got.map(|b| b as char)
            ))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.bump();
                    let rhs = Expr::Neg(Box::new(self.term()?));
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() => {
                let word = self.word();
                match word.as_str() {
                    "neg" => {
                        self.expect(b'(')?;
                        let inner = self.expr()?;
                        self.expect(b')')?;
                        Ok(Expr::Neg(Box::new(inner)))
                    }
                    "min" | "max" => {
                        self.expect(b'(')?;
                        let a = self.expr()?;
                        self.expect(b',')?;
                        let b = self.expr()?;
                        self.expect(b')')?;
                        Ok(if word == "min" {
                            Expr::Min(Box::new(a), Box::new(b))
                        } else {
                            Expr::Max(Box::new(a), Box::new(b))
                        })
                    }
                    other => Err(Error::Parse(format!("unknown function {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!(
                "expected a factor at byte {}, found {:?}",
                self.pos,
                other.map(|b| b as char)
            ))),
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn rational(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit()
                || self.src[self.pos] == b'.'
                || self.src[self.pos] == b'/')
        {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos])
            .map_err(|_| Error::Parse("non-ascii literal".into()))?;
        Ok(Expr::Lit(parse_rational(text)?))
    }
}

/// Parses an expression; trailing garbage is rejected.
pub fn parse_expr(input: &str) -> Result<Expr> {
    let mut p = Parser::new(input);
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(Error::Parse(format!(
            "unexpected {:?} at byte {}",
            c as char, p.pos
        )));
    }
    Ok(e)
}

/// Lowers an expression to a `sigma_R` point. `fuel` bounds the pulls each
/// stream stage may spend per emitted dot.
pub fn expr_point(e: &Expr, fuel: u64) -> Point<SigmaR> {
    match e {
        Expr::Lit(q) => from_rational(q),
        Expr::Neg(inner) => neg_map().apply_with_fuel(expr_point(inner, fuel), fuel),
        Expr::Add(a, b) => add_transducer().drive_with_fuel(
            pair_point_with_fuel(expr_point(a, fuel), expr_point(b, fuel), fuel),
            fuel,
        ),
        Expr::Mul(a, b) => mul_transducer().drive_with_fuel(
            pair_point_with_fuel(expr_point(a, fuel), expr_point(b, fuel), fuel),
            fuel,
        ),
        Expr::Min(a, b) => min_map().apply_with_fuel(
            pair_point_with_fuel(expr_point(a, fuel), expr_point(b, fuel), fuel),
            fuel,
        ),
        Expr::Max(a, b) => max_map().apply_with_fuel(
            pair_point_with_fuel(expr_point(a, fuel), expr_point(b, fuel), fuel),
            fuel,
        ),
    }
}

/// Evaluates an expression to a dot of width at most `2^(1-precision)`.
pub fn eval_expr(e: &Expr, precision: u32, fuel: u64) -> Result<DyadicAnswer> {
    let mut p = expr_point(e, fuel);
    eval(&mut p, precision, fuel)
}
