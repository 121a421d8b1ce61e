//! Text form of operators.
//!
//! The grammar is ordinary arithmetic over the atoms `z`, `d` (also `∂`)
//! and integer literals, with `+ - * / ^` and parentheses. Products are
//! operator products, so `d*z` is `z*d + 1`. Division and negative powers
//! are allowed only for order-zero operands. [`DiffOp`]'s `Display` output
//! parses back to the same operator.

use std::str::FromStr;

use num_bigint::BigInt;

use super::DiffOp;
use crate::arith::{RatFun, Scalar};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Z,
    D,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, Error> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(digits.parse().expect("ascii digits")));
            }
            _ => {
                chars.next();
                out.push(match c {
                    'z' => Tok::Z,
                    'd' | '∂' => Tok::D,
                    '+' => Tok::Plus,
                    '-' | '−' => Tok::Minus,
                    '*' | '·' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<DiffOp, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffOp, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.unary()?;
            } else if self.eat(&Tok::Slash) {
                let den = self.unary()?;
                acc = &acc * &invert(&den)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<DiffOp, Error> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.unary()?);
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<DiffOp, Error> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let neg = self.eat(&Tok::Minus);
        let e = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                usize::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?
            }
            _ => return Err(Error::Parse("expected an integer exponent after '^'".into())),
        };
        let b = if neg { invert(&base)? } else { base };
        Ok(b.pow(e))
    }

    fn atom(&mut self) -> Result<DiffOp, Error> {
        let t = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match t {
            Tok::Num(n) => Ok(DiffOp::constant(Scalar::from_bigint(n))),
            Tok::Z => Ok(DiffOp::z()),
            Tok::D => Ok(DiffOp::d()),
            Tok::LParen => {
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn invert(op: &DiffOp) -> Result<DiffOp, Error> {
    match op.order() {
        Some(0) => Ok(DiffOp::from_ratfun(RatFun::one() / op.coeff(0))),
        None => Err(Error::Parse("division by zero".into())),
        Some(_) => Err(Error::Parse(format!("cannot divide by the operator {op}"))),
    }
}

impl FromStr for DiffOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty operator".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
        }
        Ok(e)
    }
}
