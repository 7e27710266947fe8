//! Recursive-descent parser for expressions in `U`, `V` and complex scalars.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (('*'|'·') factor)*
//! factor  := atom ['^' signed-int] ["'"]
//! atom    := 'U' | 'V' | number ['i'] | 'i' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. A postfix `'` is the adjoint.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    U,
    V,
    Scalar(Complex64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Adjoint(Box<Expr>),
}

impl Expr {
    /// Value of a subtree free of `U` and `V`; `None` otherwise or when a
    /// zero scalar is raised to a negative power.
    pub fn constant_value(&self) -> Option<Complex64> {
        Some(match self {
            Expr::U | Expr::V => return None,
            Expr::Scalar(c) => *c,
            Expr::Neg(a) => -a.constant_value()?,
            Expr::Add(a, b) => a.constant_value()? + b.constant_value()?,
            Expr::Sub(a, b) => a.constant_value()? - b.constant_value()?,
            Expr::Mul(a, b) => a.constant_value()? * b.constant_value()?,
            Expr::Pow(a, k) => {
                let base = a.constant_value()?;
                if *k < 0 && base == Complex64::new(0.0, 0.0) {
                    return None;
                }
                base.powi(*k as i32)
            }
            Expr::Adjoint(a) => a.constant_value()?.conj(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    U,
    V,
    I,
    Num(f64),
    Plus,
    Minus,
    Star,
    Caret,
    Prime,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let ch = chars[pos];
        let tok = match ch {
            c if c.is_whitespace() => {
                pos += 1;
                continue;
            }
            'U' => Tok::U,
            'V' => Tok::V,
            'i' => Tok::I,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '\'' => Tok::Prime,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() || c == '.' => {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '.') {
                    pos += 1;
                }
                // optional exponent: e[+-]digits
                if pos < chars.len() && (chars[pos] == 'e' || chars[pos] == 'E') {
                    let mut look = pos + 1;
                    if look < chars.len() && (chars[look] == '+' || chars[look] == '-') {
                        look += 1;
                    }
                    if look < chars.len() && chars[look].is_ascii_digit() {
                        pos = look;
                        while pos < chars.len() && chars[pos].is_ascii_digit() {
                            pos += 1;
                        }
                    }
                }
                let text: String = chars[start..pos].iter().collect();
                let value = text
                    .parse::<f64>()
                    .map_err(|_| syntax(start, format!("malformed number '{text}'")))?;
                toks.push((start, Tok::Num(value)));
                continue;
            }
            other => return Err(syntax(pos, format!("unexpected character '{other}'"))),
        };
        toks.push((pos, tok));
        pos += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.cursor).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat(&Tok::Minus) {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat(&Tok::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        if self.eat(&Tok::Caret) {
            base = Expr::Pow(Box::new(base), self.signed_int()?);
        }
        if self.eat(&Tok::Prime) {
            base = Expr::Adjoint(Box::new(base));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let pos = self.position();
        match self.peek() {
            Some(&Tok::Num(v)) if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 => {
                self.cursor += 1;
                Ok(if negative { -(v as i64) } else { v as i64 })
            }
            _ => Err(syntax(pos, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.position();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(pos, "unexpected end of input"));
        };
        self.cursor += 1;
        match tok {
            Tok::U => Ok(Expr::U),
            Tok::V => Ok(Expr::V),
            Tok::I => Ok(Expr::Scalar(Complex64::new(0.0, 1.0))),
            Tok::Num(v) => {
                if self.eat(&Tok::I) {
                    Ok(Expr::Scalar(Complex64::new(0.0, v)))
                } else {
                    Ok(Expr::Scalar(Complex64::new(v, 0.0)))
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.position(), "expected ')'"));
                }
                Ok(inner)
            }
            other => Err(syntax(pos, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `src` into an expression tree.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::EmptyExpression);
    }
    let mut parser = Parser {
        toks,
        cursor: 0,
        end: src.chars().count(),
    };
    let expr = parser.expr()?;
    if parser.cursor < parser.toks.len() {
        return Err(syntax(parser.position(), "trailing input"));
    }
    Ok(expr)
}
