//! A small expression language for rational functions of `q` over the K-ring.
//!
//! ```text
//! expr    := ["+" | "-"] term (("+" | "-") term)*
//! term    := factor (("*" | "/") factor)*
//! factor  := ["-"] atom ["^" ["-"] integer]
//! atom    := integer | "q" | "P" | "x" | "lambda" | "eps" | name | "(" expr ")"
//! ```
//!
//! `λ`, `ε`, `·` and `−` are accepted for `lambda`, `eps`, `*` and `-`.

use num_bigint::BigInt;

use crate::algebra_core::{EqScalar, KClass, Marker, Rational};
use crate::error::{Error, Result};
use crate::qcalc::{LaurentQ, QRat};

/// Parsing context: target rank, nilpotency order of `eps`, declared parameters.
#[derive(Clone, Debug)]
pub struct ExprContext {
    pub n: usize,
    pub eps_order: u32,
    pub params: Vec<String>,
}

impl ExprContext {
    pub fn new(n: usize) -> Self {
        ExprContext {
            n,
            eps_order: 1,
            params: vec!["lambda".into()],
        }
    }

    pub fn with_eps_order(mut self, order: u32) -> Self {
        self.eps_order = order;
        self
    }

    pub fn with_params(mut self, params: impl IntoIterator<Item = String>) -> Self {
        for p in params {
            if !self.params.contains(&p) {
                self.params.push(p);
            }
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{00b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Int(s.parse().expect("digits"))));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Ident(s)));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Int(BigInt),
    Var(String, usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, i64, usize),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = if self.eat(&Tok::Minus) {
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.peek() == Some(&Tok::Slash) {
                let pos = self.pos();
                self.at += 1;
                lhs = Ast::Div(Box::new(lhs), Box::new(self.factor()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        if self.eat(&Tok::Minus) {
            return Ok(Ast::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            let pos = self.pos();
            self.at += 1;
            let neg = self.eat(&Tok::Minus);
            let e = match self.peek() {
                Some(Tok::Int(v)) => {
                    let v: i64 = match v.try_into() {
                        Ok(v) => v,
                        Err(_) => return self.err("exponent out of range"),
                    };
                    self.at += 1;
                    v
                }
                _ => return self.err("expected an integer exponent"),
            };
            return Ok(Ast::Pow(Box::new(base), if neg { -e } else { e }, pos));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(Ast::Int(v))
            }
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok(Ast::Var(s, pos))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn eval(ast: &Ast, ctx: &ExprContext) -> Result<QRat> {
    let n = ctx.n;
    Ok(match ast {
        Ast::Int(v) => QRat::constant(KClass::one(n).scale_rational(&Rational::from_integer(v.clone()))),
        Ast::Var(name, pos) => match name.as_str() {
            "q" => QRat::q_pow(n, 1),
            "P" => QRat::constant(KClass::hopf(n)),
            "x" => QRat::constant(KClass::x_pow(n, 1)),
            "eps" | "\u{03b5}" => QRat::constant(KClass::scalar(
                n,
                EqScalar::marker(&Marker::new("eps", ctx.eps_order)),
            )),
            "lambda" | "\u{03bb}" => QRat::constant(KClass::scalar(n, EqScalar::param("lambda"))),
            other if ctx.params.iter().any(|p| p == other) => {
                QRat::constant(KClass::scalar(n, EqScalar::param(other)))
            }
            other => {
                return Err(Error::Parse {
                    position: *pos,
                    message: format!("unknown symbol '{other}'"),
                })
            }
        },
        Ast::Neg(a) => -&eval(a, ctx)?,
        Ast::Add(a, b) => &eval(a, ctx)? + &eval(b, ctx)?,
        Ast::Sub(a, b) => &eval(a, ctx)? - &eval(b, ctx)?,
        Ast::Mul(a, b) => &eval(a, ctx)? * &eval(b, ctx)?,
        Ast::Div(a, b, pos) => &eval(a, ctx)? * &eval_inverse(b, ctx, *pos)?,
        Ast::Pow(a, e, pos) => {
            if *e >= 0 {
                eval(a, ctx)?.pow_u(*e as u32)
            } else {
                eval_inverse(a, ctx, *pos)?.pow_u(e.unsigned_abs() as u32)
            }
        }
    })
}

/// Inverts structurally through products and powers, so that factored denominators stay factored.
fn eval_inverse(ast: &Ast, ctx: &ExprContext, pos: usize) -> Result<QRat> {
    let located = |e: Error| match e {
        Error::NotInvertible(s) => Error::Parse {
            position: pos,
            message: format!("cannot invert {s}; enter denominators in factored form"),
        },
        Error::DivisionByZero => Error::Parse {
            position: pos,
            message: "division by zero".into(),
        },
        other => other,
    };
    match ast {
        Ast::Neg(a) => Ok(-&eval_inverse(a, ctx, pos)?),
        Ast::Mul(a, b) => Ok(&eval_inverse(a, ctx, pos)? * &eval_inverse(b, ctx, pos)?),
        Ast::Div(a, b, _) => Ok(&eval(b, ctx)? * &eval_inverse(a, ctx, pos)?),
        Ast::Pow(a, e, p) => {
            if *e >= 0 {
                Ok(eval_inverse(a, ctx, *p)?.pow_u(*e as u32))
            } else {
                Ok(eval(a, ctx)?.pow_u(e.unsigned_abs() as u32))
            }
        }
        other => eval(other, ctx)?.try_inverse().map_err(located),
    }
}

/// Parses and evaluates an expression to a rational function of `q`.
pub fn parse_qrat(src: &str, ctx: &ExprContext) -> Result<QRat> {
    if ctx.n == 0 {
        return Err(Error::InvalidInput("rank n must be at least 1".into()));
    }
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let ast = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    eval(&ast, ctx)
}

/// Parses a Laurent polynomial in `q`.
pub fn parse_laurent(src: &str, ctx: &ExprContext) -> Result<LaurentQ> {
    let f = parse_qrat(src, ctx)?.reduce();
    f.as_laurent().cloned().ok_or_else(|| Error::Parse {
        position: 0,
        message: format!("expected a Laurent polynomial in q, got {}", f.render()),
    })
}

/// Parses a K-class (no `q`).
pub fn parse_kclass(src: &str, ctx: &ExprContext) -> Result<KClass> {
    let f = parse_laurent(src, ctx)?;
    if f.is_zero() {
        return Ok(KClass::zero(ctx.n));
    }
    f.as_constant().ok_or_else(|| Error::Parse {
        position: 0,
        message: format!("expected a class without q, got {}", f.render()),
    })
}
