//! Text syntax for noncommutative polynomials and σ-expressions.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (['*' | '/'] factor)*        juxtaposition multiplies
//! factor := atom ('^' int | '\'')*
//! atom   := int | x<k> | '(' expr ')' | bar(expr)
//!         | tr(expr) | s2(expr) | s3(expr) | st(int, expr)
//! ```
//!
//! Division is by scalars only. `tr` is linear; `s2`, `s3`, `st` take a
//! scalar multiple of a single word.

use std::fmt::{self, Display};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ncpoly::NcPoly;
use crate::sigma::{tr, SigmaMonomial, SigmaPoly};
use crate::word::{Letter, Word};

/// A parsed expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr<F: Field> {
    Nc(NcPoly<F>),
    Sigma(SigmaPoly<F>),
}

impl<F: Field> Display for Expr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Nc(p) => write!(f, "{p}"),
            Expr::Sigma(s) => write!(f, "{s}"),
        }
    }
}

/// Parses text into an NC polynomial or, if it contains σ-symbols, a σ-polynomial.
/// A bare scalar is read as a constant σ-polynomial.
pub fn parse_expr<F: Field>(text: &str) -> Result<Expr<F>> {
    let (v, _) = Parser::new(text).run()?;
    Ok(match v {
        Val::Scalar(c) => Expr::Sigma(SigmaPoly::constant(c)),
        Val::Nc(p) => Expr::Nc(p),
        Val::Sigma(s) => Expr::Sigma(s),
    })
}

/// Parses text that must denote an NC polynomial.
pub fn parse_nc<F: Field>(text: &str) -> Result<NcPoly<F>> {
    match Parser::new(text).run()? {
        (Val::Scalar(c), _) => Ok(NcPoly::monomial(Word::unit(), c)),
        (Val::Nc(p), _) => Ok(p),
        (Val::Sigma(_), pos) => {
            Err(Error::Parse { pos, msg: "expected a noncommutative polynomial, found σ-symbols".into() })
        }
    }
}

/// Parses text that must denote a σ-polynomial.
pub fn parse_sigma<F: Field>(text: &str) -> Result<SigmaPoly<F>> {
    match Parser::new(text).run()? {
        (Val::Scalar(c), _) => Ok(SigmaPoly::constant(c)),
        (Val::Sigma(s), _) => Ok(s),
        (Val::Nc(_), pos) => Err(Error::Parse { pos, msg: "expected a σ-expression, found a bare polynomial".into() }),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Letter(Letter),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Quote,
    End,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(s[start..i].to_string())
        } else if c == b'x' && i + 1 < b.len() && b[i + 1].is_ascii_digit() {
            i += 1;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let idx: usize = s[start + 1..i].parse().map_err(|_| perr(start, "letter index too large"))?;
            if !(1..=127).contains(&idx) {
                return Err(perr(start, "letter index outside 1..=127"));
            }
            Tok::Letter(Letter::plain(idx))
        } else if c.is_ascii_alphabetic() {
            while i < b.len() && b[i].is_ascii_alphanumeric() {
                i += 1;
            }
            Tok::Ident(s[start..i].to_string())
        } else {
            i += 1;
            match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                b'\'' => Tok::Quote,
                _ => {
                    return Err(perr(
                        start,
                        &format!("unexpected character `{}`", s[start..].chars().next().unwrap_or('?')),
                    ))
                }
            }
        };
        out.push((start, tok));
    }
    out.push((s.len(), Tok::End));
    Ok(out)
}

fn perr(pos: usize, msg: &str) -> Error {
    Error::Parse { pos, msg: msg.to_string() }
}

#[derive(Clone, Debug)]
enum Val<F: Field> {
    Scalar(F),
    Nc(NcPoly<F>),
    Sigma(SigmaPoly<F>),
}

impl<F: Field> Val<F> {
    fn kind(&self) -> &'static str {
        match self {
            Val::Scalar(_) => "scalar",
            Val::Nc(_) => "polynomial",
            Val::Sigma(_) => "σ-expression",
        }
    }
}

fn add<F: Field>(a: Val<F>, b: Val<F>, pos: usize) -> Result<Val<F>> {
    Ok(match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(x + y),
        (Val::Nc(p), Val::Nc(q)) => Val::Nc(&p + &q),
        (Val::Sigma(p), Val::Sigma(q)) => Val::Sigma(&p + &q),
        (Val::Nc(p), Val::Scalar(c)) | (Val::Scalar(c), Val::Nc(p)) => Val::Nc(&p + &NcPoly::monomial(Word::unit(), c)),
        (Val::Sigma(p), Val::Scalar(c)) | (Val::Scalar(c), Val::Sigma(p)) => Val::Sigma(&p + &SigmaPoly::constant(c)),
        (a, b) => return Err(perr(pos, &format!("cannot add a {} and a {}", a.kind(), b.kind()))),
    })
}

fn mul<F: Field>(a: Val<F>, b: Val<F>, pos: usize) -> Result<Val<F>> {
    Ok(match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(x * y),
        (Val::Nc(p), Val::Nc(q)) => Val::Nc(&p * &q),
        (Val::Sigma(p), Val::Sigma(q)) => Val::Sigma(&p * &q),
        (Val::Nc(p), Val::Scalar(c)) | (Val::Scalar(c), Val::Nc(p)) => Val::Nc(p.scale(&c)),
        (Val::Sigma(p), Val::Scalar(c)) | (Val::Scalar(c), Val::Sigma(p)) => Val::Sigma(p.scale(&c)),
        (a, b) => return Err(perr(pos, &format!("cannot multiply a {} and a {}", a.kind(), b.kind()))),
    })
}

fn neg<F: Field>(a: Val<F>) -> Val<F> {
    match a {
        Val::Scalar(x) => Val::Scalar(-x),
        Val::Nc(p) => Val::Nc(-&p),
        Val::Sigma(s) => Val::Sigma(-&s),
    }
}

struct Parser<'a, F: Field> {
    text: &'a str,
    toks: Vec<(usize, Tok)>,
    at: usize,
    _f: std::marker::PhantomData<F>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn new(text: &'a str) -> Self {
        Parser { text, toks: Vec::new(), at: 0, _f: std::marker::PhantomData }
    }

    fn run(mut self) -> Result<(Val<F>, usize)> {
        self.toks = tokenize(self.text)?;
        if self.peek() == &Tok::End {
            return Err(perr(0, "empty expression"));
        }
        let v = self.expr()?;
        if self.peek() != &Tok::End {
            return Err(perr(self.pos(), "unexpected trailing input"));
        }
        Ok((v, 0))
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == &want {
            self.bump();
            Ok(())
        } else {
            Err(perr(self.pos(), &format!("expected {what}")))
        }
    }

    fn int(&mut self, what: &str) -> Result<usize> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(s) => s.parse().map_err(|_| perr(pos, "integer too large")),
            _ => Err(perr(pos, &format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Val<F>> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                neg(self.term()?)
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = add(acc, t, pos)?;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = add(acc, neg(t), pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Letter(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<Val<F>> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.factor()?;
                    acc = mul(acc, f, pos)?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.pos();
                    let inv = match self.factor()? {
                        Val::Scalar(c) => c.inv().ok_or_else(|| perr(at, "division by zero"))?,
                        _ => return Err(perr(at, "division is by scalars only")),
                    };
                    acc = mul(acc, Val::Scalar(inv), pos)?;
                }
                _ if self.starts_atom() => {
                    let f = self.factor()?;
                    acc = mul(acc, f, pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Val<F>> {
        let mut v = self.atom()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Caret => {
                    self.bump();
                    let k = self.int("an exponent")?;
                    v = match v {
                        Val::Scalar(c) => Val::Scalar(c.pow(k as u64)),
                        Val::Nc(p) => Val::Nc(p.pow(k)),
                        Val::Sigma(s) => Val::Sigma(s.pow(k)),
                    };
                }
                Tok::Quote => {
                    self.bump();
                    v = match v {
                        Val::Nc(p) => Val::Nc(p.transpose()),
                        Val::Scalar(c) => Val::Scalar(c),
                        Val::Sigma(_) => return Err(perr(pos, "transpose applies to polynomials only")),
                    };
                }
                _ => return Ok(v),
            }
        }
    }

    fn atom(&mut self) -> Result<Val<F>> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(s) => s.parse::<F>().map(Val::Scalar).map_err(|_| perr(pos, "scalar out of range")),
            Tok::Letter(l) => Ok(Val::Nc(NcPoly::letter(l))),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            Tok::Ident(name) => self.call(&name, pos),
            Tok::End => Err(perr(pos, "unexpected end of input")),
            _ => Err(perr(pos, "expected a letter, number, `(` or function")),
        }
    }

    fn call(&mut self, name: &str, pos: usize) -> Result<Val<F>> {
        let t = match name {
            "bar" | "tr" => 0,
            "s2" => 2,
            "s3" => 3,
            "st" => {
                self.expect(Tok::LParen, "`(`")?;
                let t = self.int("the σ index")?;
                self.expect(Tok::Comma, "`,`")?;
                return self.sigma_body(t, pos);
            }
            _ => return Err(perr(pos, &format!("unknown function `{name}`"))),
        };
        self.expect(Tok::LParen, "`(`")?;
        if t > 0 {
            return self.sigma_body(t, pos);
        }
        let at = self.pos();
        let arg = self.nc_arg()?;
        self.expect(Tok::RParen, "`)`")?;
        let p = arg.ok_or_else(|| perr(at, &format!("{name} expects a polynomial")))?;
        Ok(if name == "bar" { Val::Nc(p.bar()) } else { Val::Sigma(tr(&p)) })
    }

    /// The argument of `st(t, ·)` after the comma, then the closing paren.
    fn sigma_body(&mut self, t: usize, pos: usize) -> Result<Val<F>> {
        let at = self.pos();
        let arg = self.nc_arg()?.ok_or_else(|| perr(at, "σ expects a polynomial"))?;
        self.expect(Tok::RParen, "`)`")?;
        if t == 0 {
            return Ok(Val::Scalar(F::one()));
        }
        let (w, c) = match arg.terms().next() {
            Some((w, c)) if arg.len() == 1 && !w.is_unit() => (w.clone(), c.clone()),
            _ => return Err(perr(at, &format!("σ_{t} needs a multiple of a single word, got `{arg}`"))),
        };
        let m = SigmaMonomial::symbol(t as u32, &w).map_err(|e| perr(pos, &e.to_string()))?;
        Ok(Val::Sigma(SigmaPoly::monomial(m, c.pow(t as u64))))
    }

    /// An NC argument; `None` when the expression is a σ-expression.
    fn nc_arg(&mut self) -> Result<Option<NcPoly<F>>> {
        Ok(match self.expr()? {
            Val::Nc(p) => Some(p),
            Val::Scalar(c) => Some(NcPoly::monomial(Word::unit(), c)),
            Val::Sigma(_) => None,
        })
    }
}
