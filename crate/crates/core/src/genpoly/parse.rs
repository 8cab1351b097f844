use num_traits::Signed;

use super::{GPExpr, RESERVED};
use crate::error::{Error, Result};
use crate::rat::{self, Q};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let t = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            _ if c.is_ascii_digit() => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < b.len() && (b[i] == b'/' || b[i] == b'.') && b[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let q = rat::parse_rational(&s[start..i]).map_err(|e| Error::Syntax { pos: start, msg: e.to_string() })?;
                out.push((start, Tok::Num(q)));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            _ => return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{c}`") }),
        };
        out.push((start, t));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.at(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<GPExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = GPExpr::add(lhs, self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = GPExpr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<GPExpr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            lhs = GPExpr::mul(lhs, self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<GPExpr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            if let Some(Tok::Num(q)) = self.peek().cloned() {
                self.pos += 1;
                return Ok(GPExpr::Rat(-q));
            }
            return Ok(GPExpr::neg(self.factor()?));
        }
        self.atom()
    }

    fn signed_number(&mut self) -> Result<Q> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(if neg { -q } else { q })
            }
            _ => self.err("expected a rational number"),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if !RESERVED.contains(&s.as_str()) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a variable name"),
        }
    }

    fn atom(&mut self) -> Result<GPExpr> {
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(GPExpr::Rat(q))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() != Some(&Tok::LParen) {
                    if RESERVED.contains(&name.as_str()) {
                        return self.err(format!("`{name}` needs an argument list"));
                    }
                    return Ok(GPExpr::Var(name));
                }
                self.pos += 1;
                let e = self.call(&name)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(_) => self.err("expected an expression"),
            None => self.err("unexpected end of input"),
        }
    }

    fn call(&mut self, name: &str) -> Result<GPExpr> {
        let unary = |c: fn(Box<GPExpr>) -> GPExpr, p: &mut Parser| -> Result<GPExpr> { Ok(c(Box::new(p.expr()?))) };
        match name {
            "floor" => unary(GPExpr::Floor, self),
            "cfloor" => unary(GPExpr::CFloor, self),
            "frac" => unary(GPExpr::Frac, self),
            "nint" => unary(GPExpr::Nint, self),
            "dist" => unary(GPExpr::Dist, self),
            "re" => unary(GPExpr::Re, self),
            "im" => unary(GPExpr::Im, self),
            "tr" => Ok(GPExpr::Trace(self.ident()?)),
            "sqrt" => {
                let q = self.signed_number()?;
                if q.is_negative() {
                    return self.err("sqrt of a negative rational");
                }
                Ok(GPExpr::Sqrt(q))
            }
            "c" => {
                let a = self.signed_number()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.signed_number()?;
                Ok(GPExpr::Complex(a, b))
            }
            "emb" => {
                let var = self.ident()?;
                self.expect(Tok::Comma, "`,`")?;
                let k = match self.peek().cloned() {
                    Some(Tok::Num(q)) if rat::is_integer(&q) && !q.is_negative() => {
                        self.pos += 1;
                        num_traits::ToPrimitive::to_usize(&q.to_integer()).unwrap_or(usize::MAX)
                    }
                    _ => return self.err("expected an embedding index"),
                };
                let mut coeffs = None;
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    self.expect(Tok::LBracket, "`[`")?;
                    let mut c = vec![self.signed_number()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        c.push(self.signed_number()?);
                    }
                    self.expect(Tok::RBracket, "`]`")?;
                    coeffs = Some(c);
                }
                Ok(GPExpr::Embed { var, k, coeffs })
            }
            other => Err(Error::UnknownFunction(other.to_string())),
        }
    }
}

/// Parses expression text.
pub fn parse(text: &str) -> Result<GPExpr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}
