//! Text input: rationals, coefficient expressions and generator files.
//!
//! A generator is a sum of terms `coeff*word`, for example
//! `d^2*aaa - d*aab - d*abb - d*aba + 2*abc`. Coefficients are expressions
//! in integers, `d` (the loop parameter) and declared parameters with
//! `+ - * / ^` and parentheses. Words are lowercase letters, optionally
//! split into rows as `upper|lower`.
//!
//! Generator files hold one generator per line; `#` starts a comment,
//! `params a b1 c` declares parameters and `delta 7` binds the loop parameter.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::{Coeff, Specialization};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::partition::Partition;
use crate::poly::{Symbol, Q};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Bar,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Num(s.parse().expect("digits")), pos));
            }
            'δ' => {
                it.next();
                out.push((Tok::Ident("d".into()), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), pos));
            }
            _ => {
                let t = match c {
                    '+' => Tok::Plus,
                    '-' | '−' => Tok::Minus,
                    '*' | '·' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '|' => Tok::Bar,
                    _ => return Err(Error::parse(pos, format!("unexpected character '{c}'"))),
                };
                it.next();
                out.push((t, pos));
            }
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    params: &'a [String],
}

fn is_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_lowercase())
}

impl<'a> Parser<'a> {
    fn new(text: &str, params: &'a [String]) -> Result<Self> {
        Ok(Parser { toks: tokenize(text)?, i: 0, params })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect_end(&self) -> Result<()> {
        if *self.peek() != Tok::End {
            return Err(Error::parse(self.pos(), "unexpected trailing input"));
        }
        Ok(())
    }

    fn symbol(&self, name: &str, pos: usize) -> Result<Coeff> {
        if name == "d" {
            return Ok(Coeff::delta());
        }
        if self.params.iter().any(|p| p == name) {
            return Ok(Coeff::symbol(Symbol::intern(name)));
        }
        Err(Error::parse(pos, format!("unknown symbol '{name}'")))
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Coeff> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<Coeff> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    let pos = self.pos();
                    self.bump();
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| Error::parse(pos, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Coeff> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Coeff> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            let e = match self.bump() {
                Tok::Num(n) => u32::try_from(n).map_err(|_| Error::parse(pos, "exponent too large"))?,
                _ => return Err(Error::parse(pos, "expected a non-negative integer exponent")),
            };
            if e > 64 {
                return Err(Error::parse(pos, "exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Coeff> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(Coeff::from_q(Q::from_integer(n))),
            Tok::Ident(s) => self.symbol(&s, pos),
            Tok::LParen => {
                let e = self.expr()?;
                if self.bump() != Tok::RParen {
                    return Err(Error::parse(self.pos(), "expected ')'"));
                }
                Ok(e)
            }
            Tok::End => Err(Error::parse(pos, "unexpected end of input")),
            t => Err(Error::parse(pos, format!("unexpected token {t:?}"))),
        }
    }

    fn at_word(&self) -> bool {
        match self.peek() {
            Tok::Bar => true,
            Tok::Ident(s) if is_word(s) => matches!(self.peek_at(1), Tok::Plus | Tok::Minus | Tok::End | Tok::Bar),
            _ => false,
        }
    }

    fn word(&mut self) -> Result<Partition> {
        let pos = self.pos();
        let mut text = String::new();
        if let Tok::Ident(s) = self.peek().clone() {
            text.push_str(&s);
            self.bump();
        }
        if *self.peek() == Tok::Bar {
            self.bump();
            text.push('|');
            if let Tok::Ident(s) = self.peek().clone() {
                if !is_word(&s) {
                    return Err(Error::parse(self.pos(), format!("'{s}' is not a word")));
                }
                text.push_str(&s);
                self.bump();
            }
        }
        Partition::from_two_row(&text).map_err(|e| Error::parse(pos, e.to_string()))
    }

    // gterm := (factor ('*'|'/'))* word
    fn gterm(&mut self) -> Result<(Coeff, Partition, usize)> {
        let start = self.pos();
        let mut coeff = Coeff::one();
        let mut divide = false;
        loop {
            if self.at_word() {
                if divide {
                    return Err(Error::parse(self.pos(), "a word cannot be a divisor"));
                }
                let w = self.word()?;
                return Ok((coeff, w, start));
            }
            let pos = self.pos();
            let f = self.unary()?;
            coeff = if divide { coeff.div(&f).map_err(|_| Error::parse(pos, "division by zero"))? } else { coeff.mul(&f) };
            match self.bump() {
                Tok::Star => divide = false,
                Tok::Slash => divide = true,
                _ => return Err(Error::parse(pos, "expected '*' followed by a word")),
            }
        }
    }

    fn generator(&mut self) -> Result<Vec<(Coeff, Partition)>> {
        let mut out = Vec::new();
        let mut sign = match self.peek() {
            Tok::Minus => {
                self.bump();
                -1
            }
            Tok::Plus => {
                self.bump();
                1
            }
            _ => 1,
        };
        let mut shape: Option<(usize, usize)> = None;
        loop {
            let (c, w, pos) = self.gterm()?;
            let s = (w.upper(), w.lower());
            match shape {
                None => shape = Some(s),
                Some(t) if t != s => {
                    return Err(Error::parse(pos, format!("term {w} has shape {s:?} but earlier terms have {t:?}")));
                }
                _ => {}
            }
            out.push((if sign < 0 { c.neg() } else { c }, w));
            sign = match self.bump() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                Tok::End => return Ok(out),
                _ => return Err(Error::parse(self.toks[self.i.saturating_sub(1)].1, "expected '+', '-' or end of input")),
            };
        }
    }
}

/// Parses an exact rational such as `7`, `-3/2` or `1/ 4`.
pub fn parse_rational(text: &str) -> Result<Q> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, t.strip_prefix('+').unwrap_or(t).trim_start()),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return Err(Error::parse(0, format!("'{t}' is not a rational number p/q")));
    }
    let n: BigInt = n.parse().expect("digits");
    let d: BigInt = d.parse().expect("digits");
    if d.is_zero() {
        return Err(Error::parse(0, "zero denominator"));
    }
    let q = Q::new(n, d);
    Ok(if neg { -q } else { q })
}

/// Parses a coefficient expression in `d` and the given parameters.
pub fn parse_coeff(text: &str, params: &[String]) -> Result<Coeff> {
    let mut p = Parser::new(text, params)?;
    let c = p.expr()?;
    p.expect_end()?;
    Ok(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub parameters: Vec<String>,
    pub terms: Vec<(Coeff, Partition)>,
    pub delta_binding: Option<Q>,
}

impl GeneratorSpec {
    pub fn shape(&self) -> (usize, usize) {
        self.terms.first().map(|(_, p)| (p.upper(), p.lower())).unwrap_or((0, 0))
    }

    pub fn to_lincomb(&self) -> LinComb<Coeff> {
        let (u, l) = self.shape();
        LinComb::from_terms(u, l, self.terms.iter().map(|(c, p)| (p.clone(), c.clone()))).expect("parser checks shapes")
    }

    /// The generator with the bound loop parameter substituted, if any.
    pub fn specialized(&self) -> Result<LinComb<Coeff>> {
        let v = self.to_lincomb();
        match &self.delta_binding {
            Some(d) => {
                let s = Specialization::delta(d.clone());
                v.try_map_coeffs(|c| c.specialize(&s))
            }
            None => Ok(v),
        }
    }
}

/// Parses a single generator expression with the given declared parameters.
pub fn parse_expression(text: &str, params: &[String]) -> Result<LinComb<Coeff>> {
    let mut p = Parser::new(text, params)?;
    let terms = p.generator()?;
    let (u, l) = terms.first().map(|(_, w)| (w.upper(), w.lower())).unwrap_or((0, 0));
    LinComb::from_terms(u, l, terms.into_iter().map(|(c, w)| (w, c)))
}

/// Parses a generator file; every expression line becomes one generator.
pub fn parse_generators(text: &str) -> Result<Vec<GeneratorSpec>> {
    let mut params: Vec<String> = Vec::new();
    let mut delta = None;
    let mut bodies = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let body = line.split('#').next().unwrap_or("").trim_end();
        let trimmed = body.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let lead = start + (body.len() - trimmed.len());
        let (head, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        match head {
            "params" | "param" => {
                for name in rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                    let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !ok || name == "d" {
                        return Err(Error::parse(lead, format!("invalid parameter name '{name}'")));
                    }
                    params.push(name.to_string());
                }
            }
            "delta" => {
                let v = rest.trim().trim_start_matches('=').trim();
                delta = Some(parse_rational(v).map_err(|_| Error::parse(lead, format!("invalid delta value '{v}'")))?);
            }
            _ => bodies.push((lead, trimmed.to_string())),
        }
    }
    let mut out = Vec::new();
    for (lead, body) in bodies {
        let mut p = Parser::new(&body, &params).map_err(|e| shift(e, lead))?;
        let terms = p.generator().map_err(|e| shift(e, lead))?;
        out.push(GeneratorSpec { parameters: params.clone(), terms, delta_binding: delta.clone() });
    }
    Ok(out)
}

/// Parses text holding exactly one generator.
pub fn parse_generator(text: &str) -> Result<GeneratorSpec> {
    let mut all = parse_generators(text)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        0 => Err(Error::parse(text.len(), "no generator found")),
        n => Err(Error::parse(0, format!("expected one generator, found {n}"))),
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}
