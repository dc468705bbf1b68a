//! Text syntax:
//!
//! ```text
//! set      := term ('|' term)* | '{}'
//! term     := ap ('&' interval)?
//! ap       := INT | INT '+' INT 'Z' | INT 'Z' | 'Z' | '-' '(' ap ')'
//! interval := ('(' | '[') bound ',' bound (')' | ']')
//! bound    := INT | '-inf' | 'inf'
//! ```
//!
//! A bare `Z` is `1Z`, and `{}` is the empty set.

use super::{PresburgerError, PresburgerSet, Span, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Z,
    Plus,
    Minus,
    Bar,
    Amp,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Inf,
    NegInf,
    Empty,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("'{v}'"),
        Tok::Z => "'Z'".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Bar => "'|'".into(),
        Tok::Amp => "'&'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBrack => "'['".into(),
        Tok::RBrack => "']'".into(),
        Tok::Comma => "','".into(),
        Tok::Inf => "'inf'".into(),
        Tok::NegInf => "'-inf'".into(),
        Tok::Empty => "'{}'".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, PresburgerError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let digits_from = |mut j: usize| {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            j
        };
        let tok = match c {
            b'0'..=b'9' => {
                i = digits_from(i);
                Tok::Int(src[start..i].parse().map_err(|_| PresburgerError::Overflow { pos: start })?)
            }
            b'-' if bytes.get(i + 1).is_some_and(u8::is_ascii_digit) => {
                i = digits_from(i + 1);
                Tok::Int(src[start..i].parse().map_err(|_| PresburgerError::Overflow { pos: start })?)
            }
            b'-' if src[i + 1..].starts_with("inf") => {
                i += 4;
                Tok::NegInf
            }
            _ if src[i..].starts_with("inf") => {
                i += 3;
                Tok::Inf
            }
            _ if src[i..].starts_with("{}") => {
                i += 2;
                Tok::Empty
            }
            _ => {
                i += 1;
                match c {
                    b'Z' => Tok::Z,
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'|' => Tok::Bar,
                    b'&' => Tok::Amp,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    b'[' => Tok::LBrack,
                    b']' => Tok::RBrack,
                    b',' => Tok::Comma,
                    _ => {
                        let ch = src[start..].chars().next().unwrap_or('?');
                        return Err(PresburgerError::Syntax { pos: start, msg: format!("unexpected character '{ch}'") });
                    }
                }
            }
        };
        out.push((tok, Span { start, end: i }));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |t| t.1.start)
    }

    fn unexpected(&self, wanted: &str) -> PresburgerError {
        let msg = match self.peek() {
            Some(t) => format!("expected {wanted}, found {}", describe(t)),
            None => format!("expected {wanted}, found end of input"),
        };
        PresburgerError::Syntax { pos: self.pos(), msg }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), PresburgerError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(&describe(&t)))
        }
    }

    fn modulus(&self, v: i64, pos: usize) -> Result<u64, PresburgerError> {
        if v == 0 {
            Err(PresburgerError::ZeroModulus { pos })
        } else {
            Ok(v.unsigned_abs())
        }
    }

    /// Returns `(a, b)`.
    fn ap(&mut self) -> Result<(i64, u64), PresburgerError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Z) => {
                self.at += 1;
                Ok((0, 1))
            }
            Some(Tok::Minus) => {
                self.at += 1;
                self.expect(Tok::LParen)?;
                let (a, b) = self.ap()?;
                self.expect(Tok::RParen)?;
                Ok((a.checked_neg().ok_or(PresburgerError::Overflow { pos })?, b))
            }
            Some(Tok::Int(v)) => {
                self.at += 1;
                if self.eat(&Tok::Z) {
                    return Ok((0, self.modulus(v, pos)?));
                }
                if self.eat(&Tok::Plus) {
                    let mpos = self.pos();
                    let Some(Tok::Int(m)) = self.peek().cloned() else {
                        return Err(self.unexpected("an integer modulus"));
                    };
                    self.at += 1;
                    self.expect(Tok::Z)?;
                    return Ok((v, self.modulus(m, mpos)?));
                }
                Ok((v, 0))
            }
            _ => Err(self.unexpected("a progression")),
        }
    }

    fn bound(&mut self) -> Result<Option<i64>, PresburgerError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(Some(v))
            }
            Some(Tok::Inf) | Some(Tok::NegInf) => {
                self.at += 1;
                Ok(None)
            }
            _ => Err(self.unexpected("a bound")),
        }
    }

    /// Half-open `[lo, hi)`.
    fn interval(&mut self) -> Result<(Option<i64>, Option<i64>), PresburgerError> {
        let pos = self.pos();
        let open_lo = if self.eat(&Tok::LParen) {
            true
        } else if self.eat(&Tok::LBrack) {
            false
        } else {
            return Err(self.unexpected("'(' or '['"));
        };
        let lo_tok = self.peek().cloned();
        let lo = self.bound()?;
        self.expect(Tok::Comma)?;
        let hi_tok = self.peek().cloned();
        let hi = self.bound()?;
        let open_hi = if self.eat(&Tok::RParen) {
            true
        } else if self.eat(&Tok::RBrack) {
            false
        } else {
            return Err(self.unexpected("')' or ']'"));
        };
        if lo_tok == Some(Tok::Inf) || hi_tok == Some(Tok::NegInf) {
            return Err(PresburgerError::EmptyInterval { pos });
        }
        let overflow = PresburgerError::Overflow { pos };
        let lo = match lo {
            Some(v) if open_lo => Some(v.checked_add(1).ok_or(overflow.clone())?),
            other => other,
        };
        let hi = match hi {
            Some(v) if !open_hi => Some(v.checked_add(1).ok_or(overflow)?),
            other => other,
        };
        if let (Some(l), Some(h)) = (lo, hi) {
            if l >= h {
                return Err(PresburgerError::EmptyInterval { pos });
            }
        }
        Ok((lo, hi))
    }

    fn term(&mut self) -> Result<Term, PresburgerError> {
        let start = self.pos();
        let (a, b) = self.ap()?;
        let (lo, hi) = if self.eat(&Tok::Amp) { self.interval()? } else { (None, None) };
        let end = if self.at == 0 { start } else { self.toks[self.at - 1].1.end };
        let mut t = Term::progression(a, b, lo, hi);
        t.span = Some(Span { start, end });
        Ok(t)
    }
}

pub fn parse(text: &str) -> Result<PresburgerSet, PresburgerError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, len: text.len() };
    if p.eat(&Tok::Empty) {
        if p.peek().is_some() {
            return Err(p.unexpected("end of input"));
        }
        return Ok(PresburgerSet::empty());
    }
    let mut terms = vec![p.term()?];
    while p.eat(&Tok::Bar) {
        terms.push(p.term()?);
    }
    if p.peek().is_some() {
        return Err(p.unexpected("'|', '&' or end of input"));
    }
    Ok(PresburgerSet { terms })
}
