//! Text form of presentations:
//!
//! ```text
//! gens: a, b;
//! rel: a*b - 1;
//! rel: (a - 3/2)^2;
//! ```
//!
//! Statements end with `;`. Expressions use `+ - * ^`, parentheses,
//! generator names and rational literals `p` or `p/q`; `^` takes a
//! nonnegative integer exponent and is expanded on parsing. `#` starts a
//! comment running to the end of the line.

use num_bigint::BigInt;
use thiserror::Error;

use super::groebner::Presentation;
use super::poly::NcPoly;
use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("presentation syntax error at byte {pos}: {message}")]
pub struct DslError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, DslError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut byte = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = byte;
        if c == '#' {
            while i < bytes.len() && bytes[i] != '\n' {
                byte += bytes[i].len_utf8();
                i += 1;
            }
            continue;
        }
        if c.is_whitespace() {
            byte += c.len_utf8();
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                s.push(bytes[i]);
                i += 1;
                byte += 1;
            }
            out.push((start, Tok::Int(s.parse().expect("digits"))));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                s.push(bytes[i]);
                byte += bytes[i].len_utf8();
                i += 1;
            }
            out.push((start, Tok::Ident(s)));
            continue;
        }
        if "+-*^()/;:,".contains(c) {
            out.push((start, Tok::Sym(c)));
            byte += 1;
            i += 1;
            continue;
        }
        return Err(DslError {
            pos: start,
            message: format!("unexpected character {c:?}"),
        });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    names: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, DslError> {
        Err(DslError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NcPoly, DslError> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly, DslError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<NcPoly, DslError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.at += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected an integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<NcPoly, DslError> {
        match self.peek().cloned() {
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.at += 1;
                Ok(-&self.atom()?)
            }
            Some(Tok::Int(n)) => {
                self.at += 1;
                let d = if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if d != BigInt::from(0) => {
                            self.at += 1;
                            d
                        }
                        _ => return self.err("expected a nonzero denominator"),
                    }
                } else {
                    BigInt::from(1)
                };
                Ok(NcPoly::constant(Rational::new(n, d)))
            }
            Some(Tok::Ident(name)) => {
                let Some(g) = self.names.iter().position(|n| *n == name) else {
                    return self.err(format!("undeclared generator {name:?}"));
                };
                self.at += 1;
                Ok(NcPoly::generator(g as u16))
            }
            _ => self.err("expected a term"),
        }
    }
}

/// Parses the text form into a presentation.
pub fn parse_presentation(src: &str) -> Result<Presentation, DslError> {
    let toks = tokenize(src)?;
    let end = src.len();
    let mut names: Vec<String> = Vec::new();
    let mut relations = Vec::new();
    let mut at = 0;
    let mut seen_gens = false;
    while at < toks.len() {
        let kw_pos = toks[at].0;
        let kw = match &toks[at].1 {
            Tok::Ident(k) => k.clone(),
            _ => {
                return Err(DslError {
                    pos: kw_pos,
                    message: "expected `gens:` or `rel:`".into(),
                })
            }
        };
        if toks.get(at + 1).map(|t| &t.1) != Some(&Tok::Sym(':')) {
            return Err(DslError {
                pos: kw_pos,
                message: format!("expected `:` after {kw:?}"),
            });
        }
        at += 2;
        match kw.as_str() {
            "gens" => {
                if seen_gens {
                    return Err(DslError {
                        pos: kw_pos,
                        message: "generators declared twice".into(),
                    });
                }
                seen_gens = true;
                while let Some((p, t)) = toks.get(at) {
                    match t {
                        Tok::Ident(n) => {
                            if names.contains(n) {
                                return Err(DslError {
                                    pos: *p,
                                    message: format!("duplicate generator {n:?}"),
                                });
                            }
                            names.push(n.clone());
                            at += 1;
                        }
                        Tok::Sym(',') => at += 1,
                        Tok::Sym(';') => break,
                        _ => {
                            return Err(DslError {
                                pos: *p,
                                message: "expected a generator name".into(),
                            })
                        }
                    }
                }
            }
            "rel" => {
                if !seen_gens {
                    return Err(DslError {
                        pos: kw_pos,
                        message: "`rel:` before `gens:`".into(),
                    });
                }
                let mut p = Parser {
                    toks: toks.clone(),
                    at,
                    names: &names,
                    end,
                };
                let r = p.expr()?;
                at = p.at;
                if r.is_zero() {
                    return Err(DslError {
                        pos: kw_pos,
                        message: "relation is zero".into(),
                    });
                }
                relations.push(r);
            }
            _ => {
                return Err(DslError {
                    pos: kw_pos,
                    message: format!("unknown statement {kw:?}"),
                })
            }
        }
        match toks.get(at) {
            Some((_, Tok::Sym(';'))) => at += 1,
            None => {}
            Some((p, _)) => {
                return Err(DslError {
                    pos: *p,
                    message: "expected `;`".into(),
                })
            }
        }
    }
    if !seen_gens {
        return Err(DslError {
            pos: end,
            message: "missing `gens:`".into(),
        });
    }
    Ok(Presentation::new(names, relations))
}

/// Text form accepted by [`parse_presentation`].
pub fn format_presentation(p: &Presentation) -> String {
    let mut s = format!("gens: {};\n", p.names.join(", "));
    for r in &p.relations {
        s.push_str(&format!("rel: {};\n", r.display_with(&p.names)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn round_trip() {
        let p = parse_presentation("gens: a, b; rel: a*b - 1; rel: (a - 3/2)^2;").unwrap();
        assert_eq!(p.names, vec!["a", "b"]);
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.relations[1].coeff(&[]), rat(9, 4));
        assert_eq!(p.relations[1].coeff(&[0]), rat(-3, 1));
        let back = parse_presentation(&format_presentation(&p)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn errors() {
        assert!(parse_presentation("gens: a; rel: b;").is_err());
        assert!(parse_presentation("rel: a;").is_err());
        assert!(parse_presentation("gens: a; rel: a - a;").is_err());
        assert!(parse_presentation("gens: a; rel: a^x;").is_err());
        assert!(parse_presentation("gens: a; rel: 1/0;").is_err());
    }
}
