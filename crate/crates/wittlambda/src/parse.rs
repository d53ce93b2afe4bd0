//! Polynomial expression parser.
//!
//! Grammar (explicit `*` required, juxtaposition is a syntax error):
//!
//! ```text
//! expr   := \['-'\] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom \['^' int\]        (negative exponents on Laurent variables)
//! atom   := ident | integer | '(' expr ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Poly, Vars};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push(Tok::Int(s.parse::<BigInt>().unwrap()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(bytes[start..i].iter().collect()));
            }
            other => return Err(Error::invalid(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a Arc<Vars>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        // juxtaposition like "2x" or "x y" is rejected: the next token after a
        // factor must be an operator or a closer
        match self.peek() {
            None | Some(Tok::Plus) | Some(Tok::Minus) | Some(Tok::RParen) => Ok(acc),
            Some(t) => Err(Error::invalid(format!(
                "expected operator, found {t:?} (implicit multiplication is not allowed)"
            ))),
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let (base, laurent_var) = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let mut neg = false;
            if self.peek() == Some(&Tok::Minus) {
                self.bump();
                neg = true;
            }
            let e = match self.bump() {
                Some(Tok::Int(n)) => n,
                other => return Err(Error::invalid(format!("expected exponent, found {other:?}"))),
            };
            let e: i64 = e
                .try_into()
                .map_err(|_| Error::invalid("exponent too large"))?;
            let e = if neg { -e } else { e };
            if e < 0 {
                let var = laurent_var.ok_or_else(|| {
                    Error::invalid("negative exponents are only allowed on Laurent variables")
                })?;
                if !self.vars.is_laurent(var) {
                    return Err(Error::invalid(format!(
                        "variable {} is not Laurent; negative exponent rejected",
                        self.vars.name(var)
                    )));
                }
                let mut exps = vec![0; self.vars.len()];
                exps[var] = e as i32;
                return Ok(Poly::monomial(
                    self.vars,
                    crate::poly::Mono(exps),
                    BigInt::one(),
                ));
            }
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::invalid("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    /// Returns the parsed atom and, when it is a bare variable, its index
    /// (needed to validate negative exponents).
    fn atom(&mut self) -> Result<(Poly, Option<usize>)> {
        match self.bump() {
            Some(Tok::Ident(name)) => {
                let i = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| Error::invalid(format!("unknown variable {name}")))?;
                Ok((Poly::var(self.vars, i), Some(i)))
            }
            Some(Tok::Int(n)) => Ok((Poly::constant(self.vars, n), None)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok((e, None)),
                    other => Err(Error::invalid(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::invalid(format!("expected atom, found {other:?}"))),
        }
    }
}

pub fn parse_poly(vars: &Arc<Vars>, src: &str) -> Result<Poly> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, vars };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::invalid(format!(
            "trailing input after polynomial: {:?}",
            &p.toks[p.pos..]
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_forms() {
        let v = Vars::new(&["x", "y"]);
        assert_eq!(parse_poly(&v, "x^2 - x").unwrap().to_string(), "x^2 - x");
        assert_eq!(
            parse_poly(&v, "(x + y)^2 - x^2 - y^2").unwrap().to_string(),
            "2*x*y"
        );
        assert_eq!(parse_poly(&v, "-x + 3").unwrap().to_string(), "-x + 3");
        assert_eq!(
            parse_poly(&v, "123456789012345678901234567890").unwrap().to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn explicit_multiplication_required() {
        let v = Vars::new(&["x", "y"]);
        assert!(parse_poly(&v, "2x").is_err());
        assert!(parse_poly(&v, "x y").is_err());
        assert!(parse_poly(&v, "2*x").is_ok());
    }

    #[test]
    fn laurent_exponents() {
        let v = Vars::with_laurent(&["t", "u"], &[true, false]);
        assert_eq!(parse_poly(&v, "t^-3 + t").unwrap().to_string(), "t + t^-3");
        assert!(parse_poly(&v, "u^-1").is_err());
        assert!(parse_poly(&v, "(t + 1)^-1").is_err());
    }
}
