//! Recursive-descent parser for univariate polynomial expressions.
//!
//! ```text
//! poly   := ws term (ws ('+'|'-') ws term)* ws
//! term   := coef (ws '*' ws factor)? | factor
//! factor := 'x' ('^' uint)?
//! coef   := 'g' ('^' uint)? | uint
//! uint   := [0-9]+
//! ```
//!
//! `g` is the primitive element of the context and an integer literal k is
//! k·1 mod p. A `-` separator is only accepted in odd characteristic.

use std::fmt;

use thiserror::Error;

use crate::gf::{FieldCtx, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("exponent at byte {offset} does not fit in 64 bits")]
    ExponentTooLarge { offset: usize },
}

/// One monomial `coef · x^exp`; `exp = 0` is a constant term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coef: FieldElem,
    pub exp: u64,
}

/// A parsed expression with its coefficients resolved in a field context.
/// Signs are folded into the coefficients; zero terms are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyExpr {
    pub terms: Vec<Term>,
}

impl PolyExpr {
    /// Evaluates at x with the convention 0^0 = 1.
    pub fn eval(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        self.terms.iter().fold(FieldElem::ZERO, |acc, t| {
            ctx.add(acc, ctx.mul(t.coef, ctx.pow(x, t.exp)))
        })
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exp == 0)
    }

    /// Renders the expression back into the grammar.
    pub fn render(&self, ctx: &FieldCtx) -> String {
        struct R<'a>(&'a PolyExpr, &'a FieldCtx);
        impl fmt::Display for R<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let (e, ctx) = (self.0, self.1);
                if e.terms.is_empty() {
                    return write!(f, "0");
                }
                for (i, t) in e.terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    let coef = if t.coef.0 < ctx.p() {
                        t.coef.0.to_string()
                    } else {
                        format!("g^{}", ctx.log(t.coef).expect("nonzero coefficient"))
                    };
                    match (t.exp, t.coef == FieldElem::ONE) {
                        (0, _) => write!(f, "{coef}")?,
                        (e, true) => write!(f, "x^{e}")?,
                        (e, false) => write!(f, "{coef}*x^{e}")?,
                    }
                }
                Ok(())
            }
        }
        R(self, ctx).to_string()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a FieldCtx,
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.pos,
            msg: msg.into(),
        })
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an unsigned integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::ExponentTooLarge { offset: start })
    }

    /// Optional `^ uint`, defaulting to 1.
    fn power(&mut self) -> Result<u64, ParseError> {
        let save = self.pos;
        self.ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            self.uint()
        } else {
            self.pos = save;
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<u64, ParseError> {
        if self.peek() != Some(b'x') {
            return self.err("expected 'x'");
        }
        self.pos += 1;
        self.power()
    }

    fn coef(&mut self) -> Result<FieldElem, ParseError> {
        match self.peek() {
            Some(b'g') => {
                self.pos += 1;
                let t = self.power()?;
                Ok(self.ctx.exp(t))
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while matches!(self.peek(), Some(b'0'..=b'9')) {
                    self.pos += 1;
                }
                // reduce digit by digit so long literals cannot overflow
                let p = self.ctx.p() as u64;
                let k = self.src[start..self.pos]
                    .iter()
                    .fold(0u64, |acc, &d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(FieldElem(k as u32))
            }
            _ => self.err("expected a coefficient ('g' or an integer) or 'x'"),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some(b'x') {
            let exp = self.factor()?;
            return Ok(Term {
                coef: FieldElem::ONE,
                exp,
            });
        }
        let coef = self.coef()?;
        let save = self.pos;
        self.ws();
        if self.peek() == Some(b'*') {
            self.pos += 1;
            self.ws();
            let exp = self.factor()?;
            Ok(Term { coef, exp })
        } else {
            self.pos = save;
            Ok(Term { coef, exp: 0 })
        }
    }

    fn poly(&mut self) -> Result<PolyExpr, ParseError> {
        let mut terms = Vec::new();
        self.ws();
        terms.push(self.term()?);
        loop {
            self.ws();
            let negate = match self.peek() {
                None => break,
                Some(b'+') => false,
                Some(b'-') if self.ctx.p() == 2 => {
                    return self.err("'-' is only allowed in odd characteristic")
                }
                Some(b'-') => true,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            };
            self.pos += 1;
            self.ws();
            let mut t = self.term()?;
            if negate {
                t.coef = self.ctx.neg(t.coef);
            }
            terms.push(t);
        }
        terms.retain(|t| !t.coef.is_zero());
        Ok(PolyExpr { terms })
    }
}

pub fn parse_poly(src: &str, ctx: &FieldCtx) -> Result<PolyExpr, ParseError> {
    Parser {
        src: src.as_bytes(),
        pos: 0,
        ctx,
    }
    .poly()
}

/// Parses an x-free expression such as `g^3 + g^2 + g` to a single element.
pub fn parse_constant(src: &str, ctx: &FieldCtx) -> Result<FieldElem, ParseError> {
    let e = parse_poly(src, ctx)?;
    if !e.is_constant() {
        return Err(ParseError::Syntax {
            offset: src.find('x').unwrap_or(0),
            msg: "a constant may not mention x".into(),
        });
    }
    Ok(e.eval(ctx, FieldElem::ZERO))
}
