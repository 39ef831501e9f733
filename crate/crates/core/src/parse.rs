//! Text syntax for coefficients and polynomials.
//!
//! ```text
//! poly      := ['-'] term (('+'|'-') term)*
//! term      := factor ('*' factor)*
//! factor    := int | 't' ['^' int] | '(' laurent ')' ['/' '(' laurent ')'] | ident ['^' uint]
//! laurent   := ['-'] lterm (('+'|'-') lterm)*
//! lterm     := int ['*' 't' ['^' int]] | 't' ['^' int]
//! ```
//!
//! The printer only emits the canonical subset: an optional coefficient
//! factor followed by variable powers, terms in descending order.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::coeff::{IntLaurentPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Term, VariableOrder, T};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<(Vec<Spanned>, (usize, usize))> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while chars.peek().is_some_and(char::is_ascii_digit) {
                    s.push(bump(&mut chars));
                }
                out.push(Spanned {
                    tok: Tok::Int(s.parse().expect("digits")),
                    line: l,
                    column: col,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    s.push(bump(&mut chars));
                }
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    line: l,
                    column: col,
                });
                continue;
            }
            other => {
                return Err(Error::Parse {
                    line: l,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        bump(&mut chars);
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    Ok((out, (line, column)))
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    order: Option<&'a Arc<VariableOrder>>,
}

impl<'a> Parser<'a> {
    fn new(src: &str, order: Option<&'a Arc<VariableOrder>>) -> Result<Self> {
        let (toks, end) = lex(src)?;
        Ok(Self {
            toks,
            pos: 0,
            end,
            order,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.column));
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected token {t:?}"))),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = self.eat(&Tok::Minus);
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.error("expected integer")),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let n = self.int()?;
        i64::try_from(&n).map_err(|_| self.error("exponent out of range"))
    }

    /// After `t` was consumed: optional `^ int`.
    fn t_exponent(&mut self) -> Result<i64> {
        if self.eat(&Tok::Caret) {
            self.small_int()
        } else {
            Ok(1)
        }
    }

    fn is_t(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == T)
    }

    fn laurent(&mut self) -> Result<IntLaurentPoly> {
        let mut acc = IntLaurentPoly::zero();
        let mut sign = if self.eat(&Tok::Minus) { -1 } else { 1 };
        loop {
            let (c, e) = if self.is_t() {
                self.pos += 1;
                (BigInt::one(), self.t_exponent()?)
            } else {
                let c = match self.peek().cloned() {
                    Some(Tok::Int(n)) => {
                        self.pos += 1;
                        n
                    }
                    _ => return Err(self.error("expected Laurent term")),
                };
                if self.eat(&Tok::Star) {
                    if !self.is_t() {
                        return Err(self.error("expected `t`"));
                    }
                    self.pos += 1;
                    (c, self.t_exponent()?)
                } else {
                    (c, 0)
                }
            };
            acc = &acc + &IntLaurentPoly::monomial(c * sign, e);
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(acc)
    }

    fn paren_laurent(&mut self) -> Result<IntLaurentPoly> {
        self.expect(Tok::LParen, "`(`")?;
        let p = self.laurent()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(p)
    }

    /// Parenthesised coefficient with an optional `/ (den)`.
    fn paren_coeff(&mut self) -> Result<RationalFunction> {
        let num = self.paren_laurent()?;
        if self.eat(&Tok::Slash) {
            let at = self.error("zero denominator");
            let den = self.paren_laurent()?;
            RationalFunction::from_fraction(num, den).map_err(|_| at)
        } else {
            Ok(RationalFunction::from_laurent(num))
        }
    }

    fn term(&mut self, order: &Arc<VariableOrder>) -> Result<Term> {
        let mut coeff = RationalFunction::one();
        let mut exps = vec![0u32; order.len()];
        loop {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    coeff = &coeff * &RationalFunction::from_bigint(n);
                }
                Some(Tok::LParen) => coeff = &coeff * &self.paren_coeff()?,
                Some(Tok::Ident(name)) if name == T => {
                    self.pos += 1;
                    coeff = &coeff * &RationalFunction::t_pow(self.t_exponent()?);
                }
                Some(Tok::Ident(name)) => {
                    let Some(idx) = order.index_of(&name) else {
                        return Err(self.error(format!("unknown variable `{name}`")));
                    };
                    self.pos += 1;
                    let e = if self.eat(&Tok::Caret) {
                        match self.peek().cloned() {
                            Some(Tok::Int(n)) => {
                                self.pos += 1;
                                u32::try_from(&n)
                                    .map_err(|_| self.error("exponent out of range"))?
                            }
                            _ => return Err(self.error("expected nonnegative exponent")),
                        }
                    } else {
                        1
                    };
                    exps[idx] += e;
                }
                _ => return Err(self.error("expected coefficient or variable")),
            }
            if !self.eat(&Tok::Star) {
                break;
            }
        }
        Ok(Term::new(coeff, Monomial::from_exponents(exps)))
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let order = self.order.expect("polynomial parser needs an order");
        let mut terms = Vec::new();
        let mut negate = self.eat(&Tok::Minus);
        loop {
            let mut t = self.term(order)?;
            if negate {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            negate = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
        }
        Polynomial::from_terms(order, terms)
    }
}

/// Parses a polynomial whose variables all belong to `order`.
pub fn parse_polynomial(src: &str, order: &Arc<VariableOrder>) -> Result<Polynomial> {
    let mut p = Parser::new(src, Some(order))?;
    let poly = p.polynomial()?;
    p.finish()?;
    Ok(poly)
}

/// Parses a single coefficient: `int`, `t^k`, `(laurent)` or `(num)/(den)`;
/// a bare Laurent expression is accepted too.
pub fn parse_coefficient(src: &str) -> Result<RationalFunction> {
    let mut p = Parser::new(src, None)?;
    let c = if p.peek() == Some(&Tok::LParen) {
        p.paren_coeff()?
    } else {
        RationalFunction::from_laurent(p.laurent()?)
    };
    p.finish()?;
    Ok(c)
}

/// Writes a nonzero coefficient as a single factor, e.g. `3`, `t^-2`,
/// `(3*t^2)`, `(t^2 - 1)` or `(1)/(t + 1)`.
pub fn format_coefficient(c: &RationalFunction) -> String {
    if !c.is_laurent() {
        return format!("({})/({})", c.numerator(), c.denominator());
    }
    let n = c.numerator();
    if n.is_monomial() {
        let (e, k) = n.terms().next().expect("nonzero");
        if e == 0 {
            return k.to_string();
        }
        if k.is_one() || (-k).is_one() {
            let sign = if k.is_negative() { "-" } else { "" };
            let pow = if e == 1 {
                T.to_string()
            } else {
                format!("{T}^{e}")
            };
            return format!("{sign}{pow}");
        }
    }
    format!("({n})")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let order = self.order();
        for (i, term) in self.terms().iter().enumerate() {
            let neg = term.coeff.leading_sign().is_lt();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = if neg {
                -&term.coeff
            } else {
                term.coeff.clone()
            };
            let mut factors = Vec::new();
            if !c.is_one() || term.monomial.is_one() {
                factors.push(format_coefficient(&c));
            }
            for (idx, &e) in term.monomial.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(order.name(idx).to_string()),
                    _ => factors.push(format!("{}^{e}", order.name(idx))),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
