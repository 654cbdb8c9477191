//! Text grammars for scalars, algebra elements, polynomials, and module
//! vectors. Printing (in the respective `Display` impls) and parsing are
//! mutual inverses on canonical forms.
//!
//! Element grammar: `term (('+'|'-') term)*` with
//! `term := [scalar '*'] gen`, `gen := L[n] | W[n] | G[n or n/2] | C1 | C2`.
//! Polynomial grammar: sums of `*`-separated factors, each a scalar atom, a
//! variable, or `var^exp`. Vector grammar: `even: <poly> ; odd: <poly>`.

use num::BigInt;
use thiserror::Error;

use crate::algebra::{AlgebraElement, GeneratorKind, Sector};
use crate::modules::SuperVector;
use crate::poly::{Poly1, Poly2};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("sector mismatch at position {pos}: {msg}")]
    SectorMismatch { pos: usize, msg: String },
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(String),
    Ident(String),
    Sym(char),
}

struct Tokens {
    toks: Vec<(Token, usize)>,
    i: usize,
    end: usize,
}

fn tokenize(text: &str) -> Result<Tokens, ParseError> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            toks.push((Token::Num(bytes[start..i].iter().collect()), start));
        } else if c.is_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_alphanumeric() {
                i += 1;
            }
            toks.push((Token::Ident(bytes[start..i].iter().collect()), start));
        } else if "+-*/^()[]:;".contains(c) {
            toks.push((Token::Sym(c), i));
            i += 1;
        } else {
            return Err(syntax(i, format!("unexpected character '{c}'")));
        }
    }
    Ok(Tokens {
        toks,
        i: 0,
        end: text.chars().count(),
    })
}

impl Tokens {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Token> {
        self.toks.get(self.i + 1).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.i).map(|(t, _)| t.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected '{c}'")))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.i == self.toks.len() {
            Ok(())
        } else {
            Err(syntax(self.pos(), "unexpected trailing input"))
        }
    }

    /// A rational number: `int [ '/' int ]` (no sign).
    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let pos = self.pos();
        let Some(Token::Num(n)) = self.next() else {
            return Err(syntax(pos, "expected a number"));
        };
        let numer: BigInt = n.parse().expect("digits parse as integer");
        if self.peek() == Some(&Token::Sym('/')) && matches!(self.peek2(), Some(Token::Num(_))) {
            self.i += 1;
            let dpos = self.pos();
            let Some(Token::Num(d)) = self.next() else {
                unreachable!("peeked a number");
            };
            let denom: BigInt = d.parse().expect("digits parse as integer");
            if denom == BigInt::from(0) {
                return Err(syntax(dpos, "zero denominator"));
            }
            Ok(Scalar::from_rational(Rational::new(numer, denom)))
        } else {
            Ok(Scalar::from_rational(Rational::from_integer(numer)))
        }
    }

    /// An unsigned scalar atom: `( scalar )`, `sqrt2`, `rat`, or `rat*sqrt2`.
    fn scalar_atom(&mut self) -> Result<Scalar, ParseError> {
        match self.peek() {
            Some(Token::Sym('(')) => {
                self.i += 1;
                let s = self.scalar_expr()?;
                self.expect_sym(')')?;
                Ok(s)
            }
            Some(Token::Ident(id)) if id == "sqrt2" => {
                self.i += 1;
                Ok(Scalar::sqrt2())
            }
            Some(Token::Num(_)) => {
                let r = self.rational()?;
                if self.peek() == Some(&Token::Sym('*'))
                    && self.peek2() == Some(&Token::Ident("sqrt2".to_string()))
                {
                    self.i += 2;
                    Ok(&r * &Scalar::sqrt2())
                } else {
                    Ok(r)
                }
            }
            _ => Err(syntax(self.pos(), "expected a scalar")),
        }
    }

    /// A full scalar expression: `[sign] atom (('+'|'-') atom)*`.
    fn scalar_expr(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = Scalar::zero();
        let mut sign = Scalar::one();
        if self.eat_sym('-') {
            sign = Scalar::from_int(-1);
        } else {
            self.eat_sym('+');
        }
        loop {
            let atom = self.scalar_atom()?;
            acc += &(&sign * &atom);
            if self.eat_sym('+') {
                sign = Scalar::one();
            } else if self.eat_sym('-') {
                sign = Scalar::from_int(-1);
            } else {
                return Ok(acc);
            }
        }
    }

    /// A possibly signed half-integer index `[-] int [ '/' int ]`,
    /// returned doubled. Only denominators 1 and 2 are meaningful.
    fn half_index(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat_sym('-');
        let pos = self.pos();
        let Some(Token::Num(n)) = self.next() else {
            return Err(syntax(pos, "expected an index"));
        };
        let n: i64 = n
            .parse()
            .map_err(|_| syntax(pos, "index out of range"))?;
        let mut idx2 = 2 * n;
        if self.eat_sym('/') {
            let dpos = self.pos();
            let Some(Token::Num(d)) = self.next() else {
                return Err(syntax(dpos, "expected a denominator"));
            };
            match d.as_str() {
                "1" => {}
                "2" => idx2 = n,
                _ => return Err(syntax(dpos, "index denominator must be 1 or 2")),
            }
        }
        Ok(if neg { -idx2 } else { idx2 })
    }
}

/// Parse a scalar in the `p/q + r/s*sqrt2` grammar.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let mut toks = tokenize(text)?;
    let s = toks.scalar_expr()?;
    toks.expect_end()?;
    Ok(s)
}

fn generator(
    toks: &mut Tokens,
    sector: Sector,
) -> Result<(GeneratorKind, i64), ParseError> {
    let pos = toks.pos();
    let Some(Token::Ident(name)) = toks.next() else {
        return Err(syntax(pos, "expected a generator (L, W, G, C1, C2)"));
    };
    let kind = match name.as_str() {
        "L" => GeneratorKind::L,
        "W" => GeneratorKind::W,
        "G" => GeneratorKind::G,
        "C1" => return Ok((GeneratorKind::C1, 0)),
        "C2" => return Ok((GeneratorKind::C2, 0)),
        _ => return Err(syntax(pos, format!("unknown generator '{name}'"))),
    };
    toks.expect_sym('[')?;
    let idx_pos = toks.pos();
    let idx2 = toks.half_index()?;
    toks.expect_sym(']')?;
    let gen = crate::algebra::GeneratorIndex { kind, idx2 };
    if !gen.valid_in(sector) {
        return Err(ParseError::SectorMismatch {
            pos: idx_pos,
            msg: format!("{gen} is not a {sector}-sector generator"),
        });
    }
    Ok((kind, idx2))
}

/// Parse an algebra element in the given sector, e.g.
/// `2*L[3] - sqrt2*G[1/2] + C2`.
pub fn parse_algebra_expr(text: &str, sector: Sector) -> Result<AlgebraElement, ParseError> {
    let mut toks = tokenize(text)?;
    let mut out = AlgebraElement::zero(sector);
    let mut sign = Scalar::one();
    if toks.eat_sym('-') {
        sign = Scalar::from_int(-1);
    } else {
        toks.eat_sym('+');
    }
    loop {
        // optional coefficient, then a generator
        let coeff = match toks.peek() {
            Some(Token::Ident(id)) if matches!(id.as_str(), "L" | "W" | "G" | "C1" | "C2") => {
                Scalar::one()
            }
            _ => {
                let c = toks.scalar_atom()?;
                toks.expect_sym('*')?;
                c
            }
        };
        let (kind, idx2) = generator(&mut toks, sector)?;
        let term = AlgebraElement::generator(sector, kind, idx2)
            .expect("validated against sector above");
        out = out.add(&term.scale(&(&sign * &coeff)));
        if toks.eat_sym('+') {
            sign = Scalar::one();
        } else if toks.eat_sym('-') {
            sign = Scalar::from_int(-1);
        } else {
            break;
        }
    }
    toks.expect_end()?;
    Ok(out)
}

/// One factor of a polynomial term: a scalar atom or `var[^exp]`.
fn poly_factor(toks: &mut Tokens, var1: &str, var2: Option<&str>) -> Result<Poly2, ParseError> {
    match toks.peek() {
        Some(Token::Ident(id)) if id != "sqrt2" => {
            let pos = toks.pos();
            let name = id.clone();
            let which = if name == var1 {
                1
            } else if Some(name.as_str()) == var2 {
                2
            } else {
                return Err(ParseError::UnknownVariable { name, pos });
            };
            toks.next();
            let exp: u32 = if toks.eat_sym('^') {
                let epos = toks.pos();
                let Some(Token::Num(e)) = toks.next() else {
                    return Err(syntax(epos, "expected an exponent"));
                };
                e.parse().map_err(|_| syntax(epos, "exponent out of range"))?
            } else {
                1
            };
            Ok(if which == 1 {
                Poly2::monomial(Scalar::one(), exp, 0)
            } else {
                Poly2::monomial(Scalar::one(), 0, exp)
            })
        }
        _ => Ok(Poly2::constant(toks.scalar_atom()?)),
    }
}

fn poly_expr(toks: &mut Tokens, var1: &str, var2: Option<&str>) -> Result<Poly2, ParseError> {
    let mut out = Poly2::zero();
    let mut sign = Scalar::one();
    if toks.eat_sym('-') {
        sign = Scalar::from_int(-1);
    } else {
        toks.eat_sym('+');
    }
    loop {
        let mut term = poly_factor(toks, var1, var2)?;
        while toks.eat_sym('*') {
            term = &term * &poly_factor(toks, var1, var2)?;
        }
        out = &out + &term.scale(&sign);
        if toks.eat_sym('+') {
            sign = Scalar::one();
        } else if toks.eat_sym('-') {
            sign = Scalar::from_int(-1);
        } else {
            return Ok(out);
        }
    }
}

/// Parse a bivariate polynomial with the given variable names.
pub fn parse_poly2(text: &str, var1: &str, var2: &str) -> Result<Poly2, ParseError> {
    let mut toks = tokenize(text)?;
    let p = poly_expr(&mut toks, var1, Some(var2))?;
    toks.expect_end()?;
    Ok(p)
}

/// Parse a univariate polynomial (the `--h` flag grammar, variable `t`).
pub fn parse_poly1(text: &str, var: &str) -> Result<Poly1, ParseError> {
    let mut toks = tokenize(text)?;
    let p = poly_expr(&mut toks, var, None)?;
    toks.expect_end()?;
    Ok(Poly1::from_poly2(p))
}

/// Parse a module vector `even: <poly> ; odd: <poly>` with the variable
/// names of the given kind (Ramond: `u, s` both parts; Neveu-Schwarz:
/// `t, s` even and `y, x` odd).
pub fn parse_vector_expr(text: &str, kind: Sector) -> Result<SuperVector, ParseError> {
    let ((e1, e2), (o1, o2)) = SuperVector::var_names(kind);
    let mut toks = tokenize(text)?;
    let pos = toks.pos();
    match toks.next() {
        Some(Token::Ident(id)) if id == "even" => {}
        _ => return Err(syntax(pos, "expected 'even:'")),
    }
    toks.expect_sym(':')?;
    let even = poly_expr(&mut toks, e1, Some(e2))?;
    toks.expect_sym(';')?;
    let pos = toks.pos();
    match toks.next() {
        Some(Token::Ident(id)) if id == "odd" => {}
        _ => return Err(syntax(pos, "expected 'odd:'")),
    }
    toks.expect_sym(':')?;
    let odd = poly_expr(&mut toks, o1, Some(o2))?;
    toks.expect_end()?;
    Ok(SuperVector::new(kind, even, odd))
}
