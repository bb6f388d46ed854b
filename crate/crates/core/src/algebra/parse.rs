//! Text syntax for scalars in K and forms over K.
//!
//! Grammar: sums and products of integers, `t`, `g` (the field generator),
//! the form variables, `^` with a non-negative integer exponent, and
//! parentheses. Integers are read modulo 2 and `-` is the same as `+`.
//! Division is only allowed by expressions free of the form variables.

use super::gf::FieldSpec;
use super::mpoly::{MPoly, TriForm, XYZ};
use super::scalar::ScalarK;
use super::upoly::UPoly;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(bool),
    Ident(char),
    Op(char),
    Open,
    Close,
    Exp(u32),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let last = chars[i - 1].to_digit(10).unwrap();
            // Exponents keep their value, everything else is reduced mod 2.
            if matches!(out.last(), Some((_, Tok::Op('^')))) {
                let text: String = chars[start..i].iter().collect();
                let e: u32 = text
                    .parse()
                    .map_err(|_| AlgebraError::Syntax { pos: start, msg: "exponent too large".into() })?;
                out.pop();
                out.push((start, Tok::Exp(e)));
            } else {
                out.push((start, Tok::Int(last % 2 == 1)));
            }
            continue;
        }
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            '(' => Tok::Open,
            ')' => Tok::Close,
            c if c.is_ascii_alphabetic() => Tok::Ident(c),
            _ => return Err(AlgebraError::Syntax { pos: i, msg: format!("unexpected character '{c}'") }),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
    field: FieldSpec,
    names: &'static [&'static str],
    // Letter standing for the transcendental.
    tvar: char,
    _src: &'a str,
}

type P = MPoly<ScalarK>;

const MAX_EXPONENT: u32 = 4096;

impl<'a> Parser<'a> {
    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Syntax { pos: self.here(), msg: msg.into() }
    }

    fn expr(&mut self) -> Result<P, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op('+' | '-')) = self.peek() {
            self.pos += 1;
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<P, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(AlgebraError::DivisionByZero);
                    }
                    if d.len() != 1 || d.total_degree() != Some(0) {
                        return Err(AlgebraError::Syntax { pos: at, msg: "division by a non-scalar".into() });
                    }
                    let c = d.coeff(&Default::default());
                    acc = acc.scale(&c.inv().expect("nonzero"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<P, AlgebraError> {
        if let Some(Tok::Op('+' | '-')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        let base = self.atom()?;
        if let Some(Tok::Exp(e)) = self.peek().cloned() {
            self.pos += 1;
            if e > MAX_EXPONENT {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            return Err(self.err("expected a non-negative integer exponent"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<P, AlgebraError> {
        let f = self.field;
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Int(odd) => Ok(P::constant(f, self.names, if odd { ScalarK::one(f) } else { ScalarK::zero(f) })),
            Tok::Ident(c) if c == self.tvar => Ok(P::constant(f, self.names, ScalarK::t(f))),
            Tok::Ident('g') => Ok(P::constant(f, self.names, ScalarK::from_gf(f.gen()))),
            Tok::Ident(c) => match self.names.iter().position(|n| n.starts_with(c) && n.len() == 1) {
                Some(i) => Ok(P::var(f, self.names, i)),
                None => {
                    self.pos -= 1;
                    Err(self.err(&format!("unknown symbol '{c}'")))
                }
            },
            Tok::Open => {
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Close) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected an operand"))
            }
        }
    }
}

fn parse_with(text: &str, field: FieldSpec, names: &'static [&'static str], tvar: char) -> Result<P, AlgebraError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(AlgebraError::Syntax { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { toks, pos: 0, len: text.len(), field, names, tvar, _src: text };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses an element of K = GF(2^m)(t).
pub fn parse_scalar(text: &str, field: FieldSpec) -> Result<ScalarK, AlgebraError> {
    let p = parse_with(text, field, &[], 't')?;
    Ok(p.coeff(&Default::default()))
}

/// Parses a polynomial over K in the given variables.
pub fn parse_poly(text: &str, field: FieldSpec, names: &'static [&'static str]) -> Result<P, AlgebraError> {
    parse_with(text, field, names, 't')
}

/// Parses a ternary form in `x, y, z`.
pub fn parse_form(text: &str, field: FieldSpec) -> Result<TriForm, AlgebraError> {
    parse_poly(text, field, XYZ)
}

/// Parses a binary polynomial in `u` such as `u^2+u+1` into its bit pattern.
pub fn parse_modulus(text: &str) -> Result<u64, AlgebraError> {
    let f = FieldSpec::binary();
    let p = parse_with(text, f, &[], 'u')?.coeff(&Default::default());
    if !p.den().is_one() {
        return Err(AlgebraError::Syntax { pos: 0, msg: "modulus must be a polynomial".into() });
    }
    poly_bits(p.num())
}

fn poly_bits(p: &UPoly) -> Result<u64, AlgebraError> {
    if p.len() > 63 {
        return Err(AlgebraError::Syntax { pos: 0, msg: "modulus degree too large".into() });
    }
    Ok((0..p.len()).filter(|&i| p.coeff(i).is_one()).fold(0u64, |acc, i| acc | 1 << i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_examples() {
        let f = FieldSpec::binary();
        assert_eq!(parse_scalar("(t^3+t)/(t^4+t^2)", f).unwrap().to_string(), "1/t");
        assert_eq!(parse_scalar("1/0", f), Err(AlgebraError::DivisionByZero));
        assert!(matches!(parse_scalar("t+", f), Err(AlgebraError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_scalar("q", f), Err(AlgebraError::Syntax { pos: 0, .. })));
        assert_eq!(parse_scalar("3*t - 2", f).unwrap(), ScalarK::t(f));
    }

    #[test]
    fn forms_and_generator() {
        let f = FieldSpec::new(2, 0b111).unwrap();
        let p = parse_form("y^4+(1+g)*z^4+x^2*z^2+g^2*x^4", f).unwrap();
        assert_eq!(p.total_degree(), Some(4));
        assert_eq!(parse_form(&p.to_string(), f).unwrap(), p);
        assert!(parse_form("x/y", f).is_err());
    }

    #[test]
    fn moduli() {
        assert_eq!(parse_modulus("u^2+u+1").unwrap(), 0b111);
        assert_eq!(parse_modulus("u^4+u+1").unwrap(), 0b10011);
    }
}
