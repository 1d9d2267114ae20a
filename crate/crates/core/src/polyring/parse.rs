//! Text grammar for polynomials.
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' [sign] int]
//! atom   := int ['/' int] | 'z' | '(' expr ')' | 'poly(' int ';' rat (',' rat)* ')'
//! ```
//!
//! Whitespace is ignored. Juxtaposition multiplies, so `2z^2-3z+2`,
//! `(2z-1)(z-2)` and `(z^2-z+1)^3` all parse. The Unicode minus sign, the
//! middle dot and superscript exponents (`z²`, `z⁻¹`) are accepted so that
//! polynomials can be pasted from typeset tables.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{LaurentPoly, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    Comma,
    Poly,
    Sup(i64),
    End,
}

fn superscript_digit(c: char) -> Option<u32> {
    match c {
        '⁰' => Some(0),
        '¹' => Some(1),
        '²' => Some(2),
        '³' => Some(3),
        '⁴' => Some(4),
        '⁵' => Some(5),
        '⁶' => Some(6),
        '⁷' => Some(7),
        '⁸' => Some(8),
        '⁹' => Some(9),
        _ => None,
    }
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
            continue;
        }
        if c == '⁻' || superscript_digit(c).is_some() {
            let mut neg = false;
            if c == '⁻' {
                neg = true;
                it.next();
            }
            let mut v: i64 = 0;
            let mut any = false;
            while let Some(&(_, d)) = it.peek() {
                if let Some(x) = superscript_digit(d) {
                    v = v.checked_mul(10).and_then(|v| v.checked_add(x as i64)).ok_or_else(|| err(pos, "exponent too large"))?;
                    any = true;
                    it.next();
                } else {
                    break;
                }
            }
            if !any {
                return Err(err(pos, "superscript minus without digits"));
            }
            out.push((pos, Tok::Sup(if neg { -v } else { v })));
            continue;
        }
        if s[pos..].starts_with("poly") {
            for _ in 0..4 {
                it.next();
            }
            out.push((pos, Tok::Poly));
            continue;
        }
        let tok = match c {
            'z' | 'Z' => Tok::Z,
            '+' => Tok::Plus,
            '-' | '−' | '–' => Tok::Minus,
            '*' | '·' | '⋅' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            _ => return Err(err(pos, format!("unexpected character '{c}'"))),
        };
        it.next();
        out.push((pos, tok));
    }
    out.push((s.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        let mut sign = match self.peek() {
            Tok::Plus => {
                self.bump();
                1
            }
            Tok::Minus => {
                self.bump();
                -1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            self.bump();
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Z | Tok::LParen | Tok::Poly)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Option<(usize, i64)>> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Sup(e) => {
                self.bump();
                Ok(Some((pos, e)))
            }
            Tok::Caret => {
                self.bump();
                let neg = match self.peek() {
                    Tok::Minus => {
                        self.bump();
                        true
                    }
                    Tok::Plus => {
                        self.bump();
                        false
                    }
                    _ => false,
                };
                let p = self.pos();
                match self.bump() {
                    Tok::Int(v) => {
                        let v: i64 = v.try_into().map_err(|_| err(p, "exponent too large"))?;
                        Ok(Some((pos, if neg { -v } else { v })))
                    }
                    _ => Err(err(p, "expected integer exponent")),
                }
            }
            _ => Ok(None),
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        let Some((pos, e)) = self.exponent()? else {
            return Ok(base);
        };
        if e.abs() > 4096 {
            return Err(err(pos, "exponent too large"));
        }
        if e >= 0 {
            return Ok(base.pow(e as u32));
        }
        if !base.is_unit() {
            return Err(err(pos, "negative exponent on a non-monomial"));
        }
        let c = base.leading();
        if c.is_zero() {
            return Err(err(pos, "zero raised to a negative power"));
        }
        let inv = LaurentPoly::monomial(c.recip(), -base.min_exp());
        Ok(inv.pow((-e) as u32))
    }

    fn rational(&mut self) -> Result<Q> {
        let neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let p = self.pos();
        let num = match self.bump() {
            Tok::Int(v) => v,
            _ => return Err(err(p, "expected a number")),
        };
        let mut q = Q::from_integer(num);
        if *self.peek() == Tok::Slash {
            self.bump();
            let p = self.pos();
            match self.bump() {
                Tok::Int(d) if !d.is_zero() => q /= Q::from_integer(d),
                Tok::Int(_) => return Err(err(p, "zero denominator")),
                _ => return Err(err(p, "expected a denominator")),
            }
        }
        Ok(if neg { -q } else { q })
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        let p = self.pos();
        match self.peek().clone() {
            Tok::Int(_) => Ok(LaurentPoly::constant(self.rational()?)),
            Tok::Z => {
                self.bump();
                Ok(LaurentPoly::z())
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Poly => {
                self.bump();
                self.expect(Tok::LParen, "'(' after poly")?;
                let mp = self.pos();
                let neg = if *self.peek() == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let min_exp: i64 = match self.bump() {
                    Tok::Int(v) => v.try_into().map_err(|_| err(mp, "exponent too large"))?,
                    _ => return Err(err(mp, "expected minimal exponent")),
                };
                let min_exp = if neg { -min_exp } else { min_exp };
                self.expect(Tok::Semi, "';'")?;
                let mut coeffs = vec![self.rational()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    coeffs.push(self.rational()?);
                }
                self.expect(Tok::RParen, "')'")?;
                Ok(LaurentPoly::new(min_exp, coeffs))
            }
            Tok::End => Err(err(p, "unexpected end of input")),
            t => Err(err(p, format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses a polynomial in the text grammar described at module level.
pub fn parse_poly(s: &str) -> Result<LaurentPoly> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, at: 0 };
    if *p.peek() == Tok::End {
        return Err(err(0, "empty polynomial"));
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_grammar() {
        let a = parse_poly("2z^2-3z+2").unwrap();
        assert_eq!(a, LaurentPoly::from_ints(0, &[2, -3, 2]));
        let b = parse_poly(" z^-1 + 1 - z ").unwrap();
        assert_eq!(b, LaurentPoly::from_ints(-1, &[1, 1, -1]));
    }

    #[test]
    fn list_form() {
        let a = parse_poly("poly(-1; 1, 1, -1)").unwrap();
        assert_eq!(a, LaurentPoly::from_ints(-1, &[1, 1, -1]));
        let b = parse_poly("poly(0; 1/2, -3/4)").unwrap();
        assert_eq!(b.coeff(1), Q::new((-3).into(), 4.into()));
    }

    #[test]
    fn factored_and_typeset_forms() {
        let a = parse_poly("(2z-1)(z-2)").unwrap();
        assert_eq!(a, LaurentPoly::from_ints(0, &[2, -5, 2]));
        let b = parse_poly("(z²−z+1)³").unwrap();
        assert_eq!(b, parse_poly("(z^2-z+1)^3").unwrap());
        assert_eq!(parse_poly("z⁻¹").unwrap(), LaurentPoly::from_ints(-1, &[1]));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("2z^2 -? 3") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("").is_err());
        assert!(parse_poly("(z+1").is_err());
        assert!(parse_poly("(z+1)^-1").is_err());
        assert!(parse_poly("1/0").is_err());
    }
}
