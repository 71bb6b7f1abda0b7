//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace-insensitive, `#` starts a comment):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER ('/' INTEGER)? | IDENT | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::ParseError;
use crate::polyring::{Field, Monomial, Poly, RingRef};

/// Resulting polynomials are capped at this total degree.
const MAX_PARSED_DEGREE: u64 = 10_000;
/// And at this many terms.
const MAX_PARSED_TERMS: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    // offsets applied to reported positions (for model-file embedding)
    line_base: usize,
    col_base: usize,
}

impl Lexer {
    fn new(src: &str, line_base: usize, col_base: usize) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line: 0,
            col: 0,
            line_base,
            col_base,
        }
    }

    fn position(&self) -> (usize, usize) {
        let line = self.line_base + self.line;
        let col = if self.line == 0 {
            self.col_base + self.col
        } else {
            self.col + 1
        };
        (line, col)
    }

    fn bump(&mut self) -> Option<char> {
        let c = *self.chars.get(self.pos)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 0;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == '#' {
                while let Some(&d) = self.chars.get(self.pos) {
                    if d == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// Next token with the position of its first character.
    fn next(&mut self) -> Result<(Tok, (usize, usize)), ParseError> {
        self.skip_trivia();
        let at = self.position();
        let Some(c) = self.bump() else {
            return Ok((Tok::End, at));
        };
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let mut s = String::from(d);
                while let Some(&n) = self.chars.get(self.pos) {
                    if n.is_ascii_digit() {
                        s.push(n);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Int(s.parse().expect("digits"))
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let mut s = String::from(a);
                while let Some(&n) = self.chars.get(self.pos) {
                    if n.is_ascii_alphanumeric() || n == '_' {
                        s.push(n);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => {
                return Err(ParseError::Syntax {
                    line: at.0,
                    column: at.1,
                    message: format!("unexpected character '{}'", other.escape_default()),
                })
            }
        };
        Ok((tok, at))
    }
}

struct Parser<'a, F: Field> {
    lex: Lexer,
    ring: &'a RingRef<F>,
    tok: Tok,
    at: (usize, usize),
}

impl<'a, F: Field> Parser<'a, F> {
    fn advance(&mut self) -> Result<(), ParseError> {
        let (t, at) = self.lex.next()?;
        self.tok = t;
        self.at = at;
        Ok(())
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.at.0,
            column: self.at.1,
            message: message.into(),
        }
    }

    fn guard(&self, p: &Poly<F>) -> Result<(), ParseError> {
        if p.len() > MAX_PARSED_TERMS {
            return Err(self.syntax("expression expands to too many terms"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.add(&t).expect("same ring");
                }
                Tok::Minus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.sub(&t).expect("same ring");
                }
                _ => return Ok(acc),
            }
            self.guard(&acc)?;
        }
    }

    fn term(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.unary()?;
        while self.tok == Tok::Star {
            self.advance()?;
            let rhs = self.unary()?;
            let deg = acc.degree().unwrap_or(0) as u64 + rhs.degree().unwrap_or(0) as u64;
            if deg > MAX_PARSED_DEGREE {
                return Err(self.syntax("degree too large"));
            }
            if acc.len().saturating_mul(rhs.len()) > MAX_PARSED_TERMS * 4 {
                return Err(self.syntax("expression expands to too many terms"));
            }
            acc = acc.mul(&rhs).expect("same ring");
            self.guard(&acc)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly<F>, ParseError> {
        match self.tok {
            Tok::Minus => {
                self.advance()?;
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.advance()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<F>, ParseError> {
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.advance()?;
        let exp = match &self.tok {
            Tok::Int(n) => n.clone(),
            _ => return Err(self.syntax("expected a nonnegative integer exponent")),
        };
        let deg = base.degree().unwrap_or(0) as u64;
        let e = exp
            .to_u64()
            .filter(|&e| e <= MAX_PARSED_DEGREE && deg * e <= MAX_PARSED_DEGREE)
            .ok_or_else(|| self.syntax("exponent too large"))?;
        if base.len() > 1 {
            // rough bound on the expansion size of a multinomial power
            let mut est = 1f64;
            for k in 0..e {
                est = est * (base.len() as f64 + k as f64) / (k as f64 + 1.0);
                if est > (MAX_PARSED_TERMS * 4) as f64 {
                    return Err(self.syntax("expression expands to too many terms"));
                }
            }
        }
        self.advance()?;
        if self.tok == Tok::Caret {
            return Err(self.syntax("chained exponents need parentheses"));
        }
        Ok(base.pow(e as u32))
    }

    fn atom(&mut self) -> Result<Poly<F>, ParseError> {
        let field = self.ring.field();
        match self.tok.clone() {
            Tok::Int(n) => {
                self.advance()?;
                if self.tok == Tok::Slash {
                    self.advance()?;
                    let d = match &self.tok {
                        Tok::Int(d) => d.clone(),
                        _ => return Err(self.syntax("expected an integer denominator")),
                    };
                    if d.is_zero() {
                        return Err(self.syntax("zero denominator"));
                    }
                    let c = field
                        .from_ratio(&n, &d)
                        .ok_or_else(|| self.syntax("denominator vanishes in the field"))?;
                    self.advance()?;
                    Ok(Poly::constant(self.ring, c))
                } else {
                    Ok(Poly::constant(self.ring, field.from_bigint(&n)))
                }
            }
            Tok::Ident(name) => {
                let Some(i) = self.ring.var_index(&name) else {
                    return Err(ParseError::UnknownVariable {
                        line: self.at.0,
                        column: self.at.1,
                        name,
                    });
                };
                self.advance()?;
                Ok(Poly::monomial(self.ring, field.one(), Monomial::var(i, 1)))
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.syntax("expected ')'"));
                }
                self.advance()?;
                Ok(inner)
            }
            Tok::End => Err(self.syntax("unexpected end of input")),
            other => Err(self.syntax(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse a polynomial in the variables of `ring`. Positions in errors are
/// 1-based line and column.
pub fn parse_polynomial<F: Field>(src: &str, ring: &RingRef<F>) -> Result<Poly<F>, ParseError> {
    parse_polynomial_at(src, ring, 1, 1)
}

/// Like [`parse_polynomial`] with positions offset to where `src` starts in
/// an enclosing document.
pub(crate) fn parse_polynomial_at<F: Field>(
    src: &str,
    ring: &RingRef<F>,
    line: usize,
    column: usize,
) -> Result<Poly<F>, ParseError> {
    let mut p = Parser {
        lex: Lexer::new(src, line, column),
        ring,
        tok: Tok::End,
        at: (line, column),
    };
    p.advance()?;
    if p.tok == Tok::End {
        return Err(p.syntax("empty expression"));
    }
    let out = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.syntax(format!("unexpected trailing token {:?}", p.tok)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{MonomialOrder, PolyRing, PrimeField, Rationals};

    fn ring() -> RingRef<Rationals> {
        PolyRing::new(Rationals, &["p0", "p1", "p2", "ps"], MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn parses_and_expands() {
        let r = ring();
        let f = parse_polynomial("(p0-p2)^3", &r).unwrap();
        let g = parse_polynomial("p0^3 - 3*p0^2*p2 + 3*p0*p2^2 - p2^3", &r).unwrap();
        assert_eq!(f, g);
        let h = parse_polynomial("p0^3 - p0*p1^2", &r).unwrap();
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let r = ring();
        let f = parse_polynomial("-p0^2", &r).unwrap();
        assert_eq!(f, parse_polynomial("-(p0^2)", &r).unwrap());
        let g = parse_polynomial("3/4*p1 - -p2 # trailing comment", &r).unwrap();
        assert_eq!(g, parse_polynomial("p2 + 3/4*p1", &r).unwrap());
    }

    #[test]
    fn rejects_negative_exponent_with_position() {
        let r = ring();
        match parse_polynomial("p0^-1", &r) {
            Err(ParseError::Syntax { line: 1, column: 4, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_variables_and_juxtaposition() {
        let r = ring();
        assert!(matches!(
            parse_polynomial("p0 + x", &r),
            Err(ParseError::UnknownVariable { column: 6, .. })
        ));
        assert!(matches!(parse_polynomial("2 p0", &r), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("", &r), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("p0^2^2", &r), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("p0/2", &r), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("(p0+p1)^100000", &r), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn prime_field_rationals() {
        let r = PolyRing::new(PrimeField::default(), &["x"], MonomialOrder::GrevLex).unwrap();
        let f = parse_polynomial("1/2*x", &r).unwrap();
        let two = parse_polynomial("2", &r).unwrap();
        assert_eq!(f.mul(&two).unwrap(), parse_polynomial("x", &r).unwrap());
        assert!(parse_polynomial("1/2147483647", &r).is_err());
    }
}
