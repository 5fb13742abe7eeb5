use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::{RatFunc, SymbolicError, UPoly};
use crate::lexer::{tokenize, Spanned, Token};
use crate::Rat;

const MAX_EXPONENT: u32 = 1024;

/// Parses a rational function in `z`, e.g. `(z^2 + 1)/(2*z - 3)`.
/// Integers, `+ - * / ^` and parentheses are accepted; exponents are
/// nonnegative integer literals, or negated literals applied to nonzero
/// bases.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc, SymbolicError> {
    let tokens = tokenize(src).map_err(|e| SymbolicError::Parse {
        span: e.span,
        message: format!("unexpected character '{}'", e.found),
    })?;
    let mut p = Parser { tokens, pos: 0 };
    let f = p.expr()?;
    match p.peek() {
        Token::Eof => Ok(f),
        other => Err(p.error(format!("unexpected {other}"))),
    }
}

/// Like [`parse_ratfunc`] but requires the result to be a polynomial.
pub fn parse_upoly(src: &str) -> Result<UPoly, SymbolicError> {
    let f = parse_ratfunc(src)?;
    if !f.den().is_constant() {
        return Err(SymbolicError::NotPolynomial);
    }
    let c = f.den().coeff(0);
    Ok(f.num().scale(&c.recip()))
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].token
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].token.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl ToString) -> SymbolicError {
        SymbolicError::Parse {
            span: self.tokens[self.pos].span,
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<RatFunc, SymbolicError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, SymbolicError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    acc = acc * self.unary()?;
                }
                Token::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, SymbolicError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, SymbolicError> {
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = *self.peek() == Token::Minus;
        if negative {
            self.bump();
        }
        let Token::Int(n) = self.peek().clone() else {
            return Err(self.error("expected an integer exponent"));
        };
        let e = n
            .to_u32()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| self.error(format!("exponent {n} is too large")))?;
        self.bump();
        let p = base.pow(e);
        if negative {
            p.recip()
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<RatFunc, SymbolicError> {
        match self.peek().clone() {
            Token::Int(n) => {
                self.bump();
                Ok(RatFunc::constant(Rat::from_integer(n)))
            }
            Token::Ident(name) if name == "z" => {
                self.bump();
                Ok(RatFunc::z())
            }
            Token::Ident(name) => Err(self.error(format!("unknown variable '{name}'"))),
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            other => Err(self.error(format!("unexpected {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn parses_polynomials_and_quotients() {
        assert_eq!(parse_upoly("z^2 - 4*120").unwrap(), UPoly::from_ints(&[-480, 0, 1]));
        assert_eq!(parse_upoly("-(z-1)^2").unwrap(), UPoly::from_ints(&[-1, 2, -1]));
        assert_eq!(parse_upoly("z/2").unwrap(), UPoly::new(alloc::vec![rat(0, 1), rat(1, 2)]));
        let f = parse_ratfunc("(z^2 - 1)/(z - 1)").unwrap();
        assert_eq!(f, RatFunc::from_poly(UPoly::from_ints(&[1, 1])));
        assert_eq!(parse_ratfunc("z^-2").unwrap(), RatFunc::new(UPoly::one(), UPoly::from_ints(&[0, 0, 1])).unwrap());
    }

    #[test]
    fn reports_errors() {
        assert_eq!(parse_upoly("1/z"), Err(SymbolicError::NotPolynomial));
        assert_eq!(parse_ratfunc("z/(z-z)"), Err(SymbolicError::DivisionByZero));
        assert!(matches!(parse_ratfunc("x + 1"), Err(SymbolicError::Parse { .. })));
        assert!(matches!(parse_ratfunc("(z + 1"), Err(SymbolicError::Parse { .. })));
        assert!(matches!(parse_ratfunc("z^99999"), Err(SymbolicError::Parse { .. })));
    }
}
