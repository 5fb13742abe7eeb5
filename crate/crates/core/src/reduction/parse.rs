use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{ReductionError, Witness};
use crate::lexer::{tokenize, Span, Spanned, Token};
use crate::symbolic::{MPoly, PolyRing};
use crate::Rat;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval(&self, env: &Witness) -> Result<BigInt, ReductionError> {
        Ok(match self {
            Expr::Int(n) => n.clone(),
            Expr::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| ReductionError::MissingVariable(v.clone()))?,
            Expr::Neg(e) => -e.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Pow(a, k) => num_traits::pow(a.eval(env)?, *k as usize),
        })
    }

    /// Expands into a polynomial over `ring`.
    pub fn to_mpoly(&self, ring: &PolyRing) -> MPoly {
        match self {
            Expr::Int(n) => ring.constant(Rat::from_integer(n.clone())),
            Expr::Var(v) => ring.var(v),
            Expr::Neg(e) => -e.to_mpoly(ring),
            Expr::Add(a, b) => a.to_mpoly(ring) + b.to_mpoly(ring),
            Expr::Sub(a, b) => a.to_mpoly(ring) - b.to_mpoly(ring),
            Expr::Mul(a, b) => a.to_mpoly(ring) * b.to_mpoly(ring),
            Expr::Pow(a, k) => a.to_mpoly(ring).pow(*k),
        }
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(e) | Expr::Pow(e, _) => e.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(n) if n.sign() == num_bigint::Sign::Minus => 3,
            Expr::Int(_) | Expr::Var(_) => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, 4)
            }
            Expr::Add(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(" + ")?;
                write_child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(" - ")?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 2)?;
                f.write_str("*")?;
                write_child(f, b, 3)
            }
            Expr::Pow(a, k) => {
                write_child(f, a, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

/// `lhs = rhs`, remembering where it started in the source.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
    pub span: Span,
}

impl Equation {
    /// `lhs − rhs` at `env`.
    pub fn residual(&self, env: &Witness) -> Result<BigInt, ReductionError> {
        Ok(self.lhs.eval(env)? - self.rhs.eval(env)?)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A system of polynomial equations over ℤ. Variables are listed in order
/// of first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceSystem {
    pub equations: Vec<Equation>,
    pub vars: Vec<String>,
}

impl SourceSystem {
    pub fn new(equations: Vec<Equation>) -> Self {
        let mut vars = Vec::new();
        for eq in &equations {
            eq.lhs.collect_vars(&mut vars);
            eq.rhs.collect_vars(&mut vars);
        }
        SourceSystem { equations, vars }
    }

    /// Index of the first equation `env` violates, if any.
    pub fn first_violation(&self, env: &Witness) -> Result<Option<usize>, ReductionError> {
        for (i, eq) in self.equations.iter().enumerate() {
            if !eq.residual(env)?.is_zero() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn is_solution(&self, env: &Witness) -> Result<bool, ReductionError> {
        Ok(self.first_violation(env)?.is_none())
    }

    pub fn ring(&self) -> PolyRing {
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        PolyRing::new(&names)
    }

    /// Each equation as the polynomial `lhs − rhs`.
    pub fn normalized(&self) -> Vec<MPoly> {
        let ring = self.ring();
        self.equations
            .iter()
            .map(|eq| eq.lhs.to_mpoly(&ring) - eq.rhs.to_mpoly(&ring))
            .collect()
    }
}

impl fmt::Display for SourceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            writeln!(f, "{eq}")?;
        }
        Ok(())
    }
}

/// Parses equations `expr = expr` separated by `;` or line breaks. Line
/// breaks inside parentheses are ignored.
pub fn parse(src: &str) -> Result<SourceSystem, ReductionError> {
    let tokens = tokenize(src).map_err(|e| ReductionError::Syntax {
        span: e.span,
        message: format!("unexpected character '{}'", e.found),
    })?;
    let mut p = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    let mut equations = Vec::new();
    loop {
        while matches!(p.peek(), Token::Semicolon | Token::Newline) {
            p.bump();
        }
        if *p.peek() == Token::Eof {
            break;
        }
        equations.push(p.equation()?);
        match p.peek().clone() {
            Token::Semicolon | Token::Newline | Token::Eof => {}
            other => return Err(p.error(format!("expected ';' or end of line, found {other}"))),
        }
    }
    Ok(SourceSystem::new(equations))
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn skip_inner_newlines(&mut self) {
        if self.depth > 0 {
            while self.tokens[self.pos].token == Token::Newline {
                self.pos += 1;
            }
        }
    }

    fn peek(&mut self) -> &Token {
        self.skip_inner_newlines();
        &self.tokens[self.pos].token
    }

    fn span(&mut self) -> Span {
        self.skip_inner_newlines();
        self.tokens[self.pos].span
    }

    fn bump(&mut self) -> Token {
        self.skip_inner_newlines();
        let t = self.tokens[self.pos].token.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&mut self, message: impl ToString) -> ReductionError {
        ReductionError::Syntax {
            span: self.span(),
            message: message.to_string(),
        }
    }

    fn equation(&mut self) -> Result<Equation, ReductionError> {
        let span = self.span();
        let lhs = self.expr()?;
        if *self.peek() != Token::Equals {
            let found = self.peek().clone();
            return Err(self.error(format!("expected '=', found {found}")));
        }
        self.bump();
        let rhs = self.expr()?;
        Ok(Equation { lhs, rhs, span })
    }

    fn expr(&mut self) -> Result<Expr, ReductionError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ReductionError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Token::Slash => {
                    return Err(self.error("division is not allowed in integer equations"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ReductionError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ReductionError> {
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let span = self.span();
        let Token::Int(n) = self.peek().clone() else {
            let found = self.peek().clone();
            return Err(self.error(format!("expected a nonnegative integer exponent, found {found}")));
        };
        self.bump();
        match n.to_u32().filter(|&k| k <= MAX_EXPONENT) {
            Some(k) => Ok(Expr::Pow(Box::new(base), k)),
            None => Err(ReductionError::ExponentOverflow { span, exponent: n }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ReductionError> {
        match self.peek().clone() {
            Token::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Token::Ident(name) => {
                self.bump();
                Ok(Expr::Var(name))
            }
            Token::LParen => {
                self.bump();
                self.depth += 1;
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    let found = self.peek().clone();
                    return Err(self.error(format!("expected ')', found {found}")));
                }
                self.depth -= 1;
                self.bump();
                Ok(inner)
            }
            other => Err(self.error(format!("unexpected {other}"))),
        }
    }
}

#[cfg(test)]
pub(crate) fn env_from(pairs: &[(&str, i64)]) -> Witness {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), BigInt::from(*v)))
        .collect()
}
