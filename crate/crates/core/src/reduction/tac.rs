use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::parse::{Expr, SourceSystem};
use super::{ReductionError, Witness};

/// One three-address instruction. `Scale` multiplies by a literal and stays
/// linear; only `Mul` multiplies two variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Instr {
    Const { dst: String, value: BigInt },
    Add { dst: String, a: String, b: String },
    Scale { dst: String, factor: BigInt, a: String },
    Mul { dst: String, a: String, b: String },
}

impl Instr {
    pub fn dst(&self) -> &str {
        match self {
            Instr::Const { dst, .. }
            | Instr::Add { dst, .. }
            | Instr::Scale { dst, .. }
            | Instr::Mul { dst, .. } => dst,
        }
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instr::Const { dst, value } => write!(f, "{dst} := {value}"),
            Instr::Add { dst, a, b } => write!(f, "{dst} := {a} + {b}"),
            Instr::Scale { dst, factor, a } => write!(f, "{dst} := {factor}*{a}"),
            Instr::Mul { dst, a, b } => write!(f, "{dst} := {a}*{b}"),
        }
    }
}

/// Lowered system: straight-line instructions in single-assignment form
/// plus equalities between variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TacProgram {
    pub source_vars: Vec<String>,
    pub instrs: Vec<Instr>,
    pub constraints: Vec<(String, String)>,
    pub temps: usize,
}

impl TacProgram {
    pub fn multiplications(&self) -> usize {
        self.instrs
            .iter()
            .filter(|i| matches!(i, Instr::Mul { .. }))
            .count()
    }

    /// Runs the instructions from values of the source variables.
    pub fn execute(&self, source: &Witness) -> Result<Witness, ReductionError> {
        let mut env = Witness::new();
        for v in &self.source_vars {
            let value = source
                .get(v)
                .ok_or_else(|| ReductionError::MissingVariable(v.clone()))?;
            env.insert(v.clone(), value.clone());
        }
        for instr in &self.instrs {
            let value = match instr {
                Instr::Const { value, .. } => value.clone(),
                Instr::Add { a, b, .. } => &env[a] + &env[b],
                Instr::Scale { factor, a, .. } => factor * &env[a],
                Instr::Mul { a, b, .. } => &env[a] * &env[b],
            };
            env.insert(instr.dst().into(), value);
        }
        Ok(env)
    }

    pub fn constraints_hold(&self, env: &Witness) -> bool {
        self.constraints.iter().all(|(a, b)| env[a] == env[b])
    }
}

impl fmt::Display for TacProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.instrs {
            writeln!(f, "{i}")?;
        }
        for (a, b) in &self.constraints {
            writeln!(f, "{a} = {b}")?;
        }
        Ok(())
    }
}

#[derive(Clone)]
enum Val {
    Const(BigInt),
    Var(String),
}

struct Lowerer {
    instrs: Vec<Instr>,
    temps: usize,
}

impl Lowerer {
    fn fresh(&mut self) -> String {
        self.temps += 1;
        format!("_t{}", self.temps)
    }

    fn emit(&mut self, make: impl FnOnce(String) -> Instr) -> String {
        let dst = self.fresh();
        self.instrs.push(make(dst.clone()));
        dst
    }

    fn materialize(&mut self, v: Val) -> String {
        match v {
            Val::Var(name) => name,
            Val::Const(value) => self.emit(|dst| Instr::Const { dst, value }),
        }
    }

    fn scale(&mut self, factor: BigInt, v: Val) -> Val {
        match v {
            Val::Const(c) => Val::Const(factor * c),
            Val::Var(_) if factor.is_zero() => Val::Const(BigInt::zero()),
            Val::Var(a) if factor.is_one() => Val::Var(a),
            Val::Var(a) => Val::Var(self.emit(|dst| Instr::Scale { dst, factor, a })),
        }
    }

    fn add(&mut self, x: Val, y: Val) -> Val {
        match (x, y) {
            (Val::Const(a), Val::Const(b)) => Val::Const(a + b),
            (Val::Const(c), v) | (v, Val::Const(c)) if c.is_zero() => v,
            (x, y) => {
                let a = self.materialize(x);
                let b = self.materialize(y);
                Val::Var(self.emit(|dst| Instr::Add { dst, a, b }))
            }
        }
    }

    fn mul(&mut self, x: Val, y: Val) -> Val {
        match (x, y) {
            (Val::Const(a), Val::Const(b)) => Val::Const(a * b),
            (Val::Const(c), v) | (v, Val::Const(c)) => self.scale(c, v),
            (Val::Var(a), Val::Var(b)) => Val::Var(self.emit(|dst| Instr::Mul { dst, a, b })),
        }
    }

    fn pow(&mut self, base: Val, k: u32) -> Val {
        if k == 0 {
            return Val::Const(BigInt::one());
        }
        if let Val::Const(c) = base {
            return Val::Const(num_traits::pow(c, k as usize));
        }
        // Square-and-multiply from the top bit down.
        let mut acc = base.clone();
        for bit in (0..31 - k.leading_zeros()).rev() {
            acc = self.mul(acc.clone(), acc);
            if (k >> bit) & 1 == 1 {
                acc = self.mul(acc, base.clone());
            }
        }
        acc
    }

    fn lower(&mut self, e: &Expr) -> Val {
        match e {
            Expr::Int(n) => Val::Const(n.clone()),
            Expr::Var(v) => Val::Var(v.clone()),
            Expr::Neg(x) => {
                let x = self.lower(x);
                self.scale(-BigInt::one(), x)
            }
            Expr::Add(a, b) => {
                let (a, b) = (self.lower(a), self.lower(b));
                self.add(a, b)
            }
            Expr::Sub(a, b) => {
                let a = self.lower(a);
                let b = self.lower(b);
                let nb = self.scale(-BigInt::one(), b);
                self.add(a, nb)
            }
            Expr::Mul(a, b) => {
                let (a, b) = (self.lower(a), self.lower(b));
                self.mul(a, b)
            }
            Expr::Pow(a, k) => {
                let a = self.lower(a);
                self.pow(a, *k)
            }
        }
    }
}

/// Lowers every equation to instructions and one equality constraint.
/// Constant subexpressions are folded; multiplication by a literal becomes
/// `Scale`; powers use square-and-multiply.
pub fn lower_tac(sys: &SourceSystem) -> TacProgram {
    let mut l = Lowerer {
        instrs: Vec::new(),
        temps: 0,
    };
    let mut constraints = Vec::new();
    for eq in &sys.equations {
        let lhs = l.lower(&eq.lhs);
        let rhs = l.lower(&eq.rhs);
        let a = l.materialize(lhs);
        let b = l.materialize(rhs);
        constraints.push((a, b));
    }
    TacProgram {
        source_vars: sys.vars.clone(),
        instrs: l.instrs,
        constraints,
        temps: l.temps,
    }
}
