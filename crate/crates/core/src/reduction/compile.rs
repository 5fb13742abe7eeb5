use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::parse::SourceSystem;
use super::tac::{lower_tac, Instr, TacProgram};
use super::{ReductionError, Witness};
use crate::symbolic::{MPoly, PolyRing};
use crate::Rat;

/// Default gadget length.
pub const DEFAULT_M: usize = 5;

/// `Σ coeffs[x]·x + constant = 0`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearEq {
    pub coeffs: BTreeMap<String, BigInt>,
    pub constant: BigInt,
}

impl LinearEq {
    fn new() -> Self {
        Self::default()
    }

    fn term(mut self, c: impl Into<BigInt>, var: &str) -> Self {
        let c = c.into();
        let entry = self.coeffs.entry(var.into()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(var);
        }
        self
    }

    fn constant(mut self, c: impl Into<BigInt>) -> Self {
        self.constant += c.into();
        self
    }

    pub fn eval(&self, env: &Witness) -> Option<BigInt> {
        let mut acc = self.constant.clone();
        for (v, c) in &self.coeffs {
            acc += c * env.get(v)?;
        }
        Some(acc)
    }

    pub fn to_mpoly(&self, ring: &PolyRing) -> MPoly {
        let mut p = ring.constant(Rat::from_integer(self.constant.clone()));
        for (v, c) in &self.coeffs {
            p = p + ring.var(v).scale(&Rat::from_integer(c.clone()));
        }
        p
    }
}

impl fmt::Display for LinearEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.coeffs {
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}*{v}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)?;
        } else if self.constant.is_negative() {
            write!(f, " - {}", -&self.constant)?;
        } else if !self.constant.is_zero() {
            write!(f, " + {}", self.constant)?;
        }
        f.write_str(" = 0")
    }
}

/// `lhs = rhs²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareEq {
    pub lhs: String,
    pub rhs: String,
}

impl SquareEq {
    pub fn holds(&self, env: &Witness) -> Option<bool> {
        let r = env.get(&self.rhs)?;
        Some(*env.get(&self.lhs)? == r * r)
    }
}

impl fmt::Display for SquareEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}^2", self.lhs, self.rhs)
    }
}

/// How a variable's value is produced from earlier ones when a source
/// solution is lifted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum DefKind {
    /// `Σ c·x + constant`.
    Linear(Vec<(BigInt, String)>, BigInt),
    /// The square of a variable; pinned down by a gadget in the target.
    Square(String),
    /// `(plus − Σ minus)/2`, the polarization tie solved for the product.
    Half(String, [String; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Def {
    pub dst: String,
    pub kind: DefKind,
}

/// Linear equations plus squaring constraints `q = t²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquaringSystem {
    pub vars: Vec<String>,
    pub linear: Vec<LinearEq>,
    /// `(q, t)` meaning `q = t²`.
    pub squarings: Vec<(String, String)>,
    pub source_vars: Vec<String>,
    /// All introduced variables, from lowering and from elimination.
    pub temps: usize,
    pub multiplications: usize,
    pub(crate) defs: Vec<Def>,
}

impl SquaringSystem {
    pub fn holds(&self, env: &Witness) -> bool {
        self.linear.iter().all(|eq| eq.eval(env).is_some_and(|v| v.is_zero()))
            && self.squarings.iter().all(|(q, t)| {
                matches!((env.get(q), env.get(t)), (Some(q), Some(t)) if *q == t * t)
            })
    }

    /// Extends values of the source variables along the definitions.
    pub fn extend(&self, source: &Witness) -> Result<Witness, ReductionError> {
        let mut env = Witness::new();
        for v in &self.source_vars {
            let value = source
                .get(v)
                .ok_or_else(|| ReductionError::MissingVariable(v.clone()))?;
            env.insert(v.clone(), value.clone());
        }
        for def in &self.defs {
            let value = match &def.kind {
                DefKind::Linear(terms, c) => {
                    terms.iter().fold(c.clone(), |acc, (k, x)| acc + k * &env[x])
                }
                DefKind::Square(t) => &env[t] * &env[t],
                DefKind::Half(plus, [m1, m2]) => (&env[plus] - &env[m1] - &env[m2]) / 2,
            };
            env.insert(def.dst.clone(), value);
        }
        Ok(env)
    }
}

/// Replaces every `v := a·b` by `s = a + b`, `q_s = s²`, `q_a = a²`,
/// `q_b = b²` and `q_s − q_a − q_b − 2v = 0`. A square `v := a·a` becomes the
/// single constraint `v = a²`.
pub fn eliminate_mul(prog: &TacProgram) -> SquaringSystem {
    let mut counter = prog.temps;
    let mut fresh = |vars: &mut Vec<String>| {
        counter += 1;
        let name = format!("_t{counter}");
        vars.push(name.clone());
        name
    };
    let mut vars = prog.source_vars.clone();
    let mut linear = Vec::new();
    let mut squarings = Vec::new();
    let mut defs = Vec::new();
    let one = BigInt::one;
    let def_linear = |defs: &mut Vec<Def>, linear: &mut Vec<LinearEq>, dst: &str, terms: Vec<(BigInt, String)>, c: BigInt| {
        let mut eq = LinearEq::new().term(1, dst).constant(-&c);
        for (k, x) in &terms {
            eq = eq.term(-k, x);
        }
        linear.push(eq);
        defs.push(Def {
            dst: dst.into(),
            kind: DefKind::Linear(terms, c),
        });
    };

    for instr in &prog.instrs {
        match instr {
            Instr::Mul { .. } => {}
            _ => vars.push(instr.dst().into()),
        }
        match instr {
            Instr::Const { dst, value } => {
                def_linear(&mut defs, &mut linear, dst, vec![], value.clone());
            }
            Instr::Add { dst, a, b } => {
                def_linear(
                    &mut defs,
                    &mut linear,
                    dst,
                    vec![(one(), a.clone()), (one(), b.clone())],
                    BigInt::zero(),
                );
            }
            Instr::Scale { dst, factor, a } => {
                def_linear(&mut defs, &mut linear, dst, vec![(factor.clone(), a.clone())], BigInt::zero());
            }
            Instr::Mul { dst, a, b } if a == b => {
                vars.push(dst.clone());
                squarings.push((dst.clone(), a.clone()));
                defs.push(Def {
                    dst: dst.clone(),
                    kind: DefKind::Square(a.clone()),
                });
            }
            Instr::Mul { dst, a, b } => {
                let s = fresh(&mut vars);
                def_linear(
                    &mut defs,
                    &mut linear,
                    &s,
                    vec![(one(), a.clone()), (one(), b.clone())],
                    BigInt::zero(),
                );
                let mut square_of = |t: &str| {
                    let q = fresh(&mut vars);
                    squarings.push((q.clone(), t.into()));
                    defs.push(Def {
                        dst: q.clone(),
                        kind: DefKind::Square(t.into()),
                    });
                    q
                };
                let qs = square_of(&s);
                let qa = square_of(a);
                let qb = square_of(b);
                vars.push(dst.clone());
                linear.push(
                    LinearEq::new()
                        .term(1, &qs)
                        .term(-1, &qa)
                        .term(-1, &qb)
                        .term(-2, dst),
                );
                defs.push(Def {
                    dst: dst.clone(),
                    kind: DefKind::Half(qs, [qa, qb]),
                });
            }
        }
    }
    for (a, b) in &prog.constraints {
        linear.push(LinearEq::new().term(1, a).term(-1, b));
    }
    SquaringSystem {
        temps: vars.len() - prog.source_vars.len(),
        vars,
        linear,
        squarings,
        source_vars: prog.source_vars.clone(),
        multiplications: prog.multiplications(),
        defs,
    }
}

/// The second-difference gadget forcing `q = t²` through a length-`M`
/// sequence of squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gadget {
    pub t: String,
    pub q: String,
    pub us: Vec<String>,
    pub ws: Vec<String>,
    pub linear: Vec<LinearEq>,
    pub squares: Vec<SquareEq>,
}

impl Gadget {
    /// `w_i = t + i − 1`, `u_i = w_i²`.
    pub fn canonical_witness(&self, t: &BigInt) -> Witness {
        let mut env = Witness::new();
        for (i, (u, w)) in self.us.iter().zip(&self.ws).enumerate() {
            let wi = t + BigInt::from(i);
            env.insert(u.clone(), &wi * &wi);
            env.insert(w.clone(), wi);
        }
        env
    }

    pub fn holds(&self, env: &Witness) -> bool {
        self.linear.iter().all(|eq| eq.eval(env).is_some_and(|v| v.is_zero()))
            && self.squares.iter().all(|sq| sq.holds(env) == Some(true))
    }
}

/// Emits fresh `_u<k>`, `_w<k>` for `k = first..first+M` with `u_i = w_i²`,
/// `u_{i+1} − 2u_i + u_{i−1} = 2`, `q = u_1` and `u_2 − u_1 = 2t + 1`.
pub fn encode_square(t: &str, q: &str, m: usize, first: usize) -> Result<Gadget, ReductionError> {
    if m < 3 {
        return Err(ReductionError::GadgetTooShort(m));
    }
    let us: Vec<String> = (first..first + m).map(|k| format!("_u{k}")).collect();
    let ws: Vec<String> = (first..first + m).map(|k| format!("_w{k}")).collect();
    let squares = us
        .iter()
        .zip(&ws)
        .map(|(u, w)| SquareEq {
            lhs: u.clone(),
            rhs: w.clone(),
        })
        .collect();
    let mut linear: Vec<LinearEq> = (1..m - 1)
        .map(|i| {
            LinearEq::new()
                .term(1, &us[i + 1])
                .term(-2, &us[i])
                .term(1, &us[i - 1])
                .constant(-2)
        })
        .collect();
    linear.push(LinearEq::new().term(1, q).term(-1, &us[0]));
    linear.push(
        LinearEq::new()
            .term(1, &us[1])
            .term(-1, &us[0])
            .term(-2, t)
            .constant(-1),
    );
    Ok(Gadget {
        t: t.into(),
        q: q.into(),
        us,
        ws,
        linear,
        squares,
    })
}

/// Counters gathered while compiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompileStats {
    pub source_vars: usize,
    /// Variables introduced by lowering and by multiplication elimination.
    pub temps: usize,
    /// `Mul` instructions after lowering.
    pub multiplications: usize,
    /// Squaring constraints, one gadget each.
    pub squarings: usize,
    pub gadget_vars: usize,
    pub target_vars: usize,
}

impl CompileStats {
    /// `k + (2M+2)·S + T` with `S` counting squaring constraints.
    pub fn size_bound(&self, m: usize) -> usize {
        self.source_vars + (2 * m + 2) * self.squarings + self.temps
    }
}

/// A system of linear and pure-square equations over ℤ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetSystem {
    pub vars: Vec<String>,
    pub linear: Vec<LinearEq>,
    pub squares: Vec<SquareEq>,
    pub m: usize,
    pub stats: CompileStats,
    pub(crate) inner: SquaringSystem,
    pub(crate) gadgets: Vec<Gadget>,
}

impl TargetSystem {
    /// Tag for the direction that depends on every length-`M` Büchi
    /// sequence being trivial.
    pub fn conditional_tag(&self) -> String {
        format!("BP(Z,{})", self.m)
    }

    pub fn equation_count(&self) -> usize {
        self.linear.len() + self.squares.len()
    }

    /// Index of the first violated equation (linear ones first), or `None`
    /// when `env` satisfies everything. Missing variables count as a
    /// violation.
    pub fn first_violation(&self, env: &Witness) -> Option<usize> {
        if let Some(i) = self
            .linear
            .iter()
            .position(|eq| !eq.eval(env).is_some_and(|v| v.is_zero()))
        {
            return Some(i);
        }
        self.squares
            .iter()
            .position(|sq| sq.holds(env) != Some(true))
            .map(|i| i + self.linear.len())
    }

    pub fn is_solution(&self, env: &Witness) -> bool {
        self.first_violation(env).is_none()
    }

    pub fn gadgets(&self) -> &[Gadget] {
        &self.gadgets
    }

    pub fn squaring_system(&self) -> &SquaringSystem {
        &self.inner
    }

    /// Every equation as a polynomial `= 0` over the target variables.
    pub fn polynomials(&self) -> Vec<MPoly> {
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let ring = PolyRing::new(&names);
        let mut out: Vec<MPoly> = self.linear.iter().map(|eq| eq.to_mpoly(&ring)).collect();
        for sq in &self.squares {
            let r = ring.var(&sq.rhs);
            out.push(ring.var(&sq.lhs) - &r * &r);
        }
        out
    }
}

impl fmt::Display for TargetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# diagonal quadratic system, gadget length M = {}", self.m)?;
        writeln!(
            f,
            "# conditional: {} (target solutions project to source solutions if every length-{} Buchi sequence is trivial)",
            self.conditional_tag(),
            self.m
        )?;
        writeln!(f, "vars: {}", self.vars.join(", "))?;
        writeln!(f, "linear:")?;
        for eq in &self.linear {
            writeln!(f, "  {eq}")?;
        }
        writeln!(f, "squares:")?;
        for sq in &self.squares {
            writeln!(f, "  {sq}")?;
        }
        Ok(())
    }
}

/// Lowers, eliminates multiplication and encodes every squaring with a
/// gadget of length `m`.
pub fn compile(sys: &SourceSystem, m: usize) -> Result<TargetSystem, ReductionError> {
    if m < 3 {
        return Err(ReductionError::GadgetTooShort(m));
    }
    let inner = eliminate_mul(&lower_tac(sys));
    let mut vars = inner.vars.clone();
    let mut linear = inner.linear.clone();
    let mut squares = Vec::new();
    let mut gadgets = Vec::new();
    for (k, (q, t)) in inner.squarings.iter().enumerate() {
        let g = encode_square(t, q, m, k * m + 1)?;
        vars.extend(g.us.iter().cloned());
        vars.extend(g.ws.iter().cloned());
        linear.extend(g.linear.iter().cloned());
        squares.extend(g.squares.iter().cloned());
        gadgets.push(g);
    }
    let stats = CompileStats {
        source_vars: inner.source_vars.len(),
        temps: inner.temps,
        multiplications: inner.multiplications,
        squarings: inner.squarings.len(),
        gadget_vars: 2 * m * inner.squarings.len(),
        target_vars: vars.len(),
    };
    Ok(TargetSystem {
        vars,
        linear,
        squares,
        m,
        stats,
        inner,
        gadgets,
    })
}

/// A monomial that breaks the diagonal shape.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("equation {equation} contains the non-diagonal monomial {monomial}")]
pub struct DiagonalViolation {
    pub equation: usize,
    pub monomial: String,
}

/// Expands every equation and rejects any monomial of degree above two or
/// any degree-two monomial that is not a pure square.
pub fn validate_diagonal(target: &TargetSystem) -> Result<(), DiagonalViolation> {
    check_diagonal(&target.vars, &target.polynomials())
}

/// [`validate_diagonal`] on arbitrary polynomials over `vars`.
pub fn check_diagonal(vars: &[String], polys: &[MPoly]) -> Result<(), DiagonalViolation> {
    for (i, p) in polys.iter().enumerate() {
        for (exps, _) in p.terms() {
            let degree: u32 = exps.iter().sum();
            let support = exps.iter().filter(|&&e| e > 0).count();
            if degree > 2 || (degree == 2 && support != 1) {
                let monomial = exps
                    .iter()
                    .zip(vars)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                    .collect::<Vec<_>>()
                    .join("*");
                return Err(DiagonalViolation {
                    equation: i,
                    monomial,
                });
            }
        }
    }
    Ok(())
}

/// Lifts a source solution to a witness on every target variable.
pub fn translate_witness(
    sys: &SourceSystem,
    target: &TargetSystem,
    w: &Witness,
) -> Result<Witness, ReductionError> {
    if let Some(equation) = sys.first_violation(w)? {
        return Err(ReductionError::NotASolution { equation });
    }
    let mut env = target.inner.extend(w)?;
    for g in &target.gadgets {
        let t = env[&g.t].clone();
        env.extend(g.canonical_witness(&t));
    }
    env.retain(|k, _| target.vars.contains(k));
    if let Some(equation) = target.first_violation(&env) {
        return Err(ReductionError::LiftFailed { equation });
    }
    Ok(env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::parse::{env_from, parse};
    use crate::reduction::tac::lower_tac;
    use alloc::string::ToString;

    fn compiled(src: &str, m: usize) -> (SourceSystem, TargetSystem) {
        let sys = parse(src).unwrap();
        let target = compile(&sys, m).unwrap();
        (sys, target)
    }

    #[test]
    fn eliminate_examples() {
        let prog = lower_tac(&parse("x*y = 15").unwrap());
        let inner = eliminate_mul(&prog);
        assert_eq!(inner.squarings.len(), 3);
        let env = inner.extend(&env_from(&[("x", 3), ("y", 5)])).unwrap();
        // _t1 is the product, _t3.._t6 are s, q_s, q_a, q_b.
        let get = |k: &str| env[k].clone();
        assert_eq!(get("_t3"), BigInt::from(8));
        assert_eq!(get("_t4"), BigInt::from(64));
        assert_eq!(get("_t5"), BigInt::from(9));
        assert_eq!(get("_t6"), BigInt::from(25));
        assert_eq!(get("_t1"), BigInt::from(15));
        assert!(inner.holds(&env));

        let square = eliminate_mul(&lower_tac(&parse("x*x = 4").unwrap()));
        assert_eq!(square.squarings, [("_t1".to_string(), "x".to_string())]);

        let linear = eliminate_mul(&lower_tac(&parse("x + y = z; z = 2").unwrap()));
        assert!(linear.squarings.is_empty());
        assert_eq!(linear.multiplications, 0);
    }

    #[test]
    fn gadget_shape_and_witnesses() {
        let g = encode_square("t", "q", 5, 1).unwrap();
        assert_eq!(g.squares.len(), 5);
        assert_eq!(g.linear.len(), 3 + 2);
        assert_eq!(g.us.len() + g.ws.len(), 10);
        assert_eq!(encode_square("t", "q", 2, 1), Err(ReductionError::GadgetTooShort(2)));

        let mut env = g.canonical_witness(&BigInt::from(3));
        env.insert("t".into(), BigInt::from(3));
        env.insert("q".into(), BigInt::from(9));
        let us: Vec<BigInt> = g.us.iter().map(|u| env[u].clone()).collect();
        assert_eq!(us, [9, 16, 25, 36, 49].map(BigInt::from));
        let ws: Vec<BigInt> = g.ws.iter().map(|w| env[w].clone()).collect();
        assert_eq!(ws, [3, 4, 5, 6, 7].map(BigInt::from));
        assert!(g.holds(&env));
        env.insert("q".into(), BigInt::from(10));
        assert!(!g.holds(&env));

        let zero = g.canonical_witness(&BigInt::zero());
        let us: Vec<BigInt> = g.us.iter().map(|u| zero[u].clone()).collect();
        assert_eq!(us, [0, 1, 4, 9, 16].map(BigInt::from));
    }

    #[test]
    fn canonical_gadget_witness_for_small_t() {
        for m in [3, 4, 5, 8] {
            let g = encode_square("t", "q", m, 1).unwrap();
            for t in -30i64..=30 {
                let mut env = g.canonical_witness(&BigInt::from(t));
                env.insert("t".into(), BigInt::from(t));
                env.insert("q".into(), BigInt::from(t * t));
                assert!(g.holds(&env), "m={m} t={t}");
            }
        }
    }

    #[test]
    fn translate_examples() {
        let (sys, target) = compiled("x*x = 4", 5);
        assert_eq!(target.stats.source_vars, 1);
        let w = translate_witness(&sys, &target, &env_from(&[("x", 2)])).unwrap();
        let us: Vec<BigInt> = target.gadgets[0].us.iter().map(|u| w[u].clone()).collect();
        assert_eq!(us, [4, 9, 16, 25, 36].map(BigInt::from));
        assert_eq!(w.len(), target.vars.len());
        assert_eq!(
            translate_witness(&sys, &target, &env_from(&[("x", 1)])),
            Err(ReductionError::NotASolution { equation: 0 })
        );

        let (sys, target) = compiled("x*y = 6", 5);
        let w = translate_witness(&sys, &target, &env_from(&[("x", 2), ("y", 3)])).unwrap();
        let inner = target.squaring_system();
        let (qs, s) = &inner.squarings[0];
        let (qa, _) = &inner.squarings[1];
        let (qb, _) = &inner.squarings[2];
        assert_eq!(w[s], BigInt::from(5));
        assert_eq!(w[qs], BigInt::from(25));
        assert_eq!(w[qa], BigInt::from(4));
        assert_eq!(w[qb], BigInt::from(9));
    }

    #[test]
    fn target_is_diagonal_and_within_size_bound() {
        for src in [
            "x*x = 4",
            "x*y = 6; x + y = 5",
            "x^5 - 3*x*y*z + (y - 2)^3 = 11",
            "x = x + 1",
            "2 = 2",
        ] {
            for m in [3, 5, 8] {
                let (_, t) = compiled(src, m);
                validate_diagonal(&t).unwrap();
                let s = t.stats;
                assert_eq!(s.target_vars, t.vars.len());
                assert_eq!(s.target_vars, s.source_vars + s.temps + 2 * m * s.squarings);
                assert!(s.target_vars <= s.size_bound(m));
            }
        }
    }

    #[test]
    fn validator_rejects_cross_terms() {
        let vars: Vec<String> = ["x", "y"].iter().map(|v| v.to_string()).collect();
        let ring = PolyRing::new(&["x", "y"]);
        let (x, y) = (ring.var("x"), ring.var("y"));
        check_diagonal(&vars, &[&x * &x - &y + ring.int(3)]).unwrap();
        let err = check_diagonal(&vars, &[&x * &x, &x * &y - ring.int(1)]).unwrap_err();
        assert_eq!(err.equation, 1);
        assert_eq!(err.monomial, "x*y");
        let err = check_diagonal(&vars, &[x.pow(3)]).unwrap_err();
        assert_eq!(err.monomial, "x^3");
    }

    #[test]
    fn compilation_is_deterministic() {
        let src = "x*y + y^3 = 7; x - 2*y = 1";
        let a = compiled(src, 5).1.to_string();
        let b = compiled(src, 5).1.to_string();
        assert_eq!(a, b);
        assert!(a.contains("BP(Z,5)"));
    }

    #[test]
    fn linear_display() {
        let eq = LinearEq::new().term(1, "x").term(-2, "y").constant(-4);
        assert_eq!(eq.to_string(), "x - 2*y - 4 = 0");
        assert_eq!(LinearEq::new().term(-1, "a").to_string(), "-a = 0");
        assert_eq!(LinearEq::new().constant(3).to_string(), "3 = 0");
        assert!(LinearEq::new().term(1, "a").term(-1, "a").coeffs.is_empty());
    }
}
