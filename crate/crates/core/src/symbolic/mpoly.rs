use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::upoly::{fmt_rat, forward_owned_binop};
use super::SymbolicError;
use crate::Rat;

/// A fixed, ordered list of variable names. Polynomials built from the same
/// ring can be combined; mixing rings is a programming error.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Arc<[String]>,
}

impl PolyRing {
    pub fn new(names: &[&str]) -> Self {
        PolyRing {
            vars: names.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn index(&self, name: &str) -> Result<usize, SymbolicError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| SymbolicError::UnknownVariable(name.to_string()))
    }

    pub fn zero(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: Rat) -> MPoly {
        let mut p = self.zero();
        if !c.is_zero() {
            p.terms.insert(vec![0; self.vars.len()], c);
        }
        p
    }

    pub fn int(&self, c: i64) -> MPoly {
        self.constant(Rat::from_integer(c.into()))
    }

    /// The polynomial consisting of the single variable `name`.
    ///
    /// # Panics
    /// If `name` is not one of the ring's variables.
    pub fn var(&self, name: &str) -> MPoly {
        self.try_var(name).expect("variable belongs to the ring")
    }

    pub fn try_var(&self, name: &str) -> Result<MPoly, SymbolicError> {
        let i = self.index(name)?;
        let mut exps = vec![0; self.vars.len()];
        exps[i] = 1;
        let mut p = self.zero();
        p.terms.insert(exps, Rat::one());
        Ok(p)
    }
}

/// Sparse multivariate polynomial over ℚ: exponent vector ↦ nonzero
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn ring(&self) -> PolyRing {
        PolyRing {
            vars: self.vars.clone(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn same_ring(&self, other: &MPoly) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable lists"
        );
    }

    fn insert(terms: &mut BTreeMap<Vec<u32>, Rat>, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let sum = match terms.remove(&exps) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            terms.insert(exps, sum);
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        let mut out = self.ring().zero();
        if c.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v * c))
            .collect();
        out
    }

    pub fn pow(&self, mut exp: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = self.ring().int(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces every occurrence of `name` by `value`.
    pub fn substitute(&self, name: &str, value: &MPoly) -> Result<MPoly, SymbolicError> {
        self.check_compatible(value)?;
        let i = self.ring().index(name)?;
        let ring = self.ring();
        let mut out = ring.zero();
        for (exps, c) in &self.terms {
            let mut rest = exps.clone();
            let e = core::mem::replace(&mut rest[i], 0);
            let mut mono = ring.zero();
            mono.terms.insert(rest, c.clone());
            out = &out + &(&mono * &value.pow(e));
        }
        Ok(out)
    }

    /// Rewrites with the relation `name² = value`, so every power of `name`
    /// ends up with exponent 0 or 1. With `value = 1` this imposes `α² = 1`.
    pub fn reduce_square(&self, name: &str, value: &MPoly) -> Result<MPoly, SymbolicError> {
        self.check_compatible(value)?;
        let i = self.ring().index(name)?;
        let ring = self.ring();
        let mut out = ring.zero();
        for (exps, c) in &self.terms {
            let mut rest = exps.clone();
            let e = rest[i];
            rest[i] = e % 2;
            let mut mono = ring.zero();
            mono.terms.insert(rest, c.clone());
            out = &out + &(&mono * &value.pow(e / 2));
        }
        Ok(out)
    }

    /// Evaluates at `values`, given in the ring's variable order.
    pub fn eval(&self, values: &[Rat]) -> Result<Rat, SymbolicError> {
        if values.len() != self.vars.len() {
            return Err(SymbolicError::ArityMismatch {
                expected: self.vars.len(),
                found: values.len(),
            });
        }
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in values.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    fn check_compatible(&self, other: &MPoly) -> Result<(), SymbolicError> {
        if self.vars != other.vars {
            return Err(SymbolicError::ArityMismatch {
                expected: self.vars.len(),
                found: other.vars.len(),
            });
        }
        Ok(())
    }
}

/// True iff `lhs − rhs` is the zero polynomial. Both sides must be over the
/// same variable list.
pub fn mpoly_identity_equal(lhs: &MPoly, rhs: &MPoly) -> Result<bool, SymbolicError> {
    lhs.check_compatible(rhs)?;
    Ok((lhs - rhs).is_zero())
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        self.same_ring(rhs);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            MPoly::insert(&mut terms, e.clone(), c.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        self.same_ring(rhs);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                MPoly::insert(&mut terms, exps, ca * cb);
            }
        }
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        -&self
    }
}

forward_owned_binop!(MPoly, Add, add);
forward_owned_binop!(MPoly, Sub, sub);
forward_owned_binop!(MPoly, Mul, mul);

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (exps, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let constant = exps.iter().all(|&e| e == 0);
            let mut sep = false;
            if constant || !abs.is_one() {
                fmt_rat(f, &abs)?;
                sep = true;
            }
            for (name, &e) in self.vars.iter().zip(exps) {
                if e == 0 {
                    continue;
                }
                if sep {
                    f.write_str("*")?;
                }
                sep = true;
                if e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_identity() {
        let r = PolyRing::new(&["x", "y"]);
        let (x, y) = (r.var("x"), r.var("y"));
        let lhs = (&x + &y).pow(2);
        let rhs = &(&x * &x) + &(&(&r.int(2) * &x) * &y) + &y * &y;
        assert!(mpoly_identity_equal(&lhs, &rhs).unwrap());
        let xx = &x * &x;
        assert!(!mpoly_identity_equal(&(&xx + &r.int(1)), &xx).unwrap());
    }

    #[test]
    fn square_root_factorization_modulo_alpha_squared() {
        // (a + f)² − (αf + b)² = (a − αb)(a + αb + 2f) once α² = 1.
        let r = PolyRing::new(&["a", "f", "b", "alpha"]);
        let (a, f, b, al) = (r.var("a"), r.var("f"), r.var("b"), r.var("alpha"));
        let lhs = (&a + &f).pow(2) - (&al * &f + &b).pow(2);
        let rhs = (&a - &al * &b) * (&a + &al * &b + r.int(2) * &f);
        let one = r.int(1);
        let lhs = lhs.reduce_square("alpha", &one).unwrap();
        let rhs = rhs.reduce_square("alpha", &one).unwrap();
        assert!(mpoly_identity_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let r2 = PolyRing::new(&["x", "y"]);
        let r1 = PolyRing::new(&["x"]);
        assert!(matches!(
            mpoly_identity_equal(&r2.var("x"), &r1.var("x")),
            Err(SymbolicError::ArityMismatch { .. })
        ));
        assert!(matches!(r1.try_var("q"), Err(SymbolicError::UnknownVariable(_))));
    }

    #[test]
    fn substitution() {
        let r = PolyRing::new(&["x", "y"]);
        let (x, y) = (r.var("x"), r.var("y"));
        // x² + y with x := y − 1 gives y² − y + 1.
        let p = &x * &x + &y;
        let s = p.substitute("x", &(&y - &r.int(1))).unwrap();
        assert_eq!(s, &y * &y - &y + r.int(1));
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        let ring = PolyRing::new(&["x", "y", "w"]);
        prop::collection::vec(((0u32..=4, 0u32..=4, 0u32..=4), -5i64..=5), 0..6).prop_map(
            move |terms| {
                let mut p = ring.zero();
                for ((a, b, c), k) in terms {
                    let mono = &(&ring.var("x").pow(a) * &ring.var("y").pow(b)) * &ring.var("w").pow(c);
                    p = &p + &(&mono * &ring.int(k));
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }
    }
}
