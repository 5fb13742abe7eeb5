use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::compile::{translate_witness, DefKind, TargetSystem};
use super::parse::SourceSystem;
use super::{ReductionError, Witness};
use crate::exact::is_square_int;

/// Most source assignments a single check may enumerate.
pub const MAX_ASSIGNMENTS: u64 = 10_000_000;

/// Largest `|2t + 1|` whose divisors are enumerated by the gadget check.
pub const MAX_GADGET_TARGET: u64 = 1 << 40;

/// Values of `u_1` over all integer solutions of the length-`m` gadget for
/// a fixed `t`, sorted. `None` when `|2t+1|` is above
/// [`MAX_GADGET_TARGET`].
///
/// Every solution has `w_2² − w_1² = 2t + 1`, so `(w_2 − w_1, w_2 + w_1)`
/// runs over the factorizations of that odd number.
pub fn gadget_values(t: &BigInt, m: usize) -> Option<Vec<BigInt>> {
    let n: BigInt = 2 * t + 1;
    let abs = n.abs().to_u64().filter(|&a| a <= MAX_GADGET_TARGET)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= abs {
        if abs % d == 0 {
            for a in [d, abs / d] {
                for sign in [1i64, -1] {
                    // (w2 − w1)(w2 + w1) = n with w2 − w1 = ±a.
                    let diff = BigInt::from(a) * sign;
                    let sum = &n / &diff;
                    let w1: BigInt = (&sum - &diff) / 2;
                    let w2: BigInt = (&sum + &diff) / 2;
                    if gadget_extends(&w1, &w2, m) {
                        out.push(&w1 * &w1);
                    }
                }
            }
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    Some(out)
}

fn gadget_extends(w1: &BigInt, w2: &BigInt, m: usize) -> bool {
    let (mut a, mut b) = (w1 * w1, w2 * w2);
    for _ in 2..m {
        let c: BigInt = 2 * &b - &a + 2;
        if !is_square_int(&c) {
            return false;
        }
        a = b;
        b = c;
    }
    true
}

/// A gadget solution found by brute force.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSolution {
    pub t: BigInt,
    pub ws: Vec<i64>,
}

impl GadgetSolution {
    pub fn q(&self) -> BigInt {
        BigInt::from(self.ws[0]) * self.ws[0]
    }

    pub fn is_canonical(&self) -> bool {
        self.q() == &self.t * &self.t
    }
}

/// Every solution of the length-`m` gadget with all `|w_i| ≤ bound`, by
/// trying each `w_i` in the range against the second-difference equation.
pub fn gadget_solutions_bruteforce(m: usize, bound: i64) -> Vec<GadgetSolution> {
    fn extend(ws: &mut Vec<i64>, m: usize, bound: i64, out: &mut Vec<GadgetSolution>) {
        let k = ws.len();
        if k == m {
            let diff = ws[1] * ws[1] - ws[0] * ws[0];
            // u_2 − u_1 = 2t + 1 needs an odd difference.
            if diff.rem_euclid(2) == 1 {
                out.push(GadgetSolution {
                    t: BigInt::from((diff - 1) / 2),
                    ws: ws.clone(),
                });
            }
            return;
        }
        for w in -bound..=bound {
            if k >= 2 {
                let (a, b) = (ws[k - 2], ws[k - 1]);
                if w * w - 2 * b * b + a * a != 2 {
                    continue;
                }
            }
            ws.push(w);
            extend(ws, m, bound, out);
            ws.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(m), m, bound, &mut out);
    out
}

/// Outcome of [`bounded_equisat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquisatReport {
    pub box_size: u64,
    pub m: usize,
    pub assignments: u64,
    /// Source solutions in the box, in enumeration order.
    pub solutions: Vec<Witness>,
    /// Solutions whose translated witness satisfies the target.
    pub lifted: usize,
    /// Non-solutions that nevertheless extend to a target solution.
    pub spurious: Vec<Witness>,
    /// Assignments whose gadget values were too large to enumerate.
    pub inconclusive: u64,
}

impl EquisatReport {
    pub fn passed(&self) -> bool {
        self.lifted == self.solutions.len() && self.spurious.is_empty()
    }

    /// Concatenates reports over consecutive index ranges.
    pub fn merge(box_size: u64, m: usize, parts: impl IntoIterator<Item = EquisatReport>) -> Self {
        let mut out = EquisatReport {
            box_size,
            m,
            assignments: 0,
            solutions: Vec::new(),
            lifted: 0,
            spurious: Vec::new(),
            inconclusive: 0,
        };
        for p in parts {
            out.assignments += p.assignments;
            out.solutions.extend(p.solutions);
            out.lifted += p.lifted;
            out.spurious.extend(p.spurious);
            out.inconclusive += p.inconclusive;
        }
        out
    }
}

/// Number of assignments in `[−box, box]^k`, checked against
/// [`MAX_ASSIGNMENTS`].
pub fn assignment_count(sys: &SourceSystem, box_size: u64) -> Result<u64, ReductionError> {
    if box_size == 0 {
        return Err(ReductionError::EmptyBox);
    }
    let side = 2 * box_size + 1;
    let mut total = 1u64;
    for _ in &sys.vars {
        total = total
            .checked_mul(side)
            .filter(|&t| t <= MAX_ASSIGNMENTS)
            .ok_or(ReductionError::BoxTooLarge {
                box_size,
                vars: sys.vars.len(),
                limit: MAX_ASSIGNMENTS,
            })?;
    }
    Ok(total)
}

fn assignment(sys: &SourceSystem, box_size: u64, mut index: u64) -> Witness {
    let side = 2 * box_size + 1;
    let mut values = vec![0i64; sys.vars.len()];
    for slot in values.iter_mut().rev() {
        *slot = (index % side) as i64 - box_size as i64;
        index /= side;
    }
    sys.vars
        .iter()
        .cloned()
        .zip(values.into_iter().map(BigInt::from))
        .collect()
}

/// Checks both directions on every assignment in `[−box, box]^k`.
///
/// Forward: each source solution is lifted and the lift is verified against
/// the target. Backward: for each assignment, every target solution that
/// projects onto it is explored exactly. Gadgets are resolved through the
/// factorizations of `2t + 1`, so a non-solution that extends is reported
/// as spurious.
pub fn bounded_equisat(
    sys: &SourceSystem,
    target: &TargetSystem,
    box_size: u64,
) -> Result<EquisatReport, ReductionError> {
    let total = assignment_count(sys, box_size)?;
    bounded_equisat_range(sys, target, box_size, 0..total)
}

/// [`bounded_equisat`] over the assignments with indices in `range`, in
/// lexicographic order with the first variable most significant.
pub fn bounded_equisat_range(
    sys: &SourceSystem,
    target: &TargetSystem,
    box_size: u64,
    range: Range<u64>,
) -> Result<EquisatReport, ReductionError> {
    let total = assignment_count(sys, box_size)?;
    let range = range.start.min(total)..range.end.min(total);
    let mut report = EquisatReport::merge(box_size, target.m, []);
    let mut cache = BTreeMap::new();
    for index in range {
        let w = assignment(sys, box_size, index);
        report.assignments += 1;
        let is_solution = sys.is_solution(&w)?;
        if is_solution {
            if translate_witness(sys, target, &w).is_ok() {
                report.lifted += 1;
            }
            report.solutions.push(w);
            continue;
        }
        match extends_to_target(target, &w, &mut cache)? {
            Some(true) => report.spurious.push(w),
            Some(false) => {}
            None => report.inconclusive += 1,
        }
    }
    Ok(report)
}

/// Whether some target solution restricts to `w`; `None` when a gadget was
/// out of range.
fn extends_to_target(
    target: &TargetSystem,
    w: &Witness,
    cache: &mut BTreeMap<BigInt, Option<Vec<BigInt>>>,
) -> Result<Option<bool>, ReductionError> {
    let inner = target.squaring_system();
    let mut env = Witness::new();
    for v in &inner.source_vars {
        let value = w
            .get(v)
            .ok_or_else(|| ReductionError::MissingVariable(v.clone()))?;
        env.insert(v.clone(), value.clone());
    }
    let mut inconclusive = false;
    let found = search_defs(target, 0, &mut env, cache, &mut inconclusive);
    Ok(if found {
        Some(true)
    } else if inconclusive {
        None
    } else {
        Some(false)
    })
}

fn search_defs(
    target: &TargetSystem,
    k: usize,
    env: &mut Witness,
    cache: &mut BTreeMap<BigInt, Option<Vec<BigInt>>>,
    inconclusive: &mut bool,
) -> bool {
    let inner = target.squaring_system();
    let Some(def) = inner.defs.get(k) else {
        return inner
            .linear
            .iter()
            .all(|eq| eq.eval(env).is_some_and(|v| v.is_zero()));
    };
    let candidates = match &def.kind {
        DefKind::Linear(terms, c) => {
            vec![terms.iter().fold(c.clone(), |acc, (k, x)| acc + k * &env[x])]
        }
        DefKind::Half(plus, [m1, m2]) => {
            let twice = &env[plus] - &env[m1] - &env[m2];
            if twice.is_odd() {
                return false;
            }
            vec![twice / 2]
        }
        DefKind::Square(t) => {
            let t = env[t].clone();
            match cache
                .entry(t.clone())
                .or_insert_with(|| gadget_values(&t, target.m))
            {
                Some(values) => values.clone(),
                None => {
                    *inconclusive = true;
                    return false;
                }
            }
        }
    };
    for value in candidates {
        env.insert(def.dst.clone(), value);
        if search_defs(target, k + 1, env, cache, inconclusive) {
            return true;
        }
    }
    env.remove(&def.dst);
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::compile::compile;
    use crate::reduction::parse::{env_from, parse};
    use crate::sequences::search;
    use alloc::string::ToString;

    fn check(src: &str, m: usize, b: u64) -> EquisatReport {
        let sys = parse(src).unwrap();
        let target = compile(&sys, m).unwrap();
        bounded_equisat(&sys, &target, b).unwrap()
    }

    #[test]
    fn equisat_examples() {
        let r = check("x*x = 4", 5, 10);
        assert_eq!(r.solutions, [env_from(&[("x", -2)]), env_from(&[("x", 2)])]);
        assert_eq!(r.lifted, 2);
        assert!(r.passed());
        assert_eq!(r.assignments, 21);

        let r = check("x*x = 3", 5, 10);
        assert!(r.solutions.is_empty() && r.passed());

        let r = check("x = x + 1", 5, 10);
        assert!(r.solutions.is_empty() && r.passed());

        let r = check("x*y = 6; x + y = 5", 5, 10);
        assert_eq!(
            r.solutions,
            [env_from(&[("x", 2), ("y", 3)]), env_from(&[("x", 3), ("y", 2)])]
        );
        assert!(r.passed());
    }

    #[test]
    fn short_gadget_lets_a_nontrivial_sequence_through() {
        // 0², 7², 10² has second difference 2, so with M = 3 the gadget for
        // t = 24 also admits q = 0.
        assert_eq!(
            gadget_values(&BigInt::from(24), 3).unwrap(),
            [BigInt::zero(), BigInt::from(576)]
        );
        let r = check("x*x = 0", 3, 24);
        assert_eq!(r.spurious, [env_from(&[("x", 24)])]);
        assert!(!r.passed());
        assert!(check("x*x = 0", 5, 24).passed());
    }

    #[test]
    fn gadget_values_are_squares_of_t_for_m5() {
        for t in -300i64..=300 {
            let vals = gadget_values(&BigInt::from(t), 5).unwrap();
            assert_eq!(vals, [BigInt::from(t * t)], "t={t}");
        }
    }

    #[test]
    fn brute_force_gadget_solutions_are_canonical_at_m5() {
        let sols = gadget_solutions_bruteforce(5, 40);
        assert!(!sols.is_empty());
        assert!(sols.iter().all(GadgetSolution::is_canonical));
        // Each canonical run w_i = ±(ν + i) with |w_i| ≤ 40 is present.
        assert!(sols.iter().any(|s| s.ws == [3, 4, 5, 6, 7]));
        assert!(search(5, 40).unwrap().is_empty());

        // At M = 3 the same enumeration meets the nontrivial (0, 7, 10).
        let short = gadget_solutions_bruteforce(3, 40);
        assert!(short.iter().any(|s| s.ws == [0, 7, 10] && !s.is_canonical()));
    }

    #[test]
    fn partition_does_not_change_the_report() {
        let sys = parse("x*y - 2*z = 4; z + x = y").unwrap();
        let target = compile(&sys, 5).unwrap();
        let whole = bounded_equisat(&sys, &target, 4).unwrap();
        let total = assignment_count(&sys, 4).unwrap();
        let parts = (0..total)
            .step_by(100)
            .map(|s| bounded_equisat_range(&sys, &target, 4, s..(s + 100).min(total)).unwrap());
        assert_eq!(EquisatReport::merge(4, 5, parts), whole);
        assert!(whole.passed());
    }

    #[test]
    fn resource_guard() {
        let sys = parse("a + b + c + d + e = 0").unwrap();
        let target = compile(&sys, 5).unwrap();
        assert!(matches!(
            bounded_equisat(&sys, &target, 50),
            Err(ReductionError::BoxTooLarge { .. })
        ));
        assert_eq!(bounded_equisat(&sys, &target, 0), Err(ReductionError::EmptyBox));
    }

    fn arb_expr() -> impl proptest::strategy::Strategy<Value = String> {
        use proptest::prelude::*;
        let leaf = prop_oneof![
            (-3i64..=3).prop_map(|n| alloc::format!("{n}")),
            Just("x".to_string()),
            Just("y".to_string()),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| alloc::format!("({a} + {b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| alloc::format!("({a} - {b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| alloc::format!("({a})*({b})")),
                (inner, 0u32..3).prop_map(|(a, k)| alloc::format!("({a})^{k}")),
            ]
        })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn random_systems_compile_soundly(a in arb_expr(), b in arb_expr()) {
            let src = alloc::format!("{a} = {b}");
            let sys = parse(&src).unwrap();
            let target = compile(&sys, 5).unwrap();
            crate::reduction::validate_diagonal(&target).unwrap();
            let s = target.stats;
            proptest::prop_assert!(s.target_vars <= s.size_bound(5));
            let r = bounded_equisat(&sys, &target, 3).unwrap();
            proptest::prop_assert_eq!(r.lifted, r.solutions.len());
            proptest::prop_assert!(r.spurious.is_empty());
        }
    }
}
