//! Exact p-adic Nevanlinna functions for polynomials and rational functions
//! over ℚ viewed inside ℂ_p.
//!
//! Radii are written `r = p^ρ` with `ρ ∈ ℚ` and every logarithm is taken to
//! base `p`, so Gauss norms, counting functions and proximity functions are
//! all exact rationals. Zeros are located through the Newton polygon.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::exact::{int_rat, vp, ExactError, Prime};
use crate::symbolic::{RatFunc, UPoly};
use crate::Rat;

/// `ρ` with `r = p^ρ`.
pub type LogRadius = Rat;

/// Smallest number of square values that forces a monic quadratic over the
/// p-adic meromorphic functions to be constant or a square.
pub const MEROMORPHIC_SQUARE_NODES: usize = 35;

/// Largest admissible length of a nontrivial system `h_j² = (a_j + f)² − g`
/// in the meromorphic setting; one less than [`MEROMORPHIC_SQUARE_NODES`].
pub const MEROMORPHIC_MAX_LENGTH: usize = 34;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NevanlinnaError {
    #[error(transparent)]
    Prime(#[from] ExactError),
    #[error("the zero function has no Gauss norm or zero count")]
    ZeroFunction,
    #[error("f equals the target identically")]
    DegenerateTarget,
    #[error("need at least {0} radii")]
    TooFewRadii(usize),
    #[error("f must be non-constant")]
    ConstantFunction,
    #[error("need at least one target")]
    NoTargets,
    #[error("target {0} is listed twice")]
    DuplicateTarget(Rat),
    #[error("log|f|_r − N(r,f,0) + N(r,f,∞) changes value at ρ = {rho}")]
    PjfMismatch { rho: Rat },
}

/// Where a counting or proximity function looks: zeros, poles, or the
/// points where `f = a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Target {
    Zero,
    Infinity,
    Value(Rat),
}

/// One edge of a Newton polygon. `slope` is the slope of the lower convex
/// hull of `(k, v_p(a_k))`; the `length` roots on this edge all have
/// valuation `−slope`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonSegment {
    pub slope: Rat,
    pub length: u64,
}

impl NewtonSegment {
    pub fn root_valuation(&self) -> Rat {
        -&self.slope
    }
}

/// Newton polygon with the roots at the origin split off. Slopes strictly
/// increase, so root valuations strictly decrease along the list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    pub order_at_zero: u64,
    pub segments: Vec<NewtonSegment>,
}

impl NewtonPolygon {
    /// Log-radii `ρ = −v` at which a root of valuation `v` enters `B[p^ρ]`,
    /// in increasing order.
    pub fn breakpoints(&self) -> Vec<Rat> {
        self.segments.iter().map(|s| s.slope.clone()).collect()
    }

    /// Number of nonzero roots with multiplicity.
    pub fn nonzero_roots(&self) -> u64 {
        self.segments.iter().map(|s| s.length).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: Prime,
}

/// Per-radius values of a theorem check together with where the values
/// stop changing shape. `defects` pairs each grid radius with its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmtReport {
    pub defects: Vec<(Rat, Rat)>,
    pub spread: Rat,
    /// Beyond this radius the defect is affine in `ρ`.
    pub settle_rho: Rat,
    pub tail_slope: Rat,
    pub tail_value: Rat,
    /// Tail slope is zero and every grid point past `settle_rho` already
    /// sits on the tail value.
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmtReport {
    /// `(ρ, Σ m(r,f,a_i) − N(r,f,∞))` on the grid.
    pub values: Vec<(Rat, Rat)>,
    pub sup: Rat,
    pub settle_rho: Rat,
    pub tail_slope: Rat,
    /// The tail slope is nonpositive, so the grid supremum is not overtaken
    /// by linear growth past `settle_rho`.
    pub bounded: bool,
}

fn positive_part(x: Rat) -> Rat {
    if x.is_negative() {
        Rat::zero()
    } else {
        x
    }
}

impl PadicContext {
    pub fn new(p: u64) -> Result<Self, NevanlinnaError> {
        Ok(PadicContext { p: Prime::new(p)? })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// `log_p |h|_r = max_k (−v_p(a_k) + kρ)`.
    pub fn gauss_log_norm(&self, h: &UPoly, rho: &LogRadius) -> Result<Rat, NevanlinnaError> {
        h.coeffs()
            .iter()
            .enumerate()
            .filter_map(|(k, a)| {
                let v = vp(a, self.p).finite()?;
                Some(int_rat(-v) + rho * int_rat(k as i64))
            })
            .max()
            .ok_or(NevanlinnaError::ZeroFunction)
    }

    /// `log_p |f|_r = log_p |num|_r − log_p |den|_r`.
    pub fn ratfunc_log_norm(&self, f: &RatFunc, rho: &LogRadius) -> Result<Rat, NevanlinnaError> {
        Ok(self.gauss_log_norm(f.num(), rho)? - self.gauss_log_norm(f.den(), rho)?)
    }

    pub fn newton_polygon(&self, h: &UPoly) -> Result<NewtonPolygon, NevanlinnaError> {
        let order = h.order_at_zero().ok_or(NevanlinnaError::ZeroFunction)?;
        let points: Vec<(i64, i64)> = h
            .coeffs()
            .iter()
            .enumerate()
            .skip(order)
            .filter_map(|(k, a)| vp(a, self.p).finite().map(|v| (k as i64, v)))
            .collect();
        // Lower hull by monotone chain; points are already sorted by k.
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for &pt in &points {
            while hull.len() >= 2 {
                let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (a.0 - o.0) as i128 * (pt.1 - o.1) as i128
                    - (a.1 - o.1) as i128 * (pt.0 - o.0) as i128;
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let dx = w[1].0 - w[0].0;
                NewtonSegment {
                    slope: Rat::new((w[1].1 - w[0].1).into(), dx.into()),
                    length: dx as u64,
                }
            })
            .collect();
        Ok(NewtonPolygon {
            order_at_zero: order as u64,
            segments,
        })
    }

    /// `n(r, h, 0)`: zeros of `h` in the closed ball `|z|_p ≤ p^ρ`, with
    /// multiplicity.
    pub fn count_zeros(&self, h: &UPoly, rho: &LogRadius) -> Result<u64, NevanlinnaError> {
        let poly = self.newton_polygon(h)?;
        let inside: u64 = poly
            .segments
            .iter()
            .filter(|s| s.root_valuation() >= -rho)
            .map(|s| s.length)
            .sum();
        Ok(poly.order_at_zero + inside)
    }

    /// `N(r, h, 0) = n(0)·ρ + Σ_{c ≠ 0} max(0, ρ + v_p(c))` over the roots
    /// `c` of `h`, which is the integral definition evaluated in base `p`.
    pub fn counting_n(&self, h: &UPoly, rho: &LogRadius) -> Result<Rat, NevanlinnaError> {
        let poly = self.newton_polygon(h)?;
        let mut total = int_rat(poly.order_at_zero as i64) * rho;
        for s in &poly.segments {
            total += positive_part(rho + s.root_valuation()) * int_rat(s.length as i64);
        }
        Ok(total)
    }

    /// The polynomial whose zeros `target` counts: the numerator of `f − a`
    /// or, for poles, the denominator.
    fn target_poly(f: &RatFunc, target: &Target) -> Result<UPoly, NevanlinnaError> {
        match target {
            Target::Zero => Self::target_poly(f, &Target::Value(Rat::zero())),
            Target::Infinity => Ok(f.den().clone()),
            Target::Value(a) => {
                let h = f.num() - &f.den().scale(a);
                if h.is_zero() {
                    return Err(if a.is_zero() {
                        NevanlinnaError::ZeroFunction
                    } else {
                        NevanlinnaError::DegenerateTarget
                    });
                }
                Ok(h)
            }
        }
    }

    /// `N(r, f, target)`.
    pub fn height_n(&self, f: &RatFunc, target: &Target, rho: &LogRadius) -> Result<Rat, NevanlinnaError> {
        self.counting_n(&Self::target_poly(f, target)?, rho)
    }

    /// `n(r, f, target)`.
    pub fn count(&self, f: &RatFunc, target: &Target, rho: &LogRadius) -> Result<u64, NevanlinnaError> {
        self.count_zeros(&Self::target_poly(f, target)?, rho)
    }

    /// `∫ n(t, h, 0) d(log_p t)` for `log_p t` from `from` to `to`, summed
    /// piece by piece over the steps of `n`.
    pub fn counting_integral(&self, h: &UPoly, from: &Rat, to: &Rat) -> Result<Rat, NevanlinnaError> {
        if from > to {
            return Ok(-self.counting_integral(h, to, from)?);
        }
        let poly = self.newton_polygon(h)?;
        let mut cuts: Vec<Rat> = poly
            .breakpoints()
            .into_iter()
            .filter(|b| b > from && b < to)
            .collect();
        cuts.insert(0, from.clone());
        cuts.push(to.clone());
        let mut total = Rat::zero();
        for w in cuts.windows(2) {
            // n is constant on the open piece; sample its midpoint.
            let mid = (&w[0] + &w[1]) / int_rat(2);
            total += int_rat(self.count_zeros(h, &mid)? as i64) * (&w[1] - &w[0]);
        }
        Ok(total)
    }

    /// `m(r, f, target)`: `log⁺|f|_r` at infinity, `log⁺(1/|f − a|_r)`
    /// otherwise.
    pub fn prox_m(&self, f: &RatFunc, target: &Target, rho: &LogRadius) -> Result<Rat, NevanlinnaError> {
        match target {
            Target::Infinity => {
                if f.is_zero() {
                    return Err(NevanlinnaError::ZeroFunction);
                }
                Ok(positive_part(self.ratfunc_log_norm(f, rho)?))
            }
            _ => {
                let h = Self::target_poly(f, target)?;
                let norm = self.gauss_log_norm(&h, rho)? - self.gauss_log_norm(f.den(), rho)?;
                Ok(positive_part(-norm))
            }
        }
    }

    /// `log|f|_r − N(r,f,0) + N(r,f,∞)` at one radius.
    pub fn pjf_constant(&self, f: &RatFunc, rho: &LogRadius) -> Result<Rat, NevanlinnaError> {
        Ok(self.ratfunc_log_norm(f, rho)? - self.height_n(f, &Target::Zero, rho)?
            + self.height_n(f, &Target::Infinity, rho)?)
    }

    /// The common value of [`Self::pjf_constant`] over `rhos`, or the first
    /// radius where it differs.
    pub fn check_pjf(&self, f: &RatFunc, rhos: &[LogRadius]) -> Result<Rat, NevanlinnaError> {
        if rhos.len() < 2 {
            return Err(NevanlinnaError::TooFewRadii(2));
        }
        let c = self.pjf_constant(f, &rhos[0])?;
        for rho in &rhos[1..] {
            if self.pjf_constant(f, rho)? != c {
                return Err(NevanlinnaError::PjfMismatch { rho: rho.clone() });
            }
        }
        Ok(c)
    }

    /// `|f^{(n)}/f|_r ≤ r^{−n}`, i.e. `log_p|f^{(n)}/f|_r ≤ −nρ`. Holds
    /// vacuously when `f^{(n)} = 0`.
    pub fn check_ldl(&self, f: &RatFunc, n: u32, rho: &LogRadius) -> Result<bool, NevanlinnaError> {
        if f.is_zero() {
            return Err(NevanlinnaError::ZeroFunction);
        }
        let d = f.nth_derivative(n);
        if d.is_zero() {
            return Ok(true);
        }
        let ratio = d.checked_div(f).expect("f is nonzero");
        Ok(self.ratfunc_log_norm(&ratio, rho)? <= -int_rat(n as i64) * rho)
    }

    /// Largest radius at which `log|num/den|_r` has a kink or its positive
    /// part switches on or off. Past it, `log⁺|num/den|_r` is affine.
    fn settle_point(&self, num: &UPoly, den: &UPoly) -> Result<Rat, NevanlinnaError> {
        let mut settle = Rat::zero();
        for h in [num, den] {
            if let Some(b) = self.newton_polygon(h)?.breakpoints().into_iter().max() {
                settle = settle.max(b);
            }
        }
        let slope = int_rat(num.degree().unwrap_or(0) as i64 - den.degree().unwrap_or(0) as i64);
        if !slope.is_zero() {
            let at = self.gauss_log_norm(num, &settle)? - self.gauss_log_norm(den, &settle)?;
            let crossing = &settle - at / &slope;
            settle = settle.max(crossing);
        }
        Ok(settle)
    }

    fn fmt_defect(&self, f: &RatFunc, a: &Target, rho: &Rat) -> Result<Rat, NevanlinnaError> {
        Ok(self.prox_m(f, a, rho)? + self.height_n(f, a, rho)?
            - self.prox_m(f, &Target::Infinity, rho)?
            - self.height_n(f, &Target::Infinity, rho)?)
    }

    /// `m(r,f,a) + N(r,f,a) − m(r,f,∞) − N(r,f,∞)` over `rhos`, plus the
    /// exact affine tail beyond every kink.
    pub fn check_fmt(&self, f: &RatFunc, a: &Rat, rhos: &[LogRadius]) -> Result<FmtReport, NevanlinnaError> {
        if f.is_constant() {
            return Err(NevanlinnaError::ConstantFunction);
        }
        let target = Target::Value(a.clone());
        let shifted = Self::target_poly(f, &target)?;
        let settle = self
            .settle_point(f.num(), f.den())?
            .max(self.settle_point(&shifted, f.den())?);
        let defects = rhos
            .iter()
            .map(|rho| Ok((rho.clone(), self.fmt_defect(f, &target, rho)?)))
            .collect::<Result<Vec<_>, NevanlinnaError>>()?;
        let tail_value = self.fmt_defect(f, &target, &settle)?;
        let tail_slope = self.fmt_defect(f, &target, &(&settle + Rat::one()))? - &tail_value;
        let spread = spread(defects.iter().map(|(_, d)| d));
        let stabilized = tail_slope.is_zero()
            && defects
                .iter()
                .filter(|(rho, _)| *rho >= settle)
                .all(|(_, d)| *d == tail_value);
        Ok(FmtReport {
            defects,
            spread,
            settle_rho: settle,
            tail_slope,
            tail_value,
            stabilized,
        })
    }

    fn smt_value(&self, f: &RatFunc, targets: &[Target], rho: &Rat) -> Result<Rat, NevanlinnaError> {
        let mut total = -self.height_n(f, &Target::Infinity, rho)?;
        for t in targets {
            total += self.prox_m(f, t, rho)?;
        }
        Ok(total)
    }

    /// `Σ m(r,f,a_i) − N(r,f,∞)` over `rhos`, with its supremum and the
    /// slope of its affine tail.
    pub fn check_smt(&self, f: &RatFunc, targets: &[Rat], rhos: &[LogRadius]) -> Result<SmtReport, NevanlinnaError> {
        if f.is_constant() {
            return Err(NevanlinnaError::ConstantFunction);
        }
        if targets.is_empty() {
            return Err(NevanlinnaError::NoTargets);
        }
        if rhos.is_empty() {
            return Err(NevanlinnaError::TooFewRadii(1));
        }
        for (i, a) in targets.iter().enumerate() {
            if targets[..i].contains(a) {
                return Err(NevanlinnaError::DuplicateTarget(a.clone()));
            }
        }
        let targets: Vec<Target> = targets.iter().cloned().map(Target::Value).collect();
        let mut settle = self.settle_point(f.num(), f.den())?;
        for t in &targets {
            settle = settle.max(self.settle_point(&Self::target_poly(f, t)?, f.den())?);
        }
        let values = rhos
            .iter()
            .map(|rho| Ok((rho.clone(), self.smt_value(f, &targets, rho)?)))
            .collect::<Result<Vec<_>, NevanlinnaError>>()?;
        let sup = values.iter().map(|(_, v)| v.clone()).max().expect("nonempty grid");
        let tail_slope =
            self.smt_value(f, &targets, &(&settle + Rat::one()))? - self.smt_value(f, &targets, &settle)?;
        Ok(SmtReport {
            values,
            sup,
            settle_rho: settle,
            bounded: !tail_slope.is_positive(),
            tail_slope,
        })
    }
}

fn spread<'a>(values: impl Iterator<Item = &'a Rat>) -> Rat {
    let mut lo: Option<&Rat> = None;
    let mut hi: Option<&Rat> = None;
    for v in values {
        lo = Some(lo.map_or(v, |l| l.min(v)));
        hi = Some(hi.map_or(v, |h| h.max(v)));
    }
    match (lo, hi) {
        (Some(l), Some(h)) => h - l,
        _ => Rat::zero(),
    }
}

/// `g = (a + f)² − h²`, the `g` for which `h² = (a + f)² − g` holds.
pub fn pizarra_g(f: &RatFunc, a: &Rat, h: &RatFunc) -> RatFunc {
    let shifted = f + &RatFunc::constant(a.clone());
    &shifted * &shifted - h * h
}

/// With `g = (a + f)² − u²`, checks `g'² − 4f'²g = 4u(uf'² − u'²u − u'g')`.
pub fn delta_identity(f: &RatFunc, u: &RatFunc, a: &Rat) -> bool {
    let (lhs, rhs) = delta_sides(f, u, a);
    lhs == rhs
}

/// Both sides of [`delta_identity`]: `(Δ, 4uΔ_u)`.
pub fn delta_sides(f: &RatFunc, u: &RatFunc, a: &Rat) -> (RatFunc, RatFunc) {
    let g = pizarra_g(f, a, u);
    let (df, du, dg) = (f.derivative(), u.derivative(), g.derivative());
    let four = RatFunc::constant(int_rat(4));
    let delta = &dg * &dg - &four * &df * &df * &g;
    let delta_u = u * &df * &df - &du * &du * u - &du * &dg;
    (delta, &four * u * delta_u)
}

/// `h_i² − h_j² = (a_i − a_j)(2f + a_i + a_j)`.
pub fn difference_identity(f: &RatFunc, a_i: &Rat, a_j: &Rat, h_i_sq: &RatFunc, h_j_sq: &RatFunc) -> bool {
    let lhs = h_i_sq - h_j_sq;
    let two_f = f.scale(&int_rat(2));
    let rhs = (&two_f + &RatFunc::constant(a_i + a_j)).scale(&(a_i - a_j));
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, PValuation};
    use alloc::vec;
    use crate::symbolic::parse_ratfunc;
    use proptest::prelude::*;

    fn ctx(p: u64) -> PadicContext {
        PadicContext::new(p).unwrap()
    }

    fn poly(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn r(n: i64) -> Rat {
        int_rat(n)
    }

    #[test]
    fn gauss_norm_examples() {
        assert_eq!(ctx(2).gauss_log_norm(&poly(&[1, 2]), &r(0)).unwrap(), r(0));
        assert_eq!(ctx(2).gauss_log_norm(&poly(&[1, 2]), &r(3)).unwrap(), r(2));
        for p in [2, 3, 7] {
            assert_eq!(ctx(p).gauss_log_norm(&UPoly::z(), &rat(5, 3)).unwrap(), rat(5, 3));
        }
        assert_eq!(ctx(2).gauss_log_norm(&UPoly::zero(), &r(0)), Err(NevanlinnaError::ZeroFunction));
        assert!(matches!(PadicContext::new(4), Err(NevanlinnaError::Prime(_))));
    }

    #[test]
    fn newton_polygon_examples() {
        let np = ctx(2).newton_polygon(&poly(&[0, -2, 1])).unwrap();
        assert_eq!(np.order_at_zero, 1);
        assert_eq!(np.segments.len(), 1);
        assert_eq!(np.segments[0].root_valuation(), r(1));
        assert_eq!(np.segments[0].length, 1);

        let np = ctx(3).newton_polygon(&poly(&[-3, 1])).unwrap();
        assert_eq!(np.segments, [NewtonSegment { slope: r(-1), length: 1 }]);
        assert_eq!(np.segments[0].root_valuation(), r(1));

        let np = ctx(5).newton_polygon(&poly(&[-1, 0, 1])).unwrap();
        assert_eq!(np.segments, [NewtonSegment { slope: r(0), length: 2 }]);

        // z² − 2 over ℚ_2: both roots have valuation 1/2.
        let np = ctx(2).newton_polygon(&poly(&[-2, 0, 1])).unwrap();
        assert_eq!(np.segments, [NewtonSegment { slope: rat(-1, 2), length: 2 }]);
    }

    #[test]
    fn count_zeros_examples() {
        let h = poly(&[0, -2, 1]);
        assert_eq!(ctx(2).count_zeros(&h, &r(0)).unwrap(), 2);
        assert_eq!(ctx(2).count_zeros(&h, &r(-2)).unwrap(), 1);
        // |3|_3 = 1/3 sits on the boundary of B[1/3] and counts; B[1/9] misses it.
        assert_eq!(ctx(3).count_zeros(&poly(&[-3, 1]), &r(-1)).unwrap(), 1);
        assert_eq!(ctx(3).count_zeros(&poly(&[-3, 1]), &r(-2)).unwrap(), 0);
    }

    #[test]
    fn height_n_examples() {
        let c5 = ctx(5);
        for rho in [r(0), r(1), rat(7, 2)] {
            assert_eq!(c5.height_n(&RatFunc::z(), &Target::Zero, &rho).unwrap(), rho);
        }
        assert_eq!(c5.height_n(&rf("1/(z-1)"), &Target::Infinity, &r(2)).unwrap(), r(2));
        assert_eq!(c5.height_n(&RatFunc::z(), &Target::Zero, &r(-3)).unwrap(), r(-3));
        assert_eq!(
            c5.height_n(&RatFunc::one(), &Target::Value(r(1)), &r(0)),
            Err(NevanlinnaError::DegenerateTarget)
        );
    }

    #[test]
    fn prox_examples() {
        let c = ctx(3);
        assert_eq!(c.prox_m(&RatFunc::z(), &Target::Infinity, &r(2)).unwrap(), r(2));
        assert_eq!(c.prox_m(&RatFunc::z(), &Target::Infinity, &r(-1)).unwrap(), r(0));
        assert_eq!(c.prox_m(&rf("1/z"), &Target::Zero, &r(-2)).unwrap(), r(0));
        assert_eq!(c.prox_m(&RatFunc::z(), &Target::Zero, &r(-2)).unwrap(), r(2));
    }

    #[test]
    fn pjf_examples() {
        let rhos: Vec<Rat> = [-2, -1, 0, 1, 3].iter().map(|&x| r(x)).collect();
        assert_eq!(ctx(2).check_pjf(&RatFunc::z(), &rhos).unwrap(), r(0));
        // (z − 1)/z: leading coefficients and the root 1 are 2-adic units.
        assert_eq!(ctx(2).check_pjf(&rf("(z-1)/z"), &rhos).unwrap(), r(0));
        assert_eq!(ctx(5).check_pjf(&rf("5*z^2"), &[r(0), r(1), r(2)]).unwrap(), r(-1));
        assert_eq!(ctx(5).check_pjf(&RatFunc::z(), &[r(0)]), Err(NevanlinnaError::TooFewRadii(2)));
    }

    #[test]
    fn ldl_examples() {
        assert!(ctx(3).check_ldl(&rf("z^2"), 1, &r(1)).unwrap());
        assert!(ctx(2).check_ldl(&rf("z^2"), 1, &r(0)).unwrap());
        assert!(ctx(7).check_ldl(&rf("(z+1)^5"), 2, &r(2)).unwrap());
        assert!(ctx(7).check_ldl(&rf("3"), 1, &r(2)).unwrap());
        assert_eq!(ctx(7).check_ldl(&RatFunc::zero(), 1, &r(0)), Err(NevanlinnaError::ZeroFunction));
        // The bound is attained at ρ = 1 for p = 3: log₃|2/z| = −1.
        let ratio = rf("z^2").derivative().checked_div(&rf("z^2")).unwrap();
        assert_eq!(ctx(3).ratfunc_log_norm(&ratio, &r(1)).unwrap(), r(-1));
        assert_eq!(ctx(2).ratfunc_log_norm(&ratio, &r(0)).unwrap(), r(-1));
    }

    fn grid(lo: i64, hi: i64) -> Vec<Rat> {
        (lo..=hi).map(r).collect()
    }

    #[test]
    fn fmt_examples() {
        let rep = ctx(2).check_fmt(&RatFunc::z(), &r(0), &grid(-3, 5)).unwrap();
        assert!(rep.defects.iter().all(|(_, d)| d.is_zero()));
        assert!(rep.stabilized);

        let rep = ctx(2).check_fmt(&rf("(z-1)/z"), &r(1), &grid(-3, 5)).unwrap();
        assert!(rep.stabilized);
        assert_eq!(rep.tail_slope, r(0));

        let rep = ctx(3).check_fmt(&rf("z^2"), &r(4), &grid(-3, 6)).unwrap();
        assert!(rep.stabilized);
        assert_eq!(ctx(3).check_fmt(&RatFunc::one(), &r(1), &grid(0, 1)), Err(NevanlinnaError::ConstantFunction));
    }

    #[test]
    fn smt_examples() {
        let rep = ctx(3).check_smt(&RatFunc::z(), &[r(0), r(1)], &grid(-3, 6)).unwrap();
        assert!(rep.bounded);
        assert!(rep.values.iter().filter(|(rho, _)| *rho >= r(1)).all(|(_, v)| v.is_zero()));

        let rep = ctx(5).check_smt(&rf("1/z"), &[r(1), r(2), r(3)], &grid(-3, 6)).unwrap();
        assert!(rep.bounded);
        assert_eq!(
            ctx(5).check_smt(&RatFunc::one(), &[r(1)], &grid(0, 1)),
            Err(NevanlinnaError::ConstantFunction)
        );
        assert_eq!(
            ctx(5).check_smt(&RatFunc::z(), &[r(1), r(1)], &grid(0, 1)),
            Err(NevanlinnaError::DuplicateTarget(r(1)))
        );
    }

    #[test]
    fn delta_examples() {
        let (lhs, rhs) = delta_sides(&RatFunc::z(), &rf("z^2"), &r(1));
        let expected = rf("16*z^6 - 12*z^4 - 16*z^3");
        assert_eq!(lhs, expected);
        assert_eq!(rhs, expected);
        let (lhs, rhs) = delta_sides(&rf("z^3 - z"), &RatFunc::zero(), &r(2));
        assert!(lhs.is_zero() && rhs.is_zero());
    }

    #[test]
    fn difference_examples() {
        let f = RatFunc::z();
        let g = rf("z^3");
        let hi = pizarra_g(&f, &r(1), &RatFunc::zero()) - &g;
        let hj = pizarra_g(&f, &r(2), &RatFunc::zero()) - &g;
        assert!(difference_identity(&f, &r(1), &r(2), &hi, &hj));
        assert_eq!(&hi - &hj, rf("-(2*z + 3)"));
        assert!(difference_identity(&f, &r(1), &r(1), &hi, &hi));
        assert!(!difference_identity(&f, &r(1), &r(2), &hj, &hi));
    }

    #[test]
    fn counting_integral_matches_n_differences() {
        let c = ctx(2);
        let h = poly(&[0, 0, -8, 2, 1]); // z²(z² + 2z − 8) = z²(z − 2)(z + 4)
        for (a, b) in [(-5, 4), (0, 3), (-1, -1), (2, -3)] {
            let diff = c.counting_n(&h, &r(b)).unwrap() - c.counting_n(&h, &r(a)).unwrap();
            assert_eq!(c.counting_integral(&h, &r(a), &r(b)).unwrap(), diff);
        }
    }

    fn arb_root() -> impl Strategy<Value = Rat> {
        (-200i64..=200, 1i64..=50).prop_map(|(a, b)| rat(a, b))
    }

    fn arb_upoly(max_deg: usize) -> impl Strategy<Value = UPoly> {
        prop::collection::vec((-30i64..=30, 1i64..=8), 1..=max_deg + 1)
            .prop_map(|c| UPoly::new(c.into_iter().map(|(a, b)| rat(a, b)).collect()))
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    fn arb_ratfunc(max_deg: usize) -> impl Strategy<Value = RatFunc> {
        (arb_upoly(max_deg), arb_upoly(max_deg)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    fn arb_p() -> impl Strategy<Value = PadicContext> {
        prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(ctx)
    }

    fn arb_rho() -> impl Strategy<Value = Rat> {
        (-12i64..=12, 1i64..=4).prop_map(|(a, b)| rat(a, b))
    }

    proptest! {
        #[test]
        fn count_zeros_matches_factored_oracle(c in arb_p(), roots in prop::collection::vec(arb_root(), 1..7)) {
            let h = UPoly::from_roots(&roots);
            let mut breaks: Vec<Rat> = roots
                .iter()
                .filter_map(|r| vp(r, c.prime()).finite())
                .map(|v| int_rat(-v))
                .collect();
            breaks.sort();
            let lo = breaks.first().cloned().unwrap_or_else(Rat::zero) - int_rat(2);
            let hi = breaks.last().cloned().unwrap_or_else(Rat::zero) + int_rat(2);
            let mut rho = lo;
            while rho <= hi {
                let direct = roots
                    .iter()
                    .filter(|r| match vp(r, c.prime()) {
                        PValuation::Infinity => true,
                        PValuation::Finite(v) => int_rat(v) >= -&rho,
                    })
                    .count() as u64;
                prop_assert_eq!(c.count_zeros(&h, &rho).unwrap(), direct);
                rho += rat(1, 2);
            }
            prop_assert_eq!(c.count_zeros(&h, &(hi + int_rat(100))).unwrap(), roots.len() as u64);
        }

        #[test]
        fn gauss_norm_is_multiplicative(c in arb_p(), a in arb_upoly(5), b in arb_upoly(5), rho in arb_rho()) {
            let lhs = c.gauss_log_norm(&(&a * &b), &rho).unwrap();
            prop_assert_eq!(lhs, c.gauss_log_norm(&a, &rho).unwrap() + c.gauss_log_norm(&b, &rho).unwrap());
        }

        #[test]
        fn count_zeros_additive_and_monotone(c in arb_p(), a in arb_upoly(5), b in arb_upoly(5), rho in arb_rho()) {
            let ab = &a * &b;
            prop_assert_eq!(
                c.count_zeros(&ab, &rho).unwrap(),
                c.count_zeros(&a, &rho).unwrap() + c.count_zeros(&b, &rho).unwrap()
            );
            prop_assert!(c.count_zeros(&a, &rho).unwrap() <= c.count_zeros(&a, &(&rho + rat(1, 3))).unwrap());
        }

        #[test]
        fn pjf_always_constant(c in arb_p(), f in arb_ratfunc(4), rhos in prop::collection::vec(arb_rho(), 2..8)) {
            prop_assert!(c.check_pjf(&f, &rhos).is_ok());
        }

        #[test]
        fn ldl_holds(c in arb_p(), f in arb_ratfunc(6), n in 1u32..=3, rho in arb_rho()) {
            prop_assert!(c.check_ldl(&f, n, &rho).unwrap());
        }

        #[test]
        fn delta_identity_holds(f in arb_ratfunc(3), u in arb_ratfunc(3), a in arb_root()) {
            prop_assert!(delta_identity(&f, &u, &a));
        }

        #[test]
        fn difference_identity_holds(f in arb_ratfunc(3), g in arb_ratfunc(3), ai in arb_root(), aj in arb_root()) {
            let hi = pizarra_g(&f, &ai, &RatFunc::zero()) - &g;
            let hj = pizarra_g(&f, &aj, &RatFunc::zero()) - &g;
            prop_assert!(difference_identity(&f, &ai, &aj, &hi, &hj));
        }

        #[test]
        fn fmt_tail_is_flat(c in arb_p(), f in arb_ratfunc(3), a in arb_root()) {
            prop_assume!(!f.is_constant());
            let rep = c.check_fmt(&f, &a, &grid(-4, 8)).unwrap();
            prop_assert_eq!(rep.tail_slope, Rat::zero());
        }
    }
}
