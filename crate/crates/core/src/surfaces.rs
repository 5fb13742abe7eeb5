//! The surfaces `X_n ⊂ ℙⁿ` cut out by the diagonal quadrics
//! `δ₂x_i² = δ_iδ₂(δ_i−δ₂)x_0² − (δ_i−δ₂)x_1² + δ_ix_2²` (`3 ≤ i ≤ n`), their
//! trivial lines, and the bijection between their points with `x_0 ≠ 0` and
//! monic quadratics taking square values at fixed nodes.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{height, int_rat, is_square_rat, is_square_u128};
use crate::sequences::SignChoice;
use crate::symbolic::{fmt_rat, mpoly_identity_equal, PolyRing};
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("need at least {min} nodes, got {found}")]
    TooFewNodes { min: usize, found: usize },
    #[error("nodes {0} and {1} coincide")]
    DuplicateNode(usize, usize),
    #[error("a surface needs at least one delta")]
    NoDeltas,
    #[error("delta {0} is zero")]
    ZeroDelta(usize),
    #[error("deltas {0} and {1} coincide")]
    DuplicateDelta(usize, usize),
    #[error("expected {expected} coordinates, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("point is not on the surface")]
    NotOnSurface,
    #[error("point has x_0 = 0")]
    AtInfinity,
    #[error("f(a_{index}) = {value} is not a square")]
    NotSquareAt { index: usize, value: Rat },
}

/// Pairwise distinct rationals `a_1..a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvaluationNodes {
    nodes: Vec<Rat>,
}

impl EvaluationNodes {
    /// Two nodes suffice to pass between points and quadratics; the surface
    /// itself only carries equations from the third node on.
    pub fn new(nodes: Vec<Rat>) -> Result<Self, SurfaceError> {
        if nodes.len() < 2 {
            return Err(SurfaceError::TooFewNodes {
                min: 2,
                found: nodes.len(),
            });
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i] == nodes[j] {
                    return Err(SurfaceError::DuplicateNode(i + 1, j + 1));
                }
            }
        }
        Ok(EvaluationNodes { nodes })
    }

    pub fn from_ints(nodes: &[i64]) -> Result<Self, SurfaceError> {
        Self::new(nodes.iter().map(|&a| int_rat(a)).collect())
    }

    pub fn nodes(&self) -> &[Rat] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The surface with `δ_i = a_i − a_1`.
    pub fn surface(&self) -> BuchiSurface {
        let a1 = &self.nodes[0];
        BuchiSurface {
            deltas: self.nodes[1..].iter().map(|a| a - a1).collect(),
        }
    }
}

/// `X_n` given by its deltas `δ_2..δ_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BuchiSurface {
    deltas: Vec<Rat>,
}

/// `Σ coeffs[k]·x_k² = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    pub coeffs: Vec<Rat>,
}

impl DiagonalForm {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .zip(x)
            .fold(Rat::zero(), |acc, (c, x)| acc + c * x * x)
    }

    /// `∂/∂x_k` at `x`.
    pub fn gradient(&self, x: &[Rat]) -> Vec<Rat> {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(c, x)| c * x * int_rat(2))
            .collect()
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let abs = c.abs();
            if !abs.is_one() {
                fmt_rat(f, &abs)?;
                f.write_str("*")?;
            }
            write!(f, "x{k}^2")?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(" = 0")
    }
}

impl BuchiSurface {
    pub fn new(deltas: Vec<Rat>) -> Result<Self, SurfaceError> {
        if deltas.is_empty() {
            return Err(SurfaceError::NoDeltas);
        }
        for (i, d) in deltas.iter().enumerate() {
            if d.is_zero() {
                return Err(SurfaceError::ZeroDelta(i + 2));
            }
            for (j, e) in deltas.iter().enumerate().skip(i + 1) {
                if d == e {
                    return Err(SurfaceError::DuplicateDelta(i + 2, j + 2));
                }
            }
        }
        Ok(BuchiSurface { deltas })
    }

    pub fn from_ints(deltas: &[i64]) -> Result<Self, SurfaceError> {
        Self::new(deltas.iter().map(|&d| int_rat(d)).collect())
    }

    /// `δ_2..δ_n`.
    pub fn deltas(&self) -> &[Rat] {
        &self.deltas
    }

    /// The `n` of `X_n ⊂ ℙⁿ`.
    pub fn n(&self) -> usize {
        self.deltas.len() + 1
    }

    /// `δ_k` for `2 ≤ k ≤ n`.
    pub fn delta(&self, k: usize) -> &Rat {
        &self.deltas[k - 2]
    }

    /// One form per `i = 3..n`, written as
    /// `δ_iδ₂(δ_i−δ₂)x_0² − (δ_i−δ₂)x_1² + δ_ix_2² − δ₂x_i² = 0`.
    pub fn equations(&self) -> Vec<DiagonalForm> {
        let n = self.n();
        let d2 = self.delta(2);
        (3..=n)
            .map(|i| {
                let di = self.delta(i);
                let diff = di - d2;
                let mut coeffs = vec![Rat::zero(); n + 1];
                coeffs[0] = di * d2 * &diff;
                coeffs[1] = -diff;
                coeffs[2] = di.clone();
                coeffs[i] = -d2.clone();
                DiagonalForm { coeffs }
            })
            .collect()
    }

    fn check_arity(&self, p: &ProjectivePoint) -> Result<(), SurfaceError> {
        if p.coords.len() != self.n() + 1 {
            return Err(SurfaceError::ArityMismatch {
                expected: self.n() + 1,
                found: p.coords.len(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, p: &ProjectivePoint) -> Result<bool, SurfaceError> {
        self.check_arity(p)?;
        Ok(self.equations().iter().all(|e| e.eval(&p.coords).is_zero()))
    }

    /// A trivial line `ε_1x_1 = ε_2x_2 − δ_2x_0 = ⋯ = ε_nx_n − δ_nx_0`
    /// through `p`, if any. `Plus` is preferred for `ε_1`.
    pub fn trivial_line_member(
        &self,
        p: &ProjectivePoint,
    ) -> Result<Option<TrivialLineHit>, SurfaceError> {
        self.check_arity(p)?;
        let x = &p.coords;
        for e1 in [SignChoice::Plus, SignChoice::Minus] {
            let common = apply(e1, &x[1]);
            let mut signs = vec![e1];
            for i in 2..=self.n() {
                // ε_i x_i = common + δ_i x_0
                let target = &common + self.delta(i) * &x[0];
                if x[i] == target {
                    signs.push(SignChoice::Plus);
                } else if x[i] == -&target {
                    signs.push(SignChoice::Minus);
                } else {
                    break;
                }
            }
            if signs.len() == self.n() {
                let nu = (!x[0].is_zero()).then(|| &common / &x[0]);
                return Ok(Some(TrivialLineHit { signs, nu }));
            }
        }
        Ok(None)
    }

    /// Exact rank over ℚ of the Jacobian of the defining forms at `p`.
    pub fn jacobian_rank(&self, p: &ProjectivePoint) -> Result<usize, SurfaceError> {
        if !self.contains(p)? {
            return Err(SurfaceError::NotOnSurface);
        }
        let rows = self
            .equations()
            .iter()
            .map(|e| e.gradient(&p.coords))
            .collect();
        Ok(rank(rows))
    }

    /// `[1 : x : x+δ_2 : ⋯ : x+δ_n]`, a point of the trivial line with `ν = x`.
    pub fn trivial_point(&self, x: &Rat) -> ProjectivePoint {
        let mut coords = vec![Rat::one(), x.clone()];
        coords.extend(self.deltas.iter().map(|d| x + d));
        ProjectivePoint { coords }
    }
}

fn apply(s: SignChoice, x: &Rat) -> Rat {
    match s {
        SignChoice::Plus => x.clone(),
        SignChoice::Minus => -x,
    }
}

/// Which trivial line a point lies on. `signs` are `ε_1..ε_n`; `nu` is the
/// common value `ε_1x_1/x_0`, absent when `x_0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrivialLineHit {
    pub signs: Vec<SignChoice>,
    pub nu: Option<Rat>,
}

/// Row rank by fraction-exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].recip();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] * &inv;
            for j in col..ncols {
                let delta = &factor * &rows[r][j];
                rows[i][j] -= delta;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// A point of projective space, scaled so the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<Rat>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self, SurfaceError> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(SurfaceError::ZeroPoint)?
            .recip();
        Ok(ProjectivePoint {
            coords: coords.iter().map(|c| c * &lead).collect(),
        })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, SurfaceError> {
        Self::new(coords.iter().map(|&c| int_rat(c)).collect())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// `x² + ux + v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonicQuadratic {
    pub u: Rat,
    pub v: Rat,
}

impl MonicQuadratic {
    pub fn new(u: Rat, v: Rat) -> Self {
        MonicQuadratic { u, v }
    }

    pub fn from_ints(u: i64, v: i64) -> Self {
        Self::new(int_rat(u), int_rat(v))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        x * x + &self.u * x + &self.v
    }

    pub fn discriminant(&self) -> Rat {
        &self.u * &self.u - &self.v * int_rat(4)
    }

    /// `f = (x + u/2)²` exactly when the discriminant vanishes.
    pub fn is_square(&self) -> bool {
        self.discriminant().is_zero()
    }
}

impl fmt::Display for MonicQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("x^2")?;
        for (c, suffix) in [(&self.u, "*x"), (&self.v, "")] {
            if c.is_zero() {
                continue;
            }
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
            fmt_rat(f, &c.abs())?;
            f.write_str(suffix)?;
        }
        Ok(())
    }
}

/// `[1 : √f(a_1) : ⋯ : √f(a_n)]` with nonnegative roots.
pub fn j_of_f(nodes: &EvaluationNodes, f: &MonicQuadratic) -> Result<ProjectivePoint, SurfaceError> {
    let mut coords = vec![Rat::one()];
    for (i, a) in nodes.nodes.iter().enumerate() {
        let value = f.eval(a);
        let root = is_square_rat(&value).ok_or(SurfaceError::NotSquareAt {
            index: i + 1,
            value,
        })?;
        coords.push(root);
    }
    Ok(ProjectivePoint { coords })
}

/// The unique monic quadratic with `f(a_1) = b_1²` and `f(a_2) = b_2²`
/// where `p = [1 : b_1 : ⋯ : b_n]`.
pub fn f_of_point(nodes: &EvaluationNodes, p: &ProjectivePoint) -> Result<MonicQuadratic, SurfaceError> {
    if p.coords.len() != nodes.len() + 1 {
        return Err(SurfaceError::ArityMismatch {
            expected: nodes.len() + 1,
            found: p.coords.len(),
        });
    }
    if p.coords[0].is_zero() {
        return Err(SurfaceError::AtInfinity);
    }
    let (a1, a2) = (&nodes.nodes[0], &nodes.nodes[1]);
    let b1 = &p.coords[1] / &p.coords[0];
    let b2 = &p.coords[2] / &p.coords[0];
    let (s1, s2) = (&b1 * &b1, &b2 * &b2);
    let gap = a2 - a1;
    let u = (&s2 - &s1 - a2 * a2 + a1 * a1) / &gap;
    let v = (a1 * a2 * &gap - a1 * &s2 + a2 * &s1) / &gap;
    Ok(MonicQuadratic { u, v })
}

/// `(f is a square, j(f) is on a trivial line)`; the two always agree.
pub fn square_iff_trivial(
    nodes: &EvaluationNodes,
    f: &MonicQuadratic,
) -> Result<(bool, bool), SurfaceError> {
    let p = j_of_f(nodes, f)?;
    let hit = nodes.surface().trivial_line_member(&p)?;
    Ok((f.is_square(), hit.is_some()))
}

/// Cumulative number of candidates whose coefficients both have height at
/// most `height`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthPoint {
    pub height: u64,
    pub cumulative: usize,
}

/// Result of a bounded-height scan. The candidates are the non-square monic
/// quadratics found below the bound with square values at every node; the
/// scan says nothing about quadratics of larger height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub height: u64,
    pub integers_only: bool,
    pub examined: u64,
    pub candidates: Vec<MonicQuadratic>,
    pub growth: Vec<GrowthPoint>,
}

impl ScanReport {
    /// Merges partial scans over disjoint slices of [`scan_coefficients`].
    pub fn merge(height: u64, integers_only: bool, parts: Vec<(u64, Vec<MonicQuadratic>)>) -> Self {
        let mut examined = 0;
        let mut candidates = Vec::new();
        for (n, c) in parts {
            examined += n;
            candidates.extend(c);
        }
        candidates.sort();
        let heights: Vec<BigInt> = candidates
            .iter()
            .map(|f| crate::exact::height(&f.u).max(crate::exact::height(&f.v)))
            .collect();
        let growth = (1..=height)
            .map(|h| {
                let h = BigInt::from(h);
                GrowthPoint {
                    height: h.to_u64().expect("small"),
                    cumulative: heights.iter().filter(|x| **x <= h).count(),
                }
            })
            .collect();
        ScanReport {
            height,
            integers_only,
            examined,
            candidates,
            growth,
        }
    }
}

/// Every rational of height at most `h` (or every integer in `[−h, h]`),
/// in increasing order.
pub fn scan_coefficients(h: u64, integers_only: bool) -> Vec<Rat> {
    let hi = BigInt::from(h);
    let mut out = Vec::new();
    if integers_only {
        let h = h as i64;
        out.extend((-h..=h).map(int_rat));
        return out;
    }
    for q in 1..=h {
        let q_big = BigInt::from(q);
        for p in 0..=h {
            if p.gcd(&q) != 1 {
                continue;
            }
            let r = Rat::new(BigInt::from(p), q_big.clone());
            if p != 0 {
                out.push(-r.clone());
            }
            out.push(r);
        }
    }
    debug_assert!(out.iter().all(|r| height(r) <= hi));
    out.sort();
    out
}

/// Scans `x² + ux + v` for each `u` in `us` and every admissible `v`.
/// Returns the number of pairs examined and the candidates found.
pub fn scan_part(
    nodes: &EvaluationNodes,
    height: u64,
    integers_only: bool,
    us: &[Rat],
) -> (u64, Vec<MonicQuadratic>) {
    let vs = scan_coefficients(height, integers_only);
    let examined = us.len() as u64 * vs.len() as u64;
    if let Some(small) = small_nodes(nodes).filter(|_| integers_only && height < (1 << 40)) {
        return (examined, scan_part_small(&small, us, height as i128));
    }
    let mut out = Vec::new();
    for u in us {
        let partial: Vec<Rat> = nodes.nodes.iter().map(|a| a * a + u * a).collect();
        for v in &vs {
            if partial.iter().all(|s| is_square_rat(&(s + v)).is_some()) {
                let f = MonicQuadratic::new(u.clone(), v.clone());
                if !f.is_square() {
                    out.push(f);
                }
            }
        }
    }
    (examined, out)
}

fn small_nodes(nodes: &EvaluationNodes) -> Option<Vec<i128>> {
    nodes
        .nodes
        .iter()
        .map(|a| {
            a.is_integer()
                .then(|| a.numer().to_i64())
                .flatten()
                .filter(|a| a.unsigned_abs() < (1 << 40))
                .map(i128::from)
        })
        .collect()
}

fn scan_part_small(nodes: &[i128], us: &[Rat], h: i128) -> Vec<MonicQuadratic> {
    let mut out = Vec::new();
    for u in us {
        let u = u.numer().to_i128().expect("integer coefficient");
        let partial: Vec<i128> = nodes.iter().map(|a| a * a + u * a).collect();
        for v in -h..=h {
            let all_square = partial.iter().all(|s| {
                let value = s + v;
                value >= 0 && is_square_u128(value as u128)
            });
            if all_square && u * u != 4 * v {
                out.push(MonicQuadratic::new(int_rat(u), int_rat(v)));
            }
        }
    }
    out
}

/// Non-square monic quadratics with coefficients of height at most `height`
/// taking square values at every node.
pub fn scan_exceptional(nodes: &EvaluationNodes, height: u64, integers_only: bool) -> ScanReport {
    let us = scan_coefficients(height, integers_only);
    let part = scan_part(nodes, height, integers_only, &us);
    ScanReport::merge(height, integers_only, vec![part])
}

/// `f_N = x² − 4(2N)!` with nodes `a_i = i! + (2N)!/i!` and roots
/// `|i! − (2N)!/i!|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleFamily {
    pub f: MonicQuadratic,
    pub nodes: Vec<BigInt>,
    pub roots: Vec<BigInt>,
}

/// Builds `f_N` and checks `f_N(a_i) = r_i²` and that the nodes strictly
/// decrease. `None` only if one of those checks fails.
pub fn counterexample_family(n: u32) -> Option<CounterexampleFamily> {
    let m = factorial(2 * n);
    let f = MonicQuadratic::new(Rat::zero(), -Rat::from_integer(&m * 4));
    let mut nodes = Vec::new();
    let mut roots = Vec::new();
    for i in 1..=n {
        let fi = factorial(i);
        let co = &m / &fi;
        nodes.push(&fi + &co);
        roots.push((&fi - &co).abs());
    }
    let values_ok = nodes
        .iter()
        .zip(&roots)
        .all(|(a, r)| f.eval(&Rat::from_integer(a.clone())) == Rat::from_integer(r * r));
    let decreasing = nodes.windows(2).all(|w| w[0] > w[1]);
    (values_ok && decreasing).then_some(CounterexampleFamily { f, nodes, roots })
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `c²x_2² + c(c−δ₂)(δ₂²−x_1²−x_2²) + (c−δ₂)²x_1²
///  = δ₂(δ₂c(c−δ₂) − (c−δ₂)x_1² + cx_2²)`.
pub fn conic_integrality_identity() -> bool {
    let r = PolyRing::new(&["c", "d2", "x1", "x2"]);
    let (c, d2, x1, x2) = (r.var("c"), r.var("d2"), r.var("x1"), r.var("x2"));
    let cd = &c - &d2;
    let lhs = &c * &c * &x2 * &x2
        + &c * &cd * (&d2 * &d2 - &x1 * &x1 - &x2 * &x2)
        + &cd * &cd * &x1 * &x1;
    let rhs = &d2 * (&d2 * &c * &cd - &cd * &x1 * &x1 + &c * &x2 * &x2);
    mpoly_identity_equal(&lhs, &rhs).expect("same ring")
}

/// On `x_1 = x_2 − δ₂` (so `dx_1 = dx_2`) the coefficients of the
/// symmetric differential sum to `2x_1x_2 + δ₂² − x_1² − x_2² = 0`.
pub fn trivial_line_vanishing_identity() -> bool {
    let r = PolyRing::new(&["d2", "x1", "x2"]);
    let (d2, x1, x2) = (r.var("d2"), r.var("x1"), r.var("x2"));
    let total = r.int(2) * &x1 * &x2 + &d2 * &d2 - &x1 * &x1 - &x2 * &x2;
    let on_line = total.substitute("x1", &(&x2 - &d2)).expect("known variable");
    on_line.is_zero()
}

/// The two algebraic facts behind the point/quadratic bijection:
///
/// * `(a_2−a_1)f(a_i) = (a_i−a_1)(a_2−a_1)(a_i−a_2) − (a_i−a_2)f(a_1) + (a_i−a_1)f(a_2)`
///   for `f = x² + ux + v`;
/// * with `b_2 = εb_1 + a_2 − a_1` and `ε² = 1`, the discriminant of the
///   quadratic through `(a_1, b_1²), (a_2, b_2²)` vanishes.
pub fn correspondence_identity() -> bool {
    let r = PolyRing::new(&["a1", "a2", "ai", "u", "v"]);
    let (a1, a2, ai) = (r.var("a1"), r.var("a2"), r.var("ai"));
    let (u, v) = (r.var("u"), r.var("v"));
    let f = |x: &crate::symbolic::MPoly| x * x + &u * x + &v;
    let lhs = (&a2 - &a1) * f(&ai);
    let rhs = (&ai - &a1) * (&a2 - &a1) * (&ai - &a2) - (&ai - &a2) * f(&a1) + (&ai - &a1) * f(&a2);
    let chain = mpoly_identity_equal(&lhs, &rhs).expect("same ring");

    let r = PolyRing::new(&["a1", "a2", "b1", "b2", "eps"]);
    let (a1, a2, b1, b2, eps) = (r.var("a1"), r.var("a2"), r.var("b1"), r.var("b2"), r.var("eps"));
    let gap = &a2 - &a1;
    // Both coefficients scaled by (a_2 − a_1) to stay polynomial.
    let u_num = &b2 * &b2 - &b1 * &b1 - &a2 * &a2 + &a1 * &a1;
    let v_num = &a1 * &a2 * &gap - &a1 * &b2 * &b2 + &a2 * &b1 * &b1;
    let disc = &u_num * &u_num - r.int(4) * &gap * &v_num;
    let on_line = disc
        .substitute("b2", &(&eps * &b1 + &gap))
        .and_then(|d| d.reduce_square("eps", &r.int(1)))
        .expect("known variables");
    chain && on_line.is_zero()
}
