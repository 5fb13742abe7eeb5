//! Exact integer and rational predicates shared by every other module:
//! integer square roots, perfect-square tests and p-adic valuations.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("integer square root of negative number {0}")]
    NegativeRadicand(BigInt),
    #[error("{0} is not a prime")]
    NotPrime(u64),
}

/// `⌊√n⌋` for arbitrarily large `n ≥ 0`.
pub fn isqrt(n: &BigInt) -> Result<BigInt, ExactError> {
    if n.is_negative() {
        return Err(ExactError::NegativeRadicand(n.clone()));
    }
    Ok(n.sqrt())
}

const fn square_residues(modulus: u128) -> u128 {
    let mut mask = 0u128;
    let mut i = 0;
    while i < modulus {
        mask |= 1u128 << ((i * i) % modulus);
        i += 1;
    }
    mask
}

const SQUARES_MOD_64: u128 = square_residues(64);
const SQUARES_MOD_63: u128 = square_residues(63);
const SQUARES_MOD_65: u128 = square_residues(65);
const SQUARES_MOD_11: u128 = square_residues(11);

/// Perfect-square test on machine integers. Rejects most non-squares with
/// residue tables before taking the root.
#[inline]
pub fn is_square_u128(n: u128) -> bool {
    if (SQUARES_MOD_64 >> (n % 64)) & 1 == 0 {
        return false;
    }
    let r = n % (63 * 65 * 11);
    if (SQUARES_MOD_63 >> (r % 63)) & 1 == 0
        || (SQUARES_MOD_65 >> (r % 65)) & 1 == 0
        || (SQUARES_MOD_11 >> (r % 11)) & 1 == 0
    {
        return false;
    }
    let s = n.isqrt();
    s * s == n
}

/// The nonnegative square root of `n` when `n` is a perfect square.
pub fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if let Some(small) = n.to_u128() {
        return is_square_u128(small).then(|| BigInt::from(small.isqrt()));
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// True iff `n = m²` for some integer `m`.
pub fn is_square_int(n: &BigInt) -> bool {
    int_sqrt(n).is_some()
}

/// The nonnegative rational square root of `q`, if it has one.
///
/// `q` is in lowest terms, so it is a square exactly when numerator and
/// denominator both are.
pub fn is_square_rat(q: &Rat) -> Option<Rat> {
    let num = int_sqrt(q.numer())?;
    let den = int_sqrt(q.denom())?;
    Some(Rat::new(num, den))
}

/// Height of a rational in lowest terms: `max(|num|, |den|)`.
pub fn height(q: &Rat) -> BigInt {
    let n = q.numer().abs();
    if n > *q.denom() {
        n
    } else {
        q.denom().clone()
    }
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_rat(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// A prime number, checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ExactError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(ExactError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 || p % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d <= p / d {
        if p % d == 0 || p % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// A p-adic valuation. Zero has valuation `Infinity`, which compares above
/// every finite value and absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PValuation {
    Finite(i64),
    Infinity,
}

impl PValuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            PValuation::Finite(v) => Some(v),
            PValuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == PValuation::Infinity
    }
}

impl Ord for PValuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PValuation::Finite(a), PValuation::Finite(b)) => a.cmp(b),
            (PValuation::Finite(_), PValuation::Infinity) => Ordering::Less,
            (PValuation::Infinity, PValuation::Finite(_)) => Ordering::Greater,
            (PValuation::Infinity, PValuation::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for PValuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for PValuation {
    type Output = PValuation;

    fn add(self, rhs: PValuation) -> PValuation {
        match (self, rhs) {
            (PValuation::Finite(a), PValuation::Finite(b)) => PValuation::Finite(a + b),
            _ => PValuation::Infinity,
        }
    }
}

impl Sub<i64> for PValuation {
    type Output = PValuation;

    fn sub(self, rhs: i64) -> PValuation {
        match self {
            PValuation::Finite(a) => PValuation::Finite(a - rhs),
            PValuation::Infinity => PValuation::Infinity,
        }
    }
}

impl Neg for PValuation {
    type Output = Option<i64>;

    fn neg(self) -> Option<i64> {
        self.finite().map(|v| -v)
    }
}

impl fmt::Display for PValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValuation::Finite(v) => write!(f, "{v}"),
            PValuation::Infinity => f.write_str("inf"),
        }
    }
}

/// `v_p(n)` for an integer.
pub fn vp_int(n: &BigInt, p: Prime) -> PValuation {
    if n.is_zero() {
        return PValuation::Infinity;
    }
    let p = BigInt::from(p.get());
    let mut rest = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        rest = q;
        v += 1;
    }
    PValuation::Finite(v)
}

/// `v_p(a/b) = v_p(a) − v_p(b)`, with `v_p(0) = ∞`.
pub fn vp(q: &Rat, p: Prime) -> PValuation {
    match (vp_int(q.numer(), p), vp_int(q.denom(), p)) {
        (PValuation::Infinity, _) => PValuation::Infinity,
        (num, PValuation::Finite(den)) => num - den,
        (PValuation::Finite(_), PValuation::Infinity) => unreachable!("denominator is never zero"),
    }
}

/// `log_p |q|_p = −v_p(q)` for nonzero `q`.
pub fn log_abs_p(q: &Rat, p: Prime) -> Option<Rat> {
    (-vp(q, p)).map(|v| int_rat(v))
}
