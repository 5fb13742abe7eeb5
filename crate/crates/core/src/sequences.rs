//! Sequences of integers whose squares have constant second difference 2,
//! and exhaustive bounded search for the nontrivial ones.
//!
//! The first two squares determine every later one, so the search walks the
//! `(x_1, x_2)` rectangle and extends each pair with [`closed_form`].

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::exact::{int_sqrt, is_square_u128};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("need at least 3 terms, got {0}")]
    TooShort(usize),
    #[error("second difference of the squares is not constantly 2")]
    NotBuchi,
}

/// `s_{i+2} − 2 s_{i+1} + s_i` for each window of three.
pub fn second_difference(squares: &[BigInt]) -> Result<Vec<BigInt>, SequenceError> {
    if squares.len() < 3 {
        return Err(SequenceError::TooShort(squares.len()));
    }
    Ok(squares
        .windows(3)
        .map(|w| &w[2] - (&w[1] << 1) + &w[0])
        .collect())
}

/// True iff the squares of `values` have second difference constantly 2.
pub fn is_buchi(values: &[BigInt]) -> Result<bool, SequenceError> {
    let squares: Vec<BigInt> = values.iter().map(|x| x * x).collect();
    let two = BigInt::from(2);
    Ok(second_difference(&squares)?.iter().all(|d| *d == two))
}

/// A Büchi sequence with every term stored as its absolute value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BuchiSequence {
    values: Vec<BigInt>,
}

impl BuchiSequence {
    pub fn new(values: Vec<BigInt>) -> Result<Self, SequenceError> {
        if !is_buchi(&values)? {
            return Err(SequenceError::NotBuchi);
        }
        Ok(BuchiSequence {
            values: values.into_iter().map(|x| x.abs()).collect(),
        })
    }

    pub fn from_i64(values: &[i64]) -> Result<Self, SequenceError> {
        Self::new(values.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for BuchiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignChoice {
    Plus,
    Minus,
}

/// `x_i = signs[i−1] · (ν + i)` for every index `i` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrivialityWitness {
    pub nu: BigInt,
    pub signs: Vec<SignChoice>,
}

/// Finds `ν` with `x_i² = (ν + i)²` for all `i`, if one exists.
///
/// `(ν + 1)² = x_1²` leaves only `ν = x_1 − 1` and `ν = −x_1 − 1`.
pub fn classify_trivial(seq: &BuchiSequence) -> Option<TrivialityWitness> {
    let x1 = seq.values.first()?;
    let candidates: [BigInt; 2] = [x1 - 1, -x1 - 1];
    candidates.into_iter().find_map(|nu| {
        let mut signs = Vec::with_capacity(seq.len());
        for (i, x) in seq.values.iter().enumerate() {
            let t = &nu + BigInt::from(i + 1);
            if t.abs() != *x {
                return None;
            }
            signs.push(if t.is_negative() {
                SignChoice::Minus
            } else {
                SignChoice::Plus
            });
        }
        Some(TrivialityWitness { nu, signs })
    })
}

/// The value of `x_n²` forced by `x_1²` and `x_2²`:
/// `(n−1)(n−2) − (n−2)x_1² + (n−1)x_2²`.
pub fn closed_form(x1_sq: &BigInt, x2_sq: &BigInt, n: u64) -> BigInt {
    let n = BigInt::from(n);
    let a = &n - 1;
    let b = &n - 2;
    &a * &b - &b * x1_sq + &a * x2_sq
}

/// All nontrivial Büchi sequences of length `m` with `0 ≤ x_1, x_2 ≤ bound`,
/// sorted lexicographically.
pub fn search(m: usize, bound: u64) -> Result<Vec<BuchiSequence>, SequenceError> {
    let mut out = search_rows(m, bound, 0..bound.saturating_add(1))?;
    out.sort();
    Ok(out)
}

/// The part of [`search`] with `x_1` in `rows` (clipped to `0..=bound`).
/// Results are sorted within the slice, so concatenating the outputs of an
/// increasing partition of rows reproduces [`search`].
pub fn search_rows(
    m: usize,
    bound: u64,
    rows: Range<u64>,
) -> Result<Vec<BuchiSequence>, SequenceError> {
    if m < 3 {
        return Err(SequenceError::TooShort(m));
    }
    let rows = rows.start..rows.end.min(bound.saturating_add(1));
    // (m−1)·x_2² plus the constant must fit with room to spare.
    let fits = bound < (1u64 << 48) && m < (1 << 20);
    let mut out = if fits {
        search_small(m, bound, rows)
    } else {
        search_big(m, bound, rows)
    };
    out.sort();
    Ok(out)
}

fn search_small(m: usize, bound: u64, rows: Range<u64>) -> Vec<BuchiSequence> {
    let mut out = Vec::new();
    let mut roots = Vec::with_capacity(m);
    for x1 in rows {
        let s1 = i128::from(x1) * i128::from(x1);
        'pairs: for x2 in 0..=bound {
            let s2 = i128::from(x2) * i128::from(x2);
            roots.clear();
            roots.push(x1 as u128);
            roots.push(x2 as u128);
            // s_{k} = 2 + 2 s_{k-1} − s_{k-2}, the recurrence behind closed_form.
            let (mut prev, mut cur) = (s1, s2);
            for _ in 2..m {
                let next = 2 + 2 * cur - prev;
                if next < 0 || !is_square_u128(next as u128) {
                    continue 'pairs;
                }
                roots.push((next as u128).isqrt());
                prev = cur;
                cur = next;
            }
            if is_consecutive(&roots) {
                continue;
            }
            out.push(BuchiSequence {
                values: roots.iter().map(|&r| BigInt::from(r)).collect(),
            });
        }
    }
    out
}

/// Whether nonnegative `roots` are `|ν + i|` for some integer `ν`.
fn is_consecutive(roots: &[u128]) -> bool {
    let x1 = roots[0] as i128;
    [x1 - 1, -x1 - 1].into_iter().any(|nu| {
        roots
            .iter()
            .enumerate()
            .all(|(i, &x)| (nu + i as i128 + 1).unsigned_abs() == x)
    })
}

fn search_big(m: usize, bound: u64, rows: Range<u64>) -> Vec<BuchiSequence> {
    let mut out = Vec::new();
    let two = BigInt::from(2);
    for x1 in rows {
        let s1 = BigInt::from(x1).pow(2);
        'pairs: for x2 in 0..=bound {
            let s2 = BigInt::from(x2).pow(2);
            let mut values = Vec::with_capacity(m);
            values.push(BigInt::from(x1));
            values.push(BigInt::from(x2));
            let (mut prev, mut cur) = (s1.clone(), s2);
            for _ in 2..m {
                let next = &two + (&cur << 1) - &prev;
                let Some(r) = int_sqrt(&next) else {
                    continue 'pairs;
                };
                values.push(r);
                prev = cur;
                cur = next;
            }
            let seq = BuchiSequence { values };
            if classify_trivial(&seq).is_none() {
                out.push(seq);
            }
        }
    }
    out
}

impl BuchiSequence {
    /// Whether the sequence is of the form `|ν + i|`.
    pub fn is_trivial(&self) -> bool {
        classify_trivial(self).is_some()
    }

    /// Squares of the terms.
    pub fn squares(&self) -> Vec<BigInt> {
        self.values.iter().map(|x| x * x).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_traits::{ToPrimitive, Zero};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn second_difference_examples() {
        assert_eq!(second_difference(&ints(&[1, 4, 9, 16])).unwrap(), ints(&[2, 2]));
        assert_eq!(
            second_difference(&ints(&[36, 529, 1024, 1521])).unwrap(),
            ints(&[2, 2])
        );
        assert_eq!(second_difference(&ints(&[0, 0, 0])).unwrap(), ints(&[0]));
        assert_eq!(
            second_difference(&ints(&[1, 4])),
            Err(SequenceError::TooShort(2))
        );
    }

    #[test]
    fn is_buchi_examples() {
        assert!(is_buchi(&ints(&[6, 23, 32, 39])).unwrap());
        assert!(is_buchi(&ints(&[2, 1, 0, 1, 2])).unwrap());
        assert!(!is_buchi(&ints(&[1, 2, 4])).unwrap());
    }

    #[test]
    fn classify_examples() {
        let w = classify_trivial(&BuchiSequence::from_i64(&[1, 2, 3, 4]).unwrap()).unwrap();
        assert_eq!(w.nu, BigInt::from(0));
        assert!(classify_trivial(&BuchiSequence::from_i64(&[6, 23, 32, 39]).unwrap()).is_none());
        let w = classify_trivial(&BuchiSequence::from_i64(&[2, 1, 0, 1, 2]).unwrap()).unwrap();
        assert_eq!(w.nu, BigInt::from(-3));
        assert_eq!(w.signs[0], SignChoice::Minus);
        assert_eq!(w.signs[4], SignChoice::Plus);
    }

    #[test]
    fn closed_form_examples() {
        let (a, b) = (BigInt::from(36), BigInt::from(529));
        assert_eq!(closed_form(&a, &b, 3), BigInt::from(1024));
        assert_eq!(closed_form(&a, &b, 4), BigInt::from(1521));
        let z = BigInt::zero();
        for n in 1..10i64 {
            assert_eq!(closed_form(&z, &z, n as u64), BigInt::from((n - 1) * (n - 2)));
        }
    }

    /// Direct enumeration of every `(x_1, x_2)` pair, independent of the
    /// recurrence and of the residue filters.
    fn brute_force(m: usize, bound: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for x1 in 0..=bound {
            'p: for x2 in 0..=bound {
                let mut seq = vec![x1, x2];
                for n in 3..=m as i64 {
                    let sq = (n - 1) * (n - 2) - (n - 2) * x1 * x1 + (n - 1) * x2 * x2;
                    if sq < 0 {
                        continue 'p;
                    }
                    let r = (sq as f64).sqrt() as i64;
                    let r = (r - 2..=r + 2).find(|r| *r >= 0 && r * r == sq);
                    match r {
                        Some(r) => seq.push(r),
                        None => continue 'p,
                    }
                }
                let trivial = [x1 - 1, -x1 - 1]
                    .iter()
                    .any(|nu| seq.iter().enumerate().all(|(i, &x)| (nu + i as i64 + 1).abs() == x));
                if !trivial {
                    out.push(seq);
                }
            }
        }
        out.sort();
        out
    }

    fn as_i64(seqs: &[BuchiSequence]) -> Vec<Vec<i64>> {
        seqs.iter()
            .map(|s| s.values().iter().map(|x| x.to_i64().unwrap()).collect())
            .collect()
    }

    #[test]
    fn search_examples() {
        let four = search(4, 100).unwrap();
        assert!(four.contains(&BuchiSequence::from_i64(&[6, 23, 32, 39]).unwrap()));
        assert_eq!(
            as_i64(&four),
            vec![
                vec![6, 23, 32, 39],
                vec![16, 87, 122, 149],
                vec![39, 32, 23, 6],
                vec![39, 70, 91, 108],
            ]
        );
        assert!(search(5, 1000).unwrap().is_empty());
        // No nontrivial triple has both leading terms ≤ 5; one appears by 10.
        assert!(search(3, 5).unwrap().is_empty());
        assert_eq!(
            as_i64(&search(3, 10).unwrap()),
            vec![vec![0, 7, 10], vec![3, 8, 11], vec![10, 7, 0]]
        );
        assert_eq!(search(2, 10), Err(SequenceError::TooShort(2)));
    }

    #[test]
    fn search_matches_brute_force() {
        for m in 3..=6 {
            assert_eq!(as_i64(&search(m, 60).unwrap()), brute_force(m, 60), "m = {m}");
        }
    }

    #[test]
    fn big_path_matches_small_path() {
        for m in 3..=5 {
            let small = search_small(m, 60, 0..61);
            let mut small = small;
            small.sort();
            let mut big = search_big(m, 60, 0..61);
            big.sort();
            assert_eq!(small, big);
        }
    }

    #[test]
    fn row_partition_is_output_invariant() {
        let whole = search(4, 150).unwrap();
        let mut parts = Vec::new();
        for chunk in [0..37, 37..38, 38..100, 100..151] {
            parts.extend(search_rows(4, 150, chunk).unwrap());
        }
        assert_eq!(whole, parts);
    }

    #[test]
    fn trivial_sequences_are_recognized() {
        for nu in -20i64..=20 {
            for m in 3..=10i64 {
                let raw: Vec<BigInt> = (1..=m).map(|i| BigInt::from(nu + i)).collect();
                assert!(is_buchi(&raw).unwrap());
                let seq = BuchiSequence::new(raw).unwrap();
                let w = classify_trivial(&seq).unwrap();
                assert_eq!(w.nu, BigInt::from(nu));
            }
        }
    }

    #[test]
    fn search_output_reverifies_from_squares() {
        for seq in search(4, 200).unwrap() {
            // Signs are gauge: any sign flip of the stored values is still Büchi.
            let flipped: Vec<BigInt> = seq
                .values()
                .iter()
                .enumerate()
                .map(|(i, x)| if i % 2 == 0 { -x } else { x.clone() })
                .collect();
            assert!(is_buchi(&flipped).unwrap());
            assert!(is_buchi(seq.values()).unwrap());
            assert!(!seq.is_trivial());
            let (a, b) = (&seq.values()[0], &seq.values()[1]);
            for (n, sq) in seq.squares().iter().enumerate() {
                assert_eq!(closed_form(&(a * a), &(b * b), n as u64 + 1), *sq);
            }
        }
    }

    proptest! {
        #[test]
        fn closed_form_has_second_difference_two(
            x1 in -1_000_000_000i64..1_000_000_000,
            x2 in -1_000_000_000i64..1_000_000_000,
        ) {
            let a = BigInt::from(x1).pow(2);
            let b = BigInt::from(x2).pow(2);
            let vals: Vec<BigInt> = (1..=12).map(|n| closed_form(&a, &b, n)).collect();
            prop_assert_eq!(&vals[0], &a);
            prop_assert_eq!(&vals[1], &b);
            for d in second_difference(&vals).unwrap() {
                prop_assert_eq!(d, BigInt::from(2));
            }
        }
    }
}
