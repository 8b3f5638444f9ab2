//! Brute-force length counts of Weyl group elements, used as an independent
//! check on the Poincaré series.
//!
//! Elements are integer matrices acting on the root lattice. Right
//! multiplication by `s_i` changes column `j` to `col_j - a_ij col_i` and
//! negates column `i`. Breadth-first search from the identity reaches every
//! element at depth equal to its length, and since `l(ws) = l(w) +- 1` a new
//! level only has to be checked against the one two steps back.

use std::collections::HashSet;
use std::hash::Hash;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 5_000_000;

/// `counts[k]` is the number of elements of length `k`. When `truncated` is
/// set the search hit the element cap and only the returned levels are
/// complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthCounts {
    pub counts: Vec<u64>,
    pub truncated: bool,
}

trait Entry: Clone + Eq + Hash + Send + Sync {
    fn from_i64(v: i64) -> Self;
    /// `x - c * y`, or `None` on overflow.
    fn sub_scaled(x: &Self, c: i64, y: &Self) -> Option<Self>;
    fn neg(x: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn sub_scaled(x: &i64, c: i64, y: &i64) -> Option<i64> {
        x.checked_sub(c.checked_mul(*y)?)
    }

    fn neg(x: &i64) -> Option<i64> {
        x.checked_neg()
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn sub_scaled(x: &BigInt, c: i64, y: &BigInt) -> Option<BigInt> {
        Some(x - BigInt::from(c) * y)
    }

    fn neg(x: &BigInt) -> Option<BigInt> {
        Some(-x)
    }
}

struct Overflow;

fn times_simple<T: Entry>(a: &CartanMatrix, m: &[T], i: usize) -> std::result::Result<Vec<T>, Overflow> {
    let n = a.rank();
    let mut out = m.to_vec();
    for j in 0..n {
        let c = a.get(i, j);
        if j == i || c == 0 {
            continue;
        }
        for r in 0..n {
            out[r * n + j] = T::sub_scaled(&m[r * n + j], c, &m[r * n + i]).ok_or(Overflow)?;
        }
    }
    for r in 0..n {
        out[r * n + i] = T::neg(&m[r * n + i]).ok_or(Overflow)?;
    }
    Ok(out)
}

fn run<T: Entry>(
    a: &CartanMatrix,
    coset: &[usize],
    max_len: usize,
    cap: usize,
) -> std::result::Result<LengthCounts, Overflow> {
    let n = a.rank();
    let mut id = vec![T::from_i64(0); n * n];
    for i in 0..n {
        id[i * n + i] = T::from_i64(1);
    }
    let mut prev: HashSet<Vec<T>> = HashSet::new();
    let mut cur: HashSet<Vec<T>> = HashSet::from([id]);
    let mut counts = vec![1u64];
    let mut total = 1usize;
    let mut truncated = false;
    for _ in 0..max_len {
        let next: HashSet<Vec<T>> = cur
            .par_iter()
            .map(|w| {
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let v = times_simple(a, w, i)?;
                    if !prev.contains(&v) {
                        out.push(v);
                    }
                }
                Ok(out)
            })
            .collect::<std::result::Result<Vec<_>, Overflow>>()?
            .into_iter()
            .flatten()
            .collect();
        if next.is_empty() {
            break;
        }
        total += next.len();
        if total > cap {
            truncated = true;
            break;
        }
        let count = if coset.is_empty() {
            next.len() as u64
        } else {
            // minimal coset representatives: every s_i with i in the
            // subset makes the element longer
            next.par_iter()
                .map(|v| {
                    for &i in coset {
                        if cur.contains(&times_simple(a, v, i)?) {
                            return Ok(0u64);
                        }
                    }
                    Ok(1)
                })
                .collect::<std::result::Result<Vec<_>, Overflow>>()?
                .into_iter()
                .sum()
        };
        counts.push(count);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(LengthCounts { counts, truncated })
}

fn count(a: &CartanMatrix, coset: &[usize], max_len: usize, cap: usize) -> LengthCounts {
    match run::<i64>(a, coset, max_len, cap) {
        Ok(c) => c,
        Err(Overflow) => match run::<BigInt>(a, coset, max_len, cap) {
            Ok(c) => c,
            Err(Overflow) => unreachable!("big integers do not overflow"),
        },
    }
}

/// Number of elements of each length `0..=max_len`, stopping early if more
/// than `cap` elements would be stored.
pub fn weyl_counts(a: &CartanMatrix, max_len: usize, cap: usize) -> LengthCounts {
    count(a, &[], max_len, cap)
}

/// Length counts of minimal left coset representatives of `W / W_I`.
pub fn coset_counts(a: &CartanMatrix, subset: &[usize], max_len: usize, cap: usize) -> Result<LengthCounts> {
    if let Some(&bad) = subset.iter().find(|&&i| i >= a.rank()) {
        return Err(Error::Precondition(format!(
            "subset index {} out of range for rank {}",
            bad + 1,
            a.rank()
        )));
    }
    Ok(count(a, subset, max_len, cap))
}
