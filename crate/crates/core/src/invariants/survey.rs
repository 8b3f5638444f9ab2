use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::poincare::PoincareEngine;
use crate::ratfunc::RatFunc;

/// Multiset of bond classes `[#1, #2, #3, #>=4]` over the off-diagonal pairs.
pub type BondCounts = [usize; 4];

#[derive(Clone, Debug)]
pub struct Survey {
    pub n: usize,
    pub distinct: usize,
    pub expected: u64,
    pub witnesses: BTreeMap<BondCounts, RatFunc>,
}

impl Survey {
    pub fn conjecture_holds(&self) -> bool {
        self.distinct as u64 == self.expected
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All `[c1, c2, c3, c4]` with the given sum.
pub fn bond_multisets(total: usize) -> Vec<BondCounts> {
    let mut out = Vec::new();
    for a in 0..=total {
        for b in 0..=total - a {
            for c in 0..=total - a - b {
                out.push([a, b, c, total - a - b - c]);
            }
        }
    }
    out
}

/// Zero-free matrix in normal form whose below-diagonal pairs, taken in
/// lexicographic order, carry the bond classes in ascending order.
pub fn representative(n: usize, counts: &BondCounts) -> CartanMatrix {
    let bonds: Vec<u8> = counts
        .iter()
        .enumerate()
        .flat_map(|(c, &k)| std::iter::repeat_n(c as u8 + 1, k))
        .collect();
    let mut table = vec![0u8; n * n];
    let mut it = bonds.into_iter();
    for i in 1..n {
        for j in 0..i {
            let b = it.next().expect("bond count matches pair count");
            table[i * n + j] = b;
            table[j * n + i] = b;
        }
    }
    CartanMatrix::from_bonds(n, |i, j| table[i * n + j])
}

pub fn kn_survey(engine: &PoincareEngine, n: usize) -> Result<Survey> {
    if !(2..=6).contains(&n) {
        return Err(Error::Precondition(format!(
            "survey rank must be between 2 and 6, got {n}"
        )));
    }
    let pairs = n * (n - 1) / 2;
    let witnesses: BTreeMap<BondCounts, RatFunc> = bond_multisets(pairs)
        .into_par_iter()
        .map(|c| Ok((c, engine.series(&representative(n, &c))?)))
        .collect::<Result<_>>()?;
    let distinct = witnesses.values().collect::<HashSet<_>>().len();
    Ok(Survey {
        n,
        distinct,
        expected: binomial(pairs as u64 + 3, 3),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_surveys() {
        let e = PoincareEngine::new();
        for (n, want) in [(2, 4), (3, 20)] {
            let s = kn_survey(&e, n).unwrap();
            assert_eq!((s.distinct, s.expected), (want, want as u64));
            assert!(s.conjecture_holds());
        }
        assert!(kn_survey(&e, 7).is_err());
        assert!(kn_survey(&e, 1).is_err());
    }

    #[test]
    fn representative_shape() {
        let a = representative(3, &[1, 0, 1, 1]);
        assert_eq!(a.rows(), vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-3, -4, 2]]);
    }
}
