use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cartan::CoxeterGraph;
use crate::error::{Error, Result};
use crate::poincare::PoincareEngine;
use crate::ratfunc::RatFunc;

/// Nonzero homotopy indices `k -> i_k` for `k <= order`, in the convention
/// `P (1-t)^n = prod_(k odd) (1-t^k)^(-i_k) * prod_(k even) (1-t^k)^(i_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyIndices {
    pub rank: usize,
    pub order: usize,
    pub indices: BTreeMap<usize, BigInt>,
}

/// Coefficients of `(1 - t^k)^e` up to `t^order`, for any integer `e`.
fn binomial_power(k: usize, e: &BigInt, order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    let mut c = BigInt::one();
    let mut j = 0usize;
    while j * k <= order {
        out[j * k] = c.clone();
        // C(e, j+1) (-1)^(j+1) from C(e, j) (-1)^j
        c = -(&c * (e - BigInt::from(j))) / BigInt::from(j + 1);
        j += 1;
    }
    out
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn integer_series(f: &RatFunc, order: usize) -> Result<Vec<BigInt>> {
    f.series(order)?
        .to_integers()
        .ok_or_else(|| Error::TheoremViolation("Poincaré series has non-integer coefficients".into()))
}

/// Peels `P(Gamma) (1-t)^n` one power of `t` at a time.
pub fn homotopy_indices(engine: &PoincareEngine, g: &CoxeterGraph, order: usize) -> Result<HomotopyIndices> {
    if order < 1 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    let a = g.to_cartan();
    let n = a.rank();
    let p = engine.series(&a)?;
    let mut f = mul_trunc(
        &integer_series(&p, order)?,
        &binomial_power(1, &BigInt::from(n), order),
        order,
    );
    let mut indices = BTreeMap::new();
    for k in 1..=order {
        let c = f[k].clone();
        if c.is_zero() {
            continue;
        }
        let i = if k % 2 == 1 { c.clone() } else { -c.clone() };
        f = mul_trunc(&f, &binomial_power(k, &c, order), order);
        debug_assert!(f[k].is_zero());
        indices.insert(k, i);
    }
    Ok(HomotopyIndices {
        rank: n,
        order,
        indices,
    })
}

/// Rebuilds the first `order + 1` coefficients of `P(Gamma)` from indices.
pub fn reconstruct(h: &HomotopyIndices) -> Vec<BigInt> {
    let order = h.order;
    let mut f = binomial_power(1, &-BigInt::from(h.rank), order);
    for (&k, i) in &h.indices {
        let e = if k % 2 == 1 { -i.clone() } else { i.clone() };
        f = mul_trunc(&f, &binomial_power(k, &e, order), order);
    }
    f
}
