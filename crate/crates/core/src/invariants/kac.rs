use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cartan::{classify, CartanMatrix, Kind};
use crate::error::{Error, Result};
use crate::poincare::PoincareEngine;
use crate::ratfunc::{IntPoly, RatFunc, TruncSeries};

/// `C(t) = P(A) (1-t)^n (1-t^2)^(-eps)` and `B(t) = 1 - 1/C(t)`, both to
/// order `N`. The conjecture under test says every `b_k` is non-negative.
#[derive(Clone, Debug)]
pub struct KacReport {
    pub symmetrizable: bool,
    pub epsilon: u8,
    pub c: TruncSeries,
    pub b: TruncSeries,
    pub first_negative: Option<(usize, BigRational)>,
    /// False when the input is not a connected indefinite matrix.
    pub in_scope: bool,
}

pub fn kac_check(engine: &PoincareEngine, a: &CartanMatrix, order: usize) -> Result<KacReport> {
    if order < 2 {
        return Err(Error::Precondition("truncation order must be at least 2".into()));
    }
    let n = a.rank();
    let tc = classify(a)?;
    let in_scope = tc.components.len() == 1 && tc.components[0].kind == Kind::Indefinite;
    let symmetrizable = a.is_symmetrizable();
    let epsilon = u8::from(symmetrizable);

    let mut num = IntPoly::one_minus_t_pow(1).pow(n as u32);
    let mut den = IntPoly::one();
    if symmetrizable {
        den = IntPoly::one_minus_t_pow(2);
    }
    let p = engine.series(a)?;
    num = &num * p.num();
    den = &den * p.den();
    let c = RatFunc::new(num, den)?;
    let b = (&RatFunc::one() - &c.inv()?).series(order)?;
    let first_negative = b
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, x)| x.is_negative())
        .map(|(k, x)| (k, x.clone()));
    debug_assert!(b.coeff(0).is_zero());
    Ok(KacReport {
        symmetrizable,
        epsilon,
        c: c.series(order)?,
        b,
        first_negative,
        in_scope,
    })
}
