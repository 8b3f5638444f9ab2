//! Poincaré series of Weyl groups of Kac-Moody algebras.
//!
//! Finite components use the degree product; everything else goes through
//! the alternating sum over proper parabolic subgroups. Results are memoized
//! per connected bond graph, so a survey over many matrices shares work.

mod cache;
mod graph;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, RwLock};

use num_traits::Signed;
use rayon::prelude::*;

use crate::cartan::{classify, determinant, recognize, CartanMatrix, FiniteType, TypeClass};
use crate::error::{Error, Result};
use crate::ratfunc::{poly_lcm, IntPoly, RatFunc};

pub use cache::{load_cache, save_cache, CACHE_ENV};
pub(crate) use graph::BondGraph;
pub use graph::BondKey;

/// Subset recursion is exponential in the rank; this is the hard ceiling.
pub const MAX_RANK: usize = 16;

/// `prod_i (1 + t + ... + t^(d_i - 1))`.
pub fn poincare_from_degrees(degrees: &[u32]) -> IntPoly {
    degrees
        .iter()
        .fold(IntPoly::one(), |acc, &d| &acc * &IntPoly::geometric(d as usize))
}

/// Poincaré polynomial of a finite-type matrix.
pub fn finite_poincare(tc: &TypeClass) -> Result<IntPoly> {
    if !tc.is_finite() {
        return Err(Error::Precondition("matrix is not of finite type".into()));
    }
    Ok(poincare_from_degrees(&tc.degrees()))
}

/// Closed form for the untwisted affine extension of a finite type:
/// `P(A) * prod 1/(1 - t^(d_i - 1))`.
pub fn bott_affine(base: FiniteType) -> RatFunc {
    let degrees = base.degrees();
    let num = poincare_from_degrees(&degrees);
    let den = degrees.iter().fold(IntPoly::one(), |acc, &d| {
        &acc * &IntPoly::one_minus_t_pow(d as usize - 1)
    });
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// Closed form for a rank-`n` matrix all of whose off-diagonal pairs share
/// one bond class, given the rank-2 series `p2` of that class.
pub fn theorem1_closed(p2: &RatFunc, n: usize) -> Result<RatFunc> {
    if n < 2 {
        return Err(Error::Precondition("rank must be at least 2".into()));
    }
    let n = n as i64;
    let t = RatFunc::from_poly(IntPoly::from_i64s(&[0, 1]));
    let one_t = RatFunc::from_poly(IntPoly::from_i64s(&[1, 1]));
    let c1 = RatFunc::from_integer((n - 1) * (n - 2) / 2);
    let c2 = RatFunc::from_integer((n + 1) * (n - 2) / 2);
    let c3 = RatFunc::from_integer(n * (n - 1) / 2);
    let den = &(&(&c1 * &t) * p2) - &(&c2 * p2);
    let den = &den + &(&c3 * &one_t);
    &(&one_t * p2) / &den
}

/// Memo entry for a connected bond graph.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentEntry {
    pub key: BondKey,
    pub series: RatFunc,
    pub finite: Option<FiniteType>,
}

/// Data for a parabolic subset: `P_I` and, when every component of `I` is
/// finite, `D_I = sum(d - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsetData {
    pub series: RatFunc,
    pub dim: Option<u64>,
}

/// `P(A)` as the quotient `L / Q'` with `L` the lcm of the finite parabolic
/// Poincaré polynomials and `Q'` an integer polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct LcmForm {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
}

#[derive(Clone, Debug)]
pub struct PoincareResult {
    pub series: RatFunc,
    pub type_class: TypeClass,
    pub numerator_form: Option<LcmForm>,
}

/// Thread-safe memoizing evaluator.
#[derive(Default)]
pub struct PoincareEngine {
    memo: RwLock<HashMap<BondKey, Arc<ComponentEntry>>>,
}

impl PoincareEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entries(&self) -> Vec<Arc<ComponentEntry>> {
        let mut v: Vec<_> = self.memo.read().unwrap().values().cloned().collect();
        v.sort_by(|a, b| a.key.cmp(&b.key));
        v
    }

    pub(crate) fn insert(&self, e: ComponentEntry) {
        self.memo
            .write()
            .unwrap()
            .entry(e.key.clone())
            .or_insert_with(|| Arc::new(e));
    }

    fn check_rank(n: usize) -> Result<()> {
        if n > MAX_RANK {
            return Err(Error::RankLimit {
                rank: n,
                limit: MAX_RANK,
            });
        }
        Ok(())
    }

    pub(crate) fn component(&self, g: &BondGraph) -> Result<Arc<ComponentEntry>> {
        let key = g.key();
        if let Some(e) = self.memo.read().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let entry = self.compute(g, key.clone())?;
        Ok(self
            .memo
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::new(entry))
            .clone())
    }

    fn compute(&self, g: &BondGraph, key: BondKey) -> Result<ComponentEntry> {
        let n = g.rank();
        if n == 1 {
            return Ok(ComponentEntry {
                key,
                series: RatFunc::from_poly(IntPoly::geometric(2)),
                finite: Some(FiniteType::A(1)),
            });
        }
        let a = g.to_cartan();
        if self.is_finite_connected(g, &a)? {
            let label = recognize(&a).ok_or_else(|| {
                Error::TheoremViolation(format!("finite bond graph {:?} has no catalog match", key.as_bytes()))
            })?;
            return Ok(ComponentEntry {
                key,
                series: RatFunc::from_poly(poincare_from_degrees(&label.degrees())),
                finite: Some(label),
            });
        }
        Ok(ComponentEntry {
            key,
            series: self.recursion(g)?,
            finite: None,
        })
    }

    /// A connected graph is finite iff its determinant is positive and every
    /// vertex-deleted subgraph is finite.
    fn is_finite_connected(&self, g: &BondGraph, a: &CartanMatrix) -> Result<bool> {
        if !determinant(a).is_positive() {
            return Ok(false);
        }
        let n = g.rank();
        let full = (1u32 << n) - 1;
        for v in 0..n {
            for comp in g.components_of(full & !(1 << v)) {
                if self.component(&g.sub(&comp))?.finite.is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `P = (-1)^(n+1) / sum_{I proper} (-1)^|I| / P_I`.
    fn recursion(&self, g: &BondGraph) -> Result<RatFunc> {
        let n = g.rank();
        let full = (1u32 << n) - 1;
        let terms: Vec<(Vec<BondKey>, i64, RatFunc)> = (1..full)
            .into_par_iter()
            .map(|mask| {
                let mut parts = Vec::new();
                for comp in g.components_of(mask) {
                    parts.push(self.component(&g.sub(&comp))?);
                }
                parts.sort_by(|x, y| x.key.cmp(&y.key));
                let series = parts.iter().fold(RatFunc::one(), |acc, e| &acc * &e.series);
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                Ok((parts.into_iter().map(|e| e.key.clone()).collect(), sign, series))
            })
            .collect::<Result<_>>()?;
        let mut grouped: BTreeMap<Vec<BondKey>, (i64, RatFunc)> = BTreeMap::new();
        for (k, sign, s) in terms {
            grouped.entry(k).or_insert((0, s)).0 += sign;
        }
        let mut sum = RatFunc::one();
        for (_, (c, s)) in grouped {
            if c != 0 {
                sum = &sum + &(&RatFunc::from_integer(c) / &s)?;
            }
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        &RatFunc::from_integer(sign) / &sum
    }

    /// `P_I` and `D_I` for the parabolic subgroup on `mask`.
    pub fn subset(&self, a: &CartanMatrix, mask: u32) -> Result<SubsetData> {
        Self::check_rank(a.rank())?;
        self.subset_of(&BondGraph::from_cartan(a), mask)
    }

    pub(crate) fn subset_of(&self, g: &BondGraph, mask: u32) -> Result<SubsetData> {
        let mut series = RatFunc::one();
        let mut dim = Some(0u64);
        for comp in g.components_of(mask) {
            let e = self.component(&g.sub(&comp))?;
            series = &series * &e.series;
            dim = match (dim, e.finite) {
                (Some(d), Some(t)) => Some(d + t.dimension()),
                _ => None,
            };
        }
        Ok(SubsetData { series, dim })
    }

    /// Poincaré series of `W(A)`.
    pub fn series(&self, a: &CartanMatrix) -> Result<RatFunc> {
        Self::check_rank(a.rank())?;
        let full = if a.rank() == 0 { 0 } else { (1u32 << a.rank()) - 1 };
        Ok(self.subset(a, full)?.series)
    }

    /// Whether `W(A)` is finite, decided on the bond graph.
    pub fn is_finite(&self, a: &CartanMatrix) -> Result<bool> {
        Self::check_rank(a.rank())?;
        let full = (1u32 << a.rank()) - 1;
        Ok(self.subset(a, full)?.dim.is_some())
    }

    pub fn poincare(&self, a: &CartanMatrix) -> Result<PoincareResult> {
        Self::check_rank(a.rank())?;
        let type_class = classify(a)?;
        let series = self.series(a)?;
        if type_class.is_finite() != series.is_polynomial() {
            return Err(Error::TheoremViolation(format!(
                "type is {} but the series {} a polynomial",
                if type_class.is_finite() { "finite" } else { "infinite" },
                if series.is_polynomial() { "is" } else { "is not" }
            )));
        }
        let numerator_form = if type_class.is_finite() {
            None
        } else {
            Some(self.lcm_form(a, &series)?)
        };
        Ok(PoincareResult {
            series,
            type_class,
            numerator_form,
        })
    }

    /// `P(A) / P(A_I)`: the series of minimal coset representatives.
    pub fn quotient_series(&self, a: &CartanMatrix, subset: &[usize]) -> Result<RatFunc> {
        Self::check_rank(a.rank())?;
        let mut mask = 0u32;
        for &i in subset {
            if i >= a.rank() {
                return Err(Error::Precondition(format!(
                    "subset index {} out of range for rank {}",
                    i + 1,
                    a.rank()
                )));
            }
            mask |= 1 << i;
        }
        let p = self.series(a)?;
        let pi = self.subset(a, mask)?.series;
        &p / &pi
    }

    pub fn lcm_numerator_form(&self, a: &CartanMatrix) -> Result<LcmForm> {
        if self.is_finite(a)? {
            return Err(Error::Precondition("finite type: P(A) is already a polynomial".into()));
        }
        let series = self.series(a)?;
        self.lcm_form(a, &series)
    }

    fn lcm_form(&self, a: &CartanMatrix, p: &RatFunc) -> Result<LcmForm> {
        let g = BondGraph::from_cartan(a);
        let full = (1u32 << a.rank()) - 1;
        let mut seen = HashSet::new();
        let mut polys = Vec::new();
        for mask in 1..full {
            let s = self.subset_of(&g, mask)?;
            if s.dim.is_some() {
                let poly = s.series.as_polynomial().expect("finite parabolic is polynomial");
                if seen.insert(poly.clone()) {
                    polys.push(poly);
                }
            }
        }
        let l = poly_lcm(&polys);
        let q = (&l * p.den()).div_exact(p.num()).ok_or_else(|| {
            Error::TheoremViolation(format!(
                "numerator {} of P(A) does not divide lcm of finite parabolics {}",
                p.num(),
                l
            ))
        })?;
        // L is monic-positive, so fix the sign on Q'
        let (numerator, denominator) = if l.leading().is_some_and(|c| c.is_negative()) {
            (-l, -q)
        } else {
            (l, q)
        };
        Ok(LcmForm { numerator, denominator })
    }
}

/// One-shot convenience wrapper around a fresh engine.
pub fn poincare(a: &CartanMatrix) -> Result<PoincareResult> {
    PoincareEngine::new().poincare(a)
}

pub fn quotient_series(a: &CartanMatrix, subset: &[usize]) -> Result<RatFunc> {
    PoincareEngine::new().quotient_series(a, subset)
}

pub fn lcm_numerator_form(a: &CartanMatrix) -> Result<LcmForm> {
    PoincareEngine::new().lcm_numerator_form(a)
}

/// `sum_{I subset S} (-1)^|I| P / P_I`, which equals `t^D` for finite type.
pub fn residual_sum(engine: &PoincareEngine, a: &CartanMatrix) -> Result<RatFunc> {
    let n = a.rank();
    PoincareEngine::check_rank(n)?;
    let g = BondGraph::from_cartan(a);
    let full = (1u32 << n) - 1;
    let p = engine.subset_of(&g, full)?.series;
    let mut sum = RatFunc::zero();
    for mask in 0..=full {
        let pi = engine.subset_of(&g, mask)?.series;
        let term = (&p / &pi)?;
        sum = if mask.count_ones() % 2 == 0 {
            &sum + &term
        } else {
            &sum - &term
        };
    }
    Ok(sum)
}
