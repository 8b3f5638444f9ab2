//! JSON report builders shared by the command-line tool and the C ABI.
//!
//! Maps are `BTreeMap`-backed, so key order and therefore output bytes are
//! deterministic. Big integers are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cartan::{CartanMatrix, Kind, TypeClass};
use crate::error::Result;
use crate::invariants::{Chain, Chains, ClrReport, HomotopyIndices, KInvariants, KacReport, Survey};
use crate::poincare::{PoincareEngine, PoincareResult};
use crate::ratfunc::{IntPoly, RatFunc, TruncSeries};
use crate::weyl::LengthCounts;

pub fn ratfunc_json(f: &RatFunc) -> Value {
    serde_json::to_value(f).expect("serializable")
}

pub fn poly_json(p: &IntPoly) -> Value {
    serde_json::to_value(p).expect("serializable")
}

fn rational_str(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn series_json(s: &TruncSeries) -> Value {
    Value::Array(s.coeffs().iter().map(|c| Value::String(rational_str(c))).collect())
}

fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i + 1).collect()
}

pub fn classify_report(a: &CartanMatrix, tc: &TypeClass) -> Value {
    let components: Vec<Value> = tc
        .components
        .iter()
        .map(|c| {
            let (kind, label, degrees) = match &c.kind {
                Kind::Finite { label, degrees } => ("finite", json!(label.to_string()), json!(degrees)),
                Kind::Affine => ("affine", Value::Null, Value::Null),
                Kind::Indefinite => ("indefinite", Value::Null, Value::Null),
            };
            json!({
                "indices": one_based(&c.indices),
                "type": kind,
                "label": label,
                "degrees": degrees,
            })
        })
        .collect();
    json!({
        "rank": a.rank(),
        "components": components,
        "finite": tc.is_finite(),
        "dimension": tc.dim,
        "symmetrizable": a.is_symmetrizable(),
    })
}

pub fn poincare_report(a: &CartanMatrix, r: &PoincareResult) -> Value {
    let (lcm_num, lcm_den) = match &r.numerator_form {
        Some(f) => (poly_json(&f.numerator), poly_json(&f.denominator)),
        None => (Value::Null, Value::Null),
    };
    json!({
        "num": poly_json(r.series.num()),
        "den": poly_json(r.series.den()),
        "degree": r.series.degree(),
        "type": classify_report(a, &r.type_class),
        "lcm_numerator": lcm_num,
        "lcm_denominator": lcm_den,
    })
}

pub fn series_report(f: &RatFunc, order: usize) -> Result<Value> {
    Ok(json!({
        "order": order,
        "coefficients": series_json(&f.series(order)?),
    }))
}

pub fn quotient_report(subset: &[usize], f: &RatFunc, order: usize) -> Result<Value> {
    Ok(json!({
        "subset": one_based(subset),
        "num": poly_json(f.num()),
        "den": poly_json(f.den()),
        "coefficients": series_json(&f.series(order)?),
    }))
}

/// Compares BFS length counts with the Taylor coefficients of `series`
/// over every level the search completed.
pub fn oracle_report(series: &RatFunc, counts: &LengthCounts, depth: usize) -> Result<Value> {
    let taylor = series.series(depth)?;
    let expected: Vec<BigRational> = taylor.coeffs().to_vec();
    let mut bfs: Vec<BigRational> = counts
        .counts
        .iter()
        .map(|&c| BigRational::from_integer(c.into()))
        .collect();
    let compared = if counts.truncated {
        bfs.len()
    } else {
        // a finite group runs out of elements: the rest of the levels are empty
        bfs.resize(depth + 1, BigRational::zero());
        depth + 1
    };
    let matched = bfs[..compared] == expected[..compared];
    Ok(json!({
        "depth": depth,
        "bfs": bfs[..compared].iter().map(rational_str).collect::<Vec<_>>(),
        "series": series_json(&taylor),
        "levels_compared": compared,
        "truncated": counts.truncated,
        "match": matched,
    }))
}

pub fn kac_report(r: &KacReport) -> Value {
    json!({
        "epsilon": r.epsilon,
        "symmetrizable": r.symmetrizable,
        "in_scope": r.in_scope,
        "c": series_json(&r.c),
        "b": series_json(&r.b),
        "first_negative": r.first_negative.as_ref().map(|(k, v)| json!({"k": k, "value": rational_str(v)})),
    })
}

pub fn clr_report(r: &ClrReport) -> Value {
    json!({
        "degree": r.degree,
        "K0": r.k.k0,
        "K1": r.k.k1,
        "holds": r.holds,
        "leading_ratio": rational_str(&r.leading_ratio),
        "leading_ratio_matches": r.leading_ratio_matches,
    })
}

fn chain_json(c: &Chain) -> Value {
    json!(c.index_lists())
}

pub fn chains_report(c: &Chains, k: &KInvariants) -> Value {
    json!({
        "infinite": c.infinite.iter().map(chain_json).collect::<Vec<_>>(),
        "quasi_infinite": c.quasi_infinite.iter().map(chain_json).collect::<Vec<_>>(),
        "K0": k.k0,
        "K1": k.k1,
    })
}

pub fn indices_report(h: &HomotopyIndices) -> Value {
    Value::Object(
        h.indices
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
            .collect(),
    )
}

pub fn survey_report(s: &Survey) -> Value {
    json!({
        "n": s.n,
        "distinct": s.distinct,
        "expected": s.expected,
        "conjecture_holds": s.conjecture_holds(),
    })
}

pub fn eval_report(q: &BigRational, value: &BigRational) -> Value {
    json!({ "q": rational_str(q), "value": rational_str(value) })
}

pub fn graph_report(engine: &PoincareEngine, a: &CartanMatrix) -> Result<Value> {
    let p = engine.series(a)?;
    Ok(json!({
        "cartan": a.rows(),
        "num": poly_json(p.num()),
        "den": poly_json(p.den()),
    }))
}

/// Human-readable product form: powers of `t` and cyclotomic-style factors
/// `(1 + t + ... + t^(k-1))` are split off greedily, largest first.
pub fn factored(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut rest = p.clone();
    let mut parts = Vec::new();
    let low = rest.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        rest = IntPoly::new(rest.coeffs()[low..].to_vec());
        parts.push(if low == 1 { "t".to_string() } else { format!("t^{low}") });
    }
    let mut k = rest.degree().unwrap_or(0) + 1;
    while k >= 2 {
        let g = IntPoly::geometric(k);
        match rest.div_exact(&g) {
            Some(q) => {
                parts.push(format!("({g})"));
                rest = q;
                k = k.min(rest.degree().unwrap_or(0) + 1);
            }
            None => k -= 1,
        }
    }
    let minus_one = IntPoly::constant(-BigInt::one());
    if rest == minus_one {
        parts.insert(0, "-".into());
    } else if !rest.is_one() {
        parts.push(format!("({rest})"));
    }
    if parts.is_empty() || parts == ["-"] {
        parts.push("1".into());
    }
    parts.concat()
}

pub fn pretty_ratfunc(f: &RatFunc) -> String {
    if f.den().is_one() {
        factored(f.num())
    } else {
        format!("{} / {}", factored(f.num()), factored(f.den()))
    }
}
