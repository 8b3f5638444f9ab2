use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{recognize, CartanMatrix, FiniteType};
use crate::error::{Error, Result};

/// Largest rank accepted by the exhaustive principal-minor classification.
pub const MAX_CLASSIFY_RANK: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Finite { label: FiniteType, degrees: Vec<u32> },
    Affine,
    Indefinite,
}

impl Kind {
    pub fn is_finite(&self) -> bool {
        matches!(self, Kind::Finite { .. })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Finite { label, .. } => write!(f, "{label}"),
            Kind::Affine => f.write_str("affine"),
            Kind::Indefinite => f.write_str("indefinite"),
        }
    }
}

/// An indecomposable block of a Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub indices: Vec<usize>,
    pub kind: Kind,
}

/// Per-component classification. `dim` is the flag-variety dimension
/// `sum(d_i - 1)` when every component is finite and `None` (infinity)
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeClass {
    pub components: Vec<Component>,
    pub dim: Option<u64>,
}

impl TypeClass {
    pub fn is_finite(&self) -> bool {
        self.dim.is_some()
    }

    /// All degrees of basic invariants across finite components.
    pub fn degrees(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for c in &self.components {
            if let Kind::Finite { degrees, .. } = &c.kind {
                out.extend(degrees);
            }
        }
        out
    }

    pub fn labels(&self) -> Vec<String> {
        self.components.iter().map(|c| c.kind.to_string()).collect()
    }
}

/// Exact determinant by fraction-free elimination. Tries `i128` first and
/// falls back to big integers on overflow.
pub fn determinant(a: &CartanMatrix) -> BigInt {
    let n = a.rank();
    let m: Vec<i128> = a.entries().iter().map(|&x| x as i128).collect();
    match bareiss_i128(n, m) {
        Some(d) => BigInt::from(d),
        None => bareiss_big(n, a.entries().iter().map(|&x| BigInt::from(x)).collect()),
    }
}

fn bareiss_i128(n: usize, mut m: Vec<i128>) -> Option<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r * n + k] != 0);
            match swap {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(m[i * n + k].checked_mul(m[k * n + j])?)?;
                m[i * n + j] = v / prev;
            }
        }
        prev = pivot;
    }
    Some(sign * m[n * n - 1])
}

fn bareiss_big(n: usize, mut m: Vec<BigInt>) -> BigInt {
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = m[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i * n + j] * &pivot - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
        }
        prev = pivot;
    }
    let d = m[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BasicKind {
    Finite,
    Affine,
    Indefinite,
}

/// Trichotomy of an indecomposable matrix by principal minors: finite if all
/// are positive, affine if all proper ones are positive and the determinant
/// vanishes, indefinite otherwise.
pub(crate) fn basic_kind(a: &CartanMatrix) -> BasicKind {
    let n = a.rank();
    let full = (1u32 << n) - 1;
    // smaller minors first so an indefinite witness shows up early
    let mut masks: Vec<u32> = (1..full).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if !determinant(&a.principal(&idx)).is_positive() {
            return BasicKind::Indefinite;
        }
    }
    let d = determinant(a);
    if d.is_positive() {
        BasicKind::Finite
    } else if d.is_zero() {
        BasicKind::Affine
    } else {
        BasicKind::Indefinite
    }
}

/// Classifies every indecomposable component; finite components get their
/// catalog label and degrees.
pub fn classify(a: &CartanMatrix) -> Result<TypeClass> {
    let mut components = Vec::new();
    let mut dim = Some(0u64);
    for idx in a.components() {
        if idx.len() > MAX_CLASSIFY_RANK {
            return Err(Error::RankLimit {
                rank: idx.len(),
                limit: MAX_CLASSIFY_RANK,
            });
        }
        let sub = a.principal(&idx);
        let kind = match basic_kind(&sub) {
            BasicKind::Finite => {
                let label = recognize(&sub).ok_or_else(|| {
                    Error::TheoremViolation(format!(
                        "component {:?} has positive principal minors but matches no finite Dynkin diagram",
                        idx.iter().map(|i| i + 1).collect::<Vec<_>>()
                    ))
                })?;
                dim = dim.map(|d| d + label.dimension());
                Kind::Finite {
                    label,
                    degrees: label.degrees(),
                }
            }
            BasicKind::Affine => {
                dim = None;
                Kind::Affine
            }
            BasicKind::Indefinite => {
                dim = None;
                Kind::Indefinite
            }
        };
        components.push(Component { indices: idx, kind });
    }
    Ok(TypeClass { components, dim })
}
