//! Poincaré series of Weyl groups of Kac-Moody algebras, computed exactly.

pub mod cartan;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod poincare;
pub mod ratfunc;
pub mod report;
pub mod weyl;

pub use cartan::{classify, parse, CartanMatrix, CoxeterGraph, TypeClass};
pub use error::{Error, Result};
pub use poincare::{poincare, PoincareEngine, PoincareResult};
pub use ratfunc::{IntPoly, RatFunc, TruncSeries};
