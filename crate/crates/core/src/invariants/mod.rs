//! Conjecture checks and derived invariants of Poincaré series.

mod chains;
mod indices;
mod kac;
mod survey;

pub use chains::{
    all_chains, chain_weight, chains, clr_check, k_invariants, Chain, Chains, ClrReport, KInvariants,
    MAX_ALL_CHAINS_RANK, MAX_CHAIN_RANK,
};
pub use indices::{homotopy_indices, reconstruct, HomotopyIndices};
pub use kac::{kac_check, KacReport};
pub use survey::{bond_multisets, kn_survey, representative, BondCounts, Survey};

use crate::cartan::CoxeterGraph;
use crate::error::Result;
use crate::poincare::PoincareEngine;
use crate::ratfunc::RatFunc;

/// Poincaré series of the Coxeter group of a multigraph. Multiplicities of
/// 4 and above all give the free product on that edge.
pub fn pc_invariant(engine: &PoincareEngine, g: &CoxeterGraph) -> Result<RatFunc> {
    engine.series(&g.to_cartan())
}
