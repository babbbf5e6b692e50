//! Core subsemigroup, core irreducibles, foundation sets and the bounded
//! searches built on them.

mod diagram;
mod foundation;
mod hom;
mod pool;
mod search;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sgcore::RightLcm;

pub use diagram::{diagram_report, Diagram, DiagramFact, DiagramReport, FactKind};
pub use foundation::{
    accurate_refine, accurate_refine_search, check_product_biconditionals,
    core_translates_accurate, is_accurate, is_foundation, is_proper, product_biconditional,
    product_sets, refines, FoundationSet, ProductCheck,
};
pub use hom::{hom_check, Condition, HomReport, MonoidMap};
pub use pool::{foundation_pool, PoolEntry, MAX_SET, POOL_TARGET};
pub use search::{
    check_complement_identity, check_shift_factorization, check_terminating, core_splittings,
    core_witness, factorization_unique, search_proper_shifts, shift_scan, ShiftFinding,
    TerminationReport,
};

/// Three-valued verdict for statements quantified over all of `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "bound")]
pub enum Verdict {
    True,
    False,
    /// No counterexample among elements of length at most the bound.
    VerifiedToBound(usize),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    /// True and verified-to-bound both count as holding.
    pub fn holds(self) -> bool {
        !matches!(self, Verdict::False)
    }
}

/// `s = irreducible_part · core_part`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreFactorization<E> {
    pub irreducible_part: E,
    pub core_part: E,
}

/// Outcome of a family's exact foundation criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoundationCheck<E> {
    Foundation,
    /// An element whose principal ideal misses every member's ideal.
    Uncovered(E),
}

/// Closed-form core structure of a family.
pub trait CoreStructure: RightLcm {
    /// `sS ∩ tS ≠ ∅` for every `t`.
    fn is_core(&self, s: &Self::Elem) -> bool;

    /// Not core, and `s = t·r` with `r` core forces `r` to be a unit.
    fn is_core_irreducible(&self, s: &Self::Elem) -> bool;

    /// Factorization through `S_ci¹ · S_c`.
    fn core_factorize(&self, s: &Self::Elem) -> CoreFactorization<Self::Elem>;

    /// Exact foundation test for a nonempty finite set.
    fn foundation_criterion(&self, f: &[Self::Elem]) -> Result<FoundationCheck<Self::Elem>>;

    /// Accurate foundation set refining `f`; `f` must be a foundation set.
    fn elementary_refinement(&self, f: &[Self::Elem]) -> Result<Vec<Self::Elem>>;

    /// The basic proper accurate foundation sets (one per irreducible scale).
    fn elementary_sets(&self) -> Result<Vec<Vec<Self::Elem>>>;

    /// Internal Zappa–Szép splitting `S = T ⋈ S_c`, where supported.
    fn zs_internal(&self, s: &Self::Elem) -> Result<CoreFactorization<Self::Elem>> {
        let _ = s;
        Err(Error::Unsupported(format!(
            "{} is not an internal Zappa-Szep product over its core",
            self.name()
        )))
    }
}
