//! Concrete right LCM semigroups: `ℕ ⋊ P`, `BS(c,d)⁺`, `ℤᵈ ⋊_A ℕ`, free
//! monoids and self-similar actions.

mod bs;
mod free;
mod matrix;
mod nxp;
mod selfsimilar;
mod text;

use serde::Serialize;

use crate::error::Result;
use crate::kms::Scaled;
use crate::sgcore::{LcmOutcome, RightLcm};

pub use crate::intlat::transversal;
pub use bs::{Bs, BsElement};
pub use free::{FreeMonoid, Word};
pub use matrix::{MatrixElement, MatrixFamily};
pub use nxp::{NxP, NxPElement};
pub use selfsimilar::{
    generator_name, RestrictionClosure, SelfSimilar, SsElement, Transition, CLOSURE_CAP,
};

/// A family usable from text: a stable tag and an element grammar.
pub trait Family: Scaled {
    fn tag(&self) -> &'static str;

    fn parse_element(&self, text: &str) -> Result<Self::Elem>;
}

/// Right Ore facts for a family, checked on a bounded enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct OreReport {
    pub family: String,
    pub bound: usize,
    pub left_cancellative: bool,
    /// `sS ∩ tS ≠ ∅` for all enumerated pairs.
    pub left_reversible: bool,
    /// A pair with `sS ∩ tS = ∅`, when one exists.
    pub disjoint_witness: Option<(String, String)>,
    pub right_ore: bool,
    pub annotations: Vec<String>,
}

/// Checks left reversibility and cancellation on elements of length ≤ `bound`.
pub fn ore_degeneracies<S: RightLcm>(fam: &S, bound: usize) -> Result<OreReport> {
    let elems = fam.enumerate(bound)?;
    let left_cancellative = crate::sgcore::find_left_cancellation_violation(fam, &elems).is_none();
    let mut disjoint_witness = None;
    'outer: for s in &elems {
        for t in &elems {
            if let LcmOutcome::Disjoint = fam.right_lcm(s, t) {
                disjoint_witness = Some((s.to_string(), t.to_string()));
                break 'outer;
            }
        }
    }
    let left_reversible = disjoint_witness.is_none();
    let right_ore = left_cancellative && left_reversible;
    let annotations = if right_ore {
        vec![
            "S_c = S".into(),
            "C*(S) = Q_p(S)".into(),
            "Q_c(S) = Q(S) is the group algebra of the enveloping group".into(),
        ]
    } else {
        Vec::new()
    };
    Ok(OreReport {
        family: fam.name(),
        bound,
        left_cancellative,
        left_reversible,
        disjoint_witness,
        right_ore,
        annotations,
    })
}
