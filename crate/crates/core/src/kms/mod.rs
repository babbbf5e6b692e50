//! Scaling data, ζ-functions, minimality and numerical evaluators for the
//! KMS and ground-state formulas.

mod bs_series;
mod evaluators;
mod trace;
mod zeta;

use num_bigint::BigUint;
use num_traits::Float;
use serde::Serialize;

use crate::boundary::{CoreStructure, Verdict};
use crate::error::Result;

pub use bs_series::{phi_series_bs, psi_series_bs, psi_series_bs_adjoint, recover_trace, SeriesTerms, DEFAULT_TOL};
pub use evaluators::{ground_state, psi_beta, psi_beta_tau, scale_n};
pub use trace::{Atom, TraceSpec};
pub use zeta::{check_scale_multiplicative, class_reps, zeta, zeta_closed};

/// Row of the classification table a family belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KmsType {
    /// `ℕ ⋊ P`
    A,
    /// `ℤᵈ ⋊_A ℕ`
    B,
    /// `X* ⋈ G`
    C,
    /// `BS(c,d)⁺`
    D,
}

impl KmsType {
    pub fn label(self) -> &'static str {
        match self {
            KmsType::A => "a",
            KmsType::B => "b",
            KmsType::C => "c",
            KmsType::D => "d",
        }
    }
}

/// Critical inverse temperature with its provenance.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalTemperature {
    pub value: f64,
    /// Taken from the classification table rather than computed.
    pub from_table: bool,
    pub note: Option<String>,
}

/// Minimality verdict with supporting evidence.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalityReport {
    pub verdict: Verdict,
    pub criterion: String,
    pub evidence: String,
}

/// Families carrying a scaling homomorphism `N : S → ℕ^×` with `N⁻¹(1) = S_c`.
pub trait Scaled: CoreStructure {
    fn kms_type(&self) -> KmsType;

    /// Length functional `ℓ` of the table; levels of the ζ-sum.
    fn scale_length(&self, s: &Self::Elem) -> usize;

    /// `N_s`.
    fn scale(&self, s: &Self::Elem) -> BigUint;

    fn critical(&self) -> CriticalTemperature;

    /// For each level `ℓ ≤ cutoff`: pairs `(N, number of classes in S/S_c with that N)`.
    fn class_counts(&self, cutoff: usize) -> Result<Vec<(BigUint, BigUint)>>;

    /// Minimal class representatives of level ≤ `max_level`, identity first.
    fn class_representatives(&self, max_level: usize) -> Result<Vec<Self::Elem>>;

    /// Closed form of ζ for `β` above the convergence abscissa.
    fn zeta_closed_form<F: Float>(&self, beta: F) -> Option<F>;

    /// Convergence abscissa of the closed form.
    fn abscissa(&self) -> f64 {
        1.0
    }

    /// Coordinates of a core element in the torus dual of `S_c`'s group
    /// completion; `None` for non-core elements.
    fn core_coordinates(&self, s: &Self::Elem) -> Option<Vec<i64>>;

    /// Torus dimension when atomic traces are supported; `None` when only the
    /// canonical trace is available.
    fn torus_dim(&self) -> Option<usize>;

    fn minimality(&self) -> Result<MinimalityReport>;
}
