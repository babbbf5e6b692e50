//! Exact integer linear algebra: Smith normal form, integer system solving,
//! residue systems for `ℤᵈ / Mℤᵈ`, characteristic polynomials and the
//! unimodular-factor test that decides `⋂ₙ Aⁿℤᵈ = {0}`.
//!
//! Everything is generic over the integer scalar; use `BigInt` (the crate-level
//! [`IntMatrix`](crate::IntMatrix) alias) whenever entries can grow.

mod lattice;
mod matrix;
mod poly;
mod snf;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub use lattice::{
    abs_det, intersection_is_zero, intersection_is_zero_with, kernel_basis, probe_survivors,
    solve_integer, solve_with, transversal, IntersectionReport, ResidueSystem, PROBE_BOX,
    PROBE_STEPS,
};
pub(crate) use matrix::to_bigint;
pub use matrix::{sup_norm, FromBigInt, Matrix};
pub use poly::{
    charpoly, has_unimodular_factor, monic_factors_up_to, unimodular_factor, IntPoly,
    MAX_FACTOR_SEARCH_DEGREE,
};
pub use snf::{snf, SnfResult};

/// Exact signed integer scalar (`i64`, `i128`, `BigInt`, ...).
pub trait IntScalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> IntScalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}
