//! Right LCM semigroups at desk scale.

pub mod boundary;
pub mod error;
pub mod families;
pub mod intlat;
pub mod kms;
pub mod ktheory;
pub mod sgcore;

use num_bigint::BigInt;

pub use error::{Error, Result};
pub use families::{Bs, Family, FreeMonoid, NxP, SelfSimilar};
pub use sgcore::{LcmOutcome, OracleOutcome, RightLcm};

/// Arbitrary-precision integer matrix.
pub type IntMatrix = intlat::Matrix<BigInt>;
/// `ℤᵈ ⋊_A ℕ` over arbitrary-precision integers.
pub type BigMatrixFamily = families::MatrixFamily<BigInt>;
/// `ℤᵈ ⋊_A ℕ` over machine integers.
pub type MatrixFamily64 = families::MatrixFamily<i64>;
/// Double-precision trace moments and evaluator values.
pub type Complex64 = num_complex::Complex<f64>;
