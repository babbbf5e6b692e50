use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("family mismatch: expected {expected}, found {found}")]
    FamilyMismatch { expected: String, found: String },

    #[error("{what}: requested {requested} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{0} does not factor over the configured generators")]
    NotFactorable(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("series diverges at beta = {beta} (critical value {beta_c})")]
    Diverges { beta: f64, beta_c: f64 },

    #[error("value range is not closed under the recursion: missing n = {0}")]
    RangeNotClosed(u64),

    #[error("map is not a homomorphism: {0}")]
    IllDefinedHom(String),

    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("invalid trace: {0}")]
    InvalidTrace(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default hard cap on enumeration sizes. Overridable through `RLCM_CAP`.
pub const DEFAULT_CAP: u128 = 2_000_000;

/// The active cap: `RLCM_CAP` when set to a positive integer, otherwise [`DEFAULT_CAP`].
pub fn active_cap() -> u128 {
    std::env::var("RLCM_CAP")
        .ok()
        .and_then(|v| v.trim().parse::<u128>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_CAP)
}

pub(crate) fn check_cap(what: &'static str, requested: u128) -> Result<()> {
    let cap = active_cap();
    if requested > cap {
        Err(Error::CapExceeded {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}
