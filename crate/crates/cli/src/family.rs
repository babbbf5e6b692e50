use clap::{Args, ValueEnum};
use serde::Deserialize;

use rlcm::families::{SelfSimilar, Transition};
use rlcm::{BigMatrixFamily, Bs, Error, FreeMonoid, IntMatrix, NxP, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Nxp,
    Bs,
    Matrix,
    Selfsimilar,
    Free,
}

#[derive(Args, Clone, Debug, Default)]
pub struct FamilyArgs {
    /// Semigroup family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    /// Relatively prime multipliers for nxp.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub primes: Vec<u64>,
    /// BS(c,d) parameters.
    #[arg(long, default_value_t = 2)]
    pub c: u32,
    #[arg(long, default_value_t = 3)]
    pub d: u32,
    /// Integer matrix as JSON rows, e.g. [[1,1],[0,2]].
    #[arg(long, default_value = "[[1,1],[0,2]]")]
    pub matrix: String,
    /// Self-similar action as JSON or a path to a JSON file:
    /// {"alphabet":2,"generators":[{"perm":[1,0],"restrictions":[[0],[1]]}]}.
    /// Defaults to the adding machine.
    #[arg(long)]
    pub automaton: Option<String>,
    /// Alphabet size for the free monoid.
    #[arg(long, default_value_t = 2)]
    pub letters: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomatonJson {
    alphabet: usize,
    generators: Vec<Transition>,
}

/// Reads `text` as a file path when such a file exists, otherwise as inline JSON.
pub fn inline_or_file(text: &str) -> Result<String> {
    let path = std::path::Path::new(text);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidConfig(format!("{text}: {e}")))
    } else {
        Ok(text.to_string())
    }
}

pub enum AnyFamily {
    Nxp(NxP),
    Bs(Bs),
    Matrix(BigMatrixFamily),
    SelfSimilar(SelfSimilar),
    Free(FreeMonoid),
}

/// Runs `$body` with `$f` bound to the concrete family.
#[macro_export]
macro_rules! with_family {
    ($fam:expr, $f:ident => $body:expr) => {
        match $fam {
            $crate::family::AnyFamily::Nxp($f) => $body,
            $crate::family::AnyFamily::Bs($f) => $body,
            $crate::family::AnyFamily::Matrix($f) => $body,
            $crate::family::AnyFamily::SelfSimilar($f) => $body,
            $crate::family::AnyFamily::Free($f) => $body,
        }
    };
}

impl FamilyArgs {
    pub fn build(&self, kind: FamilyKind) -> Result<AnyFamily> {
        Ok(match kind {
            FamilyKind::Nxp => AnyFamily::Nxp(NxP::new(&self.primes)?),
            FamilyKind::Bs => AnyFamily::Bs(Bs::new(self.c, self.d)?),
            FamilyKind::Matrix => {
                let rows: Vec<Vec<i64>> = serde_json::from_str(&self.matrix)
                    .map_err(|e| Error::InvalidConfig(format!("matrix: {e}")))?;
                let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                AnyFamily::Matrix(BigMatrixFamily::new(IntMatrix::from_i64_rows(&rows)?)?)
            }
            FamilyKind::Selfsimilar => AnyFamily::SelfSimilar(match &self.automaton {
                None => SelfSimilar::adding_machine(),
                Some(text) => {
                    let raw: AutomatonJson = serde_json::from_str(&inline_or_file(text)?)
                        .map_err(|e| Error::InvalidConfig(format!("automaton: {e}")))?;
                    SelfSimilar::new(raw.alphabet, raw.generators)?
                }
            }),
            FamilyKind::Free => AnyFamily::Free(FreeMonoid::new(self.letters)?),
        })
    }

    /// The selected family; an error when none was given.
    pub fn resolve(&self) -> Result<AnyFamily> {
        let kind = self
            .family
            .ok_or_else(|| Error::InvalidConfig("--family is required".into()))?;
        self.build(kind)
    }

    /// The selected family, or the standard panel when none was given.
    pub fn resolve_all(&self) -> Result<Vec<AnyFamily>> {
        match self.family {
            Some(kind) => Ok(vec![self.build(kind)?]),
            None => standard_panel(),
        }
    }
}

/// `ℕ⋊⟨2,3⟩`, `BS(2,3)⁺`, `ℤ²⋊_Aℕ` with `A = [[1,1],[0,2]]`, `{a,b}*`, the adding machine.
pub fn standard_panel() -> Result<Vec<AnyFamily>> {
    let a = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 2]])?;
    Ok(vec![
        AnyFamily::Nxp(NxP::new(&[2, 3])?),
        AnyFamily::Bs(Bs::new(2, 3)?),
        AnyFamily::Matrix(BigMatrixFamily::new(a)?),
        AnyFamily::Free(FreeMonoid::new(2)?),
        AnyFamily::SelfSimilar(SelfSimilar::adding_machine()),
    ])
}
