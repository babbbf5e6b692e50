use serde::Serialize;

use super::foundation::{is_accurate, is_foundation, is_proper};
use super::pool::foundation_pool;
use super::{CoreStructure, Verdict};
use crate::error::{Error, Result};
use crate::sgcore::LcmOutcome;

/// A monoid map `S → T` given by images of the generators of `S`.
pub struct MonoidMap<'a, S: CoreStructure, T: CoreStructure> {
    pub source: &'a S,
    pub target: &'a T,
    pub images: Vec<T::Elem>,
}

impl<'a, S: CoreStructure, T: CoreStructure> MonoidMap<'a, S, T> {
    pub fn new(source: &'a S, target: &'a T, images: Vec<T::Elem>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    pub fn apply(&self, s: &S::Elem) -> T::Elem {
        self.source
            .factor_generators(s)
            .iter()
            .fold(self.target.identity(), |acc, &i| {
                self.target.multiply(&acc, &self.images[i])
            })
    }

    /// First pair of length ≤ `bound` where `φ(st) ≠ φ(s)φ(t)`.
    pub fn check_well_defined(&self, bound: usize) -> Result<()> {
        let elems = self.source.enumerate(bound)?;
        for s in &elems {
            for t in &elems {
                let lhs = self.apply(&self.source.multiply(s, t));
                let rhs = self.target.multiply(&self.apply(s), &self.apply(t));
                if lhs != rhs {
                    return Err(Error::IllDefinedHom(format!(
                        "phi({s}·{t}) = {lhs} but phi({s})·phi({t}) = {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One condition's verdict with a counterexample when it fails.
#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub name: String,
    pub statement: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomReport {
    pub source: String,
    pub target: String,
    pub bound: usize,
    pub conditions: Vec<Condition>,
}

impl HomReport {
    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.conditions.iter().find(|c| c.name == name).map(|c| c.verdict)
    }
}

fn bounded(witness: Option<String>, bound: usize) -> (Verdict, Option<String>) {
    match witness {
        Some(w) => (Verdict::False, Some(w)),
        None => (Verdict::VerifiedToBound(bound), None),
    }
}

/// Checks, on elements of length ≤ `bound`:
/// `lcm` compatibility `φ(s₁)T ∩ φ(s₂)T = φ(s₁S ∩ s₂S)T`, core preservation,
/// preservation of accurate proper foundation sets, and both together.
pub fn hom_check<S: CoreStructure, T: CoreStructure>(
    phi: &MonoidMap<'_, S, T>,
    bound: usize,
    seed: u64,
) -> Result<HomReport> {
    phi.check_well_defined(bound)?;
    let (src, tgt) = (phi.source, phi.target);
    let elems = src.enumerate(bound)?;

    let mut lcm_witness = None;
    'pairs: for s1 in &elems {
        for s2 in &elems {
            let (a, b) = (phi.apply(s1), phi.apply(s2));
            let ok = match (src.right_lcm(s1, s2), tgt.right_lcm(&a, &b)) {
                (LcmOutcome::Disjoint, LcmOutcome::Disjoint) => true,
                (LcmOutcome::Meet(w), LcmOutcome::Meet(u)) => {
                    let pw = phi.apply(&w);
                    tgt.divides(&u, &pw) && tgt.divides(&pw, &u)
                }
                _ => false,
            };
            if !ok {
                lcm_witness = Some(format!("({s1}, {s2})"));
                break 'pairs;
            }
        }
    }

    let core_witness = elems
        .iter()
        .find(|s| src.is_core(s) && !tgt.is_core(&phi.apply(s)))
        .map(|s| format!("{s} is core but {} is not", phi.apply(s)));

    let mut set_witness = None;
    for entry in foundation_pool(src, seed, bound)? {
        let f = entry.elements;
        if !(is_proper(src, &f) && is_accurate(src, &f) && is_foundation(src, &f)?.holds()) {
            continue;
        }
        let image: Vec<T::Elem> = f.iter().map(|s| phi.apply(s)).collect();
        if !(is_proper(tgt, &image) && is_accurate(tgt, &image) && is_foundation(tgt, &image)?.holds()) {
            let shown: Vec<String> = f.iter().map(ToString::to_string).collect();
            set_witness = Some(format!("{{{}}}", shown.join(", ")));
            break;
        }
    }

    let (lcm_v, lcm_w) = bounded(lcm_witness, bound);
    let (core_v, core_w) = bounded(core_witness, bound);
    let (set_v, set_w) = bounded(set_witness, bound);
    let both = match (core_v, set_v) {
        (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
        _ => Verdict::VerifiedToBound(bound),
    };
    let conditions = vec![
        Condition {
            name: "lcm".into(),
            statement: "phi(s1)T ∩ phi(s2)T = phi(s1S ∩ s2S)T".into(),
            verdict: lcm_v,
            witness: lcm_w,
        },
        Condition {
            name: "a".into(),
            statement: "phi(S_c) is contained in T_c".into(),
            verdict: core_v,
            witness: core_w,
        },
        Condition {
            name: "b".into(),
            statement: "phi maps accurate proper foundation sets to accurate proper foundation sets".into(),
            verdict: set_v,
            witness: set_w,
        },
        Condition {
            name: "c'".into(),
            statement: "conditions a and b together".into(),
            verdict: both,
            witness: None,
        },
    ];
    Ok(HomReport {
        source: src.name(),
        target: tgt.name(),
        bound,
        conditions,
    })
}
