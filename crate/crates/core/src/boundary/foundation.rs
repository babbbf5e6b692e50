use serde::Serialize;

use super::{CoreStructure, FoundationCheck, Verdict};
use crate::error::{check_cap, Error, Result};
use crate::sgcore::LcmOutcome;

/// A finite element set with its three flags.
#[derive(Clone, Debug, Serialize)]
pub struct FoundationSet {
    pub elements: Vec<String>,
    pub is_foundation: Verdict,
    pub is_accurate: Verdict,
    pub is_proper: Verdict,
    /// An element whose ideal misses every member's ideal.
    pub uncovered: Option<String>,
}

impl FoundationSet {
    pub fn evaluate<S: CoreStructure>(fam: &S, f: &[S::Elem]) -> Result<Self> {
        let f = dedup(f);
        let uncovered = match fam.foundation_criterion(&f)? {
            FoundationCheck::Foundation => None,
            FoundationCheck::Uncovered(x) => Some(x.to_string()),
        };
        Ok(Self {
            elements: f.iter().map(ToString::to_string).collect(),
            is_foundation: Verdict::from_bool(!f.is_empty() && uncovered.is_none()),
            is_accurate: Verdict::from_bool(is_accurate(fam, &f)),
            is_proper: Verdict::from_bool(is_proper(fam, &f)),
            uncovered,
        })
    }
}

/// Removes repeated elements, keeping first occurrences.
pub(crate) fn dedup<E: Clone + Eq + std::hash::Hash>(f: &[E]) -> Vec<E> {
    let mut seen = std::collections::HashSet::new();
    f.iter().filter(|x| seen.insert((*x).clone())).cloned().collect()
}

/// Every `tS` meets some `fS`; decided by the family's exact criterion.
pub fn is_foundation<S: CoreStructure>(fam: &S, f: &[S::Elem]) -> Result<Verdict> {
    if f.is_empty() {
        return Ok(Verdict::False);
    }
    Ok(Verdict::from_bool(matches!(
        fam.foundation_criterion(f)?,
        FoundationCheck::Foundation
    )))
}

/// Pairwise disjoint principal right ideals.
pub fn is_accurate<S: CoreStructure>(fam: &S, f: &[S::Elem]) -> bool {
    let f = dedup(f);
    f.iter().enumerate().all(|(i, s)| {
        f[i + 1..]
            .iter()
            .all(|t| matches!(fam.right_lcm(s, t), LcmOutcome::Disjoint))
    })
}

/// Contained in the core irreducibles.
pub fn is_proper<S: CoreStructure>(fam: &S, f: &[S::Elem]) -> bool {
    f.iter().all(|s| fam.is_core_irreducible(s))
}

fn accurate_foundation<S: CoreStructure>(fam: &S, f: &[S::Elem]) -> Result<bool> {
    Ok(is_accurate(fam, f) && is_foundation(fam, f)?.holds())
}

/// `{st | s ∈ F₁, t ∈ F₂}` without repetitions.
pub fn product_sets<S: CoreStructure>(fam: &S, f1: &[S::Elem], f2: &[S::Elem]) -> Vec<S::Elem> {
    let all: Vec<S::Elem> = f1
        .iter()
        .flat_map(|s| f2.iter().map(move |t| fam.multiply(s, t)))
        .collect();
    dedup(&all)
}

/// Each member of `refined` lies in `fS` for some `f ∈ original`.
pub fn refines<S: CoreStructure>(fam: &S, refined: &[S::Elem], original: &[S::Elem]) -> bool {
    refined
        .iter()
        .all(|x| original.iter().any(|f| fam.divides(f, x)))
}

/// An accurate foundation set refining the foundation set `f`.
///
/// Sets that are already accurate are returned unchanged. Otherwise the
/// family's closed-form refinement is used and verified; if verification
/// fails the bounded search of [`accurate_refine_search`] takes over.
pub fn accurate_refine<S: CoreStructure>(fam: &S, f: &[S::Elem]) -> Result<Vec<S::Elem>> {
    let f = dedup(f);
    if !is_foundation(fam, &f)?.holds() {
        return Err(Error::InvalidConfig("not a foundation set".into()));
    }
    if is_accurate(fam, &f) {
        return Ok(f);
    }
    let r = fam.elementary_refinement(&f)?;
    if refines(fam, &r, &f) && accurate_foundation(fam, &r)? {
        return Ok(r);
    }
    accurate_refine_search(fam, &f, 3)
}

/// Deterministic search over candidate sets ordered by size, total length,
/// then lexicographically; candidates are multiples of members of `f` of
/// length ≤ `bound`.
pub fn accurate_refine_search<S: CoreStructure>(
    fam: &S,
    f: &[S::Elem],
    bound: usize,
) -> Result<Vec<S::Elem>> {
    let mut pool: Vec<S::Elem> = fam
        .enumerate(bound)?
        .into_iter()
        .filter(|x| f.iter().any(|s| fam.divides(s, x)))
        .collect();
    pool.sort_by(|a, b| fam.length(a).cmp(&fam.length(b)).then_with(|| a.cmp(b)));
    let n = pool.len();
    let mut budget: u128 = 0;
    for size in 1..=n {
        let mut found: Option<(usize, Vec<usize>)> = None;
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            budget += 1;
            check_cap("refinement search", budget)?;
            let set: Vec<S::Elem> = idx.iter().map(|&i| pool[i].clone()).collect();
            if accurate_foundation(fam, &set)? {
                let total: usize = set.iter().map(|x| fam.length(x)).sum();
                if found.as_ref().map_or(true, |(t, _)| total < *t) {
                    found = Some((total, idx.clone()));
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        if let Some((_, idx)) = found {
            return Ok(idx.into_iter().map(|i| pool[i].clone()).collect());
        }
    }
    Err(Error::BoundExceeded(format!(
        "no accurate refinement among multiples of length <= {bound}"
    )))
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `F₁·F₂` is an accurate foundation set iff both factors are; returns
/// whether the biconditional holds for this pair.
pub fn product_biconditional<S: CoreStructure>(
    fam: &S,
    f1: &[S::Elem],
    f2: &[S::Elem],
) -> Result<bool> {
    let lhs = accurate_foundation(fam, &product_sets(fam, f1, f2))?;
    let rhs = accurate_foundation(fam, f1)? && accurate_foundation(fam, f2)?;
    Ok(lhs == rhs)
}

/// Outcome of the product biconditional over all ordered pairs of a pool.
#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub family: String,
    pub sets: usize,
    pub pairs: usize,
    pub accurate_foundation_sets: usize,
    pub failures: Vec<(Vec<String>, Vec<String>)>,
}

impl ProductCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_product_biconditionals<S: CoreStructure>(
    fam: &S,
    pool: &[Vec<S::Elem>],
) -> Result<ProductCheck> {
    let mut report = ProductCheck {
        family: fam.name(),
        sets: pool.len(),
        pairs: 0,
        accurate_foundation_sets: 0,
        failures: Vec::new(),
    };
    for f in pool {
        if accurate_foundation(fam, f)? {
            report.accurate_foundation_sets += 1;
        }
    }
    for f1 in pool {
        for f2 in pool {
            report.pairs += 1;
            if !product_biconditional(fam, f1, f2)? {
                report
                    .failures
                    .push((strings(f1), strings(f2)));
            }
        }
    }
    Ok(report)
}

pub(crate) fn strings<E: ToString>(f: &[E]) -> Vec<String> {
    f.iter().map(ToString::to_string).collect()
}

/// For core `s` and an accurate foundation set `f`: `s·F` and `F·s` are
/// accurate foundation sets. Vacuously true when the hypotheses fail.
pub fn core_translates_accurate<S: CoreStructure>(
    fam: &S,
    s: &S::Elem,
    f: &[S::Elem],
) -> Result<bool> {
    if !fam.is_core(s) || !accurate_foundation(fam, f)? {
        return Ok(true);
    }
    let left = product_sets(fam, std::slice::from_ref(s), f);
    let right = product_sets(fam, f, std::slice::from_ref(s));
    Ok(accurate_foundation(fam, &left)? && accurate_foundation(fam, &right)?)
}
