//! The right LCM semigroup interface and the generic brute-force oracles used
//! to validate every family-specific closed form.

use std::collections::{HashMap, HashSet};
use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::Serialize;

use crate::error::Result;

/// Intersection of two principal right ideals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LcmOutcome<E> {
    Disjoint,
    /// `sS ∩ tS = wS`; `w` is the family's canonical generator.
    Meet(E),
}

impl<E> LcmOutcome<E> {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, LcmOutcome::Disjoint)
    }

    pub fn meet(&self) -> Option<&E> {
        match self {
            LcmOutcome::Disjoint => None,
            LcmOutcome::Meet(w) => Some(w),
        }
    }

    pub fn map<F, G: FnOnce(E) -> F>(self, f: G) -> LcmOutcome<F> {
        match self {
            LcmOutcome::Disjoint => LcmOutcome::Disjoint,
            LcmOutcome::Meet(w) => LcmOutcome::Meet(f(w)),
        }
    }
}

/// Result of a bounded oracle query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome<E> {
    Conclusive(LcmOutcome<E>),
    Inconclusive,
}

/// A countable left cancellative monoid in which principal right ideals
/// intersect in the empty set or another principal right ideal.
///
/// Implementors hold an immutable configuration; elements are kept in a
/// canonical normal form so that `==` is equality in the semigroup.
pub trait RightLcm: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync;

    /// Short identifier of the family and its parameters.
    fn name(&self) -> String;

    fn identity(&self) -> Self::Elem;

    fn multiply(&self, s: &Self::Elem, t: &Self::Elem) -> Self::Elem;

    fn right_lcm(&self, s: &Self::Elem, t: &Self::Elem) -> LcmOutcome<Self::Elem>;

    /// The unique `r` with `s·r = x`, if `x ∈ sS`.
    fn left_divide(&self, s: &Self::Elem, x: &Self::Elem) -> Option<Self::Elem>;

    /// Enumeration length; every level is finite.
    fn length(&self, s: &Self::Elem) -> usize;

    /// All elements of length at most `max_len`, in a fixed order, without duplicates.
    fn enumerate(&self, max_len: usize) -> Result<Vec<Self::Elem>>;

    fn is_unit(&self, s: &Self::Elem) -> bool;

    fn has_trivial_units(&self) -> bool;

    /// Representative of `w·S*` used for LCM outputs.
    fn canonical_generator(&self, w: &Self::Elem) -> Self::Elem {
        w.clone()
    }

    /// The family's decidable criterion for `sS ∩ tS = ∅`.
    fn disjointness_criterion(&self, s: &Self::Elem, t: &Self::Elem) -> bool;

    /// Cofactors used by the oracle when forming bounded ideals: enough that
    /// every `x = s·r` of length ≤ `bound` with `s` of length ≤ `bound` is hit.
    fn oracle_cofactors(&self, bound: usize) -> Result<Vec<Self::Elem>> {
        self.enumerate(bound)
    }

    /// Semigroup generators.
    fn generators(&self) -> Vec<Self::Elem>;

    /// Expresses `s` as a product of generators (indices into [`generators`](Self::generators)).
    fn factor_generators(&self, s: &Self::Elem) -> Vec<usize>;

    /// Product of a word in the generators.
    fn eval_word(&self, word: &[usize]) -> Self::Elem {
        let gens = self.generators();
        word.iter()
            .fold(self.identity(), |acc, &i| self.multiply(&acc, &gens[i]))
    }

    fn divides(&self, s: &Self::Elem, x: &Self::Elem) -> bool {
        self.left_divide(s, x).is_some()
    }
}

/// Bounded ideal-intersection oracle for [`RightLcm::right_lcm`].
///
/// Works only with `multiply` and equality: the bounded ideal of `s` is
/// `{s·r : r cofactor} ∩ U` where `U` is the set of elements of length ≤ bound.
pub struct LcmOracle<'a, S: RightLcm> {
    fam: &'a S,
    universe: HashSet<S::Elem>,
    cofactors: Vec<S::Elem>,
    ideals: HashMap<S::Elem, HashSet<S::Elem>>,
}

impl<'a, S: RightLcm> LcmOracle<'a, S> {
    pub fn new(fam: &'a S, bound: usize) -> Result<Self> {
        Ok(Self {
            fam,
            universe: fam.enumerate(bound)?.into_iter().collect(),
            cofactors: fam.oracle_cofactors(bound)?,
            ideals: HashMap::new(),
        })
    }

    fn ideal(&mut self, s: &S::Elem) -> &HashSet<S::Elem> {
        if !self.ideals.contains_key(s) {
            let set: HashSet<S::Elem> = self
                .cofactors
                .iter()
                .map(|r| self.fam.multiply(s, r))
                .filter(|x| self.universe.contains(x))
                .collect();
            self.ideals.insert(s.clone(), set);
        }
        &self.ideals[s]
    }

    pub fn query(&mut self, s: &S::Elem, t: &S::Elem) -> OracleOutcome<S::Elem> {
        self.ideal(t);
        self.ideal(s);
        let ideal_t = &self.ideals[t];
        let mut common: Vec<S::Elem> = self.ideals[s]
            .iter()
            .filter(|x| ideal_t.contains(*x))
            .cloned()
            .collect();
        if common.is_empty() {
            return if self.fam.disjointness_criterion(s, t) {
                OracleOutcome::Conclusive(LcmOutcome::Disjoint)
            } else {
                OracleOutcome::Inconclusive
            };
        }
        let fam = self.fam;
        common.sort_by(|a, b| fam.length(a).cmp(&fam.length(b)).then_with(|| a.cmp(b)));
        for w in &common {
            let iw = self.ideal(w);
            if common.iter().all(|x| iw.contains(x)) {
                return OracleOutcome::Conclusive(LcmOutcome::Meet(fam.canonical_generator(w)));
            }
        }
        OracleOutcome::Inconclusive
    }
}

/// One-shot oracle query.
pub fn lcm_oracle<S: RightLcm>(
    fam: &S,
    s: &S::Elem,
    t: &S::Elem,
    bound: usize,
) -> Result<OracleOutcome<S::Elem>> {
    Ok(LcmOracle::new(fam, bound)?.query(s, t))
}

/// Summary of an exhaustive closed-form versus oracle comparison.
#[derive(Clone, Debug, Serialize)]
pub struct OracleAgreement {
    pub family: String,
    pub pairs: usize,
    pub conclusive: usize,
    pub agree: usize,
    pub disagreements: Vec<(String, String, String, String)>,
}

impl OracleAgreement {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.agree == self.conclusive
    }
}

/// Compares `right_lcm` against the oracle on all pairs of length ≤ `pair_len`.
pub fn check_oracle_agreement<S: RightLcm>(
    fam: &S,
    pair_len: usize,
    oracle_bound: usize,
) -> Result<OracleAgreement> {
    let elems = fam.enumerate(pair_len)?;
    let mut oracle = LcmOracle::new(fam, oracle_bound)?;
    let mut report = OracleAgreement {
        family: fam.name(),
        pairs: 0,
        conclusive: 0,
        agree: 0,
        disagreements: Vec::new(),
    };
    for s in &elems {
        for t in &elems {
            report.pairs += 1;
            let closed = fam.right_lcm(s, t);
            if let OracleOutcome::Conclusive(o) = oracle.query(s, t) {
                report.conclusive += 1;
                if o == closed {
                    report.agree += 1;
                } else {
                    report.disagreements.push((
                        s.to_string(),
                        t.to_string(),
                        format!("{closed:?}"),
                        format!("{o:?}"),
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// First triple violating associativity, if any.
pub fn find_associativity_violation<S: RightLcm>(
    fam: &S,
    elems: &[S::Elem],
) -> Option<(S::Elem, S::Elem, S::Elem)> {
    for a in elems {
        for b in elems {
            let ab = fam.multiply(a, b);
            for c in elems {
                if fam.multiply(&ab, c) != fam.multiply(a, &fam.multiply(b, c)) {
                    return Some((a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    None
}

/// First `(s, t, u)` with `s·t = s·u` but `t ≠ u`, if any.
pub fn find_left_cancellation_violation<S: RightLcm>(
    fam: &S,
    elems: &[S::Elem],
) -> Option<(S::Elem, S::Elem, S::Elem)> {
    for s in elems {
        let mut seen: HashMap<S::Elem, &S::Elem> = HashMap::new();
        for t in elems {
            if let Some(prev) = seen.insert(fam.multiply(s, t), t) {
                return Some((s.clone(), prev.clone(), t.clone()));
            }
        }
    }
    None
}

/// Checks the right-LCM axiom for `(s, t)` against the bounded universe:
/// a meet `w` lies in `sS ∩ tS`, and every common multiple in `universe` lies in `wS`.
pub fn lcm_axiom_holds<S: RightLcm>(
    fam: &S,
    s: &S::Elem,
    t: &S::Elem,
    universe: &[S::Elem],
) -> bool {
    match fam.right_lcm(s, t) {
        LcmOutcome::Disjoint => universe
            .iter()
            .all(|x| !(fam.divides(s, x) && fam.divides(t, x))),
        LcmOutcome::Meet(w) => {
            fam.divides(s, &w)
                && fam.divides(t, &w)
                && universe
                    .iter()
                    .filter(|x| fam.divides(s, x) && fam.divides(t, x))
                    .all(|x| fam.divides(&w, x))
        }
    }
}
