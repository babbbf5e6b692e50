use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::foundation::{is_accurate, is_foundation, is_proper, product_sets, strings};
use super::pool::foundation_pool;
use super::CoreStructure;
use crate::error::Result;
use crate::sgcore::LcmOutcome;

/// A `t` of length ≤ `bound` with `sS ∩ tS = ∅`, first in enumeration order.
pub fn core_witness<S: CoreStructure>(fam: &S, s: &S::Elem, bound: usize) -> Result<Option<S::Elem>> {
    if fam.is_core(s) {
        return Ok(None);
    }
    Ok(fam
        .enumerate(bound)?
        .into_iter()
        .find(|t| matches!(fam.right_lcm(s, t), LcmOutcome::Disjoint)))
}

/// Number of splittings `s = f_i·f_c` with `f_i ∈ S_ci¹`, `f_c ∈ S_c`, `f_i`
/// ranging over elements of length ≤ `bound`.
pub fn core_splittings<S: CoreStructure>(fam: &S, s: &S::Elem, bound: usize) -> Result<usize> {
    let mut count = 0;
    for fi in fam.enumerate(bound)? {
        if fi != fam.identity() && !fam.is_core_irreducible(&fi) {
            continue;
        }
        if let Some(r) = fam.left_divide(&fi, s) {
            if fam.is_core(&r) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The splitting through `S_ci¹ · S_c` is unique among candidates of length ≤ `bound`.
pub fn factorization_unique<S: CoreStructure>(fam: &S, s: &S::Elem, bound: usize) -> Result<bool> {
    Ok(core_splittings(fam, s, bound)? == 1)
}

/// `f_iS ∖ (f_i f_c)S = f_i·(S ∖ f_cS)` on elements of length ≤ `bound`.
///
/// The right side is built as an image under multiplication, so the check
/// exercises both `multiply` and `left_divide`.
pub fn check_complement_identity<S: CoreStructure>(
    fam: &S,
    fi: &S::Elem,
    fc: &S::Elem,
    bound: usize,
) -> Result<bool> {
    let f = fam.multiply(fi, fc);
    let universe: HashSet<S::Elem> = fam.enumerate(bound)?.into_iter().collect();
    let lhs: HashSet<S::Elem> = universe
        .iter()
        .filter(|x| fam.divides(fi, x) && !fam.divides(&f, x))
        .cloned()
        .collect();
    let rhs: HashSet<S::Elem> = fam
        .oracle_cofactors(bound)?
        .into_iter()
        .filter(|y| !fam.divides(fc, y))
        .map(|y| fam.multiply(fi, &y))
        .filter(|x| universe.contains(x))
        .collect();
    Ok(lhs == rhs)
}

/// Bounded certificate for termination of `s → t :⇔ s ∈ t(S_c ∖ S*)`.
#[derive(Clone, Debug, Serialize)]
pub struct TerminationReport {
    pub family: String,
    pub bound: usize,
    pub elements: usize,
    pub edges: usize,
    /// Steps in the longest chain inside the bounded universe.
    pub longest_chain: usize,
    pub acyclic: bool,
}

impl TerminationReport {
    pub fn holds(&self) -> bool {
        self.acyclic
    }
}

/// Builds `→` on elements of length ≤ `bound` and checks it has no cycle.
pub fn check_terminating<S: CoreStructure>(fam: &S, bound: usize) -> Result<TerminationReport> {
    let elems = fam.enumerate(bound)?;
    let index: HashMap<&S::Elem, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); elems.len()];
    let mut edges = 0;
    for (i, s) in elems.iter().enumerate() {
        for t in &elems {
            if let Some(r) = fam.left_divide(t, s) {
                if fam.is_core(&r) && !fam.is_unit(&r) {
                    succ[i].push(index[t]);
                    edges += 1;
                }
            }
        }
    }
    // Longest path by memoized depth-first search; a grey node means a cycle.
    let n = elems.len();
    let mut state = vec![0u8; n];
    let mut depth = vec![0usize; n];
    let mut acyclic = true;
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < succ[v].len() {
                let w = succ[v][*next];
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => acyclic = false,
                    _ => {}
                }
            } else {
                depth[v] = succ[v].iter().map(|&w| depth[w] + 1).max().unwrap_or(0);
                state[v] = 2;
                stack.pop();
            }
        }
    }
    Ok(TerminationReport {
        family: fam.name(),
        bound,
        elements: n,
        edges,
        longest_chain: depth.into_iter().max().unwrap_or(0),
        acyclic,
    })
}

/// A core non-unit `s` and an accurate proper foundation set `F` from the pool.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftFinding {
    pub s: String,
    pub set: Vec<String>,
    pub shifted: Vec<String>,
    /// `s·F ⊂ S_ci`.
    pub shifted_proper: bool,
    /// `(F′, s′)` with `s·F = F′·s′`, `F′` accurate proper foundation and `s′`
    /// core non-unit, searched among elements of the bound.
    pub refactored: Option<(Vec<String>, String)>,
}

/// `(F′, s′)` with `s·F = F′·s′` among elements of length ≤ `bound`.
pub fn check_shift_factorization<S: CoreStructure>(
    fam: &S,
    s: &S::Elem,
    f: &[S::Elem],
    bound: usize,
) -> Result<Option<(Vec<S::Elem>, S::Elem)>> {
    let shifted = product_sets(fam, std::slice::from_ref(s), f);
    let elems = fam.enumerate(bound)?;
    let irreducible: Vec<&S::Elem> = elems.iter().filter(|x| fam.is_core_irreducible(x)).collect();
    for s2 in elems.iter().filter(|x| fam.is_core(x) && !fam.is_unit(x)) {
        let mut f2 = Vec::with_capacity(shifted.len());
        for x in &shifted {
            match irreducible.iter().find(|fi| fam.multiply(fi, s2) == *x) {
                Some(fi) => f2.push((*fi).clone()),
                None => break,
            }
        }
        if f2.len() == shifted.len()
            && is_accurate(fam, &f2)
            && is_proper(fam, &f2)
            && is_foundation(fam, &f2)?.holds()
        {
            return Ok(Some((f2, s2.clone())));
        }
    }
    Ok(None)
}

/// Scans core non-units `s` of length ≤ `bound` against the accurate proper
/// foundation sets of the seeded pool and returns every pair with `s·F ⊂ S_ci`.
pub fn search_proper_shifts<S: CoreStructure>(
    fam: &S,
    bound: usize,
    seed: u64,
) -> Result<Vec<ShiftFinding>> {
    Ok(shift_scan(fam, bound, seed)?
        .into_iter()
        .filter(|f| f.shifted_proper)
        .collect())
}

/// Every `(s, F)` pair of the scan, with the refactoring search attached.
pub fn shift_scan<S: CoreStructure>(fam: &S, bound: usize, seed: u64) -> Result<Vec<ShiftFinding>> {
    let shifts: Vec<S::Elem> = fam
        .enumerate(bound)?
        .into_iter()
        .filter(|x| fam.is_core(x) && !fam.is_unit(x))
        .collect();
    let mut sets = Vec::new();
    for entry in foundation_pool(fam, seed, bound)? {
        let f = entry.elements;
        if is_proper(fam, &f) && is_accurate(fam, &f) && is_foundation(fam, &f)?.holds() {
            sets.push(f);
        }
    }
    let mut out = Vec::new();
    for s in &shifts {
        for f in &sets {
            let shifted = product_sets(fam, std::slice::from_ref(s), f);
            let refactored = check_shift_factorization(fam, s, f, bound)?
                .map(|(f2, s2)| (strings(&f2), s2.to_string()));
            out.push(ShiftFinding {
                s: s.to_string(),
                set: strings(f),
                shifted_proper: is_proper(fam, &shifted),
                shifted: strings(&shifted),
                refactored,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Bs, MatrixFamily, NxP};
    use crate::intlat::Matrix;
    use num_bigint::BigInt;

    #[test]
    fn witnesses() {
        let f = NxP::new(&[2]).unwrap();
        let w = core_witness(&f, &f.element(0u8, 2u8).unwrap(), 2).unwrap();
        assert_eq!(w, Some(f.element(1u8, 2u8).unwrap()));
        assert_eq!(core_witness(&f, &f.element(4u8, 1u8).unwrap(), 2).unwrap(), None);
        let bs = Bs::new(2, 3).unwrap();
        let w = core_witness(&bs, &bs.a(), 2).unwrap();
        assert_eq!(w, Some(bs.normalize("ba").unwrap()));
    }

    #[test]
    fn termination_certificates() {
        let f = NxP::new(&[2]).unwrap();
        let r = check_terminating(&f, 5).unwrap();
        assert!(r.holds());
        assert_eq!(r.longest_chain, 5);
        let m = MatrixFamily::<BigInt>::new(Matrix::from_i64_rows(&[&[1, 1], &[0, 2]]).unwrap()).unwrap();
        let r = check_terminating(&m, 1).unwrap();
        assert!(r.holds());
        assert_eq!(r.edges, 0);
    }

    #[test]
    fn complement_identity_examples() {
        let f = NxP::new(&[2]).unwrap();
        let fi = f.element(0u8, 2u8).unwrap();
        let fc = f.element(1u8, 1u8).unwrap();
        assert!(check_complement_identity(&f, &fi, &fc, 4).unwrap());
        let bs = Bs::new(2, 3).unwrap();
        assert!(check_complement_identity(&bs, &bs.a(), &bs.b(), 4).unwrap());
    }

    #[test]
    fn shift_of_elementary_set() {
        let f = NxP::new(&[2]).unwrap();
        let e = |n: u8, p: u8| f.element(n, p).unwrap();
        let elementary = [e(0, 2), e(1, 2)];
        let found = check_shift_factorization(&f, &e(2, 1), &elementary, 3).unwrap();
        assert_eq!(found, Some((elementary.to_vec(), e(1, 1))));
        assert_eq!(check_shift_factorization(&f, &e(1, 1), &elementary, 3).unwrap(), None);
    }
}
