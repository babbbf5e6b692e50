//! `ℕ ⋊ P` for a monoid `P ⊂ ℕ^×` generated by pairwise coprime integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Float, One, ToPrimitive, Zero};
use serde::Serialize;

use super::text::{parse_error, parse_nat_pair};
use super::Family;
use crate::boundary::{CoreFactorization, CoreStructure, FoundationCheck, Verdict};
use crate::error::{check_cap, Error, Result};
use crate::kms::{CriticalTemperature, KmsType, MinimalityReport, Scaled};
use crate::sgcore::{LcmOutcome, RightLcm};

/// `(n, p)` with `p` stored both as an integer and as its exponent vector over `𝒫`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NxPElement {
    n: BigUint,
    p: BigUint,
    exps: Vec<u32>,
}

impl NxPElement {
    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    fn weight(&self) -> u32 {
        self.exps.iter().sum()
    }
}

impl Ord for NxPElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.exps.cmp(&other.exps))
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for NxPElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NxPElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.p)
    }
}

/// `ℕ ⋊ P` with law `(m,p)(n,q) = (m + pn, pq)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NxP {
    primes: Vec<u64>,
}

impl NxP {
    pub fn new(primes: &[u64]) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidConfig("empty generator family".into()));
        }
        for (i, &p) in primes.iter().enumerate() {
            if p < 2 {
                return Err(Error::InvalidConfig(format!("generator {p} is smaller than 2")));
            }
            for &q in &primes[..i] {
                if p.gcd(&q) != 1 {
                    return Err(Error::InvalidConfig(format!(
                        "generators {q} and {p} are not relatively prime"
                    )));
                }
            }
        }
        Ok(Self {
            primes: primes.to_vec(),
        })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn from_exps(&self, n: BigUint, exps: Vec<u32>) -> NxPElement {
        let p = self
            .primes
            .iter()
            .zip(&exps)
            .map(|(&q, &e)| BigUint::from(q).pow(e))
            .product();
        NxPElement { n, p, exps }
    }

    /// `(n, p)`; errors when `p` does not factor over the generators.
    pub fn element(&self, n: impl Into<BigUint>, p: impl Into<BigUint>) -> Result<NxPElement> {
        let p: BigUint = p.into();
        let mut rest = p.clone();
        if rest.is_zero() {
            return Err(Error::NotFactorable(p.to_string()));
        }
        let mut exps = vec![0u32; self.primes.len()];
        for (e, &q) in exps.iter_mut().zip(&self.primes) {
            let q = BigUint::from(q);
            while (&rest % &q).is_zero() {
                rest /= &q;
                *e += 1;
            }
        }
        if !rest.is_one() {
            return Err(Error::NotFactorable(p.to_string()));
        }
        Ok(NxPElement {
            n: n.into(),
            p,
            exps,
        })
    }

    /// Exponent vectors of total weight ≤ `max`, by weight then lexicographically.
    fn exponent_vectors(&self, max: u32) -> Vec<Vec<u32>> {
        let k = self.primes.len();
        let mut out = Vec::new();
        for w in 0..=max {
            let mut cur = vec![0u32; k];
            compositions(w, 0, &mut cur, &mut out);
        }
        out
    }

    fn gcd_p(&self, a: &NxPElement, b: &NxPElement) -> BigUint {
        self.from_exps(
            BigUint::zero(),
            a.exps.iter().zip(&b.exps).map(|(x, y)| *x.min(y)).collect(),
        )
        .p
    }

    fn lcm_exps(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
    }

    /// Least `p_F` over the multipliers of `f`.
    fn p_of_set(&self, f: &[NxPElement]) -> NxPElement {
        let exps = f
            .iter()
            .fold(vec![0; self.primes.len()], |acc, x| self.lcm_exps(&acc, &x.exps));
        self.from_exps(BigUint::zero(), exps)
    }

    fn covers(x: &NxPElement, r: &BigUint) -> bool {
        (r % &x.p) == (&x.n % &x.p)
    }
}

fn compositions(rem: u32, idx: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if idx + 1 == cur.len() {
        cur[idx] = rem;
        out.push(cur.clone());
        return;
    }
    for v in (0..=rem).rev() {
        cur[idx] = v;
        compositions(rem - v, idx + 1, cur, out);
    }
    cur[idx] = 0;
}

impl RightLcm for NxP {
    type Elem = NxPElement;

    fn name(&self) -> String {
        let ps: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        format!("nxp[{}]", ps.join(","))
    }

    fn identity(&self) -> NxPElement {
        self.from_exps(BigUint::zero(), vec![0; self.primes.len()])
    }

    fn multiply(&self, s: &NxPElement, t: &NxPElement) -> NxPElement {
        NxPElement {
            n: &s.n + &s.p * &t.n,
            p: &s.p * &t.p,
            exps: s.exps.iter().zip(&t.exps).map(|(a, b)| a + b).collect(),
        }
    }

    fn right_lcm(&self, s: &NxPElement, t: &NxPElement) -> LcmOutcome<NxPElement> {
        if self.disjointness_criterion(s, t) {
            return LcmOutcome::Disjoint;
        }
        let lcm = self.from_exps(BigUint::zero(), self.lcm_exps(&s.exps, &t.exps));
        let (m, n) = (BigInt::from(s.n.clone()), BigInt::from(t.n.clone()));
        let (p, q) = (BigInt::from(s.p.clone()), BigInt::from(t.p.clone()));
        let l = BigInt::from(lcm.p.clone());
        let eg = p.extended_gcd(&q);
        // x ≡ m (mod p), x ≡ n (mod q)
        let x0 = (&m + &p * &eg.x * ((&n - &m) / &eg.gcd)).mod_floor(&l);
        let floor = m.clone().max(n);
        let x = if x0 >= floor {
            x0
        } else {
            let steps = (&floor - &x0 + &l - 1u32) / &l;
            x0 + steps * &l
        };
        LcmOutcome::Meet(NxPElement {
            n: x.to_biguint().expect("nonnegative"),
            ..lcm
        })
    }

    fn left_divide(&self, s: &NxPElement, x: &NxPElement) -> Option<NxPElement> {
        if x.n < s.n || s.exps.iter().zip(&x.exps).any(|(a, b)| a > b) {
            return None;
        }
        let diff = &x.n - &s.n;
        if !(&diff % &s.p).is_zero() {
            return None;
        }
        Some(NxPElement {
            n: diff / &s.p,
            p: &x.p / &s.p,
            exps: x.exps.iter().zip(&s.exps).map(|(a, b)| a - b).collect(),
        })
    }

    fn length(&self, s: &NxPElement) -> usize {
        let n = s.n.to_usize().unwrap_or(usize::MAX);
        n.max(s.weight() as usize)
    }

    fn enumerate(&self, max_len: usize) -> Result<Vec<NxPElement>> {
        let vecs = self.exponent_vectors(max_len as u32);
        check_cap(
            "enumeration size",
            vecs.len() as u128 * (max_len as u128 + 1),
        )?;
        let mut out = Vec::new();
        for e in vecs {
            for n in 0..=max_len {
                out.push(self.from_exps(BigUint::from(n), e.clone()));
            }
        }
        Ok(out)
    }

    fn is_unit(&self, s: &NxPElement) -> bool {
        s.n.is_zero() && s.p.is_one()
    }

    fn has_trivial_units(&self) -> bool {
        true
    }

    fn disjointness_criterion(&self, s: &NxPElement, t: &NxPElement) -> bool {
        let g = self.gcd_p(s, t);
        (&s.n % &g) != (&t.n % &g)
    }

    fn generators(&self) -> Vec<NxPElement> {
        let k = self.primes.len();
        let mut gens = vec![self.from_exps(BigUint::one(), vec![0; k])];
        for i in 0..k {
            let mut e = vec![0; k];
            e[i] = 1;
            gens.push(self.from_exps(BigUint::zero(), e));
        }
        gens
    }

    fn factor_generators(&self, s: &NxPElement) -> Vec<usize> {
        // (n,p) = (1,1)^n · (0,p)
        let n = s.n.to_usize().expect("n fits in usize");
        let mut word = vec![0; n];
        for (i, &e) in s.exps.iter().enumerate() {
            word.extend(std::iter::repeat(i + 1).take(e as usize));
        }
        word
    }
}

impl CoreStructure for NxP {
    fn is_core(&self, s: &NxPElement) -> bool {
        s.p.is_one()
    }

    fn is_core_irreducible(&self, s: &NxPElement) -> bool {
        !s.p.is_one() && s.n < s.p
    }

    fn core_factorize(&self, s: &NxPElement) -> CoreFactorization<NxPElement> {
        let k = self.primes.len();
        if s.p.is_one() {
            return CoreFactorization {
                irreducible_part: self.identity(),
                core_part: s.clone(),
            };
        }
        let (q, r) = s.n.div_rem(&s.p);
        CoreFactorization {
            irreducible_part: NxPElement { n: r, ..s.clone() },
            core_part: self.from_exps(q, vec![0; k]),
        }
    }

    fn foundation_criterion(&self, f: &[NxPElement]) -> Result<FoundationCheck<NxPElement>> {
        let pf = self.p_of_set(f);
        check_cap("residues modulo p_F", pf.p.to_u128().unwrap_or(u128::MAX))?;
        let mut r = BigUint::zero();
        while r < pf.p {
            if !f.iter().any(|x| Self::covers(x, &r)) {
                return Ok(FoundationCheck::Uncovered(NxPElement { n: r, ..pf }));
            }
            r += 1u32;
        }
        Ok(FoundationCheck::Foundation)
    }

    fn elementary_refinement(&self, f: &[NxPElement]) -> Result<Vec<NxPElement>> {
        let pf = self.p_of_set(f);
        check_cap("residues modulo p_F", pf.p.to_u128().unwrap_or(u128::MAX))?;
        let mut out = Vec::new();
        let mut r = BigUint::zero();
        while r < pf.p {
            // least x ≡ r (mod p_F) inside some member's ideal
            let x = f
                .iter()
                .filter(|m| Self::covers(m, &r))
                .map(|m| {
                    if m.n <= r {
                        r.clone()
                    } else {
                        let gap = &m.n - &r;
                        &r + (&gap + &pf.p - 1u32) / &pf.p * &pf.p
                    }
                })
                .min()
                .ok_or_else(|| Error::InvalidConfig(format!("residue {r} is not covered")))?;
            out.push(NxPElement { n: x, ..pf.clone() });
            r += 1u32;
        }
        Ok(out)
    }

    fn elementary_sets(&self) -> Result<Vec<Vec<NxPElement>>> {
        let k = self.primes.len();
        Ok((0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = 1;
                (0..self.primes[i])
                    .map(|n| self.from_exps(BigUint::from(n), e.clone()))
                    .collect()
            })
            .collect())
    }

    fn zs_internal(&self, s: &NxPElement) -> Result<CoreFactorization<NxPElement>> {
        Ok(self.core_factorize(s))
    }
}

impl Scaled for NxP {
    fn kms_type(&self) -> KmsType {
        KmsType::A
    }

    fn scale_length(&self, s: &NxPElement) -> usize {
        s.weight() as usize
    }

    fn scale(&self, s: &NxPElement) -> BigUint {
        s.p.clone()
    }

    fn critical(&self) -> CriticalTemperature {
        CriticalTemperature {
            value: self.abscissa(),
            from_table: false,
            note: Some(
                "finitely generated subdynamics of N x N^x are not covered by the KMS \
                 classification; the table value 2 applies to N x N^x itself"
                    .into(),
            ),
        }
    }

    fn class_counts(&self, cutoff: usize) -> Result<Vec<(BigUint, BigUint)>> {
        let vecs = self.exponent_vectors(cutoff as u32);
        check_cap("class levels", vecs.len() as u128)?;
        Ok(vecs
            .into_iter()
            .map(|e| {
                let p = self.from_exps(BigUint::zero(), e).p;
                (p.clone(), p)
            })
            .collect())
    }

    fn class_representatives(&self, max_level: usize) -> Result<Vec<NxPElement>> {
        let vecs = self.exponent_vectors(max_level as u32);
        let mut out = Vec::new();
        for e in vecs {
            let p = self.from_exps(BigUint::zero(), e);
            let count = p.p.to_u128().unwrap_or(u128::MAX);
            check_cap("class representatives", out.len() as u128 + count)?;
            let mut n = BigUint::zero();
            while n < p.p {
                out.push(NxPElement { n: n.clone(), ..p.clone() });
                n += 1u32;
            }
        }
        Ok(out)
    }

    fn zeta_closed_form<F: Float>(&self, beta: F) -> Option<F> {
        let one = F::one();
        let mut prod = one;
        for &p in &self.primes {
            let p = F::from(p)?;
            prod = prod / (one - p.powf(one - beta));
        }
        Some(prod)
    }

    fn core_coordinates(&self, s: &NxPElement) -> Option<Vec<i64>> {
        if s.p.is_one() {
            s.n.to_i64().map(|n| vec![n])
        } else {
            None
        }
    }

    fn torus_dim(&self) -> Option<usize> {
        Some(1)
    }

    fn minimality(&self) -> Result<MinimalityReport> {
        Ok(MinimalityReport {
            verdict: Verdict::True,
            criterion: "intersection of pN over p in P is {0}".into(),
            evidence: format!(
                "n > 0 lies outside {}^k N once {}^k > n",
                self.primes[0], self.primes[0]
            ),
        })
    }
}

impl Family for NxP {
    fn tag(&self) -> &'static str {
        "nxp"
    }

    fn parse_element(&self, text: &str) -> Result<NxPElement> {
        let (n, p) = parse_nat_pair(text)?;
        if p.is_zero() {
            return Err(parse_error(text, 0, "multiplier must be positive"));
        }
        self.element(n, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam() -> NxP {
        NxP::new(&[2, 3]).unwrap()
    }

    fn e(f: &NxP, n: u64, p: u64) -> NxPElement {
        f.element(n, p).unwrap()
    }

    #[test]
    fn semidirect_law() {
        let f = fam();
        assert_eq!(f.multiply(&e(&f, 1, 2), &e(&f, 1, 3)), e(&f, 3, 6));
        assert_eq!(f.multiply(&f.identity(), &e(&f, 4, 6)), e(&f, 4, 6));
    }

    #[test]
    fn lcm_examples() {
        let f = fam();
        assert_eq!(
            f.right_lcm(&e(&f, 0, 2), &e(&f, 1, 3)),
            LcmOutcome::Meet(e(&f, 4, 6))
        );
        assert_eq!(
            f.right_lcm(&e(&f, 1, 2), &e(&f, 1, 3)),
            LcmOutcome::Meet(e(&f, 1, 6))
        );
        assert_eq!(f.right_lcm(&e(&f, 0, 2), &e(&f, 1, 2)), LcmOutcome::Disjoint);
        let g = NxP::new(&[2]).unwrap();
        assert_eq!(
            g.right_lcm(&e(&g, 0, 2), &e(&g, 1, 4)),
            LcmOutcome::Disjoint
        );
    }

    #[test]
    fn left_divide_example() {
        let f = fam();
        assert_eq!(f.left_divide(&e(&f, 0, 2), &e(&f, 4, 6)), Some(e(&f, 2, 3)));
        assert_eq!(f.left_divide(&e(&f, 1, 2), &e(&f, 4, 6)), None);
    }

    #[test]
    fn enumeration_order() {
        let g = NxP::new(&[2]).unwrap();
        let all = g.enumerate(1).unwrap();
        let shown: Vec<String> = all.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["(0,1)", "(1,1)", "(0,2)", "(1,2)"]);
    }

    #[test]
    fn rejects_unfactorable() {
        assert_eq!(fam().element(1u32, 5u32), Err(Error::NotFactorable("5".into())));
        assert!(NxP::new(&[2, 4]).is_err());
    }

    #[test]
    fn refinement_example() {
        let f = fam();
        let set = [e(&f, 0, 2), e(&f, 0, 3), e(&f, 1, 3), e(&f, 2, 3)];
        let refined = f.elementary_refinement(&set).unwrap();
        let want: Vec<NxPElement> = (0..6).map(|n| e(&f, n, 6)).collect();
        assert_eq!(refined, want);
    }
}
