//! Baumslag–Solitar monoids `BS(c,d)⁺ = ⟨a, b | ab^c = b^d a⟩⁺`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Float;
use serde::Serialize;

use super::text::{is_empty_word, parse_error};
use super::Family;
use crate::boundary::{CoreFactorization, CoreStructure, FoundationCheck, Verdict};
use crate::error::{check_cap, Error, Result};
use crate::kms::{CriticalTemperature, KmsType, MinimalityReport, Scaled};
use crate::sgcore::{LcmOutcome, RightLcm};

/// Normal form `w₁⋯w_m b^i` with `w_k = b^{ℓ_k} a`, `0 ≤ ℓ_k < d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BsElement {
    letters: Vec<u32>,
    tail: u64,
}

impl BsElement {
    pub fn new(letters: Vec<u32>, tail: u64) -> Self {
        Self { letters, tail }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn tail(&self) -> u64 {
        self.tail
    }

    /// `b^i`.
    pub fn b_power(i: u64) -> Self {
        Self::new(Vec::new(), i)
    }
}

impl Ord for BsElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.tail.cmp(&other.tail))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for BsElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() && self.tail == 0 {
            return write!(f, "ε");
        }
        for &l in &self.letters {
            write!(f, "{}a", "b".repeat(l as usize))?;
        }
        write!(f, "{}", "b".repeat(self.tail as usize))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bs {
    c: u32,
    d: u32,
}

impl Bs {
    pub fn new(c: u32, d: u32) -> Result<Self> {
        if c == 0 || d == 0 {
            return Err(Error::InvalidConfig("c and d must be at least 1".into()));
        }
        Ok(Self { c, d })
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The letter `a`.
    pub fn a(&self) -> BsElement {
        BsElement::new(vec![0], 0)
    }

    /// The letter `b`.
    pub fn b(&self) -> BsElement {
        BsElement::b_power(1)
    }

    /// Normal form of a word over `{a, b}`; `b^k` abbreviates a run of `b`s.
    pub fn normalize(&self, word: &str) -> Result<BsElement> {
        if is_empty_word(word) {
            return Ok(self.identity());
        }
        let mut acc = self.identity();
        let chars: Vec<(usize, char)> = word.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (pos, ch) = chars[i];
            i += 1;
            let gen = match ch {
                'a' => self.a(),
                'b' => self.b(),
                c if c.is_whitespace() => continue,
                _ => return Err(parse_error(word, pos, "expected 'a' or 'b'")),
            };
            let mut reps = 1u64;
            if i < chars.len() && chars[i].1 == '^' {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end].1.is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    return Err(parse_error(word, chars[i].0, "expected exponent"));
                }
                let digits: String = chars[start..end].iter().map(|c| c.1).collect();
                reps = digits
                    .parse()
                    .map_err(|_| parse_error(word, chars[start].0, "exponent too large"))?;
                i = end;
            }
            if ch == 'b' {
                acc = self.multiply(&acc, &BsElement::b_power(reps));
            } else {
                for _ in 0..reps {
                    acc = self.multiply(&acc, &gen);
                }
            }
        }
        Ok(acc)
    }

    /// Pushes `b^k` through `letters` from the left; returns the rewritten
    /// letters and the power of `b` that emerges on the right.
    fn push_b(&self, k: u64, letters: &[u32]) -> (Vec<u32>, u64) {
        let (c, d) = (u64::from(self.c), u64::from(self.d));
        let mut carry = k;
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            let v = carry + u64::from(l);
            out.push((v % d) as u32);
            carry = (v / d) * c;
        }
        (out, carry)
    }

    /// Power of `b` still to be divided off after stripping `b^k` from the
    /// left of `letters`; the stripped letters are returned alongside.
    fn peel_b(&self, k: u64, letters: &[u32]) -> (Vec<u32>, u64) {
        let (c, d) = (u64::from(self.c), u64::from(self.d));
        let mut k = k;
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            let l = u64::from(l);
            if k <= l {
                out.push((l - k) as u32);
                k = 0;
            } else {
                let q = (k - l).div_ceil(d);
                out.push((q * d + l - k) as u32);
                k = q * c;
            }
        }
        (out, k)
    }

    fn prefix_comparable(a: &[u32], b: &[u32]) -> bool {
        let m = a.len().min(b.len());
        a[..m] == b[..m]
    }

    /// All letter sequences of length `m` in lexicographic order.
    fn sequences(&self, m: usize) -> Result<Vec<Vec<u32>>> {
        words(self.d, m)
    }
}

/// All words of length `m` over `0..k`, lexicographic.
pub(crate) fn words(k: u32, m: usize) -> Result<Vec<Vec<u32>>> {
    check_cap("words of fixed length", u128::from(k).saturating_pow(m as u32))?;
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

impl RightLcm for Bs {
    type Elem = BsElement;

    fn name(&self) -> String {
        format!("bs({},{})", self.c, self.d)
    }

    fn identity(&self) -> BsElement {
        BsElement::b_power(0)
    }

    fn multiply(&self, s: &BsElement, t: &BsElement) -> BsElement {
        let (moved, carry) = self.push_b(s.tail, &t.letters);
        let mut letters = s.letters.clone();
        letters.extend(moved);
        BsElement::new(letters, carry + t.tail)
    }

    fn right_lcm(&self, s: &BsElement, t: &BsElement) -> LcmOutcome<BsElement> {
        let (short, long) = if s.letters.len() <= t.letters.len() {
            (s, t)
        } else {
            (t, s)
        };
        if !long.letters.starts_with(&short.letters) {
            return LcmOutcome::Disjoint;
        }
        let rest = &long.letters[short.letters.len()..];
        let (_, need) = self.peel_b(short.tail, rest);
        LcmOutcome::Meet(BsElement::new(long.letters.clone(), long.tail.max(need)))
    }

    fn left_divide(&self, s: &BsElement, x: &BsElement) -> Option<BsElement> {
        if !x.letters.starts_with(&s.letters) {
            return None;
        }
        let (letters, need) = self.peel_b(s.tail, &x.letters[s.letters.len()..]);
        (need <= x.tail).then(|| BsElement::new(letters, x.tail - need))
    }

    fn length(&self, s: &BsElement) -> usize {
        s.letters.len().max(s.tail as usize)
    }

    fn enumerate(&self, max_len: usize) -> Result<Vec<BsElement>> {
        let per_tail: u128 = (0..=max_len as u32)
            .map(|m| u128::from(self.d).saturating_pow(m))
            .sum();
        check_cap("enumeration size", per_tail * (max_len as u128 + 1))?;
        let mut out = Vec::new();
        for m in 0..=max_len {
            let seqs = self.sequences(m)?;
            for tail in 0..=max_len as u64 {
                out.extend(seqs.iter().map(|w| BsElement::new(w.clone(), tail)));
            }
        }
        Ok(out)
    }

    fn is_unit(&self, s: &BsElement) -> bool {
        s.letters.is_empty() && s.tail == 0
    }

    fn has_trivial_units(&self) -> bool {
        true
    }

    fn disjointness_criterion(&self, s: &BsElement, t: &BsElement) -> bool {
        !Self::prefix_comparable(&s.letters, &t.letters)
    }

    fn generators(&self) -> Vec<BsElement> {
        vec![self.a(), self.b()]
    }

    fn factor_generators(&self, s: &BsElement) -> Vec<usize> {
        let mut word = Vec::new();
        for &l in &s.letters {
            word.extend(std::iter::repeat(1).take(l as usize));
            word.push(0);
        }
        word.extend(std::iter::repeat(1).take(s.tail as usize));
        word
    }
}

impl CoreStructure for Bs {
    fn is_core(&self, s: &BsElement) -> bool {
        self.d == 1 || s.letters.is_empty()
    }

    fn is_core_irreducible(&self, s: &BsElement) -> bool {
        !self.is_core(s) && s.tail == 0
    }

    fn core_factorize(&self, s: &BsElement) -> CoreFactorization<BsElement> {
        if self.is_core(s) {
            return CoreFactorization {
                irreducible_part: self.identity(),
                core_part: s.clone(),
            };
        }
        CoreFactorization {
            irreducible_part: BsElement::new(s.letters.clone(), 0),
            core_part: BsElement::b_power(s.tail),
        }
    }

    fn foundation_criterion(&self, f: &[BsElement]) -> Result<FoundationCheck<BsElement>> {
        let depth = f.iter().map(|x| x.letters.len()).max().unwrap_or(0);
        for seq in self.sequences(depth)? {
            if !f.iter().any(|x| seq.starts_with(&x.letters)) {
                return Ok(FoundationCheck::Uncovered(BsElement::new(seq, 0)));
            }
        }
        Ok(FoundationCheck::Foundation)
    }

    fn elementary_refinement(&self, f: &[BsElement]) -> Result<Vec<BsElement>> {
        let depth = f.iter().map(|x| x.letters.len()).max().unwrap_or(0);
        self.sequences(depth)?
            .into_iter()
            .map(|seq| {
                let member = f
                    .iter()
                    .find(|x| seq.starts_with(&x.letters))
                    .ok_or_else(|| Error::InvalidConfig("not a foundation set".into()))?;
                match self.right_lcm(member, &BsElement::new(seq, 0)) {
                    LcmOutcome::Meet(w) => Ok(w),
                    LcmOutcome::Disjoint => unreachable!("prefix-comparable words meet"),
                }
            })
            .collect()
    }

    fn elementary_sets(&self) -> Result<Vec<Vec<BsElement>>> {
        if self.d == 1 {
            return Ok(Vec::new());
        }
        Ok(vec![(0..self.d).map(|l| BsElement::new(vec![l], 0)).collect()])
    }

    fn zs_internal(&self, s: &BsElement) -> Result<CoreFactorization<BsElement>> {
        Ok(self.core_factorize(s))
    }
}

impl Scaled for Bs {
    fn kms_type(&self) -> KmsType {
        KmsType::D
    }

    fn scale_length(&self, s: &BsElement) -> usize {
        s.letters.len()
    }

    fn scale(&self, s: &BsElement) -> BigUint {
        BigUint::from(self.d).pow(s.letters.len() as u32)
    }

    fn critical(&self) -> CriticalTemperature {
        CriticalTemperature {
            value: 1.0,
            from_table: true,
            note: None,
        }
    }

    fn class_counts(&self, cutoff: usize) -> Result<Vec<(BigUint, BigUint)>> {
        Ok((0..=cutoff as u32)
            .map(|k| {
                let n = BigUint::from(self.d).pow(k);
                (n.clone(), n)
            })
            .collect())
    }

    fn class_representatives(&self, max_level: usize) -> Result<Vec<BsElement>> {
        let mut out = Vec::new();
        for m in 0..=max_level {
            out.extend(self.sequences(m)?.into_iter().map(|w| BsElement::new(w, 0)));
        }
        Ok(out)
    }

    fn zeta_closed_form<F: Float>(&self, beta: F) -> Option<F> {
        let one = F::one();
        let d = F::from(self.d)?;
        Some(one / (one - d.powf(one - beta)))
    }

    fn core_coordinates(&self, s: &BsElement) -> Option<Vec<i64>> {
        s.letters.is_empty().then(|| vec![s.tail as i64])
    }

    fn torus_dim(&self) -> Option<usize> {
        Some(1)
    }

    fn minimality(&self) -> Result<MinimalityReport> {
        let minimal = self.c % self.d != 0;
        Ok(MinimalityReport {
            verdict: Verdict::from_bool(minimal),
            criterion: "c not in dN".into(),
            evidence: format!("{} mod {} = {}", self.c, self.d, self.c % self.d),
        })
    }
}

impl Family for Bs {
    fn tag(&self) -> &'static str {
        "bs"
    }

    fn parse_element(&self, text: &str) -> Result<BsElement> {
        self.normalize(text)
    }
}
