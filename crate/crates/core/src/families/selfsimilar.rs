//! Self-similar actions `X* ⋈ G` of a finitely generated abelian group.
//!
//! Group elements are exponent vectors over the configured generators, so
//! equality in `G` is equality of vectors. This is exact for actions of free
//! abelian groups such as the adding machine.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::bs::words;
use super::text::parse_error;
use super::Family;
use crate::boundary::{CoreFactorization, CoreStructure, FoundationCheck, Verdict};
use crate::error::{check_cap, Error, Result};
use crate::kms::{CriticalTemperature, KmsType, MinimalityReport, Scaled};
use crate::sgcore::{LcmOutcome, RightLcm};

/// Default cap for restriction closures.
pub const CLOSURE_CAP: usize = 10_000;

/// One generator's transition table: `g·x = perm[x]`, `g|_x = restrictions[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub perm: Vec<usize>,
    pub restrictions: Vec<Vec<i64>>,
}

/// `(w, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SsElement {
    word: Vec<usize>,
    group: Vec<i64>,
}

impl SsElement {
    pub fn new(word: Vec<usize>, group: Vec<i64>) -> Self {
        Self { word, group }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn group(&self) -> &[i64] {
        &self.group
    }

    fn group_norm(&self) -> u64 {
        self.group.iter().map(|x| x.unsigned_abs()).sum()
    }
}

impl Ord for SsElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = |s: &Self| (s.word.len() as u64).max(s.group_norm());
        len(self)
            .cmp(&len(other))
            .then_with(|| self.word.len().cmp(&other.word.len()))
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.group_norm().cmp(&other.group_norm()))
            .then_with(|| self.group.cmp(&other.group))
    }
}

impl PartialOrd for SsElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Closure of `{g}` under restrictions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "elements")]
pub enum RestrictionClosure {
    Finite(Vec<Vec<i64>>),
    ExceededCap(usize),
}

/// A self-similar action of `ℤʳ` on `X*`, `r` = number of generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfSimilar {
    alphabet: usize,
    generators: Vec<Transition>,
    #[serde(skip)]
    inverse: Vec<Vec<usize>>,
}

impl SelfSimilar {
    pub fn new(alphabet: usize, generators: Vec<Transition>) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidConfig("empty alphabet".into()));
        }
        if alphabet > 10 {
            return Err(Error::InvalidConfig("alphabets are limited to the digits 0-9".into()));
        }
        let r = generators.len();
        let mut inverse = Vec::with_capacity(r);
        for (i, t) in generators.iter().enumerate() {
            let name = generator_name(i, r);
            if t.perm.len() != alphabet || t.restrictions.len() != alphabet {
                return Err(Error::InvalidConfig(format!(
                    "transition table of {name} does not cover the alphabet"
                )));
            }
            if t.restrictions.iter().any(|v| v.len() != r) {
                return Err(Error::InvalidConfig(format!(
                    "restriction of {name} has the wrong number of exponents"
                )));
            }
            let mut inv = vec![usize::MAX; alphabet];
            for (x, &y) in t.perm.iter().enumerate() {
                if y >= alphabet || inv[y] != usize::MAX {
                    return Err(Error::InvalidConfig(format!("{name} does not permute X")));
                }
                inv[y] = x;
            }
            inverse.push(inv);
        }
        Ok(Self {
            alphabet,
            generators,
            inverse,
        })
    }

    /// The binary odometer: `g·0 = 1, g|₀ = e`; `g·1 = 0, g|₁ = g`.
    pub fn adding_machine() -> Self {
        Self::new(
            2,
            vec![Transition {
                perm: vec![1, 0],
                restrictions: vec![vec![0], vec![1]],
            }],
        )
        .expect("valid table")
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.generators
    }

    pub fn element(&self, word: Vec<usize>, group: Vec<i64>) -> Result<SsElement> {
        if word.iter().any(|&x| x >= self.alphabet) {
            return Err(Error::InvalidConfig("letter outside the alphabet".into()));
        }
        if group.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "{} exponents for {} generators",
                group.len(),
                self.rank()
            )));
        }
        Ok(SsElement { word, group })
    }

    fn unit_group(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    /// `(g·x, g|_x)` for a single letter.
    pub fn act_letter(&self, g: &[i64], x: usize) -> (usize, Vec<i64>) {
        let mut cur = x;
        let mut res = self.unit_group();
        for i in (0..self.rank()).rev() {
            let t = &self.generators[i];
            let k = g[i];
            for _ in 0..k.unsigned_abs() {
                if k > 0 {
                    add_assign(&mut res, &t.restrictions[cur], 1);
                    cur = t.perm[cur];
                } else {
                    cur = self.inverse[i][cur];
                    add_assign(&mut res, &t.restrictions[cur], -1);
                }
            }
        }
        (cur, res)
    }

    /// `(g·w, g|_w)`.
    pub fn act_word(&self, g: &[i64], w: &[usize]) -> (Vec<usize>, Vec<i64>) {
        let mut cur = g.to_vec();
        let mut out = Vec::with_capacity(w.len());
        for &x in w {
            let (y, next) = self.act_letter(&cur, x);
            out.push(y);
            cur = next;
        }
        (out, cur)
    }

    /// Breadth-first closure of `{g}` under `h ↦ h|_x`.
    pub fn restriction_closure(&self, g: &[i64], cap: usize) -> RestrictionClosure {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::from([g.to_vec()]);
        seen.insert(g.to_vec());
        while let Some(h) = queue.pop_front() {
            for x in 0..self.alphabet {
                let (_, r) = self.act_letter(&h, x);
                if seen.insert(r.clone()) {
                    if seen.len() > cap {
                        return RestrictionClosure::ExceededCap(cap);
                    }
                    queue.push_back(r);
                }
            }
        }
        RestrictionClosure::Finite(seen.into_iter().collect())
    }

    /// First violation of `g·(vw) = (g·v)((g|_v)·w)` or `g|_{vw} = (g|_v)|_w`
    /// with `‖g‖₁ ≤ norm` and `|v|, |w| ≤ len`.
    pub fn zs_axiom_violation(&self, norm: usize, len: usize) -> Result<Option<(SsElement, Vec<usize>, Vec<usize>)>> {
        let groups = self.group_ball(norm)?;
        let mut ws = Vec::new();
        for m in 0..=len {
            ws.extend(self.words_of(m)?);
        }
        for g in &groups {
            for v in &ws {
                let (gv, gr) = self.act_word(g, v);
                for w in &ws {
                    let vw: Vec<usize> = v.iter().chain(w).copied().collect();
                    let (lhs, lhs_r) = self.act_word(g, &vw);
                    let (grw, rhs_r) = self.act_word(&gr, w);
                    let rhs: Vec<usize> = gv.iter().chain(&grw).copied().collect();
                    if lhs != rhs || lhs_r != rhs_r {
                        return Ok(Some((SsElement::new(Vec::new(), g.clone()), v.clone(), w.clone())));
                    }
                }
            }
        }
        Ok(None)
    }

    fn words_of(&self, m: usize) -> Result<Vec<Vec<usize>>> {
        Ok(words(self.alphabet as u32, m)?
            .into_iter()
            .map(|w| w.into_iter().map(|x| x as usize).collect())
            .collect())
    }

    /// Exponent vectors with `‖·‖₁ ≤ norm`, ordered by norm then lexicographically.
    fn group_ball(&self, norm: usize) -> Result<Vec<Vec<i64>>> {
        let r = self.rank();
        let side = 2 * norm as u128 + 1;
        check_cap("group ball", side.saturating_pow(r as u32))?;
        let n = norm as i64;
        let mut out = vec![Vec::new()];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (-n..=n).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.retain(|v| v.iter().map(|x| x.unsigned_abs()).sum::<u64>() <= norm as u64);
        out.sort_by(|a, b| {
            let na: u64 = a.iter().map(|x| x.unsigned_abs()).sum();
            let nb: u64 = b.iter().map(|x| x.unsigned_abs()).sum();
            na.cmp(&nb).then_with(|| a.cmp(b))
        });
        Ok(out)
    }

    fn elements(&self, max_word: usize, max_norm: usize) -> Result<Vec<SsElement>> {
        let groups = self.group_ball(max_norm)?;
        let mut out = Vec::new();
        for m in 0..=max_word {
            let ws = self.words_of(m)?;
            check_cap("enumeration size", (out.len() + ws.len() * groups.len()) as u128)?;
            for w in ws {
                for g in &groups {
                    out.push(SsElement::new(w.clone(), g.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn format_group(g: &[i64]) -> String {
        let parts: Vec<String> = g
            .iter()
            .enumerate()
            .filter(|(_, k)| **k != 0)
            .map(|(i, k)| {
                let name = generator_name(i, g.len());
                if *k == 1 {
                    name
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect();
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join(" ")
        }
    }

    /// `"e"`, or space-separated `name^k` factors.
    pub fn parse_group(&self, text: &str) -> Result<Vec<i64>> {
        let mut g = self.unit_group();
        if matches!(text.trim(), "" | "e") {
            return Ok(g);
        }
        let mut at = 0;
        for part in text.split(' ') {
            if !part.is_empty() {
                let (name, exp) = match part.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<i64>().map_err(|_| {
                            parse_error(text, at + n.len() + 1, "expected an integer exponent")
                        })?,
                    ),
                    None => (part, 1),
                };
                let idx = (0..self.rank())
                    .find(|&i| generator_name(i, self.rank()) == name)
                    .ok_or_else(|| parse_error(text, at, "unknown generator"))?;
                g[idx] += exp;
            }
            at += part.len() + 1;
        }
        Ok(g)
    }

    pub fn format_word(w: &[usize]) -> String {
        w.iter().map(|x| char::from(b'0' + *x as u8)).collect()
    }

    pub fn parse_word(&self, text: &str, at: usize) -> Result<Vec<usize>> {
        if matches!(text, "" | "ε") {
            return Ok(Vec::new());
        }
        text.char_indices()
            .map(|(i, c)| {
                c.to_digit(10)
                    .map(|x| x as usize)
                    .filter(|&x| x < self.alphabet)
                    .ok_or_else(|| parse_error(text, at + i, "letter outside the alphabet"))
            })
            .collect()
    }
}

fn add_assign(acc: &mut [i64], v: &[i64], sign: i64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += sign * b;
    }
}

impl fmt::Display for SsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{\"word\":\"{}\",\"g\":\"{}\"}}",
            SelfSimilar::format_word(&self.word),
            SelfSimilar::format_group(&self.group)
        )
    }
}

/// `g` for a single generator, otherwise `g1, g2, …`.
pub fn generator_name(i: usize, rank: usize) -> String {
    if rank == 1 {
        "g".into()
    } else {
        format!("g{}", i + 1)
    }
}

impl RightLcm for SelfSimilar {
    type Elem = SsElement;

    fn name(&self) -> String {
        format!("selfsimilar(|X|={},rank={})", self.alphabet, self.rank())
    }

    fn identity(&self) -> SsElement {
        SsElement::new(Vec::new(), self.unit_group())
    }

    fn multiply(&self, s: &SsElement, t: &SsElement) -> SsElement {
        let (moved, mut res) = self.act_word(&s.group, &t.word);
        add_assign(&mut res, &t.group, 1);
        let mut word = s.word.clone();
        word.extend(moved);
        SsElement::new(word, res)
    }

    fn right_lcm(&self, s: &SsElement, t: &SsElement) -> LcmOutcome<SsElement> {
        let (short, long) = if s.word.len() <= t.word.len() { (s, t) } else { (t, s) };
        if long.word.starts_with(&short.word) {
            LcmOutcome::Meet(self.canonical_generator(long))
        } else {
            LcmOutcome::Disjoint
        }
    }

    fn left_divide(&self, s: &SsElement, x: &SsElement) -> Option<SsElement> {
        let rest = x.word.strip_prefix(s.word.as_slice())?;
        let inv: Vec<i64> = s.group.iter().map(|k| -k).collect();
        let (u, _) = self.act_word(&inv, rest);
        let (_, r) = self.act_word(&s.group, &u);
        let mut h = x.group.clone();
        add_assign(&mut h, &r, -1);
        Some(SsElement::new(u, h))
    }

    fn length(&self, s: &SsElement) -> usize {
        s.word.len().max(s.group_norm() as usize)
    }

    fn enumerate(&self, max_len: usize) -> Result<Vec<SsElement>> {
        let mut all = self.elements(max_len, max_len)?;
        all.sort();
        Ok(all)
    }

    fn is_unit(&self, s: &SsElement) -> bool {
        s.word.is_empty()
    }

    fn has_trivial_units(&self) -> bool {
        self.rank() == 0
    }

    fn canonical_generator(&self, w: &SsElement) -> SsElement {
        SsElement::new(w.word.clone(), self.unit_group())
    }

    fn disjointness_criterion(&self, s: &SsElement, t: &SsElement) -> bool {
        let m = s.word.len().min(t.word.len());
        s.word[..m] != t.word[..m]
    }

    fn oracle_cofactors(&self, bound: usize) -> Result<Vec<SsElement>> {
        self.elements(bound, 2 * bound)
    }

    fn generators(&self) -> Vec<SsElement> {
        let r = self.rank();
        let mut gens: Vec<SsElement> = (0..self.alphabet)
            .map(|x| SsElement::new(vec![x], vec![0; r]))
            .collect();
        for i in 0..r {
            for sign in [1, -1] {
                let mut g = vec![0; r];
                g[i] = sign;
                gens.push(SsElement::new(Vec::new(), g));
            }
        }
        gens
    }

    fn factor_generators(&self, s: &SsElement) -> Vec<usize> {
        // (w, g) = x₁⋯x_m · (ε, g)
        let mut word: Vec<usize> = s.word.clone();
        for (i, &k) in s.group.iter().enumerate() {
            let idx = self.alphabet + 2 * i + usize::from(k < 0);
            word.extend(std::iter::repeat(idx).take(k.unsigned_abs() as usize));
        }
        word
    }
}

impl CoreStructure for SelfSimilar {
    fn is_core(&self, s: &SsElement) -> bool {
        self.alphabet == 1 || s.word.is_empty()
    }

    fn is_core_irreducible(&self, s: &SsElement) -> bool {
        self.alphabet > 1 && !s.word.is_empty()
    }

    fn core_factorize(&self, s: &SsElement) -> CoreFactorization<SsElement> {
        if self.is_core(s) {
            return CoreFactorization {
                irreducible_part: self.identity(),
                core_part: s.clone(),
            };
        }
        CoreFactorization {
            irreducible_part: self.canonical_generator(s),
            core_part: SsElement::new(Vec::new(), s.group.clone()),
        }
    }

    fn foundation_criterion(&self, f: &[SsElement]) -> Result<FoundationCheck<SsElement>> {
        let m = f.iter().map(|s| s.word.len()).max().unwrap_or(0);
        for w in self.words_of(m)? {
            if !f.iter().any(|s| w.starts_with(&s.word)) {
                return Ok(FoundationCheck::Uncovered(SsElement::new(w, self.unit_group())));
            }
        }
        Ok(FoundationCheck::Foundation)
    }

    fn elementary_refinement(&self, f: &[SsElement]) -> Result<Vec<SsElement>> {
        let m = f.iter().map(|s| s.word.len()).max().unwrap_or(0);
        Ok(self
            .words_of(m)?
            .into_iter()
            .map(|w| SsElement::new(w, self.unit_group()))
            .collect())
    }

    fn elementary_sets(&self) -> Result<Vec<Vec<SsElement>>> {
        if self.alphabet == 1 {
            return Ok(Vec::new());
        }
        Ok(vec![self.elementary_refinement(&[SsElement::new(vec![0], self.unit_group())])?])
    }

    fn zs_internal(&self, s: &SsElement) -> Result<CoreFactorization<SsElement>> {
        Ok(self.core_factorize(s))
    }
}

impl Scaled for SelfSimilar {
    fn kms_type(&self) -> KmsType {
        KmsType::C
    }

    fn scale_length(&self, s: &SsElement) -> usize {
        s.word.len()
    }

    fn scale(&self, s: &SsElement) -> BigUint {
        BigUint::from(self.alphabet).pow(s.word.len() as u32)
    }

    fn critical(&self) -> CriticalTemperature {
        CriticalTemperature {
            value: 1.0,
            from_table: true,
            note: None,
        }
    }

    fn class_counts(&self, cutoff: usize) -> Result<Vec<(BigUint, BigUint)>> {
        if self.alphabet == 1 {
            return Ok(vec![(BigUint::from(1u8), BigUint::from(1u8))]);
        }
        Ok((0..=cutoff as u32)
            .map(|k| {
                let n = BigUint::from(self.alphabet).pow(k);
                (n.clone(), n)
            })
            .collect())
    }

    fn class_representatives(&self, max_level: usize) -> Result<Vec<SsElement>> {
        if self.alphabet == 1 {
            return Ok(vec![self.identity()]);
        }
        let mut out = Vec::new();
        for m in 0..=max_level {
            out.extend(
                self.words_of(m)?
                    .into_iter()
                    .map(|w| SsElement::new(w, self.unit_group())),
            );
        }
        Ok(out)
    }

    fn zeta_closed_form<F: Float>(&self, beta: F) -> Option<F> {
        let one = F::one();
        if self.alphabet == 1 {
            return Some(one);
        }
        let k = F::from(self.alphabet)?;
        Some(one / (one - k.powf(one - beta)))
    }

    fn core_coordinates(&self, s: &SsElement) -> Option<Vec<i64>> {
        s.word.is_empty().then(|| s.group.clone())
    }

    fn torus_dim(&self) -> Option<usize> {
        None
    }

    fn minimality(&self) -> Result<MinimalityReport> {
        let mut sizes = Vec::new();
        let mut verdict = Verdict::True;
        for i in 0..self.rank() {
            let name = generator_name(i, self.rank());
            let mut g = self.unit_group();
            g[i] = 1;
            match self.restriction_closure(&g, CLOSURE_CAP) {
                RestrictionClosure::Finite(set) => sizes.push(format!("{name}: {}", set.len())),
                RestrictionClosure::ExceededCap(cap) => {
                    sizes.push(format!("{name}: more than {cap}"));
                    verdict = Verdict::VerifiedToBound(cap);
                }
            }
        }
        Ok(MinimalityReport {
            verdict,
            criterion: "restriction closure of every generator is finite".into(),
            evidence: format!("closure sizes [{}]", sizes.join(", ")),
        })
    }
}

impl Family for SelfSimilar {
    fn tag(&self) -> &'static str {
        "selfsimilar"
    }

    /// `{"word":"0110","g":"g^3"}`.
    fn parse_element(&self, text: &str) -> Result<SsElement> {
        let (word, group) = super::text::parse_word_group(text)?;
        let word = self.parse_word(&word, 0)?;
        let group = self.parse_group(&group)?;
        self.element(word, group)
    }
}
