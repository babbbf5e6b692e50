//! The free monoid `X*` on the letters `a, b, c, …`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Float;
use serde::Serialize;

use super::bs::words;
use super::text::{is_empty_word, parse_error};
use super::Family;
use crate::boundary::{CoreFactorization, CoreStructure, FoundationCheck, Verdict};
use crate::error::{Error, Result};
use crate::kms::{CriticalTemperature, KmsType, MinimalityReport, Scaled};
use crate::sgcore::{LcmOutcome, RightLcm};

/// A word, letters indexed from `0 = a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for &x in &self.0 {
            write!(f, "{}", char::from(b'a' + x as u8))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeMonoid {
    letters: u32,
}

impl FreeMonoid {
    pub fn new(letters: u32) -> Result<Self> {
        if !(1..=26).contains(&letters) {
            return Err(Error::InvalidConfig("alphabet size must lie in 1..=26".into()));
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> u32 {
        self.letters
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        self.parse_element(text)
    }

    fn top_words(&self, f: &[Word]) -> Result<Vec<Word>> {
        let m = f.iter().map(|w| w.0.len()).max().unwrap_or(0);
        Ok(words(self.letters, m)?.into_iter().map(Word).collect())
    }
}

impl RightLcm for FreeMonoid {
    type Elem = Word;

    fn name(&self) -> String {
        format!("free({})", self.letters)
    }

    fn identity(&self) -> Word {
        Word(Vec::new())
    }

    fn multiply(&self, s: &Word, t: &Word) -> Word {
        let mut v = s.0.clone();
        v.extend_from_slice(&t.0);
        Word(v)
    }

    fn right_lcm(&self, s: &Word, t: &Word) -> LcmOutcome<Word> {
        if s.0.starts_with(&t.0) {
            LcmOutcome::Meet(s.clone())
        } else if t.0.starts_with(&s.0) {
            LcmOutcome::Meet(t.clone())
        } else {
            LcmOutcome::Disjoint
        }
    }

    fn left_divide(&self, s: &Word, x: &Word) -> Option<Word> {
        x.0.strip_prefix(s.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    fn length(&self, s: &Word) -> usize {
        s.0.len()
    }

    fn enumerate(&self, max_len: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        for m in 0..=max_len {
            out.extend(words(self.letters, m)?.into_iter().map(Word));
        }
        Ok(out)
    }

    fn is_unit(&self, s: &Word) -> bool {
        s.0.is_empty()
    }

    fn has_trivial_units(&self) -> bool {
        true
    }

    fn disjointness_criterion(&self, s: &Word, t: &Word) -> bool {
        !(s.0.starts_with(&t.0) || t.0.starts_with(&s.0))
    }

    fn generators(&self) -> Vec<Word> {
        (0..self.letters).map(|x| Word(vec![x])).collect()
    }

    fn factor_generators(&self, s: &Word) -> Vec<usize> {
        s.0.iter().map(|&x| x as usize).collect()
    }
}

impl CoreStructure for FreeMonoid {
    fn is_core(&self, s: &Word) -> bool {
        self.letters == 1 || s.0.is_empty()
    }

    fn is_core_irreducible(&self, s: &Word) -> bool {
        !self.is_core(s)
    }

    fn core_factorize(&self, s: &Word) -> CoreFactorization<Word> {
        if self.is_core(s) {
            CoreFactorization {
                irreducible_part: self.identity(),
                core_part: s.clone(),
            }
        } else {
            CoreFactorization {
                irreducible_part: s.clone(),
                core_part: self.identity(),
            }
        }
    }

    fn foundation_criterion(&self, f: &[Word]) -> Result<FoundationCheck<Word>> {
        for w in self.top_words(f)? {
            if !f.iter().any(|s| w.0.starts_with(&s.0)) {
                return Ok(FoundationCheck::Uncovered(w));
            }
        }
        Ok(FoundationCheck::Foundation)
    }

    fn elementary_refinement(&self, f: &[Word]) -> Result<Vec<Word>> {
        self.top_words(f)
    }

    fn elementary_sets(&self) -> Result<Vec<Vec<Word>>> {
        if self.letters == 1 {
            return Ok(Vec::new());
        }
        Ok(vec![self.generators()])
    }

    fn zs_internal(&self, s: &Word) -> Result<CoreFactorization<Word>> {
        Ok(self.core_factorize(s))
    }
}

impl Scaled for FreeMonoid {
    fn kms_type(&self) -> KmsType {
        KmsType::C
    }

    fn scale_length(&self, s: &Word) -> usize {
        s.0.len()
    }

    fn scale(&self, s: &Word) -> BigUint {
        BigUint::from(self.letters).pow(s.0.len() as u32)
    }

    fn critical(&self) -> CriticalTemperature {
        CriticalTemperature {
            value: 1.0,
            from_table: true,
            note: None,
        }
    }

    fn class_counts(&self, cutoff: usize) -> Result<Vec<(BigUint, BigUint)>> {
        if self.letters == 1 {
            return Ok(vec![(BigUint::from(1u8), BigUint::from(1u8))]);
        }
        Ok((0..=cutoff as u32)
            .map(|k| {
                let n = BigUint::from(self.letters).pow(k);
                (n.clone(), n)
            })
            .collect())
    }

    fn class_representatives(&self, max_level: usize) -> Result<Vec<Word>> {
        if self.letters == 1 {
            return Ok(vec![self.identity()]);
        }
        self.enumerate(max_level)
    }

    fn zeta_closed_form<F: Float>(&self, beta: F) -> Option<F> {
        let one = F::one();
        if self.letters == 1 {
            return Some(one);
        }
        let k = F::from(self.letters)?;
        Some(one / (one - k.powf(one - beta)))
    }

    fn core_coordinates(&self, s: &Word) -> Option<Vec<i64>> {
        (self.letters == 1 || s.0.is_empty()).then(|| vec![s.0.len() as i64])
    }

    fn torus_dim(&self) -> Option<usize> {
        (self.letters == 1).then_some(1)
    }

    fn minimality(&self) -> Result<MinimalityReport> {
        Ok(MinimalityReport {
            verdict: Verdict::True,
            criterion: "restriction closure of every generator is finite".into(),
            evidence: "trivial group".into(),
        })
    }
}

impl Family for FreeMonoid {
    fn tag(&self) -> &'static str {
        "free"
    }

    fn parse_element(&self, text: &str) -> Result<Word> {
        if is_empty_word(text) {
            return Ok(self.identity());
        }
        let mut out = Vec::new();
        for (i, c) in text.char_indices() {
            if c.is_whitespace() {
                continue;
            }
            let x = (c as u32).wrapping_sub('a' as u32);
            if !c.is_ascii_lowercase() || x >= self.letters {
                return Err(parse_error(text, i, "letter outside the alphabet"));
            }
            out.push(x);
        }
        Ok(Word(out))
    }
}
