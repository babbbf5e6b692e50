//! `ℤᵈ ⋊_A ℕ` for an integer matrix `A` with `|det A| > 1`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::Family;
use crate::boundary::{CoreFactorization, CoreStructure, FoundationCheck, Verdict};
use crate::error::{check_cap, Error, Result};
use crate::intlat::{
    abs_det, intersection_is_zero, sup_norm, to_bigint, FromBigInt, IntScalar, Matrix,
    ResidueSystem,
};
use crate::kms::{CriticalTemperature, KmsType, MinimalityReport, Scaled};
use crate::sgcore::{LcmOutcome, RightLcm};

/// `(g, n)` with `g ∈ ℤᵈ`, `n ∈ ℕ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixElement<T> {
    g: Vec<T>,
    n: u32,
}

impl<T: IntScalar> MatrixElement<T> {
    pub fn new(g: Vec<T>, n: u32) -> Self {
        Self { g, n }
    }

    pub fn g(&self) -> &[T] {
        &self.g
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

impl<T: IntScalar> Ord for MatrixElement<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.g.cmp(&other.g))
    }
}

impl<T: IntScalar> PartialOrd for MatrixElement<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: fmt::Display> fmt::Display for MatrixElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{\"g\":[")?;
        for (i, x) in self.g.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "],\"n\":{}}}", self.n)
    }
}

/// `ℤᵈ ⋊_A ℕ` with law `(g,m)(h,n) = (g + Aᵐh, m + n)`.
///
/// Powers of `A` and their Smith data are memoized behind locks.
pub struct MatrixFamily<T> {
    a: Matrix<T>,
    det: BigInt,
    powers: RwLock<Vec<Matrix<T>>>,
    residues: RwLock<HashMap<u32, Arc<ResidueSystem<T>>>>,
}

impl<T: IntScalar> Clone for MatrixFamily<T> {
    fn clone(&self) -> Self {
        Self::new(self.a.clone()).expect("already validated")
    }
}

impl<T: IntScalar> fmt::Debug for MatrixFamily<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixFamily").field("a", &self.a).finish()
    }
}

impl<T: IntScalar> Serialize for MatrixFamily<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .a
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let mut st = s.serialize_struct("MatrixFamily", 1)?;
        st.serialize_field("a", &rows)?;
        st.end()
    }
}

impl<T: IntScalar> MatrixFamily<T> {
    pub fn new(a: Matrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NonSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let det = abs_det(&a)?;
        if det.is_one() {
            return Err(Error::InvalidConfig("|det A| must exceed 1".into()));
        }
        let n = a.rows();
        Ok(Self {
            powers: RwLock::new(vec![Matrix::identity(n), a.clone()]),
            residues: RwLock::new(HashMap::new()),
            a,
            det,
        })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn abs_det(&self) -> &BigInt {
        &self.det
    }

    pub fn element(&self, g: Vec<T>, n: u32) -> Result<MatrixElement<T>> {
        if g.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "vector of length {} for dimension {}",
                g.len(),
                self.dim()
            )));
        }
        Ok(MatrixElement { g, n })
    }

    /// `Aⁿ`.
    pub fn power(&self, n: u32) -> Matrix<T> {
        let n = n as usize;
        if let Some(m) = self.powers.read().expect("lock").get(n) {
            return m.clone();
        }
        let mut powers = self.powers.write().expect("lock");
        while powers.len() <= n {
            let next = powers.last().expect("nonempty").mul(&self.a).expect("square");
            powers.push(next);
        }
        powers[n].clone()
    }

    /// Residue system of `ℤᵈ / Aⁿℤᵈ`.
    pub fn residues(&self, n: u32) -> Arc<ResidueSystem<T>> {
        if let Some(r) = self.residues.read().expect("lock").get(&n) {
            return Arc::clone(r);
        }
        let sys = Arc::new(ResidueSystem::new(&self.power(n)).expect("nonsingular power"));
        self.residues
            .write()
            .expect("lock")
            .entry(n)
            .or_insert(sys)
            .clone()
    }

    fn sub(a: &[T], b: &[T]) -> Vec<T> {
        a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
    }

    /// `‖A⁻ᵐ‖_∞` as an exact rational.
    fn inverse_norm(&self, m: u32) -> BigRational {
        let sys = self.residues(m);
        let s = sys.smith();
        let d = s.diagonal();
        let n = self.dim();
        let big = to_bigint::<T>;
        let mut best = BigRational::zero();
        for i in 0..n {
            let mut row = BigRational::zero();
            for j in 0..n {
                let mut entry = BigRational::zero();
                for (k, dk) in d.iter().enumerate() {
                    entry += BigRational::new(big(&s.v_inv[(i, k)]) * big(&s.u_inv[(k, j)]), big(dk));
                }
                row += entry.abs();
            }
            if row > best {
                best = row;
            }
        }
        best
    }

    /// Box radius for oracle cofactors at the given bound.
    fn cofactor_radius(&self, bound: usize) -> usize {
        let two_b = BigRational::from_integer(BigInt::from(2 * bound));
        (0..=bound as u32)
            .map(|m| (self.inverse_norm(m) * &two_b).ceil().to_integer())
            .max()
            .and_then(|r| r.to_usize())
            .unwrap_or(usize::MAX)
    }

    fn boxed(&self, radius: usize, max_n: usize) -> Result<Vec<MatrixElement<T>>> {
        let d = self.dim();
        let side = 2 * radius as u128 + 1;
        check_cap(
            "enumeration size",
            side.saturating_pow(d as u32).saturating_mul(max_n as u128 + 1),
        )?;
        let r = radius as i64;
        let mut vectors = vec![Vec::new()];
        for _ in 0..d {
            vectors = vectors
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (-r..=r).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        let mut out = Vec::with_capacity(vectors.len() * (max_n + 1));
        for n in 0..=max_n as u32 {
            for v in &vectors {
                let g = v.iter().map(|&x| T::from_i64(x).expect("small")).collect();
                out.push(MatrixElement { g, n });
            }
        }
        Ok(out)
    }

    fn transversal_elements(&self, n: u32) -> Result<Vec<MatrixElement<T>>> {
        Ok(self
            .residues(n)
            .members()?
            .into_iter()
            .map(|g| MatrixElement { g, n })
            .collect())
    }
}

impl<T: IntScalar> RightLcm for MatrixFamily<T> {
    type Elem = MatrixElement<T>;

    fn name(&self) -> String {
        format!("matrix{}", self.a)
    }

    fn identity(&self) -> MatrixElement<T> {
        MatrixElement {
            g: vec![T::zero(); self.dim()],
            n: 0,
        }
    }

    fn multiply(&self, s: &MatrixElement<T>, t: &MatrixElement<T>) -> MatrixElement<T> {
        let moved = self.power(s.n).mul_vec(&t.g).expect("dimension");
        MatrixElement {
            g: s.g.iter().zip(moved).map(|(x, y)| x.clone() + y).collect(),
            n: s.n + t.n,
        }
    }

    fn right_lcm(&self, s: &MatrixElement<T>, t: &MatrixElement<T>) -> LcmOutcome<MatrixElement<T>> {
        let (low, high) = if s.n <= t.n { (s, t) } else { (t, s) };
        if self.residues(low.n).contains(&Self::sub(&high.g, &low.g)) {
            LcmOutcome::Meet(self.canonical_generator(high))
        } else {
            LcmOutcome::Disjoint
        }
    }

    fn left_divide(&self, s: &MatrixElement<T>, x: &MatrixElement<T>) -> Option<MatrixElement<T>> {
        if x.n < s.n {
            return None;
        }
        let k = self.residues(s.n).solve(&Self::sub(&x.g, &s.g))?;
        Some(MatrixElement { g: k, n: x.n - s.n })
    }

    fn length(&self, s: &MatrixElement<T>) -> usize {
        sup_norm(&s.g)
            .to_usize()
            .unwrap_or(usize::MAX)
            .max(s.n as usize)
    }

    fn enumerate(&self, max_len: usize) -> Result<Vec<MatrixElement<T>>> {
        self.boxed(max_len, max_len)
    }

    fn is_unit(&self, s: &MatrixElement<T>) -> bool {
        s.n == 0
    }

    fn has_trivial_units(&self) -> bool {
        false
    }

    fn canonical_generator(&self, w: &MatrixElement<T>) -> MatrixElement<T> {
        MatrixElement {
            g: self.residues(w.n).reduce(&w.g),
            n: w.n,
        }
    }

    fn disjointness_criterion(&self, s: &MatrixElement<T>, t: &MatrixElement<T>) -> bool {
        let (low, high) = if s.n <= t.n { (s, t) } else { (t, s) };
        !self.residues(low.n).contains(&Self::sub(&high.g, &low.g))
    }

    fn oracle_cofactors(&self, bound: usize) -> Result<Vec<MatrixElement<T>>> {
        self.boxed(self.cofactor_radius(bound), bound)
    }

    fn generators(&self) -> Vec<MatrixElement<T>> {
        let d = self.dim();
        let mut gens = Vec::with_capacity(2 * d + 1);
        for i in 0..d {
            for sign in [1i64, -1] {
                let mut g = vec![T::zero(); d];
                g[i] = T::from_i64(sign).expect("unit");
                gens.push(MatrixElement { g, n: 0 });
            }
        }
        gens.push(MatrixElement {
            g: vec![T::zero(); d],
            n: 1,
        });
        gens
    }

    fn factor_generators(&self, s: &MatrixElement<T>) -> Vec<usize> {
        // (g, n) = (g, 0)·(0, 1)ⁿ
        let mut word = Vec::new();
        for (i, x) in s.g.iter().enumerate() {
            let idx = if x.is_negative() { 2 * i + 1 } else { 2 * i };
            let reps = x.abs().to_usize().expect("entry fits in usize");
            word.extend(std::iter::repeat(idx).take(reps));
        }
        word.extend(std::iter::repeat(2 * self.dim()).take(s.n as usize));
        word
    }
}

impl<T: IntScalar> CoreStructure for MatrixFamily<T> {
    fn is_core(&self, s: &MatrixElement<T>) -> bool {
        s.n == 0
    }

    fn is_core_irreducible(&self, s: &MatrixElement<T>) -> bool {
        s.n >= 1
    }

    fn core_factorize(&self, s: &MatrixElement<T>) -> CoreFactorization<MatrixElement<T>> {
        if s.n == 0 {
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

    fn foundation_criterion(
        &self,
        f: &[MatrixElement<T>],
    ) -> Result<FoundationCheck<MatrixElement<T>>> {
        let top = f.iter().map(|x| x.n).max().unwrap_or(0);
        if f.iter().any(|x| x.n == 0) {
            return Ok(FoundationCheck::Foundation);
        }
        for r in self.transversal_elements(top)? {
            let covered = f
                .iter()
                .any(|x| self.residues(x.n).contains(&Self::sub(&r.g, &x.g)));
            if !covered {
                return Ok(FoundationCheck::Uncovered(r));
            }
        }
        Ok(FoundationCheck::Foundation)
    }

    fn elementary_refinement(&self, f: &[MatrixElement<T>]) -> Result<Vec<MatrixElement<T>>> {
        let top = f.iter().map(|x| x.n).max().unwrap_or(0);
        self.transversal_elements(top)
    }

    fn elementary_sets(&self) -> Result<Vec<Vec<MatrixElement<T>>>> {
        Ok(vec![self.transversal_elements(1)?])
    }
}

impl<T: IntScalar> Scaled for MatrixFamily<T> {
    fn kms_type(&self) -> KmsType {
        KmsType::B
    }

    fn scale_length(&self, s: &MatrixElement<T>) -> usize {
        s.n as usize
    }

    fn scale(&self, s: &MatrixElement<T>) -> BigUint {
        self.det.magnitude().pow(s.n)
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
            .map(|n| {
                let k = self.det.magnitude().pow(n);
                (k.clone(), k)
            })
            .collect())
    }

    fn class_representatives(&self, max_level: usize) -> Result<Vec<MatrixElement<T>>> {
        let mut out = Vec::new();
        for n in 0..=max_level as u32 {
            out.extend(self.transversal_elements(n)?);
        }
        Ok(out)
    }

    fn zeta_closed_form<F: Float>(&self, beta: F) -> Option<F> {
        let one = F::one();
        let k = F::from(self.det.to_f64()?)?;
        Some(one / (one - k.powf(one - beta)))
    }

    fn core_coordinates(&self, s: &MatrixElement<T>) -> Option<Vec<i64>> {
        if s.n != 0 {
            return None;
        }
        s.g.iter().map(ToPrimitive::to_i64).collect()
    }

    fn torus_dim(&self) -> Option<usize> {
        Some(self.dim())
    }

    fn minimality(&self) -> Result<MinimalityReport> {
        let r = intersection_is_zero(&self.a)?;
        let evidence = match (&r.unit_factor, &r.witness) {
            (Some(q), Some(w)) => format!(
                "characteristic polynomial {} has unit factor {}; vector [{}] lies in every A^n Z^d",
                r.charpoly,
                q,
                w.join(",")
            ),
            _ => format!(
                "characteristic polynomial {} has no monic factor with constant term +-1; \
                 {} nonzero probe vectors of norm <= {} survive {} steps",
                r.charpoly, r.probe_survivors, r.probe_box, r.probe_steps
            ),
        };
        Ok(MinimalityReport {
            verdict: Verdict::from_bool(r.is_zero),
            criterion: "intersection of A^n Z^d over n is {0}".into(),
            evidence,
        })
    }
}

impl<T: IntScalar> Family for MatrixFamily<T> {
    fn tag(&self) -> &'static str {
        "matrix"
    }

    /// `{"g":[…],"n":k}`.
    fn parse_element(&self, text: &str) -> Result<MatrixElement<T>> {
        let (g, n) = super::text::parse_matrix_element(text)?;
        let g = g
            .iter()
            .map(|x| {
                T::from_bigint(x).ok_or_else(|| Error::Parse {
                    position: 0,
                    message: format!("entry {x} out of range"),
                })
            })
            .collect::<Result<Vec<T>>>()?;
        self.element(g, n)
    }
}
