use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::to_bigint;
use super::poly::{charpoly, unimodular_factor, IntPoly};
use super::snf::{snf, SnfResult};
use super::{IntScalar, Matrix};
use crate::error::{check_cap, Error, Result};

/// Solves `A x = b` over the integers. `None` when no integer solution exists.
pub fn solve_integer<T: IntScalar>(a: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    Ok(solve_with(&snf(a), b))
}

/// Solves using a precomputed Smith decomposition of `A`.
pub fn solve_with<T: IntScalar>(s: &SnfResult<T>, b: &[T]) -> Option<Vec<T>> {
    let c = s.u_inv.mul_vec(b).expect("shape checked");
    let diag = s.diagonal();
    let cols = s.v.rows();
    let mut y = vec![T::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        let di = diag.get(i).cloned().unwrap_or_else(T::zero);
        if di.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            if !ci.is_multiple_of(&di) {
                return None;
            }
            y[i] = ci.clone() / di;
        }
    }
    Some(s.v_inv.mul_vec(&y).expect("shape checked"))
}

/// Integer kernel basis of `m`.
pub fn kernel_basis<T: IntScalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let s = snf(m);
    let r = s.rank();
    (r..m.cols())
        .map(|j| (0..m.cols()).map(|i| s.v_inv[(i, j)].clone()).collect())
        .collect()
}

/// Residue system for `ℤᵈ / M ℤᵈ` with `M` nonsingular, backed by its Smith form.
#[derive(Clone, Debug)]
pub struct ResidueSystem<T> {
    snf: SnfResult<T>,
    moduli: Vec<T>,
}

impl<T: IntScalar> ResidueSystem<T> {
    pub fn new(m: &Matrix<T>) -> Result<Self> {
        m.require_square()?;
        let s = snf(m);
        let moduli = s.diagonal();
        if moduli.iter().any(Zero::is_zero) {
            return Err(Error::SingularMatrix);
        }
        Ok(Self { snf: s, moduli })
    }

    /// Index `[ℤᵈ : M ℤᵈ] = |det M|`.
    pub fn index(&self) -> BigInt {
        self.moduli.iter().map(to_bigint).product()
    }

    /// Canonical representative of `h + M ℤᵈ`.
    pub fn reduce(&self, h: &[T]) -> Vec<T> {
        let c = self.snf.u_inv.mul_vec(h).expect("dimension");
        let r: Vec<T> = c
            .iter()
            .zip(&self.moduli)
            .map(|(ci, di)| ci.mod_floor(di))
            .collect();
        self.snf.u.mul_vec(&r).expect("dimension")
    }

    pub fn contains(&self, v: &[T]) -> bool {
        solve_with(&self.snf, v).is_some()
    }

    /// Integer solution of `M x = v`, if any.
    pub fn solve(&self, v: &[T]) -> Option<Vec<T>> {
        solve_with(&self.snf, v)
    }

    pub fn smith(&self) -> &SnfResult<T> {
        &self.snf
    }

    /// All canonical representatives, in lexicographic order of Smith coordinates.
    pub fn members(&self) -> Result<Vec<Vec<T>>> {
        let count = self.index();
        check_cap(
            "transversal size",
            count.to_u128().unwrap_or(u128::MAX),
        )?;
        let d = self.moduli.len();
        let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
        let mut r = vec![T::zero(); d];
        loop {
            out.push(self.snf.u.mul_vec(&r).expect("dimension"));
            let mut i = d;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                r[i] = r[i].clone() + T::one();
                if r[i] < self.moduli[i] {
                    break;
                }
                r[i] = T::zero();
            }
        }
    }
}

/// `|det A|^k` coset representatives of `ℤᵈ / A^k ℤᵈ`.
pub fn transversal<T: IntScalar>(a: &Matrix<T>, k: u32) -> Result<Vec<Vec<T>>> {
    a.require_square()?;
    if a.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    ResidueSystem::new(&a.pow(k)?)?.members()
}

fn eval_poly_at<T: IntScalar>(p: &IntPoly, a: &Matrix<T>) -> Result<Matrix<BigInt>> {
    let a: Matrix<BigInt> = a.convert();
    let n = a.rows();
    let mut acc = Matrix::<BigInt>::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&a)?;
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    Ok(acc)
}

/// Outcome of the `⋂ₙ Aⁿℤᵈ = {0}` decision with its supporting evidence.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub is_zero: bool,
    pub charpoly: String,
    /// Monic factor with constant term ±1, when the intersection is nonzero.
    pub unit_factor: Option<String>,
    /// A nonzero vector lying in every `Aⁿℤᵈ`, when the intersection is nonzero.
    pub witness: Option<Vec<String>>,
    pub probe_box: u32,
    pub probe_steps: u32,
    /// Nonzero vectors of the probe box surviving `probe_steps` steps.
    pub probe_survivors: usize,
    /// Whether the witness itself survives the probe.
    pub witness_survives: bool,
}

/// Default probe parameters.
pub const PROBE_BOX: u32 = 3;
pub const PROBE_STEPS: u32 = 8;

/// Nonzero vectors with sup-norm ≤ `bound` that lie in `A^steps ℤᵈ`.
pub fn probe_survivors<T: IntScalar>(a: &Matrix<T>, bound: u32, steps: u32) -> Result<Vec<Vec<BigInt>>> {
    a.require_square()?;
    let d = a.rows();
    let side = 2 * u128::from(bound) + 1;
    check_cap("probe box", side.pow(d as u32))?;
    let power: Matrix<BigInt> = a.convert::<BigInt>().pow(steps)?;
    let s = snf(&power);
    let b = i64::from(bound);
    let mut v = vec![-b; d];
    let mut out = Vec::new();
    loop {
        if v.iter().any(|&x| x != 0) {
            let bv: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            if solve_with(&s, &bv).is_some() {
                out.push(bv);
            }
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            v[i] += 1;
            if v[i] <= b {
                break;
            }
            v[i] = -b;
        }
    }
}

/// Decides whether `⋂ₙ Aⁿℤᵈ = {0}`.
///
/// The intersection is nonzero exactly when the characteristic polynomial has
/// a monic integer factor `q` with `q(0) = ±1`; then `ker q(A) ∩ ℤᵈ` is a
/// nonzero lattice on which `A` acts invertibly. The decision is
/// cross-checked by a bounded probe.
pub fn intersection_is_zero<T: IntScalar>(a: &Matrix<T>) -> Result<IntersectionReport> {
    intersection_is_zero_with(a, PROBE_BOX, PROBE_STEPS)
}

pub fn intersection_is_zero_with<T: IntScalar>(
    a: &Matrix<T>,
    probe_box: u32,
    probe_steps: u32,
) -> Result<IntersectionReport> {
    a.require_square()?;
    if a.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let p = charpoly(a)?;
    let factor = unimodular_factor(&p)?;
    let survivors = probe_survivors(a, probe_box, probe_steps)?;
    let mut witness = None;
    let mut witness_survives = false;
    if let Some(q) = &factor {
        let qa = eval_poly_at(q, a)?;
        let basis = kernel_basis(&qa);
        if let Some(v) = basis.into_iter().next() {
            let power: Matrix<BigInt> = a.convert::<BigInt>().pow(probe_steps)?;
            witness_survives = solve_integer(&power, &v)?.is_some();
            witness = Some(v);
        }
    }
    Ok(IntersectionReport {
        is_zero: factor.is_none(),
        charpoly: p.to_string(),
        unit_factor: factor.map(|q| q.to_string()),
        witness: witness.map(|w| w.iter().map(ToString::to_string).collect()),
        probe_box,
        probe_steps,
        probe_survivors: survivors.len(),
        witness_survives,
    })
}

/// `|det A|` as a big integer; errors on singular input.
pub fn abs_det<T: IntScalar>(a: &Matrix<T>) -> Result<BigInt> {
    let d = to_bigint(&a.det()?).abs();
    if d.is_zero() {
        Err(Error::SingularMatrix)
    } else {
        Ok(d)
    }
}
