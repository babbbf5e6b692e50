use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IntScalar, Matrix};
use crate::error::{Error, Result};

/// Integer polynomial, coefficients stored lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Division by a monic polynomial; returns (quotient, remainder).
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree();
        if self.degree() < dd {
            return (Self::new(vec![BigInt::zero()]), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd.max(1));
        (Self::new(quot), Self::new(rem))
    }

    /// Euclidean norm bound ⌈‖p‖₂⌉, used for factor coefficient bounds.
    fn l2_ceil(&self) -> BigInt {
        let sq: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let r = sq.sqrt();
        if &r * &r == sq {
            r
        } else {
            r + 1
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(self.is_zero() && k == 0) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Characteristic polynomial det(xI − A), by Faddeev–LeVerrier with exact division.
pub fn charpoly<T: IntScalar>(a: &Matrix<T>) -> Result<IntPoly> {
    a.require_square()?;
    let n = a.rows();
    let a: Matrix<BigInt> = a.convert();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = Matrix::<BigInt>::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = a.mul(&m)?;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        m = next;
        let t = a.mul(&m)?.trace();
        let kk = BigInt::from(k);
        debug_assert!(t.is_multiple_of(&kk));
        coeffs[n - k] = -(t / kk);
    }
    Ok(IntPoly::new(coeffs))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let limit = n.sqrt();
    let mut d = BigInt::one();
    while d <= limit {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

/// Degree cap for the bounded factor search.
pub const MAX_FACTOR_SEARCH_DEGREE: usize = 8;

/// All monic integer divisors of `p` with degree in `1..=max_deg`.
///
/// Constant terms are restricted to divisors of p(0) (any value within the
/// coefficient bound when p(0) = 0); remaining coefficients range over a
/// Mignotte-style bound.
pub fn monic_factors_up_to(p: &IntPoly, max_deg: usize) -> Result<Vec<IntPoly>> {
    if !p.is_monic() {
        return Err(Error::InvalidConfig(format!("polynomial {p} is not monic")));
    }
    if p.degree() > MAX_FACTOR_SEARCH_DEGREE {
        return Err(Error::CapExceeded {
            what: "factor search degree",
            requested: p.degree() as u128,
            cap: MAX_FACTOR_SEARCH_DEGREE as u128,
        });
    }
    let norm = p.l2_ceil();
    let mut found = Vec::new();
    for k in 1..=max_deg.min(p.degree()) {
        // |coeff_i| ≤ C(k, i)·‖p‖₂
        let bounds: Vec<BigInt> = (0..k).map(|i| binom(k, i) * &norm).collect();
        let constants: Vec<BigInt> = if p.constant().is_zero() {
            range(&bounds[0])
        } else {
            divisors(p.constant())
                .into_iter()
                .flat_map(|d| [d.clone(), -d])
                .collect()
        };
        let mut cur = vec![BigInt::zero(); k + 1];
        cur[k] = BigInt::one();
        for c0 in &constants {
            cur[0] = c0.clone();
            search_rest(p, &bounds, 1, &mut cur, &mut found);
        }
    }
    Ok(found)
}

fn search_rest(
    p: &IntPoly,
    bounds: &[BigInt],
    idx: usize,
    cur: &mut Vec<BigInt>,
    found: &mut Vec<IntPoly>,
) {
    if idx == bounds.len() {
        let q = IntPoly::new(cur.clone());
        if p.div_rem_monic(&q).1.is_zero() {
            found.push(q);
        }
        return;
    }
    for v in range(&bounds[idx]) {
        cur[idx] = v;
        search_rest(p, bounds, idx + 1, cur, found);
    }
}

fn range(bound: &BigInt) -> Vec<BigInt> {
    let b = bound.to_i64().expect("coefficient bound fits in i64");
    (-b..=b).map(BigInt::from).collect()
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// A monic integer factor of `p` with constant term ±1, if one exists.
///
/// Checks `p` itself, ±1 roots, then all monic factors up to half the degree
/// together with their cofactors.
pub fn unimodular_factor(p: &IntPoly) -> Result<Option<IntPoly>> {
    if !p.is_monic() {
        return Err(Error::InvalidConfig(format!("polynomial {p} is not monic")));
    }
    if p.degree() == 0 {
        return Ok(None);
    }
    if p.constant().abs().is_one() {
        return Ok(Some(p.clone()));
    }
    for r in [1i64, -1] {
        if p.eval(&BigInt::from(r)).is_zero() {
            return Ok(Some(IntPoly::from_i64(&[-r, 1])));
        }
    }
    for q in monic_factors_up_to(p, p.degree() / 2)? {
        if q.constant().abs().is_one() {
            return Ok(Some(q));
        }
        let (h, _) = p.div_rem_monic(&q);
        if h.constant().abs().is_one() {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// True iff some monic integer factor of `p` has constant coefficient ±1.
pub fn has_unimodular_factor(p: &IntPoly) -> Result<bool> {
    Ok(unimodular_factor(p)?.is_some())
}
