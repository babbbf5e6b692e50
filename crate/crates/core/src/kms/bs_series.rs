//! Series parametrization of the KMS states of `BS(c,d)⁺` on the core `⟨b⟩`.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Float;
use serde::Serialize;

use super::{Scaled, TraceSpec};
use crate::error::{Error, Result};
use crate::families::Bs;

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_TERMS: usize = 100_000;

/// `φ(n) = ζ(β)·ψ_{β,τ}(v_{bⁿ})` with how the series ended.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SeriesTerms<F> {
    pub re: F,
    pub im: F,
    pub terms: usize,
    /// Ended because the divisibility condition failed, not by truncation.
    pub exact: bool,
}

impl<F: Float> SeriesTerms<F> {
    pub fn value(&self) -> Complex<F> {
        Complex::new(self.re, self.im)
    }
}

fn check_domain<F: Float>(bs: &Bs, beta: F) -> Result<()> {
    if bs.c() == 1 && bs.d() == 1 {
        return Err(Error::Unsupported("series needs cd > 1".into()));
    }
    let b = beta.to_f64().unwrap_or(f64::NAN);
    if !(b > 1.0) {
        return Err(Error::Diverges { beta: b, beta_c: 1.0 });
    }
    Ok(())
}

fn series<F: Float>(bs: &Bs, n: u64, beta: F, tau: &TraceSpec, tol: F, sign: i64) -> Result<SeriesTerms<F>> {
    check_domain(bs, beta)?;
    let (c, d) = (u128::from(bs.c()), u128::from(bs.d()));
    let df = F::from(bs.d()).expect("float");
    let ratio = df.powf(F::one() - beta);
    let moment = |m: u128| -> Result<Complex<F>> {
        let m = i64::try_from(m).map_err(|_| Error::CapExceeded {
            what: "series exponent",
            requested: m,
            cap: i64::MAX as u128,
        })?;
        tau.moment(&[sign * m])
    };
    let mut m = u128::from(n);
    let mut acc = moment(m)?;
    let mut weight = F::one();
    let mut terms = 1;
    let exact = loop {
        if m % d != 0 {
            break true;
        }
        weight = weight * ratio;
        if weight < tol {
            break false;
        }
        if terms >= MAX_TERMS {
            return Err(Error::CapExceeded {
                what: "series terms",
                requested: terms as u128 + 1,
                cap: MAX_TERMS as u128,
            });
        }
        m = (m / d).checked_mul(c).ok_or_else(|| Error::CapExceeded {
            what: "series exponent",
            requested: u128::MAX,
            cap: i64::MAX as u128,
        })?;
        acc = acc + moment(m)? * weight;
        terms += 1;
    };
    Ok(SeriesTerms {
        re: acc.re,
        im: acc.im,
        terms,
        exact,
    })
}

/// `φ(n) = τ(v_{bⁿ}) + Σ_{k≥1} d^{k(1−β)} τ(v_{b^{n(c/d)^k}})`, the sum running while
/// `n(c/d)^j ∈ dℕ` for all `j < k`.
pub fn phi_series_bs<F: Float>(bs: &Bs, n: u64, beta: F, tau: &TraceSpec, tol: F) -> Result<SeriesTerms<F>> {
    series(bs, n, beta, tau, tol, 1)
}

/// `ψ_{β,τ}(v_{bⁿ}) = φ(n)/ζ(β)`.
pub fn psi_series_bs<F: Float>(bs: &Bs, n: u64, beta: F, tau: &TraceSpec, tol: F) -> Result<Complex<F>> {
    let phi = phi_series_bs(bs, n, beta, tau, tol)?.value();
    Ok(phi / zeta_bs(bs, beta)?)
}

/// `ψ_{β,τ}(v_{bⁿ}*)`.
pub fn psi_series_bs_adjoint<F: Float>(bs: &Bs, n: u64, beta: F, tau: &TraceSpec, tol: F) -> Result<Complex<F>> {
    let phi = series(bs, n, beta, tau, tol, -1)?.value();
    Ok(phi / zeta_bs(bs, beta)?)
}

fn zeta_bs<F: Float>(bs: &Bs, beta: F) -> Result<F> {
    check_domain(bs, beta)?;
    Ok(bs.zeta_closed_form(beta).expect("closed form"))
}

/// Inverts the series: `τ(v_{bⁿ}) = φ(n) − χ_{dℕ}(n)·d^{1−β}·φ(nc/d)`.
pub fn recover_trace<F: Float>(
    bs: &Bs,
    phi: &BTreeMap<u64, Complex<F>>,
    beta: F,
) -> Result<BTreeMap<u64, Complex<F>>> {
    check_domain(bs, beta)?;
    let (c, d) = (u64::from(bs.c()), u64::from(bs.d()));
    let ratio = F::from(d).expect("float").powf(F::one() - beta);
    let mut out = BTreeMap::new();
    for (&n, &v) in phi {
        let t = if n % d == 0 {
            let next = n / d * c;
            let w = phi.get(&next).ok_or(Error::RangeNotClosed(next))?;
            v - *w * ratio
        } else {
            v
        };
        out.insert(n, t);
    }
    Ok(out)
}
