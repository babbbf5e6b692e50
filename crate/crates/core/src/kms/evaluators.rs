use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::{Float, ToPrimitive};

use super::{Scaled, TraceSpec};
use crate::error::{Error, Result};
use crate::sgcore::LcmOutcome;

/// `N_s`.
pub fn scale_n<S: Scaled>(fam: &S, s: &S::Elem) -> BigUint {
    fam.scale(s)
}

fn inv_power<F: Float>(n: &BigUint, beta: F) -> F {
    let n = F::from(n.to_f64().unwrap_or(f64::INFINITY)).expect("float");
    n.powf(-beta)
}

/// `ψ_β(v_s v_t*) = δ_{st} N_s^{−β}`.
pub fn psi_beta<F: Float, S: Scaled>(fam: &S, s: &S::Elem, t: &S::Elem, beta: F) -> F {
    if s == t {
        inv_power(&fam.scale(s), beta)
    } else {
        F::zero()
    }
}

fn core_moment<F: Float, S: Scaled>(
    fam: &S,
    x: &S::Elem,
    y: &S::Elem,
    tau: &TraceSpec,
) -> Result<Complex<F>> {
    let cx = fam.core_coordinates(x).ok_or_else(|| Error::InvalidTrace(format!("{x} is not core")))?;
    let cy = fam.core_coordinates(y).ok_or_else(|| Error::InvalidTrace(format!("{y} is not core")))?;
    if let TraceSpec::Atomic { dim, .. } = tau {
        match fam.torus_dim() {
            Some(d) if d == *dim => {}
            Some(d) => {
                return Err(Error::InvalidTrace(format!(
                    "trace on a torus of dimension {dim}, core has dimension {d}"
                )))
            }
            None => {
                return Err(Error::InvalidTrace(
                    "this family supports only the canonical trace".into(),
                ))
            }
        }
    }
    let diff: Vec<i64> = cy.iter().zip(&cx).map(|(a, b)| a - b).collect();
    tau.moment(&diff)
}

/// `ψ_{β,τ}(v_s v_t*) = N_s^{−β} τ(w_y w_x*)` when `sS ∩ tS = sxS` with
/// `sx = ty`, `x, y` core; zero otherwise.
pub fn psi_beta_tau<F: Float, S: Scaled>(
    fam: &S,
    s: &S::Elem,
    t: &S::Elem,
    beta: F,
    tau: &TraceSpec,
) -> Result<Complex<F>> {
    let zero = Complex::new(F::zero(), F::zero());
    let w = match fam.right_lcm(s, t) {
        LcmOutcome::Disjoint => return Ok(zero),
        LcmOutcome::Meet(w) => w,
    };
    let x = fam.left_divide(s, &w).expect("lcm lies in sS");
    let y = fam.left_divide(t, &w).expect("lcm lies in tS");
    if !(fam.is_core(&x) && fam.is_core(&y)) {
        return Ok(zero);
    }
    Ok(core_moment::<F, S>(fam, &x, &y, tau)? * inv_power(&fam.scale(s), beta))
}

/// `ψ_φ(v_s v_t*) = χ_{S_c}(s) χ_{S_c}(t) φ(w_s w_t*)`.
pub fn ground_state<F: Float, S: Scaled>(
    fam: &S,
    s: &S::Elem,
    t: &S::Elem,
    phi: &TraceSpec,
) -> Result<Complex<F>> {
    if !(fam.is_core(s) && fam.is_core(t)) {
        return Ok(Complex::new(F::zero(), F::zero()));
    }
    core_moment(fam, t, s, phi)
}
