use num_bigint::BigUint;
use num_traits::{Float, One, ToPrimitive};

use super::Scaled;
use crate::error::{Error, Result};

/// Minimal representatives of `S/S_c` up to level `max_len`, identity first.
pub fn class_reps<S: Scaled>(fam: &S, max_len: usize) -> Result<Vec<S::Elem>> {
    fam.class_representatives(max_len)
}

/// Partial sum of `Σ_{s̄ ∈ S/S_c} N_s^{−β}` over levels ≤ `cutoff`.
pub fn zeta<F: Float, S: Scaled>(fam: &S, beta: F, cutoff: usize) -> Result<F> {
    let mut sum = F::zero();
    for (n, count) in fam.class_counts(cutoff)? {
        let n = F::from(n.to_f64().unwrap_or(f64::INFINITY)).expect("float");
        let count = F::from(count.to_f64().unwrap_or(f64::INFINITY)).expect("float");
        sum = sum + count * n.powf(-beta);
    }
    Ok(sum)
}

/// Closed form of ζ; signals divergence at or below the abscissa.
pub fn zeta_closed<F: Float, S: Scaled>(fam: &S, beta: F) -> Result<F> {
    let abscissa = fam.abscissa();
    let b = beta.to_f64().unwrap_or(f64::NAN);
    if !(b > abscissa) {
        return Err(Error::Diverges {
            beta: b,
            beta_c: abscissa,
        });
    }
    fam.zeta_closed_form(beta)
        .ok_or_else(|| Error::Unsupported(format!("no closed form for {}", fam.name())))
}

/// `N_{st} = N_s N_t` for all pairs of length ≤ `bound`, and `N_s = 1` exactly on the core.
pub fn check_scale_multiplicative<S: Scaled>(fam: &S, bound: usize) -> Result<bool> {
    let elems = fam.enumerate(bound)?;
    for s in &elems {
        if fam.scale(s).is_one() != fam.is_core(s) {
            return Ok(false);
        }
        for t in &elems {
            let st: BigUint = fam.scale(&fam.multiply(s, t));
            if st != fam.scale(s) * fam.scale(t) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
