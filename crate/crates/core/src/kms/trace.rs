use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the torus (angles as fractions of a full turn) with its mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub angle: Vec<BigRational>,
    pub weight: BigRational,
}

/// A tracial state on the core's group algebra: either a finitely atomic
/// probability measure on a torus, or the canonical trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceSpec {
    Atomic { dim: usize, atoms: Vec<Atom> },
    Canonical,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AngleJson {
    One(String),
    Many(Vec<String>),
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    angle: AngleJson,
    weight: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    atoms: Option<Vec<AtomJson>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    canonical: bool,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidTrace(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn show_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl TraceSpec {
    pub fn new(dim: usize, atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidTrace("no atoms".into()));
        }
        let mut total = BigRational::zero();
        for a in &atoms {
            if a.angle.len() != dim {
                return Err(Error::InvalidTrace(format!(
                    "atom of dimension {} on a torus of dimension {dim}",
                    a.angle.len()
                )));
            }
            if a.weight.is_negative() {
                return Err(Error::InvalidTrace("negative weight".into()));
            }
            total += &a.weight;
        }
        if !total.is_one() {
            return Err(Error::InvalidTrace(format!(
                "weights sum to {}",
                show_rational(&total)
            )));
        }
        Ok(TraceSpec::Atomic { dim, atoms })
    }

    /// Point mass at the given angles.
    pub fn point_mass(angle: &[(i64, i64)]) -> Result<Self> {
        let angle = angle
            .iter()
            .map(|&(p, q)| {
                if q == 0 {
                    Err(Error::InvalidTrace("zero denominator".into()))
                } else {
                    Ok(BigRational::new(p.into(), q.into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            angle.len(),
            vec![Atom {
                angle,
                weight: BigRational::one(),
            }],
        )
    }

    /// Equal masses at one-dimensional angles `p/q`.
    pub fn uniform(angles: &[(i64, i64)]) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::InvalidTrace("no atoms".into()));
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(angles.len()));
        let atoms = angles
            .iter()
            .map(|&(p, q)| {
                if q == 0 {
                    return Err(Error::InvalidTrace("zero denominator".into()));
                }
                Ok(Atom {
                    angle: vec![BigRational::new(p.into(), q.into())],
                    weight: w.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(1, atoms)
    }

    /// `{"atoms":[{"angle":"p/q","weight":"r/s"},…]}` or `{"canonical":true}`;
    /// higher-dimensional angles are arrays of strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TraceJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidTrace(e.to_string()))?;
        match (raw.atoms, raw.canonical) {
            (None, true) => Ok(TraceSpec::Canonical),
            (Some(atoms), false) => {
                let mut out = Vec::with_capacity(atoms.len());
                for a in atoms {
                    let angle = match a.angle {
                        AngleJson::One(s) => vec![parse_rational(&s)?],
                        AngleJson::Many(v) => v.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
                    };
                    out.push(Atom {
                        angle,
                        weight: parse_rational(&a.weight)?,
                    });
                }
                let dim = out.first().map_or(0, |a| a.angle.len());
                Self::new(dim, out)
            }
            _ => Err(Error::InvalidTrace(
                "expected exactly one of \"atoms\" and \"canonical\"".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        let raw = match self {
            TraceSpec::Canonical => TraceJson {
                atoms: None,
                canonical: true,
            },
            TraceSpec::Atomic { dim, atoms } => TraceJson {
                atoms: Some(
                    atoms
                        .iter()
                        .map(|a| AtomJson {
                            angle: if *dim == 1 {
                                AngleJson::One(show_rational(&a.angle[0]))
                            } else {
                                AngleJson::Many(a.angle.iter().map(show_rational).collect())
                            },
                            weight: show_rational(&a.weight),
                        })
                        .collect(),
                ),
                canonical: false,
            },
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    /// Torus dimension; `None` for the canonical trace.
    pub fn dim(&self) -> Option<usize> {
        match self {
            TraceSpec::Atomic { dim, .. } => Some(*dim),
            TraceSpec::Canonical => None,
        }
    }

    /// Fourier coefficient at `k`: `Σ w·exp(2πi⟨θ,k⟩)`, or `δ_{k,0}` for the
    /// canonical trace. Phases are reduced mod 1 exactly before floating.
    pub fn moment<F: Float>(&self, k: &[i64]) -> Result<Complex<F>> {
        match self {
            TraceSpec::Canonical => Ok(if k.iter().all(|&x| x == 0) {
                Complex::new(F::one(), F::zero())
            } else {
                Complex::new(F::zero(), F::zero())
            }),
            TraceSpec::Atomic { dim, atoms } => {
                if k.len() != *dim {
                    return Err(Error::InvalidTrace(format!(
                        "moment of dimension {} for a trace on a torus of dimension {dim}",
                        k.len()
                    )));
                }
                let tau = F::from(std::f64::consts::TAU).expect("float");
                let mut acc = Complex::new(F::zero(), F::zero());
                for a in atoms {
                    let mut phase = BigRational::zero();
                    for (t, &x) in a.angle.iter().zip(k) {
                        phase += t * BigRational::from_integer(x.into());
                    }
                    let frac = BigRational::new(
                        phase.numer().mod_floor(phase.denom()),
                        phase.denom().clone(),
                    );
                    let f = F::from(frac.to_f64().expect("finite")).expect("float");
                    let w = F::from(a.weight.to_f64().expect("finite")).expect("float");
                    acc = acc + Complex::from_polar(w, tau * f);
                }
                Ok(acc)
            }
        }
    }
}
