use clap::{Args, ValueEnum};

use crate::commands::Cli;
use crate::family::{inline_or_file, AnyFamily, FamilyArgs};
use crate::with_family;
use rlcm::kms::{
    ground_state, psi_beta, psi_beta_tau, psi_series_bs, psi_series_bs_adjoint, zeta, zeta_closed, TraceSpec,
    DEFAULT_TOL,
};
use rlcm::{Complex64, Error, Result};

const MAX_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// δ_st N_s^-β
    PsiBeta,
    /// N_s^-β τ(w_y w_x*) via the right LCM
    PsiBetaTau,
    /// χ(s)χ(t) φ(w_s w_t*)
    GroundState,
    /// Truncated ζ-sum
    Zeta,
    /// Closed-form ζ
    ZetaClosed,
    /// ψ(v_{b^n}) from the series (BS only)
    Series,
    /// ψ(v_{b^n}*) from the series (BS only)
    SeriesAdjoint,
}

#[derive(Args, Debug)]
pub struct KmsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long, default_value = "")]
    s: String,
    #[arg(long, default_value = "")]
    t: String,
    /// Exponent for the series modes.
    #[arg(long, default_value_t = 0)]
    n: u64,
    #[arg(long, default_value_t = 2.0)]
    beta_min: f64,
    /// Defaults to --beta-min.
    #[arg(long)]
    beta_max: Option<f64>,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    /// TraceSpec JSON or a path to a file holding one; defaults to the point mass at 0.
    #[arg(long)]
    trace: Option<String>,
    #[arg(long, default_value_t = 40)]
    cutoff: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

/// `%.12g`-style rendering.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    } else {
        let m = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{m}e{exp}")
    }
}

fn betas(args: &KmsArgs) -> Result<Vec<f64>> {
    let (lo, hi) = (args.beta_min, args.beta_max.unwrap_or(args.beta_min));
    if args.steps == 0 || args.steps > MAX_STEPS {
        return Err(Error::CapExceeded {
            what: "sweep steps",
            requested: args.steps as u128,
            cap: MAX_STEPS as u128,
        });
    }
    if args.steps == 1 {
        return Ok(vec![lo]);
    }
    let h = (hi - lo) / (args.steps - 1) as f64;
    Ok((0..args.steps).map(|i| lo + h * i as f64).collect())
}

fn evaluate<F: Cli>(fam: &F, args: &KmsArgs, tau: &TraceSpec, beta: f64) -> Result<Complex64> {
    let parse = |text: &str| {
        if text.is_empty() {
            Ok(fam.identity())
        } else {
            fam.parse_element(text)
        }
    };
    let real = |x: f64| Complex64::new(x, 0.0);
    match args.mode {
        Mode::PsiBeta => Ok(real(psi_beta(fam, &parse(&args.s)?, &parse(&args.t)?, beta))),
        Mode::PsiBetaTau => psi_beta_tau(fam, &parse(&args.s)?, &parse(&args.t)?, beta, tau),
        Mode::GroundState => ground_state(fam, &parse(&args.s)?, &parse(&args.t)?, tau),
        Mode::Zeta => Ok(real(zeta(fam, beta, args.cutoff)?)),
        Mode::ZetaClosed => Ok(real(zeta_closed(fam, beta)?)),
        Mode::Series | Mode::SeriesAdjoint => Err(Error::Unsupported(
            "series modes need --family bs".into(),
        )),
    }
}

pub fn run(args: &KmsArgs) -> Result<String> {
    let tau = match &args.trace {
        Some(text) => TraceSpec::from_json(&inline_or_file(text)?)?,
        None => TraceSpec::point_mass(&[(0, 1)])?,
    };
    let fam = args.family.resolve()?;
    let mut out = String::from("beta,re,im\n");
    for beta in betas(args)? {
        let v = match (&fam, args.mode) {
            (AnyFamily::Bs(bs), Mode::Series) => psi_series_bs(bs, args.n, beta, &tau, args.tol)?,
            (AnyFamily::Bs(bs), Mode::SeriesAdjoint) => psi_series_bs_adjoint(bs, args.n, beta, &tau, args.tol)?,
            _ => with_family!(&fam, f => evaluate(f, args, &tau, beta)?),
        };
        out.push_str(&format!("{},{},{}\n", sig12(beta), sig12(v.re), sig12(v.im)));
    }
    out.pop();
    Ok(out)
}
