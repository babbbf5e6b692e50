mod commands;
mod family;
mod kms;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::Suite;
use family::{inline_or_file, FamilyArgs};
use rlcm::boundary::{hom_check, MonoidMap};
use rlcm::ktheory::{g_p, k_boundary_bs, k_boundary_nxp, k_cuntz, k_torsion_subalgebra};
use rlcm::{Error, FreeMonoid, Result};

/// Default cap on every enumeration bound.
const MAX_BOUND: usize = 10;
/// Overrides [`MAX_BOUND`].
const CAP_ENV: &str = "RLCM_MAX_BOUND";

#[derive(Parser, Debug)]
#[command(name = "rlcm", version, about = "Right LCM semigroups: normal forms, boundary data, KMS evaluators and K-theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Core/irreducible table, elementary foundation sets, diagram facts, minimality.
    Analyze {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Right LCM of two elements.
    Lcm {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// Core data of one element.
    Core {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Foundation, accuracy and properness flags of a finite set.
    Foundation {
        #[command(flatten)]
        family: FamilyArgs,
        /// JSON array of elements or {"family": .., "elements": [..]}, inline or as a file path.
        #[arg(long)]
        set: String,
    },
    /// CSV sweeps of the KMS and ground-state evaluators.
    Kms(kms::KmsArgs),
    /// K-groups of boundary quotients and related algebras.
    Ktheory {
        #[command(subcommand)]
        query: KQuery,
    },
    /// Runs a property suite; exits nonzero when any case fails.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Bounded counterexample searches.
    Search {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        /// Also check the inclusion of {a}* into {a,b}*.
        #[arg(long)]
        hom_example: bool,
    },
}

#[derive(Subcommand, Debug)]
enum KQuery {
    /// BS(c,d)⁺.
    Bs {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        d: u64,
    },
    /// N ⋊ P.
    Nxp {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Torsion subalgebra of N ⋊ P.
    Torsion {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Cuntz algebra O_p.
    Cuntz {
        #[arg(long)]
        p: u64,
    },
    /// gcd{p - 1}.
    Gp {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
}

fn bound_cap() -> Result<usize> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("{CAP_ENV}={v} is not a nonnegative integer"))),
        Err(_) => Ok(MAX_BOUND),
    }
}

fn check_bound(bound: usize) -> Result<usize> {
    let cap = bound_cap()?;
    if bound > cap {
        return Err(Error::CapExceeded {
            what: "bound",
            requested: bound as u128,
            cap: cap as u128,
        });
    }
    Ok(bound)
}

fn ktheory(query: &KQuery) -> Result<Value> {
    Ok(match query {
        KQuery::Bs { c, d } => serde_json::to_value(k_boundary_bs(*c, *d)?),
        KQuery::Nxp { primes } => serde_json::to_value(k_boundary_nxp(primes)?),
        KQuery::Torsion { primes } => serde_json::to_value(k_torsion_subalgebra(primes)?),
        KQuery::Cuntz { p } => serde_json::to_value(k_cuntz(*p)?),
        KQuery::Gp { primes } => Ok(json!({"g_P": g_p(primes)?})),
    }
    .expect("serializable"))
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum SetJson {
    Bare(Vec<String>),
    /// `{"family": .., "elements": [..]}`; the family comes from the flags.
    Tagged { elements: Vec<String> },
}

fn parse_set(text: &str) -> Result<Vec<String>> {
    match serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("set: {e}")))? {
        SetJson::Bare(v) | SetJson::Tagged { elements: v } => Ok(v),
    }
}

/// Output text and whether the run succeeded.
fn run(cli: &Cli) -> Result<(String, bool)> {
    let one = |v: Value| Ok((v.to_string(), true));
    match &cli.command {
        Command::Analyze { family, bound } => {
            let bound = check_bound(*bound)?;
            one(with_family!(&family.resolve()?, f => commands::analyze(f, bound)?))
        }
        Command::Lcm { family, s, t } => one(with_family!(&family.resolve()?, f => commands::lcm(f, s, t)?)),
        Command::Core { family, s, bound } => {
            let bound = check_bound(*bound)?;
            one(with_family!(&family.resolve()?, f => commands::core(f, s, bound)?))
        }
        Command::Foundation { family, set } => {
            let set = parse_set(&inline_or_file(set)?)?;
            one(with_family!(&family.resolve()?, f => commands::foundation(f, &set)?))
        }
        Command::Kms(args) => Ok((kms::run(args)?, true)),
        Command::Ktheory { query } => one(ktheory(query)?),
        Command::Verify {
            family,
            suite,
            seed,
            bound,
        } => {
            let bound = check_bound(*bound)?;
            let mut results = Vec::new();
            for fam in family.resolve_all()? {
                for s in suite.expand() {
                    results.push(with_family!(&fam, f => commands::run_suite(f, s, bound, *seed)?));
                }
            }
            let passed = results.iter().all(|r| r["passed"] == json!(true));
            let out = json!({"seed": seed, "bound": bound, "passed": passed, "results": results});
            Ok((out.to_string(), passed))
        }
        Command::Search {
            family,
            seed,
            bound,
            hom_example,
        } => {
            let bound = check_bound(*bound)?;
            let mut reports = Vec::new();
            for fam in family.resolve_all()? {
                reports.push(with_family!(&fam, f => commands::search(f, bound, *seed)?));
            }
            let mut out = json!({"seed": seed, "searches": reports});
            if *hom_example {
                let (s, t) = (FreeMonoid::new(1)?, FreeMonoid::new(2)?);
                let phi = MonoidMap::new(&s, &t, vec![t.word("a")?])?;
                out["hom_example"] = serde_json::to_value(hom_check(&phi, bound, *seed)?).expect("serializable");
            }
            one(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            println!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
