use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rlcm::boundary::{
    accurate_refine, check_complement_identity, check_product_biconditionals, check_terminating,
    core_translates_accurate, core_witness, diagram_report, foundation_pool, search_proper_shifts,
    shift_scan, Diagram, FoundationSet,
};
use rlcm::families::{ore_degeneracies, Family};
use rlcm::kms::check_scale_multiplicative;
use rlcm::sgcore::{
    check_oracle_agreement, find_associativity_violation, find_left_cancellation_violation,
    lcm_axiom_holds,
};
use rlcm::{Error, LcmOutcome, Result};

pub trait Cli: Family + Diagram {}
impl<F: Family + Diagram> Cli for F {}

fn strings<E: ToString>(v: &[E]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn element_row<F: Cli>(fam: &F, s: &F::Elem) -> Value {
    let f = fam.core_factorize(s);
    json!({
        "element": s.to_string(),
        "core": fam.is_core(s),
        "core_irreducible": fam.is_core_irreducible(s),
        "irreducible_part": f.irreducible_part.to_string(),
        "core_part": f.core_part.to_string(),
        "scale": fam.scale(s).to_string(),
    })
}

pub fn analyze<F: Cli>(fam: &F, bound: usize) -> Result<Value> {
    let elements: Vec<Value> = fam.enumerate(bound)?.iter().map(|s| element_row(fam, s)).collect();
    let diagram = diagram_report(fam);
    let citations: BTreeSet<&str> = diagram.facts.iter().map(|f| f.citation.as_str()).collect();
    let elementary: Vec<Vec<String>> = fam.elementary_sets()?.iter().map(|f| strings(f)).collect();
    Ok(json!({
        "family": fam.name(),
        "kms_type": fam.kms_type().label(),
        "critical": fam.critical(),
        "minimality": fam.minimality()?,
        "elements": elements,
        "elementary_sets": elementary,
        "diagram": diagram,
        "degeneracies": ore_degeneracies(fam, bound.min(3))?,
        "citations": citations,
    }))
}

pub fn lcm<F: Cli>(fam: &F, s: &str, t: &str) -> Result<Value> {
    let (s, t) = (fam.parse_element(s)?, fam.parse_element(t)?);
    Ok(match fam.right_lcm(&s, &t) {
        LcmOutcome::Disjoint => json!({"result": "disjoint"}),
        LcmOutcome::Meet(w) => json!({"result": "meet", "lcm": w.to_string()}),
    })
}

pub fn core<F: Cli>(fam: &F, s: &str, bound: usize) -> Result<Value> {
    let s = fam.parse_element(s)?;
    let mut row = element_row(fam, &s);
    row["disjoint_witness"] = match core_witness(fam, &s, bound)? {
        Some(t) => json!(t.to_string()),
        None => Value::Null,
    };
    Ok(row)
}

pub fn foundation<F: Cli>(fam: &F, set: &[String]) -> Result<Value> {
    let f: Vec<F::Elem> = set.iter().map(|s| fam.parse_element(s)).collect::<Result<_>>()?;
    let report = FoundationSet::evaluate(fam, &f)?;
    let refinement = if report.is_foundation.holds() {
        json!(strings(&accurate_refine(fam, &f)?))
    } else {
        Value::Null
    };
    let mut out = serde_json::to_value(&report).expect("serializable");
    out["family"] = json!(fam.name());
    out["accurate_refinement"] = refinement;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Oracle,
    /// Products of foundation sets; `lemma22` is accepted as an alias.
    #[value(alias = "lemma22")]
    Product,
    Complement,
    Factorization,
    Terminating,
    Scale,
    Axioms,
    All,
}

impl Suite {
    const EACH: [Suite; 7] = [
        Suite::Oracle,
        Suite::Product,
        Suite::Complement,
        Suite::Factorization,
        Suite::Terminating,
        Suite::Scale,
        Suite::Axioms,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Product => "product",
            Suite::Complement => "complement",
            Suite::Factorization => "factorization",
            Suite::Terminating => "terminating",
            Suite::Scale => "scale",
            Suite::Axioms => "axioms",
            Suite::All => "all",
        }
    }

    pub fn expand(self) -> Vec<Suite> {
        if self == Suite::All {
            Self::EACH.to_vec()
        } else {
            vec![self]
        }
    }
}

fn complement_pairs<F: Cli>(fam: &F, seed: u64, count: usize) -> Result<Vec<(F::Elem, F::Elem)>> {
    let small = fam.enumerate(3)?;
    let cores: Vec<&F::Elem> = small.iter().filter(|s| fam.is_core(s)).collect();
    let mut pairs: Vec<(F::Elem, F::Elem)> = small
        .iter()
        .filter(|s| fam.is_core_irreducible(s))
        .flat_map(|fi| cores.iter().map(move |fc| (fi.clone(), (*fc).clone())))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.shuffle(&mut rng);
    pairs.truncate(count);
    Ok(pairs)
}

pub fn run_suite<F: Cli>(fam: &F, suite: Suite, bound: usize, seed: u64) -> Result<Value> {
    let (passed, detail) = match suite {
        Suite::Oracle => {
            let r = check_oracle_agreement(fam, bound, bound + 3)?;
            (r.passed(), serde_json::to_value(&r).expect("serializable"))
        }
        Suite::Product => {
            let pool: Vec<Vec<F::Elem>> = foundation_pool(fam, seed, bound)?
                .into_iter()
                .map(|e| e.elements)
                .collect();
            let r = check_product_biconditionals(fam, &pool)?;
            let cores: Vec<F::Elem> = fam.enumerate(bound)?.into_iter().filter(|s| fam.is_core(s)).collect();
            let mut translate_failures = Vec::new();
            for s in &cores {
                for f in &pool {
                    if !core_translates_accurate(fam, s, f)? {
                        translate_failures.push(format!("{s} · {{{}}}", strings(f).join(", ")));
                    }
                }
            }
            let ok = r.passed() && translate_failures.is_empty();
            (ok, json!({"products": r, "core_translate_failures": translate_failures}))
        }
        Suite::Complement => {
            let mut failures = Vec::new();
            let pairs = complement_pairs(fam, seed, 10)?;
            for (fi, fc) in &pairs {
                if !check_complement_identity(fam, fi, fc, bound)? {
                    failures.push(format!("({fi}, {fc})"));
                }
            }
            (failures.is_empty(), json!({"pairs": pairs.len(), "failures": failures}))
        }
        Suite::Factorization => {
            let mut failures = Vec::new();
            let elems = fam.enumerate(bound)?;
            for s in &elems {
                let f = fam.core_factorize(s);
                let irr_ok = f.irreducible_part == fam.identity()
                    || fam.is_core_irreducible(&f.irreducible_part);
                if fam.multiply(&f.irreducible_part, &f.core_part) != *s
                    || !irr_ok
                    || !fam.is_core(&f.core_part)
                {
                    failures.push(s.to_string());
                }
            }
            (failures.is_empty(), json!({"elements": elems.len(), "failures": failures}))
        }
        Suite::Terminating => {
            let r = check_terminating(fam, bound)?;
            (r.holds(), serde_json::to_value(&r).expect("serializable"))
        }
        Suite::Scale => {
            let ok = check_scale_multiplicative(fam, bound)?;
            (ok, json!({"multiplicative": ok}))
        }
        Suite::Axioms => {
            let elems = fam.enumerate(bound)?;
            let assoc = find_associativity_violation(fam, &elems).map(|(a, b, c)| format!("({a}, {b}, {c})"));
            let cancel =
                find_left_cancellation_violation(fam, &elems).map(|(a, b, c)| format!("({a}, {b}, {c})"));
            let mut lcm_failures = Vec::new();
            for s in &elems {
                for t in &elems {
                    if !lcm_axiom_holds(fam, s, t, &elems) {
                        lcm_failures.push(format!("({s}, {t})"));
                    }
                }
            }
            let ok = assoc.is_none() && cancel.is_none() && lcm_failures.is_empty();
            (
                ok,
                json!({
                    "associativity_violation": assoc,
                    "left_cancellation_violation": cancel,
                    "lcm_failures": lcm_failures,
                }),
            )
        }
        Suite::All => return Err(Error::InvalidConfig("expand the suite first".into())),
    };
    Ok(json!({
        "suite": suite.name(),
        "family": fam.name(),
        "passed": passed,
        "detail": detail,
    }))
}

pub fn search<F: Cli>(fam: &F, bound: usize, seed: u64) -> Result<Value> {
    let proper = search_proper_shifts(fam, bound, seed)?;
    let scan = shift_scan(fam, bound, seed)?;
    let unrefactored: Vec<_> = scan.iter().filter(|f| f.refactored.is_none()).cloned().collect();
    Ok(json!({
        "family": fam.name(),
        "bound": bound,
        "proper_shift_counterexamples": proper,
        "shift_pairs_scanned": scan.len(),
        "shifts_without_refactoring": unrefactored,
        "termination": check_terminating(fam, bound)?,
    }))
}
