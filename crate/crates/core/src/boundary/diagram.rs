//! Certified boundary quotient diagram facts, relayed verbatim per family.

use serde::Serialize;

use crate::families::{Bs, FreeMonoid, MatrixFamily, NxP, SelfSimilar};
use crate::intlat::IntScalar;
use crate::sgcore::RightLcm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactKind {
    Degeneracy,
    Relation,
    Structure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramFact {
    pub kind: FactKind,
    pub statement: String,
    pub citation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub family: String,
    pub facts: Vec<DiagramFact>,
}

impl DiagramReport {
    pub fn statements(&self) -> Vec<&str> {
        self.facts.iter().map(|f| f.statement.as_str()).collect()
    }
}

/// Families with an entry in the certified table.
pub trait Diagram: RightLcm {
    fn diagram_facts(&self) -> Vec<DiagramFact>;
}

pub fn diagram_report<D: Diagram>(fam: &D) -> DiagramReport {
    DiagramReport {
        family: fam.name(),
        facts: fam.diagram_facts(),
    }
}

fn fact(kind: FactKind, statement: impl Into<String>, citation: &str) -> DiagramFact {
    DiagramFact {
        kind,
        statement: statement.into(),
        citation: citation.into(),
    }
}

fn right_ore(citation: &str) -> Vec<DiagramFact> {
    vec![
        fact(FactKind::Structure, "S_c = S", citation),
        fact(FactKind::Degeneracy, "C*(S) = Q_p(S)", citation),
        fact(FactKind::Degeneracy, "Q_c(S) = Q(S) ≅ C*(G) for the enveloping group G", citation),
    ]
}

const INTEGRAL: &str = "integral dynamics and subdynamics example";
const BAUMSLAG: &str = "Baumslag-Solitar monoid example";
const ADS: &str = "algebraic dynamical systems example";
const SELF_SIMILAR: &str = "self-similar actions example";
const ORE: &str = "right Ore example";

impl Diagram for NxP {
    fn diagram_facts(&self) -> Vec<DiagramFact> {
        let ps: Vec<String> = self.primes().iter().map(u64::to_string).collect();
        let ps = ps.join(", ");
        vec![
            fact(FactKind::Structure, "S* is trivial", INTEGRAL),
            fact(FactKind::Structure, "S_c = N × {1}", INTEGRAL),
            fact(FactKind::Structure, "S = S_ci¹ ⋈ S_c", INTEGRAL),
            fact(FactKind::Relation, "Q_c(S): v_(1,1) v_(1,1)* = 1", INTEGRAL),
            fact(
                FactKind::Relation,
                format!("Q_p(S): sum_{{0<=k<=p-1}} v_(k,p) v_(k,p)* = 1 for p in {{{ps}}}"),
                INTEGRAL,
            ),
            fact(
                FactKind::Relation,
                format!(
                    "Q(S): v_(1,1) v_(1,1)* = 1 and sum_{{0<=k<=p-1}} v_(k,p) v_(k,p)* = 1 for p in {{{ps}}}"
                ),
                INTEGRAL,
            ),
        ]
    }
}

impl Diagram for Bs {
    fn diagram_facts(&self) -> Vec<DiagramFact> {
        if self.c() == 1 && self.d() == 1 {
            return right_ore(ORE);
        }
        let d = self.d();
        vec![
            fact(FactKind::Structure, "S* is trivial", BAUMSLAG),
            fact(FactKind::Structure, "S_c = <b> ≅ N", BAUMSLAG),
            fact(
                FactKind::Structure,
                format!("S_ci¹ = <F_d> is free on {d} generators"),
                BAUMSLAG,
            ),
            fact(FactKind::Structure, "S = S_ci¹ ⋈ S_c", BAUMSLAG),
            fact(FactKind::Relation, "Q_c(S): v_b v_b* = 1", BAUMSLAG),
            fact(
                FactKind::Relation,
                format!("Q_p(S): sum_{{0<=k<={}}} v_(b^k a) v_(b^k a)* = 1", d - 1),
                BAUMSLAG,
            ),
            fact(
                FactKind::Relation,
                format!(
                    "Q(S): v_b v_b* = 1 and sum_{{0<=k<={}}} v_(b^k a) v_(b^k a)* = 1",
                    d - 1
                ),
                BAUMSLAG,
            ),
        ]
    }
}

impl<T: IntScalar> Diagram for MatrixFamily<T> {
    fn diagram_facts(&self) -> Vec<DiagramFact> {
        vec![
            fact(FactKind::Structure, "S_c = S* = Z^d ⋊ {0}", ADS),
            fact(FactKind::Structure, "every element of S \\ S* is core irreducible", ADS),
            fact(FactKind::Degeneracy, "C*(S) = Q_c(S)", ADS),
            fact(FactKind::Degeneracy, "Q_p(S) ≅ Q(S)", ADS),
            fact(
                FactKind::Relation,
                "Q(S): sum over g in Z^d/AZ^d of v_(g,1) v_(g,1)* = 1",
                ADS,
            ),
        ]
    }
}

impl Diagram for SelfSimilar {
    fn diagram_facts(&self) -> Vec<DiagramFact> {
        vec![
            fact(FactKind::Structure, "S_c = S* = G", SELF_SIMILAR),
            fact(FactKind::Degeneracy, "C*(G) = Q(G)", SELF_SIMILAR),
            fact(FactKind::Degeneracy, "Q_c(X*) = C*(X*)", SELF_SIMILAR),
            fact(
                FactKind::Degeneracy,
                format!("Q_p(X*) = Q(X*) ≅ O_{}", self.alphabet()),
                SELF_SIMILAR,
            ),
            fact(
                FactKind::Structure,
                "C*(X*) → C*(S) ← C*(G) descends to O_|X| → Q(S) ← C*(G)",
                SELF_SIMILAR,
            ),
        ]
    }
}

impl Diagram for FreeMonoid {
    fn diagram_facts(&self) -> Vec<DiagramFact> {
        if self.letters() == 1 {
            return right_ore(ORE);
        }
        vec![
            fact(FactKind::Structure, "S_c = S* = {1}", SELF_SIMILAR),
            fact(FactKind::Degeneracy, "Q_c(S) = C*(S)", SELF_SIMILAR),
            fact(
                FactKind::Degeneracy,
                format!("Q_p(S) = Q(S) ≅ O_{}", self.letters()),
                SELF_SIMILAR,
            ),
        ]
    }
}
