//! Finitely generated abelian groups and the K-group formulas for the
//! boundary quotients of `ℕ ⋊ P` and `BS(c,d)⁺`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::NxP;
use crate::intlat::{snf, Matrix};

/// `ℤʳ ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₖ` with `2 ≤ d₁ | d₂ | … | dₖ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct FGAbGroup {
    #[serde(rename = "rank")]
    free_rank: usize,
    #[serde(rename = "torsion")]
    invariant_factors: Vec<u64>,
}

fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let orders: Vec<u64> = orders.iter().copied().filter(|&n| n > 1).collect();
    if orders.len() <= 1 {
        return orders;
    }
    let diag: Vec<BigInt> = orders.iter().map(|&n| BigInt::from(n)).collect();
    snf(&Matrix::diagonal(&diag))
        .diagonal()
        .into_iter()
        .filter_map(|x| {
            let x = x.abs().to_u64().expect("invariant factor fits in u64");
            (x > 1).then_some(x)
        })
        .collect()
}

impl FGAbGroup {
    /// `ℤ^rank ⊕ ⊕ ℤ/n`; an order of 0 contributes a free summand, 1 nothing.
    pub fn new(rank: usize, orders: &[u64]) -> Self {
        let zeros = orders.iter().filter(|&&n| n == 0).count();
        Self {
            free_rank: rank + zeros,
            invariant_factors: invariant_factors(orders),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, &[])
    }

    /// `ℤ/n`, with `ℤ/0 = ℤ`.
    pub fn cyclic(n: u64) -> Self {
        Self::new(0, &[n])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.invariant_factors.clone();
        orders.extend_from_slice(&other.invariant_factors);
        Self::new(self.free_rank + other.free_rank, &orders)
    }

    /// Cyclic summands, `0` standing for `ℤ`.
    fn summands(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::repeat(0)
            .take(self.free_rank)
            .chain(self.invariant_factors.iter().copied())
    }
}

impl fmt::Display for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Cokernel of the relation matrix whose rows are relations among the
/// standard generators of `ℤ^cols`.
pub fn normalize_presentation(relations: &Matrix<BigInt>) -> FGAbGroup {
    let cols = relations.cols();
    if relations.rows() == 0 {
        return FGAbGroup::free(cols);
    }
    let diag = snf(relations).diagonal();
    let nonzero: Vec<u64> = diag
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.abs().to_u64().expect("invariant factor fits in u64"))
        .collect();
    FGAbGroup::new(cols - nonzero.len(), &nonzero)
}

fn cyclic_tensor(m: u64, n: u64) -> u64 {
    m.gcd(&n)
}

pub fn tensor(g: &FGAbGroup, h: &FGAbGroup) -> FGAbGroup {
    let orders: Vec<u64> = g
        .summands()
        .flat_map(|m| h.summands().map(move |n| cyclic_tensor(m, n)))
        .collect();
    FGAbGroup::new(0, &orders)
}

pub fn tor(g: &FGAbGroup, h: &FGAbGroup) -> FGAbGroup {
    let orders: Vec<u64> = g
        .summands()
        .flat_map(|m| {
            h.summands()
                .map(move |n| if m == 0 || n == 0 { 1 } else { m.gcd(&n) })
        })
        .collect();
    FGAbGroup::new(0, &orders)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct KPair {
    #[serde(rename = "K0")]
    pub k0: FGAbGroup,
    #[serde(rename = "K1")]
    pub k1: FGAbGroup,
}

impl KPair {
    pub fn new(k0: FGAbGroup, k1: FGAbGroup) -> Self {
        Self { k0, k1 }
    }

    /// K-theory of `ℂ`.
    pub fn unit() -> Self {
        Self::new(FGAbGroup::free(1), FGAbGroup::zero())
    }

    fn degree(&self, i: usize) -> &FGAbGroup {
        if i % 2 == 0 {
            &self.k0
        } else {
            &self.k1
        }
    }
}

impl fmt::Display for KPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0 = {}, K1 = {}", self.k0, self.k1)
    }
}

/// Graded Künneth formula with the Tor term shifted by one degree.
pub fn kunneth(a: &KPair, b: &KPair) -> KPair {
    let degree = |i: usize| {
        let mut g = FGAbGroup::zero();
        for j in 0..2 {
            g = g.direct_sum(&tensor(a.degree(j), b.degree(i + 2 - j)));
            g = g.direct_sum(&tor(a.degree(j), b.degree(i + 3 - j)));
        }
        g
    };
    KPair::new(degree(0), degree(1))
}

/// `K_*(O_p) = (ℤ/(p−1), 0)`.
pub fn k_cuntz(p: u64) -> Result<KPair> {
    if p < 2 {
        return Err(Error::InvalidConfig(format!("O_{p} needs p >= 2")));
    }
    Ok(KPair::new(FGAbGroup::cyclic(p - 1), FGAbGroup::zero()))
}

/// Whether a K-group value is established or only conjectured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Theorem,
    Conjectural,
}

#[derive(Clone, Debug, Serialize)]
pub struct KResult {
    #[serde(flatten)]
    pub groups: KPair,
    pub status: Status,
    pub annotations: Vec<String>,
}

fn status(primes: &[u64]) -> Status {
    if primes.len() <= 2 {
        Status::Theorem
    } else {
        Status::Conjectural
    }
}

/// `K_*(⊗_{p∈𝒫} O_p)` as the value for the torsion subalgebra `𝒜(S)`.
pub fn k_torsion_subalgebra(primes: &[u64]) -> Result<KResult> {
    NxP::new(primes)?;
    let mut acc = KPair::unit();
    for &p in primes {
        acc = kunneth(&acc, &k_cuntz(p)?);
    }
    let st = status(primes);
    let mut annotations = vec![
        "A(S) is the subalgebra of Q(S) generated by v_(n,p) for p in P, 0 <= n <= p-1".to_string(),
        "A(S) ≅ M_{d^∞}(C) ⋊ P with d the product of P, a unital UCT Kirchberg algebra embedding into Q_p(S) and Q(S)".to_string(),
        "S_ci¹ = {(n,p) : 0 <= n <= p-1} and the inclusion S_ci¹ ⊂ S induces Q(S_ci¹) ≅ A(S)".to_string(),
        "the embedding A(S) → Q_p(S) is an isomorphism in K-theory at least for |P| <= 2".to_string(),
    ];
    annotations.push(match st {
        Status::Theorem => "A(S) ≅ ⊗_{p∈P} O_p for |P| <= 2".to_string(),
        Status::Conjectural => {
            "for |P| >= 3 the order of every element of K_*(A(S)) divides g_P; A(S) ≅ ⊗_{p∈P} O_p is conjectural".to_string()
        }
    });
    Ok(KResult {
        groups: acc,
        status: st,
        annotations,
    })
}

/// `K_i(Q(S)) ≅ ℤ^{2^{|𝒫|−1}} ⊕ K_i(𝒜(S))`.
pub fn k_boundary_nxp(primes: &[u64]) -> Result<KResult> {
    let torsion = k_torsion_subalgebra(primes)?;
    let free = FGAbGroup::free(1usize << (primes.len() - 1));
    Ok(KResult {
        groups: KPair::new(
            free.direct_sum(&torsion.groups.k0),
            free.direct_sum(&torsion.groups.k1),
        ),
        status: torsion.status,
        annotations: torsion.annotations,
    })
}

/// `K₀ = ℤ/(d−1) ⊕ δ_{1c}ℤ`, `K₁ = δ_{1d}ℤ ⊕ ℤ/(c−1)` with `ℤ/0 = ℤ`.
pub fn k_boundary_bs(c: u64, d: u64) -> Result<KPair> {
    if c == 0 || d == 0 {
        return Err(Error::InvalidConfig("BS(c,d) needs c, d >= 1".into()));
    }
    let k0 = FGAbGroup::new(usize::from(c == 1), &[d - 1]);
    let k1 = FGAbGroup::new(usize::from(d == 1), &[c - 1]);
    Ok(KPair::new(k0, k1))
}

/// `g_𝒫 = gcd{p − 1 : p ∈ 𝒫}`.
pub fn g_p(primes: &[u64]) -> Result<u64> {
    NxP::new(primes)?;
    Ok(primes.iter().fold(0, |g, &p| g.gcd(&(p - 1))))
}

/// Every element of `g` has finite order dividing `m`.
pub fn orders_divide(g: &FGAbGroup, m: u64) -> bool {
    g.free_rank == 0 && g.invariant_factors.iter().all(|d| m % d == 0)
}
