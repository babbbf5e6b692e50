use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use proptest::prelude::*;

use rlcm::boundary::CoreStructure;
use rlcm::families::{BsElement, MatrixFamily};
use rlcm::kms::{phi_series_bs, recover_trace, Scaled, TraceSpec};
use rlcm::ktheory::{kunneth, orders_divide, tensor, tor, FGAbGroup, KPair};
use rlcm::{Bs, IntMatrix, LcmOutcome, NxP, RightLcm, SelfSimilar};

fn nxp() -> NxP {
    NxP::new(&[2, 3]).unwrap()
}

fn nxp_elem() -> impl Strategy<Value = (u64, u32, u32)> {
    (0u64..40, 0u32..4, 0u32..3)
}

fn to_nxp(fam: &NxP, (n, i, j): (u64, u32, u32)) -> rlcm::families::NxPElement {
    fam.element(n, 2u64.pow(i) * 3u64.pow(j)).unwrap()
}

fn bs_word() -> impl Strategy<Value = String> {
    prop::collection::vec(prop_oneof![Just('a'), Just('b')], 0..9).prop_map(|v| v.into_iter().collect())
}

fn group() -> impl Strategy<Value = FGAbGroup> {
    (0usize..3, prop::collection::vec(1u64..13, 0..3)).prop_map(|(r, t)| FGAbGroup::new(r, &t))
}

/// Checks the lcm axiom `sS ∩ tS = wS` on a family through `left_divide`.
fn lcm_consistent<S: RightLcm>(fam: &S, s: &S::Elem, t: &S::Elem, probes: &[S::Elem]) -> bool {
    match fam.right_lcm(s, t) {
        LcmOutcome::Meet(w) => {
            let (Some(x), Some(y)) = (fam.left_divide(s, &w), fam.left_divide(t, &w)) else {
                return false;
            };
            if fam.multiply(s, &x) != w || fam.multiply(t, &y) != w {
                return false;
            }
            // every common multiple among the probes lies in wS
            probes.iter().all(|u| {
                let su = fam.multiply(s, u);
                !fam.divides(t, &su) || fam.divides(&w, &su)
            })
        }
        LcmOutcome::Disjoint => probes.iter().all(|u| !fam.divides(t, &fam.multiply(s, u))),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn nxp_associative(a in nxp_elem(), b in nxp_elem(), c in nxp_elem()) {
        let f = nxp();
        let (a, b, c) = (to_nxp(&f, a), to_nxp(&f, b), to_nxp(&f, c));
        prop_assert_eq!(f.multiply(&f.multiply(&a, &b), &c), f.multiply(&a, &f.multiply(&b, &c)));
    }

    #[test]
    fn nxp_lcm_axiom(a in nxp_elem(), b in nxp_elem()) {
        let f = nxp();
        let probes = f.enumerate(3).unwrap();
        prop_assert!(lcm_consistent(&f, &to_nxp(&f, a), &to_nxp(&f, b), &probes));
    }

    #[test]
    fn nxp_factorization(a in nxp_elem()) {
        let f = nxp();
        let s = to_nxp(&f, a);
        let fac = f.core_factorize(&s);
        prop_assert_eq!(f.multiply(&fac.irreducible_part, &fac.core_part), s);
        prop_assert!(f.is_core(&fac.core_part));
    }

    #[test]
    fn nxp_scale_multiplicative(a in nxp_elem(), b in nxp_elem()) {
        let f = nxp();
        let (a, b) = (to_nxp(&f, a), to_nxp(&f, b));
        prop_assert_eq!(f.scale(&f.multiply(&a, &b)), f.scale(&a) * f.scale(&b));
    }

    #[test]
    fn bs_associative_and_normal(x in bs_word(), y in bs_word(), z in bs_word()) {
        let bs = Bs::new(2, 3).unwrap();
        let (a, b, c) = (bs.normalize(&x).unwrap(), bs.normalize(&y).unwrap(), bs.normalize(&z).unwrap());
        prop_assert_eq!(bs.multiply(&bs.multiply(&a, &b), &c), bs.multiply(&a, &bs.multiply(&b, &c)));
        prop_assert_eq!(bs.multiply(&a, &b), bs.normalize(&format!("{x}{y}")).unwrap());
        prop_assert!(a.letters().iter().all(|&l| l < 3));
    }

    #[test]
    fn bs_lcm_axiom(x in bs_word(), y in bs_word()) {
        let bs = Bs::new(2, 3).unwrap();
        let probes = bs.enumerate(2).unwrap();
        prop_assert!(lcm_consistent(&bs, &bs.normalize(&x).unwrap(), &bs.normalize(&y).unwrap(), &probes));
    }

    #[test]
    fn bs_factorization_and_scale(x in bs_word(), y in bs_word()) {
        let bs = Bs::new(2, 3).unwrap();
        let (s, t) = (bs.normalize(&x).unwrap(), bs.normalize(&y).unwrap());
        let fac = bs.core_factorize(&s);
        prop_assert_eq!(bs.multiply(&fac.irreducible_part, &fac.core_part), s.clone());
        prop_assert_eq!(fac.core_part, BsElement::b_power(s.tail()));
        prop_assert_eq!(bs.scale(&bs.multiply(&s, &t)), bs.scale(&s) * bs.scale(&t));
    }

    #[test]
    fn matrix_associative_and_lcm(g in prop::collection::vec(-4i64..5, 6), n in prop::collection::vec(0u32..3, 3)) {
        let fam = MatrixFamily::<BigInt>::new(IntMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]).unwrap()).unwrap();
        let e = |i: usize| fam.element(vec![g[2 * i].into(), g[2 * i + 1].into()], n[i]).unwrap();
        let (a, b, c) = (e(0), e(1), e(2));
        prop_assert_eq!(fam.multiply(&fam.multiply(&a, &b), &c), fam.multiply(&a, &fam.multiply(&b, &c)));
        let probes = fam.enumerate(2).unwrap();
        prop_assert!(lcm_consistent(&fam, &a, &b, &probes));
        prop_assert_eq!(fam.scale(&fam.multiply(&a, &b)), fam.scale(&a) * fam.scale(&b));
    }

    #[test]
    fn adding_machine_associative(w in prop::collection::vec(0usize..2, 0..5), g in prop::collection::vec(-5i64..6, 3), v in prop::collection::vec(0usize..2, 0..5)) {
        let ss = SelfSimilar::adding_machine();
        let a = ss.element(w.clone(), vec![g[0]]).unwrap();
        let b = ss.element(v.clone(), vec![g[1]]).unwrap();
        let c = ss.element(w, vec![g[2]]).unwrap();
        prop_assert_eq!(ss.multiply(&ss.multiply(&a, &b), &c), ss.multiply(&a, &ss.multiply(&b, &c)));
        let probes = ss.enumerate(2).unwrap();
        prop_assert!(lcm_consistent(&ss, &a, &b, &probes));
    }

    #[test]
    fn fgab_sum_commutes_and_associates(a in group(), b in group(), c in group()) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        prop_assert!(a.invariant_factors().windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(a.invariant_factors().iter().all(|&x| x > 1));
    }

    #[test]
    fn tensor_distributes(a in group(), b in group(), c in group()) {
        prop_assert_eq!(tensor(&a, &b.direct_sum(&c)), tensor(&a, &b).direct_sum(&tensor(&a, &c)));
        prop_assert_eq!(tensor(&a, &b), tensor(&b, &a));
        prop_assert_eq!(tor(&a, &b), tor(&b, &a));
        prop_assert_eq!(tensor(&a, &FGAbGroup::free(1)), a.clone());
        prop_assert!(tor(&a, &FGAbGroup::free(1)).is_zero());
    }

    #[test]
    fn kunneth_unit(a in group(), b in group()) {
        let k = KPair { k0: a, k1: b };
        prop_assert_eq!(kunneth(&k, &KPair::unit()), k.clone());
        prop_assert_eq!(kunneth(&KPair::unit(), &k), k);
    }

    #[test]
    fn divisibility_of_orders(t in prop::collection::vec(1u64..20, 0..4), m in 1u64..30) {
        let g = FGAbGroup::new(0, &t);
        let want = t.iter().all(|x| m % x == 0);
        prop_assert_eq!(orders_divide(&g, m), want);
        prop_assert!(!orders_divide(&FGAbGroup::free(1), m));
    }

    #[test]
    fn trace_json_round_trip(p in prop::collection::vec((0i64..12, 1i64..12), 1..4)) {
        let tau = TraceSpec::uniform(&p).unwrap();
        let back = TraceSpec::from_json(&tau.to_json()).unwrap();
        prop_assert_eq!(back, tau);
    }

    #[test]
    fn series_recursion(n in 0u64..40, beta in 1.2f64..4.0, q in 1i64..9) {
        let bs = Bs::new(2, 3).unwrap();
        let tau = TraceSpec::point_mass(&[(1, q)]).unwrap();
        let tol = 1e-14;
        let phi = |m: u64| phi_series_bs::<f64>(&bs, m, beta, &tau, tol).unwrap().value();
        let tau_n: Complex<f64> = tau.moment(&[n as i64]).unwrap();
        let mut rhs = tau_n;
        if n % 3 == 0 {
            rhs += phi(n / 3 * 2) * 3f64.powf(1.0 - beta);
        }
        prop_assert!((phi(n) - rhs).norm() < 1e-10);

        let map: BTreeMap<u64, Complex<f64>> = (0..=n).map(|m| (m, phi(m))).collect();
        let rec = recover_trace(&bs, &map, beta).unwrap();
        let m: Complex<f64> = tau.moment(&[n as i64]).unwrap();
        prop_assert!((rec[&n] - m).norm() < 1e-9);
    }
}
