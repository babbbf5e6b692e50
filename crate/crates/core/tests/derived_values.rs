//! Worked values pinned against small independent oracles written here.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use rlcm::boundary::{
    accurate_refine, check_complement_identity, check_terminating, core_witness, is_accurate,
    is_foundation, product_sets, search_proper_shifts, CoreStructure,
};
use rlcm::families::{BsElement, MatrixFamily, RestrictionClosure};
use rlcm::intlat::{
    has_unimodular_factor, intersection_is_zero, snf, solve_integer, transversal, IntPoly,
};
use rlcm::kms::{
    class_reps, ground_state, phi_series_bs, psi_beta, psi_beta_tau, psi_series_bs, recover_trace,
    zeta_closed, Scaled, TraceSpec,
};
use rlcm::ktheory::{k_boundary_nxp, k_cuntz, k_torsion_subalgebra, kunneth, FGAbGroup, Status};
use rlcm::{Bs, IntMatrix, LcmOutcome, NxP, RightLcm, SelfSimilar};

// ---- oracle helpers ----

/// Right ideal `sS` restricted to `n ≤ nmax`, `q | qmax`.
fn nxp_ideal(primes: &[u64], s: (u64, u64), nmax: u64, qmax: u64) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    let ps: Vec<u64> = (1..=qmax).filter(|q| qmax % q == 0).collect();
    let ps: Vec<u64> = ps
        .into_iter()
        .filter(|q| {
            let mut r = *q;
            for p in primes {
                while r % p == 0 {
                    r /= p;
                }
            }
            r == 1
        })
        .collect();
    for n in 0..=nmax {
        for &q in &ps {
            let x = (s.0 + s.1 * n, s.1 * q);
            if x.0 <= nmax {
                out.insert(x);
            }
        }
    }
    out
}

/// Least element of the ideal intersection under `q` then `n`.
fn nxp_brute_lcm(primes: &[u64], s: (u64, u64), t: (u64, u64)) -> Option<(u64, u64)> {
    let (nmax, qmax) = (60, 36);
    let a = nxp_ideal(primes, s, nmax, qmax);
    let b = nxp_ideal(primes, t, nmax, qmax);
    a.intersection(&b).min_by_key(|(n, q)| (*q, *n)).copied()
}

fn nxp_elem(fam: &NxP, n: u64, p: u64) -> rlcm::families::NxPElement {
    fam.element(n, p).unwrap()
}

/// String rewriting `b^d a → a b^c` until stable.
fn bs_rewrite(word: &str, c: usize, d: usize) -> String {
    let lhs = format!("{}a", "b".repeat(d));
    let rhs = format!("a{}", "b".repeat(c));
    let mut w = word.to_string();
    while let Some(i) = w.find(&lhs) {
        w.replace_range(i..i + lhs.len(), &rhs);
    }
    w
}

/// Reads a rewritten word as `(letters, tail)`.
fn bs_split(word: &str) -> (Vec<u32>, u64) {
    let mut letters = Vec::new();
    let mut run = 0;
    for ch in word.chars() {
        if ch == 'b' {
            run += 1;
        } else {
            letters.push(run);
            run = 0;
        }
    }
    (letters, run as u64)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-12
}

// ---- nxp ----

#[test]
fn nxp_lcm_matches_brute_force() {
    let fam = NxP::new(&[2, 3]).unwrap();
    let cases = [
        ((0, 2), (1, 3), Some((4, 6))),
        ((1, 2), (1, 3), Some((1, 6))),
        ((0, 2), (1, 4), None),
        ((0, 2), (1, 2), None),
    ];
    for (s, t, want) in cases {
        assert_eq!(nxp_brute_lcm(&[2, 3], s, t), want, "{s:?} {t:?}");
        let got = fam.right_lcm(&nxp_elem(&fam, s.0, s.1), &nxp_elem(&fam, t.0, t.1));
        match want {
            Some((n, q)) => assert_eq!(got, LcmOutcome::Meet(nxp_elem(&fam, n, q))),
            None => assert_eq!(got, LcmOutcome::Disjoint),
        }
    }
    let w = nxp_elem(&fam, 4, 6);
    assert_eq!(fam.multiply(&nxp_elem(&fam, 0, 2), &nxp_elem(&fam, 2, 3)), w);
    assert_eq!(fam.multiply(&nxp_elem(&fam, 1, 3), &nxp_elem(&fam, 1, 2)), w);
}

#[test]
fn nxp_lcm_agrees_with_brute_force_on_a_grid() {
    let fam = NxP::new(&[2, 3]).unwrap();
    for s in [(0, 1), (1, 2), (0, 3), (2, 3), (3, 4), (1, 6)] {
        for t in [(0, 2), (1, 3), (2, 4), (5, 6), (4, 1)] {
            let got = match fam.right_lcm(&nxp_elem(&fam, s.0, s.1), &nxp_elem(&fam, t.0, t.1)) {
                LcmOutcome::Meet(w) => Some(w.to_string()),
                LcmOutcome::Disjoint => None,
            };
            let want = nxp_brute_lcm(&[2, 3], s, t).map(|(n, q)| format!("({n},{q})"));
            assert_eq!(got, want, "{s:?} {t:?}");
        }
    }
}

#[test]
fn nxp_left_divide_and_enumerate() {
    let fam = NxP::new(&[2, 3]).unwrap();
    let x = fam.left_divide(&nxp_elem(&fam, 0, 2), &nxp_elem(&fam, 4, 6));
    assert_eq!(x, Some(nxp_elem(&fam, 2, 3)));
    assert_eq!(fam.left_divide(&nxp_elem(&fam, 1, 2), &nxp_elem(&fam, 4, 6)), None);

    let two = NxP::new(&[2]).unwrap();
    let small: HashSet<String> = two
        .enumerate(2)
        .unwrap()
        .iter()
        .map(ToString::to_string)
        .collect();
    for e in ["(0,1)", "(1,1)", "(0,2)", "(1,2)"] {
        assert!(small.contains(e), "{e} missing from {small:?}");
    }
}

#[test]
fn nxp_core_data() {
    let fam = NxP::new(&[2]).unwrap();
    let f = fam.core_factorize(&nxp_elem(&fam, 7, 2));
    assert_eq!(f.irreducible_part, nxp_elem(&fam, 1, 2));
    assert_eq!(f.core_part, nxp_elem(&fam, 3, 1));
    assert_eq!(fam.multiply(&f.irreducible_part, &f.core_part), nxp_elem(&fam, 7, 2));
    let w = core_witness(&fam, &nxp_elem(&fam, 0, 2), 4).unwrap();
    assert_eq!(w, Some(nxp_elem(&fam, 1, 2)));
}

#[test]
fn nxp_foundation_sets() {
    let fam = NxP::new(&[2]).unwrap();
    let set = |v: &[(u64, u64)]| v.iter().map(|&(n, p)| nxp_elem(&fam, n, p)).collect::<Vec<_>>();
    assert!(is_foundation(&fam, &set(&[(0, 2)])).unwrap() == rlcm::boundary::Verdict::False);
    assert!(is_accurate(&fam, &set(&[(0, 2), (1, 2)])));
    assert!(!is_accurate(&fam, &set(&[(0, 2), (0, 4)])));

    let f = set(&[(0, 2), (1, 2)]);
    let prod: BTreeSet<String> = product_sets(&fam, &f, &f).iter().map(ToString::to_string).collect();
    let want: BTreeSet<String> = (0..4).map(|n| format!("({n},4)")).collect();
    assert_eq!(prod, want);

    let six = NxP::new(&[2, 3]).unwrap();
    let f: Vec<_> = [(0, 2), (0, 3), (1, 3), (2, 3)]
        .iter()
        .map(|&(n, p)| nxp_elem(&six, n, p))
        .collect();
    let refined: BTreeSet<String> = accurate_refine(&six, &f).unwrap().iter().map(ToString::to_string).collect();
    let want: BTreeSet<String> = (0..6).map(|n| format!("({n},6)")).collect();
    assert_eq!(refined, want);
    assert_eq!(
        six.multiply(&nxp_elem(&six, 2, 3), &nxp_elem(&six, 1, 2)),
        nxp_elem(&six, 5, 6)
    );
}

#[test]
fn nxp_searches() {
    let fam = NxP::new(&[2]).unwrap();
    assert!(check_complement_identity(&fam, &nxp_elem(&fam, 0, 2), &nxp_elem(&fam, 1, 1), 4).unwrap());
    assert!(search_proper_shifts(&fam, 3, 0).unwrap().is_empty());
    assert!(check_terminating(&fam, 5).unwrap().holds());
}

// ---- bs ----

#[test]
fn bs_normal_forms_match_rewriting() {
    let bs = Bs::new(2, 3).unwrap();
    for word in ["bbba", "bbbba", "abbba", "bbbbbbaa", "babbbab", "bbbabbba"] {
        let rewritten = bs_rewrite(word, 2, 3);
        let (letters, tail) = bs_split(&rewritten);
        assert_eq!(bs.normalize(word).unwrap(), BsElement::new(letters, tail), "{word}");
    }
    assert_eq!(bs.normalize("bbba").unwrap(), BsElement::new(vec![0], 2));
    assert_eq!(bs.normalize("bbbba").unwrap(), BsElement::new(vec![1], 2));
}

#[test]
fn bs_lcm_and_division() {
    let bs = Bs::new(2, 3).unwrap();
    let (a, b) = (bs.a(), bs.b());
    let abb = BsElement::new(vec![0], 2);
    assert_eq!(bs.right_lcm(&a, &b), LcmOutcome::Meet(abb.clone()));
    assert_eq!(bs.normalize("bbba").unwrap(), abb);
    assert_eq!(bs.right_lcm(&a, &bs.normalize("ba").unwrap()), LcmOutcome::Disjoint);
    assert_eq!(bs.left_divide(&b, &abb), Some(bs.normalize("bba").unwrap()));
}

#[test]
fn bs_enumeration_and_core() {
    let bs = Bs::new(2, 3).unwrap();
    let all: HashSet<BsElement> = bs.enumerate(2).unwrap().into_iter().collect();
    for w in ["", "b", "a", "ba", "bba", "ab", "bab", "bbab"] {
        assert!(all.contains(&bs.normalize(w).unwrap()), "{w}");
    }
    let f = bs.core_factorize(&BsElement::new(vec![1], 2));
    assert_eq!(f.irreducible_part, bs.normalize("ba").unwrap());
    assert_eq!(f.core_part, BsElement::b_power(2));
    assert_eq!(core_witness(&bs, &bs.a(), 4).unwrap(), Some(bs.normalize("ba").unwrap()));
    assert!(check_complement_identity(&bs, &bs.a(), &bs.b(), 4).unwrap());
    assert!(search_proper_shifts(&bs, 3, 0).unwrap().is_empty());
    assert!(check_terminating(&bs, 5).unwrap().holds());
}

#[test]
fn bs_elementary_products() {
    let bs = Bs::new(2, 3).unwrap();
    let fd: Vec<BsElement> = (0..3).map(|l| BsElement::new(vec![l], 0)).collect();
    let prod: HashSet<BsElement> = product_sets(&bs, &fd, &fd).into_iter().collect();
    assert_eq!(prod.len(), 9);
    for l in 0..3 {
        for m in 0..3 {
            assert!(prod.contains(&BsElement::new(vec![l, m], 0)));
        }
    }
    let refined: HashSet<BsElement> = accurate_refine(&bs, &fd).unwrap().into_iter().collect();
    assert_eq!(refined, fd.into_iter().collect());
}

// ---- matrix ----

fn a_matrix() -> IntMatrix {
    IntMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]).unwrap()
}

#[test]
fn matrix_snf_and_solving() {
    let a = a_matrix();
    let s = snf(&a);
    assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
    assert_eq!(s.u.mul(&s.d).unwrap().mul(&s.v).unwrap(), a);
    let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    assert_eq!(solve_integer(&a, &b(&[1, 2])).unwrap(), Some(b(&[0, 1])));
    assert_eq!(solve_integer(&a, &b(&[0, 1])).unwrap(), None);
}

#[test]
fn matrix_transversal_is_a_coset_system() {
    let a = a_matrix();
    let reps = transversal(&a, 1).unwrap();
    assert_eq!(reps.len(), 2);
    // brute force: two vectors share a coset iff their difference solves A x = diff
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let diff: Vec<BigInt> = reps[i].iter().zip(&reps[j]).map(|(x, y)| x - y).collect();
            assert_eq!(solve_integer(&a, &diff).unwrap(), None);
        }
    }
}

#[test]
fn matrix_lcm() {
    let fam = MatrixFamily::<BigInt>::new(a_matrix()).unwrap();
    let e = |g: &[i64], n| fam.element(g.iter().map(|&x| BigInt::from(x)).collect(), n).unwrap();
    assert_eq!(fam.right_lcm(&e(&[0, 0], 1), &e(&[1, 2], 1)), LcmOutcome::Meet(e(&[0, 0], 1)));
    assert_eq!(fam.right_lcm(&e(&[0, 0], 1), &e(&[0, 1], 1)), LcmOutcome::Disjoint);
    assert!(!fam.is_core(&e(&[0, 0], 1)));
}

#[test]
fn unimodular_factors_and_intersections() {
    assert!(has_unimodular_factor(&IntPoly::from_i64(&[1, -3, 1])).unwrap());
    assert!(has_unimodular_factor(&IntPoly::from_i64(&[2, -3, 1])).unwrap());
    assert!(!has_unimodular_factor(&IntPoly::from_i64(&[-2, 0, 1])).unwrap());

    let diag12 = IntMatrix::from_i64_rows(&[&[1, 0], &[0, 2]]).unwrap();
    let r = intersection_is_zero(&diag12).unwrap();
    assert!(!r.is_zero);
    // (1,0) is fixed, so it lies in A^n Z^2 for every n
    let fixed = vec![BigInt::one(), BigInt::zero()];
    let mut an = diag12.clone();
    for _ in 0..5 {
        assert!(solve_integer(&an, &fixed).unwrap().is_some());
        an = an.mul(&diag12).unwrap();
    }
    let companion = IntMatrix::from_i64_rows(&[&[0, 2], &[1, 0]]).unwrap();
    assert!(intersection_is_zero(&companion).unwrap().is_zero);
    let diag23 = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]).unwrap();
    assert!(intersection_is_zero(&diag23).unwrap().is_zero);
}

// ---- self-similar ----

#[test]
fn adding_machine_products() {
    let ss = SelfSimilar::adding_machine();
    let e = |w: Vec<usize>, g: i64| ss.element(w, vec![g]).unwrap();
    assert_eq!(ss.multiply(&e(vec![], 1), &e(vec![0], 0)), e(vec![1], 0));
    assert_eq!(ss.multiply(&e(vec![], 1), &e(vec![1], 0)), e(vec![0], 1));
    let RestrictionClosure::Finite(states) = ss.restriction_closure(&[1], 16) else {
        panic!("closure of g should be finite");
    };
    let states: HashSet<Vec<i64>> = states.into_iter().collect();
    assert_eq!(states, [vec![1], vec![0]].into_iter().collect());
    assert!(matches!(ss.restriction_closure(&[3], 64), RestrictionClosure::Finite(_)));
}

// ---- kms ----

#[test]
fn nxp_kms_values() {
    let fam = NxP::new(&[2]).unwrap();
    let (s, t) = (nxp_elem(&fam, 0, 2), nxp_elem(&fam, 1, 2));
    assert!(close(psi_beta(&fam, &s, &s, 2.0), 0.25));
    assert!(close(psi_beta(&fam, &s, &t, 2.0), 0.0));

    let tau = TraceSpec::point_mass(&[(0, 1)]).unwrap();
    let v: Complex<f64> = psi_beta_tau(&fam, &s, &nxp_elem(&fam, 2, 2), 3.0, &tau).unwrap();
    assert!(close(v.re, 0.125) && close(v.im, 0.0));
    let v: Complex<f64> = psi_beta_tau(&fam, &s, &t, 3.0, &tau).unwrap();
    assert!(close(v.norm(), 0.0));
    let v: Complex<f64> = ground_state(&fam, &s, &s, &tau).unwrap();
    assert!(close(v.norm(), 0.0));

    let reps: BTreeSet<String> = class_reps(&fam, 2).unwrap().iter().map(ToString::to_string).collect();
    let want: BTreeSet<String> =
        ["(0,1)", "(0,2)", "(1,2)", "(0,4)", "(1,4)", "(2,4)", "(3,4)"].iter().map(|s| s.to_string()).collect();
    assert_eq!(reps, want);

    let full = NxP::new(&[2, 3, 5]).unwrap();
    assert_eq!(full.scale(&nxp_elem(&full, 3, 5)), 5u32.into());
}

#[test]
fn bs_kms_values() {
    let bs = Bs::new(2, 3).unwrap();
    let tau = TraceSpec::point_mass(&[(0, 1)]).unwrap();
    let v: Complex<f64> = psi_series_bs(&bs, 3, 2.0, &tau, 1e-12).unwrap();
    assert!(close(v.re, 8.0 / 9.0) && close(v.im, 0.0));
    let v: Complex<f64> = psi_series_bs(&bs, 2, 2.0, &tau, 1e-12).unwrap();
    assert!(close(v.re, 2.0 / 3.0));
    let phi = phi_series_bs::<f64>(&bs, 3, 2.0, &tau, 1e-12).unwrap().value();
    assert!(close(phi.re, 4.0 / 3.0));

    let zeta: f64 = zeta_closed(&bs, 2.0).unwrap();
    assert!(close(zeta, 1.5));
    // partial sums of sum 3^k 3^-2k
    let partial: f64 = (0..60).map(|k| 3f64.powi(-k)).sum();
    assert!(close(partial, zeta));

    let v: Complex<f64> = ground_state(&bs, &BsElement::b_power(2), &BsElement::b_power(2), &tau).unwrap();
    assert!(close(v.re, 1.0));
    let ba = bs.normalize("ba").unwrap();
    assert_eq!(bs.scale(&ba), 3u32.into());
    assert_eq!(bs.scale(&BsElement::b_power(4)), 1u32.into());
    let reps: HashSet<BsElement> = class_reps(&bs, 1).unwrap().into_iter().collect();
    let want: HashSet<BsElement> = ["", "a", "ba", "bba"].iter().map(|w| bs.normalize(w).unwrap()).collect();
    assert_eq!(reps, want);
}

#[test]
fn bs_trace_recovery() {
    let bs = Bs::new(2, 3).unwrap();
    let phi = [(2u64, 1.0), (3, 4.0 / 3.0)]
        .into_iter()
        .map(|(n, x)| (n, Complex::new(x, 0.0)))
        .collect();
    let rec = recover_trace(&bs, &phi, 2.0_f64).unwrap();
    assert!(close(rec[&3].re, 1.0));

    let canonical = TraceSpec::Canonical;
    let phi = (0..10u64)
        .map(|n| (n, phi_series_bs::<f64>(&bs, n, 2.0, &canonical, 1e-14).unwrap().value()))
        .collect();
    let rec = recover_trace(&bs, &phi, 2.0_f64).unwrap();
    for n in 0..10u64 {
        assert!(close(rec[&n].re, if n == 0 { 1.0 } else { 0.0 }), "n={n}");
    }
}

#[test]
fn matrix_zeta() {
    let fam = MatrixFamily::<BigInt>::new(a_matrix()).unwrap();
    let z: f64 = zeta_closed(&fam, 2.0).unwrap();
    assert!(close(z, 2.0));
    assert_eq!(fam.torus_dim(), Some(2));
}

#[test]
fn exact_series_rationals() {
    // 1 + 3^{1-2} = 4/3 and (4/3)/(3/2) = 8/9, done exactly
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    let phi = r(1, 1) + r(1, 3);
    assert_eq!(phi, r(4, 3));
    assert_eq!(phi / r(3, 2), r(8, 9));
}

// ---- k-theory ----

#[test]
fn k_values() {
    let z = |r: usize, t: &[u64]| FGAbGroup::new(r, t);
    let (o3, o5, o2) = (k_cuntz(3).unwrap(), k_cuntz(5).unwrap(), k_cuntz(2).unwrap());
    assert_eq!((o3.k0.clone(), o3.k1.clone()), (z(0, &[2]), z(0, &[])));
    assert_eq!(o5.k0, z(0, &[4]));
    let k = kunneth(&o3, &o5);
    assert_eq!((k.k0, k.k1), (z(0, &[2]), z(0, &[2])));
    let k = kunneth(&o2, &o5);
    assert!(k.k0.is_zero() && k.k1.is_zero());

    let t = k_torsion_subalgebra(&[2, 3]).unwrap();
    assert!(t.groups.k0.is_zero() && t.groups.k1.is_zero());
    assert_eq!(t.status, Status::Theorem);
    let t = k_torsion_subalgebra(&[3, 5]).unwrap();
    assert_eq!((t.groups.k0, t.groups.k1), (z(0, &[2]), z(0, &[2])));

    let b = k_boundary_nxp(&[3, 5]).unwrap();
    assert_eq!((b.groups.k0, b.groups.k1), (z(2, &[2]), z(2, &[2])));
    let b = k_boundary_nxp(&[2]).unwrap();
    assert_eq!((b.groups.k0, b.groups.k1), (z(1, &[]), z(1, &[])));
    let b = k_boundary_nxp(&[2, 3]).unwrap();
    assert!(b.groups.k0.invariant_factors().is_empty() && b.groups.k1.invariant_factors().is_empty());
}

#[test]
fn snf_presentation_reassembles() {
    let m = IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]).unwrap();
    let s = snf(&m);
    assert_eq!(s.u.mul(&s.d).unwrap().mul(&s.v).unwrap(), m);
    assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
}
