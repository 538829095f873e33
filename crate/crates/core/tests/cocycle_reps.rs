use proptest::prelude::*;
use schurrep::cocycles::{
    enumerate_class_reps, rep_cocycle_abelian, rep_cocycle_h2n1, rep_cocycle_h3, schur_closed_form, Certification,
    Family, CLASS_CAP,
};
use schurrep::cohomology::{check_cocycle_identity, multiplier_order, nu_pairing};
use schurrep::groups::{make_group, GroupSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn h3_tables_are_cocycles(rt in prop::sample::select(vec![(3u64, 1u64), (3, 3), (5, 1), (5, 5)]), l in 0u64..5, m in 0u64..5, d in 0u64..5) {
        let (r, t) = rt;
        let a = rep_cocycle_h3(r, t, l % r, m % r, d % t).unwrap();
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r, t }).unwrap();
        prop_assert!(a.is_normalized());
        prop_assert!(check_cocycle_identity(&g, &a, 729, 0).passed());
    }

    #[test]
    fn abelian_tables_are_cocycles(rt in prop::sample::select(vec![(3u64, 3u64), (9, 3), (3, 1)]), e in prop::collection::vec(0u64..9, 3)) {
        let (r, t) = rt;
        let pairs = vec![e[0] % t, e[1] % t, e[2] % r];
        let a = rep_cocycle_abelian(2, r, t, &pairs).unwrap();
        let g = make_group(&GroupSpec::Abelian { invariants: vec![t, r, r] }).unwrap();
        prop_assert!(check_cocycle_identity(&g, &a, 729, 0).passed());
        // the alternating form vanishes only for the zero tuple
        let nu = nu_pairing(&g, &a).unwrap();
        prop_assert_eq!(nu.is_zero(), pairs.iter().all(|&p| p == 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn h3_over_z9_tables_are_cocycles(l in 0u64..9, m in 0u64..9, d in 0u64..3) {
        let a = rep_cocycle_h3(9, 3, l, m, d).unwrap();
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 9, t: 3 }).unwrap();
        let chk = check_cocycle_identity(&g, &a, 0, 50_000);
        prop_assert!(chk.passed());
    }

    #[test]
    fn h2n1_tables_are_cocycles(t in prop::sample::select(vec![1u64, 3]), e in prop::collection::vec(0u64..3, 10)) {
        let mut pairs = e[..6].to_vec();
        pairs[1] %= t;
        let linear: Vec<u64> = e[6..].iter().map(|v| v % t).collect();
        let a = rep_cocycle_h2n1(2, 3, t, &pairs, &linear).unwrap();
        let g = make_group(&GroupSpec::Heisenberg { n: 2, r: 3, t }).unwrap();
        prop_assert!(check_cocycle_identity(&g, &a, 729, 0).passed());
    }
}

#[test]
fn class_counts_match_closed_form_and_oracle() {
    let cases = [
        (GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }, Family::Heisenberg, 1, 3, 1),
        (GroupSpec::Heisenberg { n: 1, r: 3, t: 3 }, Family::Heisenberg, 1, 3, 3),
        (GroupSpec::Abelian { invariants: vec![3, 3, 3] }, Family::Abelian, 2, 3, 3),
        (GroupSpec::Abelian { invariants: vec![1, 3, 3] }, Family::Abelian, 2, 3, 1),
    ];
    for (spec, fam, n, r, t) in cases {
        let reps = enumerate_class_reps(&spec, CLASS_CAP).unwrap();
        let closed = schur_closed_form(fam, n, r, t).unwrap();
        assert_eq!(reps.entries.len() as u128, closed.order.unwrap(), "{spec:?}");
        assert_eq!(reps.certification, Certification::Oracle);
        let g = make_group(&spec).unwrap();
        assert_eq!(multiplier_order(&g, None).unwrap().multiplier_order as u128, closed.order.unwrap());
    }
}

#[test]
fn h5_enumeration_is_certified() {
    let reps = enumerate_class_reps(&GroupSpec::Heisenberg { n: 2, r: 3, t: 1 }, CLASS_CAP).unwrap();
    assert_eq!(reps.entries.len(), 243);
    assert_eq!(reps.certification, Certification::Oracle);
}
