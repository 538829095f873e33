use std::collections::HashSet;

use proptest::prelude::*;
use schurrep::cohomology::{
    check_cocycle_identity, coboundary, cocycle_space, cohomologous, is_coboundary, multiplier_order, nu_pairing,
    CocycleTable,
};
use schurrep::groups::{make_group, FiniteGroup, GroupSpec};

fn ab(inv: &[u64]) -> FiniteGroup {
    make_group(&GroupSpec::Abelian { invariants: inv.to_vec() }).unwrap()
}

/// Every normalized table on a tiny group, filtered by the full identity.
fn brute_force_cocycles(g: &FiniteGroup, m: u64) -> Vec<CocycleTable> {
    let n = g.order();
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).collect();
    let total = (m as usize).pow(cells.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut t = CocycleTable::zero(g, m);
        let mut c = code;
        for &(x, y) in &cells {
            t.table[x * n + y] = (c % m as usize) as u64;
            c /= m as usize;
        }
        if check_cocycle_identity(g, &t, 64, 0).passed() {
            out.push(t);
        }
    }
    out
}

#[test]
fn cocycle_counts_match_enumeration() {
    for (inv, m) in [(vec![2u64], 2u64), (vec![3], 3), (vec![2], 4), (vec![2, 2], 2), (vec![4], 2)] {
        let g = ab(&inv);
        let brute = brute_force_cocycles(&g, m);
        let space = cocycle_space(&g, m).unwrap();
        let size: u64 = space.invariants().iter().product();
        assert_eq!(size as usize, brute.len(), "{inv:?} mod {m}");
        for (t, _) in space.basis_tables(&g) {
            assert!(check_cocycle_identity(&g, &t, 64, 0).passed());
        }
        // coboundaries of all b
        let n = g.order();
        let mut cob = HashSet::new();
        for code in 0..(m as usize).pow(n as u32 - 1) {
            let mut b = vec![0u64; n];
            let mut c = code;
            for v in b.iter_mut().skip(1) {
                *v = (c % m as usize) as u64;
                c /= m as usize;
            }
            cob.insert(coboundary(&g, m, &b).unwrap().table);
        }
        let classes = brute.len() / cob.len();
        let report = multiplier_order(&g, Some(m)).unwrap();
        assert_eq!(report.h2_invariants.iter().product::<u64>() as usize, classes, "{inv:?} mod {m}");
    }
}

#[test]
fn coboundaries_are_cocycles() {
    let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap();
    let b: Vec<u64> = (0..27).map(|i| if i == 0 { 0 } else { (i * i + 1) as u64 % 9 }).collect();
    let d = coboundary(&g, 9, &b).unwrap();
    assert!(check_cocycle_identity(&g, &d, 27, 0).passed());
    assert!(is_coboundary(&g, &d).unwrap());
}

#[test]
fn modulus_choice_does_not_matter() {
    for spec in [
        GroupSpec::Heisenberg { n: 1, r: 3, t: 1 },
        GroupSpec::Abelian { invariants: vec![3, 3, 3] },
        GroupSpec::ExtraSpecialP2 { p: 3, n: 1 },
        GroupSpec::Abelian { invariants: vec![2, 4] },
    ] {
        let g = make_group(&spec).unwrap();
        let a = multiplier_order(&g, None).unwrap();
        let b = multiplier_order(&g, Some(g.order() as u64)).unwrap();
        assert_eq!(a.multiplier_invariants, b.multiplier_invariants, "{}", g.label());
    }
}

#[test]
fn z2_by_z4_multiplier() {
    let g = ab(&[2, 4]);
    assert_eq!(multiplier_order(&g, Some(8)).unwrap().multiplier_invariants, vec![2]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nu_is_a_class_invariant(b in prop::collection::vec(0u64..9, 9), which in 0usize..2) {
        let g = ab(&[3, 3]);
        let alpha = CocycleTable::from_fn(&g, 9, |x, y| {
            let (cx, cy) = (g.coords(x), g.coords(y));
            (3 * cx[1 - which] * cy[which]) as i64
        });
        let mut b = b;
        b[0] = 0;
        let shifted = alpha.add(&coboundary(&g, 9, &b).unwrap()).unwrap();
        prop_assert_eq!(nu_pairing(&g, &alpha).unwrap(), nu_pairing(&g, &shifted).unwrap());
        prop_assert!(cohomologous(&g, &alpha, &shifted).unwrap());
        prop_assert!(!is_coboundary(&g, &alpha).unwrap());
    }
}
