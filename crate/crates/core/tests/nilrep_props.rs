use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use schurrep::groups::{center, make_group, FiniteGroup, GroupSpec, Subgroup};
use schurrep::nilrep::{
    beta, central_characters, equivalent, irr_cyclic_tower, irr_two_step, irr_two_step_over, irr_two_step_over_with,
    is_irreducible, polarization_with, radical,
};

fn desk_groups() -> Vec<FiniteGroup> {
    [
        GroupSpec::Heisenberg { n: 1, r: 3, t: 1 },
        GroupSpec::Heisenberg { n: 1, r: 5, t: 1 },
        GroupSpec::Heisenberg { n: 2, r: 3, t: 1 },
        GroupSpec::Abelian { invariants: vec![3, 3, 3] },
    ]
    .iter()
    .map(|s| make_group(s).unwrap())
    .collect()
}

#[test]
fn dimension_law_and_completeness() {
    for g in desk_groups() {
        let irr = irr_two_step(&g, 1000).unwrap();
        let mut total = 0;
        for e in &irr {
            assert_eq!(e.rep.dim * e.rep.dim * e.radical_order, g.order(), "{}", g.label());
            total += e.rep.dim * e.rep.dim;
        }
        assert_eq!(total, g.order(), "{}", g.label());
    }
}

#[test]
fn central_character_and_monomiality() {
    for g in desk_groups() {
        let z = center(&g);
        for e in irr_two_step(&g, 1000).unwrap() {
            assert!(e.rep.is_monomial());
            let chi = e.rep.central_character.as_ref().unwrap();
            let table = e.rep.image_table(&g).unwrap();
            let m = e.rep.conductor;
            for &x in z.elements() {
                let s = table.get(x).unwrap().scalar_exponent().unwrap();
                let v = chi.value(x).unwrap();
                assert_eq!(s * chi.conductor, v * m, "{} at {x}", g.label());
            }
        }
    }
}

#[test]
fn reversed_scan_gives_equivalent_representations() {
    for g in desk_groups() {
        for (i, chi) in central_characters(&g).unwrap().iter().enumerate() {
            let a = irr_two_step_over(&g, chi, i).unwrap();
            let b = irr_two_step_over_with(&g, chi, i, (0..g.order()).rev(), &[]).unwrap();
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert!(equivalent(&g, &x.rep, &y.rep).unwrap(), "{} chi #{i}", g.label());
            }
        }
    }
}

#[test]
fn tower_agrees_with_two_step_on_f1() {
    // F_1(3,3): x_1, x_2 and z_12, each of order 3
    let g = make_group(&GroupSpec::FGroup { n: 1, r: 3, t: 3 }).unwrap();
    let n = Subgroup::generated(&g, &[g.index(&[0, 1, 0]), g.index(&[0, 0, 1])]);
    let tower = irr_cyclic_tower(&g, &n, g.index(&[1, 0, 0]), 1000).unwrap();
    let direct = irr_two_step(&g, 1000).unwrap();
    assert_eq!(tower.len(), direct.len());
    for e in &tower {
        assert!(is_irreducible(&e.rep).unwrap());
        let hits = direct
            .iter()
            .filter(|d| d.rep.dim == e.rep.dim && equivalent(&g, &d.rep, &e.rep).unwrap())
            .count();
        assert_eq!(hits, 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shuffled_polarizations_are_maximal_isotropic(chi_idx in 0usize..3, seed in any::<u64>()) {
        let g = make_group(&GroupSpec::Heisenberg { n: 2, r: 3, t: 1 }).unwrap();
        let chi = central_characters(&g).unwrap().remove(chi_idx);
        let mut scan: Vec<usize> = (0..g.order()).collect();
        scan.shuffle(&mut StdRng::seed_from_u64(seed));
        let j = polarization_with(&g, &chi, scan.clone(), &[]).unwrap();
        let r = radical(&g, &chi).unwrap();
        prop_assert_eq!(j.order() * j.order(), g.order() * r.order());
        for &a in j.generators() {
            for &b in j.generators() {
                prop_assert_eq!(beta(&g, &chi, a, b).unwrap(), 0);
            }
        }
        let a = irr_two_step_over(&g, &chi, chi_idx).unwrap();
        let b = irr_two_step_over_with(&g, &chi, chi_idx, scan, &[]).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(equivalent(&g, &x.rep, &y.rep).unwrap());
        }
    }
}
