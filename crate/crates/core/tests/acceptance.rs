//! Acceptance criteria, one line of output each. Runs without the libtest harness.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use schurrep::cocycles::{
    enumerate_class_reps, h3_params_from_character, schur_closed_form, CocycleParams, Family,
};
use schurrep::cohomology::{check_cocycle_identity, cohomologous, multiplier_order, transgress};
use schurrep::groups::audit::{check_group_axioms, check_presentation};
use schurrep::groups::{hath_extension, make_group, FiniteGroup, GroupSpec};
use schurrep::nilrep::{
    central_characters, equivalent, irr_two_step, irr_two_step_over, irr_two_step_over_with, Representation,
};
use schurrep::projrep::{
    classify, fiber_of_h2n1_class, inflation_fiber_size, irr_hath, projreps_abelian, projreps_heisenberg_big,
    verify_alpha_rep,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn group(spec: GroupSpec) -> Result<FiniteGroup, String> {
    ok(make_group(&spec))
}

fn ac1_multiplier_orders() -> Outcome {
    let cases = [
        (Family::Heisenberg, 1, 3, 1, 9u128),
        (Family::Heisenberg, 1, 3, 3, 27),
        (Family::Heisenberg, 1, 5, 1, 25),
        (Family::Abelian, 2, 3, 3, 27),
        (Family::ExtraSpecial, 1, 3, 1, 1),
    ];
    let mut seen = Vec::new();
    for (fam, n, r, t, expected) in cases {
        let d = ok(schur_closed_form(fam, n, r, t))?;
        ensure!(d.order == Some(expected), "{fam:?} n={n} r={r} t={t}: closed form {:?}", d.order);
        let g = ok(make_group(&d.group_spec().ok_or("no finite group")?))?;
        let oracle = ok(multiplier_order(&g, None))?.multiplier_order as u128;
        ensure!(oracle == expected, "{}: oracle {oracle}, expected {expected}", g.label());
        seen.push(format!("{}={oracle}", g.label()));
    }
    Ok(seen.join(", "))
}

fn ac2_cocycle_identity() -> Outcome {
    let specs = [
        GroupSpec::Heisenberg { n: 1, r: 3, t: 1 },
        GroupSpec::Heisenberg { n: 1, r: 3, t: 3 },
        GroupSpec::Heisenberg { n: 1, r: 5, t: 1 },
        GroupSpec::Heisenberg { n: 2, r: 3, t: 1 },
        GroupSpec::Abelian { invariants: vec![3, 3] },
        GroupSpec::Abelian { invariants: vec![3, 3, 3] },
        GroupSpec::Abelian { invariants: vec![3, 9, 9] },
    ];
    let (mut tables, mut triples) = (0u64, 0u64);
    for spec in specs {
        let g = group(spec.clone())?;
        ensure!(g.order() <= 729, "{} above 729", g.label());
        for (p, a) in ok(enumerate_class_reps(&spec, 100_000))?.entries {
            let chk = check_cocycle_identity(&g, &a, 729, 0);
            ensure!(chk.passed(), "{}: {p:?} fails the identity", g.label());
            ensure!(chk.triples_checked == (g.order() as u64).pow(3), "{}: not exhaustive", g.label());
            tables += 1;
            triples += chk.triples_checked;
        }
    }
    Ok(format!("{tables} tables, {triples} triples"))
}

fn ac3_distinctness() -> Outcome {
    let mut out = Vec::new();
    for (spec, expected) in
        [(GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }, 9usize), (GroupSpec::Abelian { invariants: vec![3, 3, 3] }, 27)]
    {
        let g = group(spec.clone())?;
        let reps = ok(enumerate_class_reps(&spec, 1000))?.entries;
        ensure!(reps.len() == expected, "{}: {} representatives", g.label(), reps.len());
        let mut pairs = 0;
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                ensure!(!ok(cohomologous(&g, &reps[i].1, &reps[j].1))?, "{}: #{i} ~ #{j}", g.label());
                pairs += 1;
            }
        }
        out.push(format!("{}: {pairs} pairs distinct", g.label()));
    }
    Ok(out.join(", "))
}

fn ac4_hat_h_audit() -> Outcome {
    let ext = ok(hath_extension(3, 1))?;
    ensure!(ext.star.order() == 243, "|HatH(3,1)| = {}", ext.star.order());
    let irr = ok(irr_hath(&ext.star, 1000))?;
    let total: usize = irr.iter().map(|r| r.dim * r.dim).sum();
    ensure!(total == 243, "sum of squared dimensions {total}");
    let table = ok(classify(&irr, &ext))?;
    ensure!(table.classes.len() == 9, "{} classes", table.classes.len());
    let h = &ext.quotient;
    let trivial = &table.classes[0];
    ensure!(trivial.class_id == vec![0, 0], "first class {:?}", trivial.class_id);
    let mut dims: Vec<usize> = trivial.reps.iter().map(|r| r.dim).collect();
    dims.sort_unstable();
    ensure!(dims == [vec![1; 9], vec![3; 2]].concat(), "trivial class dims {dims:?}");
    // the trivial class is Irr(H_3(Z/3)) up to equivalence
    let ordinary = ok(irr_two_step(h, 1000))?;
    for rho in &trivial.reps {
        ensure!(rho.alpha.is_zero(), "trivial class has a nonzero cocycle");
        let gens = h.generators().to_vec();
        let images = gens.iter().map(|&s| rho.images[s].clone()).collect();
        let as_rep = ok(Representation::new(h.label(), gens, images))?;
        let hits = ordinary
            .iter()
            .filter(|e| e.rep.dim == as_rep.dim)
            .map(|e| equivalent(h, &e.rep, &as_rep))
            .collect::<Result<Vec<bool>, _>>()
            .map_err(|e| e.to_string())?;
        ensure!(hits.iter().filter(|&&b| b).count() == 1, "trivial-class rep not matched once");
    }
    let mut pairs = 0;
    for c in &table.classes {
        ensure!(c.sum_dim_sq() == 27, "class {:?}: sum {}", c.class_id, c.sum_dim_sq());
        for rho in &c.reps {
            let chk = ok(verify_alpha_rep(h, rho, 0, 0))?;
            ensure!(chk.passed() && chk.exhaustive, "class {:?}: twisted law fails", c.class_id);
            pairs += chk.pairs_checked;
        }
    }
    Ok(format!("|G*| = 243, {} irreps, 9 classes, {pairs} pairs verified", irr.len()))
}

fn ac5_f1_audit() -> Outcome {
    let table = ok(projreps_abelian(1, 3, 3, 1000))?;
    ensure!(table.classes.len() == 3, "{} classes", table.classes.len());
    let g = group(GroupSpec::Abelian { invariants: vec![3, 3] })?;
    for c in &table.classes[1..] {
        let dims: Vec<usize> = c.reps.iter().map(|r| r.dim).collect();
        ensure!(dims == vec![3], "class {:?} dims {dims:?}", c.class_id);
        ensure!(ok(verify_alpha_rep(&g, &c.reps[0], 0, 0))?.passed(), "twisted law fails");
    }
    ensure!(table.classes[0].sum_dim_sq() == 9, "trivial class sum");
    Ok("3 classes, nontrivial classes one 3-dim irrep each".into())
}

fn ac6_two_step() -> Outcome {
    let mut out = Vec::new();
    for spec in [
        GroupSpec::Heisenberg { n: 1, r: 3, t: 1 },
        GroupSpec::Heisenberg { n: 1, r: 5, t: 1 },
        GroupSpec::Heisenberg { n: 2, r: 3, t: 1 },
        GroupSpec::Abelian { invariants: vec![3, 3, 3] },
    ] {
        let g = group(spec)?;
        let mut total = 0;
        let mut count = 0;
        for (i, chi) in ok(central_characters(&g))?.iter().enumerate() {
            let a = ok(irr_two_step_over(&g, chi, i))?;
            let b = ok(irr_two_step_over_with(&g, chi, i, (0..g.order()).rev(), &[]))?;
            ensure!(a.len() == b.len(), "{}: polarizations give different counts", g.label());
            for (x, y) in a.iter().zip(&b) {
                ensure!(x.rep.dim * x.rep.dim * x.radical_order == g.order(), "{}: dimension law", g.label());
                ensure!(ok(equivalent(&g, &x.rep, &y.rep))?, "{}: polarization dependence", g.label());
                total += x.rep.dim * x.rep.dim;
                count += 1;
            }
        }
        ensure!(total == g.order(), "{}: sum {total}", g.label());
        out.push(format!("{}: {count} irreps", g.label()));
    }
    Ok(out.join(", "))
}

/// Pfaffian of the alternating form of a 4-variable pair tuple, mod 3.
fn pfaffian_mod3(p: &[u64]) -> u64 {
    (p[0] * p[5] + 2 * p[1] * p[4] + p[2] * p[3]) % 3
}

fn ac7_central_product() -> Outcome {
    let spec = GroupSpec::Heisenberg { n: 2, r: 3, t: 1 };
    let classes = ok(enumerate_class_reps(&spec, 1000))?.entries;
    ensure!(classes.len() == 243, "{} classes", classes.len());
    ensure!(ok(inflation_fiber_size(2, 3, 1))? == 3, "fiber size by counting");
    // every class is hit by inflation
    for (p, _) in &classes {
        let f = ok(fiber_of_h2n1_class(p))?;
        ensure!(f.members.len() == 3 && f.oracle_confirmed == Some(true), "fiber of {p:?}");
    }
    // sample: the first nontrivial classes whose preimage form is nondegenerate
    let sample: Vec<CocycleParams> = classes
        .iter()
        .map(|(p, _)| p.clone())
        .filter(|p| matches!(p, CocycleParams::Heisenberg { pairs, .. } if pfaffian_mod3(pairs) != 0))
        .take(5)
        .collect();
    ensure!(sample.len() == 5, "only {} sample classes", sample.len());
    let runs = ok(projreps_heisenberg_big(&sample, 59_049))?;
    for run in &runs {
        ensure!(run.class_confirmed == Some(true), "{:?}: inflated cocycle outside the class", run.params);
        let dims: Vec<usize> = run.reps.iter().map(|r| r.dim).collect();
        ensure!(dims == vec![9], "{:?}: dims {dims:?}", run.params);
        for c in &run.checks {
            ensure!(c.passed() && c.exhaustive && c.pairs_checked == 243 * 243, "{:?}: {c:?}", run.params);
        }
    }
    Ok("243 classes, fibers of size 3, 5 sampled classes with one 9-dim rep over 59049 pairs".into())
}

fn ac8_transgression() -> Outcome {
    let ext = ok(hath_extension(3, 1))?;
    let mut n = 0;
    for a in 0..3 {
        for b in 0..3 {
            let chi = [a, b];
            let tra = ok(transgress(&ext, &chi))?;
            let rep = ok(ok(h3_params_from_character(&ext, &chi))?.table())?;
            ensure!(ok(cohomologous(&ext.quotient, &tra, &rep))?, "chi = {chi:?}");
            n += 1;
        }
    }
    Ok(format!("{n} characters"))
}

fn ac9_group_axioms() -> Outcome {
    let specs = [
        GroupSpec::Heisenberg { n: 1, r: 3, t: 1 },
        GroupSpec::Heisenberg { n: 2, r: 3, t: 1 },
        GroupSpec::Abelian { invariants: vec![3, 3] },
        GroupSpec::HatH { r: 3, t: 1 },
        GroupSpec::FGroup { n: 1, r: 3, t: 3 },
        GroupSpec::ExtraSpecialP2 { p: 3, n: 1 },
        GroupSpec::ExtraSpecialP2 { p: 3, n: 2 },
    ];
    let mut out = Vec::new();
    for spec in specs {
        let g = group(spec)?;
        let rep = check_group_axioms(&g, 729, 200_000, 9);
        ensure!(rep.passed(), "{}: {} associativity failures", g.label(), rep.failures);
        ensure!(rep.exhaustive == (g.order() <= 729), "{}: wrong check mode", g.label());
        let rels = check_presentation(&g);
        ensure!(!rels.is_empty(), "{}: no relations", g.label());
        for (name, holds) in rels {
            ensure!(holds, "{}: {name}", g.label());
        }
        out.push(format!("{}{}", g.label(), if rep.exhaustive { "" } else { " (sampled)" }));
    }
    Ok(out.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("AC1 multiplier orders", ac1_multiplier_orders),
        ("AC2 cocycle identity", ac2_cocycle_identity),
        ("AC3 representative distinctness", ac3_distinctness),
        ("AC4 representation group of H_3(Z/3)", ac4_hat_h_audit),
        ("AC5 representation group of (Z/3)^2", ac5_f1_audit),
        ("AC6 two-step construction", ac6_two_step),
        ("AC7 inflation to H_5(Z/3)", ac7_central_product),
        ("AC8 transgression", ac8_transgression),
        ("AC9 group axioms", ac9_group_axioms),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("{name}: PASS ({detail}) [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("{name}: FAIL ({why}) [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
