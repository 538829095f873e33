use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupSpec};

/// Outcome of an axiom check over triples of elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub group: String,
    pub triples_checked: u64,
    pub exhaustive: bool,
    pub failures: u64,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// `(ab)c = a(bc)` on all triples when `|G| <= exhaustive_limit`, otherwise on
/// `samples` random triples. Identity and inverse laws are checked on the same range.
pub fn check_group_axioms(g: &FiniteGroup, exhaustive_limit: usize, samples: u64, seed: u64) -> AxiomReport {
    let n = g.order();
    let mut failures = 0u64;
    let unit_laws = |a: usize| g.mul(0, a) == a && g.mul(a, 0) == a && g.mul(a, g.inv(a)) == 0 && g.mul(g.inv(a), a) == 0;
    let (triples, exhaustive) = if n <= exhaustive_limit {
        failures += (0..n).filter(|&a| !unit_laws(a)).count() as u64;
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                        failures += 1;
                    }
                }
            }
        }
        ((n as u64).pow(3), true)
    } else {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..samples {
            let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            if !unit_laws(a) {
                failures += 1;
            }
            if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                failures += 1;
            }
        }
        (samples, false)
    };
    AxiomReport { group: g.label().to_string(), triples_checked: triples, exhaustive, failures }
}

/// Named relation and whether it holds.
pub type RelationCheck = (String, bool);

/// Defining relations of the family presentation, each evaluated with `multiply`.
pub fn check_presentation(g: &FiniteGroup) -> Vec<RelationCheck> {
    let Some(spec) = g.spec() else { return Vec::new() };
    let w = g.moduli().len();
    let unit = |i: usize, e: u64| {
        let mut c = vec![0; w];
        c[i] = e;
        g.index(&c)
    };
    let pw = |x: usize, k: u64| g.pow(x, k);
    let comm = |a: usize, b: usize| g.commutator(a, b);
    let mut out: Vec<RelationCheck> = Vec::new();
    let mut push = |name: String, ok: bool| out.push((name, ok));
    let central = |z: usize| (0..g.order()).all(|x| g.mul(x, z) == g.mul(z, x));
    match *spec {
        GroupSpec::HatH { r, t } => {
            let (x, y, z, z1, z2) = (unit(4, 1), unit(3, 1), unit(2, 1), unit(0, 1), unit(1, 1));
            push("x^r = 1".into(), pw(x, r) == 0);
            push("y^r = 1".into(), pw(y, r) == 0);
            push("z^(rt) = 1".into(), pw(z, r * t) == 0);
            push("[x,y] = z^t".into(), comm(x, y) == pw(z, t));
            push("[x,z] = z1".into(), comm(x, z) == z1);
            push("[y,z] = z2".into(), comm(y, z) == z2);
            push("z1^r = z2^r = 1".into(), pw(z1, r) == 0 && pw(z2, r) == 0);
            push("z1, z2 central".into(), central(z1) && central(z2));
            push("x, y, z generate".into(), super::Subgroup::generated(g, &[x, y, z]).order() == g.order());
        }
        GroupSpec::FGroup { n, r, t } => {
            let n = n as usize;
            let xs: Vec<usize> = (0..=n).map(|i| unit(i, 1 % g.moduli()[i])).collect();
            push("x_1^t = 1".into(), pw(xs[0], t) == 0);
            push("x_j^r = 1".into(), xs[1..].iter().all(|&x| pw(x, r) == 0));
            let mut idx = n + 1;
            for i in 0..=n {
                for j in i + 1..=n {
                    let zij = unit(idx, 1 % g.moduli()[idx]);
                    push(format!("[x_{},x_{}] = z_{}{}", i + 1, j + 1, i + 1, j + 1), comm(xs[i], xs[j]) == zij);
                    let e = if i == 0 { t } else { r };
                    push(format!("z_{}{}^{} = 1", i + 1, j + 1, e), pw(zij, e) == 0);
                    push(format!("z_{}{} central", i + 1, j + 1), central(zij));
                    idx += 1;
                }
            }
        }
        GroupSpec::Heisenberg { n, r, t } => {
            let n = n as usize;
            let a = unit(0, 1);
            push("a central".into(), central(a));
            for i in 0..n {
                let (b, c) = (unit(1 + i, 1), unit(1 + n + i, 1));
                push(format!("[c_{0},b_{0}] = a^t", i + 1), comm(c, b) == pw(a, t));
                for j in 0..n {
                    if j != i {
                        push(format!("[c_{},b_{}] = 1", i + 1, j + 1), comm(c, unit(1 + j, 1)) == 0);
                    }
                }
            }
            push("generators have order r".into(), g.generators().iter().all(|&s| pw(s, r) == 0));
        }
        GroupSpec::ExtraSpecialP2 { p, n } => {
            let n = n as usize;
            let a0 = unit(1, 1);
            for i in 0..n {
                let (a, b) = (unit(1 + 2 * i, 1), unit(2 + 2 * i, 1));
                push(format!("a_{}^(p^2) = 1", i + 1), pw(a, p * p) == 0);
                push(format!("b_{}^p = 1", i + 1), pw(b, p) == 0);
                push(format!("[a_{0},b_{0}] = a_{0}^p", i + 1), comm(a, b) == pw(a, p));
                push(format!("a_{}^p = a_1^p", i + 1), pw(a, p) == pw(a0, p));
                for j in i + 1..n {
                    let (a2, b2) = (unit(1 + 2 * j, 1), unit(2 + 2 * j, 1));
                    let ok = [a2, b2].iter().all(|&v| comm(a, v) == 0 && comm(b, v) == 0);
                    push(format!("blocks {} and {} commute", i + 1, j + 1), ok);
                }
            }
        }
        GroupSpec::Abelian { ref invariants } => {
            push("abelian".into(), g.is_abelian());
            let ok = g.generators().iter().all(|&s| {
                let i = g.coords(s).iter().position(|&c| c != 0).unwrap();
                g.element_order(s) as u64 == invariants[i]
            });
            push("generator orders".into(), ok);
        }
    }
    out
}
