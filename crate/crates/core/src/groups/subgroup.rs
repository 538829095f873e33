use serde::{Deserialize, Serialize};

use super::{FiniteGroup, QUOTIENT_TABLE_CAP};
use crate::error::{Error, Result};

/// Subgroup of a parent group, stored as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { elements: vec![0], generators: vec![] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { elements: (0..g.order()).collect(), generators: g.generators().to_vec() }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut gens: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
        gens.dedup();
        let mut seen = vec![false; g.order()];
        seen[0] = true;
        let mut elements = vec![0];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &s in &gens {
                let y = g.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Subgroup { elements, generators: gens }
    }

    /// Subgroup from its full element list; the caller guarantees closure.
    pub fn from_elements(g: &FiniteGroup, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut h = Subgroup { elements, generators: vec![] };
        h.generators = minimal_generators(g, &h);
        h
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Subgroup generated by `self` and extra elements.
    pub fn join(&self, g: &FiniteGroup, extra: &[usize]) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        Subgroup::generated(g, &gens)
    }

    pub fn is_central(&self, g: &FiniteGroup) -> bool {
        self.generators
            .iter()
            .all(|&a| g.generators().iter().all(|&s| g.mul(a, s) == g.mul(s, a)))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        self.generators.iter().all(|&a| g.generators().iter().all(|&s| self.contains(g.conjugate(s, a))))
    }
}

/// Elements commuting with every generator.
pub fn center(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    let elements: Vec<usize> =
        (0..g.order()).filter(|&x| gens.iter().all(|&s| g.mul(x, s) == g.mul(s, x))).collect();
    let mut z = Subgroup { elements, generators: vec![] };
    z.generators = minimal_generators(g, &z);
    z
}

/// Normal closure of the commutators of generators.
pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    let mut seeds = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            seeds.push(g.commutator(a, b));
        }
    }
    normal_closure(g, &seeds)
}

pub fn normal_closure(g: &FiniteGroup, seeds: &[usize]) -> Subgroup {
    let mut h = Subgroup::generated(g, seeds);
    loop {
        let extra: Vec<usize> = h
            .generators
            .iter()
            .flat_map(|&a| g.generators().iter().map(move |&s| (s, a)))
            .map(|(s, a)| g.conjugate(s, a))
            .filter(|&c| !h.contains(c))
            .collect();
        if extra.is_empty() {
            return h;
        }
        h = h.join(g, &extra);
    }
}

/// Greedy generating set in enumeration order.
pub(crate) fn minimal_generators(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut cur = Subgroup::trivial();
    for &x in h.elements() {
        if cur.order() == h.order() {
            break;
        }
        if !cur.contains(x) {
            gens.push(x);
            cur = Subgroup::generated(g, &gens);
        }
    }
    gens
}

/// Cyclic decomposition of an abelian subgroup: `(element, order)` pairs whose
/// direct product is `h`, every order greater than 1.
pub fn abelian_basis(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<(usize, u64)>> {
    let gens = minimal_generators(g, h);
    if gens.iter().enumerate().any(|(i, &a)| gens[i + 1..].iter().any(|&b| g.mul(a, b) != g.mul(b, a))) {
        return Err(Error::InvalidParameter("abelian basis of a non-abelian subgroup".into()));
    }
    let k = gens.len();
    if k == 0 {
        return Ok(vec![]);
    }
    let m = gens.iter().fold(1u64, |acc, &x| crate::zlinalg::lcm(acc, g.element_order(x) as u64));
    // exponent vectors along a spanning tree; every non-tree edge gives a relation
    let mut vec_of: std::collections::HashMap<usize, Vec<u64>> = Default::default();
    vec_of.insert(0, vec![0; k]);
    let mut queue = vec![0usize];
    let mut relations: Vec<Vec<u64>> = Vec::new();
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let vx = vec_of[&x].clone();
        for (j, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let mut v = vx.clone();
            v[j] = (v[j] + 1) % m;
            match vec_of.get(&y) {
                Some(vy) => {
                    let rel: Vec<u64> = v.iter().zip(vy).map(|(a, b)| (a + m - b) % m).collect();
                    if rel.iter().any(|&c| c != 0) {
                        relations.push(rel);
                    }
                }
                None => {
                    vec_of.insert(y, v);
                    queue.push(y);
                }
            }
        }
        i += 1;
    }
    let rel = crate::zlinalg::ModMatrix::from_rows(m, k, &relations)?;
    let s = crate::zlinalg::smith_mod(&rel, None);
    let mut out = Vec::new();
    for c in 0..k {
        let order = if c < s.rank() { crate::zlinalg::gcd(s.diag[c], m) } else { m };
        if order == 1 {
            continue;
        }
        let x = (0..k).fold(0usize, |acc, r| g.mul(acc, g.pow(gens[r], s.v_inv.get(c, r))));
        out.push((x, order));
    }
    Ok(out)
}

/// Homomorphism stored as the image of every domain element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    images: Vec<usize>,
    codomain_order: usize,
}

impl GroupHom {
    /// Builds `phi` from a function and checks `phi(x s) = phi(x) phi(s)` for every
    /// element `x` and generator `s`, which forces multiplicativity on all pairs.
    pub fn from_fn(domain: &FiniteGroup, codomain: &FiniteGroup, f: impl Fn(usize) -> usize) -> Result<Self> {
        let images: Vec<usize> = (0..domain.order()).map(f).collect();
        if images.iter().any(|&y| y >= codomain.order()) {
            return Err(Error::NotHomomorphism("image outside the codomain".into()));
        }
        if images[0] != 0 {
            return Err(Error::NotHomomorphism("identity not preserved".into()));
        }
        for x in 0..domain.order() {
            for &s in domain.generators() {
                if images[domain.mul(x, s)] != codomain.mul(images[x], images[s]) {
                    return Err(Error::NotHomomorphism(format!(
                        "{} -> {} fails on ({x}, {s})",
                        domain.label(),
                        codomain.label()
                    )));
                }
            }
        }
        Ok(GroupHom { images, codomain_order: codomain.order() })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { images: (0..g.order()).collect(), codomain_order: g.order() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn domain_order(&self) -> usize {
        self.images.len()
    }

    pub fn codomain_order(&self) -> usize {
        self.codomain_order
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len()).filter(|&x| self.images[x] == 0).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain_order];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }
}

/// Quotient by a central subgroup, materialized as a table. Cosets are numbered by
/// their least element, in enumeration order.
pub fn quotient_by_central(g: &FiniteGroup, a: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if !a.is_central(g) {
        return Err(Error::NotCentral(format!("subgroup of order {} in {}", a.order(), g.label())));
    }
    let q = g.order() / a.order();
    if q > QUOTIENT_TABLE_CAP {
        return Err(Error::CapExceeded { what: "quotient table".into(), size: q as u128, cap: QUOTIENT_TABLE_CAP as u128 });
    }
    let mut label = vec![usize::MAX; g.order()];
    let mut reps = Vec::with_capacity(q);
    for x in 0..g.order() {
        if label[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &y in a.elements() {
            label[g.mul(x, y)] = id;
        }
    }
    let mut table = vec![0u32; q * q];
    for (i, &x) in reps.iter().enumerate() {
        for (j, &y) in reps.iter().enumerate() {
            table[i * q + j] = label[g.mul(x, y)] as u32;
        }
    }
    let mut gens: Vec<usize> = g.generators().iter().map(|&s| label[s]).filter(|&s| s != 0).collect();
    gens.dedup();
    let quotient = FiniteGroup::from_table(format!("{}/A", g.label()), q, table, gens)?;
    let pi = GroupHom::from_fn(g, &quotient, |x| label[x])?;
    Ok((quotient, pi))
}
