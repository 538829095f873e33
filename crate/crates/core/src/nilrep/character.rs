use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{abelian_basis, center, derived_subgroup, FiniteGroup, Subgroup};
use crate::zlinalg::lcm;

/// Linear character `g -> zeta_M^e(g)` on a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub conductor: u64,
    domain: Subgroup,
    /// Exponents aligned with `domain.elements()`.
    exps: Vec<u64>,
}

impl Character {
    pub fn new(domain: Subgroup, conductor: u64, exps: Vec<u64>) -> Result<Self> {
        if exps.len() != domain.order() {
            return Err(Error::DimensionMismatch(format!("{} values on a subgroup of order {}", exps.len(), domain.order())));
        }
        let exps = exps.into_iter().map(|e| e % conductor).collect();
        Ok(Character { conductor, domain, exps })
    }

    pub fn trivial(domain: Subgroup) -> Self {
        let exps = vec![0; domain.order()];
        Character { conductor: 1, domain, exps }
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    /// Exponent at `x`, or `None` outside the domain.
    pub fn value(&self, x: usize) -> Option<u64> {
        self.domain.elements().binary_search(&x).ok().map(|i| self.exps[i])
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Same character with values in `mu_N`, `N` a multiple of the conductor.
    pub fn lift(&self, n: u64) -> Result<Self> {
        if n % self.conductor != 0 {
            return Err(Error::InvalidParameter(format!("cannot lift conductor {} to {n}", self.conductor)));
        }
        let f = n / self.conductor;
        Ok(Character { conductor: n, domain: self.domain.clone(), exps: self.exps.iter().map(|e| e * f).collect() })
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        let exps = h
            .elements()
            .iter()
            .map(|&x| self.value(x).ok_or_else(|| Error::InvalidParameter("restriction to a non-subgroup".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Character { conductor: self.conductor, domain: h.clone(), exps })
    }

    /// Checks `e(xs) = e(x) + e(s)` along every edge `x -> xs`, `s` a generator.
    pub fn is_homomorphism(&self, g: &FiniteGroup) -> bool {
        let m = self.conductor;
        self.domain.elements().iter().zip(&self.exps).all(|(&x, &ex)| {
            self.domain.generators().iter().all(|&s| {
                let es = self.value(s).expect("generator in domain");
                self.value(g.mul(x, s)) == Some((ex + es) % m)
            })
        })
    }

    /// Exponents on a list of elements, all in the domain.
    pub fn on(&self, elements: &[usize]) -> Option<Vec<u64>> {
        elements.iter().map(|&x| self.value(x)).collect()
    }
}

/// All characters of an abelian subgroup, in lexicographic order of their
/// exponent tuples on [`abelian_basis`]. Conductor is the exponent of `h`.
pub fn abelian_characters(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Character>> {
    let basis = abelian_basis(g, h)?;
    let m = basis.iter().fold(1, |acc, &(_, o)| lcm(acc, o));
    let orders: Vec<u64> = basis.iter().map(|&(_, o)| o).collect();
    // coordinates of every element of h
    let mut coords: HashMap<usize, Vec<u64>> = HashMap::with_capacity(h.order());
    for c in tuples(&orders) {
        let x = basis.iter().zip(&c).fold(0, |acc, (&(b, _), &k)| g.mul(acc, g.pow(b, k)));
        coords.insert(x, c);
    }
    let mut out = Vec::new();
    for a in tuples(&orders) {
        let exps = h
            .elements()
            .iter()
            .map(|x| {
                let c = &coords[x];
                c.iter().zip(&a).zip(&orders).map(|((&ci, &ai), &o)| ci * ai % o * (m / o)).sum::<u64>() % m
            })
            .collect();
        out.push(Character { conductor: m, domain: h.clone(), exps });
    }
    Ok(out)
}

/// Odometer over `prod Z/o_i`, last index fastest.
pub(crate) fn tuples(orders: &[u64]) -> Vec<Vec<u64>> {
    let total: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0u64; orders.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for i in (0..orders.len()).rev() {
            cur[i] += 1;
            if cur[i] < orders[i] {
                break;
            }
            cur[i] = 0;
        }
    }
    out
}

/// All `|Z(G)|` characters of the center.
pub fn central_characters(g: &FiniteGroup) -> Result<Vec<Character>> {
    abelian_characters(g, &center(g))
}

/// True when `G' <= Z(G)`.
pub fn is_two_step(g: &FiniteGroup) -> bool {
    let z = center(g);
    derived_subgroup(g).elements().iter().all(|&x| z.contains(x))
}

/// `beta_chi(x, y) = chi([x, y])` as an exponent.
pub fn beta(g: &FiniteGroup, chi: &Character, x: usize, y: usize) -> Result<u64> {
    chi.value(g.commutator(x, y)).ok_or(Error::NotTwoStep)
}

/// Commutator pairing on `G/Z(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaForm {
    pub conductor: u64,
    /// Least element of each coset of the center.
    pub reps: Vec<usize>,
    /// `table[i * k + j] = beta(reps[i], reps[j])`.
    pub table: Vec<u64>,
}

impl BetaForm {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.table[i * self.reps.len() + j]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&e| e == 0)
    }
}

pub fn beta_form(g: &FiniteGroup, chi: &Character) -> Result<BetaForm> {
    let z = center(g);
    if !is_two_step(g) {
        return Err(Error::NotTwoStep);
    }
    if chi.domain().elements() != z.elements() {
        return Err(Error::InvalidParameter("character is not defined on the center".into()));
    }
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &c in z.elements() {
            seen[g.mul(x, c)] = true;
        }
    }
    let k = reps.len();
    let mut table = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            table[i * k + j] = beta(g, chi, reps[i], reps[j])?;
        }
    }
    Ok(BetaForm { conductor: chi.conductor, reps, table })
}

/// `R_chi`: elements pairing trivially with every generator.
pub fn radical(g: &FiniteGroup, chi: &Character) -> Result<Subgroup> {
    let mut elements = Vec::new();
    for x in 0..g.order() {
        let mut ok = true;
        for &s in g.generators() {
            if beta(g, chi, x, s)? != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            elements.push(x);
        }
    }
    Ok(Subgroup::from_elements(g, elements))
}

/// All extensions of `chi` from its domain `H` to `K >= H`, canonical one first.
///
/// The domain is grown one element at a time; at each step the new value is an
/// `s`-th root of an existing value, and roots are listed by increasing exponent.
/// Values live in `mu_M` with `M = lcm(conductor, exp(K))`.
pub fn extend_character(g: &FiniteGroup, chi: &Character, k: &Subgroup, all: bool) -> Result<Vec<Character>> {
    if !chi.domain().is_subgroup_of(k) {
        return Err(Error::InvalidParameter("target does not contain the domain".into()));
    }
    let gens = k.generators();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            if chi.value(g.commutator(a, b)).is_some_and(|e| e != 0) {
                return Err(Error::CheckFailed("character is nontrivial on a commutator of the target".into()));
            }
        }
    }
    let exp_k = k.elements().iter().fold(1, |acc, &x| lcm(acc, g.element_order(x) as u64));
    let m = lcm(chi.conductor, exp_k);
    let base: HashMap<usize, u64> = chi.lift(m)?.domain.elements().iter().copied().zip(chi.lift(m)?.exps).collect();
    let mut partial = vec![base];
    let mut done = Vec::new();
    while let Some(cur) = partial.pop() {
        if cur.len() == k.order() {
            let exps = k.elements().iter().map(|x| cur[x]).collect();
            let c = Character { conductor: m, domain: k.clone(), exps };
            if !c.is_homomorphism(g) {
                return Err(Error::CheckFailed("character does not extend to the target".into()));
            }
            done.push(c);
            if !all {
                break;
            }
            continue;
        }
        let x = *k.elements().iter().find(|x| !cur.contains_key(x)).expect("domain smaller than target");
        let mut s = 1u64;
        let mut p = x;
        while !cur.contains_key(&p) {
            p = g.mul(p, x);
            s += 1;
        }
        let e = cur[&p];
        let roots: Vec<u64> = (0..m).filter(|&v| (v as u128 * s as u128 % m as u128) as u64 == e).collect();
        if roots.is_empty() {
            return Err(Error::CheckFailed("no root of the required order in the conductor".into()));
        }
        // pushed in reverse so the smallest root is explored first
        for &v in roots.iter().rev() {
            let mut next = cur.clone();
            let mut xi = 0usize;
            for i in 0..s {
                for (&h, &eh) in &cur {
                    next.insert(g.mul(xi, h), (eh + i * v) % m);
                }
                xi = g.mul(xi, x);
            }
            partial.push(next);
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupSpec};

    #[test]
    fn heisenberg_center_characters() {
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap();
        let chars = central_characters(&g).unwrap();
        assert_eq!(chars.len(), 3);
        assert!(chars[0].is_trivial());
        for c in &chars {
            let z = c.domain().elements();
            for &a in z {
                for &b in z {
                    assert_eq!(c.value(g.mul(a, b)), Some((c.value(a).unwrap() + c.value(b).unwrap()) % c.conductor));
                }
            }
        }
    }

    #[test]
    fn trivial_center() {
        let g = make_group(&GroupSpec::Abelian { invariants: vec![] }).unwrap();
        let chars = central_characters(&g).unwrap();
        assert_eq!(chars.len(), 1);
        assert!(chars[0].is_trivial());
    }

    #[test]
    fn beta_and_radical_on_h3() {
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap();
        let chars = central_characters(&g).unwrap();
        let b0 = beta_form(&g, &chars[0]).unwrap();
        assert!(b0.is_zero());
        assert_eq!(radical(&g, &chars[0]).unwrap().order(), 27);
        let chi = chars.iter().find(|c| c.value(g.index(&[1, 0, 0])) == Some(1)).unwrap();
        let (x, y) = (g.index(&[0, 1, 0]), g.index(&[0, 0, 1]));
        // [x, y] is a power of the central generator; its exponent under chi is nonzero
        let e = beta(&g, chi, x, y).unwrap();
        assert_eq!(Some(e), chi.value(g.commutator(x, y)));
        assert_ne!(e, 0);
        let bf = beta_form(&g, chi).unwrap();
        for i in 0..bf.reps.len() {
            assert_eq!(bf.get(i, i), 0);
        }
        assert_eq!(radical(&g, chi).unwrap().order(), 3);
    }

    #[test]
    fn abelian_radical_is_everything() {
        let g = make_group(&GroupSpec::Abelian { invariants: vec![3, 9] }).unwrap();
        for c in central_characters(&g).unwrap() {
            assert_eq!(radical(&g, &c).unwrap().order(), 27);
        }
    }

    #[test]
    fn extension_from_3z9() {
        let g = make_group(&GroupSpec::Abelian { invariants: vec![9] }).unwrap();
        let h = Subgroup::generated(&g, &[3]);
        let chi = Character::new(h.clone(), 3, h.elements().iter().map(|&x| (x / 3) as u64).collect()).unwrap();
        let exts = extend_character(&g, &chi, &Subgroup::whole(&g), true).unwrap();
        assert_eq!(exts.len(), 3);
        let at1: Vec<u64> = exts.iter().map(|c| c.value(1).unwrap()).collect();
        assert_eq!(at1, vec![1, 4, 7]);
        assert_eq!(exts[0].conductor, 9);
        let same = extend_character(&g, &chi, &h, true).unwrap();
        assert_eq!(same.len(), 1);
        assert_eq!(same[0].exponents(), chi.exponents());
    }

    #[test]
    fn extension_count_is_index() {
        let g = make_group(&GroupSpec::Abelian { invariants: vec![3, 3, 9] }).unwrap();
        let h = Subgroup::generated(&g, &[g.index(&[0, 0, 3])]);
        let chi = Character::trivial(h);
        let exts = extend_character(&g, &chi, &Subgroup::whole(&g), true).unwrap();
        assert_eq!(exts.len(), 81 / 3);
        let distinct: std::collections::HashSet<Vec<u64>> = exts.iter().map(|c| c.exponents().to_vec()).collect();
        assert_eq!(distinct.len(), exts.len());
    }
}
