//! Normal-form arithmetic for the supported group families, plus subgroups,
//! quotients and homomorphisms.
//!
//! Elements are addressed by their index in the lexicographic enumeration of
//! coordinate tuples (first coordinate most significant). Index 0 is always
//! the identity.

pub mod audit;
mod extension;
mod family;
mod subgroup;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use extension::{
    extraspecial_to_abelian, fgroup_extension, fgroup_extension_capped, hath_extension, stem_projection,
    CentralExtension,
};
pub use family::GroupSpec;
pub use subgroup::{abelian_basis, center, derived_subgroup, normal_closure, quotient_by_central, GroupHom, Subgroup};

/// Default bound on the number of elements of a constructed group.
pub const DEFAULT_GROUP_CAP: u128 = 1_000_000;
/// Groups up to this order get a cached multiplication table.
pub const TABLE_CACHE_CAP: usize = 2048;
/// Largest quotient materialized as an explicit table.
pub const QUOTIENT_TABLE_CAP: usize = 10_000;

/// Coordinate tuple of a group element, each residue in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

#[derive(Clone, Debug)]
enum Law {
    Spec(GroupSpec),
    Table(Arc<Vec<u32>>),
}

#[derive(Debug)]
struct Cache {
    mul: Vec<u32>,
    inv: Vec<u32>,
}

/// A finite group with exact multiplication.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    label: String,
    law: Law,
    moduli: Vec<u64>,
    order: usize,
    generators: Vec<usize>,
    cache: Arc<OnceLock<Option<Cache>>>,
}

/// Builds a group, refusing anything above [`DEFAULT_GROUP_CAP`] elements.
pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    make_group_capped(spec, DEFAULT_GROUP_CAP)
}

pub fn make_group_capped(spec: &GroupSpec, cap: u128) -> Result<FiniteGroup> {
    spec.validate()?;
    let size = spec.order();
    if size > cap {
        return Err(Error::CapExceeded { what: spec.label(), size, cap });
    }
    let moduli = spec.moduli();
    let mut g = FiniteGroup {
        label: spec.label(),
        law: Law::Spec(spec.clone()),
        moduli,
        order: size as usize,
        generators: Vec::new(),
        cache: Default::default(),
    };
    g.generators = spec.generator_coords().iter().map(|c| g.index(c)).collect();
    Ok(g)
}

impl FiniteGroup {
    /// Group given by a full multiplication table on `0..order`, identity at 0.
    pub fn from_table(label: impl Into<String>, order: usize, table: Vec<u32>, generators: Vec<usize>) -> Result<Self> {
        if table.len() != order * order {
            return Err(Error::DimensionMismatch(format!("table of length {} for order {order}", table.len())));
        }
        if order == 0 || (0..order).any(|i| table[i] as usize != i || table[i * order] as usize != i) {
            return Err(Error::InvalidParameter("index 0 must be the identity".into()));
        }
        Ok(FiniteGroup {
            label: label.into(),
            law: Law::Table(Arc::new(table)),
            moduli: vec![order as u64],
            order,
            generators,
            cache: Default::default(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        match &self.law {
            Law::Spec(s) => Some(s),
            Law::Table(_) => None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Mixed-radix index of a coordinate tuple (residues are reduced first).
    pub fn index(&self, coords: &[u64]) -> usize {
        let mut idx = 0usize;
        for (&c, &m) in coords.iter().zip(&self.moduli) {
            idx = idx * m as usize + (c % m) as usize;
        }
        idx
    }

    pub fn coords(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (slot, &m) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = (idx % m as usize) as u64;
            idx /= m as usize;
        }
        out
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        GroupElement(self.coords(idx))
    }

    fn check_element(&self, e: &GroupElement) -> Result<()> {
        if e.0.len() != self.moduli.len() || e.0.iter().zip(&self.moduli).any(|(&c, &m)| c >= m) {
            return Err(Error::FamilyMismatch(format!("{:?} is not an element of {}", e.0, self.label)));
        }
        Ok(())
    }

    /// Product of two coordinate tuples.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.element(self.mul(self.index(&a.0), self.index(&b.0))))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_element(a)?;
        Ok(self.element(self.inv(self.index(&a.0))))
    }

    fn cache(&self) -> Option<&Cache> {
        self.cache
            .get_or_init(|| {
                if self.order > TABLE_CACHE_CAP {
                    return None;
                }
                let n = self.order;
                let mut mul = vec![0u32; n * n];
                for a in 0..n {
                    for b in 0..n {
                        mul[a * n + b] = self.mul_uncached(a, b) as u32;
                    }
                }
                let mut inv = vec![0u32; n];
                for a in 0..n {
                    for b in 0..n {
                        if mul[a * n + b] == 0 {
                            inv[a] = b as u32;
                            break;
                        }
                    }
                }
                Some(Cache { mul, inv })
            })
            .as_ref()
    }

    fn mul_uncached(&self, a: usize, b: usize) -> usize {
        match &self.law {
            Law::Table(t) => t[a * self.order + b] as usize,
            Law::Spec(s) => self.index(&s.multiply(&self.moduli, &self.coords(a), &self.coords(b))),
        }
    }

    /// Product of elements given by index.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.cache() {
            Some(c) => c.mul[a * self.order + b] as usize,
            None => self.mul_uncached(a, b),
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        if let Some(c) = self.cache() {
            return c.inv[a] as usize;
        }
        let o = self.element_order(a);
        self.pow(a, o as u64 - 1)
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut acc = 0;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, g| num_integer::lcm(acc, self.element_order(g) as u64))
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(ab, self.inv(ba))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Portable description: family, parameters, order, generators.
    pub fn describe(&self) -> GroupDescription {
        GroupDescription {
            label: self.label.clone(),
            spec: self.spec().cloned(),
            order: self.order as u64,
            generators: self.generators.iter().map(|&g| self.coords(g)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescription {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spec: Option<GroupSpec>,
    pub order: u64,
    pub generators: Vec<Vec<u64>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3() -> FiniteGroup {
        make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(h3().order(), 27);
        assert_eq!(make_group(&GroupSpec::HatH { r: 3, t: 1 }).unwrap().order(), 243);
        assert_eq!(make_group(&GroupSpec::FGroup { n: 1, r: 3, t: 3 }).unwrap().order(), 27);
        assert_eq!(make_group(&GroupSpec::ExtraSpecialP2 { p: 3, n: 1 }).unwrap().order(), 27);
    }

    #[test]
    fn heisenberg_products() {
        let g = h3();
        let e = |v: [u64; 3]| GroupElement(v.to_vec());
        assert_eq!(g.multiply(&e([0, 1, 0]), &e([0, 0, 1])).unwrap(), e([0, 1, 1]));
        assert_eq!(g.multiply(&e([0, 0, 1]), &e([0, 1, 0])).unwrap(), e([1, 1, 1]));
        for i in 0..g.order() {
            assert_eq!(g.mul(0, i), i);
            assert_eq!(g.mul(i, g.inv(i)), 0);
        }
    }

    #[test]
    fn validation() {
        assert!(make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 2 }).is_err());
        assert!(make_group(&GroupSpec::HatH { r: 4, t: 1 }).is_err());
        assert!(make_group(&GroupSpec::ExtraSpecialP2 { p: 4, n: 1 }).is_err());
        let big = GroupSpec::Heisenberg { n: 3, r: 9, t: 1 };
        assert!(matches!(make_group(&big), Err(Error::CapExceeded { .. })));
        let g = h3();
        assert!(g.multiply(&GroupElement(vec![0, 0]), &GroupElement(vec![0, 0, 0])).is_err());
        assert!(g.multiply(&GroupElement(vec![3, 0, 0]), &GroupElement(vec![0, 0, 0])).is_err());
    }

    #[test]
    fn index_roundtrip() {
        let g = make_group(&GroupSpec::HatH { r: 3, t: 3 }).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.index(&g.coords(i)), i);
        }
        assert_eq!(g.coords(1), vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn full_t_gives_abelian() {
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 3 }).unwrap();
        assert!(g.is_abelian());
        assert!(!h3().is_abelian());
    }

    #[test]
    fn describe_serializes() {
        let d = h3().describe();
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"family\":\"heisenberg\""));
        assert_eq!(serde_json::from_str::<GroupDescription>(&s).unwrap(), d);
    }
}
