use super::{make_group, make_group_capped, FiniteGroup, GroupHom, GroupSpec, Subgroup};
use crate::error::{Error, Result};

/// Central extension `1 -> A -> G* -> G -> 1` with a fixed section.
///
/// `A` comes with an ordered basis of cyclic generators; characters of `A` and
/// class ids are exponent tuples on this basis.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub star: FiniteGroup,
    pub quotient: FiniteGroup,
    pub a: Subgroup,
    /// Basis of `A`, `A` being the internal direct product of the cyclic groups they generate.
    pub a_basis: Vec<usize>,
    pub a_orders: Vec<u64>,
    pub pi: GroupHom,
    /// `section[q]` is the canonical lift of `q`.
    pub section: Vec<usize>,
    a_coords: Vec<Option<Vec<u64>>>,
}

impl CentralExtension {
    pub fn new(star: FiniteGroup, quotient: FiniteGroup, a_basis: Vec<usize>, pi: GroupHom) -> Result<Self> {
        let a = Subgroup::generated(&star, &a_basis);
        if !a.is_central(&star) {
            return Err(Error::NotCentral(format!("kernel of {} -> {}", star.label(), quotient.label())));
        }
        let kernel = pi.kernel();
        if kernel != a.elements() {
            return Err(Error::CheckFailed("kernel of the projection differs from A".into()));
        }
        if !pi.is_surjective() {
            return Err(Error::CheckFailed("projection is not surjective".into()));
        }
        let a_orders: Vec<u64> = a_basis.iter().map(|&g| star.element_order(g) as u64).collect();
        let mut a_coords = vec![None; star.order()];
        let mut tuples = vec![(0usize, vec![0u64; a_basis.len()])];
        for (i, &g) in a_basis.iter().enumerate() {
            let mut next = Vec::new();
            for (x, t) in &tuples {
                let mut y = *x;
                for e in 0..a_orders[i] {
                    let mut t2 = t.clone();
                    t2[i] = e;
                    next.push((y, t2));
                    y = star.mul(y, g);
                }
            }
            tuples = next;
        }
        if tuples.len() != a.order() {
            return Err(Error::CheckFailed("A basis does not give a direct product".into()));
        }
        for (x, t) in tuples {
            if a_coords[x].is_some() {
                return Err(Error::CheckFailed("A basis does not give a direct product".into()));
            }
            a_coords[x] = Some(t);
        }
        // least element of every fiber
        let mut section = vec![usize::MAX; quotient.order()];
        for x in 0..star.order() {
            let q = pi.apply(x);
            if section[q] == usize::MAX {
                section[q] = x;
            }
        }
        Ok(CentralExtension { star, quotient, a, a_basis, a_orders, pi, section, a_coords })
    }

    pub fn a_order(&self) -> usize {
        self.a.order()
    }

    /// Exponents of an element of `A` on the basis; `None` outside `A`.
    pub fn a_coordinates(&self, x: usize) -> Option<&[u64]> {
        self.a_coords[x].as_deref()
    }

    #[inline]
    pub fn mu(&self, q: usize) -> usize {
        self.section[q]
    }

    /// `mu(x) mu(y) mu(xy)^-1`, an element of `A`.
    pub fn defect(&self, x: usize, y: usize) -> usize {
        let g = &self.star;
        let xy = self.quotient.mul(x, y);
        g.mul(g.mul(self.mu(x), self.mu(y)), g.inv(self.mu(xy)))
    }

    /// Whether `A` lies in the derived subgroup of `G*`.
    pub fn is_stem(&self) -> bool {
        let d = super::derived_subgroup(&self.star);
        self.a.is_subgroup_of(&d)
    }
}

/// `HatH(r,t) -> H^t_3(Z/r)`, `(k,l,m,n,p) -> (m mod r, n, p)`, `A = <z1, z2, z^r>`.
pub fn hath_extension(r: u64, t: u64) -> Result<CentralExtension> {
    let star = make_group(&GroupSpec::HatH { r, t })?;
    let h = make_group(&GroupSpec::Heisenberg { n: 1, r, t })?;
    let pi = GroupHom::from_fn(&star, &h, |x| {
        let c = star.coords(x);
        h.index(&[c[2] % r, c[3], c[4]])
    })?;
    let basis = vec![star.index(&[1, 0, 0, 0, 0]), star.index(&[0, 1, 0, 0, 0]), star.index(&[0, 0, r, 0, 0])];
    let basis = basis.into_iter().filter(|&x| x != 0).collect();
    CentralExtension::new(star, h, basis, pi)
}

/// `F_n(r,t) -> Z/t + (Z/r)^n` onto the `x` exponents, `A = <z_ij>`.
pub fn fgroup_extension(n: u64, r: u64, t: u64) -> Result<CentralExtension> {
    fgroup_extension_capped(n, r, t, super::DEFAULT_GROUP_CAP)
}

pub fn fgroup_extension_capped(n: u64, r: u64, t: u64, cap: u128) -> Result<CentralExtension> {
    let spec = GroupSpec::FGroup { n, r, t };
    let star = make_group_capped(&spec, cap)?;
    let mut inv = vec![t];
    inv.extend(std::iter::repeat(r).take(n as usize));
    let q = make_group(&GroupSpec::Abelian { invariants: inv })?;
    let k = n as usize + 1;
    let pi = GroupHom::from_fn(&star, &q, |x| q.index(&star.coords(x)[..k]))?;
    let width = star.moduli().len();
    let basis = (k..width)
        .map(|i| {
            let mut c = vec![0; width];
            c[i] = 1;
            star.index(&c)
        })
        .filter(|&x| x != 0)
        .collect();
    CentralExtension::new(star, q, basis, pi)
}

/// Abelianization map `H^t_{2n+1}(Z/r) -> Z/t + (Z/r)^{2n}`, `(a, b, c) -> (a mod t, b, c)`.
pub fn stem_projection(n: u64, r: u64, t: u64) -> Result<(FiniteGroup, FiniteGroup, GroupHom)> {
    let h = make_group(&GroupSpec::Heisenberg { n, r, t })?;
    let mut inv = vec![t];
    inv.extend(std::iter::repeat(r).take(2 * n as usize));
    let q = make_group(&GroupSpec::Abelian { invariants: inv })?;
    let g = GroupHom::from_fn(&h, &q, |x| {
        let mut c = h.coords(x);
        c[0] %= t;
        q.index(&c)
    })?;
    Ok((h, q, g))
}

/// `ES_{2n+1}(p^2) -> (Z/p)^{2n}`, forgetting the central coordinate.
pub fn extraspecial_to_abelian(p: u64, n: u64) -> Result<(FiniteGroup, FiniteGroup, GroupHom)> {
    let es = make_group(&GroupSpec::ExtraSpecialP2 { p, n })?;
    let q = make_group(&GroupSpec::Abelian { invariants: vec![p; 2 * n as usize] })?;
    let g = GroupHom::from_fn(&es, &q, |x| q.index(&es.coords(x)[1..]))?;
    Ok((es, q, g))
}
