use super::character::{central_characters, is_two_step};
use super::intertwine::{find_isomorphism, intertwiners};
use super::matrix::Mat;
use super::rep::{ImageTable, Representation};
use super::two_step::{induce, irr_two_step, irr_two_step_over_with};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::zlinalg::lcm;

/// A subgroup materialized as a standalone group, with index maps both ways.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub group: FiniteGroup,
    /// Parent index of each element of `group`.
    pub emb: Vec<usize>,
    back: Vec<usize>,
}

impl Embedded {
    pub fn new(g: &FiniteGroup, n: &Subgroup, label: &str) -> Result<Self> {
        let emb = n.elements().to_vec();
        let mut back = vec![usize::MAX; g.order()];
        for (i, &x) in emb.iter().enumerate() {
            back[x] = i;
        }
        let k = emb.len();
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                let p = back[g.mul(emb[i], emb[j])];
                if p == usize::MAX {
                    return Err(Error::InvalidParameter("element list is not closed".into()));
                }
                table[i * k + j] = p as u32;
            }
        }
        let gens = n.generators().iter().map(|&s| back[s]).collect();
        let group = FiniteGroup::from_table(format!("{label} in {}", g.label()), k, table, gens)?;
        Ok(Embedded { group, emb, back })
    }

    pub fn local(&self, x: usize) -> Option<usize> {
        self.back.get(x).copied().filter(|&i| i != usize::MAX)
    }

    /// Moves a representation of the standalone group into parent indices.
    pub fn push(&self, parent: &FiniteGroup, rho: &Representation) -> Representation {
        Representation {
            group: parent.label().into(),
            gens: rho.gens.iter().map(|&s| self.emb[s]).collect(),
            central_character: None,
            ..rho.clone()
        }
    }

    /// Conjugation by a parent element normalizing the subgroup, as a local table.
    pub fn conjugation(&self, parent: &FiniteGroup, y: usize) -> Result<Vec<usize>> {
        self.emb
            .iter()
            .map(|&x| self.local(parent.conjugate(y, x)).ok_or_else(|| Error::InvalidParameter("element does not normalize".into())))
            .collect()
    }
}

/// Order of `yN` in `G/N`.
pub fn coset_order(g: &FiniteGroup, n: &Subgroup, y: usize) -> u64 {
    let mut k = 1;
    let mut p = y;
    while !n.contains(p) {
        p = g.mul(p, y);
        k += 1;
    }
    k
}

/// `rho^w(x) = rho(w x w^-1)` on the generators of `rho`.
fn conjugated_images(g: &FiniteGroup, rho: &Representation, table: &ImageTable, w: usize) -> Result<Vec<Mat>> {
    rho.gens
        .iter()
        .map(|&s| table.get(g.conjugate(w, s)).cloned().ok_or_else(|| Error::InvalidParameter("element does not normalize".into())))
        .collect()
}

/// `I_G(rho) = <N, y^k>` for the least `k >= 1` with `rho^(y^k) ~ rho`, decided by
/// solving for an invertible intertwiner.
pub fn inertia(g: &FiniteGroup, n: &Subgroup, rho: &Representation, y: usize) -> Result<(Subgroup, u64)> {
    let table = rho.image_table(g)?;
    let s_total = coset_order(g, n, y);
    let mut w = y;
    for k in 1..=s_total {
        let conj = Representation { images: conjugated_images(g, rho, &table, w)?, ..rho.clone() };
        if find_isomorphism(&conj, rho)?.is_some() {
            return Ok((n.join(g, &[w]), k));
        }
        w = g.mul(w, y);
    }
    unreachable!("y^s lies in N")
}

/// Extends `rho` from `N` to `<N, w>` for `w` normalizing `N` with `rho^w ~ rho`.
/// `delta(w) = lambda T` where `T rho(x) = rho(w x w^-1) T` and `lambda` is the
/// `s`-th root of `rho(w^s) T^-s` with the least exponent.
pub fn extend_rep_cyclic(g: &FiniteGroup, n: &Subgroup, rho: &Representation, w: usize) -> Result<Representation> {
    if n.contains(w) {
        return Ok(rho.clone());
    }
    let s = coset_order(g, n, w);
    let table = rho.image_table(g)?;
    let conj = conjugated_images(g, rho, &table, w)?;
    let basis = intertwiners(&rho.images, &conj)?;
    let t = match basis.as_slice() {
        [t] => t.clone(),
        [] => return Err(Error::CheckFailed("representation is not stable under the extending element".into())),
        _ => return Err(Error::CheckFailed("representation is not irreducible".into())),
    };
    let m0 = lcm(rho.conductor, t.conductor());
    let t = t.lift(m0)?;
    let ws = table.get(g.pow(w, s)).ok_or_else(|| Error::CheckFailed("w^s outside N".into()))?.lift(m0)?;
    // T^s = c rho(w^s) with c a scalar by Schur
    let c = t.pow(s)?.mul(&ws.inverse()?)?;
    let e = c.scalar_exponent().ok_or_else(|| Error::CheckFailed("extension scalar is not a root of unity".into()))?;
    // lambda^s = zeta_{m0}^-e; least exponent over conductor m0 * s
    let m = m0 * s;
    let k = (m0 - e % m0) % m0;
    let delta_w = t.lift(m)?.scale_root(k);
    let mut gens = rho.gens.clone();
    gens.push(w);
    let mut images: Vec<Mat> = rho.images.iter().map(|x| x.lift(m)).collect::<Result<_>>()?;
    images.push(delta_w);
    let delta = Representation::new(rho.group.clone(), gens, images)?.minimize_conductor();
    delta.image_table(g)?;
    Ok(delta)
}

/// One member of `Irr(G)` from the cyclic tower.
#[derive(Clone, Debug)]
pub struct TowerEntry {
    pub rep: Representation,
    /// Index of the orbit representative in `Irr(N)`.
    pub base: usize,
    /// `[I_G(rho) : N]`.
    pub inertia_index: u64,
    /// Twist by a character of `I/N`.
    pub twist: u64,
}

/// `Irr(G)` from `Irr(N)` for `N` normal and two-step with `G/N` cyclic on `yN`.
pub fn irr_cyclic_tower(g: &FiniteGroup, n: &Subgroup, y: usize, cap: usize) -> Result<Vec<TowerEntry>> {
    if g.order() > cap {
        return Err(Error::CapExceeded { what: g.label().into(), size: g.order() as u128, cap: cap as u128 });
    }
    if !n.is_normal(g) {
        return Err(Error::InvalidParameter("tower base is not normal".into()));
    }
    let s_total = coset_order(g, n, y);
    if s_total as usize * n.order() != g.order() {
        return Err(Error::InvalidParameter("quotient is not cyclic on the given element".into()));
    }
    if n.order() == g.order() {
        return Ok(irr_two_step(g, cap)?
            .into_iter()
            .enumerate()
            .map(|(i, e)| TowerEntry { rep: e.rep, base: i, inertia_index: 1, twist: 0 })
            .collect());
    }
    let local = Embedded::new(g, n, "N")?;
    let ng = &local.group;
    if !is_two_step(ng) {
        return Err(Error::NotTwoStep);
    }
    let aut = local.conjugation(g, y)?;
    // polarizations are taken y-stable whenever the central character is y-stable
    let mut irr_n = Vec::new();
    for (i, chi) in central_characters(ng)?.iter().enumerate() {
        let z = chi.domain();
        let stable = z.elements().iter().all(|&x| chi.value(aut[x]) == chi.value(x));
        let auts = if stable { vec![aut.clone()] } else { vec![] };
        for e in irr_two_step_over_with(ng, chi, i, 0..ng.order(), &auts)? {
            irr_n.push(local.push(g, &e.rep));
        }
    }
    let chars: Vec<Vec<CyclotomicNumber>> = irr_n.iter().map(|r| trace_vector(g, r, n)).collect::<Result<_>>()?;
    let mut seen = vec![false; irr_n.len()];
    let mut out = Vec::new();
    for i in 0..irr_n.len() {
        if seen[i] {
            continue;
        }
        // orbit under y by character comparison
        let mut w = y;
        let mut k_stab = s_total;
        for k in 1..=s_total {
            let conj = conjugate_traces(g, n, &chars[i], w);
            let j = chars.iter().position(|c| *c == conj).ok_or_else(|| Error::CheckFailed("conjugate is not in Irr(N)".into()))?;
            seen[j] = true;
            if j == i {
                k_stab = k;
                break;
            }
            w = g.mul(w, y);
        }
        let rho = &irr_n[i];
        let (inert, k) = inertia(g, n, rho, y)?;
        if k != k_stab {
            return Err(Error::CheckFailed("inertia by intertwiners disagrees with characters".into()));
        }
        let wk = g.pow(y, k);
        let delta = extend_rep_cyclic(g, n, rho, wk)?;
        let s_i = s_total / k;
        for twist in 0..s_i {
            let m = lcm(delta.conductor, s_i);
            let mut d = delta.lift(m)?;
            let last = d.images.len() - 1;
            if inert.order() != n.order() {
                d.images[last] = d.images[last].scale_root(twist * (m / s_i));
            }
            let d = d.minimize_conductor();
            let rep = if inert.order() == g.order() {
                d.regenerate(g, g.generators())?
            } else {
                induce(g, &inert, &d)?.0
            };
            out.push(TowerEntry { rep, base: i, inertia_index: s_i, twist });
        }
    }
    Ok(out)
}

fn trace_vector(g: &FiniteGroup, rho: &Representation, n: &Subgroup) -> Result<Vec<CyclotomicNumber>> {
    let table = rho.image_table(g)?;
    n.elements()
        .iter()
        .map(|&x| Ok(table.get(x).ok_or_else(|| Error::CheckFailed("rep does not cover N".into()))?.trace()))
        .collect()
}

/// Traces of `rho^w` from those of `rho`, both indexed by sorted elements of `N`.
fn conjugate_traces(g: &FiniteGroup, n: &Subgroup, tr: &[CyclotomicNumber], w: usize) -> Vec<CyclotomicNumber> {
    n.elements()
        .iter()
        .map(|&x| {
            let c = g.conjugate(w, x);
            tr[n.elements().binary_search(&c).expect("N is normal")].clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupSpec};
    use crate::nilrep::character::abelian_characters;
    use crate::nilrep::intertwine::is_irreducible;

    fn hath_base(g: &FiniteGroup) -> (Subgroup, usize) {
        // N = <x, z, z1, z2>, y = (0,0,0,1,0)
        let gens: Vec<usize> = [[0, 0, 0, 0, 1], [0, 0, 1, 0, 0], [1, 0, 0, 0, 0], [0, 1, 0, 0, 0]].iter().map(|c| g.index(c)).collect();
        (Subgroup::generated(g, &gens), g.index(&[0, 0, 0, 1, 0]))
    }

    #[test]
    fn trivial_rep_has_full_inertia() {
        let g = make_group(&GroupSpec::HatH { r: 3, t: 1 }).unwrap();
        let (n, y) = hath_base(&g);
        let triv = Representation::new(g.label(), n.generators().to_vec(), n.generators().iter().map(|_| Mat::identity(1, 1)).collect()).unwrap();
        let (i, k) = inertia(&g, &n, &triv, y).unwrap();
        assert_eq!(i.order(), g.order());
        assert_eq!(k, 1);
    }

    #[test]
    fn scalar_extension_takes_least_root() {
        // Z/9 over N = 3Z/9: extend zeta_3 on the generator 3
        let g = make_group(&GroupSpec::Abelian { invariants: vec![9] }).unwrap();
        let n = Subgroup::generated(&g, &[3]);
        let chi = abelian_characters(&g, &n).unwrap().remove(1);
        let rho = Representation::from_character(&g, &chi).unwrap();
        let delta = extend_rep_cyclic(&g, &n, &rho, 1).unwrap();
        assert_eq!(delta.image(&g, 1).unwrap().unwrap().scalar_exponent(), Some(1));
        assert_eq!(delta.conductor, 9);
        assert_eq!(extend_rep_cyclic(&g, &n, &rho, 3).unwrap().images, rho.images);
    }

    #[test]
    fn hath_3_1_is_complete() {
        let g = make_group(&GroupSpec::HatH { r: 3, t: 1 }).unwrap();
        let (n, y) = hath_base(&g);
        let irr = irr_cyclic_tower(&g, &n, y, 1000).unwrap();
        assert_eq!(irr.iter().map(|e| e.rep.dim * e.rep.dim).sum::<usize>(), 243);
        let mut dims: Vec<usize> = irr.iter().map(|e| e.rep.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, [vec![1; 9], vec![3; 26]].concat());
        for e in &irr {
            e.rep.image_table(&g).unwrap();
            assert!(is_irreducible(&e.rep).unwrap());
        }
    }

    #[test]
    fn one_dimensional_inertia_is_character_stabilizer() {
        let g = make_group(&GroupSpec::HatH { r: 3, t: 1 }).unwrap();
        let (n, y) = hath_base(&g);
        let local = Embedded::new(&g, &n, "N").unwrap();
        let irr = irr_two_step(&local.group, 1000).unwrap();
        for e in irr.iter().filter(|e| e.rep.dim == 1) {
            let rho = local.push(&g, &e.rep);
            let table = rho.image_table(&g).unwrap();
            let fixed = n.elements().iter().all(|&x| table.get(g.conjugate(y, x)) == table.get(x));
            let (_, k) = inertia(&g, &n, &rho, y).unwrap();
            assert_eq!(k == 1, fixed);
        }
    }
}
