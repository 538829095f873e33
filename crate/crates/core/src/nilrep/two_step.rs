use num_integer::Roots;

use super::character::{beta, central_characters, extend_character, is_two_step, radical, Character};
use super::matrix::Mat;
use super::rep::Representation;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};

/// Data of an induced representation `Ind_J^G`.
#[derive(Clone, Debug)]
pub struct InductionData {
    pub subgroup: Subgroup,
    /// Least element of each left coset `t J`, in enumeration order.
    pub transversal: Vec<usize>,
    pub inner: Representation,
}

/// One member of `Irr(G)` from the two-step construction.
#[derive(Clone, Debug)]
pub struct IrrEntry {
    pub rep: Representation,
    /// Index of the central character in [`central_characters`] order.
    pub chi: usize,
    /// Index of the extension to the radical.
    pub ext: usize,
    pub radical_order: usize,
    pub induction: InductionData,
}

/// `Ind_J^G(inner)` in the basis `t_i (x) v`, generators of `G` as the generating set.
pub fn induce(g: &FiniteGroup, j: &Subgroup, inner: &Representation) -> Result<(Representation, InductionData)> {
    let mut label = vec![usize::MAX; g.order()];
    let mut transversal = Vec::new();
    for x in 0..g.order() {
        if label[x] != usize::MAX {
            continue;
        }
        for &h in j.elements() {
            label[g.mul(x, h)] = transversal.len();
        }
        transversal.push(x);
    }
    let table = inner.image_table(g)?;
    let inv_t: Vec<usize> = transversal.iter().map(|&t| g.inv(t)).collect();
    let k = transversal.len();
    let mut images = Vec::new();
    for &s in g.generators() {
        let mut blocks: Vec<Vec<Option<Mat>>> = vec![vec![None; k]; k];
        for (c, &tc) in transversal.iter().enumerate() {
            let st = g.mul(s, tc);
            let r = label[st];
            let h = g.mul(inv_t[r], st);
            let m = table.get(h).ok_or_else(|| Error::CheckFailed("inducing data does not cover the subgroup".into()))?;
            blocks[r][c] = Some(m.clone());
        }
        images.push(Mat::from_blocks(&blocks, inner.dim, inner.conductor)?);
    }
    let rep = Representation::new(g.label(), g.generators().to_vec(), images)?.minimize_conductor();
    Ok((rep, InductionData { subgroup: j.clone(), transversal, inner: inner.clone() }))
}

/// Maximal isotropic subgroup for `beta_chi` containing the radical, built by
/// adjoining elements in enumeration order.
pub fn polarization(g: &FiniteGroup, chi: &Character) -> Result<Subgroup> {
    polarization_with(g, chi, 0..g.order(), &[])
}

/// Greedy polarization over a custom scan order. Each candidate is adjoined
/// together with its orbit under the given automorphisms (as element tables), so
/// the result is stable under them whenever the radical is.
pub fn polarization_with(
    g: &FiniteGroup,
    chi: &Character,
    scan: impl IntoIterator<Item = usize>,
    automorphisms: &[Vec<usize>],
) -> Result<Subgroup> {
    let r = radical(g, chi)?;
    let prod = g.order() as u128 * r.order() as u128;
    let target = prod.sqrt();
    if target * target != prod {
        return Err(Error::CheckFailed(format!("|G| |R| = {prod} is not a square")));
    }
    let mut j = r;
    for x in scan {
        if j.order() as u128 == target {
            break;
        }
        if j.contains(x) {
            continue;
        }
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            for aut in automorphisms {
                let c = aut[orbit[i]];
                if !orbit.contains(&c) {
                    orbit.push(c);
                }
            }
            i += 1;
        }
        let fresh: Vec<usize> = orbit.into_iter().filter(|&a| !j.contains(a)).collect();
        let mut isotropic = true;
        'outer: for &a in &fresh {
            for &b in j.generators().iter().chain(&fresh) {
                if beta(g, chi, a, b)? != 0 {
                    isotropic = false;
                    break 'outer;
                }
            }
        }
        if isotropic {
            j = j.join(g, &fresh);
        }
    }
    if j.order() as u128 != target {
        return Err(Error::CheckFailed(format!("greedy polarization stopped at order {} short of {target}", j.order())));
    }
    Ok(j)
}

/// `Irr(G | chi)` for one central character: one representation per extension of
/// `chi` to the radical, each induced from a polarization.
pub fn irr_two_step_over(g: &FiniteGroup, chi: &Character, chi_index: usize) -> Result<Vec<IrrEntry>> {
    irr_two_step_over_with(g, chi, chi_index, 0..g.order(), &[])
}

pub fn irr_two_step_over_with(
    g: &FiniteGroup,
    chi: &Character,
    chi_index: usize,
    scan: impl IntoIterator<Item = usize>,
    automorphisms: &[Vec<usize>],
) -> Result<Vec<IrrEntry>> {
    let r = radical(g, chi)?;
    let j = polarization_with(g, chi, scan, automorphisms)?;
    let mut out = Vec::new();
    for (ext, on_r) in extend_character(g, chi, &r, true)?.into_iter().enumerate() {
        let on_j = extend_character(g, &on_r, &j, false)?.remove(0);
        let inner = Representation::from_character(g, &on_j)?;
        let (mut rep, induction) = induce(g, &j, &inner)?;
        rep.central_character = Some(chi.clone());
        out.push(IrrEntry { rep, chi: chi_index, ext, radical_order: r.order(), induction });
    }
    Ok(out)
}

/// All of `Irr(G)` for a two-step nilpotent group, ordered by central character
/// and then by extension index.
pub fn irr_two_step(g: &FiniteGroup, cap: usize) -> Result<Vec<IrrEntry>> {
    if g.order() > cap {
        return Err(Error::CapExceeded { what: g.label().into(), size: g.order() as u128, cap: cap as u128 });
    }
    if !is_two_step(g) {
        return Err(Error::NotTwoStep);
    }
    let mut out = Vec::new();
    for (i, chi) in central_characters(g)?.iter().enumerate() {
        out.extend(irr_two_step_over(g, chi, i)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupSpec};

    #[test]
    fn abelian_gives_linear_characters() {
        let g = make_group(&GroupSpec::Abelian { invariants: vec![3, 3] }).unwrap();
        let irr = irr_two_step(&g, 1000).unwrap();
        assert_eq!(irr.len(), 9);
        assert!(irr.iter().all(|e| e.rep.dim == 1));
    }

    #[test]
    fn h3_dimensions() {
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap();
        let irr = irr_two_step(&g, 1000).unwrap();
        let mut dims: Vec<usize> = irr.iter().map(|e| e.rep.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, [vec![1; 9], vec![3; 2]].concat());
        assert_eq!(irr.iter().map(|e| e.rep.dim * e.rep.dim).sum::<usize>(), 27);
        for e in &irr {
            assert!(e.rep.is_monomial());
            e.rep.image_table(&g).unwrap();
        }
    }

    #[test]
    fn h3_polarization_under_greedy_scan() {
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap();
        let chi = central_characters(&g).unwrap().remove(1);
        let j = polarization(&g, &chi).unwrap();
        assert_eq!(j.order(), 9);
        // the first non-central element in enumeration order is (0, 0, 1)
        assert!(j.contains(g.index(&[0, 0, 1])));
        assert!(j.contains(g.index(&[1, 0, 0])));
    }

    #[test]
    fn trivial_character_polarizes_to_whole_group() {
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap();
        let chi = central_characters(&g).unwrap().remove(0);
        assert_eq!(polarization(&g, &chi).unwrap().order(), 27);
    }

    #[test]
    fn h5_nontrivial_dimension_is_nine() {
        let g = make_group(&GroupSpec::Heisenberg { n: 2, r: 3, t: 1 }).unwrap();
        let chi = central_characters(&g).unwrap().remove(1);
        let irr = irr_two_step_over(&g, &chi, 1).unwrap();
        assert_eq!(irr.len(), 1);
        assert_eq!(irr[0].radical_order, 3);
        assert_eq!(irr[0].rep.dim, 9);
    }
}
