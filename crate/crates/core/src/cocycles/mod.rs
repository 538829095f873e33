//! Closed-form multipliers and explicit representative cocycles.

mod closed_form;
mod reps;

use serde::{Deserialize, Serialize};

use crate::cohomology::{is_coboundary, CocycleTable, ORACLE_CAP};
use crate::error::{Error, Result};
use crate::groups::{make_group, CentralExtension, GroupSpec};

pub use closed_form::{schur_closed_form, Factor, Family, MultiplierDescriptor};
pub use reps::{
    canonicalize_h2n1, h2n1_as_abelian, h2n1_exponent, is_canonical_h2n1, pair_index, params_group, rep_cocycle_abelian,
    rep_cocycle_h2n1, rep_cocycle_h3, CocycleParams, TABLE_GROUP_CAP,
};

/// Default bound on the number of classes enumerated.
pub const CLASS_CAP: usize = 100_000;

/// How pairwise distinctness of an enumeration was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// No nonzero parameter tuple gives a coboundary, checked by the oracle.
    /// Tables are additive in the parameters, so this is pairwise distinctness.
    Oracle,
    /// The group is above the oracle cap; distinctness rests on the class count.
    AssertedByClassCount,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassReps {
    pub group: GroupSpec,
    pub entries: Vec<(CocycleParams, CocycleTable)>,
    pub certification: Certification,
}

/// Odometer over `bounds`, first position slowest.
fn tuples(bounds: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        out = out.into_iter().flat_map(|t| (0..b).map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

fn params_for(spec: &GroupSpec) -> Result<Vec<CocycleParams>> {
    match *spec {
        GroupSpec::Heisenberg { n: 1, r, t } => Ok(tuples(&[r, r, t])
            .into_iter()
            .map(|v| CocycleParams::H3 { r, t, lambda: v[0], mu: v[1], delta: v[2] })
            .collect()),
        GroupSpec::Heisenberg { n, r, t } => {
            let dim = 2 * n as usize;
            let np = dim * (dim - 1) / 2;
            let mut bounds = vec![r; np];
            bounds[pair_index(0, n as usize, dim)] = t;
            bounds.extend(std::iter::repeat(t).take(dim));
            Ok(tuples(&bounds)
                .into_iter()
                .map(|v| CocycleParams::Heisenberg { n, r, t, pairs: v[..np].to_vec(), linear: v[np..].to_vec() })
                .collect())
        }
        GroupSpec::Abelian { ref invariants } => {
            let (t, rest) = invariants.split_first().ok_or_else(|| Error::InvalidParameter("empty invariants".into()))?;
            let r = rest.first().copied().unwrap_or(*t);
            if rest.iter().any(|&d| d != r) || r % t != 0 {
                return Err(Error::InvalidParameter(format!(
                    "abelian representatives need invariants of the form [t, r, .., r] with t | r, got {invariants:?}"
                )));
            }
            let k = rest.len() as u64;
            let dim = rest.len() + 1;
            let bounds: Vec<u64> = (0..dim).flat_map(|i| (i + 1..dim).map(move |_| if i == 0 { *t } else { r })).collect();
            Ok(tuples(&bounds).into_iter().map(|pairs| CocycleParams::Abelian { k, r, t: *t, pairs }).collect())
        }
        GroupSpec::ExtraSpecialP2 { n: 1, .. } => Ok(vec![]),
        _ => Err(Error::InvalidParameter(format!("no representative family for {}", spec.label()))),
    }
}

/// Number of classes the enumeration of `spec` would produce.
pub fn class_count(spec: &GroupSpec) -> Result<u128> {
    spec.validate()?;
    let d = match *spec {
        GroupSpec::Heisenberg { n, r, t } => schur_closed_form(Family::Heisenberg, n, r, t)?,
        GroupSpec::ExtraSpecialP2 { p, n } => schur_closed_form(Family::ExtraSpecial, n, p, 1)?,
        GroupSpec::Abelian { .. } => return Ok(params_count(spec)?),
        _ => return Err(Error::InvalidParameter(format!("no representative family for {}", spec.label()))),
    };
    d.order.ok_or_else(|| Error::InvalidParameter("infinite multiplier".into()))
}

fn params_count(spec: &GroupSpec) -> Result<u128> {
    let GroupSpec::Abelian { invariants } = spec else { unreachable!() };
    let (t, rest) = invariants.split_first().ok_or_else(|| Error::InvalidParameter("empty invariants".into()))?;
    let k = rest.len() as u64;
    let r = rest.first().copied().unwrap_or(*t);
    Ok(schur_closed_form(Family::Abelian, k, r, *t)?.order.unwrap_or(0))
}

/// One representative per class of `H^2(G, C^x)`, zero tuple first.
pub fn enumerate_class_reps(spec: &GroupSpec, cap: usize) -> Result<ClassReps> {
    let count = class_count(spec)?;
    if count > cap as u128 {
        return Err(Error::CapExceeded { what: format!("classes of {}", spec.label()), size: count, cap: cap as u128 });
    }
    let g = make_group(spec)?;
    let params = params_for(spec)?;
    let mut entries = Vec::with_capacity(params.len().max(1));
    for p in params {
        let t = p.table()?;
        entries.push((p, t));
    }
    if entries.is_empty() {
        // trivial multiplier: the zero cocycle on the group itself
        entries.push((CocycleParams::Trivial { spec: spec.clone() }, CocycleTable::zero(&g, 1)));
    }
    if entries.len() as u128 != count {
        return Err(Error::CheckFailed(format!("{} representatives, expected {count}", entries.len())));
    }
    let certification = if g.order() <= ORACLE_CAP {
        for (p, t) in &entries[1..] {
            if is_coboundary(&g, t)? {
                return Err(Error::CheckFailed(format!("representative {p:?} is a coboundary")));
            }
        }
        Certification::Oracle
    } else {
        Certification::AssertedByClassCount
    };
    Ok(ClassReps { group: spec.clone(), entries, certification })
}

/// Parameters `(lambda, mu, delta)` read off a character of `A = <z1, z2, z^r>` in the
/// hat-H extension: the exponents of `chi(z1)`, `chi(z2)` and `chi(z^r)`.
pub fn h3_params_from_character(ext: &CentralExtension, chi: &[u64]) -> Result<CocycleParams> {
    let Some(&GroupSpec::HatH { r, t }) = ext.star.spec() else {
        return Err(Error::FamilyMismatch(format!("{} is not a hat-H group", ext.star.label())));
    };
    if chi.len() != ext.a_basis.len() {
        return Err(Error::DimensionMismatch(format!("{} exponents for a basis of size {}", chi.len(), ext.a_basis.len())));
    }
    let mut it = chi.iter().copied();
    let mut take = |present: bool| if present { it.next().unwrap_or(0) } else { 0 };
    let (lambda, mu) = (take(r > 1), take(r > 1));
    let delta = take(t > 1);
    Ok(CocycleParams::H3 { r, t, lambda, mu, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{RngExt, SeedableRng};

    use crate::cohomology::{cohomologous, inflate_cocycle, transgress};
    use crate::groups::{hath_extension, stem_projection};

    #[test]
    fn h3_has_nine_classes() {
        let reps = enumerate_class_reps(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }, CLASS_CAP).unwrap();
        assert_eq!(reps.entries.len(), 9);
        assert_eq!(reps.certification, Certification::Oracle);
    }

    #[test]
    fn abelian_has_27_classes() {
        let reps = enumerate_class_reps(&GroupSpec::Abelian { invariants: vec![3, 3, 3] }, CLASS_CAP).unwrap();
        assert_eq!(reps.entries.len(), 27);
    }

    #[test]
    fn trivial_group_has_one_class() {
        let reps = enumerate_class_reps(&GroupSpec::Abelian { invariants: vec![1] }, CLASS_CAP).unwrap();
        assert_eq!(reps.entries.len(), 1);
        let reps = enumerate_class_reps(&GroupSpec::ExtraSpecialP2 { p: 3, n: 1 }, CLASS_CAP).unwrap();
        assert_eq!(reps.entries.len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let r = enumerate_class_reps(&GroupSpec::Heisenberg { n: 2, r: 3, t: 1 }, 100);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn h2n1_is_an_inflation() {
        let (h, _, pi) = stem_projection(2, 3, 1).unwrap();
        let pairs = [1, 0, 0, 0, 0, 0];
        let a = rep_cocycle_h2n1(2, 3, 1, &pairs, &[0; 4]).unwrap();
        let ab = h2n1_as_abelian(2, 3, 1, &pairs, &[0; 4]).table().unwrap();
        assert_eq!(inflate_cocycle(&ab, &h, &pi).unwrap(), a);
        let (pairs, linear) = ([0, 0, 2, 1, 0, 1], [0; 4]);
        let (h, _, pi) = stem_projection(2, 3, 3).unwrap();
        let a = rep_cocycle_h2n1(2, 3, 3, &pairs, &linear).unwrap();
        let ab = h2n1_as_abelian(2, 3, 3, &pairs, &linear).table().unwrap();
        assert_eq!(inflate_cocycle(&ab, &h, &pi).unwrap(), a);
    }

    #[test]
    fn diagonal_shift_is_a_coboundary() {
        // n = 2, r = 9, t = 3: shifting mu_{1,3}, mu_{2,4} by t adds the coboundary of -l_1
        let g = make_group(&GroupSpec::Heisenberg { n: 2, r: 9, t: 3 }).unwrap();
        let linear = [1, 0, 2, 0];
        let base = |d: [u64; 2]| vec![0, d[0], 1, 0, d[1], 2];
        let shifted = base([1 + 3, 5 + 3]);
        let mut canon = shifted.clone();
        canonicalize_h2n1(2, 9, 3, &mut canon);
        assert_eq!(canon, base([1, 5]));
        assert!(rep_cocycle_h2n1(2, 9, 3, &canon, &linear).is_err(), "59049 elements is above the table cap");
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..2000 {
            let (x, y) = (rng.random_range(0..g.order()), rng.random_range(0..g.order()));
            let (a, b) = (g.coords(x), g.coords(y));
            let diff = h2n1_exponent(9, 3, &shifted, &linear, &a, &b) + 9 - h2n1_exponent(9, 3, &canon, &linear, &a, &b);
            let lb = |v: &[u64]| 9 - v[0];
            let db = lb(&a) + lb(&b) + 9 - lb(&g.coords(g.mul(x, y)));
            assert_eq!(diff % 9, db % 9);
        }
    }

    fn rep_cocycle_h2n1_unchecked(g: &crate::groups::FiniteGroup, r: u64, t: u64, pairs: &[u64], linear: &[u64]) -> CocycleTable {
        CocycleTable::from_fn(g, r, |x, y| h2n1_exponent(r, t, pairs, linear, &g.coords(x), &g.coords(y)) as i64)
    }

    #[test]
    fn transgression_matches_h3_params() {
        let e = hath_extension(3, 3).unwrap();
        for chi in tuples(&e.a_orders) {
            let p = h3_params_from_character(&e, &chi).unwrap();
            let a = transgress(&e, &chi).unwrap();
            assert!(cohomologous(&e.quotient, &a, &p.table().unwrap()).unwrap(), "{chi:?}");
        }
    }

    #[test]
    fn small_t_diagonal_by_oracle() {
        let g = make_group(&GroupSpec::Heisenberg { n: 2, r: 3, t: 1 }).unwrap();
        let a = rep_cocycle_h2n1_unchecked(&g, 3, 1, &[0, 1, 0, 0, 1, 0], &[0; 4]);
        assert!(is_coboundary(&g, &a).unwrap());
        let b = rep_cocycle_h2n1(2, 3, 1, &[0, 0, 1, 0, 0, 0], &[0; 4]).unwrap();
        assert!(!cohomologous(&g, &a, &b).unwrap());
    }
}
