use serde::{Deserialize, Serialize};

use super::{classify, inflate_rep, pushdown, verify_alpha_rep, AlphaCheck, ClassifiedTable, ProjClass, ProjectiveRep};
use crate::cocycles::{
    canonicalize_h2n1, h2n1_as_abelian, h3_params_from_character, pair_index, rep_cocycle_h2n1, schur_closed_form,
    CocycleParams, Family,
};
use crate::cohomology::{character_values, cohomologous, ORACLE_CAP};
use crate::error::{Error, Result};
use crate::groups::{
    center, extraspecial_to_abelian, fgroup_extension_capped, hath_extension, make_group, stem_projection, CentralExtension,
    FiniteGroup, GroupSpec, Subgroup,
};
use crate::nilrep::{extend_character, irr_cyclic_tower, irr_two_step, irr_two_step_over, Character, Representation};

/// Seed for sampled pair checks.
const CHECK_SEED: u64 = 7;
const CHECK_SAMPLES: u64 = 20_000;

fn check_cap(ext: &CentralExtension, cap: usize) -> Result<()> {
    if ext.star.order() > cap {
        return Err(Error::CapExceeded { what: ext.star.label().into(), size: ext.star.order() as u128, cap: cap as u128 });
    }
    Ok(())
}

fn check_multiplier(ext: &CentralExtension, family: Family, n: u64, r: u64, t: u64) -> Result<()> {
    let expected = schur_closed_form(family, n, r, t)?.order;
    if expected != Some(ext.a_order() as u128) {
        return Err(Error::CheckFailed(format!("|A| = {} but the multiplier has order {expected:?}", ext.a_order())));
    }
    if !ext.is_stem() {
        return Err(Error::CheckFailed("A is not contained in the derived subgroup".into()));
    }
    Ok(())
}

fn check_classes(table: &ClassifiedTable, expected: usize) -> Result<()> {
    if table.classes.len() != expected {
        return Err(Error::CheckFailed(format!("{} classes, expected {expected}", table.classes.len())));
    }
    for c in &table.classes {
        if c.sum_dim_sq() != table.order {
            return Err(Error::CheckFailed(format!(
                "class {:?} has sum of squared dimensions {}, expected {}",
                c.class_id,
                c.sum_dim_sq(),
                table.order
            )));
        }
    }
    Ok(())
}

/// Classified projective representations of `H^t_3(Z/r)` through the hat-H group.
pub fn projreps_h3(r: u64, t: u64, cap: usize) -> Result<ClassifiedTable> {
    let spec = GroupSpec::HatH { r, t };
    spec.validate()?;
    if spec.order() > cap as u128 {
        return Err(Error::CapExceeded { what: spec.label(), size: spec.order(), cap: cap as u128 });
    }
    let ext = hath_extension(r, t)?;
    check_multiplier(&ext, Family::Heisenberg, 1, r, t)?;
    let irr = irr_hath(&ext.star, cap)?;
    let mut table = classify(&irr, &ext)?;
    for c in &mut table.classes {
        c.params = Some(h3_params_from_character(&ext, &c.class_id)?);
    }
    check_classes(&table, ext.a_order())?;
    Ok(table)
}

/// `Irr` of a hat-H group by the cyclic tower over `N = <x, z, z1, z2>`, which is
/// two-step with `G/N` cyclic on `y`.
pub fn irr_hath(g: &FiniteGroup, cap: usize) -> Result<Vec<Representation>> {
    if !matches!(g.spec(), Some(GroupSpec::HatH { .. })) {
        return Err(Error::FamilyMismatch(format!("{} is not a hat-H group", g.label())));
    }
    let gens: Vec<usize> =
        [[0, 0, 0, 0, 1], [0, 0, 1, 0, 0], [1, 0, 0, 0, 0], [0, 1, 0, 0, 0]].iter().map(|c| g.index(c)).collect();
    let n = Subgroup::generated(g, &gens);
    Ok(irr_cyclic_tower(g, &n, g.index(&[0, 0, 0, 1, 0]), cap)?.into_iter().map(|e| e.rep).collect())
}

/// Pair positions of `Z/t + (Z/r)^n` with their moduli, `mu_{1,j}` first.
fn pair_moduli(n: u64, r: u64, t: u64) -> Vec<u64> {
    let k = n as usize + 1;
    (0..k).flat_map(|i| (i + 1..k).map(move |_| if i == 0 { t } else { r })).collect()
}

/// Abelian parameters whose table is the transgression of `chi` in `F_n(r,t)`.
/// The section defect is `z_ij^(-y_i x_j)`, so each exponent is negated.
pub fn abelian_params_from_character(n: u64, r: u64, t: u64, chi: &[u64]) -> Result<CocycleParams> {
    let moduli = pair_moduli(n, r, t);
    let mut it = chi.iter();
    let mut pairs = Vec::with_capacity(moduli.len());
    for &o in &moduli {
        if o == 1 {
            pairs.push(0);
            continue;
        }
        let &e = it.next().ok_or_else(|| Error::DimensionMismatch("too few character exponents".into()))?;
        pairs.push((o - e % o) % o);
    }
    if it.next().is_some() {
        return Err(Error::DimensionMismatch("too many character exponents".into()));
    }
    Ok(CocycleParams::Abelian { k: n, r, t, pairs })
}

/// Inverse of [`abelian_params_from_character`].
pub fn character_from_abelian_params(params: &CocycleParams) -> Result<(u64, u64, u64, Vec<u64>)> {
    let CocycleParams::Abelian { k, r, t, pairs } = params else {
        return Err(Error::FamilyMismatch("abelian parameters expected".into()));
    };
    let moduli = pair_moduli(*k, *r, *t);
    if moduli.len() != pairs.len() {
        return Err(Error::DimensionMismatch(format!("{} pair exponents, expected {}", pairs.len(), moduli.len())));
    }
    let chi = moduli.iter().zip(pairs).filter(|(&o, _)| o > 1).map(|(&o, &e)| (o - e % o) % o).collect();
    Ok((*k, *r, *t, chi))
}

/// Classified projective representations of `Z/t + (Z/r)^n` through `F_n(r,t)`.
pub fn projreps_abelian(n: u64, r: u64, t: u64, cap: usize) -> Result<ClassifiedTable> {
    let ext = fgroup_extension_capped(n, r, t, cap as u128)?;
    check_cap(&ext, cap)?;
    check_multiplier(&ext, Family::Abelian, n, r, t)?;
    let irr: Vec<Representation> = irr_two_step(&ext.star, cap)?.into_iter().map(|e| e.rep).collect();
    let mut table = classify(&irr, &ext)?;
    for c in &mut table.classes {
        c.params = Some(abelian_params_from_character(n, r, t, &c.class_id)?);
    }
    check_classes(&table, ext.a_order())?;
    Ok(table)
}

/// `Irr^alpha` of `Z/t + (Z/r)^k` for the single class with the given parameters,
/// built from the irreducibles of `F_k(r,t)` lying over the matching character of `A`.
pub fn abelian_class_reps(params: &CocycleParams, cap: usize) -> Result<ProjClass> {
    let (k, r, t, chi) = character_from_abelian_params(params)?;
    let ext = fgroup_extension_capped(k, r, t, cap as u128)?;
    check_cap(&ext, cap)?;
    let g = &ext.star;
    let (m, vals) = character_values(&ext, &chi)?;
    let exps = ext.a.elements().iter().map(|&x| vals[x].unwrap_or(0)).collect();
    let on_a = Character::new(ext.a.clone(), m, exps)?;
    let z = center(g);
    let mut reps = Vec::new();
    for (i, c) in extend_character(g, &on_a, &z, true)?.iter().enumerate() {
        for e in irr_two_step_over(g, c, i)? {
            reps.push(pushdown(&e.rep, &ext)?);
        }
    }
    let class = ProjClass { class_id: chi, params: Some(params.clone()), reps };
    if class.sum_dim_sq() != ext.quotient.order() {
        return Err(Error::CheckFailed(format!(
            "class sum of squared dimensions is {}, expected {}",
            class.sum_dim_sq(),
            ext.quotient.order()
        )));
    }
    Ok(class)
}

/// Inflation fiber of a class of `H^t_{2n+1}(Z/r)` on the abelianization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCheck {
    /// `|M(Q)| / |M(H)|` from the closed forms.
    pub by_counting: u128,
    /// `|Hom(Z/(r/t), C^x)|`.
    pub by_characters: u64,
    /// Members in lexicographic order; the first is the chosen preimage.
    pub members: Vec<CocycleParams>,
    /// Whether every member inflates into the class, where the oracle applies.
    pub oracle_confirmed: Option<bool>,
}

/// `|M(Z/t + (Z/r)^{2n})| / |M(H^t_{2n+1}(Z/r))|`, which must be a whole number.
pub fn inflation_fiber_size(n: u64, r: u64, t: u64) -> Result<u128> {
    let q = schur_closed_form(Family::Abelian, 2 * n, r, t)?.order;
    let h = schur_closed_form(Family::Heisenberg, n, r, t)?.order;
    match (q, h) {
        (Some(q), Some(h)) if h > 0 && q % h == 0 => Ok(q / h),
        _ => Err(Error::CheckFailed(format!("multiplier orders {q:?} and {h:?} do not divide"))),
    }
}

/// All abelian parameter tuples inflating to the class of the given Heisenberg
/// parameters: the diagonal `mu_{i,n+i}` shifted together by multiples of `t`.
pub fn fiber_of_h2n1_class(params: &CocycleParams) -> Result<FiberCheck> {
    let CocycleParams::Heisenberg { n, r, t, pairs, linear } = params else {
        return Err(Error::FamilyMismatch("Heisenberg parameters with n >= 2 expected".into()));
    };
    let (n, r, t) = (*n, *r, *t);
    let dim = 2 * n as usize;
    let mut base = pairs.clone();
    canonicalize_h2n1(n, r, t, &mut base);
    let mut members = Vec::new();
    for s in 0..r / t {
        let mut p = base.clone();
        for i in 0..n as usize {
            let e = &mut p[pair_index(i, n as usize + i, dim)];
            *e = (*e + s * t) % r;
        }
        members.push(h2n1_as_abelian(n, r, t, &p, linear));
    }
    members.sort_by(|a, b| match (a, b) {
        (CocycleParams::Abelian { pairs: x, .. }, CocycleParams::Abelian { pairs: y, .. }) => x.cmp(y),
        _ => std::cmp::Ordering::Equal,
    });
    let (_, q, pi) = stem_projection(n, r, t)?;
    let h = make_group(&GroupSpec::Heisenberg { n, r, t })?;
    let oracle_confirmed = if h.order() <= ORACLE_CAP {
        let target = rep_cocycle_h2n1(n, r, t, &base, linear)?;
        let mut all = true;
        for m in &members {
            let inflated = crate::cohomology::inflate_cocycle(&m.table()?, &h, &pi)?;
            all &= cohomologous(&h, &inflated, &target)?;
        }
        Some(all)
    } else {
        None
    };
    debug_assert_eq!(q.order() as u128, (t as u128) * (r as u128).pow(dim as u32));
    Ok(FiberCheck { by_counting: inflation_fiber_size(n, r, t)?, by_characters: r / t, members, oracle_confirmed })
}

/// Inflated representations for one class of `H^t_{2n+1}(Z/r)`.
#[derive(Clone, Debug)]
pub struct BigClassRun {
    pub params: CocycleParams,
    pub fiber: FiberCheck,
    /// The abelian class the representations come from.
    pub source: CocycleParams,
    pub reps: Vec<ProjectiveRep>,
    /// Inflated cocycle against the class representative; `None` above the oracle cap.
    pub class_confirmed: Option<bool>,
    pub checks: Vec<AlphaCheck>,
}

/// Projective representations of `H^t_{2n+1}(Z/r)`, `n >= 2`, for the requested
/// classes, inflated from the least preimage class on the abelianization.
pub fn projreps_heisenberg_big(classes: &[CocycleParams], cap: usize) -> Result<Vec<BigClassRun>> {
    let mut out = Vec::new();
    for params in classes {
        let CocycleParams::Heisenberg { n, r, t, pairs, linear } = params else {
            return Err(Error::FamilyMismatch("Heisenberg parameters with n >= 2 expected".into()));
        };
        let (n, r, t) = (*n, *r, *t);
        let target_table = rep_cocycle_h2n1(n, r, t, pairs, linear)?;
        let fiber = fiber_of_h2n1_class(params)?;
        if fiber.members.len() as u128 != fiber.by_counting || fiber.by_characters as u128 != fiber.by_counting {
            return Err(Error::CheckFailed(format!(
                "inflation fiber has {} members, counting gives {}, characters give {}",
                fiber.members.len(),
                fiber.by_counting,
                fiber.by_characters
            )));
        }
        if fiber.oracle_confirmed == Some(false) {
            return Err(Error::CheckFailed("a fiber member does not inflate into the class".into()));
        }
        let source = fiber.members[0].clone();
        let class = abelian_class_reps(&source, cap)?;
        let (h, _, pi) = stem_projection(n, r, t)?;
        let mut reps = Vec::new();
        let mut checks = Vec::new();
        for rho in &class.reps {
            let inflated = inflate_rep(rho, &h, &pi)?;
            checks.push(verify_alpha_rep(&h, &inflated, CHECK_SAMPLES, CHECK_SEED)?);
            reps.push(inflated);
        }
        let class_confirmed = match reps.first() {
            Some(rho) if h.order() <= ORACLE_CAP => Some(cohomologous(&h, &rho.alpha, &target_table)?),
            _ => None,
        };
        if class_confirmed == Some(false) {
            return Err(Error::CheckFailed("inflated cocycle left the requested class".into()));
        }
        out.push(BigClassRun { params: params.clone(), fiber, source, reps, class_confirmed, checks });
    }
    Ok(out)
}

/// Projective representations of `ES_{2n+1}(p^2)`.
#[derive(Clone, Debug)]
pub struct ExtraSpecialReport {
    pub p: u64,
    pub n: u64,
    /// True when the multiplier is trivial, so every projective representation is
    /// equivalent to an ordinary one.
    pub ordinary: bool,
    /// `Irr(ES_3(p^2))` when `n = 1`.
    pub irr: Vec<Representation>,
    /// Source class on `(Z/p)^{2n}` and the inflated representations, when `n >= 2`.
    pub source: Option<CocycleParams>,
    pub inflated: Vec<ProjectiveRep>,
    pub checks: Vec<AlphaCheck>,
}

/// `n = 1`: ordinary irreducibles. `n >= 2`: inflation of the given class of
/// `(Z/p)^{2n}` (abelian parameters with `k = 2n - 1`, `r = t = p`).
pub fn projreps_extraspecial(p: u64, n: u64, source: Option<&CocycleParams>, cap: usize) -> Result<ExtraSpecialReport> {
    let spec = GroupSpec::ExtraSpecialP2 { p, n };
    spec.validate()?;
    if spec.order() > cap as u128 {
        return Err(Error::CapExceeded { what: spec.label(), size: spec.order(), cap: cap as u128 });
    }
    let mut report =
        ExtraSpecialReport { p, n, ordinary: n == 1, irr: vec![], source: None, inflated: vec![], checks: vec![] };
    if n == 1 {
        let g = make_group(&spec)?;
        report.irr = irr_two_step(&g, cap)?.into_iter().map(|e| e.rep).collect();
        let total: usize = report.irr.iter().map(|r| r.dim * r.dim).sum();
        if total != g.order() {
            return Err(Error::CheckFailed(format!("sum of squared dimensions is {total}, expected {}", g.order())));
        }
        return Ok(report);
    }
    let source = source.ok_or_else(|| Error::InvalidParameter("a source class on (Z/p)^2n is required for n >= 2".into()))?;
    match *source {
        CocycleParams::Abelian { k, r, t, .. } if k == 2 * n - 1 && r == p && t == p => {}
        _ => {
            return Err(Error::FamilyMismatch(format!(
                "source class must have k = {}, r = t = {p}",
                2 * n - 1
            )))
        }
    }
    let class = abelian_class_reps(source, cap.max(crate::groups::DEFAULT_GROUP_CAP as usize))?;
    let (es, _, pi) = extraspecial_to_abelian(p, n)?;
    for rho in &class.reps {
        let inflated = inflate_rep(rho, &es, &pi)?;
        report.checks.push(verify_alpha_rep(&es, &inflated, CHECK_SAMPLES, CHECK_SEED)?);
        report.inflated.push(inflated);
    }
    report.source = Some(source.clone());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::rep_cocycle_abelian;
    use crate::groups::fgroup_extension;
    use crate::nilrep::tuples;

    #[test]
    fn transgression_in_f_groups_is_the_negated_representative() {
        for (n, r, t) in [(1, 3, 3), (2, 3, 3), (2, 3, 1)] {
            let ext = fgroup_extension(n, r, t).unwrap();
            for chi in tuples(&ext.a_orders) {
                let params = abelian_params_from_character(n, r, t, &chi).unwrap();
                let CocycleParams::Abelian { pairs, .. } = &params else { unreachable!() };
                let rep = rep_cocycle_abelian(n, r, t, pairs).unwrap();
                let tra = crate::cohomology::transgress(&ext, &chi).unwrap();
                let m = crate::zlinalg::lcm(rep.modulus, tra.modulus);
                assert_eq!(rep.lift(m).unwrap(), tra.lift(m).unwrap(), "chi = {chi:?}");
                assert_eq!(character_from_abelian_params(&params).unwrap().3, chi);
            }
        }
    }

    #[test]
    fn f1_3_3_has_three_classes() {
        let table = projreps_abelian(1, 3, 3, 1000).unwrap();
        assert_eq!(table.classes.len(), 3);
        assert_eq!(table.classes[0].reps.len(), 9);
        for c in &table.classes[1..] {
            assert_eq!(c.reps.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![3]);
        }
    }

    #[test]
    fn fiber_of_h5_class_has_three_members() {
        let params = CocycleParams::Heisenberg { n: 2, r: 3, t: 1, pairs: vec![1, 0, 0, 0, 0, 1], linear: vec![0; 4] };
        let f = fiber_of_h2n1_class(&params).unwrap();
        assert_eq!(f.by_counting, 3);
        assert_eq!(f.members.len(), 3);
        assert_eq!(f.oracle_confirmed, Some(true));
    }

    #[test]
    fn es3_is_ordinary() {
        let rep = projreps_extraspecial(3, 1, None, 1000).unwrap();
        assert!(rep.ordinary);
        let mut dims: Vec<usize> = rep.irr.iter().map(|r| r.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, [vec![1; 9], vec![3; 2]].concat());
    }
}
