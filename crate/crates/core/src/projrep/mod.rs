//! Projective representations: pushdown from a representation group,
//! classification by cocycle class, inflation, and the family pipelines.

mod pipelines;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::cocycles::CocycleParams;
use crate::cohomology::{inflate_cocycle, transgress, CocycleTable};
use crate::error::{Error, Result};
use crate::groups::{CentralExtension, FiniteGroup, GroupHom};
use crate::nilrep::{export_matrix, ExportedMatrix, Mat, Representation};
use crate::zlinalg::lcm;

pub use pipelines::{
    abelian_class_reps, abelian_params_from_character, character_from_abelian_params, fiber_of_h2n1_class,
    inflation_fiber_size, irr_hath, projreps_abelian, projreps_extraspecial, projreps_h3, projreps_heisenberg_big, BigClassRun,
    ExtraSpecialReport, FiberCheck,
};

/// Exhaustive pair checks up to this many pairs, sampling beyond.
pub const PAIR_CHECK_CAP: u64 = 1_000_000;

/// `alpha`-representation of `G` stored by the image of every element.
#[derive(Clone, Debug)]
pub struct ProjectiveRep {
    pub group: String,
    pub dim: usize,
    pub conductor: u64,
    /// `images[g]` for every element index `g`.
    pub images: Vec<Mat>,
    pub alpha: CocycleTable,
    /// Exponents of the central character on the basis of `A`.
    pub class_id: Vec<u64>,
}

/// Outcome of checking `rho(x) rho(y) = alpha(x, y) rho(xy)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCheck {
    pub pairs_checked: u64,
    pub exhaustive: bool,
    pub failures: u64,
}

impl AlphaCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks the twisted multiplication law, exhaustively when `|G|^2` is at most
/// [`PAIR_CHECK_CAP`], otherwise on `samples` random pairs.
pub fn verify_alpha_rep(g: &FiniteGroup, rho: &ProjectiveRep, samples: u64, seed: u64) -> Result<AlphaCheck> {
    let n = g.order();
    if rho.images.len() != n || rho.alpha.order != n {
        return Err(Error::DimensionMismatch("representation and cocycle do not match the group".into()));
    }
    let m = lcm(rho.conductor, rho.alpha.modulus);
    let images: Vec<Mat> = rho.images.iter().map(|x| x.lift(m)).collect::<Result<_>>()?;
    let f = m / rho.alpha.modulus;
    let check = |x: usize, y: usize| -> Result<bool> {
        let lhs = images[x].mul(&images[y])?;
        let rhs = images[g.mul(x, y)].scale_root(rho.alpha.get(x, y) * f);
        Ok(lhs == rhs)
    };
    let total = (n as u64) * (n as u64);
    let mut out = AlphaCheck { pairs_checked: 0, exhaustive: total <= PAIR_CHECK_CAP, failures: 0 };
    if out.exhaustive {
        for x in 0..n {
            for y in 0..n {
                out.pairs_checked += 1;
                if !check(x, y)? {
                    out.failures += 1;
                }
            }
        }
    } else {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..samples {
            let (x, y) = (rng.random_range(0..n), rng.random_range(0..n));
            out.pairs_checked += 1;
            if !check(x, y)? {
                out.failures += 1;
            }
        }
    }
    Ok(out)
}

/// `rho(q) = delta(mu(q))` with `alpha` the transgression of `delta` on `A`.
pub fn pushdown(delta: &Representation, ext: &CentralExtension) -> Result<ProjectiveRep> {
    let star = &ext.star;
    let table = delta.image_table(star)?;
    let m = delta.conductor;
    let mut chi = Vec::with_capacity(ext.a_basis.len());
    for (&a, &o) in ext.a_basis.iter().zip(&ext.a_orders) {
        let img = table.get(a).ok_or_else(|| Error::CheckFailed("representation does not cover A".into()))?;
        let e = img.scalar_exponent().ok_or_else(|| Error::CheckFailed("image of A is not scalar".into()))?;
        // delta(a)^o = 1, so e is a multiple of m / o
        if (e * o) % m != 0 {
            return Err(Error::CheckFailed("scalar on A has the wrong order".into()));
        }
        chi.push(e * o / m);
    }
    let alpha = transgress(ext, &chi)?;
    let images = (0..ext.quotient.order())
        .map(|q| table.get(ext.mu(q)).cloned().ok_or_else(|| Error::CheckFailed("section outside the image table".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjectiveRep { group: ext.quotient.label().into(), dim: delta.dim, conductor: m, images, alpha, class_id: chi })
}

/// `rho(g) = rho~(pi(g))` with the inflated cocycle.
pub fn inflate_rep(rho: &ProjectiveRep, g: &FiniteGroup, pi: &GroupHom) -> Result<ProjectiveRep> {
    if pi.codomain_order() != rho.images.len() {
        return Err(Error::DimensionMismatch("projection does not land in the representation's group".into()));
    }
    let alpha = inflate_cocycle(&rho.alpha, g, pi)?;
    let images = (0..g.order()).map(|x| rho.images[pi.apply(x)].clone()).collect();
    Ok(ProjectiveRep { group: g.label().into(), images, alpha, ..rho.clone() })
}

/// Irreducible projective representations of one cocycle class.
#[derive(Clone, Debug)]
pub struct ProjClass {
    pub class_id: Vec<u64>,
    pub params: Option<CocycleParams>,
    pub reps: Vec<ProjectiveRep>,
}

impl ProjClass {
    pub fn sum_dim_sq(&self) -> usize {
        self.reps.iter().map(|r| r.dim * r.dim).sum()
    }
}

/// Projective representations of `G` grouped by class, in increasing class id.
#[derive(Clone, Debug)]
pub struct ClassifiedTable {
    pub group: String,
    pub order: usize,
    pub generators: Vec<usize>,
    pub classes: Vec<ProjClass>,
}

/// Groups pushdowns of a complete `Irr(G*)` by their character on `A`.
pub fn classify(irr: &[Representation], ext: &CentralExtension) -> Result<ClassifiedTable> {
    let total: usize = irr.iter().map(|r| r.dim * r.dim).sum();
    if total != ext.star.order() {
        return Err(Error::CheckFailed(format!("sum of squared dimensions is {total}, expected {}", ext.star.order())));
    }
    let mut classes: std::collections::BTreeMap<Vec<u64>, Vec<ProjectiveRep>> = Default::default();
    for delta in irr {
        let p = pushdown(delta, ext)?;
        classes.entry(p.class_id.clone()).or_default().push(p);
    }
    let q = &ext.quotient;
    Ok(ClassifiedTable {
        group: q.label().into(),
        order: q.order(),
        generators: q.generators().to_vec(),
        classes: classes.into_iter().map(|(class_id, reps)| ProjClass { class_id, params: None, reps }).collect(),
    })
}

/// Generator images of a projective representation, for export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjRepExport {
    pub dim: usize,
    pub conductor: u64,
    pub generator_images: Vec<ExportedMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassExport {
    pub class_id: Vec<u64>,
    pub cocycle_params: Option<CocycleParams>,
    pub dims: Vec<usize>,
    pub reps: Vec<ProjRepExport>,
    pub sum_dim_sq: usize,
    pub alpha_identity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableChecks {
    pub sum_dim_sq: usize,
    pub alpha_identity: String,
    pub pairs_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableExport {
    pub group: String,
    pub order: usize,
    pub generators: Vec<Vec<u64>>,
    pub classes: Vec<ClassExport>,
    pub checks: TableChecks,
}

fn verdict(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.into()
}

impl ClassifiedTable {
    /// Export with every representation re-verified.
    pub fn export(&self, g: &FiniteGroup) -> Result<TableExport> {
        let mut classes = Vec::new();
        let mut all_ok = true;
        let mut pairs = 0;
        let mut total = 0;
        for c in &self.classes {
            let mut ok = true;
            for r in &c.reps {
                let chk = verify_alpha_rep(g, r, 10_000, 0)?;
                pairs += chk.pairs_checked;
                ok &= chk.passed();
            }
            all_ok &= ok;
            total += c.sum_dim_sq();
            classes.push(ClassExport {
                class_id: c.class_id.clone(),
                cocycle_params: c.params.clone(),
                dims: c.reps.iter().map(|r| r.dim).collect(),
                reps: c
                    .reps
                    .iter()
                    .map(|r| ProjRepExport {
                        dim: r.dim,
                        conductor: r.conductor,
                        generator_images: self.generators.iter().map(|&s| export_matrix(&r.images[s])).collect(),
                    })
                    .collect(),
                sum_dim_sq: c.sum_dim_sq(),
                alpha_identity: verdict(ok),
            });
        }
        Ok(TableExport {
            group: self.group.clone(),
            order: self.order,
            generators: self.generators.iter().map(|&s| g.coords(s)).collect(),
            classes,
            checks: TableChecks { sum_dim_sq: total, alpha_identity: verdict(all_ok), pairs_checked: pairs },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupSpec};
    use crate::nilrep::MonomialMatrix;

    #[test]
    fn ordinary_rep_with_trivial_cocycle_passes() {
        let g = make_group(&GroupSpec::Abelian { invariants: vec![3] }).unwrap();
        let images = (0..3).map(|x| Mat::Mono(MonomialMatrix::scalar(3, 1, x as u64))).collect();
        let rho = ProjectiveRep {
            group: g.label().into(),
            dim: 1,
            conductor: 3,
            images,
            alpha: CocycleTable::zero(&g, 1),
            class_id: vec![],
        };
        assert!(verify_alpha_rep(&g, &rho, 0, 0).unwrap().passed());
        let mut bad = rho.clone();
        bad.images[2] = Mat::Mono(MonomialMatrix::scalar(3, 1, 0));
        assert!(!verify_alpha_rep(&g, &bad, 0, 0).unwrap().passed());
    }
}
