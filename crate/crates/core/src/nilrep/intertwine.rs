use super::matrix::{Mat, MonomialMatrix};
use super::rep::Representation;
use crate::cyclotomic::{CycMatrix, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::zlinalg::lcm;

/// Basis of `{T : T A_s = B_s T for all s}` for paired generator images,
/// `T` of size `dim(B) x dim(A)`.
pub fn intertwiners(a: &[Mat], b: &[Mat]) -> Result<Vec<Mat>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("generator lists of different lengths".into()));
    }
    let m = a.iter().chain(b).fold(1, |acc, x| lcm(acc, x.conductor()));
    let a: Vec<Mat> = a.iter().map(|x| x.lift(m)).collect::<Result<_>>()?;
    let b: Vec<Mat> = b.iter().map(|x| x.lift(m)).collect::<Result<_>>()?;
    let (d1, d2) = match (a.first(), b.first()) {
        (Some(x), Some(y)) => (x.dim(), y.dim()),
        _ => return Err(Error::DimensionMismatch("no generators".into())),
    };
    let mono: Option<(Vec<&MonomialMatrix>, Vec<&MonomialMatrix>)> = (|| {
        let am = a.iter().map(|x| if let Mat::Mono(x) = x { Some(x) } else { None }).collect::<Option<Vec<_>>>()?;
        let bm = b.iter().map(|x| if let Mat::Mono(x) = x { Some(x) } else { None }).collect::<Option<Vec<_>>>()?;
        Some((am, bm))
    })();
    match mono {
        Some((am, bm)) => Ok(monomial_intertwiners(&am, &bm, d1, d2, m)),
        None => dense_intertwiners(&a, &b, d1, d2, m),
    }
}

/// Union-find with phases: every equation has exactly two terms, so the solution
/// space is spanned by indicator vectors of consistent components.
fn monomial_intertwiners(a: &[&MonomialMatrix], b: &[&MonomialMatrix], d1: usize, d2: usize, m: u64) -> Vec<Mat> {
    let n = d1 * d2;
    let mut parent: Vec<usize> = (0..n).collect();
    // T_u = zeta^pot[u] T_parent[u]
    let mut pot = vec![0u64; n];
    let mut bad = vec![false; n];
    fn find(parent: &mut [usize], pot: &mut [u64], u: usize, m: u64) -> (usize, u64) {
        if parent[u] == u {
            return (u, 0);
        }
        let p = parent[u];
        let (r, pp) = find(parent, pot, p, m);
        pot[u] = (pot[u] + pp) % m;
        parent[u] = r;
        (r, pot[u])
    }
    for (x, y) in a.iter().zip(b) {
        let mut inv_b = vec![0usize; d2];
        for k in 0..d2 {
            inv_b[y.perm[k]] = k;
        }
        for row in 0..d2 {
            let k = inv_b[row];
            for j in 0..d1 {
                // T[row][pi_A(j)] zeta^alpha_j = zeta^beta_k T[k][j]
                let u = row * d1 + x.perm[j];
                let v = k * d1 + j;
                let c = (y.exps[k] + m - x.exps[j]) % m;
                let (ru, pu) = find(&mut parent, &mut pot, u, m);
                let (rv, pv) = find(&mut parent, &mut pot, v, m);
                if ru == rv {
                    // need pu = c + pv
                    if pu != (c + pv) % m {
                        bad[ru] = true;
                    }
                } else {
                    // T_ru = zeta^(c + pv - pu) T_rv
                    parent[ru] = rv;
                    pot[ru] = (c + pv + m - pu) % m;
                    bad[rv] |= bad[ru];
                }
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut comp = vec![usize::MAX; n];
    for u in 0..n {
        let (r, _) = find(&mut parent, &mut pot, u, m);
        if bad[r] {
            continue;
        }
        comp[u] = match roots.iter().position(|&x| x == r) {
            Some(i) => i,
            None => {
                roots.push(r);
                roots.len() - 1
            }
        };
    }
    let mut out = vec![CycMatrix::zeros(m, d2, d1); roots.len()];
    for u in 0..n {
        if comp[u] != usize::MAX {
            out[comp[u]].set(u / d1, u % d1, CyclotomicNumber::root(m, pot[u]));
        }
    }
    out.into_iter().map(|t| Mat::Dense(t).try_monomial()).collect()
}

fn dense_intertwiners(a: &[Mat], b: &[Mat], d1: usize, d2: usize, m: u64) -> Result<Vec<Mat>> {
    let n = d1 * d2;
    let mut sys = CycMatrix::zeros(m, a.len() * n, n);
    for (s, (x, y)) in a.iter().zip(b).enumerate() {
        let (x, y) = (x.to_dense(), y.to_dense());
        for row in 0..d2 {
            for j in 0..d1 {
                let eq = s * n + row * d1 + j;
                for k in 0..d1 {
                    let v = sys.get(eq, row * d1 + k).add(x.get(k, j));
                    sys.set(eq, row * d1 + k, v);
                }
                for k in 0..d2 {
                    let v = sys.get(eq, k * d1 + j).sub(y.get(row, k));
                    sys.set(eq, k * d1 + j, v);
                }
            }
        }
    }
    Ok(sys
        .nullspace()
        .into_iter()
        .map(|v| Mat::Dense(CycMatrix { conductor: m, rows: d2, cols: d1, data: v }).try_monomial())
        .collect())
}

/// Dimension of the commutant of the generator images.
pub fn commutant_dimension(rho: &Representation) -> Result<usize> {
    Ok(intertwiners(&rho.images, &rho.images)?.len())
}

/// Schur criterion: the commutant is the scalars.
pub fn is_irreducible(rho: &Representation) -> Result<bool> {
    Ok(commutant_dimension(rho)? == 1)
}

fn is_invertible(t: &Mat) -> bool {
    match t {
        Mat::Mono(_) => true,
        Mat::Dense(d) => d.rows == d.cols && d.rank() == d.rows,
    }
}

/// An invertible `T` with `T rho1(s) = rho2(s) T`, if one exists among small
/// integer combinations of the intertwiner basis.
pub fn find_isomorphism(rho1: &Representation, rho2: &Representation) -> Result<Option<Mat>> {
    if rho1.dim != rho2.dim {
        return Err(Error::DimensionMismatch(format!("dimensions {} and {}", rho1.dim, rho2.dim)));
    }
    if rho1.gens != rho2.gens {
        return Err(Error::DimensionMismatch("representations on different generating sets".into()));
    }
    let basis = intertwiners(&rho1.images, &rho2.images)?;
    if basis.is_empty() {
        return Ok(None);
    }
    if let Some(t) = basis.iter().find(|t| is_invertible(t)) {
        return Ok(Some(t.clone()));
    }
    let m = basis[0].conductor();
    for step in 1..=8i64 {
        let mut acc = CycMatrix::zeros(m, rho2.dim, rho1.dim);
        let mut c = 1i64;
        for t in &basis {
            let scaled = t.to_dense().scale(&CyclotomicNumber::from_int(m, c));
            acc.data = acc.data.iter().zip(&scaled.data).map(|(x, y)| x.add(y)).collect();
            c *= step + 1;
        }
        let t = Mat::Dense(acc);
        if is_invertible(&t) {
            return Ok(Some(t.try_monomial()));
        }
    }
    Ok(None)
}

/// Equivalence of ordinary representations: traces on every element first, then
/// an explicit invertible intertwiner.
pub fn equivalent(g: &FiniteGroup, rho1: &Representation, rho2: &Representation) -> Result<bool> {
    if rho1.dim != rho2.dim {
        return Err(Error::DimensionMismatch(format!("dimensions {} and {}", rho1.dim, rho2.dim)));
    }
    let rho2 = if rho1.gens == rho2.gens { rho2.clone() } else { rho2.regenerate(g, &rho1.gens)? };
    let m = lcm(rho1.conductor, rho2.conductor);
    let (r1, r2) = (rho1.lift(m)?, rho2.lift(m)?);
    let (t1, t2) = (r1.image_table(g)?, r2.image_table(g)?);
    for &x in t1.elements() {
        let (Some(a), Some(b)) = (t1.get(x), t2.get(x)) else { return Ok(false) };
        let same = match (a, b) {
            (Mat::Mono(a), Mat::Mono(b)) => a.trace_exponents() == b.trace_exponents() || a.to_dense().trace() == b.to_dense().trace(),
            _ => a.trace() == b.trace(),
        };
        if !same {
            return Ok(false);
        }
    }
    Ok(find_isomorphism(&r1, &r2)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupSpec};
    use crate::nilrep::two_step::irr_two_step;

    #[test]
    fn one_dimensional_is_irreducible() {
        let g = make_group(&GroupSpec::Abelian { invariants: vec![3] }).unwrap();
        let r = Representation::new(g.label(), vec![1], vec![Mat::Mono(MonomialMatrix::scalar(3, 1, 1))]).unwrap();
        assert!(is_irreducible(&r).unwrap());
    }

    #[test]
    fn doubled_rep_has_four_dimensional_commutant() {
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap();
        let irr = irr_two_step(&g, 1000).unwrap();
        let rho = &irr.iter().find(|e| e.rep.dim == 3).unwrap().rep;
        assert!(is_irreducible(rho).unwrap());
        let double = rho.direct_sum(rho).unwrap();
        assert_eq!(commutant_dimension(&double).unwrap(), 4);
        assert!(!is_irreducible(&double).unwrap());
    }

    #[test]
    fn dense_and_monomial_solvers_agree() {
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap();
        let irr = irr_two_step(&g, 1000).unwrap();
        let threes: Vec<&Representation> = irr.iter().filter(|e| e.rep.dim == 3).map(|e| &e.rep).collect();
        for a in &threes {
            for b in &threes {
                let mono = intertwiners(&a.images, &b.images).unwrap().len();
                let dense_a: Vec<Mat> = a.images.iter().map(|x| Mat::Dense(x.to_dense())).collect();
                let dense_b: Vec<Mat> = b.images.iter().map(|x| Mat::Dense(x.to_dense())).collect();
                let dense = intertwiners(&dense_a, &dense_b).unwrap().len();
                assert_eq!(mono, dense);
            }
        }
    }

    #[test]
    fn distinct_irreps_are_inequivalent() {
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap();
        let irr = irr_two_step(&g, 1000).unwrap();
        for (i, a) in irr.iter().enumerate() {
            for (j, b) in irr.iter().enumerate() {
                if a.rep.dim == b.rep.dim {
                    assert_eq!(equivalent(&g, &a.rep, &b.rep).unwrap(), i == j);
                }
            }
        }
    }
}
