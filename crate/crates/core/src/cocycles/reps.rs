use serde::{Deserialize, Serialize};

use crate::cohomology::CocycleTable;
use crate::error::{Error, Result};
use crate::groups::{make_group, FiniteGroup, GroupSpec};

/// Exponent parameters of a representative cocycle. Roots of unity are written
/// as exponents of a primitive root whose order is stated per field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CocycleParams {
    /// On `Z/t + (Z/r)^k`. `pairs` lists `mu_{i,j}`, `1 <= i < j <= k+1`, lexicographically;
    /// `mu_{1,j}` is a `t`-th root, the rest are `r`-th roots.
    Abelian { k: u64, r: u64, t: u64, pairs: Vec<u64> },
    /// On `H^t_3(Z/r)`: `lambda`, `mu` mod `r`, `delta` an exponent of a primitive
    /// `r`-th root taken mod `t`.
    H3 { r: u64, t: u64, lambda: u64, mu: u64, delta: u64 },
    /// On `H^t_{2n+1}(Z/r)`, `n >= 2`. `pairs` lists `mu_{i,j}`, `1 <= i < j <= 2n`,
    /// lexicographically (mod `r`); `linear` lists `mu_k` (`t`-th roots).
    Heisenberg { n: u64, r: u64, t: u64, pairs: Vec<u64>, linear: Vec<u64> },
    /// The zero cocycle, for groups with trivial multiplier.
    Trivial { spec: GroupSpec },
}

impl CocycleParams {
    pub fn spec(&self) -> GroupSpec {
        match *self {
            CocycleParams::Abelian { k, r, t, .. } => {
                let mut invariants = vec![t];
                invariants.extend(std::iter::repeat(r).take(k as usize));
                GroupSpec::Abelian { invariants }
            }
            CocycleParams::H3 { r, t, .. } => GroupSpec::Heisenberg { n: 1, r, t },
            CocycleParams::Heisenberg { n, r, t, .. } => GroupSpec::Heisenberg { n, r, t },
            CocycleParams::Trivial { ref spec } => spec.clone(),
        }
    }

    /// Builds the table this tuple describes.
    pub fn table(&self) -> Result<CocycleTable> {
        match self {
            CocycleParams::Abelian { k, r, t, pairs } => rep_cocycle_abelian(*k, *r, *t, pairs),
            CocycleParams::H3 { r, t, lambda, mu, delta } => rep_cocycle_h3(*r, *t, *lambda, *mu, *delta),
            CocycleParams::Heisenberg { n, r, t, pairs, linear } => rep_cocycle_h2n1(*n, *r, *t, pairs, linear),
            CocycleParams::Trivial { spec } => Ok(CocycleTable::zero(&table_group(spec)?, 1)),
        }
    }
}

/// Largest group on which a full cocycle table is built.
pub const TABLE_GROUP_CAP: usize = 2187;

fn table_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    let g = make_group(spec)?;
    if g.order() > TABLE_GROUP_CAP {
        return Err(Error::CapExceeded {
            what: format!("cocycle table on {}", g.label()),
            size: g.order() as u128,
            cap: TABLE_GROUP_CAP as u128,
        });
    }
    Ok(g)
}

/// Position of `(i, j)`, `i < j < dim`, in the lexicographic list of pairs.
pub fn pair_index(i: usize, j: usize, dim: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * (2 * dim - i - 1) / 2 + (j - i - 1)
}

fn check_rt(r: u64, t: u64) -> Result<()> {
    if r == 0 || t == 0 || r % t != 0 {
        return Err(Error::InvalidParameter(format!("need r >= 1 and t | r, got r = {r}, t = {t}")));
    }
    Ok(())
}

fn check_below(what: &str, v: u64, bound: u64) -> Result<()> {
    if v >= bound {
        return Err(Error::InvalidParameter(format!("{what} = {v} must be below {bound}")));
    }
    Ok(())
}

/// `sum mu_{i,j}^{n_i m_j}` on `Z/t + (Z/r)^k`, `x = (m_i)`, `y = (n_i)`. Exponents mod `r`.
pub fn rep_cocycle_abelian(k: u64, r: u64, t: u64, pairs: &[u64]) -> Result<CocycleTable> {
    check_rt(r, t)?;
    let dim = k as usize + 1;
    if pairs.len() != dim * (dim - 1) / 2 {
        return Err(Error::DimensionMismatch(format!("{} pair exponents for k = {k}", pairs.len())));
    }
    let mut weights = Vec::with_capacity(pairs.len());
    for i in 0..dim {
        for j in i + 1..dim {
            let e = pairs[pair_index(i, j, dim)];
            let (bound, w) = if i == 0 { (t, r / t) } else { (r, 1) };
            check_below(&format!("mu_{{{},{}}}", i + 1, j + 1), e, bound)?;
            weights.push((i, j, e * w));
        }
    }
    let g = table_group(&CocycleParams::Abelian { k, r, t, pairs: vec![] }.spec())?;
    let coords: Vec<Vec<u64>> = (0..g.order()).map(|x| g.coords(x)).collect();
    let ri = r as i64;
    Ok(CocycleTable::from_fn(&g, r, |x, y| {
        let (m, n) = (&coords[x], &coords[y]);
        weights.iter().fold(0i64, |acc, &(i, j, w)| (acc + (w * n[i] % r * m[j]) as i64) % ri)
    }))
}

/// Representative on `H^t_3(Z/r)` for `x = (m1, n1, p1)`, `y = (m2, n2, p2)`:
/// `lambda^(m2 p1 + t n2 p1(p1-1)/2) mu^(n1 m2 + t p1 n2(n2-1)/2 + t p1 n1 n2) delta^(p1 n2)`.
pub fn rep_cocycle_h3(r: u64, t: u64, lambda: u64, mu: u64, delta: u64) -> Result<CocycleTable> {
    check_rt(r, t)?;
    if r % 2 == 0 {
        return Err(Error::InvalidParameter(format!("r must be odd for H_3 representatives, got {r}")));
    }
    check_below("lambda", lambda, r)?;
    check_below("mu", mu, r)?;
    check_below("delta", delta, t)?;
    let g = table_group(&GroupSpec::Heisenberg { n: 1, r, t })?;
    let c: Vec<Vec<u64>> = (0..g.order()).map(|x| g.coords(x)).collect();
    let ri = r as i64;
    Ok(CocycleTable::from_fn(&g, r, |x, y| {
        let [n1, p1] = [c[x][1], c[x][2]].map(|v| v as i64);
        let [m2, n2] = [c[y][0], c[y][1]].map(|v| v as i64);
        let t = t as i64;
        let l = (m2 * p1 + t * n2 * (p1 * (p1 - 1) / 2)) % ri;
        let u = (n1 * m2 + t * p1 * (n2 * (n2 - 1) / 2) + t * p1 * n1 * n2) % ri;
        (lambda as i64 * l + mu as i64 * u + delta as i64 * (p1 * n2 % ri)) % ri
    }))
}

/// Whether the diagonal `mu_{i,n+i}` block is in canonical form (`mu_{1,n+1} < t`).
pub fn is_canonical_h2n1(n: u64, t: u64, pairs: &[u64]) -> bool {
    let dim = 2 * n as usize;
    pairs.get(pair_index(0, n as usize, dim)).is_some_and(|&e| e < t)
}

/// Shifts all `mu_{i,n+i}` by a common multiple of `t` so that `mu_{1,n+1} < t`.
pub fn canonicalize_h2n1(n: u64, r: u64, t: u64, pairs: &mut [u64]) {
    let (n, dim) = (n as usize, 2 * n as usize);
    let s = pairs[pair_index(0, n, dim)] / t;
    for i in 0..n {
        let p = &mut pairs[pair_index(i, n + i, dim)];
        *p = (*p + r - (s * t) % r) % r;
    }
}

/// `prod mu_{i,j}^(m'_i m_j) prod mu_k^(l'_1 m_k)` on `H^t_{2n+1}(Z/r)` for
/// `x = (l_1, m_1..m_2n)`, `y = (l'_1, m'_1..m'_2n)`. Exponents mod `r`.
pub fn rep_cocycle_h2n1(n: u64, r: u64, t: u64, pairs: &[u64], linear: &[u64]) -> Result<CocycleTable> {
    check_rt(r, t)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    let dim = 2 * n as usize;
    if pairs.len() != dim * (dim - 1) / 2 || linear.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{} pair and {} linear exponents for n = {n}",
            pairs.len(),
            linear.len()
        )));
    }
    for (i, &e) in pairs.iter().enumerate() {
        check_below(&format!("pair exponent #{i}"), e, r)?;
    }
    for (k, &e) in linear.iter().enumerate() {
        check_below(&format!("mu_{}", k + 1), e, t)?;
    }
    if !is_canonical_h2n1(n, t, pairs) {
        return Err(Error::InvalidParameter(format!("mu_{{1,{}}} must be below t = {t} in canonical form", n + 1)));
    }
    let g = table_group(&GroupSpec::Heisenberg { n, r, t })?;
    let c: Vec<Vec<u64>> = (0..g.order()).map(|x| g.coords(x)).collect();
    Ok(CocycleTable::from_fn(&g, r, |x, y| h2n1_exponent(r, t, pairs, linear, &c[x], &c[y]) as i64))
}

/// Value of the `H^t_{2n+1}` representative on two coordinate tuples, without
/// parameter checks and without reducing the diagonal to canonical form.
pub fn h2n1_exponent(r: u64, t: u64, pairs: &[u64], linear: &[u64], a: &[u64], b: &[u64]) -> u64 {
    let dim = linear.len();
    let w = r / t;
    let mut e = 0u64;
    for i in 0..dim {
        for j in i + 1..dim {
            e = (e + pairs[pair_index(i, j, dim)] * (b[1 + i] * a[1 + j] % r)) % r;
        }
    }
    let l = b[0] % t;
    for k in 0..dim {
        e = (e + linear[k] * w % r * (l * a[1 + k] % r)) % r;
    }
    e
}

/// The abelian parameters whose inflation through `(a, b, c) -> (a mod t, b, c)` gives
/// the same table as the Heisenberg parameters.
pub fn h2n1_as_abelian(n: u64, r: u64, t: u64, pairs: &[u64], linear: &[u64]) -> CocycleParams {
    let dim = 2 * n as usize;
    let k = dim + 1;
    let mut out = vec![0; k * (k - 1) / 2];
    for (j, &e) in linear.iter().enumerate() {
        out[pair_index(0, j + 1, k)] = e;
    }
    for i in 0..dim {
        for j in i + 1..dim {
            out[pair_index(i + 1, j + 1, k)] = pairs[pair_index(i, j, dim)];
        }
    }
    CocycleParams::Abelian { k: dim as u64, r, t, pairs: out }
}

/// Group underlying a parameter tuple.
pub fn params_group(p: &CocycleParams) -> Result<FiniteGroup> {
    make_group(&p.spec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{check_cocycle_identity, nu_pairing};

    #[test]
    fn pair_indexing() {
        let mut k = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                assert_eq!(pair_index(i, j, 5), k);
                k += 1;
            }
        }
    }

    #[test]
    fn abelian_corollary_example() {
        // (Z/3)^2 with mu_{1,2} = zeta: e((m,n),(m',n')) = n m'
        let a = rep_cocycle_abelian(1, 3, 3, &[1]).unwrap();
        let g = make_group(&GroupSpec::Abelian { invariants: vec![3, 3] }).unwrap();
        for x in 0..9 {
            for y in 0..9 {
                let (cx, cy) = (g.coords(x), g.coords(y));
                assert_eq!(a.get(x, y), cx[1] * cy[0] % 3);
            }
        }
        assert!(nu_pairing(&g, &a).unwrap().table.iter().any(|&v| v != 0));
    }

    #[test]
    fn zero_params_trivial() {
        assert!(rep_cocycle_abelian(2, 3, 3, &[0, 0, 0]).unwrap().is_zero());
        assert!(rep_cocycle_h3(3, 1, 0, 0, 0).unwrap().is_zero());
        assert!(rep_cocycle_h2n1(2, 3, 1, &[0; 6], &[0; 4]).unwrap().is_zero());
    }

    #[test]
    fn h3_lambda_value() {
        let a = rep_cocycle_h3(3, 1, 1, 0, 0).unwrap();
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 }).unwrap();
        assert_eq!(a.get(g.index(&[0, 0, 1]), g.index(&[1, 0, 0])), 1);
    }

    #[test]
    fn tables_are_cocycles() {
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 3 }).unwrap();
        for (l, m, d) in [(1, 0, 0), (0, 1, 0), (0, 0, 2), (2, 1, 1)] {
            let a = rep_cocycle_h3(3, 3, l, m, d).unwrap();
            assert!(check_cocycle_identity(&g, &a, 1000, 0).passed());
            assert!(a.is_normalized());
        }
        let g = make_group(&GroupSpec::Abelian { invariants: vec![3, 9, 9] }).unwrap();
        let a = rep_cocycle_abelian(2, 9, 3, &[1, 2, 5]).unwrap();
        assert!(check_cocycle_identity(&g, &a, 1000, 0).passed());
    }

    #[test]
    fn parameter_checks() {
        assert!(rep_cocycle_h3(4, 1, 0, 0, 0).is_err());
        assert!(rep_cocycle_h3(3, 1, 0, 0, 1).is_err());
        assert!(rep_cocycle_abelian(1, 3, 1, &[1]).is_err());
        assert!(rep_cocycle_h2n1(2, 3, 1, &[0, 1, 0, 0, 0, 0], &[0; 4]).is_err());
        assert!(rep_cocycle_h2n1(1, 3, 1, &[], &[0, 0]).is_err());
    }

    #[test]
    fn canonical_shift() {
        let mut p = vec![0, 2, 0, 0, 1, 0];
        canonicalize_h2n1(2, 9, 3, &mut p);
        assert_eq!(p, vec![0, 2, 0, 0, 1, 0]);
        let mut p = vec![0, 7, 0, 0, 1, 0];
        canonicalize_h2n1(2, 9, 3, &mut p);
        assert_eq!(p, vec![0, 1, 0, 0, 4, 0]);
    }
}
