//! Second cohomology with coefficients in Z/m, computed by linear algebra.
//!
//! A normalized cocycle is determined by its values `e(x, s)` on generators `s`:
//! along a spanning tree of the Cayley graph, `e(x, p s) = e(x, p) + e(xp, s) - e(p, s)`.
//! The cocycle identity restricted to triples `(x, y, s)` then forces the full
//! identity, so the remaining non-tree edges give all constraints. This keeps the
//! unknowns at `(|G| - 1) |S|` instead of `|G|^2`.
//!
//! Coboundary tests over C^x lift to `Z/(m exp(G))`: if `alpha = db` with `alpha`
//! valued in `mu_m`, then `b^m` is a character, so its values lie in `mu_exp(G)`
//! and `b` takes values in `mu_{m exp(G)}`.

use std::io::Write;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{CentralExtension, FiniteGroup, GroupHom};
use crate::zlinalg::{elementary_divisors, invariant_factors, lcm, smith_mod, solve_mod, IntMatrix, ModSmith, RowEchelon};

/// Default cap on `|G|` for the oracle.
pub const ORACLE_CAP: usize = 1000;

/// Exponent table of a `mu_m`-valued function on `G x G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleTable {
    pub group: String,
    pub order: usize,
    pub modulus: u64,
    /// Row-major: `table[x * order + y]`.
    pub table: Vec<u64>,
}

impl CocycleTable {
    pub fn zero(g: &FiniteGroup, modulus: u64) -> Self {
        CocycleTable { group: g.label().into(), order: g.order(), modulus, table: vec![0; g.order() * g.order()] }
    }

    pub fn from_fn(g: &FiniteGroup, modulus: u64, f: impl Fn(usize, usize) -> i64) -> Self {
        let n = g.order();
        let m = modulus as i64;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(f(x, y).rem_euclid(m) as u64);
            }
        }
        CocycleTable { group: g.label().into(), order: n, modulus, table }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.table[x * self.order + y]
    }

    /// Same cocycle with exponents read modulo a multiple of the current modulus.
    pub fn lift(&self, modulus: u64) -> Result<Self> {
        if modulus % self.modulus != 0 {
            return Err(Error::InvalidParameter(format!("cannot lift modulus {} to {modulus}", self.modulus)));
        }
        let f = modulus / self.modulus;
        Ok(CocycleTable { table: self.table.iter().map(|&e| e * f).collect(), modulus, ..self.clone() })
    }

    /// Pointwise product of cocycles (sum of exponents) at a common modulus.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch(format!("cocycles on groups of order {} and {}", self.order, other.order)));
        }
        let m = lcm(self.modulus, other.modulus);
        let (a, b) = (self.lift(m)?, other.lift(m)?);
        let table = a.table.iter().zip(&b.table).map(|(&x, &y)| (x as i64 + sign * y as i64).rem_euclid(m as i64) as u64).collect();
        Ok(CocycleTable { table, ..a })
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.order).all(|g| self.get(g, 0) == 0 && self.get(0, g) == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&e| e == 0)
    }

    /// CSV rows `x,y,exponent,modulus`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,y,exponent,modulus")?;
        for x in 0..self.order {
            for y in 0..self.order {
                writeln!(w, "{x},{y},{},{}", self.get(x, y), self.modulus)?;
            }
        }
        Ok(())
    }
}

/// Result of a full or sampled cocycle-identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub triples_checked: u64,
    pub exhaustive: bool,
    pub failures: u64,
    pub normalized: bool,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.normalized
    }
}

/// `e(x,y) + e(xy,z) = e(y,z) + e(x,yz)` on all triples when `|G| <= exhaustive_limit`,
/// otherwise on `samples` random triples.
pub fn check_cocycle_identity(g: &FiniteGroup, a: &CocycleTable, exhaustive_limit: usize, samples: u64) -> IdentityCheck {
    let n = g.order();
    let m = a.modulus;
    let holds = |x: usize, y: usize, z: usize| {
        let xy = g.mul(x, y);
        let yz = g.mul(y, z);
        (a.get(x, y) + a.get(xy, z)) % m == (a.get(y, z) + a.get(x, yz)) % m
    };
    let mut failures = 0;
    let (triples, exhaustive) = if n <= exhaustive_limit {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !holds(x, y, z) {
                        failures += 1;
                    }
                }
            }
        }
        ((n as u64).pow(3), true)
    } else {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..samples {
            if !holds(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)) {
                failures += 1;
            }
        }
        (samples, false)
    };
    IdentityCheck { triples_checked: triples, exhaustive, failures, normalized: a.is_normalized() }
}

fn require_cocycle(g: &FiniteGroup, a: &CocycleTable) -> Result<()> {
    if a.order != g.order() {
        return Err(Error::DimensionMismatch(format!("table for order {} on group of order {}", a.order, g.order())));
    }
    if !a.is_normalized() {
        return Err(Error::InvalidCocycle("table is not normalized".into()));
    }
    // the restricted identity on generator triples is equivalent to the full one
    let tree = SpanningTree::new(g)?;
    let m = a.modulus;
    for x in 0..g.order() {
        for y in 0..g.order() {
            for &s in &tree.gens {
                let xy = g.mul(x, y);
                let ys = g.mul(y, s);
                if (a.get(x, y) + a.get(xy, s)) % m != (a.get(y, s) + a.get(x, ys)) % m {
                    return Err(Error::InvalidCocycle(format!("identity fails at ({x}, {y}, {s})")));
                }
            }
        }
    }
    Ok(())
}

/// `db(x,y) = b(x) + b(y) - b(xy)`.
pub fn coboundary(g: &FiniteGroup, modulus: u64, b: &[u64]) -> Result<CocycleTable> {
    if b.len() != g.order() {
        return Err(Error::DimensionMismatch(format!("{} values for a group of order {}", b.len(), g.order())));
    }
    if b[0] % modulus != 0 {
        return Err(Error::InvalidParameter("b(1) must be 0".into()));
    }
    Ok(CocycleTable::from_fn(g, modulus, |x, y| b[x] as i64 + b[y] as i64 - b[g.mul(x, y)] as i64))
}

/// BFS tree of the right Cayley graph: `w = parent(w) * gens[gen(w)]`.
struct SpanningTree {
    gens: Vec<usize>,
    /// Non-identity elements in BFS order.
    order: Vec<usize>,
    parent: Vec<(usize, usize)>,
}

impl SpanningTree {
    fn new(g: &FiniteGroup) -> Result<Self> {
        let mut gens: Vec<usize> = g.generators().iter().copied().filter(|&s| s != 0).collect();
        gens.dedup();
        let n = g.order();
        // drop redundant generators; every one costs |G| unknowns
        let mut i = 0;
        while i < gens.len() {
            let rest: Vec<usize> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &s)| s).collect();
            if !rest.is_empty() && crate::groups::Subgroup::generated(g, &rest).order() == n {
                gens = rest;
            } else {
                i += 1;
            }
        }
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        parent[0] = (0, 0);
        let mut order = Vec::with_capacity(n);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(p) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                let w = g.mul(p, s);
                if parent[w].0 == usize::MAX {
                    parent[w] = (p, i);
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        if order.len() + 1 != n {
            return Err(Error::InvalidParameter(format!("generators of {} do not generate the group", g.label())));
        }
        Ok(SpanningTree { gens, order, parent })
    }

    fn is_tree_edge(&self, p: usize, i: usize, w: usize) -> bool {
        self.parent[w] == (p, i)
    }
}

fn check_cap(g: &FiniteGroup, cap: usize) -> Result<()> {
    if g.order() > cap {
        return Err(Error::CapExceeded { what: format!("cohomology of {}", g.label()), size: g.order() as u128, cap: cap as u128 });
    }
    Ok(())
}

/// Normalized 2-cocycles `Z^2(G, Z/m)` in generator coordinates.
pub struct CocycleSpace {
    modulus: u64,
    tree: SpanningTree,
    order: usize,
    label: String,
    snf: ModSmith,
}

impl CocycleSpace {
    fn var(&self, x: usize, s: usize) -> Option<usize> {
        (x != 0).then(|| (x - 1) * self.tree.gens.len() + s)
    }

    pub fn unknowns(&self) -> usize {
        (self.order - 1) * self.tree.gens.len()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Orders of the cyclic summands of `Z^2`.
    pub fn invariants(&self) -> Vec<u64> {
        invariant_factors(&self.snf.kernel_orders())
    }

    /// Generators of `Z^2` with their additive orders, as values on `(x, s)` pairs.
    pub fn generators(&self) -> Vec<(Vec<u64>, u64)> {
        self.snf.kernel_generators()
    }

    /// Expands generator values into a full table.
    pub fn table(&self, g: &FiniteGroup, base: &[u64]) -> CocycleTable {
        let n = self.order;
        let m = self.modulus as i64;
        let mut t = vec![0u64; n * n];
        let val = |x: usize, s: usize| self.var(x, s).map_or(0, |v| base[v] as i64);
        for x in 0..n {
            for &w in &self.tree.order {
                let (p, s) = self.tree.parent[w];
                let xp = g.mul(x, p);
                let v = t[x * n + p] as i64 + val(xp, s) - val(p, s);
                t[x * n + w] = v.rem_euclid(m) as u64;
            }
        }
        CocycleTable { group: self.label.clone(), order: n, modulus: self.modulus, table: t }
    }

    /// Restriction of a table to generator coordinates.
    pub fn base_of(&self, a: &CocycleTable) -> Vec<u64> {
        let mut out = vec![0; self.unknowns()];
        for x in 1..self.order {
            for (i, &s) in self.tree.gens.iter().enumerate() {
                out[self.var(x, i).unwrap()] = a.get(x, s) % self.modulus;
            }
        }
        out
    }

    /// The generator tables of `Z^2`.
    pub fn basis_tables(&self, g: &FiniteGroup) -> Vec<(CocycleTable, u64)> {
        self.generators().into_iter().map(|(v, o)| (self.table(g, &v), o)).collect()
    }
}

/// Builds `Z^2(G, Z/m)` from the tree-reduced constraint system.
pub fn cocycle_space(g: &FiniteGroup, m: u64) -> Result<CocycleSpace> {
    cocycle_space_capped(g, m, ORACLE_CAP)
}

pub fn cocycle_space_capped(g: &FiniteGroup, m: u64, cap: usize) -> Result<CocycleSpace> {
    check_cap(g, cap)?;
    if m < 2 {
        return Err(Error::InvalidParameter(format!("modulus must be at least 2, got {m}")));
    }
    let tree = SpanningTree::new(g)?;
    let n = g.order();
    let ns = tree.gens.len();
    let k = (n - 1) * ns;
    let var = |x: usize, s: usize| (x != 0).then(|| (x - 1) * ns + s);
    let mut ech = RowEchelon::new(m, k);
    let mi = m as i64;
    // expr[w]: e(x, w) as a sparse combination of generator unknowns, for the current x
    let mut expr: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let mut row = vec![0i64; k];
    for x in 0..n {
        for &w in &tree.order {
            let (p, s) = tree.parent[w];
            let mut e = expr[p].clone();
            if let Some(v) = var(g.mul(x, p), s) {
                e.push((v, 1));
            }
            if let Some(v) = var(p, s) {
                e.push((v, -1));
            }
            expr[w] = e;
        }
        for p in 0..n {
            for (i, &s) in tree.gens.iter().enumerate() {
                let w = g.mul(p, s);
                if tree.is_tree_edge(p, i, w) {
                    continue;
                }
                // e(x, w) - e(x, p) - e(xp, s) + e(p, s) = 0
                let mut touched = Vec::new();
                let mut add = |v: usize, c: i64, row: &mut Vec<i64>| {
                    if row[v] == 0 {
                        touched.push(v);
                    }
                    row[v] += c;
                };
                for &(v, c) in &expr[w] {
                    add(v, c, &mut row);
                }
                for &(v, c) in &expr[p] {
                    add(v, -c, &mut row);
                }
                if let Some(v) = var(g.mul(x, p), i) {
                    add(v, -1, &mut row);
                }
                if let Some(v) = var(p, i) {
                    add(v, 1, &mut row);
                }
                let mut dense = None;
                for &v in &touched {
                    let c = row[v].rem_euclid(mi) as u64;
                    row[v] = 0;
                    if c != 0 {
                        dense.get_or_insert_with(|| vec![0u64; k])[v] = c;
                    }
                }
                if let Some(d) = dense {
                    ech.insert(d);
                }
            }
        }
    }
    let snf = smith_mod(&ech.into_matrix(), None);
    Ok(CocycleSpace { modulus: m, tree, order: n, label: g.label().into(), snf })
}

/// Generators of `B^2(G, Z/m)`: the coboundaries of point indicators, in generator coordinates.
fn coboundary_rows(g: &FiniteGroup, space: &CocycleSpace) -> Vec<Vec<u64>> {
    let n = g.order();
    let m = space.modulus;
    let ns = space.tree.gens.len();
    let mut rows = Vec::with_capacity(n - 1);
    for h in 1..n {
        let mut v = vec![0u64; space.unknowns()];
        for x in 1..n {
            for (i, &s) in space.tree.gens.iter().enumerate() {
                let val = (x == h) as i64 + (s == h) as i64 - (g.mul(x, s) == h) as i64;
                v[(x - 1) * ns + i] = val.rem_euclid(m as i64) as u64;
            }
        }
        rows.push(v);
    }
    rows
}

/// Coboundary space `B^2(G, Z/m)` with its generators as tables.
pub struct CoboundarySpace {
    pub invariants: Vec<u64>,
    pub generators: Vec<CocycleTable>,
}

pub fn coboundary_space(g: &FiniteGroup, m: u64) -> Result<CoboundarySpace> {
    check_cap(g, ORACLE_CAP)?;
    let space = cocycle_space(g, m)?;
    let rows = coboundary_rows(g, &space);
    let mut ech = RowEchelon::new(m, space.unknowns());
    for r in &rows {
        ech.insert(r.clone());
    }
    let snf = smith_mod(&ech.into_matrix(), None);
    let invariants = invariant_factors(&snf.image_orders());
    let generators = (1..g.order())
        .map(|h| {
            let mut b = vec![0u64; g.order()];
            b[h] = 1;
            coboundary(g, m, &b).expect("sizes match")
        })
        .collect();
    Ok(CoboundarySpace { invariants, generators })
}

/// How far the multiplier read-off can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    /// `|G|` divides `m`, so the exponent of the multiplier divides `m`.
    Exact,
    /// Relies on the exponent of the multiplier dividing `m`.
    ExponentBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub group: String,
    pub m: u64,
    pub z2_invariants: Vec<u64>,
    pub b2_invariants: Vec<u64>,
    pub h2_invariants: Vec<u64>,
    pub hom_invariants: Vec<u64>,
    pub multiplier_order: u64,
    pub multiplier_invariants: Vec<u64>,
    pub confidence: Confidence,
}

/// `m = min(exp(G)^2, |G|)`.
pub fn default_modulus(g: &FiniteGroup) -> u64 {
    let e = g.exponent();
    (e * e).min(g.order() as u64).max(2)
}

/// Invariants of `Hom(G, Z/m)`.
pub fn hom_invariants(g: &FiniteGroup, m: u64) -> Result<Vec<u64>> {
    let tree = SpanningTree::new(g)?;
    let ns = tree.gens.len();
    let n = g.order();
    let mut count = vec![vec![0i64; ns]; n];
    for &w in &tree.order {
        let (p, s) = tree.parent[w];
        let mut c = count[p].clone();
        c[s] += 1;
        count[w] = c;
    }
    let mut ech = RowEchelon::new(m, ns);
    for p in 0..n {
        for (i, &s) in tree.gens.iter().enumerate() {
            let w = g.mul(p, s);
            if tree.is_tree_edge(p, i, w) {
                continue;
            }
            let row: Vec<u64> = (0..ns)
                .map(|j| (count[w][j] - count[p][j] - (i == j) as i64).rem_euclid(m as i64) as u64)
                .collect();
            if row.iter().any(|&x| x != 0) {
                ech.insert(row);
            }
        }
    }
    let snf = smith_mod(&ech.into_matrix(), None);
    Ok(invariant_factors(&snf.kernel_orders()))
}

/// `H^2(G, Z/m)`, `Hom(G, Z/m)` and the Schur multiplier read off from them.
pub fn multiplier_order(g: &FiniteGroup, m: Option<u64>) -> Result<CohomologyReport> {
    multiplier_order_capped(g, m, ORACLE_CAP)
}

pub fn multiplier_order_capped(g: &FiniteGroup, m: Option<u64>, cap: usize) -> Result<CohomologyReport> {
    check_cap(g, cap)?;
    let m = m.unwrap_or_else(|| default_modulus(g));
    if g.order() == 1 {
        return Ok(CohomologyReport {
            group: g.label().into(),
            m,
            z2_invariants: vec![],
            b2_invariants: vec![],
            h2_invariants: vec![],
            hom_invariants: vec![],
            multiplier_order: 1,
            multiplier_invariants: vec![],
            confidence: Confidence::Exact,
        });
    }
    let space = cocycle_space_capped(g, m, cap)?;
    let z2_orders = space.snf.kernel_orders();
    let brows = coboundary_rows(g, &space);

    let mut b_ech = RowEchelon::new(m, space.unknowns());
    // Z^2 = sum Z/g_i: coordinates of coboundaries plus the relations g_i e_i
    let nz = z2_orders.len();
    let mut h_ech = RowEchelon::new(m, nz);
    for r in &brows {
        let c = space
            .snf
            .kernel_coordinates(r)
            .ok_or_else(|| Error::CheckFailed("coboundary outside the cocycle space".into()))?;
        h_ech.insert(c);
        b_ech.insert(r.clone());
    }
    for (i, &o) in z2_orders.iter().enumerate() {
        let mut row = vec![0u64; nz];
        row[i] = o % m;
        h_ech.insert(row);
    }
    let b_snf = smith_mod(&b_ech.into_matrix(), None);
    let h_snf = smith_mod(&h_ech.into_matrix(), None);
    let h2 = h_snf.cokernel_orders();
    let hom = hom_invariants(g, m)?;

    let mut h2_ed = elementary_divisors(&h2);
    for d in elementary_divisors(&hom) {
        let pos = h2_ed
            .iter()
            .position(|&x| x == d)
            .ok_or_else(|| Error::CheckFailed(format!("Hom summand Z/{d} missing from H^2; modulus {m} too small")))?;
        h2_ed.remove(pos);
    }
    let multiplier_invariants = invariant_factors(&h2_ed);
    let confidence = if m % g.order() as u64 == 0 { Confidence::Exact } else { Confidence::ExponentBound };
    Ok(CohomologyReport {
        group: g.label().into(),
        m,
        z2_invariants: invariant_factors(&z2_orders),
        b2_invariants: invariant_factors(&b_snf.image_orders()),
        h2_invariants: invariant_factors(&h2),
        hom_invariants: hom,
        multiplier_order: multiplier_invariants.iter().product(),
        multiplier_invariants,
        confidence,
    })
}

/// Whether the class of `a` in `H^2(G, C^x)` is trivial.
pub fn is_coboundary(g: &FiniteGroup, a: &CocycleTable) -> Result<bool> {
    require_cocycle(g, a)?;
    Ok(coboundary_witness(g, a)?.is_some())
}

/// A function `b` with `db = a` (exponents modulo `m exp(G)`), if one exists.
pub fn coboundary_witness(g: &FiniteGroup, a: &CocycleTable) -> Result<Option<(Vec<u64>, u64)>> {
    let big_m = a.modulus * g.exponent();
    let a = a.lift(big_m)?;
    let tree = SpanningTree::new(g)?;
    let ns = tree.gens.len();
    let n = g.order();
    // b(w) = sum c_s b(s) + k along the tree, from b(ps) = b(p) + b(s) - a(p, s)
    let mut coef = vec![(vec![0i64; ns], 0i64); n];
    let mi = big_m as i64;
    for &w in &tree.order {
        let (p, s) = tree.parent[w];
        let (mut c, k) = coef[p].clone();
        c[s] += 1;
        coef[w] = (c, (k - a.get(p, tree.gens[s]) as i64).rem_euclid(mi));
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for p in 0..n {
        for (i, &s) in tree.gens.iter().enumerate() {
            let w = g.mul(p, s);
            if tree.is_tree_edge(p, i, w) {
                continue;
            }
            // b(w) - b(p) - b(s) = -a(p, s)
            let row: Vec<i64> = (0..ns).map(|j| coef[w].0[j] - coef[p].0[j] - (i == j) as i64).collect();
            let r = -(a.get(p, s) as i64) - coef[w].1 + coef[p].1;
            rows.push(row);
            rhs.push(BigInt::from(r));
        }
    }
    if rows.is_empty() {
        let b = (0..n).map(|w| coef[w].1 as u64).collect();
        return Ok(Some((b, big_m)));
    }
    let mat = IntMatrix::from_rows_with_cols(&rows, ns)?;
    let sol = solve_mod(&mat, &rhs, big_m)?;
    Ok(sol.particular.map(|x| {
        let b = (0..n)
            .map(|w| {
                let s: i64 = coef[w].0.iter().zip(&x).map(|(&c, &v)| c * v as i64).sum();
                (s + coef[w].1).rem_euclid(mi) as u64
            })
            .collect();
        (b, big_m)
    }))
}

/// `[a] = [b]` in `H^2(G, C^x)`.
pub fn cohomologous(g: &FiniteGroup, a: &CocycleTable, b: &CocycleTable) -> Result<bool> {
    is_coboundary(g, &a.sub(b)?)
}

/// `nu(x, y) = e(x, y) - e(y, x)` on a commuting pair.
pub fn nu_value(g: &FiniteGroup, a: &CocycleTable, x: usize, y: usize) -> Result<u64> {
    if g.mul(x, y) != g.mul(y, x) {
        return Err(Error::InvalidParameter(format!("elements {x} and {y} do not commute")));
    }
    let m = a.modulus;
    Ok((a.get(x, y) + m - a.get(y, x)) % m)
}

/// The alternating pairing `nu` on an abelian group, as a table.
pub fn nu_pairing(g: &FiniteGroup, a: &CocycleTable) -> Result<CocycleTable> {
    if !g.is_abelian() {
        return Err(Error::InvalidParameter(format!("{} is not abelian", g.label())));
    }
    let m = a.modulus as i64;
    Ok(CocycleTable::from_fn(g, a.modulus, |x, y| (a.get(x, y) as i64 - a.get(y, x) as i64).rem_euclid(m)))
}

/// `(x, y) -> b(pi(x), pi(y))`.
pub fn inflate_cocycle(b: &CocycleTable, g: &FiniteGroup, pi: &GroupHom) -> Result<CocycleTable> {
    if pi.codomain_order() != b.order || pi.domain_order() != g.order() {
        return Err(Error::DimensionMismatch("projection does not match the cocycle's group".into()));
    }
    Ok(CocycleTable::from_fn(g, b.modulus, |x, y| b.get(pi.apply(x), pi.apply(y)) as i64))
}

/// Character of `A` given by exponents on the extension's basis of `A`.
/// Returns the modulus used and the exponent of every element of `A`.
pub fn character_values(ext: &CentralExtension, chi: &[u64]) -> Result<(u64, Vec<Option<u64>>)> {
    if chi.len() != ext.a_basis.len() {
        return Err(Error::DimensionMismatch(format!("{} exponents for a basis of size {}", chi.len(), ext.a_basis.len())));
    }
    for (&e, &o) in chi.iter().zip(&ext.a_orders) {
        if e >= o {
            return Err(Error::NotHomomorphism(format!("exponent {e} on a generator of order {o}")));
        }
    }
    let m = ext.a_orders.iter().fold(1u64, |acc, &o| lcm(acc, o)).max(1);
    let vals = (0..ext.star.order())
        .map(|x| {
            ext.a_coordinates(x).map(|c| {
                c.iter().zip(chi).zip(&ext.a_orders).map(|((&ci, &e), &o)| ci * e * (m / o)).sum::<u64>() % m
            })
        })
        .collect();
    Ok((m, vals))
}

/// `tra(chi)(x, y) = chi(mu(x) mu(y) mu(xy)^-1)`.
pub fn transgress(ext: &CentralExtension, chi: &[u64]) -> Result<CocycleTable> {
    let (m, vals) = character_values(ext, chi)?;
    let q = &ext.quotient;
    let m = m.max(1);
    let mut out = CocycleTable::zero(q, m);
    for x in 0..q.order() {
        for y in 0..q.order() {
            let d = ext.defect(x, y);
            out.table[x * q.order() + y] =
                vals[d].ok_or_else(|| Error::CheckFailed("section defect outside A".into()))?;
        }
    }
    Ok(out)
}

/// Checks that a table is a valid normalized cocycle (restricted identity).
pub fn validate_cocycle(g: &FiniteGroup, a: &CocycleTable) -> Result<()> {
    require_cocycle(g, a)
}
