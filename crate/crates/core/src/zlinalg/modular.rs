use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::int::IntMatrix;
use crate::error::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Extended gcd on non-negative integers: `s*a + t*b == g`.
fn xgcd(a: u64, b: u64) -> (i128, i128, u64) {
    let e = (a as i128).extended_gcd(&(b as i128));
    (e.x, e.y, e.gcd as u64)
}

#[inline]
fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Dense matrix over Z/m, entries kept in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        ModMatrix { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(modulus: u64, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} expected {}", r.len(), cols)));
            }
            data.extend(r.iter().map(|x| x % modulus));
        }
        Ok(ModMatrix { modulus, rows: rows.len(), cols, data })
    }

    pub fn from_int(a: &IntMatrix, modulus: u64) -> Self {
        let m = BigInt::from(modulus);
        let mut out = ModMatrix::zeros(modulus, a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                out.data[i * a.cols() + j] = a[(i, j)].mod_floor(&m).to_u64().unwrap();
            }
        }
        out
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                let s: u128 = self.row(i).iter().zip(x).map(|(&a, &b)| a as u128 * b as u128).sum();
                (s % self.modulus as u128) as u64
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, q: u64) {
        if q == 0 {
            return;
        }
        let m = self.modulus;
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            if s != 0 {
                let d = &mut self.data[dst * self.cols + j];
                *d = (*d + mulmod(q, s, m)) % m;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn axpy_col(&mut self, dst: usize, src: usize, q: u64) {
        if q == 0 {
            return;
        }
        let m = self.modulus;
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src];
            if s != 0 {
                let d = &mut self.data[i * self.cols + dst];
                *d = (*d + mulmod(q, s, m)) % m;
            }
        }
    }
}

/// Scales `row` by a unit so its leading entry divides `m`.
fn normalize_lead(row: &mut [u64], m: u64) {
    let (s, _, g) = xgcd(row[0], m);
    if g == row[0] {
        return;
    }
    let (s, step) = (reduce(s, m), m / g);
    let u = (0..g).map(|k| (s + k * step) % m).find(|&u| gcd(u, m) == 1).expect("a unit lift exists");
    for x in row.iter_mut() {
        *x = ((*x as u128 * u as u128) % m as u128) as u64;
    }
}

/// Streaming row-module accumulator over Z/m. Every inserted row is absorbed by
/// unimodular 2x2 combinations, so the row module is preserved while at most
/// one stored row exists per leading column.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    modulus: u64,
    cols: usize,
    pivots: Vec<Option<Vec<u64>>>,
}

impl RowEchelon {
    pub fn new(modulus: u64, cols: usize) -> Self {
        RowEchelon { modulus, cols, pivots: vec![None; cols] }
    }

    pub fn insert(&mut self, mut row: Vec<u64>) {
        debug_assert_eq!(row.len(), self.cols);
        let m = self.modulus;
        for x in row.iter_mut() {
            *x %= m;
        }
        let mut start = 0;
        loop {
            let Some(c) = (start..self.cols).find(|&j| row[j] != 0) else { return };
            match self.pivots[c].take() {
                None => {
                    normalize_lead(&mut row[c..], m);
                    self.pivots[c] = Some(row);
                    return;
                }
                Some(p) if row[c] % p[c] == 0 => {
                    let q = (m - row[c] / p[c]) as u128;
                    for j in c..self.cols {
                        row[j] = ((row[j] as u128 + q * p[j] as u128) % m as u128) as u64;
                    }
                    self.pivots[c] = Some(p);
                    start = c + 1;
                }
                Some(mut p) => {
                    let (a, b) = (p[c], row[c]);
                    let (s, t, g) = xgcd(a, b);
                    let (ag, bg) = ((a / g) as i128, (b / g) as i128);
                    for j in c..self.cols {
                        let (pj, rj) = (p[j] as i128, row[j] as i128);
                        p[j] = reduce(s * pj + t * rj, m);
                        row[j] = reduce(bg * pj - ag * rj, m);
                    }
                    debug_assert_eq!(row[c], 0);
                    self.pivots[c] = Some(p);
                    start = c + 1;
                }
            }
        }
    }

    pub fn rank_bound(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    pub fn into_matrix(self) -> ModMatrix {
        let rows: Vec<Vec<u64>> = self.pivots.into_iter().flatten().collect();
        ModMatrix::from_rows(self.modulus, self.cols, &rows).expect("consistent widths")
    }
}

/// Diagonalization of a matrix over Z/m: `U A V = diag(d)` with `U`, `V`
/// invertible mod m. Only `V` and `V^-1` are materialized; `U` is applied to an
/// optional right-hand side instead.
#[derive(Clone, Debug)]
pub struct ModSmith {
    pub modulus: u64,
    pub rows: usize,
    pub cols: usize,
    /// Diagonal entries for positions `0..rank`, each nonzero mod m.
    pub diag: Vec<u64>,
    pub v: ModMatrix,
    pub v_inv: ModMatrix,
    /// `U b` when a right-hand side was supplied.
    pub rhs: Option<Vec<u64>>,
}

pub fn smith_mod(a: &ModMatrix, rhs: Option<&[u64]>) -> ModSmith {
    let m = a.modulus;
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut v = ModMatrix::zeros(m, cols, cols);
    let mut v_inv = ModMatrix::zeros(m, cols, cols);
    for i in 0..cols {
        v.data[i * cols + i] = 1 % m;
        v_inv.data[i * cols + i] = 1 % m;
    }
    let mut b: Option<Vec<u64>> = rhs.map(|r| r.iter().map(|x| x % m).collect());
    let mut diag = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize, u64)> = None;
            for i in k..rows {
                for j in k..cols {
                    let x = d.get(i, j);
                    if x != 0 && best.map_or(true, |(_, _, bx)| x < bx) {
                        best = Some((i, j, x));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return ModSmith { modulus: m, rows, cols, diag, v, v_inv, rhs: b };
            };
            d.swap_rows(k, pi);
            if let Some(b) = b.as_mut() {
                b.swap(k, pi);
            }
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_inv.swap_rows(k, pj);

            let p = d.get(k, k);
            let mut clean = true;
            for i in k + 1..rows {
                let x = d.get(i, k);
                if x == 0 {
                    continue;
                }
                let q = (m - (x / p) % m) % m;
                d.axpy_row(i, k, q);
                if let Some(b) = b.as_mut() {
                    b[i] = (b[i] + mulmod(q, b[k], m)) % m;
                }
                if d.get(i, k) != 0 {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                let x = d.get(k, j);
                if x == 0 {
                    continue;
                }
                let q = (m - (x / p) % m) % m;
                d.axpy_col(j, k, q);
                v.axpy_col(j, k, q);
                // inverse op: row_k(V^-1) -= q row_j(V^-1)
                v_inv.axpy_row(k, j, (m - q) % m);
                if d.get(k, j) != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        diag.push(d.get(k, k));
    }
    ModSmith { modulus: m, rows, cols, diag, v, v_inv, rhs: b }
}

impl ModSmith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Kernel of the matrix as cyclic pieces: `(generator, order)` pairs whose
    /// direct sum is the full kernel.
    pub fn kernel_generators(&self) -> Vec<(Vec<u64>, u64)> {
        let m = self.modulus;
        let mut out = Vec::new();
        for i in 0..self.cols {
            let (scale, order) = if i < self.rank() {
                let g = gcd(self.diag[i], m);
                (m / g, g)
            } else {
                (1, m)
            };
            if order == 1 {
                continue;
            }
            let col: Vec<u64> = (0..self.cols).map(|r| mulmod(self.v.get(r, i), scale, m)).collect();
            out.push((col, order));
        }
        out
    }

    /// Coordinates of a kernel element with respect to [`Self::kernel_generators`].
    /// Returns `None` when `x` is not in the kernel.
    pub fn kernel_coordinates(&self, x: &[u64]) -> Option<Vec<u64>> {
        let m = self.modulus;
        let y = self.v_inv.mul_vec(x);
        let mut coords = Vec::new();
        for (i, &yi) in y.iter().enumerate() {
            let (scale, order) = if i < self.rank() {
                let g = gcd(self.diag[i], m);
                (m / g, g)
            } else {
                (1, m)
            };
            if yi % scale != 0 {
                return None;
            }
            if order == 1 {
                continue;
            }
            coords.push((yi / scale) % order);
        }
        Some(coords)
    }

    /// Orders of the cyclic summands of the kernel.
    pub fn kernel_orders(&self) -> Vec<u64> {
        self.kernel_generators().into_iter().map(|(_, o)| o).collect()
    }

    /// Orders of the cyclic summands of the image (row space acting on columns).
    pub fn image_orders(&self) -> Vec<u64> {
        let m = self.modulus;
        self.diag.iter().map(|&d| m / gcd(d, m)).filter(|&o| o > 1).collect()
    }

    /// Orders of the cyclic summands of `(Z/m)^cols / rowspace`.
    pub fn cokernel_orders(&self) -> Vec<u64> {
        let m = self.modulus;
        let mut v: Vec<u64> = self.diag.iter().map(|&d| gcd(d, m)).filter(|&o| o > 1).collect();
        v.extend(std::iter::repeat(m).take(self.cols - self.rank()).filter(|&o| o > 1));
        v
    }
}

/// Normalizes a list of cyclic orders into invariant factors (`d_1 | d_2 | ...`, all > 1).
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &o in orders {
        for (p, e) in factorize(o) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        let off = len - powers.len();
        for (i, q) in powers.iter().enumerate() {
            out[off + i] *= q;
        }
    }
    out
}

/// Prime-power decomposition of every order, flattened and sorted.
pub fn elementary_divisors(orders: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = orders
        .iter()
        .flat_map(|&o| factorize(o).into_iter().map(|(p, e)| p.pow(e)))
        .collect();
    out.sort_unstable();
    out
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All solutions of `A x = b (mod m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModSolutionSet {
    pub modulus: u64,
    pub particular: Option<Vec<u64>>,
    /// Generators of the solution kernel, paired with their additive orders.
    pub kernel: Vec<(Vec<u64>, u64)>,
}

impl ModSolutionSet {
    pub fn is_solvable(&self) -> bool {
        self.particular.is_some()
    }

    /// Number of solutions (0 when unsolvable).
    pub fn count(&self) -> u128 {
        if self.particular.is_none() {
            return 0;
        }
        self.kernel.iter().map(|(_, o)| *o as u128).product()
    }
}

/// Solves `A x = b (mod m)` for a matrix over Z/m.
pub fn solve_mod_matrix(a: &ModMatrix, b: &[u64]) -> Result<ModSolutionSet> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("{} rows vs right-hand side of length {}", a.rows(), b.len())));
    }
    let m = a.modulus();
    // compress [A | b] first; the row module of the augmented system fixes the solution set
    let mut ech = RowEchelon::new(m, a.cols() + 1);
    for i in 0..a.rows() {
        let mut r = a.row(i).to_vec();
        r.push(b[i] % m);
        ech.insert(r);
    }
    let aug = ech.into_matrix();
    let cols = a.cols();
    let mut rows_a = Vec::with_capacity(aug.rows());
    let mut rhs = Vec::with_capacity(aug.rows());
    for i in 0..aug.rows() {
        let r = aug.row(i);
        rows_a.push(r[..cols].to_vec());
        rhs.push(r[cols]);
    }
    let compressed = ModMatrix::from_rows(m, cols, &rows_a)?;
    Ok(solve_compressed(&compressed, &rhs))
}

fn solve_compressed(a: &ModMatrix, b: &[u64]) -> ModSolutionSet {
    let m = a.modulus();
    let snf = smith_mod(a, Some(b));
    let ub = snf.rhs.clone().unwrap_or_default();
    let kernel = snf.kernel_generators();
    let mut y = vec![0u64; a.cols()];
    let mut ok = true;
    for (i, &c) in ub.iter().enumerate() {
        if i < snf.rank() {
            let d = snf.diag[i];
            let g = gcd(d, m);
            if c % g != 0 {
                ok = false;
                break;
            }
            // d y = c (mod m)  ->  (d/g) y = c/g (mod m/g)
            let mg = m / g;
            if mg == 1 {
                y[i] = 0;
                continue;
            }
            let (s, _, _) = xgcd((d / g) % mg, mg);
            y[i] = reduce(s * ((c / g) as i128), mg);
        } else if c != 0 {
            ok = false;
            break;
        }
    }
    let particular = ok.then(|| snf.v.mul_vec(&y));
    ModSolutionSet { modulus: m, particular, kernel }
}

/// Solves `A x = b (mod m)` for an integer matrix.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], m: u64) -> Result<ModSolutionSet> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("modulus must be at least 2, got {m}")));
    }
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("{} rows vs right-hand side of length {}", a.rows(), b.len())));
    }
    let mm = BigInt::from(m);
    let bm: Vec<u64> = b.iter().map(|x| x.mod_floor(&mm).to_u64().unwrap()).collect();
    solve_mod_matrix(&ModMatrix::from_int(a, m), &bm)
}
