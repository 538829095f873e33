use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major, arbitrary precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_cols<T: Into<BigInt> + Copy>(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            entries.extend(r.iter().map(|&x| x.into()));
        }
        Ok(IntMatrix { rows: rows.len(), cols, entries })
    }

    pub fn diagonal<T: Into<BigInt> + Copy>(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d.into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

fn floor_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    // remainder lands in [0, |p|)
    let (q, r) = a.div_mod_floor(p);
    if r.is_negative() {
        q + BigInt::one()
    } else {
        q
    }
}

/// Smith normal form over Z. Pivot: smallest nonzero absolute value in the
/// remaining block, ties broken in row-major order.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);
    'pivots: for k in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'pivots };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = -floor_quotient(&d[(i, k)], &d[(k, k)]);
                d.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                if !d[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = -floor_quotient(&d[(k, j)], &d[(k, k)]);
                d.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                if !d[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block by the pivot
            let p = d[(k, k)].clone();
            let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    SmithDecomposition { u, d, v }
}

/// Invariant factors of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    /// Nontrivial torsion invariants, each > 1, forming a divisibility chain.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |acc, x| acc * x))
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|x| u64::try_from(x).expect("invariant exceeds u64")).collect()
    }
}

/// Invariants of `Z^cols / rowspace(relations)`.
pub fn abelian_invariants(relations: &IntMatrix) -> AbelianInvariants {
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let mut torsion = Vec::new();
    let mut rank = 0;
    for x in &diag {
        if x.is_zero() {
            continue;
        }
        rank += 1;
        if !x.is_one() {
            torsion.push(x.clone());
        }
    }
    AbelianInvariants { torsion, free_rank: relations.cols() - rank }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) {
        let snf = smith_normal_form(a);
        let lhs = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        assert_eq!(lhs, snf.d);
        assert_eq!(snf.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(snf.v.determinant().unwrap().abs(), BigInt::one());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn diag_2_3() {
        let a = IntMatrix::diagonal(&[2, 3]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        check(&a);
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMatrix::identity(4);
        assert_eq!(smith_normal_form(&id).d, id);
        let z = IntMatrix::zeros(3, 2);
        assert_eq!(smith_normal_form(&z).d, z);
        check(&IntMatrix::zeros(0, 3));
    }

    #[test]
    fn invariants_examples() {
        let inv = abelian_invariants(&IntMatrix::diagonal(&[3, 3]));
        assert_eq!(inv.torsion_u64(), vec![3, 3]);
        let inv = abelian_invariants(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(inv.torsion_u64(), vec![6]);
        let inv = abelian_invariants(&IntMatrix::zeros(0, 1));
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion.is_empty());
        assert_eq!(inv.order(), None);
    }

    #[test]
    fn mixed_signs() {
        let a = IntMatrix::from_rows(&[vec![4, -6, 2], vec![-2, 3, 7], vec![0, 5, -5]]).unwrap();
        check(&a);
    }
}
