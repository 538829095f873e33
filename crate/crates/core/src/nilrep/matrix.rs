use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycMatrix, CyclotomicNumber};
use crate::error::{Error, Result};

/// Generalized permutation matrix with root-of-unity entries: column `j` has the
/// single entry `zeta_M^exps[j]` in row `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMatrix {
    pub conductor: u64,
    pub perm: Vec<usize>,
    pub exps: Vec<u64>,
}

impl MonomialMatrix {
    pub fn identity(conductor: u64, d: usize) -> Self {
        MonomialMatrix { conductor, perm: (0..d).collect(), exps: vec![0; d] }
    }

    pub fn scalar(conductor: u64, d: usize, e: u64) -> Self {
        MonomialMatrix { conductor, perm: (0..d).collect(), exps: vec![e % conductor; d] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        let m = self.conductor;
        let perm = other.perm.iter().map(|&k| self.perm[k]).collect();
        let exps = other.perm.iter().zip(&other.exps).map(|(&k, &e)| (e + self.exps[k]) % m).collect();
        MonomialMatrix { conductor: m, perm, exps }
    }

    pub fn inverse(&self) -> Self {
        let m = self.conductor;
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut exps = vec![0; d];
        for j in 0..d {
            perm[self.perm[j]] = j;
            exps[self.perm[j]] = (m - self.exps[j]) % m;
        }
        MonomialMatrix { conductor: m, perm, exps }
    }

    /// Exponent `e` with `self = zeta^e I`.
    pub fn scalar_exponent(&self) -> Option<u64> {
        let e = *self.exps.first()?;
        (self.perm.iter().enumerate().all(|(i, &p)| p == i) && self.exps.iter().all(|&x| x == e)).then_some(e)
    }

    pub fn lift(&self, n: u64) -> Self {
        let f = n / self.conductor;
        MonomialMatrix { conductor: n, perm: self.perm.clone(), exps: self.exps.iter().map(|e| e * f).collect() }
    }

    pub fn to_dense(&self) -> CycMatrix {
        let d = self.dim();
        let mut out = CycMatrix::zeros(self.conductor, d, d);
        for j in 0..d {
            out.set(self.perm[j], j, CyclotomicNumber::root(self.conductor, self.exps[j]));
        }
        out
    }

    /// Trace as a multiset of root exponents on fixed points.
    pub fn trace_exponents(&self) -> Vec<u64> {
        let mut v: Vec<u64> = (0..self.dim()).filter(|&j| self.perm[j] == j).map(|j| self.exps[j]).collect();
        v.sort_unstable();
        v
    }
}

/// Representation matrix, kept monomial whenever possible.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Mat {
    Mono(MonomialMatrix),
    Dense(CycMatrix),
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Mat::Mono(a), Mat::Mono(b)) => a == b,
            _ => self.conductor() == other.conductor() && self.to_dense() == other.to_dense(),
        }
    }
}

impl Eq for Mat {}

impl Mat {
    pub fn identity(conductor: u64, d: usize) -> Self {
        Mat::Mono(MonomialMatrix::identity(conductor, d))
    }

    pub fn dim(&self) -> usize {
        match self {
            Mat::Mono(m) => m.dim(),
            Mat::Dense(m) => m.rows,
        }
    }

    pub fn conductor(&self) -> u64 {
        match self {
            Mat::Mono(m) => m.conductor,
            Mat::Dense(m) => m.conductor,
        }
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self, Mat::Mono(_))
    }

    pub fn to_dense(&self) -> CycMatrix {
        match self {
            Mat::Mono(m) => m.to_dense(),
            Mat::Dense(m) => m.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() || self.conductor() != other.conductor() {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} (M={}) and {}x{} (M={})",
                self.dim(),
                self.dim(),
                self.conductor(),
                other.dim(),
                other.dim(),
                other.conductor()
            )));
        }
        Ok(match (self, other) {
            (Mat::Mono(a), Mat::Mono(b)) => Mat::Mono(a.mul(b)),
            _ => Mat::Dense(self.to_dense().mul(&other.to_dense())?),
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(match self {
            Mat::Mono(a) => Mat::Mono(a.inverse()),
            Mat::Dense(a) => Mat::Dense(a.inverse()?),
        })
    }

    pub fn pow(&self, mut k: u64) -> Result<Self> {
        let mut acc = Mat::identity(self.conductor(), self.dim());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Multiplies by the scalar `zeta_M^e`.
    pub fn scale_root(&self, e: u64) -> Self {
        match self {
            Mat::Mono(a) => {
                let m = a.conductor;
                Mat::Mono(MonomialMatrix { exps: a.exps.iter().map(|x| (x + e) % m).collect(), ..a.clone() })
            }
            Mat::Dense(a) => Mat::Dense(CycMatrix { data: a.data.iter().map(|x| x.mul_root(e)).collect(), ..a.clone() }),
        }
    }

    pub fn lift(&self, n: u64) -> Result<Self> {
        if n % self.conductor() != 0 {
            return Err(Error::InvalidParameter(format!("cannot lift conductor {} to {n}", self.conductor())));
        }
        Ok(match self {
            Mat::Mono(a) => Mat::Mono(a.lift(n)),
            Mat::Dense(a) => Mat::Dense(a.lift(n)?),
        })
    }

    pub fn trace(&self) -> CyclotomicNumber {
        match self {
            Mat::Mono(a) => a
                .trace_exponents()
                .iter()
                .fold(CyclotomicNumber::zero(a.conductor), |acc, &e| acc.add(&CyclotomicNumber::root(a.conductor, e))),
            Mat::Dense(a) => a.trace(),
        }
    }

    /// Exponent `e` with `self = zeta^e I`, when `self` is a root-of-unity scalar.
    pub fn scalar_exponent(&self) -> Option<u64> {
        match self {
            Mat::Mono(a) => a.scalar_exponent(),
            Mat::Dense(a) => {
                let c = a.get(0, 0).clone();
                let e = c.as_root_of_unity()?;
                (*a == CycMatrix::identity(a.conductor, a.rows).scale(&c)).then_some(e)
            }
        }
    }

    /// Monomial form of a dense matrix whose nonzero entries are roots of unity,
    /// one per row and column.
    pub fn try_monomial(self) -> Self {
        let Mat::Dense(a) = &self else { return self };
        let d = a.rows;
        let mut perm = vec![usize::MAX; d];
        let mut exps = vec![0; d];
        for j in 0..d {
            for i in 0..d {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match (perm[j], x.as_root_of_unity()) {
                    (usize::MAX, Some(e)) => {
                        perm[j] = i;
                        exps[j] = e;
                    }
                    _ => return self,
                }
            }
        }
        let mut seen = vec![false; d];
        for &p in &perm {
            if p == usize::MAX || std::mem::replace(&mut seen[p], true) {
                return self;
            }
        }
        Mat::Mono(MonomialMatrix { conductor: a.conductor, perm, exps })
    }

    /// Block matrix from a `k x k` grid of `d x d` blocks, `None` meaning zero.
    pub fn from_blocks(blocks: &[Vec<Option<Mat>>], d: usize, conductor: u64) -> Result<Self> {
        let k = blocks.len();
        let all_mono = blocks.iter().flatten().flatten().all(Mat::is_monomial);
        let col_blocks = |j: usize| (0..k).filter(|&i| blocks[i][j].is_some()).count();
        if all_mono && (0..k).all(|j| col_blocks(j) == 1) {
            let mut perm = vec![0; k * d];
            let mut exps = vec![0; k * d];
            for j in 0..k {
                let i = (0..k).find(|&i| blocks[i][j].is_some()).expect("one block per column");
                let Some(Mat::Mono(b)) = &blocks[i][j] else { unreachable!() };
                for c in 0..d {
                    perm[j * d + c] = i * d + b.perm[c];
                    exps[j * d + c] = b.exps[c];
                }
            }
            return Ok(Mat::Mono(MonomialMatrix { conductor, perm, exps }));
        }
        let mut out = CycMatrix::zeros(conductor, k * d, k * d);
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if let Some(b) = b {
                    let b = b.to_dense();
                    for r in 0..d {
                        for c in 0..d {
                            out.set(i * d + r, j * d + c, b.get(r, c).clone());
                        }
                    }
                }
            }
        }
        Ok(Mat::Dense(out))
    }

    /// Direct sum of two matrices.
    pub fn direct_sum(&self, other: &Mat) -> Result<Mat> {
        let m = self.conductor();
        if other.conductor() != m {
            return Err(Error::DimensionMismatch("direct sum across conductors".into()));
        }
        let (d1, d2) = (self.dim(), other.dim());
        if let (Mat::Mono(a), Mat::Mono(b)) = (self, other) {
            let mut perm = a.perm.clone();
            perm.extend(b.perm.iter().map(|p| p + d1));
            let mut exps = a.exps.clone();
            exps.extend_from_slice(&b.exps);
            return Ok(Mat::Mono(MonomialMatrix { conductor: m, perm, exps }));
        }
        let mut out = CycMatrix::zeros(m, d1 + d2, d1 + d2);
        let (a, b) = (self.to_dense(), other.to_dense());
        for r in 0..d1 {
            for c in 0..d1 {
                out.set(r, c, a.get(r, c).clone());
            }
        }
        for r in 0..d2 {
            for c in 0..d2 {
                out.set(d1 + r, d1 + c, b.get(r, c).clone());
            }
        }
        Ok(Mat::Dense(out))
    }
}
