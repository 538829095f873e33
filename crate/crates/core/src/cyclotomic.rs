//! Exact arithmetic in cyclotomic fields `Q(zeta_M)`.
//!
//! Elements are polynomials in `zeta_M` with rational coefficients, reduced
//! modulo the `M`-th cyclotomic polynomial, so every element has a unique
//! representative of degree `< phi(M)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Integer coefficients of `Phi_M`, lowest degree first.
fn phi_int(m: u64) -> Vec<BigInt> {
    // x^M - 1 divided by Phi_d for every proper divisor d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = divide_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn divide_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Phi_M` as integer coefficients, lowest degree first. Memoized.
pub fn cyclotomic_poly(m: u64) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = cache().lock().expect("cache lock").get(&m) {
        return p.clone();
    }
    let p = Arc::new(phi_int(m));
    cache().lock().expect("cache lock").insert(m, p.clone());
    p
}

/// Euler's totient, the degree of `Q(zeta_M)`.
pub fn totient(m: u64) -> u64 {
    crate::zlinalg::factorize(m).iter().fold(1, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// Element of `Q(zeta_M)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicNumber {
    conductor: u64,
    /// Coefficients of `1, zeta, zeta^2, ...`, trailing zeros trimmed.
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(conductor: u64) -> Self {
        CyclotomicNumber { conductor, coeffs: vec![] }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_int(conductor: u64, v: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(v.into()))
    }

    pub fn from_rational(conductor: u64, v: BigRational) -> Self {
        let mut coeffs = vec![v];
        trim(&mut coeffs);
        CyclotomicNumber { conductor, coeffs }
    }

    /// `zeta_M^k`.
    pub fn root(conductor: u64, k: u64) -> Self {
        let mut p = vec![BigRational::zero(); (k % conductor) as usize + 1];
        p[(k % conductor) as usize] = BigRational::one();
        Self::reduce(conductor, p)
    }

    /// Reduces an arbitrary polynomial in `zeta_M`.
    pub fn from_poly(conductor: u64, coeffs: Vec<BigRational>) -> Self {
        Self::reduce(conductor, coeffs)
    }

    fn reduce(conductor: u64, mut p: Poly) -> Self {
        let phi = cyclotomic_poly(conductor);
        let d = phi.len() - 1;
        trim(&mut p);
        while p.len() > d {
            let top = p.len() - 1;
            let c = p[top].clone();
            for (j, pj) in phi.iter().enumerate() {
                if !pj.is_zero() {
                    p[top - d + j] -= &c * BigRational::from_integer(pj.clone());
                }
            }
            trim(&mut p);
        }
        CyclotomicNumber { conductor, coeffs: p }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn same(&self, other: &Self) {
        assert_eq!(self.conductor, other.conductor, "cyclotomic conductors differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut p = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            p[i] += c;
        }
        trim(&mut p);
        CyclotomicNumber { conductor: self.conductor, coeffs: p }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.conductor);
        }
        let mut p = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                p[i + j] += a * b;
            }
        }
        Self::reduce(self.conductor, p)
    }

    /// Multiplication by `zeta_M^k`, cheaper than a general product.
    pub fn mul_root(&self, k: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let k = (k % self.conductor) as usize;
        let mut p = vec![BigRational::zero(); k];
        p.extend(self.coeffs.iter().cloned());
        Self::reduce(self.conductor, p)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Phi_M`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidParameter("inverse of zero".into()));
        }
        let phi: Poly = cyclotomic_poly(self.conductor).iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let (g, s) = poly_xgcd(self.coeffs.clone(), phi);
        // g is a nonzero constant since Phi_M is irreducible
        debug_assert_eq!(g.len(), 1);
        let c = g[0].clone();
        let s: Poly = s.into_iter().map(|x| x / &c).collect();
        Ok(Self::reduce(self.conductor, s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// The same number in `Q(zeta_N)` for a multiple `N` of the conductor.
    pub fn lift(&self, n: u64) -> Result<Self> {
        if n % self.conductor != 0 {
            return Err(Error::InvalidParameter(format!("cannot lift conductor {} to {n}", self.conductor)));
        }
        let f = (n / self.conductor) as usize;
        let mut p = vec![BigRational::zero(); self.coeffs.len().saturating_sub(1) * f + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * f] = c.clone();
        }
        Ok(Self::reduce(n, p))
    }

    /// `k` with `self = zeta_M^k`, if `self` is an `M`-th root of unity.
    pub fn as_root_of_unity(&self) -> Option<u64> {
        if self.coeffs.len() == 1 && self.coeffs[0].is_one() {
            return Some(0);
        }
        (1..self.conductor).find(|&k| *self == Self::root(self.conductor, k))
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let m = self.conductor;
        let mut p = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[((m - i as u64 % m) % m) as usize] += c;
        }
        Self::reduce(m, p)
    }
}

fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn poly_sub_mul(a: &Poly, q: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    if !q.is_empty() && !b.is_empty() {
        out.resize(out.len().max(q.len() + b.len() - 1), BigRational::zero());
        for (i, x) in q.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] -= x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// `(g, s)` with `s a = g mod b`, `g = gcd(a, b)`.
fn poly_xgcd(a: Poly, b: Poly) -> (Poly, Poly) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1): (Poly, Poly) = (vec![BigRational::one()], vec![]);
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let term = match (i, a.is_one()) {
                (0, _) => a.to_string(),
                (_, true) => format!("z{}^{i}", self.conductor),
                _ => format!("{a}*z{}^{i}", self.conductor),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        Ok(())
    }
}

/// Dense matrix over `Q(zeta_M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycMatrix {
    pub conductor: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<CyclotomicNumber>,
}

impl CycMatrix {
    pub fn zeros(conductor: u64, rows: usize, cols: usize) -> Self {
        CycMatrix { conductor, rows, cols, data: vec![CyclotomicNumber::zero(conductor); rows * cols] }
    }

    pub fn identity(conductor: u64, n: usize) -> Self {
        let mut m = Self::zeros(conductor, n, n);
        for i in 0..n {
            m.data[i * n + i] = CyclotomicNumber::one(conductor);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CyclotomicNumber) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.conductor != other.conductor {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} (M={}) times {}x{} (M={})",
                self.rows, self.cols, self.conductor, other.rows, other.cols, other.conductor
            )));
        }
        let mut out = Self::zeros(self.conductor, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        CycMatrix { data: self.data.iter().map(|x| x.mul(c)).collect(), ..self.clone() }
    }

    pub fn trace(&self) -> CyclotomicNumber {
        (0..self.rows.min(self.cols)).fold(CyclotomicNumber::zero(self.conductor), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn lift(&self, n: u64) -> Result<Self> {
        Ok(CycMatrix { conductor: n, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.lift(n)).collect::<Result<_>>()? })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Basis of `{v : A v = 0}` by exact Gauss-Jordan elimination.
    pub fn nullspace(&self) -> Vec<Vec<CyclotomicNumber>> {
        let m = self.conductor;
        let mut a: Vec<Vec<CyclotomicNumber>> =
            (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(row, p);
            let inv = a[row][col].inv().expect("nonzero pivot");
            for x in a[row].iter_mut() {
                *x = x.mul(&inv);
            }
            for r in 0..a.len() {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..self.cols {
                        if !a[row][c].is_zero() {
                            a[r][c] = a[r][c].sub(&f.mul(&a[row][c]));
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.len() {
                break;
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CyclotomicNumber::zero(m); self.cols];
                v[f] = CyclotomicNumber::one(m);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = a[r][f].neg();
                }
                v
            })
            .collect()
    }

    /// Rank over `Q(zeta_M)`.
    pub fn rank(&self) -> usize {
        self.cols - self.nullspace().len()
    }

    /// Inverse by Gauss-Jordan on `[A | I]`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let m = self.conductor;
        let mut a: Vec<Vec<CyclotomicNumber>> = (0..n)
            .map(|i| {
                let mut r = self.data[i * n..(i + 1) * n].to_vec();
                r.extend((0..n).map(|j| if i == j { CyclotomicNumber::one(m) } else { CyclotomicNumber::zero(m) }));
                r
            })
            .collect();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::InvalidParameter("singular matrix".into()))?;
            a.swap(col, p);
            let inv = a[col][col].inv()?;
            for x in a[col].iter_mut() {
                *x = x.mul(&inv);
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        if !a[col][c].is_zero() {
                            a[r][c] = a[r][c].sub(&f.mul(&a[col][c]));
                        }
                    }
                }
            }
        }
        let data = a.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Ok(CycMatrix { conductor: m, rows: n, cols: n, data })
    }
}

/// Rational as `[numerator, denominator]` strings, for export.
pub fn rational_parts(q: &BigRational) -> [String; 2] {
    let q = q.reduced();
    [q.numer().to_string(), q.denom().to_string()]
}

/// Least `k >= 0` with `s k = e (mod M)`, if any.
pub fn canonical_root_exponent(e: u64, s: u64, m: u64) -> Option<u64> {
    let g = s.gcd(&m);
    if e % g != 0 {
        return None;
    }
    (0..m).find(|&k| (k as u128 * s as u128 % m as u128) as u64 == e % m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn phi_polynomials() {
        let c = |m| cyclotomic_poly(m).iter().map(|x| i64::try_from(x.clone()).unwrap()).collect::<Vec<_>>();
        assert_eq!(c(1), vec![-1, 1]);
        assert_eq!(c(3), vec![1, 1, 1]);
        assert_eq!(c(4), vec![1, 0, 1]);
        assert_eq!(c(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(c(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(9), 6);
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn roots_sum_to_zero() {
        for m in [3u64, 5, 9, 15] {
            let s = (0..m).fold(CyclotomicNumber::zero(m), |acc, k| acc.add(&CyclotomicNumber::root(m, k)));
            assert!(s.is_zero(), "M = {m}");
            assert!(CyclotomicNumber::root(m, m).is_one());
        }
    }

    #[test]
    fn inverse_and_division() {
        let a = CyclotomicNumber::from_poly(9, vec![q(1, 2), q(3, 1), q(0, 1), q(-2, 3)]);
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
        let z = CyclotomicNumber::root(9, 4);
        assert_eq!(z.mul_root(5), CyclotomicNumber::one(9));
        assert_eq!(z.inv().unwrap(), CyclotomicNumber::root(9, 5));
    }

    #[test]
    fn lifting_preserves_roots() {
        let z3 = CyclotomicNumber::root(3, 1);
        assert_eq!(z3.lift(9).unwrap(), CyclotomicNumber::root(9, 3));
        assert_eq!(CyclotomicNumber::root(9, 7).as_root_of_unity(), Some(7));
        assert_eq!(CyclotomicNumber::from_int(9, 2).as_root_of_unity(), None);
        assert_eq!(CyclotomicNumber::root(9, 2).conj(), CyclotomicNumber::root(9, 7));
    }

    #[test]
    fn nullspace_and_inverse() {
        let m = 3;
        let z = CyclotomicNumber::root(m, 1);
        let one = CyclotomicNumber::one(m);
        // [[1, z], [z, z^2]] has rank 1
        let a = CycMatrix { conductor: m, rows: 2, cols: 2, data: vec![one.clone(), z.clone(), z.clone(), z.mul(&z)] };
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(ns[0][0].add(&z.mul(&ns[0][1])).is_zero());
        let b = CycMatrix { conductor: m, rows: 2, cols: 2, data: vec![one.clone(), z.clone(), CyclotomicNumber::zero(m), one] };
        let bi = b.inverse().unwrap();
        assert_eq!(b.mul(&bi).unwrap(), CycMatrix::identity(m, 2));
    }

    #[test]
    fn canonical_roots() {
        assert_eq!(canonical_root_exponent(3, 3, 9), Some(1));
        assert_eq!(canonical_root_exponent(1, 3, 9), None);
        assert_eq!(canonical_root_exponent(0, 3, 9), Some(0));
    }
}
