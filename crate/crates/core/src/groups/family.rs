use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of one of the supported group families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupSpec {
    /// `H^t_{2n+1}(Z/r)`, coordinates `(a, b_1..b_n, c_1..c_n)`.
    Heisenberg { n: u64, r: u64, t: u64 },
    /// `Z/d_1 + ... + Z/d_k`.
    Abelian { invariants: Vec<u64> },
    /// Normal form `z1^k z2^l z^m y^n x^p`, coordinates `(k, l, m, n, p)`.
    HatH { r: u64, t: u64 },
    /// Coordinates `x_1..x_{n+1}` then `z_ij` for `i < j` in lexicographic order.
    FGroup { n: u64, r: u64, t: u64 },
    /// Central product of `n` copies of `<a, b | a^{p^2}, b^p, [a,b] = a^p>`.
    /// Coordinates `(c, u_1, v_1, .., u_n, v_n)` for `z^c prod a_i^{u_i} b_i^{v_i}`, `z = a_i^p`.
    ExtraSpecialP2 { p: u64, n: u64 },
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            GroupSpec::Heisenberg { n, r, t } | GroupSpec::FGroup { n, r, t } => {
                if n == 0 {
                    return bad("n must be at least 1".into());
                }
                check_rt(r, t)
            }
            GroupSpec::HatH { r, t } => {
                check_rt(r, t)?;
                if r % 2 == 0 {
                    return bad(format!("r must be odd for the hat-H family, got r = {r}"));
                }
                Ok(())
            }
            GroupSpec::Abelian { ref invariants } => {
                if invariants.iter().any(|&d| d == 0) {
                    return bad("abelian invariants must be positive".into());
                }
                Ok(())
            }
            GroupSpec::ExtraSpecialP2 { p, n } => {
                if n == 0 {
                    return bad("n must be at least 1".into());
                }
                if p < 3 || !is_prime(p) {
                    return bad(format!("p must be an odd prime, got {p}"));
                }
                Ok(())
            }
        }
    }

    /// Modulus of each coordinate, in coordinate order.
    pub fn moduli(&self) -> Vec<u64> {
        match *self {
            GroupSpec::Heisenberg { n, r, .. } => vec![r; 2 * n as usize + 1],
            GroupSpec::Abelian { ref invariants } => invariants.clone(),
            GroupSpec::HatH { r, t } => vec![r, r, r * t, r, r],
            GroupSpec::FGroup { n, r, t } => {
                let n = n as usize;
                let mut m = vec![t];
                m.extend(std::iter::repeat(r).take(n));
                for i in 0..=n {
                    for _ in i + 1..=n {
                        m.push(if i == 0 { t } else { r });
                    }
                }
                m
            }
            GroupSpec::ExtraSpecialP2 { p, n } => vec![p; 2 * n as usize + 1],
        }
    }

    /// Product of coordinate moduli, without overflow.
    pub fn order(&self) -> u128 {
        self.moduli().iter().map(|&m| m as u128).product()
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::Heisenberg { n, r, t } => format!("H^{t}_{}(Z/{r})", 2 * n + 1),
            GroupSpec::Abelian { invariants } => {
                if invariants.is_empty() {
                    "1".into()
                } else {
                    invariants.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join("+")
                }
            }
            GroupSpec::HatH { r, t } => format!("HatH({r},{t})"),
            GroupSpec::FGroup { n, r, t } => format!("F_{n}({r},{t})"),
            GroupSpec::ExtraSpecialP2 { p, n } => format!("ES_{}({})", 2 * n + 1, p * p),
        }
    }

    /// Coordinate-wise product `a * b`.
    pub(crate) fn multiply(&self, moduli: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
        match *self {
            GroupSpec::Abelian { .. } => add(moduli, a, b),
            GroupSpec::Heisenberg { n, t, .. } => {
                let n = n as usize;
                let mut out = add(moduli, a, b);
                // t * sum b'_i c_i
                let cross: u128 = (0..n).map(|i| b[1 + i] as u128 * a[1 + n + i] as u128).sum();
                out[0] = ((a[0] as u128 + b[0] as u128 + t as u128 * cross) % moduli[0] as u128) as u64;
                out
            }
            GroupSpec::HatH { r, t } => {
                let (k1, l1, m1, n1, p1) = (a[0] as i128, a[1] as i128, a[2] as i128, a[3] as i128, a[4] as i128);
                let (k2, l2, m2, n2, p2) = (b[0] as i128, b[1] as i128, b[2] as i128, b[3] as i128, b[4] as i128);
                let t = t as i128;
                let k = k1 + k2 + m2 * p1 + t * n2 * (p1 * (p1 - 1) / 2);
                let l = l1 + l2 + n1 * m2 + t * p1 * (n2 * (n2 - 1) / 2) + t * p1 * n1 * n2;
                let m = m1 + m2 + t * p1 * n2;
                let r = r as i128;
                vec![
                    k.rem_euclid(r) as u64,
                    l.rem_euclid(r) as u64,
                    m.rem_euclid(r * t) as u64,
                    ((n1 + n2) % r) as u64,
                    ((p1 + p2) % r) as u64,
                ]
            }
            GroupSpec::FGroup { n, .. } => {
                let n = n as usize;
                let mut out = add(moduli, a, b);
                let mut idx = n + 1;
                for i in 0..=n {
                    for j in i + 1..=n {
                        // k_ij + k'_ij - m'_i m_j
                        let md = moduli[idx] as i128;
                        let v = a[idx] as i128 + b[idx] as i128 - b[i] as i128 * a[j] as i128;
                        out[idx] = v.rem_euclid(md) as u64;
                        idx += 1;
                    }
                }
                out
            }
            GroupSpec::ExtraSpecialP2 { p, n } => {
                let n = n as usize;
                let mut out = vec![0; 2 * n + 1];
                let mut c = a[0] as i128 + b[0] as i128;
                for i in 0..n {
                    let (u1, v1) = (a[1 + 2 * i], a[2 + 2 * i]);
                    let (u2, v2) = (b[1 + 2 * i], b[2 + 2 * i]);
                    // b^v a^u = z^{-uv} a^u b^v, and a^p = z
                    let su = u1 + u2;
                    c += (su / p) as i128 - (u2 * v1) as i128;
                    out[1 + 2 * i] = su % p;
                    out[2 + 2 * i] = (v1 + v2) % p;
                }
                out[0] = c.rem_euclid(p as i128) as u64;
                out
            }
        }
    }

    /// Coordinate tuples of the standard generators.
    pub(crate) fn generator_coords(&self) -> Vec<Vec<u64>> {
        let moduli = self.moduli();
        let unit = |i: usize| {
            let mut v = vec![0; moduli.len()];
            v[i] = 1 % moduli[i];
            v
        };
        let units = |range: std::ops::Range<usize>| range.map(unit).filter(|v| v.iter().any(|&x| x != 0)).collect();
        match *self {
            GroupSpec::Abelian { ref invariants } => units(0..invariants.len()),
            // the central coordinate is needed when t = r kills [b_i, c_i]
            GroupSpec::Heisenberg { n, .. } => units(0..2 * n as usize + 1),
            // x, y, z
            GroupSpec::HatH { .. } => vec![unit(4), unit(3), unit(2)].into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect(),
            GroupSpec::FGroup { n, .. } => units(0..n as usize + 1),
            GroupSpec::ExtraSpecialP2 { n, .. } => units(1..2 * n as usize + 1),
        }
    }
}

fn add(moduli: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    moduli.iter().zip(a.iter().zip(b)).map(|(&m, (&x, &y))| (x + y) % m).collect()
}

fn check_rt(r: u64, t: u64) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidParameter("r = 0 gives an infinite group; only closed forms are available".into()));
    }
    if t == 0 || r % t != 0 {
        return Err(Error::InvalidParameter(format!("t must divide r, got r = {r}, t = {t}")));
    }
    Ok(())
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
