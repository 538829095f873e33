use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::zlinalg::invariant_factors;

/// Families with a closed-form multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `H^t_{2n+1}(Z/r)`; `r = 0` stands for the integers.
    Heisenberg,
    /// `Z/t + (Z/r)^n`.
    Abelian,
    /// `ES_{2n+1}(p^2)` with `p = r`; `t` is ignored.
    ExtraSpecial,
}

/// One cyclic factor of a multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    Cyclic(u64),
    /// A copy of `C^x`, divisible and infinite.
    Units,
}

/// Multiplier of a family member as a list of cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierDescriptor {
    pub family: Family,
    pub n: u64,
    pub r: u64,
    pub t: u64,
    /// Nontrivial factors only.
    pub factors: Vec<Factor>,
    /// Product of the factors; absent when a `C^x` factor occurs.
    pub order: Option<u128>,
}

impl MultiplierDescriptor {
    fn new(family: Family, n: u64, r: u64, t: u64, parts: &[(Factor, u64)]) -> Result<Self> {
        let mut factors = Vec::new();
        for &(f, count) in parts {
            if f != Factor::Cyclic(1) {
                factors.extend(std::iter::repeat(f).take(count as usize));
            }
        }
        let mut order = Some(1u128);
        for f in &factors {
            order = match (order, f) {
                (Some(o), Factor::Cyclic(k)) => {
                    Some(o.checked_mul(*k as u128).ok_or_else(|| Error::InvalidParameter("multiplier order overflows".into()))?)
                }
                _ => None,
            };
        }
        Ok(MultiplierDescriptor { family, n, r, t, factors, order })
    }

    pub fn is_finite(&self) -> bool {
        self.order.is_some()
    }

    /// Invariant factors of the finite part.
    pub fn invariants(&self) -> Vec<u64> {
        let finite: Vec<u64> =
            self.factors.iter().filter_map(|f| if let Factor::Cyclic(k) = f { Some(*k) } else { None }).collect();
        invariant_factors(&finite)
    }

    /// Group spec of the described group, when it is finite.
    pub fn group_spec(&self) -> Option<GroupSpec> {
        let (n, r, t) = (self.n, self.r, self.t);
        if r == 0 {
            return None;
        }
        Some(match self.family {
            Family::Heisenberg => GroupSpec::Heisenberg { n, r, t },
            Family::Abelian => {
                let mut invariants = vec![t];
                invariants.extend(std::iter::repeat(r).take(n as usize));
                GroupSpec::Abelian { invariants }
            }
            Family::ExtraSpecial => GroupSpec::ExtraSpecialP2 { p: r, n },
        })
    }
}

fn check_divides(r: u64, t: u64) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    if r != 0 && r % t != 0 {
        return Err(Error::InvalidParameter(format!("t must divide r, got r = {r}, t = {t}")));
    }
    Ok(())
}

/// Closed-form Schur multiplier.
pub fn schur_closed_form(family: Family, n: u64, r: u64, t: u64) -> Result<MultiplierDescriptor> {
    use Factor::{Cyclic, Units};
    match family {
        Family::Heisenberg => {
            check_divides(r, t)?;
            if n == 0 {
                return Err(Error::InvalidParameter("n must be at least 1".into()));
            }
            if n == 1 {
                if r % 2 == 0 && r != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "r must be odd or 0 for H_3, got r = {r} (hypothesis of the H_3 multiplier formula)"
                    )));
                }
                let parts: &[(Factor, u64)] = if r == 0 { &[(Units, 2)] } else { &[(Cyclic(r), 2), (Cyclic(t), 1)] };
                return MultiplierDescriptor::new(family, n, r, t, parts);
            }
            let big = 2 * n * n - n - 1;
            if r == 0 {
                MultiplierDescriptor::new(family, n, r, t, &[(Units, big), (Cyclic(t), 2 * n)])
            } else {
                MultiplierDescriptor::new(family, n, r, t, &[(Cyclic(r), big), (Cyclic(t), 2 * n + 1)])
            }
        }
        Family::Abelian => {
            check_divides(r, t)?;
            let pairs = n * n.saturating_sub(1) / 2;
            let top = if r == 0 { Units } else { Cyclic(r) };
            MultiplierDescriptor::new(family, n, r, t, &[(Cyclic(t), n), (top, pairs)])
        }
        Family::ExtraSpecial => {
            if n == 0 {
                return Err(Error::InvalidParameter("n must be at least 1".into()));
            }
            GroupSpec::ExtraSpecialP2 { p: r, n }.validate()?;
            // quotient (Z/p)^{2n} has multiplier (Z/p)^{n(2n-1)}; one factor dies under inflation
            MultiplierDescriptor::new(family, n, r, 1, &[(Cyclic(r), 2 * n * n - n - 1)])
        }
    }
}
