//! Integer and modular linear algebra.

mod int;
mod modular;

pub use int::{abelian_invariants, smith_normal_form, AbelianInvariants, IntMatrix, SmithDecomposition};
pub use modular::{
    elementary_divisors, factorize, gcd, invariant_factors, lcm, smith_mod, solve_mod, solve_mod_matrix, ModMatrix,
    ModSmith, ModSolutionSet, RowEchelon,
};
