//! Dedekind zeta numerics, integral point counts, and the exact assembly of
//! the principal part of the zeta function from Laurent data.

pub mod boxcount;
pub mod dedekind;
pub mod local;
pub mod symbolic;

pub use boxcount::{box_count, BoxCount, IntegralModel};
pub use dedekind::{
    completed_residue, completed_zeta, constants, dedekind_zeta, gamma_factor, ideal_count_up_to,
    ideal_table, local_factors, phi, residue_kappa,
    Constants, FieldInvariants, ZetaEstimate, GAMMA_CONVENTION,
};
pub use local::{integer_discriminant, local_factor, LocalFactor};
pub use symbolic::{
    assemble_principal_part, fe_symmetry_check, principal_part, Expr, Flags, Inputs, Laurent,
    LambdaSeries, PrincipalPart, ScaleLaw,
};
