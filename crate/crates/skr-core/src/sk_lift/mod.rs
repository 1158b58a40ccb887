//! Index-1 Jacobi forms, their Saito–Kurokawa lifts and the restriction of
//! the lift to the diagonal z = 0.

pub mod jacobi;
pub mod lift;

pub use jacobi::{
    generators_from_products, jacobi_cusp_basis, phi_10_1, phi_12_1, Generator, JacobiForm, JacobiSpace, TwoVar,
};
pub use lift::{
    ichino_diagonal_expansion, ichino_ratio_check, kohnen_matrix, kohnen_tp2, kz_ratio_test, maass_coefficient, maass_exact, match_lifts,
    nv1_census, restrict_z0, restriction_table, vq_apply, IchinoExpansion, IchinoRatio, KzRatio, RestrictionData, SkLift, VqTable,
};
