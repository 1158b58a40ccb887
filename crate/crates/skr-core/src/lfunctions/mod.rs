//! Dirichlet coefficients and numerical central values.

pub mod afe;
pub mod cfkrs;
pub mod coeffs;
pub mod lvalues;
pub mod mellin;
pub mod norm;
pub mod petersson;
pub mod vfunc;

pub use cfkrs::{cfkrs_local_factor, conjecture_constants, m0_local_factor};
pub use coeffs::{gl3_coeffs, GL3Coefficients, Hecke};
pub use lvalues::{inv_l_f_at_32, l_f_at_32, sym2_at_1, twisted_central_value, Estimate};
pub use norm::{norm_nff, NormConfig, NormReport};
pub use vfunc::{rankin_central_value, CentralValue, RsConfig, RsEvaluator};
