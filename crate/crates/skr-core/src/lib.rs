//! Computational toolkit for restricted Saito–Kurokawa lifts: modular and
//! Jacobi forms, GL3×GL2 central values, exponential sums and Bessel-sum
//! asymptotics.

pub mod arith;
pub mod asymptotics;
pub mod error;
pub mod expsums;
pub mod hp;
pub mod lfunctions;
pub mod modforms;
pub mod numerics;
pub mod sk_lift;

pub use error::{Error, Result};
