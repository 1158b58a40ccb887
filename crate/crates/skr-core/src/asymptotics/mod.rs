//! Bessel functions and sums of Bessel functions over the weight.

pub mod bessel;
pub mod weight;
pub mod sums;
