//! Command-line driver for the verification suites, the norm table and the
//! coefficient dumps.

pub mod config;
pub mod dump;
pub mod report;
pub mod store;
pub mod suites;
pub mod table;

use skr_core::error::Error;

/// Exit status for a finished report.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::InvalidArgument("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Validation("x".into())), EXIT_INTERNAL);
        assert_eq!(exit_code(&Error::IllConditioned(1e50)), EXIT_INTERNAL);
    }
}
