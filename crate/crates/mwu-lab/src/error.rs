//! Crate-wide error type.
//!
//! Two failure kinds are kept apart deliberately: [`Error::Domain`] marks an
//! input value outside the mathematical domain of an operation (a flow share
//! outside the open unit interval, a learning rate outside (0,1)), while
//! [`Error::Precondition`] marks a parameter regime in which the requested
//! quantity is simply not defined (critical points of a homeomorphism, a
//! regret bound without an absorbing interval). Callers that need process
//! exit codes can map both to "numerical failure" and I/O to "usage".

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An input value lies outside the domain of the operation.
    #[error("domain: {0}")]
    Domain(String),
    /// The parameter regime does not support the requested operation.
    #[error("precondition: {0}")]
    Precondition(String),
    /// Output destination failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_prefixes_distinguish_failure_kinds() {
        let d = Error::Domain("x must lie in (0,1)".into());
        let p = Error::Precondition("a <= 4".into());
        assert!(d.to_string().starts_with("domain:"));
        assert!(p.to_string().starts_with("precondition:"));
    }
}
