use thiserror::Error;

/// Errors surfaced by the library.
///
/// Everything here maps onto a CLI exit code: `Parse` and `InvalidArgument`
/// are usage errors, `ResourceLimit` is a refused factorial-scale request,
/// and `Inconsistency` flags an internal cross-check that must never fail.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("invalid argument for {context}: {message}")]
    InvalidArgument {
        context: &'static str,
        message: String,
    },

    #[error("resource limit exceeded in {context}: requested {requested}, cap is {limit}")]
    ResourceLimit {
        context: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("internal inconsistency in {context}: {details}")]
    Inconsistency {
        context: &'static str,
        details: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
