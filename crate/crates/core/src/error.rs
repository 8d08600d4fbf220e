//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Errors surfaced by spec validation, local computations and the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on an argument failed.
    InvalidParameter(String),
    /// A residue symbol was requested at a place where the argument is not a unit.
    NotAUnit(String),
    /// The input would enlarge the field of constants.
    NotGeometric(String),
    /// The radical data over the constant extension does not descend to the base.
    DescentError(String),
    /// The data is Kummer over the base field already; use the Kummer pipeline.
    UseKummerPipeline,
    /// A spec violates its own structural invariants.
    MalformedSpec(String),
    /// An enumeration would exceed the configured budget.
    BudgetExceeded(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
            Error::NotAUnit(s) => write!(f, "not a unit at the place: {s}"),
            Error::NotGeometric(s) => write!(f, "extension is not geometric: {s}"),
            Error::DescentError(s) => write!(f, "descent failure: {s}"),
            Error::UseKummerPipeline => write!(f, "exponent divides q - 1; use the Kummer pipeline"),
            Error::MalformedSpec(s) => write!(f, "malformed spec: {s}"),
            Error::BudgetExceeded(s) => write!(f, "budget exceeded: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
