//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand dimensions are incompatible for the requested operation.
    DimensionMismatch { expected: usize, actual: usize },
    /// A matrix required to be Hermitian failed the `‖H − H†‖_F` check.
    NotHermitian { deviation: f64 },
    /// A matrix required to be unitary failed the `‖U†U − I‖_F` check.
    NotUnitary { deviation: f64 },
    /// Qubit index out of range or repeated in a target list.
    BadTargets(String),
    /// Qubit count outside the supported 1..=8 range.
    QubitCountOutOfRange(usize),
    /// A Pauli string contained a letter other than I, X, Y, Z.
    InvalidPauli(char),
    /// The requested permutation is not a bijection on 0..n.
    NotAPermutation,
    /// Group closure exceeded the stated maximum order.
    ClosureExceeded { max_order: usize },
    /// A generator label was not found in the representation.
    UnknownGenerator(String),
    /// Unknown experiment name.
    UnknownExperiment(String),
    /// Invalid data for the requested embedding (wrong shape or zero vector).
    InvalidData(String),
    /// Invalid training configuration value.
    InvalidConfig(String),
    /// The training loss became non-finite.
    NonFiniteLoss { epoch: usize, value: f64 },
    /// Malformed graph text.
    GraphParse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, actual } => {
                write!(f, "dimension mismatch: expected {expected}, got {actual}")
            }
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (‖H − H†‖_F = {deviation:e})")
            }
            Error::NotUnitary { deviation } => {
                write!(f, "matrix is not unitary (‖U†U − I‖_F = {deviation:e})")
            }
            Error::BadTargets(msg) => write!(f, "bad target qubits: {msg}"),
            Error::QubitCountOutOfRange(n) => {
                write!(f, "qubit count {n} outside supported range 1..=8")
            }
            Error::InvalidPauli(c) => write!(f, "invalid Pauli letter '{c}'"),
            Error::NotAPermutation => write!(f, "not a bijection on 0..n"),
            Error::ClosureExceeded { max_order } => {
                write!(f, "group closure exceeded max order {max_order}")
            }
            Error::UnknownGenerator(label) => write!(f, "unknown generator '{label}'"),
            Error::UnknownExperiment(name) => write!(f, "unknown experiment '{name}'"),
            Error::InvalidData(msg) => write!(f, "invalid data: {msg}"),
            Error::InvalidConfig(msg) => write!(f, "invalid config: {msg}"),
            Error::NonFiniteLoss { epoch, value } => {
                write!(f, "non-finite loss {value} at epoch {epoch}")
            }
            Error::GraphParse(msg) => write!(f, "graph parse error: {msg}"),
        }
    }
}
