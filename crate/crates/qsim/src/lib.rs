//! Dense statevector simulation of the quantum trace estimators: block
//! encodings (a rank-1 gadget and its LCU composition), the Hadamard test,
//! Hutchinson trace estimation and phase estimation on a Hermitian dilation.
//!
//! Everything is exact linear algebra at desk scale (at most
//! [`MAX_QUBITS`] qubits). Qubit `q` is bit `q` of a basis index; data
//! registers sit at the bottom and ancillas above them.

mod encoding;
mod estimators;
mod phase;
mod state;
pub mod suite;

pub use encoding::{
    accumulator_encoding, block_encode_rank1, dense_block_encoding, exp_encoding, lcu_block_encode,
    pad_matrix, pad_to_power_of_two, state_preparation, BlockEncoding, LcuTerm,
};
pub use estimators::{
    gaussian_probe, hadamard_test, hadamard_test_sampled, hutchinson_trace, hutchinson_trace_with, ProbeMode,
    TraceEstimate,
};
pub use phase::{phase_estimate_dilation, PhaseEstimate, PhaseInput, MAX_PHASE_BITS};
pub use state::{Circuit, Gate, StateVector, UnitaryOperator, MAX_QUBITS};

use ramsey_core::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QsimError {
    #[error("{0} qubits exceeds the simulator limit of {MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error("register size mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state has zero or non-finite norm")]
    NotNormalizable,
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("operator is not unitary (defect {0:.3e})")]
    NotUnitary(f64),
    #[error("input vector has norm {0}, expected 1")]
    NotUnit(f64),
    #[error("an LCU needs at least one term with nonzero weight")]
    EmptyTerms,
    #[error("LCU weights must be finite")]
    NonFiniteWeight,
    #[error("scale {0} must be positive and finite")]
    InvalidScale(f64),
    #[error("scale {alpha0} is below the operator norm (dilation defect {defect:.3e})")]
    ScaleTooSmall { alpha0: f64, defect: f64 },
    #[error("probe count must be at least 1")]
    NoProbes,
    #[error("at most {MAX_PHASE_BITS} phase bits are supported, got {0}")]
    TooManyPhaseBits(usize),
    #[error("evolution time {0} must be positive and finite")]
    InvalidTime(f64),
    #[error("phase estimate landed on the wrap-around bin; choose a smaller time (t = {t}, bound pi/t = {bound})")]
    PhaseWrap { t: f64, bound: f64 },
    #[error("classical reference failed: {0}")]
    Classical(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
