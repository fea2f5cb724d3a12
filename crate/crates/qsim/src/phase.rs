use std::f64::consts::PI;

use num_complex::Complex64;
use ramsey_core::spectral::{dilation, eig_hermitian, HermitianEigen, Matrix};

use crate::encoding::pad_matrix;
use crate::estimators::gaussian_probe;
use crate::state::{qubits_for, Gate, StateVector, MAX_QUBITS};
use crate::QsimError;

pub const MAX_PHASE_BITS: usize = 8;

/// Initial state of the system register.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhaseInput {
    /// Eigenvector of the dilation with the largest eigenvalue, which is `‖A‖₂`.
    TopEigenvector,
    /// Uniformly random unit vector from the given seed.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseEstimate {
    /// Most probable phase-register value.
    pub outcome: usize,
    pub probability: f64,
    /// Eigenvalue of the dilation read from `outcome`.
    pub eigenvalue: f64,
    /// Width of one phase bin in eigenvalue units, `2π/(2^m t)`.
    pub resolution: f64,
    /// `|eigenvalue|`, the spectral-norm estimate when the input is aligned
    /// with the top eigenvector.
    pub norm_estimate: f64,
}

/// `V diag(e^{-iτλ}) V†`.
fn evolution(eig: &HermitianEigen, tau: f64) -> Matrix {
    let phases: Vec<Complex64> = eig.values.iter().map(|&l| Complex64::from_polar(1.0, -tau * l)).collect();
    eig.vectors.matmul(&Matrix::diagonal(&phases)).matmul(&eig.vectors.adjoint())
}

fn inverse_qft(bits: usize) -> Matrix {
    let dim = 1usize << bits;
    let norm = 1.0 / (dim as f64).sqrt();
    Matrix::from_fn(dim, dim, |y, x| Complex64::from_polar(norm, -2.0 * PI * (x * y % dim) as f64 / dim as f64))
}

/// Textbook phase estimation of `e^{-itH}` for the Hermitian dilation `H` of
/// `A`, zero-padded to a power-of-two size.
///
/// Phase qubit `ℓ` controls `e^{-i 2^ℓ t H}`. The most probable outcome `y`
/// gives the eigenphase `y/2^m`, read in `[-½, ½)`, and `λ = -2π φ / t`.
/// Outcome `2^{m-1}` sits where `tλ = ±π` and cannot be unwrapped, so it is
/// reported as an error.
pub fn phase_estimate_dilation(a: &Matrix, bits: usize, t: f64, input: PhaseInput) -> Result<PhaseEstimate, QsimError> {
    if bits == 0 || bits > MAX_PHASE_BITS {
        return Err(QsimError::TooManyPhaseBits(bits));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(QsimError::InvalidTime(t));
    }
    let h = pad_matrix(&dilation(a));
    let sys = qubits_for(h.rows())?;
    if sys + bits > MAX_QUBITS {
        return Err(QsimError::TooManyQubits(sys + bits));
    }
    let eig = eig_hermitian(&h)?;
    let system = match input {
        PhaseInput::TopEigenvector => StateVector::from_amplitudes(eig.vectors.column(h.rows() - 1))?,
        PhaseInput::Random(seed) => gaussian_probe(sys, seed)?,
    };
    let mut s = system.with_ancillas(bits)?;
    for l in 0..bits {
        s.apply(&Gate::hadamard(sys + l))?;
    }
    for l in 0..bits {
        let u = evolution(&eig, t * (1u64 << l) as f64);
        s.apply(&Gate::new(0, u)?.controlled(sys + l, true))?;
    }
    s.apply(&Gate::new(sys, inverse_qft(bits))?)?;

    let probs = s.marginal(sys, bits);
    let (outcome, &probability) = probs
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1).then(y.0.cmp(&x.0)))
        .expect("non-empty register");
    let dim = 1usize << bits;
    if outcome == dim / 2 {
        return Err(QsimError::PhaseWrap { t, bound: PI / t });
    }
    let phi = if outcome > dim / 2 { outcome as f64 / dim as f64 - 1.0 } else { outcome as f64 / dim as f64 };
    let eigenvalue = -2.0 * PI * phi / t;
    Ok(PhaseEstimate {
        outcome,
        probability,
        eigenvalue,
        resolution: 2.0 * PI / (dim as f64 * t),
        norm_estimate: eigenvalue.abs(),
    })
}
