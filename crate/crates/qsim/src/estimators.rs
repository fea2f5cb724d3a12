use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use ramsey_core::diagnostics::derive_seed;
use rayon::prelude::*;

use crate::encoding::BlockEncoding;
use crate::state::{Gate, StateVector, UnitaryOperator};
use crate::QsimError;

/// Test-ancilla circuit `H · c-U · H` on a fresh top qubit; returns the
/// post-circuit state.
fn hadamard_state(u: &UnitaryOperator, probe: &StateVector) -> Result<StateVector, QsimError> {
    if probe.qubits() != u.qubits() {
        return Err(QsimError::DimensionMismatch {
            expected: u.qubits(),
            found: probe.qubits(),
        });
    }
    let test = u.qubits();
    let mut s = probe.with_ancillas(1)?;
    s.apply(&Gate::hadamard(test))?;
    s.apply(&u.as_gate().controlled(test, true))?;
    s.apply(&Gate::hadamard(test))?;
    Ok(s)
}

/// `Re⟨ψ|U|ψ⟩`, read exactly as `⟨Z⟩` on the test ancilla.
pub fn hadamard_test(u: &UnitaryOperator, probe: &StateVector) -> Result<f64, QsimError> {
    let s = hadamard_state(u, probe)?;
    Ok(s.expect_z(u.qubits()))
}

/// Shot-sampled Hadamard test: the mean of `shots` ±1 outcomes.
pub fn hadamard_test_sampled(
    u: &UnitaryOperator,
    probe: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<f64, QsimError> {
    if shots == 0 {
        return Err(QsimError::NoProbes);
    }
    let z = hadamard_test(u, probe)?;
    let p_plus = ((1.0 + z) / 2.0).clamp(0.0, 1.0);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let plus = (0..shots).filter(|_| rng.random::<f64>() < p_plus).count() as f64;
    Ok((2.0 * plus - shots as f64) / shots as f64)
}

/// A unit probe with i.i.d. complex Gaussian entries, hence uniformly
/// distributed on the sphere.
pub fn gaussian_probe(qubits: usize, seed: u64) -> Result<StateVector, QsimError> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let amps = (0..1usize << qubits)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::from_amplitudes(amps)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProbeMode {
    /// Exact ancilla expectation per probe.
    Exact,
    /// Each probe's expectation replaced by the mean of this many shots.
    Shots(u64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub probes: usize,
}

/// Hutchinson estimate of `Tr F` for the operator encoded by `enc`, using
/// exact Hadamard tests.
pub fn hutchinson_trace(enc: &BlockEncoding, probes: usize, seed: u64) -> Result<TraceEstimate, QsimError> {
    hutchinson_trace_with(enc, probes, seed, ProbeMode::Exact)
}

/// Each probe `r` is a random data-register state with ancillas at zero, so
/// the Hadamard test returns `Re⟨r|F|r⟩/α₀`. Scaling the mean by `α₀·d`
/// gives an unbiased estimate of `Re Tr F`.
pub fn hutchinson_trace_with(
    enc: &BlockEncoding,
    probes: usize,
    seed: u64,
    mode: ProbeMode,
) -> Result<TraceEstimate, QsimError> {
    if probes == 0 {
        return Err(QsimError::NoProbes);
    }
    let scale = enc.alpha0() * enc.dim() as f64;
    let values: Vec<f64> = (0..probes as u64)
        .into_par_iter()
        .map(|j| {
            let probe_seed = derive_seed(seed, j);
            let probe = gaussian_probe(enc.data_qubits(), probe_seed)?.with_ancillas(enc.ancillas())?;
            let z = match mode {
                ProbeMode::Exact => hadamard_test(enc.unitary(), &probe)?,
                ProbeMode::Shots(shots) => {
                    hadamard_test_sampled(enc.unitary(), &probe, shots, derive_seed(probe_seed, u64::MAX))?
                }
            };
            Ok(scale * z)
        })
        .collect::<Result<_, QsimError>>()?;
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std_error = if values.len() > 1 {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        f64::NAN
    };
    Ok(TraceEstimate {
        estimate: mean,
        std_error,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::dense_block_encoding;
    use ramsey_core::spectral::Matrix;

    #[test]
    fn identity_and_phase_flip() {
        let id = UnitaryOperator::new(Matrix::identity(4), 1e-12).unwrap();
        let probe = gaussian_probe(2, 5).unwrap();
        assert!((hadamard_test(&id, &probe).unwrap() - 1.0).abs() < 1e-14);

        let z = Matrix::diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        let z = UnitaryOperator::new(z, 1e-12).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        assert!((hadamard_test(&z, &one).unwrap() + 1.0).abs() < 1e-14);
        assert!(hadamard_test(&z, &probe).is_err());
    }

    #[test]
    fn scaled_identity_trace_is_exact() {
        let enc = dense_block_encoding(&Matrix::identity(4).scale_real(0.5), 1.0).unwrap();
        let est = hutchinson_trace(&enc, 32, 9).unwrap();
        assert!((est.estimate - 2.0).abs() < 1e-12);
        assert!(est.std_error < 1e-12);
    }

    #[test]
    fn sampled_mode_is_reproducible() {
        let enc = dense_block_encoding(&Matrix::identity(2).scale_real(0.3), 1.0).unwrap();
        let a = hutchinson_trace_with(&enc, 20, 1, ProbeMode::Shots(50)).unwrap();
        let b = hutchinson_trace_with(&enc, 20, 1, ProbeMode::Shots(50)).unwrap();
        assert_eq!(a, b);
        assert!(hutchinson_trace(&enc, 0, 1).is_err());
    }
}
