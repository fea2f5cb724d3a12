//! Fixed verification checks pairing each simulated estimator with its
//! classical counterpart. The CLI prints these as a table.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use ramsey_core::diagnostics::{build_accumulator, derive_seed, exp_witness, sample_directions};
use ramsey_core::spectral::{eig_hermitian, singular_values, Matrix};

use crate::{
    accumulator_encoding, block_encode_rank1, exp_encoding, gaussian_probe, hadamard_test, hutchinson_trace,
    phase_estimate_dilation, PhaseInput, QsimError, UnitaryOperator,
};

/// One measured-against-reference comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct QsimCheck {
    pub name: &'static str,
    pub measured: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl QsimCheck {
    fn new(name: &'static str, measured: f64, reference: f64, tolerance: f64) -> Self {
        Self {
            name,
            measured,
            reference,
            tolerance,
            pass: (measured - reference).abs() <= tolerance,
        }
    }
}

fn classical<E: std::fmt::Display>(e: E) -> QsimError {
    QsimError::Classical(e.to_string())
}

/// Random unit vector in `C^d`.
pub fn random_unit(d: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let v: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Random complex `rows × cols` matrix with standard Gaussian entries.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    Matrix::from_fn(rows, cols, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Eigenvector basis of a random Hermitian matrix: a random unitary.
pub fn random_unitary(dim: usize, seed: u64) -> Result<UnitaryOperator, QsimError> {
    let g = random_matrix(dim, dim, seed);
    let h = g.add(&g.adjoint());
    UnitaryOperator::new(eig_hermitian(&h)?.vectors, 1e-10)
}

/// A safe evolution time for phase estimation: `0.8π/‖A‖_F`, which keeps
/// `t‖A‖₂` clear of the wrap-around bin.
pub fn safe_time(a: &Matrix) -> f64 {
    0.8 * PI / a.norm_fro()
}

/// Runs every check at `d = 8` with the given seed and Hutchinson probe count.
pub fn verification_suite(seed: u64, probes: usize) -> Result<Vec<QsimCheck>, QsimError> {
    let mut out = Vec::new();

    let u = random_unit(8, derive_seed(seed, 1));
    let v = random_unit(8, derive_seed(seed, 2));
    let enc = block_encode_rank1(&u, &v)?;
    let err = enc.block().sub(&Matrix::outer(&u, &v).scale_real(0.5)).max_abs();
    out.push(QsimCheck::new("rank1_block_max_error", err, 0.0, 1e-8));

    let batch = sample_directions(8, 4, derive_seed(seed, 3)).map_err(classical)?;
    let lcu = accumulator_encoding(&batch)?;
    let err = lcu.encoded().sub(&build_accumulator(&batch)).max_abs();
    out.push(QsimCheck::new("lcu_accumulator_max_error", err, 0.0, 1e-7));

    let w = random_unitary(8, derive_seed(seed, 4))?;
    let probe = gaussian_probe(3, derive_seed(seed, 5))?;
    let direct = probe.amplitudes().iter().zip(w.matrix().mul_vec(probe.amplitudes())).map(|(a, b)| a.conj() * b).sum::<Complex64>().re;
    out.push(QsimCheck::new("hadamard_test_vs_inner_product", hadamard_test(&w, &probe)?, direct, 1e-12));

    let alpha = 0.25;
    let a = build_accumulator(&sample_directions(8, 16, derive_seed(seed, 6)).map_err(classical)?);
    let oracle = 10f64.powf(exp_witness(&a, alpha).map_err(classical)?);
    let est = hutchinson_trace(&exp_encoding(&a, alpha)?, probes, derive_seed(seed, 7))?;
    out.push(QsimCheck::new("hutchinson_exp_trace", est.estimate, oracle, 3.0 * est.std_error));

    let mut within = 0;
    for i in 0..20 {
        let a = random_matrix(4, 4, derive_seed(seed, 100 + i));
        let sv = singular_values(&a)?[0];
        let est = phase_estimate_dilation(&a, 8, safe_time(&a), PhaseInput::TopEigenvector)?;
        if (est.norm_estimate - sv).abs() <= est.resolution {
            within += 1;
        }
    }
    out.push(QsimCheck::new("qpe_random_4x4_within_one_bin", within as f64, 20.0, 0.0));

    let acc = build_accumulator(&sample_directions(8, 32, derive_seed(seed, 8)).map_err(classical)?);
    let top = eig_hermitian(&acc)?.values[7];
    let est = phase_estimate_dilation(&acc, 8, safe_time(&acc), PhaseInput::TopEigenvector)?;
    out.push(QsimCheck::new("qpe_accumulator_top_eigenvalue", est.norm_estimate, top, est.resolution));

    Ok(out)
}
