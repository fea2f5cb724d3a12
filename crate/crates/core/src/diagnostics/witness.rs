//! The accumulator and the two random-projector witnesses built from it.

use std::f64::consts::LN_10;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use super::directions::{derive_seed, gaussian_unit};
use super::{DiagnosticsError, DirectionBatch};
use crate::spectral::{eigenvalues, ln_exp_trace, Matrix};

/// `A = Σ_j v_j v_jᵀ` as a real symmetric matrix.
pub fn build_accumulator(batch: &DirectionBatch) -> Matrix {
    let d = batch.d();
    let mut acc = vec![0.0; d * d];
    for v in batch.iter() {
        for i in 0..d {
            let vi = v[i];
            for j in 0..d {
                acc[i * d + j] += vi * v[j];
            }
        }
    }
    Matrix::from_real(d, d, &acc).expect("accumulator shape")
}

/// Trace and eigenvalue extremes of the ordered deflation product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearWitness {
    pub trace: f64,
    pub min_re_lambda: f64,
    pub max_im_lambda: f64,
}

/// Forms `P_lin = (I - v_1v_1ᵀ)(I - v_2v_2ᵀ)…(I - v_kv_kᵀ)` and reports its
/// trace together with `min Re λ` and `max Im λ`. The product is generally
/// not symmetric, so its eigenvalues may be complex.
pub fn linear_witness(batch: &DirectionBatch) -> Result<LinearWitness, DiagnosticsError> {
    let p = linear_product(batch);
    let spectrum = eigenvalues(&p)?;
    Ok(LinearWitness {
        trace: p.trace().re,
        min_re_lambda: spectrum.min_re(),
        max_im_lambda: spectrum.max_im().max(0.0),
    })
}

/// The ordered deflation product itself.
pub fn linear_product(batch: &DirectionBatch) -> Matrix {
    let d = batch.d();
    let mut p = vec![0.0; d * d];
    for i in 0..d {
        p[i * d + i] = 1.0;
    }
    // Right-multiplying by (I - vvᵀ): P <- P - (P v) vᵀ.
    let mut pv = vec![0.0; d];
    for v in batch.iter() {
        for i in 0..d {
            pv[i] = (0..d).map(|j| p[i * d + j] * v[j]).sum();
        }
        for i in 0..d {
            for j in 0..d {
                p[i * d + j] -= pv[i] * v[j];
            }
        }
    }
    Matrix::from_real(d, d, &p).expect("product shape")
}

/// `log10 Tr e^{-αA}` evaluated from the spectrum in the log domain, so the
/// result stays finite far below the double-precision underflow limit.
pub fn exp_witness(a: &Matrix, alpha: f64) -> Result<f64, DiagnosticsError> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(DiagnosticsError::InvalidAlpha(alpha));
    }
    let spectrum = eigenvalues(a)?;
    Ok(ln_exp_trace(&spectrum.eigenvalues, alpha) / LN_10)
}

/// `log10` of the same trace for several values of `α`, sharing one
/// eigen-decomposition.
pub fn exp_witness_grid(a: &Matrix, alphas: &[f64]) -> Result<Vec<f64>, DiagnosticsError> {
    if let Some(&bad) = alphas.iter().find(|a| !(**a >= 0.0 && a.is_finite())) {
        return Err(DiagnosticsError::InvalidAlpha(bad));
    }
    let spectrum = eigenvalues(a)?;
    Ok(alphas
        .iter()
        .map(|&alpha| ln_exp_trace(&spectrum.eigenvalues, alpha) / LN_10)
        .collect())
}

/// Mean-field surrogate `log10(d e^{-αk/d})` for an accumulator whose
/// spectrum sits at `k/d`.
pub fn mean_field_trace(d: f64, k: f64, alpha: f64) -> f64 {
    d.log10() - alpha * k / d / LN_10
}

/// `Tr(A e^{-αA}) / Tr(e^{-αA})`: the α-tilted mean of the spectrum (real
/// part). Evaluated with a log-domain shift so that collapse of the
/// denominator does not poison the ratio.
pub fn lyapunov_rate(a: &Matrix, alpha: f64) -> Result<f64, DiagnosticsError> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(DiagnosticsError::InvalidAlpha(alpha));
    }
    let spectrum = eigenvalues(a)?;
    let lambdas = &spectrum.eigenvalues;
    let shift = lambdas.iter().map(|z| -alpha * z.re).fold(f64::NEG_INFINITY, f64::max);
    let (num, den) = lambdas.iter().fold(
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
        |(num, den), &z| {
            let w = (Complex64::new(-alpha * z.re - shift, -alpha * z.im)).exp();
            (num + z * w, den + w)
        },
    );
    Ok((num / den).re)
}

/// Least-squares slope of `values` against `alphas`.
pub fn slope_fit(alphas: &[f64], values: &[f64]) -> Result<f64, DiagnosticsError> {
    if alphas.len() != values.len() || alphas.len() < 2 {
        return Err(DiagnosticsError::TooFewPoints(alphas.len().min(values.len())));
    }
    let n = alphas.len() as f64;
    let mean_x = alphas.iter().sum::<f64>() / n;
    let mean_y = values.iter().sum::<f64>() / n;
    let sxx: f64 = alphas.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx <= f64::EPSILON * mean_x.abs().max(1.0) {
        return Err(DiagnosticsError::DegenerateGrid);
    }
    let sxy: f64 = alphas.iter().zip(values).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    Ok(sxy / sxx)
}

/// Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
}

/// Estimates `E‖P_lin x‖²` over fresh direction batches and probe vectors.
/// Each trial owns a derived seed so the estimate is reproducible regardless
/// of thread scheduling.
pub fn deflation_norm_mc(d: usize, k: usize, trials: usize, seed: u64) -> Result<MonteCarloEstimate, DiagnosticsError> {
    if d < 2 {
        return Err(DiagnosticsError::InvalidDimension(d));
    }
    if trials < 2 {
        return Err(DiagnosticsError::InvalidCount(trials));
    }
    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha20Rng::seed_from_u64(derive_seed(seed, t as u64));
            let mut x = gaussian_unit(&mut rng, d);
            for _ in 0..k {
                let v = gaussian_unit(&mut rng, d);
                let dot: f64 = v.iter().zip(&x).map(|(a, b)| a * b).sum();
                x.iter_mut().zip(&v).for_each(|(xi, vi)| *xi -= dot * vi);
            }
            x.iter().map(|z| z * z).sum()
        })
        .collect();
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(MonteCarloEstimate {
        mean,
        std_error: (var / n).sqrt(),
        trials,
    })
}
