use num_complex::Complex64;

use super::{Matrix, SpectralError};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Eigenvalues of a square matrix, optionally with the singular values of the
/// matrix it was derived from (descending).
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub singular_values: Option<Vec<f64>>,
}

impl Spectrum {
    pub fn min_re(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }

    pub fn max_im(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Real parts sorted ascending.
    pub fn sorted_re(&self) -> Vec<f64> {
        let mut re: Vec<f64> = self.eigenvalues.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        re
    }
}

/// Iterations allowed per eigenvalue before the QR sweep gives up.
const QR_ITERS_PER_EIGENVALUE: usize = 60;

/// Eigenvalues of a general complex matrix via Householder reduction to upper
/// Hessenberg form followed by single-shift QR with Wilkinson shifts.
pub fn eig_general(m: &Matrix) -> Result<Spectrum, SpectralError> {
    let n = m.require_square()?;
    let mut h = hessenberg(m);
    let mut eigenvalues = vec![ZERO; n];
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues,
            singular_values: None,
        });
    }

    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let budget = QR_ITERS_PER_EIGENVALUE * n.max(1);
    loop {
        if hi == 0 {
            eigenvalues[0] = h[(0, 0)];
            break;
        }
        // Locate the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let reference = if diag == 0.0 { h.max_abs() } else { diag };
            if sub <= f64::EPSILON * reference {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigenvalues[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        total += 1;
        if total > budget {
            return Err(SpectralError::NoConvergence { iterations: total });
        }

        let shift = if iter % 11 == 0 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_step(&mut h, lo, hi, shift);
    }

    Ok(Spectrum {
        eigenvalues,
        singular_values: None,
    })
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let r1 = mean + disc;
    let r2 = mean - disc;
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// One shifted QR sweep on the active block `lo..=hi` using Givens rotations.
fn qr_step(h: &mut Matrix, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let x = h[(k, k)];
        let y = h[(k + 1, k)];
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (Complex64::new(1.0, 0.0), ZERO)
        } else {
            (x / r, y / r)
        };
        for j in k..=hi {
            let a = h[(k, j)];
            let b = h[(k + 1, j)];
            h[(k, j)] = c.conj() * a + s.conj() * b;
            h[(k + 1, j)] = -s * a + c * b;
        }
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        let last = (k + 2).min(hi);
        for i in lo..=last {
            let a = h[(i, k)];
            let b = h[(i, k + 1)];
            h[(i, k)] = a * c + b * s;
            h[(i, k + 1)] = -a * s.conj() + b * c.conj();
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg(m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        let alpha_norm: f64 = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] += phase * alpha_norm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // H <- (I - 2vv^†) H (I - 2vv^†) restricted to rows/cols k+1..n.
        for j in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * h[(k + 1 + t, j)]).sum();
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= *vi * dot * 2.0;
            }
        }
        for i in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vi)| h[(i, k + 1 + t)] * vi).sum();
            for (t, vi) in v.iter().enumerate() {
                h[(i, k + 1 + t)] -= dot * vi.conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending real eigenvalues.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: Matrix,
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
pub fn eig_hermitian(m: &Matrix) -> Result<HermitianEigen, SpectralError> {
    let n = m.require_square()?;
    if !m.is_hermitian(1e-10) {
        return Err(SpectralError::NotHermitian);
    }
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    let total = a.norm_fro();
    let target = f64::EPSILON * total.max(f64::MIN_POSITIVE);

    let mut sweeps = 0;
    loop {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        sweeps += 1;
        if sweeps > JACOBI_MAX_SWEEPS {
            return Err(SpectralError::NoConvergence { iterations: sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                let z = a[(p, q)];
                let zabs = z.norm();
                if zabs <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = 0.5 * (2.0 * zabs).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                let phase = z / zabs; // e^{i phi}
                let phase_c = phase.conj();

                // A <- A U, U = [[c, -s], [s e^{-i phi}, c e^{-i phi}]]
                for i in 0..n {
                    let ap = a[(i, p)];
                    let aq = a[(i, q)];
                    a[(i, p)] = ap * c + aq * phase_c * s;
                    a[(i, q)] = -ap * s + aq * phase_c * c;
                }
                // A <- U^† A
                for j in 0..n {
                    let ap = a[(p, j)];
                    let aq = a[(q, j)];
                    a[(p, j)] = ap * c + aq * phase * s;
                    a[(q, j)] = -ap * s + aq * phase * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * c + vq * phase_c * s;
                    v[(i, q)] = -vp * s + vq * phase_c * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues, routed through the Hermitian solver when the input is
/// Hermitian (real spectrum guaranteed) and through QR otherwise.
pub fn eigenvalues(m: &Matrix) -> Result<Spectrum, SpectralError> {
    m.require_square()?;
    if m.is_hermitian(1e-12) {
        let eig = eig_hermitian(m)?;
        Ok(Spectrum {
            eigenvalues: eig.values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            singular_values: None,
        })
    } else {
        eig_general(m)
    }
}

/// Hermitian dilation `[[0, A], [A^†, 0]]`.
pub fn dilation(a: &Matrix) -> Matrix {
    let (r, c) = (a.rows(), a.cols());
    let mut h = Matrix::zeros(r + c, r + c);
    h.set_block(0, r, a);
    h.set_block(r, 0, &a.adjoint());
    h
}

/// Builds the dilation of `a` and returns it with its (real) spectrum; the
/// singular values of `a` are the non-negative half of that spectrum.
pub fn dilation_spectrum(a: &Matrix) -> Result<(Matrix, Spectrum), SpectralError> {
    if !a.is_finite() {
        return Err(SpectralError::NonFinite);
    }
    let h = dilation(a);
    let eig = eig_hermitian(&h)?;
    let count = a.rows().min(a.cols());
    let mut singular: Vec<f64> = eig.values.iter().rev().take(count).map(|&x| x.max(0.0)).collect();
    singular.sort_by(|x, y| y.total_cmp(x));
    let spectrum = Spectrum {
        eigenvalues: eig.values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        singular_values: Some(singular),
    };
    Ok((h, spectrum))
}

/// Singular values of `a`, descending.
pub fn singular_values(a: &Matrix) -> Result<Vec<f64>, SpectralError> {
    let (_, spectrum) = dilation_spectrum(a)?;
    Ok(spectrum.singular_values.unwrap_or_default())
}

/// `‖A‖₂` by power iteration on the dilation `H`.
///
/// Iterates `x ← H²x` (the two signed extremal eigenvalues of `H` share a
/// modulus, so plain iteration on `H` would oscillate) and stops when the
/// Rayleigh estimate `sqrt(x^† H² x)` moves by less than `tol`.
pub fn spectral_norm(a: &Matrix, tol: f64, max_iter: usize) -> Result<f64, SpectralError> {
    if !a.is_finite() {
        return Err(SpectralError::NonFinite);
    }
    if !(tol > 0.0) {
        return Err(SpectralError::InvalidTolerance(tol));
    }
    let h = dilation(a);
    let n = h.rows();
    if n == 0 || a.max_abs() == 0.0 {
        return Ok(0.0);
    }
    // Deterministic start with energy in every coordinate.
    let mut x: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + 0.37 * (i as f64 + 1.0).sin(), 0.11 * (i as f64).cos()))
        .collect();
    normalize(&mut x);
    let mut estimate = 0.0;
    for iteration in 1..=max_iter {
        let hx = h.mul_vec(&x);
        let norm_hx = hx.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let next = norm_hx;
        let mut y = h.mul_vec(&hx);
        if norm_hx == 0.0 {
            return Ok(0.0);
        }
        normalize(&mut y);
        x = y;
        if iteration > 1 && (next - estimate).abs() <= tol {
            return Ok(next);
        }
        estimate = next;
    }
    Err(SpectralError::MaxIterExhausted {
        last: estimate,
        iterations: max_iter,
    })
}

fn normalize(x: &mut [Complex64]) {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in x.iter_mut() {
            *z /= norm;
        }
    }
}

/// Natural log of `|Σ exp(-α λ)|`, shifted so that no term underflows.
pub fn ln_exp_trace(eigenvalues: &[Complex64], alpha: f64) -> f64 {
    if eigenvalues.is_empty() {
        return f64::NEG_INFINITY;
    }
    let shift = eigenvalues
        .iter()
        .map(|z| -alpha * z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let sum: Complex64 = eigenvalues
        .iter()
        .map(|z| (Complex64::new(-alpha * z.re - shift, -alpha * z.im)).exp())
        .sum();
    shift + sum.norm().ln()
}

/// `Σ λ e^{-αλ} / Σ e^{-αλ}` evaluated with the same shift as
/// [`ln_exp_trace`]; real parts only.
pub fn tilted_mean(eigenvalues: &[f64], alpha: f64) -> f64 {
    let shift = eigenvalues
        .iter()
        .map(|&x| -alpha * x)
        .fold(f64::NEG_INFINITY, f64::max);
    let (num, den) = eigenvalues.iter().fold((0.0, 0.0), |(num, den), &x| {
        let w = (-alpha * x - shift).exp();
        (num + x * w, den + w)
    });
    num / den
}
