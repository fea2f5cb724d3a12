//! Matrix exponential by scaling and squaring with diagonal Padé approximants.
//!
//! The degree is picked from the 1-norm of the input following Higham's
//! backward-error thresholds; inputs beyond the degree-13 threshold are scaled
//! by a power of two and the approximant is squared back up.

use num_complex::Complex64;

use super::{Matrix, SpectralError};

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// 1-norm thresholds below which the degree-m approximant reaches unit roundoff.
const THETA3: f64 = 1.495585217958292e-2;
const THETA5: f64 = 2.539398330063230e-1;
const THETA7: f64 = 9.504178996162932e-1;
const THETA9: f64 = 2.097847961257068;
const THETA13: f64 = 5.371920351148152;

/// Largest tolerance the exponential accepts; anything looser is a caller bug.
pub const MAX_EXP_TOL: f64 = 1e-6;

/// Computes `exp(m)`.
///
/// `tol` bounds the relative error the caller expects; the approximants here
/// always target double-precision roundoff so any `tol` in `(0, 1e-6]` is met
/// for diagonalizable inputs with moderate eigenvector conditioning.
pub fn mat_exp(m: &Matrix, tol: f64) -> Result<Matrix, SpectralError> {
    let n = m.require_square()?;
    if !(tol > 0.0 && tol <= MAX_EXP_TOL) {
        return Err(SpectralError::InvalidTolerance(tol));
    }
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let norm = m.norm_one();
    if norm == 0.0 {
        return Ok(Matrix::identity(n));
    }

    for (theta, coeffs) in [
        (THETA3, &PADE3[..]),
        (THETA5, &PADE5[..]),
        (THETA7, &PADE7[..]),
        (THETA9, &PADE9[..]),
    ] {
        if norm <= theta {
            return pade_low(m, coeffs);
        }
    }

    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let scaled = m.scale_real(2f64.powi(-squarings));
    let mut result = pade13(&scaled)?;
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn pade_low(a: &Matrix, b: &[f64]) -> Result<Matrix, SpectralError> {
    let n = a.rows();
    let ident = Matrix::identity(n);
    let a2 = a.matmul(a);
    // Even powers I, A^2, A^4, ...
    let mut powers = vec![ident.clone(), a2.clone()];
    while powers.len() * 2 < b.len() {
        let next = powers.last().unwrap().matmul(&a2);
        powers.push(next);
    }
    let mut u_inner = Matrix::zeros(n, n);
    let mut v = Matrix::zeros(n, n);
    for (idx, p) in powers.iter().enumerate() {
        let even = 2 * idx;
        if even < b.len() {
            v = v.add(&p.scale(real(b[even])));
        }
        if even + 1 < b.len() {
            u_inner = u_inner.add(&p.scale(real(b[even + 1])));
        }
    }
    let u = a.matmul(&u_inner);
    v.sub(&u).solve(&v.add(&u))
}

fn pade13(a: &Matrix) -> Result<Matrix, SpectralError> {
    let b = PADE13;
    let n = a.rows();
    let ident = Matrix::identity(n);
    let a2 = a.matmul(a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let lin = |c: [f64; 3]| a6.scale(real(c[0])).add(&a4.scale(real(c[1]))).add(&a2.scale(real(c[2])));

    let u_high = a6.matmul(&lin([b[13], b[11], b[9]]));
    let u_low = lin([b[7], b[5], b[3]]).add(&ident.scale(real(b[1])));
    let u = a.matmul(&u_high.add(&u_low));

    let v_high = a6.matmul(&lin([b[12], b[10], b[8]]));
    let v = v_high.add(&lin([b[6], b[4], b[2]])).add(&ident.scale(real(b[0])));

    v.sub(&u).solve(&v.add(&u))
}
