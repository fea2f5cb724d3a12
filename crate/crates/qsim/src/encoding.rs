//! Block encodings: unitaries whose all-ancillas-zero block is `F / α₀`.
//!
//! Registers are laid out with the data qubits lowest and ancillas above
//! them, so the encoded block is the top-left `d × d` corner of the unitary.

use std::f64::consts::PI;

use num_complex::Complex64;
use ramsey_core::diagnostics::DirectionBatch;
use ramsey_core::spectral::{eig_hermitian, mat_exp, Matrix};

use crate::state::{qubits_for, Circuit, Gate, UnitaryOperator};
use crate::QsimError;

/// Unit-norm tolerance for gadget inputs.
const UNIT_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct BlockEncoding {
    unitary: UnitaryOperator,
    data_qubits: usize,
    ancillas: usize,
    alpha0: f64,
}

impl BlockEncoding {
    pub fn unitary(&self) -> &UnitaryOperator {
        &self.unitary
    }

    pub fn data_qubits(&self) -> usize {
        self.data_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.data_qubits
    }

    pub fn ancillas(&self) -> usize {
        self.ancillas
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    /// `(⟨0^a| ⊗ I) U (|0^a⟩ ⊗ I)`.
    pub fn block(&self) -> Matrix {
        self.unitary.matrix().block(0, 0, self.dim(), self.dim())
    }

    /// `α₀ ·` [`block`](Self::block), the operator being encoded.
    pub fn encoded(&self) -> Matrix {
        self.block().scale_real(self.alpha0)
    }
}

fn check_unit(v: &[Complex64]) -> Result<(), QsimError> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(QsimError::NotUnit(norm));
    }
    Ok(())
}

/// Zero-pads a vector to the next power of two.
pub fn pad_to_power_of_two(v: &[Complex64]) -> Vec<Complex64> {
    let mut out = v.to_vec();
    out.resize(v.len().next_power_of_two().max(1), Complex64::new(0.0, 0.0));
    out
}

/// Zero-pads a square matrix to the next power-of-two size.
pub fn pad_matrix(m: &Matrix) -> Matrix {
    let n = m.rows().next_power_of_two().max(1);
    if n == m.rows() {
        return m.clone();
    }
    let mut out = Matrix::zeros(n, n);
    out.set_block(0, 0, m);
    out
}

/// A unitary sending `|0⟩` to the unit vector `u`: a Householder reflection
/// with its phase corrected.
pub fn state_preparation(u: &[Complex64]) -> Result<Matrix, QsimError> {
    check_unit(u)?;
    let d = u.len();
    let phase = if u[0].norm() > 0.0 { u[0] / u[0].norm() } else { Complex64::new(1.0, 0.0) };
    // w = u + phase·e₀ has ‖w‖ ≥ 1, and H = I - 2ww†/‖w‖² maps u to -phase·e₀.
    let mut w = u.to_vec();
    w[0] += phase;
    let wn = w.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let h = Matrix::identity(d).sub(&Matrix::outer(&w, &w).scale_real(2.0 / wn));
    // H e₀ = -conj(phase)·u, so -phase·H sends e₀ to u.
    Ok(h.scale(-phase))
}

/// `2|0⟩⟨0| - I`.
fn zero_reflection(d: usize) -> Matrix {
    let mut diag = vec![Complex64::new(-1.0, 0.0); d];
    diag[0] = Complex64::new(1.0, 0.0);
    Matrix::diagonal(&diag)
}

/// Gates of the rank-1 gadget acting on `data` qubits `0..n` and two
/// ancillas `n`, `n+1`, each additionally conditioned on `controls`.
fn rank1_gates(u: &[Complex64], v: &[Complex64], n: usize, controls: &[(usize, bool)]) -> Result<Vec<Gate>, QsimError> {
    let d = 1usize << n;
    let prep_u = state_preparation(u)?;
    let prep_v = state_preparation(v)?;
    let with = |g: Gate| controls.iter().fold(g, |g, &(q, b)| g.controlled(q, b));
    Ok(vec![
        // Unprepare v: |v⟩ -> |0⟩.
        with(Gate::new(0, prep_v.adjoint())?),
        // Projection onto |0⟩ as (I + R)/2 with R the zero reflection.
        with(Gate::hadamard(n)),
        with(Gate::new(0, zero_reflection(d))?.controlled(n, true)),
        with(Gate::hadamard(n)),
        // Prepare u.
        with(Gate::new(0, prep_u)?),
        // ⟨0|Ry(2π/3)|0⟩ = cos(π/3) = 1/2.
        with(Gate::ry(n + 1, 2.0 * PI / 3.0)),
    ])
}

/// Two-ancilla encoding of `½|u⟩⟨v|`, so `α₀ = 2`.
pub fn block_encode_rank1(u: &[Complex64], v: &[Complex64]) -> Result<BlockEncoding, QsimError> {
    if u.len() != v.len() {
        return Err(QsimError::DimensionMismatch { expected: u.len(), found: v.len() });
    }
    check_unit(u)?;
    check_unit(v)?;
    let (u, v) = (pad_to_power_of_two(u), pad_to_power_of_two(v));
    let n = qubits_for(u.len())?;
    let mut circ = Circuit::new(n + 2);
    for g in rank1_gates(&u, &v, n, &[])? {
        circ.push(g);
    }
    Ok(BlockEncoding {
        unitary: circ.to_unitary()?,
        data_qubits: n,
        ancillas: 2,
        alpha0: 2.0,
    })
}

/// One weighted rank-1 term `w |u⟩⟨v|`.
#[derive(Clone, Debug)]
pub struct LcuTerm {
    pub weight: Complex64,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
}

impl LcuTerm {
    pub fn real(weight: f64, u: &[f64], v: &[f64]) -> Self {
        let lift = |x: &[f64]| x.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        Self {
            weight: Complex64::new(weight, 0.0),
            u: lift(u),
            v: lift(v),
        }
    }
}

/// Linear combination of rank-1 gadgets behind a selector register.
///
/// The selector is prepared in `Σ_j √(|w_j|/W) |j⟩`, gadget `j` is applied
/// when the selector reads `j` (with the phase of `w_j` folded into `u_j`),
/// and the preparation is undone. The zero block is then
/// `Σ_j w_j |u_j⟩⟨v_j| / (2W)`, so `α₀ = 2W` with `W = Σ|w_j|`.
pub fn lcu_block_encode(terms: &[LcuTerm]) -> Result<BlockEncoding, QsimError> {
    let first = terms.first().ok_or(QsimError::EmptyTerms)?;
    let raw_dim = first.u.len();
    if terms.iter().any(|t| t.u.len() != raw_dim || t.v.len() != raw_dim) {
        return Err(QsimError::DimensionMismatch { expected: raw_dim, found: 0 });
    }
    if terms.iter().any(|t| !(t.weight.re.is_finite() && t.weight.im.is_finite())) {
        return Err(QsimError::NonFiniteWeight);
    }
    let total: f64 = terms.iter().map(|t| t.weight.norm()).sum();
    if total == 0.0 {
        return Err(QsimError::EmptyTerms);
    }
    let n = qubits_for(raw_dim.next_power_of_two())?;
    let s = qubits_for(terms.len().next_power_of_two())?;
    let sel_offset = n + 2;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << s];
    for (a, t) in amps.iter_mut().zip(terms) {
        *a = Complex64::new((t.weight.norm() / total).sqrt(), 0.0);
    }
    let prep = if s == 0 { Matrix::identity(1) } else { state_preparation(&amps)? };

    let mut circ = Circuit::new(n + 2 + s);
    if s > 0 {
        circ.push(Gate::new(sel_offset, prep.clone())?);
    }
    for (j, t) in terms.iter().enumerate() {
        if t.weight.norm() == 0.0 {
            continue;
        }
        let phase = t.weight / t.weight.norm();
        let u: Vec<Complex64> = pad_to_power_of_two(&t.u).iter().map(|z| z * phase).collect();
        let v = pad_to_power_of_two(&t.v);
        let controls: Vec<(usize, bool)> = (0..s).map(|b| (sel_offset + b, j >> b & 1 == 1)).collect();
        for g in rank1_gates(&u, &v, n, &controls)? {
            circ.push(g);
        }
    }
    if s > 0 {
        circ.push(Gate::new(sel_offset, prep.adjoint())?);
    }
    Ok(BlockEncoding {
        unitary: circ.to_unitary()?,
        data_qubits: n,
        ancillas: 2 + s,
        alpha0: 2.0 * total,
    })
}

fn hermitian_sqrt(m: &Matrix) -> Result<Matrix, QsimError> {
    // Symmetrize against roundoff before the Hermitian solver.
    let h = m.add(&m.adjoint()).scale_real(0.5);
    let eig = eig_hermitian(&h)?;
    let roots: Vec<Complex64> = eig.values.iter().map(|&x| Complex64::new(x.max(0.0).sqrt(), 0.0)).collect();
    Ok(eig.vectors.matmul(&Matrix::diagonal(&roots)).matmul(&eig.vectors.adjoint()))
}

/// One-ancilla unitary dilation of `F / α₀`:
/// `[[T, √(I-TT†)], [√(I-T†T), -T†]]` with `T = F/α₀`, which requires
/// `‖F‖₂ ≤ α₀`.
pub fn dense_block_encoding(f: &Matrix, alpha0: f64) -> Result<BlockEncoding, QsimError> {
    if !(alpha0 > 0.0 && alpha0.is_finite()) {
        return Err(QsimError::InvalidScale(alpha0));
    }
    let f = pad_matrix(f);
    let d = f.rows();
    let n = qubits_for(d)?;
    let t = f.scale_real(1.0 / alpha0);
    let id = Matrix::identity(d);
    let top_right = hermitian_sqrt(&id.sub(&t.matmul(&t.adjoint())))?;
    let bottom_left = hermitian_sqrt(&id.sub(&t.adjoint().matmul(&t)))?;
    let mut u = Matrix::zeros(2 * d, 2 * d);
    u.set_block(0, 0, &t);
    u.set_block(0, d, &top_right);
    u.set_block(d, 0, &bottom_left);
    u.set_block(d, d, &t.adjoint().scale_real(-1.0));
    let unitary = UnitaryOperator::new(u, 1e-9).map_err(|e| match e {
        QsimError::NotUnitary(defect) => QsimError::ScaleTooSmall { alpha0, defect },
        other => other,
    })?;
    Ok(BlockEncoding {
        unitary,
        data_qubits: n,
        ancillas: 1,
        alpha0,
    })
}

/// Encoding of `e^{-αA}` with `α₀ = 1`. The exponential is formed
/// classically, so `A` must make it a contraction (any PSD `A` does).
pub fn exp_encoding(a: &Matrix, alpha: f64) -> Result<BlockEncoding, QsimError> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(QsimError::InvalidScale(alpha));
    }
    let f = mat_exp(&a.scale_real(-alpha), 1e-12)?;
    dense_block_encoding(&f, 1.0)
}

/// LCU encoding of the accumulator `Σ_j v_j v_jᵀ` with one unit-weight
/// term per direction, so `α₀ = 2k`.
pub fn accumulator_encoding(batch: &DirectionBatch) -> Result<BlockEncoding, QsimError> {
    let terms: Vec<LcuTerm> = batch.iter().map(|v| LcuTerm::real(1.0, v, v)).collect();
    lcu_block_encode(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn preparation_maps_zero_to_target() {
        let u = vec![c(0.0, 0.6), c(0.8, 0.0)];
        let p = state_preparation(&u).unwrap();
        assert!((p[(0, 0)] - u[0]).norm() < 1e-15 && (p[(1, 0)] - u[1]).norm() < 1e-15);
        assert!(UnitaryOperator::new(p, 1e-12).is_ok());
        let e0 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        assert!((state_preparation(&e0).unwrap()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rank1_on_basis_vector() {
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let enc = block_encode_rank1(&e1, &e1).unwrap();
        let b = enc.block();
        assert!((b[(0, 0)] - c(0.5, 0.0)).norm() < 1e-12);
        assert!(b[(1, 1)].norm() < 1e-12 && b[(0, 1)].norm() < 1e-12);
        assert_eq!((enc.ancillas(), enc.alpha0()), (2, 2.0));
    }

    #[test]
    fn non_unit_inputs_rejected() {
        let bad = vec![c(1.0, 0.0), c(1.0, 0.0)];
        let good = vec![c(1.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(block_encode_rank1(&bad, &good), Err(QsimError::NotUnit(_))));
        assert!(matches!(lcu_block_encode(&[]), Err(QsimError::EmptyTerms)));
    }

    #[test]
    fn odd_dimensions_are_padded() {
        let u = vec![c(0.6, 0.0), c(0.0, 0.0), c(0.8, 0.0)];
        let enc = block_encode_rank1(&u, &u).unwrap();
        assert_eq!(enc.dim(), 4);
        assert!((enc.encoded()[(2, 0)] - c(0.48, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn dense_encoding_of_contraction() {
        let f = Matrix::from_real(2, 2, &[0.5, 0.2, 0.1, -0.3]).unwrap();
        let enc = dense_block_encoding(&f, 1.0).unwrap();
        assert!(enc.block().sub(&f).max_abs() < 1e-12);
        assert!(matches!(
            dense_block_encoding(&f.scale_real(10.0), 1.0),
            Err(QsimError::ScaleTooSmall { .. })
        ));
    }
}
