use num_complex::Complex64;
use ramsey_core::spectral::Matrix;

use crate::QsimError;

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 14;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Dense amplitudes over `qubits` qubits. Qubit `q` is bit `q` of the basis
/// index (little-endian), so the highest qubits select the top-left blocks
/// of an operator.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(qubits: usize) -> Result<Self, QsimError> {
        Self::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Result<Self, QsimError> {
        if qubits > MAX_QUBITS {
            return Err(QsimError::TooManyQubits(qubits));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        *amps.get_mut(index).ok_or(QsimError::DimensionMismatch {
            expected: 1 << qubits,
            found: index,
        })? = c(1.0);
        Ok(Self { qubits, amps })
    }

    /// Wraps amplitudes after normalizing them; the length must be a power
    /// of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, QsimError> {
        let qubits = qubits_for(amps.len())?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(QsimError::NotNormalizable);
        }
        Ok(Self {
            qubits,
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|high⟩ ⊗ |self⟩` with `high` occupying new top qubits.
    pub fn with_ancillas(&self, ancillas: usize) -> Result<Self, QsimError> {
        let qubits = self.qubits + ancillas;
        if qubits > MAX_QUBITS {
            return Err(QsimError::TooManyQubits(qubits));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[..self.amps.len()].copy_from_slice(&self.amps);
        Ok(Self { qubits, amps })
    }

    /// Applies `gate` in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<(), QsimError> {
        let width = gate.width;
        if gate.offset + width > self.qubits || gate.controls.iter().any(|&(q, _)| q >= self.qubits) {
            return Err(QsimError::DimensionMismatch {
                expected: self.qubits,
                found: gate.offset + width,
            });
        }
        let block = 1usize << width;
        let mask = (block - 1) << gate.offset;
        let mut scratch = vec![Complex64::new(0.0, 0.0); block];
        for base in 0..self.amps.len() {
            if base & mask != 0 {
                continue;
            }
            if !gate.controls.iter().all(|&(q, v)| (base >> q & 1 == 1) == v) {
                continue;
            }
            for (r, s) in scratch.iter_mut().enumerate() {
                *s = (0..block)
                    .map(|col| gate.matrix[(r, col)] * self.amps[base | col << gate.offset])
                    .sum();
            }
            for (r, s) in scratch.iter().enumerate() {
                self.amps[base | r << gate.offset] = *s;
            }
        }
        Ok(())
    }

    pub fn run(&mut self, circuit: &Circuit) -> Result<(), QsimError> {
        for g in &circuit.gates {
            self.apply(g)?;
        }
        Ok(())
    }

    /// Probability of each value of the register `offset..offset+width`.
    pub fn marginal(&self, offset: usize, width: usize) -> Vec<f64> {
        let mut p = vec![0.0; 1 << width];
        for (i, a) in self.amps.iter().enumerate() {
            p[(i >> offset) & ((1 << width) - 1)] += a.norm_sqr();
        }
        p
    }

    /// `⟨Z⟩` on qubit `q`.
    pub fn expect_z(&self, q: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| if i >> q & 1 == 0 { a.norm_sqr() } else { -a.norm_sqr() })
            .sum()
    }
}

pub(crate) fn qubits_for(dim: usize) -> Result<usize, QsimError> {
    if !dim.is_power_of_two() {
        return Err(QsimError::NotPowerOfTwo(dim));
    }
    let q = dim.trailing_zeros() as usize;
    if q > MAX_QUBITS {
        return Err(QsimError::TooManyQubits(q));
    }
    Ok(q)
}

/// A dense operator on the contiguous qubits `offset..offset+width`,
/// optionally conditioned on control qubits holding given values.
#[derive(Clone, Debug)]
pub struct Gate {
    pub offset: usize,
    pub width: usize,
    pub matrix: Matrix,
    pub controls: Vec<(usize, bool)>,
}

impl Gate {
    pub fn new(offset: usize, matrix: Matrix) -> Result<Self, QsimError> {
        let width = qubits_for(matrix.rows())?;
        if !matrix.is_square() {
            return Err(QsimError::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        Ok(Self {
            offset,
            width,
            matrix,
            controls: Vec::new(),
        })
    }

    pub fn controlled(mut self, qubit: usize, value: bool) -> Self {
        self.controls.push((qubit, value));
        self
    }

    pub fn hadamard(q: usize) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(q, Matrix::from_real(2, 2, &[h, h, h, -h]).expect("2x2")).expect("one qubit")
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        let (s, co) = (theta / 2.0).sin_cos();
        Self::new(q, Matrix::from_real(2, 2, &[co, -s, s, co]).expect("2x2")).expect("one qubit")
    }

    /// Diagonal phase `diag(1, e^{iφ})`.
    pub fn phase(q: usize, phi: f64) -> Self {
        let m = Matrix::diagonal(&[c(1.0), Complex64::from_polar(1.0, phi)]);
        Self::new(q, m).expect("one qubit")
    }
}

/// Ordered gate list.
#[derive(Clone, Debug, Default)]
pub struct Circuit {
    pub qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize) -> Self {
        Self { qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    /// The dense unitary, assembled column by column by simulating each
    /// basis state through the circuit.
    pub fn to_unitary(&self) -> Result<UnitaryOperator, QsimError> {
        let dim = 1usize << self.qubits;
        let mut m = Matrix::zeros(dim, dim);
        for col in 0..dim {
            let mut s = StateVector::basis(self.qubits, col)?;
            s.run(self)?;
            let column = Matrix::from_vec(dim, 1, s.amps).expect("column");
            m.set_block(0, col, &column);
        }
        Ok(UnitaryOperator { qubits: self.qubits, matrix: m })
    }
}

#[derive(Clone, Debug)]
pub struct UnitaryOperator {
    qubits: usize,
    matrix: Matrix,
}

impl UnitaryOperator {
    /// Wraps a dense matrix after checking `U†U = I` to `tol`.
    pub fn new(matrix: Matrix, tol: f64) -> Result<Self, QsimError> {
        let qubits = qubits_for(matrix.rows())?;
        let defect = matrix.adjoint().matmul(&matrix).sub(&Matrix::identity(matrix.rows())).max_abs();
        if !matrix.is_square() || defect > tol {
            return Err(QsimError::NotUnitary(defect));
        }
        Ok(Self { qubits, matrix })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.matrix
            .adjoint()
            .matmul(&self.matrix)
            .sub(&Matrix::identity(self.matrix.rows()))
            .max_abs()
    }

    pub fn as_gate(&self) -> Gate {
        Gate::new(0, self.matrix.clone()).expect("power-of-two square")
    }
}
