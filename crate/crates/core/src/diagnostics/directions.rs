use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use super::DiagnosticsError;

/// `k` unit vectors in real `d`-space drawn from a seeded isotropic ensemble.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionBatch {
    d: usize,
    k: usize,
    seed: u64,
    data: Vec<f64>,
}

impl DirectionBatch {
    /// Wraps explicit vectors; each is normalized to unit length.
    pub fn from_vectors(d: usize, seed: u64, vectors: &[Vec<f64>]) -> Result<Self, DiagnosticsError> {
        if d < 1 {
            return Err(DiagnosticsError::InvalidDimension(d));
        }
        let mut data = Vec::with_capacity(vectors.len() * d);
        for v in vectors {
            if v.len() != d {
                return Err(DiagnosticsError::InvalidDimension(v.len()));
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm > 0.0 && norm.is_finite()) {
                return Err(DiagnosticsError::ZeroDirection);
            }
            data.extend(v.iter().map(|x| x / norm));
        }
        Ok(Self {
            d,
            k: vectors.len(),
            seed,
            data,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn vector(&self, j: usize) -> &[f64] {
        &self.data[j * self.d..(j + 1) * self.d]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.d.max(1)).take(self.k)
    }
}

/// Draws `k` i.i.d. standard Gaussian vectors in dimension `d` and normalizes
/// each to unit length. Identical `(d, k, seed)` give bit-identical batches.
pub fn sample_directions(d: usize, k: usize, seed: u64) -> Result<DirectionBatch, DiagnosticsError> {
    if d < 2 {
        return Err(DiagnosticsError::InvalidDimension(d));
    }
    if k < 1 {
        return Err(DiagnosticsError::InvalidCount(k));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(d * k);
    for _ in 0..k {
        data.extend(gaussian_unit(&mut rng, d));
    }
    Ok(DirectionBatch { d, k, seed, data })
}

pub(crate) fn gaussian_unit(rng: &mut ChaCha20Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a base seed and a tag (vertex
/// count, trial index, ...).
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    mix64(seed ^ mix64(tag.wrapping_add(0xD1B5_4A32_D192_ED03)))
}

/// Seeded random orthonormal basis of `R^d`, returned as `d` column vectors.
pub fn orthonormal_frame(d: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d);
    while basis.len() < d {
        let mut v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
        // Two passes of Gram-Schmidt keep the basis orthonormal to roundoff.
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}
