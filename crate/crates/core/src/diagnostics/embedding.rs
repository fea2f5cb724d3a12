//! How a candidate vertex count `n` selects the probe ensemble.
//!
//! Two strategies are provided:
//!
//! * [`SeedSchedule`]: `n` only changes the random stream, and the batch for
//!   `(seed, n)` is drawn from `derive_seed(seed, n)`. Every `n` sees a full
//!   isotropic ensemble.
//! * [`ConstraintRestricted`]: every `n` shares the same isotropic batch and
//!   the same random orthonormal frame (common random numbers), and `n`
//!   enters through a survivor rank `r(n)`: the first `r` frame vectors span
//!   the survivor subspace `Q`, which the probes cannot see. The accumulator
//!   is the compression `P A P` with `P` the projector onto `Q⊥`, and the
//!   deflations act inside `Q⊥` along the normalized active components of the
//!   probes. With `r = 0` this reduces exactly to the isotropic case.
//!
//! Under the restricted strategy `Tr e^{-αA} ≥ r`, so the exponential
//! witness can only collapse where `r(n) = 0`.

use std::collections::BTreeMap;

use super::directions::{derive_seed, orthonormal_frame};
use super::{build_accumulator, sample_directions, DiagnosticsError, DirectionBatch};
use crate::spectral::Matrix;

/// Tag mixed into the base seed for the survivor frame, so the frame stream
/// never coincides with a probe stream.
const FRAME_TAG: u64 = 0x5EED_F4A3_u64 << 16;

/// Probes for one `(n, seed)` cell together with their survivor structure.
#[derive(Clone, Debug)]
pub struct ProbeSet {
    batch: DirectionBatch,
    survivor_rank: usize,
    frame: Option<Vec<Vec<f64>>>,
}

impl ProbeSet {
    pub fn isotropic(batch: DirectionBatch) -> Self {
        Self {
            batch,
            survivor_rank: 0,
            frame: None,
        }
    }

    /// Hides a rank-`rank` survivor subspace, spanned by the first `rank`
    /// vectors of the frame derived from `frame_seed`, from the probes.
    pub fn with_survivors(batch: DirectionBatch, rank: usize, frame_seed: u64) -> Result<Self, DiagnosticsError> {
        let d = batch.d();
        if rank >= d {
            return Err(DiagnosticsError::InvalidModel { r: rank, d });
        }
        let frame = (rank > 0).then(|| orthonormal_frame(d, derive_seed(frame_seed, FRAME_TAG)));
        Ok(Self {
            batch,
            survivor_rank: rank,
            frame,
        })
    }

    pub fn batch(&self) -> &DirectionBatch {
        &self.batch
    }

    pub fn survivor_rank(&self) -> usize {
        self.survivor_rank
    }

    pub fn d(&self) -> usize {
        self.batch.d()
    }

    /// Coordinates of each probe in the active basis (the frame vectors
    /// after the first `r`), unnormalized.
    fn active_coordinates(&self) -> Vec<Vec<f64>> {
        let frame = match &self.frame {
            Some(f) => f,
            None => return self.batch.iter().map(|v| v.to_vec()).collect(),
        };
        let active = &frame[self.survivor_rank..];
        self.batch
            .iter()
            .map(|v| active.iter().map(|b| b.iter().zip(v).map(|(x, y)| x * y).sum()).collect())
            .collect()
    }

    /// The accumulator as seen in the full module.
    pub fn accumulator(&self) -> Matrix {
        let frame = match &self.frame {
            Some(f) => f,
            None => return build_accumulator(&self.batch),
        };
        let d = self.d();
        let active = &frame[self.survivor_rank..];
        // A = B (Σ w wᵀ) Bᵀ where w are active coordinates; equivalently
        // Σ (Pv)(Pv)ᵀ with Pv = B w.
        let mut acc = vec![0.0; d * d];
        for w in self.active_coordinates() {
            let pv: Vec<f64> = (0..d)
                .map(|i| active.iter().zip(&w).map(|(b, wj)| b[i] * wj).sum())
                .collect();
            for i in 0..d {
                for j in 0..d {
                    acc[i * d + j] += pv[i] * pv[j];
                }
            }
        }
        Matrix::from_real(d, d, &acc).expect("accumulator shape")
    }

    /// Unit directions inside the active module, in active coordinates.
    pub fn active_batch(&self) -> Result<DirectionBatch, DiagnosticsError> {
        if self.frame.is_none() {
            return Ok(self.batch.clone());
        }
        let m = self.d() - self.survivor_rank;
        DirectionBatch::from_vectors(m, self.batch.seed(), &self.active_coordinates())
    }
}

/// Strategy mapping `(d, k, seed, n)` to a probe set.
pub trait Embedding: Send + Sync {
    fn name(&self) -> &'static str;

    fn probes(&self, d: usize, k: usize, seed: u64, n: u32) -> Result<ProbeSet, DiagnosticsError>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SeedSchedule;

impl Embedding for SeedSchedule {
    fn name(&self) -> &'static str {
        "seed-schedule"
    }

    fn probes(&self, d: usize, k: usize, seed: u64, n: u32) -> Result<ProbeSet, DiagnosticsError> {
        Ok(ProbeSet::isotropic(sample_directions(d, k, derive_seed(seed, n as u64))?))
    }
}

/// Survivor-rank driven ensemble; see the module docs.
#[derive(Clone, Debug, Default)]
pub struct ConstraintRestricted {
    ranks: BTreeMap<u32, usize>,
}

impl ConstraintRestricted {
    pub fn new(ranks: impl IntoIterator<Item = (u32, usize)>) -> Self {
        Self {
            ranks: ranks.into_iter().collect(),
        }
    }

    /// Plants ranks on consecutive vertex counts starting at `first_n`.
    pub fn planted(first_n: u32, ranks: &[usize]) -> Self {
        Self::new(ranks.iter().enumerate().map(|(i, &r)| (first_n + i as u32, r)))
    }

    pub fn rank(&self, n: u32) -> Option<usize> {
        self.ranks.get(&n).copied()
    }

    pub fn ranks(&self) -> &BTreeMap<u32, usize> {
        &self.ranks
    }
}

impl Embedding for ConstraintRestricted {
    fn name(&self) -> &'static str {
        "constraint-restricted"
    }

    fn probes(&self, d: usize, k: usize, seed: u64, n: u32) -> Result<ProbeSet, DiagnosticsError> {
        let rank = self.rank(n).ok_or(DiagnosticsError::UnknownRank(n))?;
        let batch = sample_directions(d, k, seed)?;
        ProbeSet::with_survivors(batch, rank, seed)
    }
}
