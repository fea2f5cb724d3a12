//! False-negative bounds for missing an `r`-dimensional survivor subspace
//! with `k` isotropic rank-1 probes in dimension `d`.

use super::DiagnosticsError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MissProbabilityModel {
    k: f64,
    r: usize,
    d: usize,
}

impl MissProbabilityModel {
    pub fn new(k: usize, r: usize, d: usize) -> Result<Self, DiagnosticsError> {
        if k < 1 {
            return Err(DiagnosticsError::InvalidCount(k));
        }
        if r < 1 || r > d {
            return Err(DiagnosticsError::InvalidModel { r, d });
        }
        Ok(Self { k: k as f64, r, d })
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Expected number of probe hits on the survivor subspace, `kr/d`.
    pub fn mean_hits(&self) -> f64 {
        self.k * self.r as f64 / self.d as f64
    }
}

/// `e^{-kr/d}`.
pub fn miss_probability(model: &MissProbabilityModel) -> f64 {
    (-model.mean_hits()).exp()
}

/// Lower-tail Chernoff bound `exp(-μδ²/2)` with `μ = kr/d` and the deviation
/// chosen so that `(1-δ)μ = r-1`.
pub fn chernoff_miss(model: &MissProbabilityModel) -> Result<f64, DiagnosticsError> {
    let mu = model.mean_hits();
    let delta = 1.0 - (model.r as f64 - 1.0) / mu;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(DiagnosticsError::ChernoffDomain { delta });
    }
    Ok((-0.5 * mu * delta * delta).exp())
}

/// Variant with the deviation measured against `k` instead of `μ`:
/// `exp(-(kr/2d)(1-(r-1)/k)²)`. Kept for comparison; at large `r` it is
/// orders of magnitude smaller than [`chernoff_miss`].
pub fn chernoff_miss_k_relative(model: &MissProbabilityModel) -> Result<f64, DiagnosticsError> {
    let factor = 1.0 - (model.r as f64 - 1.0) / model.k;
    if !(factor > 0.0 && factor <= 1.0) {
        return Err(DiagnosticsError::ChernoffDomain { delta: factor });
    }
    Ok((-0.5 * model.mean_hits() * factor * factor).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_bounds_differ_by_half_exponent() {
        for (k, d) in [(100, 24), (400, 24), (180, 32)] {
            let m = MissProbabilityModel::new(k, 1, d).unwrap();
            let lin = miss_probability(&m);
            let ch = chernoff_miss(&m).unwrap();
            assert!((ch.ln() * 2.0 - lin.ln()).abs() < 1e-12);
            assert!(lin <= 1.0 && ch >= 0.0);
        }
    }

    #[test]
    fn invalid_models() {
        assert!(MissProbabilityModel::new(0, 1, 24).is_err());
        assert!(MissProbabilityModel::new(10, 0, 24).is_err());
        assert!(MissProbabilityModel::new(10, 25, 24).is_err());
    }

    #[test]
    fn chernoff_domain_error_when_mean_below_rank() {
        // k=2, r=4, d=24: μ = 1/3, δ = 1 - 3·3 < 0.
        let m = MissProbabilityModel::new(2, 4, 24).unwrap();
        assert!(matches!(chernoff_miss(&m), Err(DiagnosticsError::ChernoffDomain { .. })));
    }

    #[test]
    fn k_relative_variant_is_smaller_at_high_rank() {
        let m = MissProbabilityModel::new(100, 12, 24).unwrap();
        let printed = chernoff_miss_k_relative(&m).unwrap();
        assert!(printed < chernoff_miss(&m).unwrap() / 50.0);
        assert!((printed - (-25.0f64 * 0.89 * 0.89).exp()).abs() < 1e-20);
    }
}
