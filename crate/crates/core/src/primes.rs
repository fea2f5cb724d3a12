//! Prime-sequence numbers: integers that factor over the first `k` primes
//! with a bounded number of distinct primes and bounded exponents, plus the
//! candidate-selection and persistence heuristics built on them.

use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrimeError {
    #[error("zero has no prime signature")]
    Zero,
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("window [{lo}, {hi}] is empty")]
    InvalidWindow { lo: u64, hi: u64 },
    #[error("no admissible value in the window")]
    NoCandidate,
    #[error("selection rule must be non-empty without repeated criteria")]
    InvalidRule,
    #[error("ratio denominator is zero")]
    ZeroDenominator,
    #[error("sequences have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(k);
    let mut candidate = 2u64;
    while primes.len() < k {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| candidate % p != 0) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeSignature {
    factors: Vec<(u64, u32)>,
}

impl PrimeSignature {
    /// Factors `q` by trial division.
    pub fn of(q: u64) -> Result<Self, PrimeError> {
        if q == 0 {
            return Err(PrimeError::Zero);
        }
        let mut rest = q;
        let mut factors = Vec::new();
        let mut p = 2u64;
        while p * p <= rest {
            if rest % p == 0 {
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Self { factors })
    }

    pub fn from_factors(mut factors: Vec<(u64, u32)>) -> Self {
        factors.retain(|&(_, e)| e > 0);
        factors.sort_unstable();
        Self { factors }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn distinct(&self) -> usize {
        self.factors.len()
    }

    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    pub fn largest_prime(&self) -> u64 {
        self.factors.last().map_or(1, |&(p, _)| p)
    }
}

impl fmt::Display for PrimeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Admissibility constraints: prime basis `P_k`, at most `max_distinct`
/// distinct primes and no exponent above `max_exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PSQuery {
    pub k: usize,
    pub max_distinct: usize,
    pub max_exponent: u32,
}

impl PSQuery {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            max_distinct: 3,
            max_exponent: 3,
        }
    }

    pub fn with_k(self, k: usize) -> Self {
        Self { k, ..self }
    }

    fn validate(&self) -> Result<(), PrimeError> {
        if self.k < 1 || self.max_distinct < 1 || self.max_exponent < 1 {
            return Err(PrimeError::InvalidQuery(format!("{self:?}")));
        }
        Ok(())
    }

    /// The `k`-th prime; every admissible factor is at most this.
    pub fn largest_prime(&self) -> u64 {
        *first_primes(self.k).last().expect("k >= 1")
    }
}

fn admits(sig: &PrimeSignature, query: &PSQuery, p_k: u64) -> bool {
    sig.largest_prime() <= p_k && sig.distinct() <= query.max_distinct && sig.max_exponent() <= query.max_exponent
}

pub fn is_prime_sequence(q: u64, query: &PSQuery) -> Result<bool, PrimeError> {
    query.validate()?;
    Ok(admits(&PrimeSignature::of(q)?, query, query.largest_prime()))
}

/// Admissible members of the half-open window `(lo, hi]`, ascending.
pub fn enumerate_ps(lo: u64, hi: u64, query: &PSQuery) -> Result<Vec<u64>, PrimeError> {
    query.validate()?;
    if lo > hi {
        return Err(PrimeError::InvalidWindow { lo, hi });
    }
    let p_k = query.largest_prime();
    Ok((lo + 1..=hi)
        .filter(|&q| admits(&PrimeSignature::of(q).expect("q >= 1"), query, p_k))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    FewestDistinctPrimes,
    SmallestMaxExponent,
    SmallestValue,
}

/// Lexicographic ranking criteria, most significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectionRule(Vec<Criterion>);

impl SelectionRule {
    pub fn new(criteria: Vec<Criterion>) -> Result<Self, PrimeError> {
        let unique = criteria.iter().enumerate().all(|(i, c)| !criteria[..i].contains(c));
        if criteria.is_empty() || !unique {
            return Err(PrimeError::InvalidRule);
        }
        Ok(Self(criteria))
    }

    /// Fewest distinct primes, then smallest maximal exponent, then value.
    pub fn distinct_first() -> Self {
        Self(vec![
            Criterion::FewestDistinctPrimes,
            Criterion::SmallestMaxExponent,
            Criterion::SmallestValue,
        ])
    }

    /// Smallest maximal exponent, then fewest distinct primes, then value.
    pub fn exponent_first() -> Self {
        Self(vec![
            Criterion::SmallestMaxExponent,
            Criterion::FewestDistinctPrimes,
            Criterion::SmallestValue,
        ])
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.0
    }

    pub fn compare(&self, a: &PrimeSignature, b: &PrimeSignature) -> Ordering {
        self.0
            .iter()
            .map(|c| match c {
                Criterion::FewestDistinctPrimes => a.distinct().cmp(&b.distinct()),
                Criterion::SmallestMaxExponent => a.max_exponent().cmp(&b.max_exponent()),
                Criterion::SmallestValue => a.value().cmp(&b.value()),
            })
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl Default for SelectionRule {
    /// [`SelectionRule::exponent_first`]: the order under which the
    /// persistence plateaus land on 115 and 209.
    fn default() -> Self {
        Self::exponent_first()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub value: u64,
    /// Every admissible value, best first.
    pub ranking: Vec<PrimeSignature>,
}

/// Ranks the admissible members of the inclusive window `[lo, hi]`.
pub fn select_candidate(lo: u64, hi: u64, query: &PSQuery, rule: &SelectionRule) -> Result<Selection, PrimeError> {
    if lo > hi || lo == 0 {
        return Err(PrimeError::InvalidWindow { lo, hi });
    }
    let mut ranking: Vec<PrimeSignature> = enumerate_ps(lo - 1, hi, query)?
        .into_iter()
        .map(|q| PrimeSignature::of(q).expect("q >= 1"))
        .collect();
    // Ties under every criterion fall back to the value so the order is total.
    ranking.sort_by(|a, b| rule.compare(a, b).then(a.value().cmp(&b.value())));
    let value = ranking.first().ok_or(PrimeError::NoCandidate)?.value();
    Ok(Selection { value, ranking })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistenceResult {
    /// Value with the longest run of consecutive bases.
    pub value: u64,
    /// Inclusive range of `k` over which `value` was selected.
    pub plateau: (usize, usize),
    /// Selection at the cut-off `k_max = 2n - 1`.
    pub value_at_cutoff: u64,
    /// `(k, selection)` for every scanned basis.
    pub selections: Vec<(usize, Option<u64>)>,
}

/// Scans prime bases `k = 1..=2n-1` over the inclusive window and returns
/// the selection that persists over the longest run of consecutive bases.
/// Among runs of equal length the later one wins.
pub fn persistence_scan(
    n_diag: usize,
    lo: u64,
    hi: u64,
    template: &PSQuery,
    rule: &SelectionRule,
) -> Result<PersistenceResult, PrimeError> {
    if n_diag < 2 {
        return Err(PrimeError::InvalidQuery(format!("n_diag = {n_diag}")));
    }
    persistence_scan_range(1, 2 * n_diag - 1, lo, hi, template, rule)
}

/// [`persistence_scan`] over an explicit basis range `k_lo..=k_hi`.
pub fn persistence_scan_range(
    k_lo: usize,
    k_hi: usize,
    lo: u64,
    hi: u64,
    template: &PSQuery,
    rule: &SelectionRule,
) -> Result<PersistenceResult, PrimeError> {
    if k_lo < 1 || k_lo > k_hi {
        return Err(PrimeError::InvalidQuery(format!("basis range {k_lo}..={k_hi}")));
    }
    let selections = (k_lo..=k_hi)
        .map(|k| match select_candidate(lo, hi, &template.with_k(k), rule) {
            Ok(s) => Ok((k, Some(s.value))),
            Err(PrimeError::NoCandidate) => Ok((k, None)),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut best: Option<(u64, usize, usize)> = None;
    let mut i = 0;
    while i < selections.len() {
        let Some(v) = selections[i].1 else {
            i += 1;
            continue;
        };
        let mut j = i;
        while j + 1 < selections.len() && selections[j + 1].1 == Some(v) {
            j += 1;
        }
        let len = j - i + 1;
        if best.is_none_or(|(_, a, b)| len >= b - a + 1) {
            best = Some((v, selections[i].0, selections[j].0));
        }
        i = j + 1;
    }
    let (value, a, b) = best.ok_or(PrimeError::NoCandidate)?;
    let value_at_cutoff = selections.last().and_then(|s| s.1).ok_or(PrimeError::NoCandidate)?;
    Ok(PersistenceResult {
        value,
        plateau: (a, b),
        value_at_cutoff,
        selections,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthRatio {
    pub rho: f64,
    pub in_corridor: bool,
}

/// `ρ_n = R(n,n) / R(n-1,n)` for aligned sequences, flagged when `ρ ≤ 2`.
pub fn growth_ratio(diag: &[f64], offdiag: &[f64]) -> Result<Vec<GrowthRatio>, PrimeError> {
    if diag.len() != offdiag.len() {
        return Err(PrimeError::LengthMismatch(diag.len(), offdiag.len()));
    }
    diag.iter()
        .zip(offdiag)
        .map(|(&num, &den)| {
            if den == 0.0 {
                return Err(PrimeError::ZeroDenominator);
            }
            let rho = num / den;
            Ok(GrowthRatio { rho, in_corridor: rho <= 2.0 })
        })
        .collect()
}

/// Interval of `ρ` given bounds on numerator and denominator.
pub fn ratio_bounds(num: (f64, f64), den: (f64, f64)) -> Result<(f64, f64), PrimeError> {
    if den.0 <= 0.0 || den.1 <= 0.0 {
        return Err(PrimeError::ZeroDenominator);
    }
    Ok((num.0 / den.1, num.1 / den.0))
}

/// Reference rows of the prime-sparse extrapolation table: selections at
/// bases `P_5 ..= P_13`.
pub const REFERENCE_TABLE: [(usize, [u64; 9]); 2] = [
    (6, [108, 108, 117, 117, 115, 115, 115, 111, 111]),
    (7, [225, 216, 221, 209, 209, 209, 209, 209, 205]),
];

/// Default windows from the rigorous bounds: `(n, lo, hi)`.
pub const DEFAULT_WINDOWS: [(usize, u64, u64); 2] = [(6, 102, 160), (7, 205, 492)];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_signatures() {
        assert_eq!(first_primes(13), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]);
        let s = PrimeSignature::of(45).unwrap();
        assert_eq!(s.factors(), &[(3, 2), (5, 1)]);
        assert_eq!(s.to_string(), "3^2*5");
        assert_eq!(PrimeSignature::of(1).unwrap().value(), 1);
        assert_eq!(PrimeSignature::of(0), Err(PrimeError::Zero));
        assert_eq!(PrimeSignature::of(999_999_937).unwrap().factors(), &[(999_999_937, 1)]);
    }

    #[test]
    fn membership_examples() {
        assert!(is_prime_sequence(45, &PSQuery::new(5)).unwrap());
        for k in 1..20 {
            assert!(!is_prime_sequence(112, &PSQuery::new(k)).unwrap());
        }
        assert!(!is_prime_sequence(46, &PSQuery::new(8)).unwrap());
        assert!(is_prime_sequence(46, &PSQuery::new(9)).unwrap());
        assert!(is_prime_sequence(0, &PSQuery::new(3)).is_err());
    }

    #[test]
    fn unique_candidate_ignores_rule() {
        let q = PSQuery::new(3);
        for rule in [SelectionRule::distinct_first(), SelectionRule::exponent_first()] {
            assert_eq!(select_candidate(44, 46, &q, &rule).unwrap().value, 45);
        }
        assert_eq!(select_candidate(47, 47, &q, &SelectionRule::default()), Err(PrimeError::NoCandidate));
    }

    #[test]
    fn rule_validation() {
        assert!(SelectionRule::new(vec![]).is_err());
        assert!(SelectionRule::new(vec![Criterion::SmallestValue, Criterion::SmallestValue]).is_err());
    }

    #[test]
    fn ratios() {
        let r = growth_ratio(&[2.0, 6.0, 18.0, 7.0], &[1.0, 3.0, 9.0, 7.0]).unwrap();
        assert!(r.iter().take(3).all(|g| g.rho == 2.0 && g.in_corridor));
        assert_eq!(r[3].rho, 1.0);
        let (lo, hi) = ratio_bounds((43.0, 46.0), (25.0, 25.0)).unwrap();
        assert!((lo - 1.72).abs() < 1e-12 && (hi - 1.84).abs() < 1e-12);
        assert!(growth_ratio(&[1.0], &[0.0]).is_err());
    }

    #[test]
    fn single_basis_scan() {
        let q = PSQuery::new(9);
        let r = persistence_scan_range(9, 9, 102, 160, &q, &SelectionRule::default()).unwrap();
        let direct = select_candidate(102, 160, &q, &SelectionRule::default()).unwrap().value;
        assert_eq!((r.value, r.plateau, r.value_at_cutoff), (direct, (9, 9), direct));
    }
}
