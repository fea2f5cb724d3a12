use std::collections::BTreeMap;

use rayon::prelude::*;

use super::coloring::{edge_count, extension_is_bad};
use super::{canonical_key, has_forbidden_clique, CanonicalKey, CliqueConstraint, EdgeColoring, GradedError};

/// Full enumeration is used while the edge count stays within this bound.
pub const ENUMERATION_EDGE_LIMIT: usize = 28;

/// Default cap on the number of canonical classes held in a glue frontier.
pub const DEFAULT_FRONTIER_BUDGET: usize = 200_000;

/// All good one-vertex extensions of a good coloring, one representative
/// per isomorphism class, sorted by canonical key.
pub fn glue_extensions(c: &EdgeColoring, constraint: CliqueConstraint) -> Result<Vec<EdgeColoring>, GradedError> {
    if has_forbidden_clique(c, constraint) {
        return Err(GradedError::NotGood);
    }
    let mut out = BTreeMap::new();
    for (key, ext) in raw_extensions(c, constraint)? {
        out.entry(key).or_insert(ext);
    }
    Ok(out.into_values().collect())
}

/// Good extensions before deduplication, keyed by canonical form.
fn raw_extensions(c: &EdgeColoring, constraint: CliqueConstraint) -> Result<Vec<(CanonicalKey, EdgeColoring)>, GradedError> {
    let v = c.vertices();
    if v >= 63 {
        return Err(GradedError::TooManyVertices(v + 1));
    }
    let blue = c.blue_masks();
    (0u64..1 << v)
        .filter(|&mask| !extension_is_bad(c.red_masks(), &blue, v, mask, constraint))
        .map(|mask| {
            let ext = c.extended(mask)?;
            Ok((canonical_key(&ext)?, ext))
        })
        .collect()
}

/// Number of good one-vertex extensions counted with labels (no dedup).
pub fn count_good_extensions(c: &EdgeColoring, constraint: CliqueConstraint) -> usize {
    let v = c.vertices();
    let blue = c.blue_masks();
    (0u64..1 << v)
        .filter(|&mask| !extension_is_bad(c.red_masks(), &blue, v, mask, constraint))
        .count()
}

/// Canonical representatives of every good coloring on `v` vertices, built
/// by gluing one vertex at a time from `K_1`.
pub fn good_classes(constraint: CliqueConstraint, v: usize) -> Result<Vec<EdgeColoring>, GradedError> {
    good_classes_with_budget(constraint, v, DEFAULT_FRONTIER_BUDGET)
}

pub fn good_classes_with_budget(
    constraint: CliqueConstraint,
    v: usize,
    budget: usize,
) -> Result<Vec<EdgeColoring>, GradedError> {
    let start = EdgeColoring::new(v.min(1))?;
    let mut frontier = if has_forbidden_clique(&start, constraint) { vec![] } else { vec![start] };
    for _ in 1..v {
        frontier = glue_frontier(&frontier, constraint, budget)?;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(frontier)
}

/// One glue-and-prune step over a whole frontier. Workers extend colorings
/// independently; the merge into a sorted map keeps the result independent
/// of scheduling.
pub fn glue_frontier(
    frontier: &[EdgeColoring],
    constraint: CliqueConstraint,
    budget: usize,
) -> Result<Vec<EdgeColoring>, GradedError> {
    let parts: Vec<Vec<(CanonicalKey, EdgeColoring)>> = frontier
        .par_iter()
        .map(|c| raw_extensions(c, constraint))
        .collect::<Result<_, _>>()?;
    let mut merged = BTreeMap::new();
    for (key, ext) in parts.into_iter().flatten() {
        merged.entry(key).or_insert(ext);
        if merged.len() > budget {
            return Err(GradedError::BudgetExceeded(budget));
        }
    }
    Ok(merged.into_values().collect())
}

/// Whether any good coloring of `K_v` exists, by exhaustive depth-first
/// enumeration that adds one vertex (and its incident edges) at a time.
/// On the diagonal the edge `{1, 2}` is pinned red.
pub fn exists_good_coloring(constraint: CliqueConstraint, v: usize) -> Result<bool, GradedError> {
    if edge_count(v) > ENUMERATION_EDGE_LIMIT {
        return Err(GradedError::EnumerationTooLarge(v));
    }
    Ok(enumerate(constraint, v, true) > 0)
}

/// Number of good labeled colorings of `K_v` (no symmetry fixing).
pub fn count_good_colorings(constraint: CliqueConstraint, v: usize) -> Result<u64, GradedError> {
    if edge_count(v) > ENUMERATION_EDGE_LIMIT {
        return Err(GradedError::EnumerationTooLarge(v));
    }
    Ok(enumerate(constraint, v, false))
}

fn enumerate(constraint: CliqueConstraint, v: usize, stop_at_first: bool) -> u64 {
    fn go(red: &mut Vec<u64>, blue: &mut Vec<u64>, v: usize, c: CliqueConstraint, pin: bool, stop: bool) -> u64 {
        let t = red.len();
        if t == v {
            return 1;
        }
        let mut total = 0;
        for mask in 0u64..1 << t {
            // Pinned edge {0, 1} red.
            if pin && t == 1 && mask & 1 == 0 {
                continue;
            }
            if extension_is_bad(red, blue, t, mask, c) {
                continue;
            }
            let bmask = !mask & ((1u64 << t) - 1);
            for i in 0..t {
                if mask >> i & 1 == 1 {
                    red[i] |= 1 << t;
                } else {
                    blue[i] |= 1 << t;
                }
            }
            red.push(mask);
            blue.push(bmask);
            total += go(red, blue, v, c, pin, stop);
            red.pop();
            blue.pop();
            for i in 0..t {
                red[i] &= !(1 << t);
                blue[i] &= !(1 << t);
            }
            if stop && total > 0 {
                return total;
            }
        }
        total
    }
    if v == 0 {
        return 1;
    }
    let pin = stop_at_first && constraint.is_diagonal() && v >= 2;
    go(&mut Vec::with_capacity(v), &mut Vec::with_capacity(v), v, constraint, pin, stop_at_first)
}

/// How a vertex count was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    Enumeration,
    GluePrune,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RamseyOutcome {
    /// `v` is the smallest vertex count with no good coloring.
    Found { v: usize, method: SearchMethod },
    /// Good colorings exist at every `v ≤ v_max`.
    NotFound { v_max: usize },
    /// Search stopped early; every `v ≤ certified` has a good coloring.
    Partial { certified: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseySearch {
    pub outcome: RamseyOutcome,
    /// `(v, method, good coloring exists)` for every vertex count examined.
    pub steps: Vec<(usize, SearchMethod, bool)>,
}

impl RamseySearch {
    pub fn value(&self) -> Option<usize> {
        match self.outcome {
            RamseyOutcome::Found { v, .. } => Some(v),
            _ => None,
        }
    }
}

/// Smallest `v ≤ v_max` such that every coloring of `K_v` has a red `K_m`
/// or a blue `K_n`. Small `v` are settled by exhaustive enumeration; once
/// the edge count passes [`ENUMERATION_EDGE_LIMIT`] the search switches to
/// glue-and-prune from the canonical classes one vertex below.
pub fn brute_force_ramsey(constraint: CliqueConstraint, v_max: usize) -> RamseySearch {
    let mut steps = Vec::new();
    let mut frontier: Option<Vec<EdgeColoring>> = None;
    for v in 1..=v_max {
        let attempt = if edge_count(v) <= ENUMERATION_EDGE_LIMIT {
            exists_good_coloring(constraint, v).map(|e| (SearchMethod::Enumeration, e))
        } else {
            let base = match frontier.take() {
                Some(f) => Ok(f),
                None => good_classes(constraint, v - 1),
            };
            base.and_then(|f| glue_frontier(&f, constraint, DEFAULT_FRONTIER_BUDGET))
                .map(|next| {
                    let exists = !next.is_empty();
                    frontier = Some(next);
                    (SearchMethod::GluePrune, exists)
                })
        };
        match attempt {
            Ok((method, exists)) => {
                steps.push((v, method, exists));
                if !exists {
                    return RamseySearch {
                        outcome: RamseyOutcome::Found { v, method },
                        steps,
                    };
                }
            }
            Err(e) => {
                return RamseySearch {
                    outcome: RamseyOutcome::Partial {
                        certified: v - 1,
                        reason: e.to_string(),
                    },
                    steps,
                }
            }
        }
    }
    RamseySearch {
        outcome: RamseyOutcome::NotFound { v_max },
        steps,
    }
}

/// `0` when no good coloring of `K_v` exists, otherwise the number of
/// isomorphism classes of good colorings capped at `d - 1`.
pub fn survivor_rank(constraint: CliqueConstraint, v: usize, d: usize) -> Result<usize, GradedError> {
    if d < 2 {
        return Err(GradedError::InvalidDimension(d));
    }
    let classes = good_classes(constraint, v)?;
    Ok(classes.len().min(d - 1))
}
