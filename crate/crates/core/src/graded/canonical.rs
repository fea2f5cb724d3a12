//! Canonical labeling of edge colorings by colour refinement and
//! individualization. Every leaf of the search tree is visited, so the
//! result is exact; the cost is bounded by a leaf budget.

use super::{EdgeColoring, GradedError};

/// Largest vertex count the canonical code can hold (`C(16,2) = 120` bits).
pub const MAX_CANONICAL_VERTICES: usize = 16;

/// Default cap on search-tree leaves.
pub const DEFAULT_LEAF_BUDGET: usize = 2_000_000;

/// Byte string equal for two colorings iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Canonical form plus the size of the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// Relabeling (`vertex -> position`) that produces the canonical coloring.
    pub labeling: Vec<usize>,
    pub automorphisms: u64,
}

struct Search<'a> {
    c: &'a EdgeColoring,
    best: Option<(u128, Vec<usize>)>,
    ties: u64,
    leaves: usize,
    budget: usize,
}

/// Ordered partition as a cell index per vertex; cells are numbered
/// `0..cells` in order.
fn refine(c: &EdgeColoring, mut cell: Vec<usize>) -> Vec<usize> {
    let v = c.vertices();
    loop {
        let cells = cell.iter().max().map_or(0, |m| m + 1);
        let signature = |x: usize| {
            let mut counts = vec![0u32; cells];
            let row = c.red_mask(x);
            for y in 0..v {
                if row >> y & 1 == 1 {
                    counts[cell[y]] += 1;
                }
            }
            (cell[x], counts)
        };
        let mut sigs: Vec<(usize, Vec<u32>)> = (0..v).map(signature).collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() == cells {
            return cell;
        }
        cell = sigs
            .iter_mut()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
    }
}

fn code_of(c: &EdgeColoring, position: &[usize]) -> u128 {
    let v = c.vertices();
    let mut at = vec![0usize; v];
    for (x, &p) in position.iter().enumerate() {
        at[p] = x;
    }
    let mut code = 0u128;
    for i in 0..v {
        for j in i + 1..v {
            code = code << 1 | c.is_red(at[i], at[j]) as u128;
        }
    }
    code
}

impl Search<'_> {
    fn visit(&mut self, cell: Vec<usize>) -> Result<(), GradedError> {
        let v = self.c.vertices();
        let cells = cell.iter().max().map_or(0, |m| m + 1);
        if cells == v {
            self.leaves += 1;
            if self.leaves > self.budget {
                return Err(GradedError::BudgetExceeded(self.budget));
            }
            let code = code_of(self.c, &cell);
            match &self.best {
                Some((b, _)) if code < *b => {}
                Some((b, _)) if code == *b => self.ties += 1,
                _ => {
                    self.best = Some((code, cell));
                    self.ties = 1;
                }
            }
            return Ok(());
        }
        // First non-singleton cell.
        let mut sizes = vec![0usize; cells];
        for &k in &cell {
            sizes[k] += 1;
        }
        let target = (0..cells).find(|&k| sizes[k] > 1).expect("not discrete");
        for x in (0..v).filter(|&x| cell[x] == target) {
            // Individualize x: it takes index `target`, the rest of its cell
            // shifts up by one, later cells too.
            let split: Vec<usize> = (0..v)
                .map(|y| {
                    if y == x || cell[y] < target {
                        cell[y]
                    } else {
                        cell[y] + 1
                    }
                })
                .collect();
            self.visit(refine(self.c, split))?;
        }
        Ok(())
    }
}

pub fn canonical_form_with_budget(c: &EdgeColoring, budget: usize) -> Result<CanonicalForm, GradedError> {
    let v = c.vertices();
    if v > MAX_CANONICAL_VERTICES {
        return Err(GradedError::TooManyVertices(v));
    }
    let mut s = Search {
        c,
        best: None,
        ties: 0,
        leaves: 0,
        budget,
    };
    s.visit(refine(c, vec![0; v]))?;
    let (code, labeling) = s.best.unwrap_or((0, Vec::new()));
    let mut key = vec![v as u8];
    key.extend_from_slice(&code.to_be_bytes());
    Ok(CanonicalForm {
        key: CanonicalKey(key),
        labeling,
        automorphisms: s.ties,
    })
}

pub fn canonical_form(c: &EdgeColoring) -> Result<CanonicalForm, GradedError> {
    canonical_form_with_budget(c, DEFAULT_LEAF_BUDGET)
}

pub fn canonical_key(c: &EdgeColoring) -> Result<CanonicalKey, GradedError> {
    canonical_form(c).map(|f| f.key)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(v: usize) -> Vec<Vec<usize>> {
        if v == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(v - 1) {
            for pos in 0..v {
                let mut q = p.clone();
                q.insert(pos, v - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn relabeling_preserves_key() {
        let p = EdgeColoring::pentagon();
        let key = canonical_key(&p).unwrap();
        for perm in permutations(5) {
            assert_eq!(canonical_key(&p.permuted(&perm)).unwrap(), key);
        }
        // The pentagon is self-complementary.
        assert_eq!(canonical_key(&p.complement()).unwrap(), key);
        assert_eq!(canonical_form(&p).unwrap().automorphisms, 10);
    }

    #[test]
    fn k3_has_four_classes_by_brute_orbits() {
        let perms = permutations(3);
        let mut orbit_reps = std::collections::BTreeSet::new();
        let mut keys = std::collections::BTreeSet::new();
        for mask in 0u32..8 {
            let bits: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
            let c = EdgeColoring::from_bits(3, &bits).unwrap();
            let rep = perms.iter().map(|p| c.permuted(p).bits()).min().unwrap();
            orbit_reps.insert(rep);
            keys.insert(canonical_key(&c).unwrap());
        }
        assert_eq!(orbit_reps.len(), 4);
        assert_eq!(keys.len(), 4);
    }

    #[test]
    fn budget_is_enforced() {
        let empty = EdgeColoring::new(9).unwrap();
        assert!(matches!(
            canonical_form_with_budget(&empty, 1000),
            Err(GradedError::BudgetExceeded(1000))
        ));
        assert_eq!(canonical_form(&EdgeColoring::new(6).unwrap()).unwrap().automorphisms, 720);
    }
}
