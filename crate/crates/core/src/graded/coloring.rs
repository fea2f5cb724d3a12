use super::GradedError;

/// Largest vertex count representable; adjacency rows are `u64` masks.
pub const MAX_VERTICES: usize = 64;

/// Red clique size `m` and blue clique size `n` that a good coloring avoids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliqueConstraint {
    pub m: usize,
    pub n: usize,
}

impl CliqueConstraint {
    pub fn new(m: usize, n: usize) -> Result<Self, GradedError> {
        if m < 1 || n < 1 {
            return Err(GradedError::InvalidConstraint { m, n });
        }
        Ok(Self { m, n })
    }

    /// Swapping colors maps good `(m, n)` colorings onto good `(n, m)` ones,
    /// so the swap is a symmetry only on the diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.m == self.n
    }
}

/// Two-coloring of the edges of `K_v`. Red edges are stored as adjacency
/// masks; blue is the complement off the diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    v: usize,
    red: Vec<u64>,
}

/// Position of edge `{i, j}` (`i < j`, zero-based) in row-major
/// upper-triangle order.
pub fn edge_index(v: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < v);
    i * v - i * (i + 1) / 2 + (j - i - 1)
}

pub fn edge_count(v: usize) -> usize {
    v * v.saturating_sub(1) / 2
}

fn full_mask(v: usize) -> u64 {
    if v == 64 {
        u64::MAX
    } else {
        (1u64 << v) - 1
    }
}

impl EdgeColoring {
    /// All-blue coloring.
    pub fn new(v: usize) -> Result<Self, GradedError> {
        if v > MAX_VERTICES {
            return Err(GradedError::TooManyVertices(v));
        }
        Ok(Self { v, red: vec![0; v] })
    }

    /// Builds a coloring from one bit per edge in row-major upper-triangle
    /// order (`true` = red).
    pub fn from_bits(v: usize, bits: &[bool]) -> Result<Self, GradedError> {
        if bits.len() != edge_count(v) {
            return Err(GradedError::BitCount {
                expected: edge_count(v),
                found: bits.len(),
            });
        }
        let mut c = Self::new(v)?;
        let mut it = bits.iter();
        for i in 0..v {
            for j in i + 1..v {
                if *it.next().expect("length checked") {
                    c.set_red(i, j, true);
                }
            }
        }
        Ok(c)
    }

    /// From red adjacency rows given as bit masks.
    pub fn from_red_masks(v: usize, red: Vec<u64>) -> Result<Self, GradedError> {
        if v > MAX_VERTICES {
            return Err(GradedError::TooManyVertices(v));
        }
        if red.len() != v {
            return Err(GradedError::BitCount { expected: v, found: red.len() });
        }
        for i in 0..v {
            if red[i] >> i & 1 == 1 || red[i] & !full_mask(v) != 0 {
                return Err(GradedError::InvalidAdjacency);
            }
            for j in 0..v {
                if (red[i] >> j & 1) != (red[j] >> i & 1) {
                    return Err(GradedError::InvalidAdjacency);
                }
            }
        }
        Ok(Self { v, red })
    }

    /// Colors edge `{i, j}` by the predicate; `red(i, j)` is only called
    /// with `i < j`.
    pub fn from_fn(v: usize, mut red: impl FnMut(usize, usize) -> bool) -> Result<Self, GradedError> {
        let mut c = Self::new(v)?;
        for i in 0..v {
            for j in i + 1..v {
                if red(i, j) {
                    c.set_red(i, j, true);
                }
            }
        }
        Ok(c)
    }

    /// Cycle `0-1-2-3-4-0` red, chords blue.
    pub fn pentagon() -> Self {
        Self::from_fn(5, |i, j| j - i == 1 || j - i == 4).expect("five vertices")
    }

    pub fn vertices(&self) -> usize {
        self.v
    }

    pub fn is_red(&self, i: usize, j: usize) -> bool {
        self.red[i] >> j & 1 == 1
    }

    pub fn set_red(&mut self, i: usize, j: usize, red: bool) {
        assert!(i != j && i < self.v && j < self.v, "edge ({i}, {j}) out of range");
        if red {
            self.red[i] |= 1 << j;
            self.red[j] |= 1 << i;
        } else {
            self.red[i] &= !(1 << j);
            self.red[j] &= !(1 << i);
        }
    }

    pub fn red_mask(&self, i: usize) -> u64 {
        self.red[i]
    }

    pub fn blue_mask(&self, i: usize) -> u64 {
        !self.red[i] & full_mask(self.v) & !(1 << i)
    }

    pub fn red_masks(&self) -> &[u64] {
        &self.red
    }

    pub fn blue_masks(&self) -> Vec<u64> {
        (0..self.v).map(|i| self.blue_mask(i)).collect()
    }

    pub fn bits(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(edge_count(self.v));
        for i in 0..self.v {
            for j in i + 1..self.v {
                out.push(self.is_red(i, j));
            }
        }
        out
    }

    /// Swaps red and blue.
    pub fn complement(&self) -> Self {
        Self {
            v: self.v,
            red: self.blue_masks(),
        }
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.v);
        let mut c = Self::new(self.v).expect("same size");
        for i in 0..self.v {
            for j in i + 1..self.v {
                if self.is_red(i, j) {
                    c.set_red(perm[i], perm[j], true);
                }
            }
        }
        c
    }

    /// Adds vertex `v` whose red neighbors are the bits of `red_neighbors`.
    pub fn extended(&self, red_neighbors: u64) -> Result<Self, GradedError> {
        let mut red = self.red.clone();
        let v = self.v;
        if v + 1 > MAX_VERTICES {
            return Err(GradedError::TooManyVertices(v + 1));
        }
        let nbrs = red_neighbors & full_mask(v);
        for (i, row) in red.iter_mut().enumerate() {
            if nbrs >> i & 1 == 1 {
                *row |= 1 << v;
            }
        }
        red.push(nbrs);
        Ok(Self { v: v + 1, red })
    }
}

impl std::fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let bits: String = self.bits().iter().map(|&b| if b { '1' } else { '0' }).collect();
        write!(f, "EdgeColoring(v={}, {bits})", self.v)
    }
}

/// True iff `adj` restricted to `candidates` contains a clique of `size`.
pub fn has_clique(adj: &[u64], candidates: u64, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if (candidates.count_ones() as usize) < size {
        return false;
    }
    if size == 1 {
        return candidates != 0;
    }
    let mut rest = candidates;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique(adj, rest & adj[u], size - 1) {
            return true;
        }
    }
    false
}

/// True iff some `m` vertices span only red edges or some `n` vertices span
/// only blue edges.
pub fn has_forbidden_clique(coloring: &EdgeColoring, constraint: CliqueConstraint) -> bool {
    let all = full_mask(coloring.v);
    has_clique(&coloring.red, all, constraint.m) || has_clique(&coloring.blue_masks(), all, constraint.n)
}

/// Whether adding a vertex whose red neighborhood is `red_nbrs` (and blue
/// neighborhood the rest of the first `v` vertices) creates a forbidden
/// clique through the new vertex.
pub(crate) fn extension_is_bad(
    red: &[u64],
    blue: &[u64],
    v: usize,
    red_nbrs: u64,
    constraint: CliqueConstraint,
) -> bool {
    let blue_nbrs = !red_nbrs & full_mask(v);
    constraint.m <= 1
        || constraint.n <= 1
        || has_clique(red, red_nbrs, constraint.m - 1)
        || has_clique(blue, blue_nbrs, constraint.n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subset_oracle(c: &EdgeColoring, size: usize, red: bool) -> bool {
        let v = c.vertices();
        (0u64..1 << v).filter(|s| s.count_ones() as usize == size).any(|s| {
            let verts: Vec<usize> = (0..v).filter(|i| s >> i & 1 == 1).collect();
            verts
                .iter()
                .enumerate()
                .all(|(a, &i)| verts[a + 1..].iter().all(|&j| c.is_red(i, j) == red))
        })
    }

    #[test]
    fn edge_indexing_is_row_major() {
        let v = 5;
        let mut expected = 0;
        for i in 0..v {
            for j in i + 1..v {
                assert_eq!(edge_index(v, i, j), expected);
                expected += 1;
            }
        }
        assert_eq!(expected, edge_count(v));
    }

    #[test]
    fn bits_round_trip() {
        let bits: Vec<bool> = (0..21).map(|i| i % 3 == 0).collect();
        let c = EdgeColoring::from_bits(7, &bits).unwrap();
        assert_eq!(c.bits(), bits);
        assert!(EdgeColoring::from_bits(7, &bits[..20]).is_err());
    }

    #[test]
    fn triangle_and_pentagon() {
        let k3 = EdgeColoring::from_fn(3, |_, _| true).unwrap();
        let c33 = CliqueConstraint::new(3, 3).unwrap();
        assert!(has_forbidden_clique(&k3, c33));
        assert!(!has_forbidden_clique(&EdgeColoring::pentagon(), c33));
    }

    #[test]
    fn predicate_matches_subset_oracle() {
        let mut state = 0x1234_5678_9abc_def0u64;
        for v in 2..=8 {
            for _ in 0..40 {
                let bits: Vec<bool> = (0..edge_count(v))
                    .map(|_| {
                        state = super::super::super::diagnostics::mix64(state);
                        state & 1 == 1
                    })
                    .collect();
                let c = EdgeColoring::from_bits(v, &bits).unwrap();
                for m in 1..=4 {
                    for n in 1..=4 {
                        let expected = subset_oracle(&c, m, true) || subset_oracle(&c, n, false);
                        assert_eq!(has_forbidden_clique(&c, CliqueConstraint { m, n }), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_adjacency() {
        assert!(EdgeColoring::from_red_masks(3, vec![0b010, 0b000, 0]).is_err());
        assert!(EdgeColoring::from_red_masks(2, vec![0b01, 0]).is_err());
        assert!(EdgeColoring::from_red_masks(2, vec![0b10, 0b01]).is_ok());
        assert!(EdgeColoring::new(65).is_err());
    }
}
