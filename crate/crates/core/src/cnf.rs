//! DIMACS CNF for "K_N has a two-coloring with no red K_m and no blue K_n".
//!
//! Variable `x_{ij}` is true when edge `{i, j}` is red. Every `m`-subset
//! contributes one clause of negated literals (not all red) and every
//! `n`-subset one clause of positive literals (not all blue). Clauses are
//! written as they are generated, so memory use does not grow with the
//! clause count.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::graded::{self, CliqueConstraint, GradedError};

#[derive(Debug, thiserror::Error)]
pub enum CnfError {
    #[error("need N >= max(m, n) >= 2, got N = {big_n}, m = {m}, n = {n}")]
    InvalidParams { big_n: usize, m: usize, n: usize },
    #[error("edge ({i}, {j}) invalid for N = {big_n}")]
    InvalidEdge { i: usize, j: usize, big_n: usize },
    #[error("variable {var} out of range for N = {big_n}")]
    InvalidVariable { var: usize, big_n: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// Header summary of an emitted instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub vertices: usize,
    pub m: usize,
    pub n: usize,
    pub var_count: u64,
    pub clause_count: u64,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl CnfInstance {
    pub fn new(vertices: usize, m: usize, n: usize) -> Result<Self, CnfError> {
        if m < 2 || n < 2 || vertices < m.max(n) {
            return Err(CnfError::InvalidParams { big_n: vertices, m, n });
        }
        let nv = vertices as u64;
        Ok(Self {
            vertices,
            m,
            n,
            var_count: binomial(nv, 2),
            clause_count: binomial(nv, m as u64) + binomial(nv, n as u64),
        })
    }

    pub fn header(&self) -> String {
        format!("p cnf {} {}\n", self.var_count, self.clause_count)
    }
}

/// 1-based variable of edge `{i, j}` with `1 ≤ i < j ≤ N`, numbered in
/// row-major upper-triangle order.
pub fn edge_var(i: usize, j: usize, big_n: usize) -> Result<usize, CnfError> {
    if !(1 <= i && i < j && j <= big_n) {
        return Err(CnfError::InvalidEdge { i, j, big_n });
    }
    Ok(graded::edge_index(big_n, i - 1, j - 1) + 1)
}

/// Inverse of [`edge_var`].
pub fn var_edge(var: usize, big_n: usize) -> Result<(usize, usize), CnfError> {
    let total = big_n * big_n.saturating_sub(1) / 2;
    if var < 1 || var > total {
        return Err(CnfError::InvalidVariable { var, big_n });
    }
    let mut rest = var - 1;
    for i in 0..big_n {
        let row = big_n - i - 1;
        if rest < row {
            return Ok((i + 1, i + 2 + rest));
        }
        rest -= row;
    }
    unreachable!("index within range")
}

/// Calls `f` on every `size`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(&[usize]) -> io::Result<()>) -> io::Result<()> {
    if size > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx)?;
        let Some(pos) = (0..size).rev().find(|&p| idx[p] != p + n - size) else {
            return Ok(());
        };
        idx[pos] += 1;
        for q in pos + 1..size {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

fn emit_clauses<W: Write>(sink: &mut W, big_n: usize, size: usize, negate: bool, line: &mut String) -> io::Result<u64> {
    let mut count = 0;
    for_each_subset(big_n, size, |s| {
        line.clear();
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                let var = graded::edge_index(big_n, s[a], s[b]) + 1;
                if negate {
                    line.push('-');
                }
                write!(line, "{var} ").expect("string write");
            }
        }
        line.push_str("0\n");
        count += 1;
        sink.write_all(line.as_bytes())
    })?;
    Ok(count)
}

/// Writes the header and all clauses to `sink`.
pub fn stream_cnf<W: Write>(big_n: usize, m: usize, n: usize, sink: &mut W) -> Result<CnfInstance, CnfError> {
    let inst = CnfInstance::new(big_n, m, n)?;
    sink.write_all(inst.header().as_bytes())?;
    let mut line = String::new();
    let red = emit_clauses(sink, big_n, m, true, &mut line)?;
    let blue = emit_clauses(sink, big_n, n, false, &mut line)?;
    debug_assert_eq!(red + blue, inst.clause_count);
    Ok(inst)
}

/// Variable map sidecar: one `var i j` line per variable.
pub fn write_map<W: Write>(big_n: usize, sink: &mut W) -> Result<(), CnfError> {
    for i in 1..=big_n {
        for j in i + 1..=big_n {
            writeln!(sink, "{} {i} {j}", edge_var(i, j, big_n)?)?;
        }
    }
    Ok(())
}

/// Satisfiability of the instance for small `N`. Unlike [`stream_cnf`],
/// `N` below the clique sizes is accepted (the instance is then empty).
///
/// When `C(N,2) ≤ 28` this is an exhaustive search over assignments in
/// variable order. Each clause is tested at the moment its last variable is
/// fixed, and a branch is abandoned as soon as one clause fails, so every
/// assignment is accounted for without visiting the pruned ones. Larger
/// instances fall back to glue-and-prune over isomorphism classes.
pub fn check_small(big_n: usize, m: usize, n: usize) -> Result<bool, CnfError> {
    if m < 2 || n < 2 || big_n < 1 {
        return Err(CnfError::InvalidParams { big_n, m, n });
    }
    if binomial(big_n as u64, 2) > graded::ENUMERATION_EDGE_LIMIT as u64 {
        let constraint = CliqueConstraint::new(m, n)?;
        return Ok(!graded::good_classes(constraint, big_n)?.is_empty());
    }
    // Variables in order; edge (a, b) with a < b closes every subset whose
    // two largest vertices are a and b.
    let edges: Vec<(usize, usize)> = (0..big_n).flat_map(|a| (a + 1..big_n).map(move |b| (a, b))).collect();
    let mut assignment = vec![false; edges.len()];

    fn subset_ok(assign: &[bool], big_n: usize, top: (usize, usize), size: usize, colour: bool) -> bool {
        // All (size-2)-subsets of 0..top.0 together with top.0, top.1.
        let mut ok = true;
        let _ = for_each_subset(top.0, size - 2, |rest| {
            let mut verts = rest.to_vec();
            verts.push(top.0);
            verts.push(top.1);
            let mono = (0..verts.len())
                .all(|x| (x + 1..verts.len()).all(|y| assign[graded::edge_index(big_n, verts[x], verts[y])] == colour));
            if mono {
                ok = false;
                return Err(io::Error::other("stop"));
            }
            Ok(())
        });
        ok
    }

    fn go(pos: usize, edges: &[(usize, usize)], assign: &mut Vec<bool>, big_n: usize, m: usize, n: usize) -> bool {
        if pos == edges.len() {
            return true;
        }
        for value in [false, true] {
            assign[pos] = value;
            let top = edges[pos];
            let red_ok = top.0 + 2 < m || subset_ok(assign, big_n, top, m, true);
            let blue_ok = top.0 + 2 < n || subset_ok(assign, big_n, top, n, false);
            if red_ok && blue_ok && go(pos + 1, edges, assign, big_n, m, n) {
                return true;
            }
        }
        false
    }
    Ok(go(0, &edges, &mut assignment, big_n, m, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_numbering() {
        assert_eq!(edge_var(1, 2, 12).unwrap(), 1);
        assert_eq!(edge_var(11, 12, 12).unwrap(), 66);
        for var in 1..=66 {
            let (i, j) = var_edge(var, 12).unwrap();
            assert_eq!(edge_var(i, j, 12).unwrap(), var);
        }
        assert!(edge_var(2, 2, 5).is_err());
        assert!(edge_var(0, 2, 5).is_err());
        assert!(var_edge(11, 5).is_err());
    }

    #[test]
    fn counts() {
        let small = CnfInstance::new(5, 3, 3).unwrap();
        assert_eq!((small.var_count, small.clause_count), (10, 20));
        let r55 = CnfInstance::new(12, 5, 5).unwrap();
        assert_eq!((r55.var_count, r55.clause_count), (66, 1584));
        assert!(CnfInstance::new(4, 5, 3).is_err());
        assert!(CnfInstance::new(4, 1, 3).is_err());
    }

    #[test]
    fn tiny_stream_bytes() {
        let mut out = Vec::new();
        stream_cnf(3, 2, 3, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text, "p cnf 3 4\n-1 0\n-2 0\n-3 0\n1 2 3 0\n");
    }

    #[test]
    fn subsets_in_lexicographic_order() {
        let mut seen = Vec::new();
        for_each_subset(5, 3, |s| {
            seen.push(s.to_vec());
            Ok(())
        })
        .unwrap();
        assert_eq!(seen.len(), 10);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_satisfiability() {
        assert!(check_small(5, 3, 3).unwrap());
        assert!(!check_small(6, 3, 3).unwrap());
        assert!(check_small(3, 3, 3).unwrap());
        assert!(check_small(2, 3, 4).unwrap());
        assert!(check_small(2, 5, 5).unwrap());
        assert!(check_small(8, 3, 4).unwrap());
        assert!(!check_small(9, 3, 4).unwrap());
    }
}
