use super::GradedError;

/// Classical two-color Ramsey numbers `(m, n, R(m, n))` that are known
/// exactly.
pub const KNOWN_RAMSEY: [(usize, usize, u64); 9] = [
    (3, 3, 6),
    (3, 4, 9),
    (3, 5, 14),
    (3, 6, 18),
    (3, 7, 23),
    (3, 8, 28),
    (3, 9, 36),
    (4, 4, 18),
    (4, 5, 25),
];

/// The graded recursion `R(m, n) = R(m-1, n) + R(m, n-1)` with unit
/// boundary `R(1, n) = R(m, 1) = 1`, filled bottom-up into a table.
pub fn graded_ramsey(m: usize, n: usize) -> Result<u128, GradedError> {
    if m < 1 || n < 1 {
        return Err(GradedError::InvalidConstraint { m, n });
    }
    let mut table = vec![vec![1u128; n + 1]; m + 1];
    for i in 2..=m {
        for j in 2..=n {
            table[i][j] = table[i - 1][j]
                .checked_add(table[i][j - 1])
                .ok_or(GradedError::Overflow)?;
        }
    }
    Ok(table[m][n])
}

/// `(C(n,2), C(n,2) + 16)`: one qubit per edge variable plus a fixed
/// ancilla allowance for the clique-check oracle.
pub fn qubit_cost(n: u64) -> Result<(u64, u64), GradedError> {
    if n < 2 {
        return Err(GradedError::InvalidVertexCount(n));
    }
    let edges = n * (n - 1) / 2;
    Ok((edges, edges + 16))
}
