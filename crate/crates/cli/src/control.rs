//! Loader for explicit control colorings stored as a pair of adjacency
//! matrices, one per color.
//!
//! Each file holds a square 0/1 matrix. Entries may be separated by commas,
//! whitespace or both, and a single leading header row (any row containing
//! a non-numeric token) is skipped.

use std::fs;
use std::path::{Path, PathBuf};

use ramsey_core::graded::{EdgeColoring, GradedError, MAX_VERTICES};

pub const DEFAULT_RED_FILE: &str = "am46_red.csv";
pub const DEFAULT_BLUE_FILE: &str = "am46_blue.csv";

#[derive(Debug, thiserror::Error)]
pub enum ControlError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: unexpected entry {token:?} (expected 0 or 1)")]
    Parse { path: PathBuf, line: usize, token: String },
    #[error("{path} holds no matrix rows")]
    Empty { path: PathBuf },
    #[error("{path} is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare { path: PathBuf, row: usize, found: usize, expected: usize },
    #[error("size mismatch: red matrix is {red}x{red}, blue matrix is {blue}x{blue}")]
    SizeMismatch { red: usize, blue: usize },
    #[error("{path} is not symmetric at ({i}, {j})")]
    Asymmetric { path: PathBuf, i: usize, j: usize },
    #[error("{path} has a nonzero diagonal entry at vertex {i}")]
    NonZeroDiagonal { path: PathBuf, i: usize },
    #[error("red and blue are not complementary at edge ({i}, {j})")]
    NotComplementary { i: usize, j: usize },
    #[error("{0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

type Adjacency = Vec<Vec<bool>>;

/// Parses one adjacency matrix from text; `path` is only used in errors.
pub fn parse_adjacency(text: &str, path: &Path) -> Result<Adjacency, ControlError> {
    let mut rows: Adjacency = Vec::new();
    let mut first = true;
    for (lineno, line) in text.lines().enumerate() {
        let tokens: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        if tokens.is_empty() {
            continue;
        }
        let is_header = tokens.iter().any(|t| t.parse::<i64>().is_err());
        if is_header && first {
            first = false;
            continue;
        }
        first = false;
        let row = tokens
            .iter()
            .map(|t| match *t {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(ControlError::Parse {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    token: other.to_string(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(ControlError::Empty { path: path.to_path_buf() });
    }
    if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(ControlError::NotSquare {
            path: path.to_path_buf(),
            row: row + 1,
            found: r.len(),
            expected: n,
        });
    }
    if let Some(i) = (0..n).find(|&i| rows[i][i]) {
        return Err(ControlError::NonZeroDiagonal { path: path.to_path_buf(), i });
    }
    for i in 0..n {
        if let Some(j) = (i + 1..n).find(|&j| rows[i][j] != rows[j][i]) {
            return Err(ControlError::Asymmetric { path: path.to_path_buf(), i, j });
        }
    }
    Ok(rows)
}

/// Combines a red and a blue adjacency matrix into a coloring, requiring
/// every off-diagonal pair to carry exactly one color.
pub fn coloring_from_pair(red: &Adjacency, blue: &Adjacency) -> Result<EdgeColoring, ControlError> {
    if red.len() != blue.len() {
        return Err(ControlError::SizeMismatch { red: red.len(), blue: blue.len() });
    }
    let n = red.len();
    if n > MAX_VERTICES {
        return Err(ControlError::TooLarge(n));
    }
    for i in 0..n {
        if let Some(j) = (i + 1..n).find(|&j| red[i][j] == blue[i][j]) {
            return Err(ControlError::NotComplementary { i, j });
        }
    }
    Ok(EdgeColoring::from_fn(n, |i, j| red[i][j])?)
}

fn read(path: &Path) -> Result<Adjacency, ControlError> {
    let text = fs::read_to_string(path).map_err(|source| ControlError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_adjacency(&text, path)
}

/// Reads `dir/red_name` and `dir/blue_name` into a coloring.
pub fn load_control_coloring(dir: &Path, red_name: &str, blue_name: &str) -> Result<EdgeColoring, ControlError> {
    let red = read(&dir.join(red_name))?;
    let blue = read(&dir.join(blue_name))?;
    coloring_from_pair(&red, &blue)
}
