//! Numerical toolkit for random-projector diagnostics of diagonal Ramsey
//! thresholds.
//!
//! The crate is organised by subsystem:
//!
//! * [`spectral`]: dense complex linear algebra at small dimension
//!   (matrix exponential, general and Hermitian eigenvalues, dilation).
//! * [`diagnostics`]: direction sampling, the accumulator, the linear and
//!   exponential witnesses, miss-probability bounds and the decision rule.
//! * [`graded`]: exact combinatorial oracles (clique predicates, glue-and-prune
//!   enumeration with canonical labeling, the Klein-graded recursion).
//! * [`primes`]: prime-sequence membership, enumeration and persistence scans.
//! * [`cnf`]: streaming DIMACS generation for clique-avoiding colorings.

pub mod cnf;
pub mod diagnostics;
pub mod graded;
pub mod primes;
pub mod spectral;

pub use num_complex::Complex64;
