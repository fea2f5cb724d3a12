//! Fixed-format CSV emission. Every float goes through one formatter per
//! column so identical inputs always give identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use ramsey_core::diagnostics::DiagnosticsRecord;

pub const RESULTS_HEADER: &str = "n,d,k,alpha,log10_tr_exp,tr_lin,min_re,max_im,slope,lambda_L,rho_H,critical";

/// Negative zero prints as `-0`, which would make equal tables differ.
fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

pub fn fixed(x: f64, digits: usize) -> String {
    format!("{:.*}", digits, clean(x))
}

pub fn sci(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits, clean(x))
}

/// Results table text: one row per `(n, α)` pair, `n` ascending then `α`.
pub fn format_results(records: &[DiagnosticsRecord]) -> String {
    let mut out = String::from(RESULTS_HEADER);
    out.push('\n');
    for r in records {
        for (alpha, log_t) in r.alphas.iter().zip(&r.log10_tr_exp) {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.d,
                r.k,
                fixed(*alpha, 3),
                fixed(*log_t, 6),
                sci(r.tr_lin, 6),
                sci(r.min_re_lambda, 6),
                sci(r.max_im_lambda, 6),
                fixed(r.slope, 6),
                fixed(r.lambda_l, 6),
                fixed(r.rho_h, 6),
                r.decision.as_str()
            )
            .expect("string write");
        }
    }
    out
}

pub fn write_results(records: &[DiagnosticsRecord], path: &Path) -> io::Result<()> {
    fs::write(path, format_results(records))
}

/// Generic CSV body from a header and already formatted rows.
pub fn format_table(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(fixed(-0.0, 2), "0.00");
        assert_eq!(sci(-0.0, 2), "0.00e0");
        assert_eq!(sci(0.0142, 3), "1.420e-2");
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(format_results(&[]), format!("{RESULTS_HEADER}\n"));
    }
}
