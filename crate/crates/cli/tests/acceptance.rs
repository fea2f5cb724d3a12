//! Acceptance suite. Runs as a plain binary (no libtest harness) so every
//! criterion prints one PASS/FAIL line, with its tolerance and timing, in
//! ordinary `cargo test` output. Exits nonzero if any criterion fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ramsey_cli::control::load_control_coloring;
use ramsey_cli::run_from;
use ramsey_core::cnf::{binomial, stream_cnf};
use ramsey_core::diagnostics::{
    build_accumulator, chernoff_miss, control_record, deflation_norm_mc, mean_field_trace, miss_probability,
    run_diagnostics, sample_directions, ConstraintRestricted, Decision, DiagnosticsConfig, MissProbabilityModel,
    DEFAULT_SEEDS,
};
use ramsey_core::graded::{
    brute_force_ramsey, count_good_colorings, exists_good_coloring, graded_ramsey, has_forbidden_clique, qubit_cost,
    CliqueConstraint, RamseyOutcome, SearchMethod, KNOWN_RAMSEY,
};
use ramsey_core::primes::{enumerate_ps, is_prime_sequence, persistence_scan, PSQuery, SelectionRule};
use ramsey_core::spectral::eig_hermitian;
use ramsey_qsim::suite::verification_suite;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    check: fn() -> Outcome,
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Rounds to two significant figures, as printed in a table.
fn two_sig(x: f64) -> String {
    format!("{x:.1e}")
}

fn c1_miss_bounds() -> Outcome {
    let a = miss_probability(&MissProbabilityModel::new(100, 1, 24).unwrap());
    let b = miss_probability(&MissProbabilityModel::new(400, 1, 24).unwrap());
    outcome(
        rel_err(a, 1.55e-2) <= 0.01 && rel_err(b, 5.7e-8) <= 0.02,
        format!("k=100: {a:.4e} (1% of 1.55e-2), k=400: {b:.4e} (2% of 5.7e-8)"),
    )
}

fn c2_chernoff_table() -> Outcome {
    let rows = [(1, 1.2e-1), (2, 4.0e-2), (4, 3.7e-3), (6, 3.4e-4), (8, 3.0e-5), (10, 2.7e-6), (12, 2.5e-7)];
    let mut bad = Vec::new();
    for (r, printed) in rows {
        let got = chernoff_miss(&MissProbabilityModel::new(100, r, 24).unwrap()).unwrap();
        if two_sig(got) != two_sig(printed) {
            bad.push(format!("r={r}: {} vs {}", two_sig(got), two_sig(printed)));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "7/7 rows at 2 s.f.".into() } else { bad.join("; ") })
}

fn c3_mean_field() -> Outcome {
    let a = 10f64.powf(mean_field_trace(32.0, 180.0, 40.0));
    let b = 10f64.powf(mean_field_trace(32.0, 220.0, 40.0));
    let c = mean_field_trace(24.0, 400.0, 40.0);
    let decade = (c - 2.4e-289f64.log10()).abs();
    outcome(
        format!("{a:.2e}") == "6.15e-97" && format!("{b:.2e}") == "1.19e-118" && decade <= 1.0,
        format!("{a:.2e}, {b:.2e} (3 s.f.); log10 at (24,400,40) = {c:.2}, {decade:.2} decades from 2.4e-289"),
    )
}

fn c4_deflation() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (i, (d, k)) in [(24usize, 100usize), (32, 180), (32, 220)].into_iter().enumerate() {
        let exact = (1.0 - 1.0 / d as f64).powi(k as i32);
        let mc = deflation_norm_mc(d, k, 20_000, 4242 + i as u64).unwrap();
        let z = (mc.mean - exact).abs() / mc.std_error;
        pass &= z <= 3.0;
        parts.push(format!("({d},{k}) {:.3e} vs {exact:.3e} z={z:.2}", mc.mean));
    }
    outcome(pass, format!("{} (3 sigma, 2e4 trials)", parts.join(", ")))
}

fn c5_concentration() -> Outcome {
    let (d, k) = (24usize, 400usize);
    let ratio = k as f64 / d as f64;
    let root = (d as f64 / k as f64).sqrt();
    let (lo, hi) = (ratio * (1.0 - root).powi(2), ratio * (1.0 + root).powi(2));
    let mut inside = 0;
    let mut worst_mean: f64 = 0.0;
    for &seed in &DEFAULT_SEEDS {
        let eig = eig_hermitian(&build_accumulator(&sample_directions(d, k, seed).unwrap())).unwrap();
        let mean = eig.values.iter().sum::<f64>() / d as f64;
        worst_mean = worst_mean.max((mean - ratio).abs());
        inside += eig.values.iter().filter(|&&x| x >= lo && x <= hi).count();
    }
    let frac = inside as f64 / (10 * d) as f64;
    outcome(
        worst_mean < 1e-9 && frac >= 0.95,
        format!("mean eigenvalue off by {worst_mean:.1e}; {:.1}% in [{lo:.3}, {hi:.3}] (need 95%)", 100.0 * frac),
    )
}

fn c6_small_ramsey() -> Outcome {
    let t = Instant::now();
    let r33 = brute_force_ramsey(CliqueConstraint::new(3, 3).unwrap(), 10);
    let t33 = t.elapsed();
    let r34 = brute_force_ramsey(CliqueConstraint::new(3, 4).unwrap(), 12);
    let method_at = |v: usize| r34.steps.iter().find(|s| s.0 == v).map(|s| s.1);
    let ok34 = matches!(r34.outcome, RamseyOutcome::Found { v: 9, method: SearchMethod::GluePrune })
        && method_at(8) == Some(SearchMethod::Enumeration);
    outcome(
        r33.value() == Some(6) && t33 < Duration::from_secs(1) && ok34,
        format!("R(3,3)={:?} in {:.0?}; R(3,4)={:?}, v=8 by {:?}, v=9 by {:?}", r33.value(), t33, r34.value(), method_at(8), method_at(9)),
    )
}

fn c7_graded() -> Outcome {
    let mut pass = true;
    for m in 1..=10usize {
        for n in 1..=10usize {
            pass &= graded_ramsey(m, n).unwrap() == binomial((m + n - 2) as u64, (m - 1) as u64) as u128;
        }
    }
    pass &= (1..=10).all(|n| graded_ramsey(1, n).unwrap() == 1);
    let dominated = KNOWN_RAMSEY.iter().filter(|&&(m, n, r)| r as u128 <= graded_ramsey(m, n).unwrap()).count();
    outcome(
        pass && dominated == 9,
        format!("closed form on 10x10 grid: {pass}; {dominated}/9 known values dominated (R(4,4)=18 <= {}, R(4,5)=25 <= {})", graded_ramsey(4, 4).unwrap(), graded_ramsey(4, 5).unwrap()),
    )
}

fn c8_primes() -> Outcome {
    let ps = |q, k| is_prime_sequence(q, &PSQuery::new(k)).unwrap();
    let defs = ps(45, 5) && !ps(46, 8) && ps(46, 9) && (1..=40).all(|k| !ps(112, k));
    let row = |k| enumerate_ps(43, 46, &PSQuery::new(k)).unwrap();
    let e5 = (3..=4).all(|k| row(k) == [45]) && (5..=8).all(|k| row(k) == [44, 45]) && row(9) == [44, 45, 46];
    let rule = SelectionRule::default();
    let six = persistence_scan(6, 102, 160, &PSQuery::new(1), &rule).unwrap().value;
    let seven = persistence_scan(7, 205, 492, &PSQuery::new(1), &rule).unwrap().value;
    outcome(
        defs && e5 && six == 115 && seven == 209,
        format!("definition examples: {defs}; e5 rows: {e5}; persistence R(6,6) -> {six}, R(7,7) -> {seven}"),
    )
}

/// Parses DIMACS text into (header vars, header clauses, clauses as
/// positive/negative bit masks).
fn parse_dimacs(text: &str) -> (usize, usize, Vec<(u128, u128)>) {
    let mut lines = text.lines();
    let header: Vec<usize> = lines.next().unwrap().split_whitespace().skip(2).map(|t| t.parse().unwrap()).collect();
    let clauses = lines
        .map(|l| {
            let mut pos = 0u128;
            let mut neg = 0u128;
            for lit in l.split_whitespace().map(|t| t.parse::<i64>().unwrap()) {
                match lit {
                    0 => {}
                    x if x > 0 => pos |= 1 << (x - 1),
                    x => neg |= 1 << (-x - 1),
                }
            }
            (pos, neg)
        })
        .collect();
    (header[0], header[1], clauses)
}

fn c9_cnf() -> Outcome {
    let mut checked = 0;
    let mut problems = Vec::new();
    for (m, n) in [(3usize, 3usize), (3, 4)] {
        for big_n in m.max(n)..=7 {
            let mut buf = Vec::new();
            stream_cnf(big_n, m, n, &mut buf).unwrap();
            let (vars, count, clauses) = parse_dimacs(std::str::from_utf8(&buf).unwrap());
            let expected_clauses = binomial(big_n as u64, m as u64) + binomial(big_n as u64, n as u64);
            if vars != binomial(big_n as u64, 2) as usize || count != clauses.len() || count as u64 != expected_clauses {
                problems.push(format!("header mismatch at N={big_n}"));
            }
            let models = (0u32..1 << vars)
                .filter(|&x| clauses.iter().all(|&(p, q)| x as u128 & p != 0 || !(x as u128) & q != 0))
                .count() as u64;
            let constraint = CliqueConstraint::new(m, n).unwrap();
            let exists = exists_good_coloring(constraint, big_n).unwrap();
            let labeled = count_good_colorings(constraint, big_n).unwrap();
            if (models > 0) != exists || models != labeled {
                problems.push(format!("({m},{n}) N={big_n}: {models} models, exists={exists}, labeled={labeled}"));
            }
            checked += 1;
        }
    }
    let mut buf = Vec::new();
    let big = stream_cnf(12, 5, 5, &mut buf).unwrap();
    let (v, c, clauses) = parse_dimacs(std::str::from_utf8(&buf).unwrap());
    let big_ok = (v, c, clauses.len()) == (66, 1584, 1584) && (big.var_count, big.clause_count) == (66, 1584);
    outcome(
        problems.is_empty() && big_ok,
        if problems.is_empty() {
            format!("{checked} instances: model counts equal labeled good colorings; N=12 (5,5): {v} vars, {} clauses", clauses.len())
        } else {
            problems.join("; ")
        },
    )
}

fn c10_qubit_cost() -> Outcome {
    let totals: Vec<u64> = [44, 45, 46].iter().map(|&n| qubit_cost(n).unwrap().1).collect();
    outcome(totals == [962, 1006, 1051], format!("{totals:?}"))
}

fn c11_quantum_bridge() -> Outcome {
    let checks = verification_suite(2024, 10_000).unwrap();
    let pass = checks.iter().all(|c| c.pass);
    let summary: Vec<String> = checks
        .iter()
        .map(|c| format!("{}={:.3e}/{:.3e}(tol {:.1e})", c.name, c.measured, c.reference, c.tolerance))
        .collect();
    outcome(pass, summary.join(", "))
}

fn c12_decision_rule() -> Outcome {
    let config = DiagnosticsConfig::default();
    let run = run_diagnostics(&config, &[43, 44, 45, 46], &ConstraintRestricted::planted(43, &[3, 2, 0, 1])).unwrap();
    let decisions: Vec<Decision> = run.records.iter().map(|r| r.decision).collect();
    let planted_ok = run.failures.is_empty()
        && decisions == [Decision::NonCritical, Decision::NonCritical, Decision::Critical, Decision::NonCritical];

    let control = load_control_coloring(&fixtures().join("paley37"), "paley37_red.csv", "paley37_blue.csv").unwrap();
    let five = CliqueConstraint::new(5, 5).unwrap();
    let good = !has_forbidden_clique(&control, five);
    let mut control_fires = 0;
    let mut runs = 0;
    for seeds in std::iter::once(DEFAULT_SEEDS.to_vec()).chain(DEFAULT_SEEDS.iter().map(|&s| vec![s])) {
        let cfg = DiagnosticsConfig { seeds, ..DiagnosticsConfig::default() };
        if control_record(&cfg, &control, five, 1).unwrap().critical() {
            control_fires += 1;
        }
        runs += 1;
    }
    outcome(
        planted_ok && good && control_fires == 0,
        format!("planted (3,2,0,1) -> {decisions:?}; Paley(37) control good={good}, fired {control_fires}/{runs} runs"),
    )
}

fn c13_determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let control = fixtures().join("paley37");
    let mut artifacts = Vec::new();
    for run in ["a", "b"] {
        let dir = tmp.path().join(run);
        let mut sink = Vec::new();
        run_from(
            [
                "ramsey-toolkit", "diag", "--embedding", "constraint-restricted", "--ranks", "3,2,0,1", "--out_dir",
                dir.to_str().unwrap(), "--control_dir", control.to_str().unwrap(), "--control_red", "paley37_red.csv",
                "--control_blue", "paley37_blue.csv",
            ],
            &mut sink,
        )
        .unwrap();
        let cnf = dir.join("r55_N12.cnf");
        run_from(["ramsey-toolkit", "cnf", "-N", "12", "-m", "5", "-n", "5", "-o", cnf.to_str().unwrap(), "--map"], &mut sink)
            .unwrap();
        let read = |name: &str| fs::read(dir.join(name)).unwrap();
        artifacts.push([read("results_table_I.csv"), read("results_table_III.csv"), read("r55_N12.cnf"), read("r55_N12.cnf.map")]);
    }
    let same = artifacts[0] == artifacts[1];
    let sizes: Vec<usize> = artifacts[0].iter().map(Vec::len).collect();
    outcome(same, format!("4 artifacts byte-identical across runs: {same} (sizes {sizes:?})"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "miss-bound formulas", budget: Duration::from_millis(1), check: c1_miss_bounds },
        Criterion { id: 2, name: "chernoff table", budget: Duration::from_millis(1), check: c2_chernoff_table },
        Criterion { id: 3, name: "mean-field traces", budget: Duration::from_millis(1), check: c3_mean_field },
        Criterion { id: 4, name: "deflation law", budget: Duration::from_secs(10), check: c4_deflation },
        Criterion { id: 5, name: "accumulator concentration", budget: Duration::from_secs(5), check: c5_concentration },
        Criterion { id: 6, name: "exact small ramsey", budget: Duration::from_secs(600), check: c6_small_ramsey },
        Criterion { id: 7, name: "graded recursion", budget: Duration::from_millis(1), check: c7_graded },
        Criterion { id: 8, name: "prime-sequence fixtures", budget: Duration::from_millis(100), check: c8_primes },
        Criterion { id: 9, name: "cnf semantics", budget: Duration::from_secs(120), check: c9_cnf },
        Criterion { id: 10, name: "qubit-cost table", budget: Duration::from_millis(1), check: c10_qubit_cost },
        Criterion { id: 11, name: "quantum-classical bridge", budget: Duration::from_secs(60), check: c11_quantum_bridge },
        Criterion { id: 12, name: "decision-rule soundness", budget: Duration::from_secs(30), check: c12_decision_rule },
        Criterion { id: 13, name: "determinism", budget: Duration::from_secs(120), check: c13_determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let o = (c.check)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let pass = o.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {:>2} {:<26} {:>10.3?} (budget {:?}{}) {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed,
            c.budget,
            if in_time { "" } else { ", exceeded" },
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
