use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use ramsey_core::cnf::{stream_cnf, write_map};
use ramsey_core::diagnostics::{
    control_record, run_diagnostics, ConstraintRestricted, DiagnosticsConfig, Embedding, SeedSchedule, Thresholds,
    DEFAULT_ALPHA_GRID, DEFAULT_SEEDS,
};
use ramsey_core::graded::{glue_frontier, qubit_cost, CliqueConstraint, EdgeColoring};
use ramsey_core::primes::{persistence_scan, PSQuery, SelectionRule, DEFAULT_WINDOWS};
use ramsey_qsim::suite::verification_suite;

use crate::control::load_control_coloring;
use crate::report::{fixed, format_table, sci, write_results};
use crate::{Cli, CnfArgs, Command, DiagArgs, EmbeddingKind, EstimateArgs, GlueArgs, PrimeArgs, QsimArgs, RuleKind};

pub const DIAG_TABLE: &str = "results_table_I.csv";
pub const CONTROL_TABLE: &str = "results_table_III.csv";

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Diag(a) => diag(a, out),
        Command::Cnf(a) => cnf(a, out),
        Command::Glue(a) => glue(a, out),
        Command::Prime(a) => prime(a, out),
        Command::Qsim(a) => qsim(a, out),
        Command::Estimate(a) => estimate(a, out),
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn diag_config(a: &DiagArgs) -> Result<DiagnosticsConfig> {
    let mut alpha_grid = if a.alpha.is_empty() { DEFAULT_ALPHA_GRID.to_vec() } else { a.alpha.clone() };
    alpha_grid.sort_by(f64::total_cmp);
    alpha_grid.dedup();
    let config = DiagnosticsConfig {
        d: a.d,
        k: a.k,
        alpha_grid,
        seeds: if a.seed.is_empty() { DEFAULT_SEEDS.to_vec() } else { a.seed.clone() },
        thresholds: Thresholds {
            log10_tau_exp: a.tau_exp,
            tau_lin: a.tau_lin,
        },
    };
    config.validate()?;
    Ok(config)
}

fn diag(a: DiagArgs, out: &mut dyn Write) -> Result<()> {
    let config = diag_config(&a)?;
    let mut ns = a.n_values.clone();
    ns.sort_unstable();
    ns.dedup();
    ensure!(ns.len() == a.n_values.len(), "--n_values must not repeat");
    let embedding: Box<dyn Embedding> = match a.embedding {
        EmbeddingKind::SeedSchedule => {
            ensure!(a.ranks.is_empty(), "--ranks only applies to --embedding constraint-restricted");
            Box::new(SeedSchedule)
        }
        EmbeddingKind::ConstraintRestricted => {
            ensure!(
                a.ranks.len() == a.n_values.len(),
                "--ranks needs one value per n (got {} ranks for {} n values)",
                a.ranks.len(),
                a.n_values.len()
            );
            Box::new(ConstraintRestricted::new(a.n_values.iter().copied().zip(a.ranks.iter().copied())))
        }
    };
    // Read and validate the control before any computation or output.
    let control = match &a.control_dir {
        Some(dir) => {
            let coloring = load_control_coloring(dir, &a.control_red, &a.control_blue)
                .with_context(|| format!("loading control coloring from {}", dir.display()))?;
            Some((coloring, CliqueConstraint::new(a.control_m, a.control_n)?))
        }
        None => None,
    };

    let run = run_diagnostics(&config, &ns, embedding.as_ref())?;
    let path = write_file(&a.out_dir, DIAG_TABLE, &crate::report::format_results(&run.records))?;
    writeln!(out, "wrote {}", path.display())?;
    for r in &run.records {
        writeln!(
            out,
            "n={} log10_tr_exp(alpha={})={} tr_lin={} critical={}",
            r.n,
            fixed(config.decision_alpha(), 3),
            fixed(r.decision_log10_tr_exp(), 4),
            sci(r.tr_lin, 4),
            r.decision.as_str()
        )?;
    }
    if let Some((coloring, constraint)) = control {
        let record = control_record(&config, &coloring, constraint, a.control_rank)?;
        fs::create_dir_all(&a.out_dir)?;
        let path = a.out_dir.join(CONTROL_TABLE);
        write_results(std::slice::from_ref(&record), &path).with_context(|| format!("writing {}", path.display()))?;
        writeln!(out, "wrote {} (control on {} vertices, critical={})", path.display(), record.n, record.decision.as_str())?;
    }
    if !run.failures.is_empty() {
        let list: Vec<String> = run.failures.iter().map(|(n, e)| format!("n={n}: {e}")).collect();
        bail!("diagnostics failed for {}", list.join("; "));
    }
    Ok(())
}

fn cnf(a: CnfArgs, out: &mut dyn Write) -> Result<()> {
    let file = File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let mut sink = BufWriter::new(file);
    let inst = stream_cnf(a.big_n, a.m, a.n, &mut sink)?;
    sink.flush()?;
    writeln!(
        out,
        "wrote {}: {} variables, {} clauses",
        a.out.display(),
        inst.var_count,
        inst.clause_count
    )?;
    if a.map {
        let mut name = a.out.clone().into_os_string();
        name.push(".map");
        let map_path = PathBuf::from(name);
        let mut sink = BufWriter::new(File::create(&map_path).with_context(|| format!("creating {}", map_path.display()))?);
        write_map(a.big_n, &mut sink)?;
        sink.flush()?;
        writeln!(out, "wrote {}", map_path.display())?;
    }
    Ok(())
}

/// Frontier sizes `(v, classes)` for `v = 1..=vmax`, stopping after the
/// first empty frontier.
pub fn glue_sizes(constraint: CliqueConstraint, vmax: usize, budget: usize) -> Result<Vec<(usize, usize)>> {
    ensure!(vmax >= 1, "--vmax must be at least 1");
    let mut frontier = vec![EdgeColoring::new(1)?];
    let mut sizes = vec![(1, 1)];
    for v in 2..=vmax {
        frontier = glue_frontier(&frontier, constraint, budget)?;
        sizes.push((v, frontier.len()));
        if frontier.is_empty() {
            break;
        }
    }
    Ok(sizes)
}

fn glue(a: GlueArgs, out: &mut dyn Write) -> Result<()> {
    let constraint = CliqueConstraint::new(a.m, a.n)?;
    let sizes = glue_sizes(constraint, a.vmax, a.budget)?;
    let rows: Vec<Vec<String>> = sizes.iter().map(|(v, c)| vec![v.to_string(), c.to_string()]).collect();
    let table = format_table("v,good_classes", &rows);
    out.write_all(table.as_bytes())?;
    if let Some((v, 0)) = sizes.last() {
        writeln!(out, "no good coloring of K_{v}: R({},{}) = {v}", a.m, a.n)?;
    }
    if let Some(dir) = &a.out_dir {
        write_file(dir, &format!("glue_m{}_n{}.csv", a.m, a.n), &table)?;
    }
    Ok(())
}

fn parse_window(s: &str) -> Result<(usize, u64, u64)> {
    let parts: Vec<&str> = s.split(':').collect();
    ensure!(parts.len() == 3, "window {s:?} must look like n:lo:hi");
    Ok((
        parts[0].parse().context("window n")?,
        parts[1].parse().context("window lo")?,
        parts[2].parse().context("window hi")?,
    ))
}

fn prime(a: PrimeArgs, out: &mut dyn Write) -> Result<()> {
    let windows = if a.window.is_empty() {
        DEFAULT_WINDOWS.to_vec()
    } else {
        a.window.iter().map(|w| parse_window(w)).collect::<Result<_>>()?
    };
    let rule = match a.rule {
        RuleKind::ExponentFirst => SelectionRule::exponent_first(),
        RuleKind::DistinctFirst => SelectionRule::distinct_first(),
    };
    let template = PSQuery {
        k: 1,
        max_distinct: a.max_distinct,
        max_exponent: a.max_exponent,
    };
    let mut rows = Vec::new();
    for (n, lo, hi) in windows {
        let scan = persistence_scan(n, lo, hi, &template, &rule)?;
        for (k, sel) in &scan.selections {
            rows.push(vec![
                n.to_string(),
                lo.to_string(),
                hi.to_string(),
                k.to_string(),
                sel.map_or_else(|| "none".to_string(), |v| v.to_string()),
            ]);
        }
        writeln!(
            out,
            "n={n} window=[{lo},{hi}] persistent={} plateau=k{}..k{} at_cutoff={}",
            scan.value, scan.plateau.0, scan.plateau.1, scan.value_at_cutoff
        )?;
    }
    if let Some(dir) = &a.out_dir {
        let path = write_file(dir, "prime_scan.csv", &format_table("n,lo,hi,k,selection", &rows))?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(())
}

fn qsim(a: QsimArgs, out: &mut dyn Write) -> Result<()> {
    ensure!(a.probes >= 2, "--probes must be at least 2 to report a standard error");
    let checks = verification_suite(a.seed, a.probes)?;
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![
                c.name.to_string(),
                sci(c.measured, 9),
                sci(c.reference, 9),
                sci(c.tolerance, 3),
                c.pass.to_string(),
            ]
        })
        .collect();
    let table = format_table("check,measured,reference,tolerance,pass", &rows);
    out.write_all(table.as_bytes())?;
    if let Some(dir) = &a.out_dir {
        write_file(dir, "qsim_checks.csv", &table)?;
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    ensure!(failed.is_empty(), "simulator checks failed: {}", failed.join(", "));
    Ok(())
}

fn estimate(a: EstimateArgs, out: &mut dyn Write) -> Result<()> {
    let rows = a
        .n_values
        .iter()
        .map(|&n| {
            let (edges, total) = qubit_cost(n)?;
            Ok(vec![n.to_string(), edges.to_string(), total.to_string()])
        })
        .collect::<Result<Vec<_>>>()?;
    let table = format_table("n,edge_qubits,total_qubits", &rows);
    out.write_all(table.as_bytes())?;
    if let Some(dir) = &a.out_dir {
        write_file(dir, "qubit_cost.csv", &table)?;
    }
    Ok(())
}
