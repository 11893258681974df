//! Command-line interface: counting, series, constituents, geometry
//! inspection, oracle verification, export, and period reports for the six
//! built-in square-counting problems.
//!
//! All numeric output is exact; rationals print as `num/den`.  Machine
//! formats (json, csv, bfile) are byte-deterministic for fixed inputs.

use clap::{Args, Parser, Subcommand, ValueEnum};
use insideout::ehrhart::geometry_json;
use insideout::oracle::{bfile, csv, verification_table, Oracle};
use insideout::rational::{format_rat, Rat};
use insideout::squares::{
    count_gf, instance, instance_denominator, oeis_id, period_report, principal_constant,
    quasipolynomial, CountMode, ProblemId,
};
use num_bigint::BigInt;
use num_traits::Zero;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "insideout",
    about = "Exact lattice-point counts for 3x3 magic, semimagic, and magilatin squares",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Bfile,
}

#[derive(Args)]
struct Common {
    /// Problem key: magic-cubic, magic-affine, semimagic-cubic,
    /// semimagic-affine, magilatin-cubic, magilatin-affine
    #[arg(long)]
    problem: ProblemId,
    /// Count mode: all, sym, reduced, reduced-sym
    #[arg(long, default_value = "all")]
    mode: CountMode,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// N(t) for a single t
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: u64,
    },
    /// First coefficients of the counting series, t = 1..=terms
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        terms: u64,
    },
    /// Period, degree, and all constituents of the counting quasipolynomial
    Quasipoly {
        #[command(flatten)]
        common: Common,
    },
    /// Vertices, denominator, and intersection posets of the geometry
    Geometry {
        #[command(flatten)]
        common: Common,
    },
    /// Compare series coefficients against brute-force enumeration;
    /// exits nonzero on any mismatch
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, name = "t-max")]
        t_max: u64,
        /// Enumeration budget (largest t the oracle accepts)
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads for the oracle side
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Optional key=value config file supplying budget defaults
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Machine-readable dump of a generating function, quasipolynomial,
    /// geometry, or count table
    Export {
        #[command(flatten)]
        common: Common,
        /// What to export
        #[arg(long, value_enum, default_value = "gf")]
        what: ExportKind,
        /// Table length for --what table
        #[arg(long, name = "t-max", default_value_t = 40)]
        t_max: u64,
    },
    /// Per-coefficient period comparison of strong and weak counts
    PeriodReport {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Gf,
    Quasipoly,
    Geometry,
    Table,
}

fn emit(common: &Common, text: String) -> std::io::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())
        }
    }
}

fn format_poly(coeffs: &[Rat]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let var = match k {
            0 => String::new(),
            1 => " t".to_string(),
            _ => format!(" t^{k}"),
        };
        parts.push(format!("{}{}", format_rat(c), var));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Count { common, t } => {
            let gf = count_gf(common.problem, common.mode).map_err(|e| e.to_string())?;
            let value = gf.coefficient(t);
            let text = match common.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({
                        "problem": common.problem.key(),
                        "mode": common.mode.key(),
                        "t": t,
                        "value": value.to_string(),
                    })
                ),
                _ => format!("{value}\n"),
            };
            emit(&common, text).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Series { common, terms } => {
            let gf = count_gf(common.problem, common.mode).map_err(|e| e.to_string())?;
            let coeffs = gf.coefficients(terms);
            let rows: Vec<(u64, BigInt)> = (1..=terms)
                .map(|t| (t, coeffs[t as usize].clone()))
                .collect();
            let text = match common.format {
                Format::Text | Format::Bfile => bfile(&rows),
                Format::Csv => csv(
                    "t,value",
                    &rows
                        .iter()
                        .map(|(t, v)| vec![t.to_string(), v.to_string()])
                        .collect::<Vec<_>>(),
                ),
                Format::Json => {
                    let seq = oeis_id(common.problem, common.mode);
                    format!(
                        "{}\n",
                        serde_json::json!({
                            "problem": common.problem.key(),
                            "mode": common.mode.key(),
                            "oeis": seq,
                            "values": rows
                                .iter()
                                .map(|(t, v)| serde_json::json!([t, v.to_string()]))
                                .collect::<Vec<_>>(),
                        })
                    )
                }
            };
            emit(&common, text).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Quasipoly { common } => {
            let q = quasipolynomial(common.problem, common.mode).map_err(|e| e.to_string())?;
            let text = match common.format {
                Format::Json => {
                    let mut v = q.to_json();
                    let obj = v.as_object_mut().unwrap();
                    obj.insert(
                        "problem".into(),
                        serde_json::json!(common.problem.key()),
                    );
                    obj.insert("mode".into(), serde_json::json!(common.mode.key()));
                    if common.mode == CountMode::All {
                        let pc = principal_constant(common.problem)
                            .map_err(|e| e.to_string())?;
                        obj.insert(
                            "principal_constant".into(),
                            serde_json::json!(pc.to_string()),
                        );
                    }
                    format!("{v}\n")
                }
                _ => {
                    let mut s = format!(
                        "problem: {} mode: {}\nperiod: {}\ndegree: {}\n",
                        common.problem,
                        common.mode,
                        q.period(),
                        q.degree()
                    );
                    for (r, c) in q.constituents().iter().enumerate() {
                        s.push_str(&format!(
                            "t = {r} (mod {}): {}\n",
                            q.period(),
                            format_poly(c)
                        ));
                    }
                    if common.mode == CountMode::All {
                        let pc = principal_constant(common.problem)
                            .map_err(|e| e.to_string())?;
                        s.push_str(&format!("principal constant: {pc}\n"));
                    }
                    s
                }
            };
            emit(&common, text).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Geometry { common } => {
            let inst = instance(common.problem).map_err(|e| e.to_string())?;
            let denom = instance_denominator(common.problem).map_err(|e| e.to_string())?;
            let text = match common.format {
                Format::Json => {
                    let parts = inst
                        .parts
                        .iter()
                        .map(|p| {
                            let mut v =
                                geometry_json(&p.iop).map_err(|e| e.to_string())?;
                            let obj = v.as_object_mut().unwrap();
                            obj.insert("label".into(), serde_json::json!(p.label));
                            obj.insert("weight".into(), serde_json::json!(p.weight));
                            Ok(v)
                        })
                        .collect::<Result<Vec<_>, String>>()?;
                    format!(
                        "{}\n",
                        serde_json::json!({
                            "problem": common.problem.key(),
                            "denominator": denom.to_string(),
                            "parts": parts,
                        })
                    )
                }
                _ => {
                    let mut s = format!(
                        "problem: {}\ndenominator: {}\n",
                        common.problem, denom
                    );
                    for part in &inst.parts {
                        let vertices =
                            part.iop.inside_out_vertices().map_err(|e| e.to_string())?;
                        let poset = insideout::ehrhart::intersection_poset(&part.iop)
                            .map_err(|e| e.to_string())?;
                        s.push_str(&format!(
                            "part {} (weight {}): {} inside-out vertices, {} flats\n",
                            part.label,
                            part.weight,
                            vertices.len(),
                            poset.len()
                        ));
                        for v in &vertices {
                            let coords: Vec<String> = v.iter().map(format_rat).collect();
                            s.push_str(&format!("  vertex ({})\n", coords.join(", ")));
                        }
                        for f in &poset.flats {
                            let vs: Vec<String> = f
                                .vertices
                                .iter()
                                .map(|v| {
                                    let c: Vec<String> = v.iter().map(format_rat).collect();
                                    format!("({})", c.join(", "))
                                })
                                .collect();
                            s.push_str(&format!(
                                "  flat codim {} moebius {:+}: {}\n",
                                f.codim,
                                f.moebius,
                                vs.join(" ")
                            ));
                        }
                    }
                    s
                }
            };
            emit(&common, text).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            common,
            t_max,
            budget,
            jobs,
            config,
        } => {
            let mut oracle = Oracle::default();
            if let Some(path) = config {
                let body = std::fs::read_to_string(&path)
                    .map_err(|e| format!("config {}: {e}", path.display()))?;
                for line in body.lines() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    match line.split_once('=') {
                        Some(("budget", v)) => {
                            oracle.budget =
                                v.trim().parse().map_err(|e| format!("budget: {e}"))?;
                        }
                        Some(("scan_budget", v)) => {
                            oracle.scan_budget =
                                v.trim().parse().map_err(|e| format!("scan_budget: {e}"))?;
                        }
                        _ => return Err(format!("config: unrecognized line `{line}`")),
                    }
                }
            }
            if let Some(b) = budget {
                oracle.budget = b;
            }
            if t_max > oracle.budget {
                return Err(format!(
                    "t-max {t_max} exceeds the oracle budget {}",
                    oracle.budget
                ));
            }
            let rows = if jobs > 1 {
                let chunk = t_max.div_ceil(jobs as u64).max(1);
                let mut all = Vec::new();
                std::thread::scope(|scope| -> Result<(), String> {
                    let mut handles = Vec::new();
                    let mut lo = 1;
                    while lo <= t_max {
                        let hi = (lo + chunk - 1).min(t_max);
                        let (problem, mode) = (common.problem, common.mode);
                        handles.push(scope.spawn(move || {
                            let mut rows =
                                verification_table(problem, mode, hi, &oracle)?;
                            rows.retain(|r| r.t >= lo);
                            Ok::<_, insideout::Error>(rows)
                        }));
                        lo = hi + 1;
                    }
                    for handle in handles {
                        let rows = handle
                            .join()
                            .map_err(|_| "worker panicked".to_string())?
                            .map_err(|e| e.to_string())?;
                        all.extend(rows);
                    }
                    Ok(())
                })?;
                all.sort_by_key(|r| r.t);
                all
            } else {
                verification_table(common.problem, common.mode, t_max, &oracle)
                    .map_err(|e| e.to_string())?
            };

            let mut mismatches = 0usize;
            let mut matched = 0usize;
            let mut body_rows: Vec<Vec<String>> = Vec::new();
            for row in &rows {
                let ok = row.matches();
                if !ok {
                    mismatches += 1;
                } else if row.from_oracle != 0 {
                    matched += 1;
                }
                if !ok || row.from_oracle != 0 || !row.from_gf.is_zero() {
                    body_rows.push(vec![
                        row.t.to_string(),
                        row.from_gf.to_string(),
                        row.from_oracle.to_string(),
                        if ok { "ok" } else { "MISMATCH" }.to_string(),
                    ]);
                }
            }
            let text = match common.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({
                        "problem": common.problem.key(),
                        "mode": common.mode.key(),
                        "t_max": t_max,
                        "matched": matched,
                        "mismatches": mismatches,
                        "rows": body_rows,
                    })
                ),
                Format::Csv => csv("t,series,oracle,status", &body_rows),
                _ => {
                    let mut s = format!(
                        "verify {} {} up to t = {t_max}\n",
                        common.problem, common.mode
                    );
                    for r in &body_rows {
                        s.push_str(&format!(
                            "t = {:>3}  series {:>12}  oracle {:>12}  {}\n",
                            r[0], r[1], r[2], r[3]
                        ));
                    }
                    s.push_str(&format!(
                        "{matched} matched rows, {mismatches} mismatches\n"
                    ));
                    s
                }
            };
            emit(&common, text).map_err(|e| e.to_string())?;
            Ok(if mismatches == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Export {
            common,
            what,
            t_max,
        } => {
            let text = match what {
                ExportKind::Gf => {
                    let gf = count_gf(common.problem, common.mode)
                        .map_err(|e| e.to_string())?;
                    format!("{}\n", gf.to_json())
                }
                ExportKind::Quasipoly => {
                    let q = quasipolynomial(common.problem, common.mode)
                        .map_err(|e| e.to_string())?;
                    format!("{}\n", q.to_json())
                }
                ExportKind::Geometry => {
                    let inst = instance(common.problem).map_err(|e| e.to_string())?;
                    let parts = inst
                        .parts
                        .iter()
                        .map(|p| geometry_json(&p.iop).map_err(|e| e.to_string()))
                        .collect::<Result<Vec<_>, String>>()?;
                    format!("{}\n", serde_json::json!(parts))
                }
                ExportKind::Table => {
                    let gf = count_gf(common.problem, common.mode)
                        .map_err(|e| e.to_string())?;
                    let coeffs = gf.coefficients(t_max);
                    let rows: Vec<(u64, BigInt)> = (1..=t_max)
                        .map(|t| (t, coeffs[t as usize].clone()))
                        .collect();
                    match common.format {
                        Format::Csv => csv(
                            "t,value",
                            &rows
                                .iter()
                                .map(|(t, v)| vec![t.to_string(), v.to_string()])
                                .collect::<Vec<_>>(),
                        ),
                        _ => bfile(&rows),
                    }
                }
            };
            emit(&common, text).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PeriodReport { common } => {
            let report =
                period_report(common.problem, common.mode).map_err(|e| e.to_string())?;
            let text = match common.format {
                Format::Json => format!("{}\n", report.to_json()),
                _ => report.to_string(),
            };
            emit(&common, text).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
