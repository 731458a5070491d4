//! Command-line front end: argument parsing, field setup, report emission.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, BoundQuery};
use crate::error::{Error, Result};
use crate::field::{self, Elt, FieldCtx};
use crate::frobchain::{count_secants_a_nonzero, normal_basis_find};
use crate::hermitian::{self, SpectrumMode};
use crate::oracle::{self, LineTable};
use crate::subfield;
use crate::verify::{self, Verifier, VerifyOpts};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "arcgeom",
    version,
    about = "Hermitian-curve arcs in PG(2, q^6): enumeration and verification"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Characteristic p (with --h).
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Exponent h, q = p^h.
    #[arg(long, global = true)]
    pub h: Option<u32>,
    /// Prime power q; split into (p, h) by trial division from 2.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Modulus of F_(q^6) over F_p, coefficients low to high, comma-separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample count for sampled sweeps.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub trials: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for the curve point cache.
    #[arg(long, global = true, env = "ARCGEOM_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Largest q^6 a field context may have.
    #[arg(long, global = true, default_value_t = field::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe the field F_(q^6).
    Field,
    /// Enumerate the Hermitian curve and check its size.
    Curve,
    /// Line-character histogram.
    Spectrum,
    /// (q+1)-secants through base points.
    Secants {
        /// Base point abscissa (hex encoding); with --b.
        #[arg(long, requires = "b")]
        a: Option<String>,
        #[arg(long, requires = "a")]
        b: Option<String>,
    },
    /// Run verification suites.
    Verify {
        /// "all" or a comma-separated list of suite names.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Evaluate the counting bounds.
    Bounds {
        /// Report only the crossing q*.
        #[arg(long)]
        threshold: bool,
        /// Degree for a Cafure–Matera evaluation (with --r).
        #[arg(long, requires = "r")]
        delta: Option<u64>,
        /// Dimension for a Cafure–Matera evaluation.
        #[arg(long, requires = "delta")]
        r: Option<u32>,
    },
    /// Completeness of the curve as an arc.
    Complete,
}

/// Outcome of one command: the report and whether its assertions held.
pub struct Outcome {
    pub report: Value,
    pub rows: Vec<Value>,
    pub ok: bool,
}

fn usage(e: &Error) -> bool {
    matches!(
        e,
        Error::NonPrime(_)
            | Error::NotPrimePower(_)
            | Error::NotIrreducible
            | Error::DegreeMismatch { .. }
            | Error::BudgetExceeded { .. }
            | Error::BadSubfieldIndex(_)
            | Error::InvalidElement(_)
            | Error::Parse(_)
    )
}

pub fn field_ctx(g: &GlobalOpts) -> Result<FieldCtx> {
    let (p, h) = match (g.q, g.p, g.h) {
        (Some(q), p, h) => {
            let (qp, qh) = field::split_prime_power(q)?;
            if p.is_some_and(|p| p != qp) || h.is_some_and(|h| h != qh) {
                return Err(Error::Parse(format!("--q {q} disagrees with --p/--h")));
            }
            (qp, qh)
        }
        (None, Some(p), h) => (p, h.unwrap_or(1)),
        (None, None, Some(_)) => return Err(Error::Parse("--h needs --p".into())),
        (None, None, None) => (2, 1),
    };
    FieldCtx::build(p, h, g.modulus.as_deref(), g.budget)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn run_field(ctx: &FieldCtx) -> Result<Outcome> {
    let nb = normal_basis_find(ctx);
    let sizes: Vec<usize> = [1, 2, 3, 6]
        .iter()
        .map(|&e| ctx.subfield_elements(e).map_or(0, |v| v.len()))
        .collect();
    let report = json!({
        "p": ctx.p(), "h": ctx.h(), "q": ctx.q(), "degree": ctx.degree(), "size": ctx.size(),
        "modulus": ctx.modulus(), "normal_element": ctx.to_hex(nb.xi), "subfield_sizes": sizes,
    });
    let rows = vec![json!({
        "p": ctx.p(), "h": ctx.h(), "q": ctx.q(), "degree": ctx.degree(), "size": ctx.size(),
        "modulus": ctx.modulus().iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
        "normal_element": ctx.to_hex(nb.xi),
    })];
    Ok(Outcome { report, rows, ok: true })
}

fn run_curve(ctx: &FieldCtx, g: &GlobalOpts) -> Result<Outcome> {
    let arc = hermitian::enumerate_cached(ctx, g.cache_dir.as_deref())?;
    let expected = hermitian::expected_count(ctx.q() as u64);
    let report = json!({"q": ctx.q(), "count": arc.len(), "expected": expected});
    Ok(Outcome {
        rows: vec![report.clone()],
        ok: arc.len() as u64 == expected,
        report,
    })
}

fn run_spectrum(ctx: &FieldCtx, g: &GlobalOpts) -> Result<Outcome> {
    let arc = hermitian::enumerate_cached(ctx, g.cache_dir.as_deref())?;
    let exhaustive = ctx.q() <= hermitian::EXHAUSTIVE_SPECTRUM_MAX_Q;
    let mode = if exhaustive {
        SpectrumMode::Exhaustive
    } else {
        SpectrumMode::Sampled {
            lines: g.trials,
            seed: g.seed,
        }
    };
    let spec = match hermitian::character_spectrum(ctx, &arc, mode) {
        Ok(s) => s,
        Err(Error::CharacterViolation { line, size }) => {
            let report = json!({"q": ctx.q(), "violation": {"line": line, "size": size}});
            return Ok(Outcome {
                report,
                rows: vec![],
                ok: false,
            });
        }
        Err(e) => return Err(e),
    };
    let rows = spec
        .histogram
        .iter()
        .map(|(k, v)| json!({"character": k, "lines": v}))
        .collect();
    let report = json!({
        "q": ctx.q(), "mode": if exhaustive { "exhaustive" } else { "sampled" },
        "histogram": spec.histogram, "total_lines": spec.total_lines(),
        "incidence_sum": spec.incidence_sum(), "pair_sum": spec.pair_sum(),
    });
    Ok(Outcome { report, rows, ok: true })
}

#[derive(Serialize)]
struct PointRow {
    a: String,
    b: String,
    #[serde(rename = "A")]
    capital_a: String,
    branch: &'static str,
    /// Non-vertical (q+1)-secants counted by the line table.
    oracle_count: usize,
    /// The same count by the f-criterion (A != 0 only).
    fi_count: Option<usize>,
    /// First F_(q^2) slope found by the cubic (A = 0 only).
    subfield_slope: Option<String>,
    agreement: bool,
}

fn point_row(ctx: &FieldCtx, table: &LineTable, a: Elt, b: Elt) -> Result<PointRow> {
    let big_a = ctx.capital_a(a);
    let oracle_count = ctx
        .elements()
        .filter(|&m| table.is_full(table.through(ctx, a, b, m)))
        .count();
    if big_a.is_zero() {
        let slope = subfield::subfield_secant_search(ctx, a, b, Some(table))?;
        let first = ctx
            .subfield_elements(2)?
            .into_iter()
            .find(|&m| table.is_full(table.through(ctx, a, b, m)));
        Ok(PointRow {
            a: ctx.to_hex(a),
            b: ctx.to_hex(b),
            capital_a: ctx.to_hex(big_a),
            branch: "a_zero",
            oracle_count,
            fi_count: None,
            subfield_slope: slope.map(|m| ctx.to_hex(m)),
            agreement: slope == first,
        })
    } else {
        let r = count_secants_a_nonzero(ctx, a, b, Some(table))?;
        Ok(PointRow {
            a: ctx.to_hex(a),
            b: ctx.to_hex(b),
            capital_a: r.capital_a,
            branch: "a_nonzero",
            oracle_count,
            fi_count: Some(r.paths.fi),
            subfield_slope: None,
            agreement: r.agreement,
        })
    }
}

fn run_secants(ctx: &FieldCtx, g: &GlobalOpts, a: Option<&str>, b: Option<&str>) -> Result<Outcome> {
    use rayon::prelude::*;
    let arc = hermitian::enumerate_cached(ctx, g.cache_dir.as_deref())?;
    let table = LineTable::build(ctx, &arc);
    let mut points: Vec<(Elt, Elt)> = match (a, b) {
        (Some(a), Some(b)) => vec![(ctx.parse_hex(a)?, ctx.parse_hex(b)?)],
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let n = ctx.size();
            (0..g.trials)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .map(|(x, y)| (ctx.elem(x).expect("in range"), ctx.elem(y).expect("in range")))
                .collect()
        }
    };
    points.sort();
    points.dedup();
    let rows: Vec<PointRow> = points
        .par_iter()
        .map(|&(a, b)| point_row(ctx, &table, a, b))
        .collect::<Result<_>>()?;
    let ok = rows.iter().all(|r| r.agreement);
    let rows: Vec<Value> = rows.iter().map(to_value).collect();
    let report = json!({
        "q": ctx.q(),
        "asymptotic_lower_bound": bounds::ultimosez1_lower_approx(ctx.q() as u64),
        "points": rows,
    });
    Ok(Outcome { report, rows, ok })
}

fn run_verify(ctx: &FieldCtx, g: &GlobalOpts, suite: &str) -> Result<Outcome> {
    let names: Vec<&str> = if suite == "all" {
        verify::SUITES.to_vec()
    } else {
        suite.split(',').map(str::trim).collect()
    };
    if let Some(bad) = names.iter().find(|n| !verify::SUITES.contains(n)) {
        return Err(Error::Parse(format!(
            "unknown suite {bad:?}; known: {}",
            verify::SUITES.join(", ")
        )));
    }
    let arc = hermitian::enumerate_cached(ctx, g.cache_dir.as_deref())?;
    let table = LineTable::build(ctx, &arc);
    let v = Verifier::new(
        ctx,
        &arc,
        &table,
        VerifyOpts {
            seed: g.seed,
            trials: g.trials,
        },
    );
    let results = names.iter().map(|n| v.run(n)).collect::<Result<Vec<_>>>()?;
    let ok = results.iter().all(|r| r.passed);
    let rows = results
        .iter()
        .map(|r| json!({"suite": r.suite, "passed": r.passed, "exhaustive": r.exhaustive, "checked": r.checked, "failures": r.failures}))
        .collect();
    let report = json!({"q": ctx.q(), "seed": g.seed, "trials": g.trials, "passed": ok, "suites": results});
    Ok(Outcome { report, rows, ok })
}

fn run_bounds(g: &GlobalOpts, threshold: bool, delta: Option<u64>, r: Option<u32>) -> Result<Outcome> {
    if threshold {
        let report = json!({"q_star": bounds::q_star()});
        return Ok(Outcome {
            rows: vec![report.clone()],
            report,
            ok: true,
        });
    }
    if let (Some(delta), Some(r)) = (delta, r) {
        let q = g.q.unwrap_or(2);
        let cm = bounds::cafure_matera(BoundQuery { q, r, delta });
        let report = to_value(&cm);
        let row = json!({"q": q, "r": r, "delta": delta, "condition_ok": cm.condition_ok, "threshold": cm.threshold,
                         "sqrt_coefficient": cm.sqrt_coefficient, "delta_adjacent": cm.delta_adjacent,
                         "lower": cm.lower.approx, "upper": cm.upper.approx});
        return Ok(Outcome {
            report,
            rows: vec![row],
            ok: true,
        });
    }
    let qs: Vec<u64> = match g.q {
        Some(q) => vec![q],
        None => vec![2, 3, 4, 5, 7, 8, 9, 1_000_000],
    };
    let table: Vec<bounds::BoundRow> = qs.iter().map(|&q| bounds::bound_row(q)).collect();
    let rows = table
        .iter()
        .map(|b| {
            json!({"q": b.q, "propmain1_lower": b.propmain1_lower.approx, "propmain2_upper": b.propmain2_upper.approx,
                        "ultimosez1_lower": b.ultimosez1_lower.approx, "ultimosez1_sign": b.ultimosez1_lower.sign,
                        "hasse_weil_lower": b.hasse_weil_lower.approx})
        })
        .collect();
    let report = json!({"q_star": bounds::q_star(), "rows": table});
    Ok(Outcome { report, rows, ok: true })
}

fn run_complete(ctx: &FieldCtx, g: &GlobalOpts) -> Result<Outcome> {
    let arc = hermitian::enumerate_cached(ctx, g.cache_dir.as_deref())?;
    let table = LineTable::build(ctx, &arc);
    let r = oracle::completeness_check(ctx, &arc, &table, oracle::COMPLETENESS_MAX_Q)?;
    let row = json!({"q": r.q, "complete": r.complete, "strong": r.strong, "points_checked": r.points_checked,
                     "addable_points": r.addable_points.len(), "uncovered_curve_points": r.uncovered_curve_points.len()});
    Ok(Outcome {
        report: to_value(&r),
        rows: vec![row],
        ok: true,
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Bounds { threshold, delta, r } => run_bounds(g, *threshold, *delta, *r),
        cmd => {
            let ctx = field_ctx(g)?;
            match cmd {
                Command::Field => run_field(&ctx),
                Command::Curve => run_curve(&ctx, g),
                Command::Spectrum => run_spectrum(&ctx, g),
                Command::Secants { a, b } => run_secants(&ctx, g, a.as_deref(), b.as_deref()),
                Command::Verify { suite } => run_verify(&ctx, g, suite),
                Command::Complete => run_complete(&ctx, g),
                Command::Bounds { .. } => unreachable!("handled above"),
            }
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_csv(rows: &[Value], out: &mut impl Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let Some(Value::Object(first)) = rows.first() else {
        return Ok(());
    };
    let header: Vec<&String> = first.keys().collect();
    w.write_record(&header)?;
    for r in rows {
        w.write_record(header.iter().map(|k| csv_cell(&r[k.as_str()])))?;
    }
    w.flush()
}

/// Parses argv, runs the command and prints its report; returns the exit
/// code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let threads = cli.global.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}", json!({"error": e.to_string()}));
            return EXIT_USAGE;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(out) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let written = match cli.global.format {
                Format::Json => serde_json::to_writer_pretty(&mut lock, &out.report)
                    .map_err(std::io::Error::from)
                    .and_then(|_| writeln!(lock)),
                Format::Csv => write_csv(&out.rows, &mut lock),
            };
            if let Err(e) = written {
                eprintln!("{}", json!({"error": e.to_string()}));
                return EXIT_FAILURE;
            }
            if out.ok {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            eprintln!("{}", json!({"error": e.to_string()}));
            if usage(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAILURE
            }
        }
    }
}
