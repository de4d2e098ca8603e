//! Command-line front end. Every command returns its artifact as a string plus
//! a one-line summary; `main` decides where they go.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{bound_table, BoundParams, Constants, YChoice};
use crate::dist::WinsorMode;
use crate::error::{Error, Result};
use crate::funcs::{
    check_pointwise_lemmas, default_k_grid, default_u_grid, delta_moment_check, young_delta,
    young_delta_star, young_scan, young_star_gap, LemmaGrid, MomentStatus, YoungEval, YOUNG_K_MAX,
};
use crate::grid::Grid;
use crate::io::{self, AnySystem};
use crate::mc::{mc_check_bounds, mc_report_csv, Family, SamplerSpec};
use crate::scalar::{ratio, Exact};
use crate::verify::{
    bh_domination, bikelis_consistency, calibrate, extremal_system, gen_corpus, mean_abs_sharpness,
    verify_osipov_corpus, CalibrationGrid, CalibrationParams, CalibrationTarget, ConcentrationSum,
    CorpusSpec, ExtremalReport, OsipovGrid, YSpec,
};

#[derive(Debug, Parser)]
#[command(name = "tailbound", version, about = "Nonuniform tail bounds for sums of independent random variables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound table P1..P5, theorem and corollary bounds over a z grid.
    Bounds {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value = "0:0.25:8")]
        z_grid: Grid,
        #[command(flatten)]
        params: BoundArgs,
    },
    /// Exact inequality suite over a seeded corpus.
    Verify {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value = "0:0.25:8")]
        z_grid: Grid,
        #[arg(long, default_value = "0.25,0.5,1")]
        w_grid: Grid,
        /// Fixed y levels; `z/(1+p/2)` is always added.
        #[arg(long, default_value = "0.25,0.5,1")]
        y_grid: Grid,
        #[arg(long, default_value = "2")]
        p: Grid,
    },
    /// Smallest constant consistent with a corpus for one bound.
    Calibrate {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_parser = parse_target)]
        target: CalibrationTarget,
        #[arg(long, default_value_t = 1.0)]
        v: f64,
        #[arg(long, default_value_t = 1.0)]
        w: f64,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value = "winsorize", value_parser = parse_mode)]
        mode: WinsorMode,
        #[arg(long, value_enum, default_value = "modified")]
        concentration_sum: SumArg,
        #[arg(long, default_value = "0:0.25:8")]
        z_grid: Grid,
        /// Left endpoints a for the concentration probe.
        #[arg(long, default_value = "-2:0.25:8")]
        a_grid: Grid,
        #[arg(long, default_value = "0.1,0.5,1,2")]
        gaps: Grid,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Extremal family for E|xi| <= v beta^(1/3); with --seed also scans a corpus.
    Extremal {
        #[arg(long, value_delimiter = ',', default_value = "2,101,10001,100000001")]
        n: Vec<u64>,
        #[arg(long, default_value_t = 1.0)]
        v: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Monte Carlo tails of S and the modified sum with bound checks.
    Mc {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// System JSON for `discrete`.
        #[arg(long)]
        system: Option<PathBuf>,
        /// Number of summands for the i.i.d. families.
        #[arg(long, default_value_t = 32)]
        n: usize,
        /// Success probability of the two-point family.
        #[arg(long, default_value_t = 0.5)]
        prob: f64,
        /// Pareto tail index (> 2).
        #[arg(long, default_value_t = 3.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value = "0:0.25:8")]
        z_grid: Grid,
        #[command(flatten)]
        params: BoundArgs,
        /// Multiplies the bound before flagging; values below 1 are a self-test.
        #[arg(long, default_value_t = 1.0, hide = true)]
        bound_scale: f64,
    },
    /// Scan of 2k/3 + g(u)/(3k^2) - u and its minimum over k <= 8/9.
    Young {
        /// Also scan this single k over the u grid.
        #[arg(long)]
        k: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumArg {
    Modified,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Discrete,
    Exponential,
    TwoPoint,
    Pareto,
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, default_value_t = 4)]
    pub atoms_max: usize,
}

impl CorpusArgs {
    fn spec(&self) -> CorpusSpec {
        CorpusSpec {
            seed: self.seed,
            count: self.count,
            n_max: self.n_max,
            atoms_max: self.atoms_max,
            ..CorpusSpec::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[arg(long, default_value_t = 1.0)]
    pub v: f64,
    #[arg(long, default_value_t = 1.0)]
    pub w: f64,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// `auto` or a fixed positive level.
    #[arg(long, default_value = "auto", value_parser = parse_y)]
    pub y: YChoice,
    #[arg(long, default_value = "winsorize", value_parser = parse_mode)]
    pub mode: WinsorMode,
    #[arg(long)]
    pub a_theorem: Option<f64>,
    #[arg(long)]
    pub a_p4: Option<f64>,
    #[arg(long)]
    pub a_p5: Option<f64>,
    #[arg(long)]
    pub a_bikelis: Option<f64>,
}

impl BoundArgs {
    fn params(&self) -> Result<BoundParams> {
        let params = BoundParams {
            v: self.v,
            w: self.w,
            lambda: self.lambda,
            p: self.p,
            c: self.c,
            y: self.y,
            mode: self.mode,
            constants: Constants {
                theorem: self.a_theorem,
                p4: self.a_p4,
                p5: self.a_p5,
                bikelis: self.a_bikelis,
            },
        };
        params.validate()?;
        Ok(params)
    }
}

fn parse_y(s: &str) -> std::result::Result<YChoice, String> {
    if s == "auto" {
        return Ok(YChoice::Auto);
    }
    s.parse::<f64>()
        .map(YChoice::Fixed)
        .map_err(|_| format!("expected `auto` or a number, got {s:?}"))
}

fn parse_mode(s: &str) -> Result<WinsorMode> {
    s.parse()
}

fn parse_target(s: &str) -> Result<CalibrationTarget> {
    s.parse()
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: String,
    pub summary: String,
    /// An exact violation, a significant Monte Carlo flag or a degenerate
    /// calibration cell.
    pub failed: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Bounds {
            system,
            z_grid,
            params,
        } => run_bounds(system, z_grid, &params.params()?, cli.format.unwrap_or(Format::Csv)),
        Command::Verify {
            corpus,
            z_grid,
            w_grid,
            y_grid,
            p,
        } => run_verify(corpus, z_grid, w_grid, y_grid, p, cli.format.unwrap_or(Format::Json)),
        Command::Calibrate {
            corpus,
            target,
            v,
            w,
            lambda,
            p,
            c,
            mode,
            concentration_sum,
            z_grid,
            a_grid,
            gaps,
            workers,
        } => {
            let params = CalibrationParams {
                v: *v,
                w: *w,
                lambda: *lambda,
                p: *p,
                c: *c,
                mode: *mode,
                concentration_sum: match concentration_sum {
                    SumArg::Modified => ConcentrationSum::Modified,
                    SumArg::Raw => ConcentrationSum::Raw,
                },
            };
            for (name, value) in [("v", *v), ("w", *w), ("lambda", *lambda), ("p", *p), ("c", *c)] {
                if !(value > 0.0 && value.is_finite()) {
                    return Err(Error::InvalidInput(format!("{name} must be positive, got {value}")));
                }
            }
            let grid = CalibrationGrid {
                zs: z_grid.to_f64(),
                lefts: a_grid.to_f64(),
                gaps: gaps.to_f64(),
            };
            let corpus = gen_corpus(&corpus.spec())?;
            let result = calibrate(&corpus, *target, &params, &grid, *workers)?;
            let summary = format!(
                "calibrate {}: a_min = {} over {} cells",
                serde_json::to_value(target).map_err(|e| Error::Io(e.to_string()))?.as_str().unwrap_or(""),
                result.a_min,
                result.cells
            );
            let report = match cli.format.unwrap_or(Format::Json) {
                Format::Json => io::to_json(&result)?,
                Format::Csv => {
                    let w = result.witness.as_ref();
                    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
                    let mut out = csv::Writer::from_writer(Vec::new());
                    out.write_record(["a_min", "cells", "infinite", "system", "z", "a", "b", "summand", "lhs", "rhs"])
                        .map_err(io::csv_err)?;
                    out.write_record([
                        result.a_min.to_string(),
                        result.cells.to_string(),
                        result.infinite.to_string(),
                        w.map(|w| w.system.to_string()).unwrap_or_default(),
                        opt(w.and_then(|w| w.z)),
                        opt(w.and_then(|w| w.a)),
                        opt(w.and_then(|w| w.b)),
                        w.and_then(|w| w.summand).map(|i| i.to_string()).unwrap_or_default(),
                        opt(w.map(|w| w.lhs)),
                        opt(w.map(|w| w.rhs)),
                    ])
                    .map_err(io::csv_err)?;
                    io::finish_csv(out)?
                }
            };
            Ok(Outcome {
                report,
                summary,
                failed: result.infinite,
            })
        }
        Command::Extremal { n, v, seed, count } => run_extremal(n, *v, *seed, *count, cli.format.unwrap_or(Format::Csv)),
        Command::Mc {
            seed,
            family,
            system,
            n,
            prob,
            alpha,
            samples,
            z_grid,
            params,
            bound_scale,
        } => {
            let family = match family {
                FamilyArg::Discrete => {
                    let path = system
                        .as_ref()
                        .ok_or_else(|| Error::InvalidInput("--family discrete needs --system".into()))?;
                    Family::Discrete(match io::read_system(path)? {
                        AnySystem::Rational(s) => s.to_float(),
                        AnySystem::Float(s) => s,
                    })
                }
                FamilyArg::Exponential => Family::Exponential,
                FamilyArg::TwoPoint => Family::TwoPoint { p: *prob },
                FamilyArg::Pareto => Family::Pareto { alpha: *alpha },
            };
            let spec = SamplerSpec { family, n: *n };
            let report = mc_check_bounds(&spec, &params.params()?, &z_grid.to_f64(), *samples, *seed, *bound_scale)?;
            let summary = format!("mc: {} samples, {} flags", samples, report.flags);
            let text = match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => mc_report_csv(&report)?,
                Format::Json => io::to_json(&report)?,
            };
            Ok(Outcome {
                report: text,
                summary,
                failed: report.flags > 0,
            })
        }
        Command::Young { k } => run_young(*k, cli.format.unwrap_or(Format::Json)),
    }
}

fn run_bounds(path: &std::path::Path, zs: &Grid, params: &BoundParams, format: Format) -> Result<Outcome> {
    let reports = match io::read_system(path)? {
        AnySystem::Rational(sys) => bound_table(&sys, &zs.to_scalars::<Exact>(), params)?,
        AnySystem::Float(sys) => bound_table(&sys, &zs.to_f64(), params)?,
    };
    let report = match format {
        Format::Csv => io::reports_to_csv(&reports)?,
        Format::Json => io::to_json(&reports)?,
    };
    let mut warnings: Vec<&String> = reports.iter().flat_map(|r| &r.warnings).collect();
    warnings.sort();
    warnings.dedup();
    let mut summary = format!("bounds: {} grid points", reports.len());
    for w in warnings {
        summary.push_str("\nwarning: ");
        summary.push_str(w);
    }
    Ok(Outcome {
        report,
        summary,
        failed: false,
    })
}

#[derive(Debug, Serialize)]
struct CheckLine {
    check: &'static str,
    comparisons: u64,
    violations: u64,
    note: String,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    seed: u64,
    systems: usize,
    checks: Vec<CheckLine>,
    total_violations: u64,
    osipov_violations: Vec<(usize, crate::verify::OsipovViolation)>,
    bh_violations: Vec<crate::verify::BhViolation>,
}

fn run_verify(corpus_args: &CorpusArgs, zs: &Grid, ws: &Grid, ys: &Grid, p: &Grid, format: Format) -> Result<Outcome> {
    if !ws.all_positive() || !ys.all_positive() {
        return Err(Error::InvalidInput("w and y grids must be positive".into()));
    }
    let corpus = gen_corpus(&corpus_args.spec())?;
    let mut y_specs: Vec<YSpec> = ys.exact().iter().cloned().map(YSpec::Fixed).collect();
    y_specs.extend(p.exact().iter().cloned().map(YSpec::ZOverOnePlusHalfP));
    let grid = OsipovGrid {
        zs: zs.exact().to_vec(),
        ws: ws.exact().to_vec(),
        ys: y_specs,
    };
    let mut checks = Vec::new();
    let osipov = verify_osipov_corpus(&corpus, &grid, &WinsorMode::ALL)?;
    checks.push(CheckLine {
        check: "tail_difference_chain",
        comparisons: osipov.comparisons,
        violations: osipov.violations.len() as u64,
        note: format!("{} systems skipped at the convolution cap", osipov.skipped),
    });
    let bh = bh_domination(&corpus, zs.exact(), ys.exact())?;
    checks.push(CheckLine {
        check: "bennett_hoeffding",
        comparisons: bh.comparisons,
        violations: bh.violations.len() as u64,
        note: format!("minimum slack {}", bh.min_slack),
    });
    let (at_zero, monotone) = bikelis_consistency(&corpus, zs.exact());
    checks.push(CheckLine {
        check: "bikelis_sum",
        comparisons: (corpus.len() * (zs.len() + 1)) as u64,
        violations: (at_zero + monotone) as u64,
        note: format!("{at_zero} failures at z = 0, {monotone} monotonicity failures"),
    });
    let sharp = mean_abs_sharpness(&corpus, 1.0, &[])?;
    checks.push(CheckLine {
        check: "mean_abs",
        comparisons: sharp.systems_checked as u64,
        violations: (sharp.violations.len() + sharp.mu3_violations) as u64,
        note: format!(
            "max ratio {}, {} systems outside beta <= (8/9)^3",
            sharp.max_ratio, sharp.systems_skipped
        ),
    });
    let mut moment = [0u64; 3];
    for sys in &corpus {
        let r = delta_moment_check(sys, &ratio(1, 1))?;
        moment[match r.status {
            MomentStatus::Pass => 0,
            MomentStatus::Fail => 1,
            MomentStatus::OutsideMainCase => 2,
        }] += 1;
    }
    checks.push(CheckLine {
        check: "delta_moment",
        comparisons: moment[0] + moment[1],
        violations: moment[1],
        note: format!("{} systems outside the main case", moment[2]),
    });
    let lemma_grid = LemmaGrid::default();
    let lemmas = check_pointwise_lemmas(&lemma_grid)?;
    checks.push(CheckLine {
        check: "pointwise_lemmas",
        comparisons: (lemma_grid.xs.len() * lemma_grid.cells.len() * 2) as u64,
        violations: lemmas.len() as u64,
        note: String::new(),
    });
    let (ks, us) = (default_k_grid(), default_u_grid());
    let young = young_scan(&ks, &us)?;
    let (gap, gap_u) = young_star_gap(&ks, &us)?;
    checks.push(CheckLine {
        check: "young",
        comparisons: young.cells as u64,
        violations: young.violations.len() as u64 + u64::from(gap > 1e-6),
        note: format!("closed-form minimum gap {gap} at u = {gap_u}"),
    });
    let total: u64 = checks.iter().map(|c| c.violations).sum();
    let summary = format!(
        "verify: {} systems, {} comparisons, {} violations",
        corpus.len(),
        checks.iter().map(|c| c.comparisons).sum::<u64>(),
        total
    );
    let report = VerifyReport {
        seed: corpus_args.seed,
        systems: corpus.len(),
        checks,
        total_violations: total,
        osipov_violations: osipov.violations,
        bh_violations: bh.violations,
    };
    let text = match format {
        Format::Json => io::to_json(&report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["check", "comparisons", "violations", "note"]).map_err(io::csv_err)?;
            for c in &report.checks {
                w.write_record([c.check.to_string(), c.comparisons.to_string(), c.violations.to_string(), c.note.clone()])
                    .map_err(io::csv_err)?;
            }
            io::finish_csv(w)?
        }
    };
    Ok(Outcome {
        report: text,
        summary,
        failed: total > 0,
    })
}

fn run_extremal(ns: &[u64], v: f64, seed: Option<u64>, count: usize, format: Format) -> Result<Outcome> {
    let (rows, failed, summary, json): (Vec<ExtremalReport>, bool, String, String) = match seed {
        Some(seed) => {
            let corpus = gen_corpus(&CorpusSpec {
                seed,
                count,
                ..CorpusSpec::default()
            })?;
            let rep = mean_abs_sharpness(&corpus, v, ns)?;
            let failed = !rep.violations.is_empty() || rep.mu3_violations > 0;
            let summary = format!(
                "extremal: corpus max ratio {}, extremal max ratio {}, {} violations",
                rep.max_ratio,
                rep.max_extremal_ratio,
                rep.violations.len() + rep.mu3_violations
            );
            (rep.extremal.clone(), failed, summary, io::to_json(&rep)?)
        }
        None => {
            let rows = ns
                .iter()
                .map(|&n| extremal_system(n, v).map(|e| e.report))
                .collect::<Result<Vec<_>>>()?;
            let best = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
            let json = io::to_json(&rows)?;
            (rows, false, format!("extremal: max ratio {best}"), json)
        }
    };
    let report = match format {
        Format::Json => json,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "v", "x", "y", "total_variance", "beta", "ratio", "ratio_closed_form"])
                .map_err(io::csv_err)?;
            for r in &rows {
                w.write_record([
                    r.n.to_string(),
                    r.v.to_string(),
                    r.x.to_string(),
                    r.y.to_string(),
                    r.total_variance.to_string(),
                    r.beta.to_string(),
                    r.ratio.to_string(),
                    r.ratio_closed_form.map(|x| x.to_string()).unwrap_or_default(),
                ])
                .map_err(io::csv_err)?;
            }
            io::finish_csv(w)?
        }
    };
    Ok(Outcome { report, summary, failed })
}

#[derive(Debug, Serialize)]
struct SingleK {
    k: f64,
    min: YoungEval,
    negative_cells: usize,
    /// First and last `u` with `Δ < 0`.
    negative_range: Option<(f64, f64)>,
}

#[derive(Debug, Serialize)]
struct YoungReport {
    k_max: f64,
    cells: usize,
    min: YoungEval,
    violations: usize,
    closed_form_gap: f64,
    closed_form_gap_at: f64,
    /// `Δ(8/9, 32/27)`, zero in exact arithmetic.
    delta_at_boundary: f64,
    /// Grid minimum of `Δ(8/9, ·)`.
    boundary_min: YoungEval,
    single_k: Option<SingleK>,
}

fn run_young(k: Option<f64>, format: Format) -> Result<Outcome> {
    let (ks, us) = (default_k_grid(), default_u_grid());
    let scan = young_scan(&ks, &us)?;
    let (gap, gap_u) = young_star_gap(&ks, &us)?;
    let boundary = young_scan(&[YOUNG_K_MAX], &us)?;
    let single_k = k
        .map(|k| -> Result<SingleK> {
            let evals = us.iter().map(|&u| young_delta(k, u)).collect::<Result<Vec<_>>>()?;
            let negative: Vec<&YoungEval> = evals.iter().filter(|e| e.delta < 0.0).collect();
            let min = *evals
                .iter()
                .min_by(|a, b| a.delta.total_cmp(&b.delta))
                .expect("nonempty u grid");
            Ok(SingleK {
                k,
                min,
                negative_cells: negative.len(),
                negative_range: negative.first().zip(negative.last()).map(|(a, b)| (a.u, b.u)),
            })
        })
        .transpose()?;
    let report = YoungReport {
        k_max: YOUNG_K_MAX,
        cells: scan.cells,
        min: scan.min,
        violations: scan.violations.len(),
        closed_form_gap: gap,
        closed_form_gap_at: gap_u,
        delta_at_boundary: young_delta(YOUNG_K_MAX, 32.0 / 27.0)?.delta,
        boundary_min: boundary.min,
        single_k,
    };
    let failed = report.violations > 0 || gap > 1e-6;
    let mut summary = format!(
        "young: {} cells with k <= 8/9, {} violations, closed-form gap {gap}",
        report.cells, report.violations
    );
    if let Some(s) = &report.single_k {
        summary.push_str(&format!("; k = {}: min {} at u = {}", s.k, s.min.delta, s.min.u));
    }
    let text = match format {
        Format::Json => io::to_json(&report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["u", "delta_star", "k_opt"];
            if k.is_some() {
                header.push("delta_at_k");
            }
            w.write_record(&header).map_err(io::csv_err)?;
            for &u in &us {
                let mut row = vec![
                    u.to_string(),
                    young_delta_star(u)?.to_string(),
                    crate::funcs::young_k_opt(u).to_string(),
                ];
                if let Some(k) = k {
                    row.push(young_delta(k, u)?.delta.to_string());
                }
                w.write_record(&row).map_err(io::csv_err)?;
            }
            io::finish_csv(w)?
        }
    };
    Ok(Outcome {
        report: text,
        summary,
        failed,
    })
}

/// Parses, runs and writes; returns the process exit code
/// (0 clean, 1 violation or flag, 2 error).
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.report).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(outcome.report.as_bytes())
                .map_err(Error::from)
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    eprintln!("{}", outcome.summary);
    i32::from(outcome.failed)
}
