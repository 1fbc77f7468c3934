//! Command line front end: sampling, depth and layer queries, invariant
//! checks, enclosing shapes and Monte Carlo sweeps.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use tukey_layers::depth::{convex_layers, depth_labeling, tukey_layers};
use tukey_layers::enclosing::{
    min_area_hull_excluding, min_area_parallelogram_excluding, SearchMode,
};
use tukey_layers::experiments::{
    emit, fit_log_slope, format_csv, parse_csv, run_estimate, ExperimentConfig, Metric,
    OutputFormat,
};
use tukey_layers::gadgets::{
    build_triangle_grid, check_diag_lemma, check_dividing_sufficient, check_upper_hull_lemma,
    row_order_statistics, UnitShape,
};
use tukey_layers::io::{format_points, read_points};
use tukey_layers::lemmas::verify_structural_lemmas;
use tukey_layers::sampling::{
    sample_uniform, triangulate_fan, unit_right_triangle, unit_square, PolygonSpec, RngStream,
};
use tukey_layers::Point;

/// Exit status when an invariant check finds a violation.
const INVARIANT_FAILURE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "tukey-layers",
    version,
    about = "Tukey depth layers and convex layers of planar point sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw uniform points from a convex polygon and print them as x,y lines.
    Sample {
        #[arg(long, default_value = "regular:k=3,area=1")]
        shape: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tukey and convex depth of every point, as JSON.
    Depth {
        #[arg(long)]
        points: PathBuf,
    },
    /// Layer index sets, as JSON.
    Layers {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Tukey)]
        kind: Kind,
    },
    /// Structural checks relating Tukey and convex layers, as JSON.
    Verify {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a geometric check on random samples and report violations.
    Gadget {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Region for the dividing-line check.
        #[arg(long, value_enum, default_value_t = Region::Square)]
        region: Region,
    },
    /// Smallest hull or parallelogram after discarding t points, as JSON.
    Enclose {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Mode::Pruned)]
        mode: Mode,
        #[arg(long)]
        points: PathBuf,
    },
    /// Monte Carlo estimates of layer sizes and areas.
    Estimate {
        #[arg(long, default_value = "regular:k=3,area=1")]
        shape: String,
        /// Comma list; `a,b,...,c` expands a geometric or arithmetic run.
        #[arg(long)]
        n: String,
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "U_first_t")]
        metrics: String,
        #[arg(long)]
        threads: Option<usize>,
        /// Fill the seconds column with wall time.
        #[arg(long)]
        timing: bool,
        /// CSV, or JSON for a .json path. Printed as CSV when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit mean against ln n for each (k, t, metric) group of an estimate CSV.
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        metric: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tukey,
    Convex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    UpperHull,
    Diag,
    Dividing,
    Zj,
}

#[derive(Clone, Copy, ValueEnum)]
enum Region {
    Square,
    Triangle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Hull,
    Para,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pruned,
    Oracle,
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect();
    if let Some(pos) = parts.iter().position(|&p| p == "...") {
        if pos != 2 || parts.len() != 4 {
            bail!("range must look like a,b,...,c: {s:?}");
        }
        let num = |p: &str| {
            p.parse::<usize>()
                .with_context(|| format!("bad number {p:?}"))
        };
        let (a, b, c) = (num(parts[0])?, num(parts[1])?, num(parts[3])?);
        return expand_run(a, b, c).with_context(|| format!("cannot expand {s:?}"));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .with_context(|| format!("bad number {p:?}"))
        })
        .collect()
}

/// Geometric when b is an integer multiple of a and c lies on that run,
/// arithmetic otherwise.
fn expand_run(a: usize, b: usize, c: usize) -> Result<Vec<usize>> {
    if a == 0 || b <= a || c < b {
        bail!("need 0 < a < b <= c");
    }
    if b % a == 0 {
        let r = b / a;
        let mut v = vec![a];
        while let Some(&last) = v.last() {
            if last >= c {
                break;
            }
            v.push(last * r);
        }
        if v.last() == Some(&c) {
            return Ok(v);
        }
    }
    let d = b - a;
    if (c - a) % d != 0 {
        bail!("c is not on the run");
    }
    Ok((a..=c).step_by(d).collect())
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn gadget(
    check: Check,
    trials: usize,
    n: usize,
    t: usize,
    seed: u64,
    region: Region,
) -> Result<usize> {
    let square = triangulate_fan(&unit_square())?;
    let tri = triangulate_fan(&unit_right_triangle())?;
    let apex = [
        Point::new(0.0, 1.0),
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
    ];
    let mut violations = 0;
    for trial in 0..trials {
        let stream = RngStream::new(seed, trial as u64);
        violations += match check {
            Check::UpperHull => check_upper_hull_lemma(&sample_uniform(&square, n, &stream), t)?
                .violations
                .len(),
            Check::Diag => check_diag_lemma(&sample_uniform(&tri, n, &stream), t)?.len(),
            Check::Dividing => {
                let (r, shape) = match region {
                    Region::Square => (&square, UnitShape::Square),
                    Region::Triangle => (&tri, UnitShape::Triangle),
                };
                check_dividing_sufficient(&sample_uniform(r, n, &stream), t, shape)?.len()
            }
            Check::Zj => {
                if n < 3 {
                    bail!("the Zj check needs n >= 3");
                }
                let xs = sample_uniform(&tri, n, &stream);
                let grid = build_triangle_grid(apex, n)?;
                (2..n)
                    .map(|j| {
                        row_order_statistics(&grid, &xs, j, t)
                            .map(|s| usize::from(s.zj > s.i1 + s.i2))
                    })
                    .sum::<tukey_layers::Result<usize>>()?
            }
        };
    }
    Ok(violations)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sample {
            shape,
            n,
            seed,
            out,
        } => {
            let spec: PolygonSpec = shape.parse()?;
            let region = triangulate_fan(&spec.polygon()?)?;
            let text = format_points(&sample_uniform(&region, n, &RngStream::new(seed, 0)));
            match out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
        Command::Depth { points } => print_json(&depth_labeling(&read_points(&points)?)?)?,
        Command::Layers { points, kind } => {
            let xs = read_points(&points)?;
            let part = match kind {
                Kind::Tukey => tukey_layers(&xs)?,
                Kind::Convex => convex_layers(&xs),
            };
            print_json(&part)?;
        }
        Command::Verify { points, t, seed } => {
            let report =
                verify_structural_lemmas(&read_points(&points)?, t, &RngStream::new(seed, 0))?;
            print_json(&report)?;
            if !report.all_pass() {
                return Ok(ExitCode::from(INVARIANT_FAILURE));
            }
        }
        Command::Gadget {
            check,
            trials,
            n,
            t,
            seed,
            region,
        } => {
            let violations = gadget(check, trials, n, t, seed, region)?;
            let name = check
                .to_possible_value()
                .expect("named variant")
                .get_name()
                .to_string();
            print_json(
                &serde_json::json!({"check": name, "trials": trials, "violations": violations}),
            )?;
            if violations > 0 {
                return Ok(ExitCode::from(INVARIANT_FAILURE));
            }
        }
        Command::Enclose {
            shape,
            t,
            mode,
            points,
        } => {
            let xs = read_points(&points)?;
            let mode = match mode {
                Mode::Pruned => SearchMode::Pruned,
                Mode::Oracle => SearchMode::Oracle,
            };
            let res = match shape {
                Shape::Hull => min_area_hull_excluding(&xs, t, mode)?,
                Shape::Para => min_area_parallelogram_excluding(&xs, t, mode)?,
            };
            print_json(&res)?;
        }
        Command::Estimate {
            shape,
            n,
            t,
            trials,
            seed,
            metrics,
            threads,
            timing,
            out,
        } => {
            let cfg = ExperimentConfig {
                shape: shape.parse()?,
                n_values: parse_list(&n)?,
                t_values: parse_list(&t)?,
                trials,
                master_seed: seed,
                metrics: metrics
                    .split(',')
                    .map(|m| m.trim().parse::<Metric>())
                    .collect::<Result<_, _>>()?,
                threads,
                record_timing: timing,
            };
            let records = run_estimate(&cfg)?;
            match out {
                Some(path) => emit(&records, OutputFormat::from_path(&path), &path)?,
                None => print!("{}", format_csv(&records)?),
            }
        }
        Command::Fit { input, metric } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let records = parse_csv(&text)?;
            let wanted: Option<Metric> = metric.map(|m| m.parse()).transpose()?;
            let mut keys: Vec<(usize, usize, Metric)> = Vec::new();
            for r in &records {
                let key = (r.k, r.t, r.metric);
                if wanted.map_or(true, |m| m == r.metric) && !keys.contains(&key) {
                    keys.push(key);
                }
            }
            let mut fits = Vec::new();
            for (k, t, m) in keys {
                let group: Vec<_> = records
                    .iter()
                    .filter(|r| (r.k, r.t, r.metric) == (k, t, m))
                    .cloned()
                    .collect();
                let f = fit_log_slope(&group)?;
                fits.push(serde_json::json!({"k": k, "t": t, "metric": m, "fit": f}));
            }
            print_json(&fits)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
