//! Monte Carlo estimates of expected layer sizes and areas.

mod bounds;
mod emit;
mod fit;

pub use bounds::{
    theoretical_bounds, u_first_upper_bound, BoundEntry, BoundKind, TheoreticalBounds,
};
pub use emit::{emit, format_csv, parse_csv, OutputFormat, CSV_HEADER};
pub use fit::{fit_log_slope, FitResult};

use crate::depth::{convex_layers_limited, shallow_tukey_depths};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, ConvexPolygon, PointSet};
use crate::sampling::{regular_kgon, sample_uniform, triangulate_fan, PolygonSpec, RngStream};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    /// |U_[t]|: points of Tukey depth at most t.
    #[serde(rename = "U_first_t")]
    UFirstT,
    /// |V_[t]|: points on the first t convex layers.
    #[serde(rename = "V_first_t")]
    VFirstT,
    /// |V_1|.
    #[serde(rename = "hull_size")]
    HullSize,
    /// Area of the hull of the sample.
    #[serde(rename = "hull_area")]
    HullArea,
    /// Area of the hull of Tukey layer t (0 when it has no area).
    #[serde(rename = "tukey_area_t")]
    TukeyAreaT,
    /// |V_1| - n (1 - hull area), per trial.
    #[serde(rename = "efron_gap")]
    EfronGap,
    /// n (1 - area of the hull of Tukey layer t+1) - |U_[t]|, per trial.
    #[serde(rename = "depth_area_gap")]
    DepthAreaGap,
    /// |U_[t+1]|.
    #[serde(rename = "tau")]
    Tau,
    /// |V_[t]| / (k t^3 ln(n / (k t^2))).
    #[serde(rename = "V_first_t_size")]
    VFirstTSize,
}

impl Metric {
    pub const ALL: [Metric; 9] = [
        Metric::UFirstT,
        Metric::VFirstT,
        Metric::HullSize,
        Metric::HullArea,
        Metric::TukeyAreaT,
        Metric::EfronGap,
        Metric::DepthAreaGap,
        Metric::Tau,
        Metric::VFirstTSize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::UFirstT => "U_first_t",
            Metric::VFirstT => "V_first_t",
            Metric::HullSize => "hull_size",
            Metric::HullArea => "hull_area",
            Metric::TukeyAreaT => "tukey_area_t",
            Metric::EfronGap => "efron_gap",
            Metric::DepthAreaGap => "depth_area_gap",
            Metric::Tau => "tau",
            Metric::VFirstTSize => "V_first_t_size",
        }
    }

    fn needs_depth(self) -> bool {
        matches!(
            self,
            Metric::UFirstT | Metric::TukeyAreaT | Metric::DepthAreaGap | Metric::Tau
        )
    }

    fn needs_layers(self) -> bool {
        matches!(self, Metric::VFirstT | Metric::VFirstTSize)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown metric {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub shape: PolygonSpec,
    pub n_values: Vec<usize>,
    pub t_values: Vec<usize>,
    pub trials: usize,
    pub master_seed: u64,
    pub metrics: Vec<Metric>,
    /// Worker threads; `None` uses the global pool. Results do not depend
    /// on it.
    pub threads: Option<usize>,
    /// Fill the `seconds` column with wall time per (n) cell; otherwise 0
    /// so that output files are byte-reproducible.
    pub record_timing: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return bad("n values must be nonempty and at least 1");
        }
        if self.t_values.is_empty() || self.t_values.contains(&0) {
            return bad("t values must be nonempty and at least 1");
        }
        if self.metrics.is_empty() {
            return bad("no metrics requested");
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub k: usize,
    pub n: usize,
    pub t: usize,
    pub trials: usize,
    pub metric: Metric,
    pub mean: f64,
    pub variance: f64,
    pub stderr: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub bound_value: Option<f64>,
    pub seconds: f64,
    /// t reaches the largest depth possible for n, so every point has Tukey
    /// depth at most t.
    pub saturated: bool,
}

/// Largest Tukey depth any n-point set can have.
pub fn max_possible_depth(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        (n - 1) / 2 + 1
    }
}

/// Everything measured on one sample, up to layer `cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialSummary {
    pub n: usize,
    pub hull_size: usize,
    pub hull_area: f64,
    /// `v_first[s]` = |V_[s]| for s = 0..=cap (empty when not measured).
    pub v_first: Vec<usize>,
    /// `u_first[s]` = |U_[s]| for s = 0..=cap (empty when not measured).
    pub u_first: Vec<usize>,
    /// `tukey_area[s]` = area of the hull of U_s for s = 0..=cap.
    pub tukey_area: Vec<f64>,
}

/// Measures one sample. Layers and depths are tracked up to `cap`.
pub fn summarize_trial(
    xs: &PointSet,
    cap: usize,
    depth: bool,
    layers: bool,
) -> Result<TrialSummary> {
    let n = xs.len();
    let (hull_size, hull_area) = if n == 0 {
        (0, 0.0)
    } else {
        let h = convex_hull(xs)?;
        let peel = convex_layers_limited(xs, 1);
        (peel.first().map_or(0, Vec::len), h.area())
    };
    let mut v_first = Vec::new();
    if layers {
        let peel = convex_layers_limited(xs, cap);
        v_first.push(0);
        for s in 1..=cap {
            let add = peel.get(s - 1).map_or(0, Vec::len);
            v_first.push(v_first[s - 1] + add);
        }
    }
    let mut u_first = Vec::new();
    let mut tukey_area = Vec::new();
    if depth {
        let d = shallow_tukey_depths(xs, cap)?;
        let mut by_layer = vec![Vec::new(); cap + 1];
        for (i, di) in d.iter().enumerate() {
            if let Some(di) = *di {
                by_layer[di].push(i);
            }
        }
        u_first.push(0);
        tukey_area.push(0.0);
        for s in 1..=cap {
            u_first.push(u_first[s - 1] + by_layer[s].len());
            let a = if by_layer[s].len() >= 3 {
                convex_hull(&xs.select(&by_layer[s]))?.area()
            } else {
                0.0
            };
            tukey_area.push(a);
        }
    }
    Ok(TrialSummary {
        n,
        hull_size,
        hull_area,
        v_first,
        u_first,
        tukey_area,
    })
}

impl TrialSummary {
    pub fn value(&self, metric: Metric, t: usize, k: usize) -> f64 {
        let n = self.n as f64;
        match metric {
            Metric::UFirstT => self.u_first[t] as f64,
            Metric::VFirstT => self.v_first[t] as f64,
            Metric::HullSize => self.hull_size as f64,
            Metric::HullArea => self.hull_area,
            Metric::TukeyAreaT => self.tukey_area[t],
            Metric::EfronGap => self.hull_size as f64 - n * (1.0 - self.hull_area),
            Metric::DepthAreaGap => n * (1.0 - self.tukey_area[t + 1]) - self.u_first[t] as f64,
            Metric::Tau => self.u_first[t + 1] as f64,
            Metric::VFirstTSize => {
                let (kf, tf) = (k as f64, t as f64);
                self.v_first[t] as f64 / (kf * tf.powi(3) * (n / (kf * tf * tf)).ln())
            }
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed shared by all trials of sample size n; trial j draws from stream j.
pub fn cell_seed(master_seed: u64, n: usize) -> u64 {
    splitmix64(master_seed ^ splitmix64(n as u64))
}

/// The unit-area sampling polygon for a spec.
pub fn sampling_polygon(shape: &PolygonSpec) -> Result<ConvexPolygon> {
    match shape {
        PolygonSpec::Regular { k, .. } => regular_kgon(*k, 1.0),
        PolygonSpec::Vertices(_) => shape.polygon(),
    }
}

/// Mean, sample variance, standard error and 95% interval of `values`, in
/// the given order.
pub fn summary_stats(values: &[f64]) -> (f64, f64, f64, f64, f64) {
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let variance = if values.len() > 1 {
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0)
    } else {
        0.0
    };
    let stderr = (variance / m).sqrt();
    (
        mean,
        variance,
        stderr,
        mean - 1.96 * stderr,
        mean + 1.96 * stderr,
    )
}

/// Runs every (n, t) cell and returns one record per metric per cell,
/// ordered by n, then t, then the order of `cfg.metrics`.
pub fn run_estimate(cfg: &ExperimentConfig) -> Result<Vec<EstimateRecord>> {
    cfg.validate()?;
    match cfg.threads {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| run_cells(cfg)),
        None => run_cells(cfg),
    }
}

fn run_cells(cfg: &ExperimentConfig) -> Result<Vec<EstimateRecord>> {
    let poly = sampling_polygon(&cfg.shape)?;
    let region = triangulate_fan(&poly)?;
    let k = poly.len();
    let max_t = *cfg.t_values.iter().max().unwrap();
    let depth = cfg.metrics.iter().any(|m| m.needs_depth());
    let layers = cfg.metrics.iter().any(|m| m.needs_layers());
    let cap = max_t + 1;
    let mut out = Vec::new();
    for &n in &cfg.n_values {
        let seed = cell_seed(cfg.master_seed, n);
        let start = Instant::now();
        let trials: Vec<TrialSummary> = (0..cfg.trials)
            .into_par_iter()
            .map(|j| {
                let xs = sample_uniform(&region, n, &RngStream::new(seed, j as u64));
                summarize_trial(&xs, cap, depth, layers)
            })
            .collect::<Result<_>>()?;
        let seconds = if cfg.record_timing {
            start.elapsed().as_secs_f64()
        } else {
            0.0
        };
        for &t in &cfg.t_values {
            for &metric in &cfg.metrics {
                let values: Vec<f64> = trials.iter().map(|s| s.value(metric, t, k)).collect();
                let (mean, variance, stderr, ci95_low, ci95_high) = summary_stats(&values);
                let bound_value = match metric {
                    Metric::UFirstT => Some(u_first_upper_bound(n, k, t)),
                    Metric::Tau => Some(u_first_upper_bound(n, k, t + 1)),
                    _ => None,
                };
                out.push(EstimateRecord {
                    k,
                    n,
                    t,
                    trials: cfg.trials,
                    metric,
                    mean,
                    variance,
                    stderr,
                    ci95_low,
                    ci95_high,
                    bound_value,
                    seconds,
                    saturated: t >= max_possible_depth(n),
                });
            }
        }
    }
    Ok(out)
}
