use super::EstimateRecord;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

/// Least squares of record means against ln n. Records must share k, t and
/// metric, with at least three distinct n.
pub fn fit_log_slope(records: &[EstimateRecord]) -> Result<FitResult> {
    if records.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 records, got {}",
            records.len()
        )));
    }
    let r0 = &records[0];
    if records
        .iter()
        .any(|r| r.k != r0.k || r.t != r0.t || r.metric != r0.metric)
    {
        return Err(Error::InvalidArgument(
            "records differ in k, t or metric".into(),
        ));
    }
    let mut ns: Vec<usize> = records.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() != records.len() {
        return Err(Error::InvalidArgument(
            "sample sizes must be distinct".into(),
        ));
    }
    let xs: Vec<f64> = records.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.mean).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Degenerate("design has no spread in ln n".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        points_used: records.len(),
    })
}
