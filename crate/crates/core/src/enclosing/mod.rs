//! Smallest enclosing shapes after discarding t outliers.

mod parallelogram;

pub use parallelogram::{min_area_parallelogram, Parallelogram};

use crate::depth::{convex_layers, first_t_union, tukey_depths};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, Hull, PointSet};
use parallelogram::degenerate_parallelogram;
use serde::{Deserialize, Serialize};

/// Largest number of exclusion subsets either search will enumerate.
pub const MAX_SUBSETS: u64 = 2_000_000;
/// Largest input the exhaustive searches accept.
pub const MAX_ORACLE_POINTS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Exclusions drawn from the candidate layers only.
    Pruned,
    /// Every t-subset.
    Oracle,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pruned" => Ok(SearchMode::Pruned),
            "oracle" => Ok(SearchMode::Oracle),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnclosingShape {
    Hull(Hull),
    Parallelogram(Parallelogram),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnclosingResult {
    /// Sorted; the lexicographically smallest optimal set.
    pub excluded: Vec<usize>,
    pub shape: EnclosingShape,
    pub area: f64,
    pub candidates_considered: usize,
    pub subsets_evaluated: u64,
    /// Points of Tukey depth at most t + 1 (parallelogram search only).
    pub tau: Option<usize>,
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advances `c` (strictly increasing positions below `m`) to the next
/// combination in lexicographic order. False when exhausted.
fn next_combination(c: &mut [usize], m: usize) -> bool {
    let t = c.len();
    let mut i = t;
    while i > 0 {
        i -= 1;
        if c[i] < m - t + i {
            c[i] += 1;
            for k in i + 1..t {
                c[k] = c[k - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn search<S>(
    xs: &PointSet,
    t: usize,
    mode: SearchMode,
    pruned_candidates: impl FnOnce() -> Result<Vec<usize>>,
    objective: impl Fn(&PointSet) -> Result<(f64, S)>,
) -> Result<(Vec<usize>, S, f64, usize, u64)> {
    let n = xs.len();
    if n < t + 3 {
        return Err(Error::InvalidArgument(format!(
            "need n - t >= 3, got n = {n}, t = {t}"
        )));
    }
    let candidates = match mode {
        SearchMode::Oracle => {
            if n > MAX_ORACLE_POINTS || binomial(n, t) > MAX_SUBSETS {
                return Err(Error::TooLarge(format!(
                    "exhaustive search over C({n},{t}) subsets; limits are n <= {MAX_ORACLE_POINTS} and {MAX_SUBSETS} subsets"
                )));
            }
            (0..n).collect()
        }
        SearchMode::Pruned => pruned_candidates()?,
    };
    let m = candidates.len();
    if binomial(m, t) > MAX_SUBSETS {
        return Err(Error::TooLarge(format!(
            "C({m},{t}) candidate subsets exceed {MAX_SUBSETS}"
        )));
    }
    let mut pick: Vec<usize> = (0..t).collect();
    let mut best: Option<(f64, Vec<usize>, S)> = None;
    let mut evaluated = 0u64;
    let mut excluded = vec![false; n];
    loop {
        let chosen: Vec<usize> = pick.iter().map(|&k| candidates[k]).collect();
        for &i in &chosen {
            excluded[i] = true;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| !excluded[i]).collect();
        for &i in &chosen {
            excluded[i] = false;
        }
        let (area, shape) = objective(&xs.select(&rest))?;
        evaluated += 1;
        if best.as_ref().is_none_or(|(b, _, _)| area < *b) {
            best = Some((area, chosen, shape));
        }
        if t == 0 || !next_combination(&mut pick, m) {
            break;
        }
    }
    let (area, excluded, shape) = best.expect("at least one subset is evaluated");
    Ok((excluded, shape, area, m, evaluated))
}

/// Minimum hull area after removing `t` points. Pruned mode only removes
/// points of the first `t` convex layers.
pub fn min_area_hull_excluding(
    xs: &PointSet,
    t: usize,
    mode: SearchMode,
) -> Result<EnclosingResult> {
    let (excluded, hull, area, considered, evaluated) = search(
        xs,
        t,
        mode,
        || Ok(first_t_union(&convex_layers(xs), t)),
        |rest| {
            let h = convex_hull(rest)?;
            Ok((h.area(), h))
        },
    )?;
    Ok(EnclosingResult {
        excluded,
        shape: EnclosingShape::Hull(hull),
        area,
        candidates_considered: considered,
        subsets_evaluated: evaluated,
        tau: None,
    })
}

/// Minimum enclosing parallelogram area after removing `t` points. Pruned
/// mode only removes points of Tukey depth at most t + 1.
pub fn min_area_parallelogram_excluding(
    xs: &PointSet,
    t: usize,
    mode: SearchMode,
) -> Result<EnclosingResult> {
    let depths = tukey_depths(xs)?;
    let shallow: Vec<usize> = (0..xs.len()).filter(|&i| depths[i] <= t + 1).collect();
    let tau = shallow.len();
    let (excluded, para, area, considered, evaluated) = search(
        xs,
        t,
        mode,
        || Ok(shallow),
        |rest| match convex_hull(rest)? {
            Hull::Polygon(_) => {
                let p = min_area_parallelogram(rest)?;
                Ok((p.area, p))
            }
            Hull::Degenerate(d) => Ok((0.0, degenerate_parallelogram(&d))),
        },
    )?;
    Ok(EnclosingResult {
        excluded,
        shape: EnclosingShape::Parallelogram(para),
        area,
        candidates_considered: considered,
        subsets_evaluated: evaluated,
        tau: Some(tau),
    })
}

/// Measured candidate sizes and the running-time expressions they feed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub n: usize,
    pub t: usize,
    /// Points on the first t convex layers.
    pub v_first_t: usize,
    /// Points of Tukey depth at most t + 1.
    pub tau: usize,
    /// t^3 tau^2 + n^2 ln n.
    pub parallelogram_cost: f64,
    /// n ln n + C(4t, 2t) (3t)^t |V_[t]|.
    pub hull_cost: f64,
}

pub fn complexity_profile(xs: &PointSet, t: usize) -> Result<ComplexityProfile> {
    let n = xs.len();
    let v_first_t = first_t_union(&convex_layers(xs), t).len();
    let tau = tukey_depths(xs)?.iter().filter(|&&d| d <= t + 1).count();
    let nf = n as f64;
    let nlog = if n > 0 { nf.ln() } else { 0.0 };
    let tf = t as f64;
    Ok(ComplexityProfile {
        n,
        t,
        v_first_t,
        tau,
        parallelogram_cost: tf.powi(3) * (tau as f64).powi(2) + nf * nf * nlog,
        hull_cost: nf * nlog
            + binomial(4 * t, 2 * t) as f64 * (3.0 * tf).powi(t as i32) * v_first_t as f64,
    })
}
