//! Closed-form bounds on expected layer sizes. Logarithms are natural.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Upper,
    /// Leading term of a lower bound; lower-order terms are unknown.
    AsymptoticLower,
    /// Growth scale with no known constant.
    Scale,
    /// Asymptotic value.
    Asymptotic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub value: f64,
    pub kind: BoundKind,
    /// The expectation the value refers to, in terms of the queried t.
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalBounds {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    /// Triangle: E|U_[t-1]| <= 4t ln n + 4t + 10.
    pub triangle_upper: BoundEntry,
    /// Convex k-gon: E|U_[t-1]| <= 4tk ln(n/k) + 4tk + 10k.
    pub kgon_upper: BoundEntry,
    /// Square: E|U_[t]| >= 2 (1 - t^2/(2n)) t ln n + O(1).
    pub square_lower: BoundEntry,
    /// Triangle: E|U_[t]| >= (1/4) (1 - t^2/(2n)) t ln n + O(1).
    pub triangle_lower: BoundEntry,
    /// Convex k-gon: E|V_[t]| = O(k t^3 ln(n/(k t^2))); the scale only.
    pub convex_layer_scale: BoundEntry,
    /// Convex k-gon: E|V_1| ~ (2/3) k ln n.
    pub hull_asymptote: BoundEntry,
}

pub fn theoretical_bounds(n: usize, k: usize, t: usize) -> TheoreticalBounds {
    let (nf, kf, tf) = (n as f64, k as f64, t as f64);
    let ln_n = nf.ln();
    let shrink = 1.0 - tf * tf / (2.0 * nf);
    let entry = |value, kind, target: &str| BoundEntry {
        value,
        kind,
        target: target.into(),
    };
    TheoreticalBounds {
        n,
        k,
        t,
        triangle_upper: entry(
            4.0 * tf * ln_n + 4.0 * tf + 10.0,
            BoundKind::Upper,
            "E|U_[t-1]| (triangle)",
        ),
        kgon_upper: entry(
            4.0 * tf * kf * (nf / kf).ln() + 4.0 * tf * kf + 10.0 * kf,
            BoundKind::Upper,
            "E|U_[t-1]| (convex k-gon)",
        ),
        square_lower: entry(
            2.0 * shrink * tf * ln_n,
            BoundKind::AsymptoticLower,
            "E|U_[t]| (square)",
        ),
        triangle_lower: entry(
            0.25 * shrink * tf * ln_n,
            BoundKind::AsymptoticLower,
            "E|U_[t]| (triangle)",
        ),
        convex_layer_scale: entry(
            kf * tf.powi(3) * (nf / (kf * tf * tf)).ln(),
            BoundKind::Scale,
            "E|V_[t]| (convex k-gon)",
        ),
        hull_asymptote: entry(
            2.0 / 3.0 * kf * ln_n,
            BoundKind::Asymptotic,
            "E|V_1| (convex k-gon)",
        ),
    }
}

/// Upper bound on E|U_[s]| for the unit-area k-gon: the triangle form for
/// k = 3, the k-gon form otherwise, evaluated at t = s + 1.
pub fn u_first_upper_bound(n: usize, k: usize, s: usize) -> f64 {
    let b = theoretical_bounds(n, k, s + 1);
    if k == 3 {
        b.triangle_upper.value
    } else {
        b.kgon_upper.value
    }
}
