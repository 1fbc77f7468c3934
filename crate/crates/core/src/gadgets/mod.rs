//! Concrete versions of the counting constructions used to bound expected
//! layer sizes, each with a checker for the claim it supports.

mod dividing;
mod grid;
mod quadrant;

pub use dividing::{check_dividing_sufficient, dividing_line_region, DividingRegion, UnitShape};
pub use grid::{
    build_triangle_grid, cell_index, row_order_statistics, RowOrderStats, TriangleGrid,
};
pub use quadrant::{
    build_quadrant_cells, check_diag_lemma, Cell, Quadrant, QuadrantKind, QuadrantPartition,
};

use crate::depth::tukey_layers;
use crate::error::Result;
use crate::geometry::{
    convex_hull, point_vs_chain, split_hull, ChainSide, DegenerateHull, Hull, Point, PointSet,
};
use serde::{Deserialize, Serialize};

/// Points strictly inside each open quadrant around a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrantCounts {
    pub upper_left: usize,
    pub upper_right: usize,
    pub lower_left: usize,
    pub lower_right: usize,
}

pub fn quadrant_counts(p: Point, xs: &PointSet) -> QuadrantCounts {
    let mut c = QuadrantCounts {
        upper_left: 0,
        upper_right: 0,
        lower_left: 0,
        lower_right: 0,
    };
    for q in xs.points() {
        match (q.x < p.x, q.x > p.x, q.y < p.y, q.y > p.y) {
            (true, _, _, true) => c.upper_left += 1,
            (_, true, _, true) => c.upper_right += 1,
            (true, _, true, _) => c.lower_left += 1,
            (_, true, true, _) => c.lower_right += 1,
            _ => {}
        }
    }
    c
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub violations: Vec<usize>,
    /// Set when the check had nothing to test.
    pub skipped: bool,
}

/// A point with at least `t` points in both upper quadrants is not above the
/// upper hull of Tukey layer `t`; likewise for the lower quadrants and the
/// lower hull. Returns the points breaking either claim.
pub fn check_upper_hull_lemma(xs: &PointSet, t: usize) -> Result<ViolationReport> {
    let tukey = tukey_layers(xs)?;
    let layer = tukey.layer(t);
    if t == 0 || layer.is_empty() {
        return Ok(ViolationReport {
            violations: Vec::new(),
            skipped: true,
        });
    }
    let (upper, lower) = match convex_hull(&xs.select(layer))? {
        hull @ Hull::Polygon(_) => {
            let c = split_hull(&hull)?;
            (c.upper, c.lower)
        }
        Hull::Degenerate(DegenerateHull::Point(p)) => (vec![p], vec![p]),
        Hull::Degenerate(DegenerateHull::Segment(a, b)) => (vec![a, b], vec![a, b]),
    };
    let mut violations = Vec::new();
    for (i, &p) in xs.points().iter().enumerate() {
        let q = quadrant_counts(p, xs);
        let above = q.upper_left >= t
            && q.upper_right >= t
            && point_vs_chain(p, &upper)? == ChainSide::Above;
        let below = q.lower_left >= t
            && q.lower_right >= t
            && point_vs_chain(p, &lower)? == ChainSide::Below;
        if above || below {
            violations.push(i);
        }
    }
    Ok(ViolationReport {
        violations,
        skipped: false,
    })
}
