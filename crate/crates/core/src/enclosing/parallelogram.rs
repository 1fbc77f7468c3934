//! Minimum-area enclosing parallelogram.
//!
//! For a fixed first side direction, the area as a function of the second
//! normal direction is width(n2) / |sin(n1, n2)| up to a constant. Between
//! two consecutive hull edge normals the width is R cos(phi - beta) for a
//! fixed antipodal pair, and the ratio is monotone, so the minimum sits at
//! an edge normal. The same holds for the first direction with the second
//! fixed, so an optimal parallelogram has both side pairs flush with hull
//! edges, and trying every pair of edge normals is exact.

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, DegenerateHull, Hull, Point, PointSet};
use serde::{Deserialize, Serialize};

/// Corners: corner, corner + u, corner + u + v, corner + v.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parallelogram {
    pub corner: Point,
    pub edge_u: (f64, f64),
    pub edge_v: (f64, f64),
    pub area: f64,
}

impl Parallelogram {
    pub fn corners(&self) -> [Point; 4] {
        let c = self.corner;
        let (u, v) = (self.edge_u, self.edge_v);
        [
            c,
            Point::new(c.x + u.0, c.y + u.1),
            Point::new(c.x + u.0 + v.0, c.y + u.1 + v.1),
            Point::new(c.x + v.0, c.y + v.1),
        ]
    }

    /// Closed containment with a relative slack `tol` in the (u, v) frame.
    /// The corners come from intersecting support lines in floating point, so
    /// points on the sides may land a rounding error outside.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        let (u, v) = (self.edge_u, self.edge_v);
        let det = u.0 * v.1 - u.1 * v.0;
        let (dx, dy) = (p.x - self.corner.x, p.y - self.corner.y);
        if det == 0.0 {
            // Degenerate: a segment along u (or v) from the corner.
            let (ex, ey) = if u != (0.0, 0.0) { u } else { v };
            let len2 = ex * ex + ey * ey;
            if len2 == 0.0 {
                return dx.abs() <= tol && dy.abs() <= tol;
            }
            let s = (dx * ex + dy * ey) / len2;
            let off = (dx * ey - dy * ex).abs() / len2.sqrt();
            return (-tol..=1.0 + tol).contains(&s) && off <= tol * len2.sqrt().max(1.0);
        }
        let a = (dx * v.1 - dy * v.0) / det;
        let b = (u.0 * dy - u.1 * dx) / det;
        (-tol..=1.0 + tol).contains(&a) && (-tol..=1.0 + tol).contains(&b)
    }
}

fn support(n: (f64, f64), pts: &[Point]) -> (f64, f64) {
    pts.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            let d = n.0 * p.x + n.1 * p.y;
            (lo.min(d), hi.max(d))
        })
}

fn intersect(a: (f64, f64), s: f64, b: (f64, f64), r: f64) -> Point {
    let det = a.0 * b.1 - a.1 * b.0;
    Point::new((s * b.1 - a.1 * r) / det, (a.0 * r - s * b.0) / det)
}

/// Parallelogram whose sides are the support lines normal to `a` and `b`.
pub(crate) fn strip_parallelogram(a: (f64, f64), b: (f64, f64), pts: &[Point]) -> Parallelogram {
    let (lo_a, hi_a) = support(a, pts);
    let (lo_b, hi_b) = support(b, pts);
    let c = intersect(a, lo_a, b, lo_b);
    let pu = intersect(a, hi_a, b, lo_b);
    let pv = intersect(a, lo_a, b, hi_b);
    let cross = (a.0 * b.1 - a.1 * b.0).abs();
    Parallelogram {
        corner: c,
        edge_u: (pu.x - c.x, pu.y - c.y),
        edge_v: (pv.x - c.x, pv.y - c.y),
        area: (hi_a - lo_a) * (hi_b - lo_b) / cross,
    }
}

/// Smallest enclosing parallelogram. Errors when all points are collinear.
pub fn min_area_parallelogram(xs: &PointSet) -> Result<Parallelogram> {
    let poly = match convex_hull(xs)? {
        Hull::Polygon(p) => p,
        Hull::Degenerate(_) => return Err(Error::Degenerate("all points are collinear".into())),
    };
    let v = poly.vertices();
    let k = v.len();
    // Unit edge normals ordered by angle in [0, pi), one per direction.
    let mut normals: Vec<(f64, (f64, f64))> = (0..k)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % k]);
            let (ex, ey) = (b.x - a.x, b.y - a.y);
            let len = ex.hypot(ey);
            let (mut nx, mut ny) = (ey / len, -ex / len);
            if ny < 0.0 || (ny == 0.0 && nx < 0.0) {
                nx = -nx;
                ny = -ny;
            }
            (ny.atan2(nx), (nx, ny))
        })
        .collect();
    normals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let widths: Vec<f64> = normals
        .iter()
        .map(|&(_, n)| {
            let (lo, hi) = support(n, v);
            hi - lo
        })
        .collect();
    let mut best: Option<(f64, usize, usize)> = None;
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            let (a, b) = (normals[i].1, normals[j].1);
            let cross = (a.0 * b.1 - a.1 * b.0).abs();
            if cross < 1e-12 {
                continue;
            }
            let area = widths[i] * widths[j] / cross;
            if best.is_none_or(|(ba, _, _)| area < ba) {
                best = Some((area, i, j));
            }
        }
    }
    let (_, i, j) = best.expect("a polygon has two non-parallel edges");
    Ok(strip_parallelogram(normals[i].1, normals[j].1, v))
}

/// Zero-area parallelogram covering a degenerate hull.
pub(crate) fn degenerate_parallelogram(h: &DegenerateHull) -> Parallelogram {
    match *h {
        DegenerateHull::Point(p) => Parallelogram {
            corner: p,
            edge_u: (0.0, 0.0),
            edge_v: (0.0, 0.0),
            area: 0.0,
        },
        DegenerateHull::Segment(a, b) => Parallelogram {
            corner: a,
            edge_u: (b.x - a.x, b.y - a.y),
            edge_v: (0.0, 0.0),
            area: 0.0,
        },
    }
}
