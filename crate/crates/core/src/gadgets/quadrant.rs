//! Cells around a point p of the triangle (0,0), (1,0), (0,1), cut by the
//! horizontal and vertical lines through p.
//!
//! The lower-left quadrant is a rectangle split into a t x t grid. The
//! upper-left quadrant is split into t equal-area vertical slices counted
//! from p, each cut into t strips at fixed fractions of its height; the
//! lower-right quadrant mirrors this. The upper-right quadrant is a right
//! triangle cut by 2t-1 equally spaced horizontal and vertical lines into
//! t(2t-1) squares and 2t half-squares. In each quadrant the diagonal cells
//! are the t cells whose two indices agree, counted outward from p.

use crate::depth::{convex_layers, first_t_union};
use crate::error::{Error, Result};
use crate::geometry::{convex_containment, signed_area, Containment, Point, PointSet};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadrantKind {
    LowerLeft,
    UpperLeft,
    LowerRight,
    UpperRight,
}

/// Convex cell, corners counterclockwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub corners: Vec<Point>,
}

impl Cell {
    pub fn area(&self) -> f64 {
        signed_area(&self.corners)
    }

    pub fn contains(&self, p: Point) -> bool {
        convex_containment(&self.corners, p) != Containment::Outside
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quadrant {
    pub kind: QuadrantKind,
    pub cells: Vec<Cell>,
    /// Indices into `cells`, nearest to p first.
    pub diagonal: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadrantPartition {
    pub anchor: Point,
    pub t: usize,
    pub quadrants: Vec<Quadrant>,
}

fn quad(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> Cell {
    Cell {
        corners: [a, b, c, d]
            .iter()
            .map(|&(x, y)| Point::new(x, y))
            .collect(),
    }
}

/// Slice boundaries x_0 = p1 > x_1 > ... > x_t = 0 of equal area under the
/// height h(x) = 1 - x - p2.
fn equal_area_cuts(p1: f64, p2: f64, t: usize) -> Vec<f64> {
    let q = 1.0 - p2;
    let total = q * p1 - 0.5 * p1 * p1;
    (0..=t)
        .map(|a| {
            if a == 0 {
                return p1;
            }
            if a == t {
                return 0.0;
            }
            let target = total * a as f64 / t as f64;
            let c = q * p1 - 0.5 * p1 * p1 - target;
            let disc = (q * q - 2.0 * c).max(0.0);
            (q - disc.sqrt()).clamp(0.0, p1)
        })
        .collect()
}

/// The slanted quadrant on the side of the x axis; the other one is its
/// mirror image under (x, y) -> (y, x).
fn slanted(p1: f64, p2: f64, t: usize, mirror: bool) -> Quadrant {
    let cuts = equal_area_cuts(p1, p2, t);
    let tf = t as f64;
    let mut cells = Vec::with_capacity(t * t);
    let mut diagonal = Vec::with_capacity(t);
    for a in 1..=t {
        let (xl, xr) = (cuts[a], cuts[a - 1]);
        let (hl, hr) = (1.0 - xl - p2, 1.0 - xr - p2);
        for b in 1..=t {
            let (f0, f1) = ((b - 1) as f64 / tf, b as f64 / tf);
            let corners = [
                (xl, p2 + f0 * hl),
                (xr, p2 + f0 * hr),
                (xr, p2 + f1 * hr),
                (xl, p2 + f1 * hl),
            ];
            let mut cell = if mirror {
                let m: Vec<(f64, f64)> = corners.iter().rev().map(|&(x, y)| (y, x)).collect();
                quad(m[0], m[1], m[2], m[3])
            } else {
                quad(corners[0], corners[1], corners[2], corners[3])
            };
            if cell.area() < 0.0 {
                cell.corners.reverse();
            }
            if a == b {
                diagonal.push(cells.len());
            }
            cells.push(cell);
        }
    }
    let kind = if mirror {
        QuadrantKind::LowerRight
    } else {
        QuadrantKind::UpperLeft
    };
    Quadrant {
        kind,
        cells,
        diagonal,
    }
}

fn lower_left(p1: f64, p2: f64, t: usize) -> Quadrant {
    let tf = t as f64;
    let mut cells = Vec::with_capacity(t * t);
    let mut diagonal = Vec::with_capacity(t);
    for a in 1..=t {
        let (x0, x1) = (p1 * (1.0 - a as f64 / tf), p1 * (1.0 - (a - 1) as f64 / tf));
        for b in 1..=t {
            let (y0, y1) = (p2 * (1.0 - b as f64 / tf), p2 * (1.0 - (b - 1) as f64 / tf));
            if a == b {
                diagonal.push(cells.len());
            }
            cells.push(quad((x0, y0), (x1, y0), (x1, y1), (x0, y1)));
        }
    }
    Quadrant {
        kind: QuadrantKind::LowerLeft,
        cells,
        diagonal,
    }
}

fn upper_right(p1: f64, p2: f64, t: usize) -> Quadrant {
    let m = 2 * t;
    let s = (1.0 - p1 - p2) / m as f64;
    let mut cells = Vec::with_capacity(t * (2 * t + 1));
    let mut diagonal = vec![0; t];
    for a in 0..m {
        for b in 0..m - a {
            let (x0, x1) = (p1 + a as f64 * s, p1 + (a + 1) as f64 * s);
            let (y0, y1) = (p2 + b as f64 * s, p2 + (b + 1) as f64 * s);
            if a == b {
                diagonal[a] = cells.len();
            }
            if a + b + 1 == m {
                let corners = vec![Point::new(x0, y0), Point::new(x1, y0), Point::new(x0, y1)];
                cells.push(Cell { corners });
            } else {
                cells.push(quad((x0, y0), (x1, y0), (x1, y1), (x0, y1)));
            }
        }
    }
    Quadrant {
        kind: QuadrantKind::UpperRight,
        cells,
        diagonal,
    }
}

/// Builds the four quadrants around `p`, which must lie strictly inside the
/// triangle (0,0), (1,0), (0,1).
pub fn build_quadrant_cells(p: Point, t: usize) -> Result<QuadrantPartition> {
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    if !(p.x > 0.0 && p.y > 0.0 && p.x + p.y < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "({}, {}) is not strictly inside the triangle",
            p.x, p.y
        )));
    }
    let quadrants = vec![
        lower_left(p.x, p.y, t),
        slanted(p.x, p.y, t, false),
        slanted(p.y, p.x, t, true),
        upper_right(p.x, p.y, t),
    ];
    Ok(QuadrantPartition {
        anchor: p,
        t,
        quadrants,
    })
}

/// For each point on the first t convex layers, some diagonal cell around
/// it holds no other point. Returns the indices where every diagonal cell
/// is occupied.
pub fn check_diag_lemma(xs: &PointSet, t: usize) -> Result<Vec<usize>> {
    let pts = xs.points();
    if let Some(p) = pts
        .iter()
        .find(|p| !(p.x > 0.0 && p.y > 0.0 && p.x + p.y < 1.0))
    {
        return Err(Error::InvalidArgument(format!(
            "({}, {}) is not strictly inside the triangle",
            p.x, p.y
        )));
    }
    if let Some(&i) = xs.duplicated_indices().first() {
        return Err(Error::Duplicate(i));
    }
    let mut violations = Vec::new();
    for i in first_t_union(&convex_layers(xs), t) {
        let part = build_quadrant_cells(pts[i], t)?;
        let some_empty = part.quadrants.iter().any(|q| {
            q.diagonal.iter().any(|&c| {
                let cell = &q.cells[c];
                !pts.iter()
                    .enumerate()
                    .any(|(j, &r)| j != i && cell.contains(r))
            })
        });
        if !some_empty {
            violations.push(i);
        }
    }
    Ok(violations)
}
