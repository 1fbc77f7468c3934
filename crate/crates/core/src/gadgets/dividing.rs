//! The line through p cutting off the corner triangle with p as the midpoint
//! of its hypotenuse. Few points beyond it certify small Tukey depth.

use crate::depth::tukey_depths;
use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::predicates::{orientation, Orientation};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitShape {
    /// [0,1]^2, any corner.
    Square,
    /// (0,0), (1,0), (0,1), corner at the origin only.
    Triangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DividingRegion {
    pub anchor: Point,
    /// Corner triangle: the shape corner, then the two intercepts.
    pub corner: Point,
    pub x_intercept: Point,
    pub y_intercept: Point,
    pub area: f64,
    /// Probability that a uniform point of the shape falls in the triangle.
    pub mass: f64,
}

impl DividingRegion {
    /// Strictly on the corner side of the line.
    pub fn strictly_under(&self, q: Point) -> bool {
        let side = orientation(self.x_intercept, self.y_intercept, q);
        side != Orientation::Collinear
            && side == orientation(self.x_intercept, self.y_intercept, self.corner)
    }
}

/// The corner triangle for `p`. In the square, p is reflected into the
/// quarter [0, 1/2)^2 of its nearest corner; the triangle admits only
/// 0 <= p1, p2 < 1/2.
pub fn dividing_line_region(p: Point, shape: UnitShape) -> Result<DividingRegion> {
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    let out_of_range =
        || Error::InvalidArgument(format!("({}, {}) outside the admissible range", p.x, p.y));
    let pick = |v: f64| -> Result<f64> {
        match shape {
            UnitShape::Triangle if (0.0..0.5).contains(&v) => Ok(0.0),
            UnitShape::Square if (0.0..0.5).contains(&v) => Ok(0.0),
            UnitShape::Square if v > 0.5 && v <= 1.0 => Ok(1.0),
            _ => Err(out_of_range()),
        }
    };
    let (cx, cy) = (pick(p.x)?, pick(p.y)?);
    // 2p - c is exact for c in {0, 1} and p in the admissible range.
    let x_intercept = Point::new(2.0 * p.x - cx, cy);
    let y_intercept = Point::new(cx, 2.0 * p.y - cy);
    let (d1, d2) = ((p.x - cx).abs(), (p.y - cy).abs());
    let area = 2.0 * d1 * d2;
    let mass = match shape {
        UnitShape::Square => area,
        UnitShape::Triangle => 2.0 * area,
    };
    Ok(DividingRegion {
        anchor: p,
        corner: Point::new(cx, cy),
        x_intercept,
        y_intercept,
        area,
        mass,
    })
}

/// Every admissible point with fewer than t other points strictly under its
/// line must have Tukey depth at most t. Returns the points that do not.
pub fn check_dividing_sufficient(xs: &PointSet, t: usize, shape: UnitShape) -> Result<Vec<usize>> {
    let pts = xs.points();
    let depths = tukey_depths(xs)?;
    let mut violations = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        let Ok(region) = dividing_line_region(p, shape) else {
            continue;
        };
        let under = pts
            .iter()
            .enumerate()
            .filter(|&(j, &q)| j != i && region.strictly_under(q))
            .count();
        if under < t && depths[i] > t {
            violations.push(i);
        }
    }
    Ok(violations)
}
