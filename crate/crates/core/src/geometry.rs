//! Points, convex polygons, hulls and chain queries.

use crate::error::{Error, Result};
use crate::predicates::{orientation, Orientation};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic order by (x, y). Signed zeros compare equal.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        let c = |a: f64, b: f64| a.partial_cmp(&b).unwrap_or(Ordering::Equal);
        c(self.x, other.x).then(c(self.y, other.y))
    }

    pub(crate) fn sub(self, o: Point) -> (f64, f64) {
        (self.x - o.x, self.y - o.y)
    }
}

/// An ordered, finite point sequence. Duplicates are allowed; indices are
/// stable identifiers.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(PointSet { points })
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> Result<Point> {
        self.points.get(i).copied().ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.points.len(),
        })
    }

    /// Subset in the order of `indices`.
    pub fn select(&self, indices: &[usize]) -> PointSet {
        PointSet {
            points: indices.iter().map(|&i| self.points[i]).collect(),
        }
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// Indices of points that share coordinates with another point.
    pub fn duplicated_indices(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.points[a].lex_cmp(&self.points[b]));
        let mut dup = Vec::new();
        for w in order.windows(2) {
            if self.points[w[0]] == self.points[w[1]] {
                dup.push(w[0]);
                dup.push(w[1]);
            }
        }
        dup.sort_unstable();
        dup.dedup();
        dup
    }
}

impl TryFrom<Vec<Point>> for PointSet {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        PointSet::new(v)
    }
}

impl From<PointSet> for Vec<Point> {
    fn from(s: PointSet) -> Self {
        s.points
    }
}

/// Strictly convex polygon, vertices counterclockwise, no repeats.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    /// Validates strict convexity and counterclockwise order.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        let k = vertices.len();
        if k < 3 {
            return Err(Error::Degenerate(format!("polygon with {k} vertices")));
        }
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            for (j, &c) in vertices.iter().enumerate() {
                if j != i && j != (i + 1) % k && orientation(a, b, c) != Orientation::Left {
                    return Err(Error::Degenerate(
                        "vertices are not in strictly convex counterclockwise position".into(),
                    ));
                }
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub(crate) fn new_unchecked(vertices: Vec<Point>) -> Self {
        ConvexPolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }

    pub fn contains(&self, p: Point) -> Containment {
        convex_containment(&self.vertices, p)
    }
}

/// Hull of a point set with fewer than three non-collinear points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DegenerateHull {
    Point(Point),
    /// Endpoints in lexicographic order.
    Segment(Point, Point),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Hull {
    Polygon(ConvexPolygon),
    Degenerate(DegenerateHull),
}

impl Hull {
    pub fn vertices(&self) -> Vec<Point> {
        match self {
            Hull::Polygon(p) => p.vertices.clone(),
            Hull::Degenerate(DegenerateHull::Point(p)) => vec![*p],
            Hull::Degenerate(DegenerateHull::Segment(a, b)) => vec![*a, *b],
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Hull::Polygon(p) => p.area(),
            Hull::Degenerate(_) => 0.0,
        }
    }

    pub fn contains(&self, p: Point) -> Containment {
        match self {
            Hull::Polygon(poly) => poly.contains(p),
            Hull::Degenerate(DegenerateHull::Point(q)) => {
                if *q == p {
                    Containment::Boundary
                } else {
                    Containment::Outside
                }
            }
            Hull::Degenerate(DegenerateHull::Segment(a, b)) => {
                if orientation(*a, *b, p) == Orientation::Collinear
                    && a.lex_cmp(&p) != Ordering::Greater
                    && p.lex_cmp(b) != Ordering::Greater
                {
                    Containment::Boundary
                } else {
                    Containment::Outside
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// Closed containment in a counterclockwise convex polygon, exact.
pub(crate) fn convex_containment(vertices: &[Point], p: Point) -> Containment {
    let k = vertices.len();
    let mut on_edge = false;
    for i in 0..k {
        match orientation(vertices[i], vertices[(i + 1) % k], p) {
            Orientation::Right => return Containment::Outside,
            Orientation::Collinear => on_edge = true,
            Orientation::Left => {}
        }
    }
    if on_edge {
        Containment::Boundary
    } else {
        Containment::Inside
    }
}

/// Convex hull with collinear boundary points dropped. Vertices are
/// counterclockwise starting at the lexicographically smallest point.
pub fn convex_hull(xs: &PointSet) -> Result<Hull> {
    if xs.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut pts = xs.points().to_vec();
    pts.sort_by(Point::lex_cmp);
    pts.dedup();
    let order: Vec<usize> = (0..pts.len()).collect();
    let chain = monotone_chain(&pts, &order);
    Ok(match chain.len() {
        1 => Hull::Degenerate(DegenerateHull::Point(pts[0])),
        2 => Hull::Degenerate(DegenerateHull::Segment(pts[chain[0]], pts[chain[1]])),
        _ => Hull::Polygon(ConvexPolygon::new_unchecked(
            chain.iter().map(|&i| pts[i]).collect(),
        )),
    })
}

/// Andrew's monotone chain over `order`, which must list distinct points in
/// lexicographic order. Returns the extreme members counterclockwise starting
/// at the first; two entries when all points are collinear.
pub(crate) fn monotone_chain(pts: &[Point], order: &[usize]) -> Vec<usize> {
    let n = order.len();
    if n <= 2 {
        return order.to_vec();
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    for &i in order {
        while hull.len() >= 2
            && orientation(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i])
                != Orientation::Left
        {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orientation(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i])
                != Orientation::Left
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// Signed shoelace area; positive for counterclockwise order.
pub fn signed_area(vertices: &[Point]) -> f64 {
    let k = vertices.len();
    if k < 3 {
        return 0.0;
    }
    let o = vertices[0];
    let mut s = 0.0;
    for i in 1..k - 1 {
        let (ax, ay) = vertices[i].sub(o);
        let (bx, by) = vertices[i + 1].sub(o);
        s += ax * by - ay * bx;
    }
    0.5 * s
}

/// Unsigned shoelace area of a simple polygon.
pub fn polygon_area(vertices: &[Point]) -> f64 {
    signed_area(vertices).abs()
}

/// Upper and lower hull chains, both in clockwise order. The upper chain
/// runs from the leftmost vertex (ties: largest y) to the rightmost vertex
/// (ties: largest y); the lower chain from the rightmost (ties: smallest y)
/// to the leftmost (ties: smallest y).
#[derive(Clone, Debug, PartialEq)]
pub struct Chains {
    pub upper: Vec<Point>,
    pub lower: Vec<Point>,
}

pub fn split_hull(hull: &Hull) -> Result<Chains> {
    let poly = match hull {
        Hull::Polygon(p) => p,
        Hull::Degenerate(_) => return Err(Error::Degenerate("hull has no area".into())),
    };
    let v = poly.vertices();
    let k = v.len();
    let pick = |better: &dyn Fn(Point, Point) -> bool| {
        (1..k).fold(0, |best, i| if better(v[i], v[best]) { i } else { best })
    };
    let left_top = pick(&|a, b| a.x < b.x || (a.x == b.x && a.y > b.y));
    let left_bot = pick(&|a, b| a.x < b.x || (a.x == b.x && a.y < b.y));
    let right_top = pick(&|a, b| a.x > b.x || (a.x == b.x && a.y > b.y));
    let right_bot = pick(&|a, b| a.x > b.x || (a.x == b.x && a.y < b.y));
    // Counterclockwise walks, reversed into clockwise order.
    let walk = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(v[i]);
            if i == to {
                break;
            }
            i = (i + 1) % k;
        }
        out.reverse();
        out
    };
    Ok(Chains {
        upper: walk(right_top, left_top),
        lower: walk(left_bot, right_bot),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainSide {
    Above,
    On,
    Below,
    OutsideXRange,
}

/// Position of `p` relative to an x-monotone chain, found by the vertical
/// line through `p`. The chain may run in either x direction. On a vertical
/// step the point is On when it lies on the step.
pub fn point_vs_chain(p: Point, chain: &[Point]) -> Result<ChainSide> {
    if chain.is_empty() {
        return Err(Error::InvalidArgument("empty chain".into()));
    }
    let mut c: Vec<Point> = chain.to_vec();
    if c[0].x > c[c.len() - 1].x {
        c.reverse();
    }
    let (first, last) = (c[0], c[c.len() - 1]);
    if p.x < first.x || p.x > last.x {
        return Ok(ChainSide::OutsideXRange);
    }
    let vertical = |lo: f64, hi: f64| {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        if p.y > hi {
            ChainSide::Above
        } else if p.y < lo {
            ChainSide::Below
        } else {
            ChainSide::On
        }
    };
    if c.len() == 1 || first.x == last.x {
        let (lo, hi) = c
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| {
                (lo.min(q.y), hi.max(q.y))
            });
        return Ok(vertical(lo, hi));
    }
    // First edge whose right end is at or beyond p.x.
    let j = c.partition_point(|q| q.x < p.x).clamp(1, c.len() - 1);
    let (a, b) = (c[j - 1], c[j]);
    if a.x == b.x {
        return Ok(vertical(a.y, b.y));
    }
    Ok(match orientation(a, b, p) {
        Orientation::Left => ChainSide::Above,
        Orientation::Right => ChainSide::Below,
        Orientation::Collinear => ChainSide::On,
    })
}
