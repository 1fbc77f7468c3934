//! The n x n fan grid of a triangle: n equal-area columns from the apex,
//! cut into n equal-area rows by chords parallel to the base.

use crate::depth::direction_groups;
use crate::error::{Error, Result};
use crate::geometry::{signed_area, Point, PointSet};
use crate::predicates::{orientation, Orientation};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleGrid {
    /// Apex, then the base endpoints; column 1 touches `triangle[1]`.
    pub triangle: [Point; 3],
    pub n: usize,
}

pub fn build_triangle_grid(triangle: [Point; 3], n: usize) -> Result<TriangleGrid> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "grid resolution must be at least 1".into(),
        ));
    }
    if triangle.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    if orientation(triangle[0], triangle[1], triangle[2]) == Orientation::Collinear {
        return Err(Error::Degenerate("collinear triangle".into()));
    }
    Ok(TriangleGrid { triangle, n })
}

impl TriangleGrid {
    /// Grid vertex on chord `level` (0 = apex, n = base) and fan boundary
    /// `boundary` (0 = edge to `triangle[1]`, n = edge to `triangle[2]`).
    pub fn vertex(&self, level: usize, boundary: usize) -> Point {
        let [a, b, c] = self.triangle;
        let n = self.n as f64;
        let s = (level as f64 / n).sqrt();
        let u = boundary as f64 / n;
        let bx = b.x + u * (c.x - b.x);
        let by = b.y + u * (c.y - b.y);
        Point::new(a.x + s * (bx - a.x), a.y + s * (by - a.y))
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::InvalidArgument(format!(
                "cell ({i},{j}) outside 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    /// Counterclockwise corners of cell (row i, column j), 1-based. Row 1
    /// cells are triangles, the rest trapezoids.
    pub fn cell(&self, i: usize, j: usize) -> Result<Vec<Point>> {
        self.check(i, j)?;
        let mut v = vec![
            self.vertex(i - 1, j - 1),
            self.vertex(i, j - 1),
            self.vertex(i, j),
        ];
        if i > 1 {
            v.push(self.vertex(i - 1, j));
        }
        if signed_area(&v) < 0.0 {
            v.reverse();
        }
        Ok(v)
    }

    pub fn cell_area(&self) -> f64 {
        signed_area(&self.triangle).abs() / (self.n * self.n) as f64
    }

    /// Barycentric position: chord scale s in [0,1] and base fraction u.
    fn coords(&self, p: Point) -> Option<(f64, f64)> {
        let [a, b, c] = self.triangle;
        let (e1x, e1y) = (b.x - a.x, b.y - a.y);
        let (e2x, e2y) = (c.x - a.x, c.y - a.y);
        let (px, py) = (p.x - a.x, p.y - a.y);
        let det = e1x * e2y - e1y * e2x;
        let alpha = (px * e2y - py * e2x) / det;
        let beta = (e1x * py - e1y * px) / det;
        let tol = 1e-12;
        if alpha < -tol || beta < -tol || alpha + beta > 1.0 + tol {
            return None;
        }
        let s = (alpha + beta).clamp(0.0, 1.0);
        let u = if s > 0.0 {
            (beta / s).clamp(0.0, 1.0)
        } else {
            0.0
        };
        Some((s, u))
    }

    /// Cell (row, column) containing `p`. Points on a shared boundary go to
    /// the larger row, then the larger column. `None` outside the triangle.
    pub fn locate(&self, p: Point) -> Option<(usize, usize)> {
        let (s, u) = self.coords(p)?;
        let n = self.n as f64;
        let row = ((s * s * n).floor() as usize + 1).min(self.n);
        let col = ((u * n).floor() as usize + 1).min(self.n);
        Some((row, col))
    }

    pub fn cell_index(&self, i: usize, l: usize, j: usize) -> Result<usize> {
        cell_index(self.n, i, l, j)
    }
}

/// Numbering relative to a distinguished column j: the left block row by
/// row, then the right block row by row, then column j top to bottom.
pub fn cell_index(n: usize, i: usize, l: usize, j: usize) -> Result<usize> {
    if [i, l, j].iter().any(|&v| v == 0 || v > n) {
        return Err(Error::InvalidArgument(format!(
            "indices ({i},{l},{j}) outside 1..={n}"
        )));
    }
    Ok(if l < j {
        (j - 1) * (i - 1) + l
    } else if l > j {
        (j - 1) * n + (n - j) * (i - 1) + (l - j)
    } else {
        (n - 1) * n + i
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowOrderStats {
    /// Row of the t-th point from the apex among columns left of j (n if
    /// there are fewer than t such points).
    pub i1: usize,
    /// Same for the columns right of j.
    pub i2: usize,
    /// Deepest row of column j with a cell cut off towards the apex.
    pub zj: usize,
}

/// Order statistics of the rows occupied left and right of column j, and
/// the deepest cell of column j that lies outside the depth-t region on the
/// apex side.
///
/// A cell counts as cut off when one of its corners c admits a line through
/// c with fewer than t points of `xs` on the open side containing the apex.
/// With the apex at the top this is the cell lying above the upper hull of
/// Tukey layer t; for a slanted column it fixes the meaning of "above".
pub fn row_order_statistics(
    grid: &TriangleGrid,
    xs: &PointSet,
    j: usize,
    t: usize,
) -> Result<RowOrderStats> {
    let n = grid.n;
    if !(1 < j && j < n) {
        return Err(Error::InvalidArgument(format!(
            "need 1 < j < n, got j = {j}, n = {n}"
        )));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let mut left_rows = Vec::new();
    let mut right_rows = Vec::new();
    for &p in xs.points() {
        let (row, col) = grid
            .locate(p)
            .ok_or_else(|| Error::InvalidArgument("point outside the grid triangle".into()))?;
        if col < j {
            left_rows.push(row);
        } else if col > j {
            right_rows.push(row);
        }
    }
    let kth = |mut rows: Vec<usize>| {
        rows.sort_unstable();
        rows.get(t - 1).copied().unwrap_or(n)
    };
    let i1 = kth(left_rows);
    let i2 = kth(right_rows);
    let apex = grid.triangle[0];
    let pts = xs.points();
    let mut zj = 0;
    'rows: for i in (1..=n).rev() {
        for level in [i - 1, i] {
            for boundary in [j - 1, j] {
                let c = grid.vertex(level, boundary);
                if apex_side_depth(c, apex, pts) < t {
                    zj = i;
                    break 'rows;
                }
            }
        }
    }
    Ok(RowOrderStats { i1, i2, zj })
}

/// Fewest points in an open half-plane bounded by a line through `c` and
/// containing `toward`, where lines through `toward` count as limits from
/// either side.
pub(crate) fn apex_side_depth(c: Point, toward: Point, pts: &[Point]) -> usize {
    if c == toward {
        return 0;
    }
    let others: Vec<Point> = pts.iter().copied().filter(|&q| q != c).collect();
    let (mut left, mut right, mut ray) = (0, 0, 0);
    for &q in &others {
        match orientation(c, toward, q) {
            Orientation::Left => left += 1,
            Orientation::Right => right += 1,
            Orientation::Collinear => {
                let same = (q.x - c.x) * (toward.x - c.x) + (q.y - c.y) * (toward.y - c.y) > 0.0;
                if same {
                    ray += 1;
                }
            }
        }
    }
    let mut best = (left + ray).min(right + ray);
    for g in direction_groups(c, &others) {
        match orientation(c, g.rep, toward) {
            Orientation::Left => best = best.min(g.left),
            Orientation::Right => best = best.min(g.right),
            Orientation::Collinear => {}
        }
    }
    best
}
