//! Plain-text point files: one `x,y` pair per line, `#` starts a comment
//! line, blank lines are skipped. Output uses the shortest decimal that
//! round-trips each coordinate.

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use std::fmt::Write as _;
use std::path::Path;

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut pts = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::Parse {
            line: lineno + 1,
            reason,
        };
        let mut parts = line.split(',');
        let (Some(xs), Some(ys), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(format!("expected `x,y`, got {line:?}")));
        };
        let x: f64 = xs.trim().parse().map_err(|e| bad(format!("{xs:?}: {e}")))?;
        let y: f64 = ys.trim().parse().map_err(|e| bad(format!("{ys:?}: {e}")))?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(bad("non-finite coordinate".into()));
        }
        pts.push(Point::new(x, y));
    }
    PointSet::new(pts)
}

pub fn format_points(xs: &PointSet) -> String {
    let mut s = String::with_capacity(xs.len() * 40);
    for p in xs.points() {
        let _ = writeln!(s, "{},{}", fmt_f64(p.x), fmt_f64(p.y));
    }
    s
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_points(&text)
}

pub fn write_points(path: &Path, xs: &PointSet) -> Result<()> {
    std::fs::write(path, format_points(xs)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Shortest round-trip representation.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}
