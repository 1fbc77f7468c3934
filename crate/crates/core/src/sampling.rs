//! Reference polygons, triangulation and seeded uniform sampling.

use crate::error::{Error, Result};
use crate::geometry::{signed_area, ConvexPolygon, Point, PointSet};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Regular k-gon centred at the origin with one vertex on the positive x axis.
pub fn regular_kgon(k: usize, area: f64) -> Result<ConvexPolygon> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("k = {k}, need k >= 3")));
    }
    if !(area.is_finite() && area > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "area = {area}, need a positive value"
        )));
    }
    let kf = k as f64;
    let r = (2.0 * area / (kf * (2.0 * PI / kf).sin())).sqrt();
    let vertices = (0..k)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / kf;
            Point::new(r * a.cos(), r * a.sin())
        })
        .collect();
    ConvexPolygon::new(vertices)
}

/// The unit square [0,1]^2.
pub fn unit_square() -> ConvexPolygon {
    ConvexPolygon::new_unchecked(vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ])
}

/// The triangle with corners (0,0), (1,0), (0,1).
pub fn unit_right_triangle() -> ConvexPolygon {
    ConvexPolygon::new_unchecked(vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
    ])
}

/// Fan triangulation with normalised cumulative masses.
#[derive(Clone, Debug)]
pub struct TriangulatedRegion {
    source: ConvexPolygon,
    triangles: Vec<[Point; 3]>,
    cumulative_mass: Vec<f64>,
}

impl TriangulatedRegion {
    pub fn source(&self) -> &ConvexPolygon {
        &self.source
    }

    pub fn triangles(&self) -> &[[Point; 3]] {
        &self.triangles
    }

    /// Nondecreasing, last entry exactly 1.
    pub fn cumulative_mass(&self) -> &[f64] {
        &self.cumulative_mass
    }
}

pub fn triangulate_fan(poly: &ConvexPolygon) -> Result<TriangulatedRegion> {
    let v = poly.vertices();
    let mut triangles = Vec::with_capacity(v.len() - 2);
    let mut areas = Vec::with_capacity(v.len() - 2);
    for i in 1..v.len() - 1 {
        let tri = [v[0], v[i], v[i + 1]];
        let a = signed_area(&tri);
        if !(a > 0.0) {
            return Err(Error::Degenerate("zero-area fan triangle".into()));
        }
        triangles.push(tri);
        areas.push(a);
    }
    let total: f64 = areas.iter().sum();
    let mut acc = 0.0;
    let mut cumulative_mass: Vec<f64> = areas
        .iter()
        .map(|a| {
            acc += a;
            acc / total
        })
        .collect();
    *cumulative_mass.last_mut().unwrap() = 1.0;
    Ok(TriangulatedRegion {
        source: poly.clone(),
        triangles,
        cumulative_mass,
    })
}

/// A (master seed, stream) pair naming one reproducible random sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        RngStream {
            master_seed,
            stream_id,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.master_seed);
        r.set_stream(self.stream_id);
        r
    }
}

/// One uniform point of a triangle.
pub fn sample_triangle<R: Rng + ?Sized>(tri: &[Point; 3], rng: &mut R) -> Point {
    let u: f64 = rng.random();
    let v: f64 = rng.random();
    let s = u.sqrt();
    let (a, b, c) = (tri[0], tri[1], tri[2]);
    let wa = 1.0 - s;
    let wb = s * (1.0 - v);
    let wc = s * v;
    Point::new(
        wa * a.x + wb * b.x + wc * c.x,
        wa * a.y + wb * b.y + wc * c.y,
    )
}

pub fn sample_uniform_with<R: Rng + ?Sized>(
    region: &TriangulatedRegion,
    n: usize,
    rng: &mut R,
) -> PointSet {
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.random();
        let i = region.cumulative_mass.partition_point(|&m| m <= u);
        let i = i.min(region.triangles.len() - 1);
        pts.push(sample_triangle(&region.triangles[i], rng));
    }
    PointSet::new(pts).expect("samples of a finite polygon are finite")
}

/// n i.i.d. uniform points. Identical streams give identical sets.
pub fn sample_uniform(region: &TriangulatedRegion, n: usize, stream: &RngStream) -> PointSet {
    sample_uniform_with(region, n, &mut stream.rng())
}

/// A reference shape named on the command line: `regular:k=6,area=1` or
/// `vertices:x1,y1;x2,y2;...`. Vertex lists are translated so their centroid
/// is at the origin and scaled to unit area.
#[derive(Clone, Debug, PartialEq)]
pub enum PolygonSpec {
    Regular { k: usize, area: f64 },
    Vertices(Vec<Point>),
}

impl PolygonSpec {
    pub fn polygon(&self) -> Result<ConvexPolygon> {
        match self {
            PolygonSpec::Regular { k, area } => regular_kgon(*k, *area),
            PolygonSpec::Vertices(v) => {
                let mut v = v.clone();
                if signed_area(&v) < 0.0 {
                    v.reverse();
                }
                let poly = ConvexPolygon::new(v)?;
                Ok(normalize_unit_area(&poly))
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            PolygonSpec::Regular { k, .. } => *k,
            PolygonSpec::Vertices(v) => v.len(),
        }
    }
}

/// Rescales a polygon to unit area about its vertex centroid.
pub fn normalize_unit_area(poly: &ConvexPolygon) -> ConvexPolygon {
    let v = poly.vertices();
    let k = v.len() as f64;
    let cx = v.iter().map(|p| p.x).sum::<f64>() / k;
    let cy = v.iter().map(|p| p.y).sum::<f64>() / k;
    let s = 1.0 / poly.area().sqrt();
    ConvexPolygon::new_unchecked(
        v.iter()
            .map(|p| Point::new((p.x - cx) * s, (p.y - cy) * s))
            .collect(),
    )
}

impl FromStr for PolygonSpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |reason: &str| Error::PolygonSpec {
            spec: spec.to_string(),
            reason: reason.into(),
        };
        let (kind, rest) = spec.split_once(':').ok_or_else(|| bad("missing `kind:`"))?;
        match kind.trim() {
            "regular" => {
                let mut k = None;
                let mut area: f64 = 1.0;
                for kv in rest.split(',').filter(|s| !s.trim().is_empty()) {
                    let (key, val) = kv
                        .split_once('=')
                        .ok_or_else(|| bad("expected key=value"))?;
                    match key.trim() {
                        "k" => k = Some(val.trim().parse().map_err(|_| bad("bad k"))?),
                        "area" => area = val.trim().parse().map_err(|_| bad("bad area"))?,
                        _ => return Err(bad("unknown key")),
                    }
                }
                let k: usize = k.ok_or_else(|| bad("missing k"))?;
                if k < 3 {
                    return Err(bad("k must be at least 3"));
                }
                if !(area.is_finite() && area > 0.0) {
                    return Err(bad("area must be positive"));
                }
                Ok(PolygonSpec::Regular { k, area })
            }
            "vertices" => {
                let mut v = Vec::new();
                for pair in rest.split(';').filter(|s| !s.trim().is_empty()) {
                    let (x, y) = pair.split_once(',').ok_or_else(|| bad("expected x,y"))?;
                    let x: f64 = x.trim().parse().map_err(|_| bad("bad coordinate"))?;
                    let y: f64 = y.trim().parse().map_err(|_| bad("bad coordinate"))?;
                    if !(x.is_finite() && y.is_finite()) {
                        return Err(bad("non-finite coordinate"));
                    }
                    v.push(Point::new(x, y));
                }
                if v.len() < 3 {
                    return Err(bad("need at least three vertices"));
                }
                Ok(PolygonSpec::Vertices(v))
            }
            _ => Err(bad("unknown kind")),
        }
    }
}

impl fmt::Display for PolygonSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonSpec::Regular { k, area } => write!(f, "regular:k={k},area={area:?}"),
            PolygonSpec::Vertices(v) => {
                write!(f, "vertices:")?;
                for (i, p) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{:?},{:?}", p.x, p.y)?;
                }
                Ok(())
            }
        }
    }
}
