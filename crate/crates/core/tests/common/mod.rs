//! Independent reference implementations used only by tests.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tukey_layers::geometry::{Point, PointSet};
use tukey_layers::predicates::Orientation;
use tukey_layers::sampling::{regular_kgon, sample_uniform, triangulate_fan, RngStream};

pub fn q(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap()
}

/// Exact orientation in big rationals built from the float bit patterns.
pub fn rational_orient(a: Point, b: Point, c: Point) -> Orientation {
    let det = (q(b.x) - q(a.x)) * (q(c.y) - q(a.y)) - (q(b.y) - q(a.y)) * (q(c.x) - q(a.x));
    if det.is_zero() {
        Orientation::Collinear
    } else if det.is_positive() {
        Orientation::Left
    } else {
        Orientation::Right
    }
}

fn on_closed_segment(a: Point, b: Point, p: Point) -> bool {
    rational_orient(a, b, p) == Orientation::Collinear
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

fn in_closed_triangle(a: Point, b: Point, c: Point, p: Point) -> bool {
    let s = [
        rational_orient(a, b, p),
        rational_orient(b, c, p),
        rational_orient(c, a, p),
    ];
    let has_left = s.contains(&Orientation::Left);
    let has_right = s.contains(&Orientation::Right);
    !(has_left && has_right)
        && (rational_orient(a, b, c) != Orientation::Collinear
            || on_closed_segment(a, b, p)
            || on_closed_segment(b, c, p)
            || on_closed_segment(a, c, p))
}

/// Positions (within `idx`) of points that are not in the closed hull of
/// the other distinct points. Coincident copies are extreme together.
pub fn brute_extreme(pts: &[Point], idx: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for &i in idx {
        let p = pts[i];
        let others: Vec<Point> = idx.iter().map(|&j| pts[j]).filter(|&r| r != p).collect();
        let mut covered = false;
        'outer: for a in 0..others.len() {
            for b in a + 1..others.len() {
                if on_closed_segment(others[a], others[b], p) {
                    covered = true;
                    break 'outer;
                }
                for c in b + 1..others.len() {
                    if in_closed_triangle(others[a], others[b], others[c], p) {
                        covered = true;
                        break 'outer;
                    }
                }
            }
        }
        if !covered {
            out.push(i);
        }
    }
    out
}

/// Onion peeling with the brute extreme-point test.
pub fn brute_peel(xs: &PointSet) -> Vec<Vec<usize>> {
    let pts = xs.points();
    let mut alive: Vec<usize> = (0..pts.len()).collect();
    let mut layers = Vec::new();
    while !alive.is_empty() {
        let mut layer = brute_extreme(pts, &alive);
        layer.sort_unstable();
        alive.retain(|i| !layer.contains(i));
        layers.push(layer);
    }
    layers
}

/// Tukey depth by scanning closed-form candidate directions: for every
/// other point q, both open sides of line pq and both rotations. Works in
/// rationals.
pub fn brute_depth(pts: &[Point], i: usize) -> usize {
    let p = pts[i];
    let mut best = pts.len().saturating_sub(1);
    for (j, &qq) in pts.iter().enumerate() {
        if j == i {
            continue;
        }
        let (mut l, mut r, mut s, mut o) = (0, 0, 0, 0);
        for (k, &w) in pts.iter().enumerate() {
            if k == i {
                continue;
            }
            match rational_orient(p, qq, w) {
                Orientation::Left => l += 1,
                Orientation::Right => r += 1,
                Orientation::Collinear => {
                    let dot = (q(w.x) - q(p.x)) * (q(qq.x) - q(p.x))
                        + (q(w.y) - q(p.y)) * (q(qq.y) - q(p.y));
                    if dot.is_positive() {
                        s += 1
                    } else {
                        o += 1
                    }
                }
            }
        }
        best = best
            .min(l)
            .min(r)
            .min(l + s)
            .min(r + o)
            .min(l + o)
            .min(r + s);
    }
    if pts.len() == 1 {
        best = 0;
    }
    best + 1
}

pub fn sample_kgon(k: usize, n: usize, seed: u64, stream: u64) -> PointSet {
    let poly = regular_kgon(k, 1.0).unwrap();
    sample_uniform(
        &triangulate_fan(&poly).unwrap(),
        n,
        &RngStream::new(seed, stream),
    )
}

pub fn square_plus_center() -> PointSet {
    PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5)]).unwrap()
}

/// Points with small integer coordinates: many collinear triples and
/// duplicates.
pub fn lattice_points(max_len: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((-4i32..=4, -4i32..=4), 1..max_len).prop_map(|v| {
        v.into_iter()
            .map(|(x, y)| Point::new(x as f64, y as f64))
            .collect()
    })
}

pub fn distinct_lattice_points(max_len: usize) -> impl Strategy<Value = Vec<Point>> {
    lattice_points(max_len).prop_map(|mut v| {
        v.sort_by(|a, b| a.lex_cmp(b));
        v.dedup();
        v
    })
}

pub fn unit_points(max_len: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..max_len)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x, y)).collect())
}

/// Smallest enclosing parallelogram area over a direction grid, refined
/// by alternating golden-section search around the best grid cells.
pub fn grid_parallelogram_area(pts: &[Point], steps: usize) -> f64 {
    use std::f64::consts::PI;
    let width = |th: f64| {
        let (c, s) = (th.cos(), th.sin());
        let (lo, hi) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                let d = c * p.x + s * p.y;
                (lo.min(d), hi.max(d))
            });
        hi - lo
    };
    let area = |a: f64, b: f64| {
        let s = (b - a).sin().abs();
        if s < 1e-9 {
            f64::INFINITY
        } else {
            width(a) * width(b) / s
        }
    };
    let h = PI / steps as f64;
    let w: Vec<f64> = (0..steps).map(|i| width(i as f64 * h)).collect();
    let sines: Vec<f64> = (0..steps).map(|d| (d as f64 * h).sin()).collect();
    let mut cand: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..steps {
        for j in i + 1..steps {
            let s = sines[j - i];
            if s < 1e-9 {
                continue;
            }
            let a = w[i] * w[j] / s;
            if cand.len() < 8 || a < cand[cand.len() - 1].0 {
                cand.push((a, i, j));
                cand.sort_by(|x, y| x.0.total_cmp(&y.0));
                cand.truncate(8);
            }
        }
    }
    let golden = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64| {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (lo, hi);
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        for _ in 0..80 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = f(d);
            }
        }
        if fc < fd {
            c
        } else {
            d
        }
    };
    let mut best = cand.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    for &(_, i, j) in &cand {
        let (mut a, mut b) = (i as f64 * h, j as f64 * h);
        for _ in 0..20 {
            a = golden(&|x| area(x, b), a - 1.5 * h, a + 1.5 * h);
            b = golden(&|y| area(a, y), b - 1.5 * h, b + 1.5 * h);
        }
        best = best.min(area(a, b));
    }
    best
}

/// The 25 labels of the 5 x 5 grid numbered relative to column 3, rows from
/// the apex down, columns left to right.
pub const GRID5_COL3_LABELS: [[usize; 5]; 5] = [
    [1, 2, 21, 11, 12],
    [3, 4, 22, 13, 14],
    [5, 6, 23, 15, 16],
    [7, 8, 24, 17, 18],
    [9, 10, 25, 19, 20],
];
