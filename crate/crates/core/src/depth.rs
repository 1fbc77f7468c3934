//! Tukey depth, Tukey layers and convex layers.
//!
//! Tukey depth of p in X is 1 plus the fewest points of X in an open
//! half-plane whose boundary passes through p. It is always taken against
//! the full set; only convex layers peel.

use crate::error::{Error, Result};
use crate::geometry::{convex_containment, monotone_chain, Containment, Point, PointSet};
use crate::predicates::{angular_cmp, half_of, orientation, Orientation};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthLabeling {
    pub tukey_depth: Vec<usize>,
    pub convex_depth: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerKind {
    Tukey,
    Convex,
}

/// Layers as index sets, layer 1 first. Each layer is sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerPartition {
    pub kind: LayerKind,
    pub layers: Vec<Vec<usize>>,
}

impl LayerPartition {
    /// Groups indices by depth value (1-based).
    pub fn from_depths(kind: LayerKind, depths: &[usize]) -> Self {
        let max = depths.iter().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); max];
        for (i, &d) in depths.iter().enumerate() {
            layers[d - 1].push(i);
        }
        LayerPartition { kind, layers }
    }

    /// Layer `t` (1-based); empty beyond the last layer.
    pub fn layer(&self, t: usize) -> &[usize] {
        if t == 0 {
            return &[];
        }
        self.layers.get(t - 1).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Per-index depth.
    pub fn depths(&self) -> Vec<usize> {
        let n = self.layers.iter().map(Vec::len).sum();
        let mut d = vec![0; n];
        for (t, layer) in self.layers.iter().enumerate() {
            for &i in layer {
                d[i] = t + 1;
            }
        }
        d
    }
}

/// Union of the first `t` layers, sorted ascending.
pub fn first_t_union(part: &LayerPartition, t: usize) -> Vec<usize> {
    let mut out: Vec<usize> = part.layers.iter().take(t).flatten().copied().collect();
    out.sort_unstable();
    out
}

fn ensure_unique_at(xs: &PointSet, i: usize) -> Result<Point> {
    let p = xs.get(i)?;
    if xs
        .points()
        .iter()
        .enumerate()
        .any(|(j, q)| j != i && *q == p)
    {
        return Err(Error::Duplicate(i));
    }
    Ok(p)
}

fn ensure_no_duplicates(xs: &PointSet) -> Result<()> {
    match xs.duplicated_indices().first() {
        Some(&i) => Err(Error::Duplicate(i)),
        None => Ok(()),
    }
}

/// Counts for one critical direction of the sweep: the directed line from
/// the centre through `size` points sharing one ray.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct DirectionGroup {
    pub rep: Point,
    pub size: usize,
    pub left: usize,
    pub right: usize,
    pub opposite: usize,
}

/// Angular sweep around `center`. `others` must not contain `center`.
pub(crate) fn direction_groups(center: Point, others: &[Point]) -> Vec<DirectionGroup> {
    let mut v: Vec<(u8, Point)> = others.iter().map(|&q| (half_of(center, q), q)).collect();
    v.sort_unstable_by(|a, b| match a.0.cmp(&b.0) {
        Ordering::Equal => angular_cmp(center, a.1, b.1),
        o => o,
    });
    let m = v.len();
    let mut starts = Vec::new();
    let mut s = 0;
    while s < m {
        let mut e = s + 1;
        while e < m
            && v[e].0 == v[s].0
            && orientation(center, v[s].1, v[e].1) == Orientation::Collinear
        {
            e += 1;
        }
        starts.push((s, e - s));
        s = e;
    }
    let mut out = Vec::with_capacity(starts.len());
    let mut end = 0;
    for (s, g) in starts {
        let rep = v[s].1;
        let base = s + g;
        end = end.max(base);
        while end < s + m && orientation(center, rep, v[end % m].1) == Orientation::Left {
            end += 1;
        }
        let mut opp_end = end;
        while opp_end < s + m
            && orientation(center, rep, v[opp_end % m].1) == Orientation::Collinear
        {
            opp_end += 1;
        }
        let left = end - base;
        let opposite = opp_end - end;
        out.push(DirectionGroup {
            rep,
            size: g,
            left,
            right: m - g - left - opposite,
            opposite,
        });
    }
    out
}

fn sweep_depth(center: Point, others: &[Point]) -> usize {
    1 + direction_groups(center, others)
        .iter()
        .map(|g| g.left.min(g.right))
        .min()
        .unwrap_or(0)
}

fn others_of(pts: &[Point], i: usize) -> Vec<Point> {
    pts.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &q)| q)
        .collect()
}

/// Tukey depth of point `i` by angular sweep, O(n log n).
pub fn tukey_depth_point(xs: &PointSet, i: usize) -> Result<usize> {
    let p = ensure_unique_at(xs, i)?;
    Ok(sweep_depth(p, &others_of(xs.points(), i)))
}

/// Brute-force Tukey depth, O(n^2): every line through p and another point,
/// with the collinear points on each ray pushed to either side.
pub fn tukey_depth_oracle(xs: &PointSet, i: usize) -> Result<usize> {
    let p = ensure_unique_at(xs, i)?;
    let pts = xs.points();
    let mut best = usize::MAX;
    for (j, &q) in pts.iter().enumerate() {
        if j == i {
            continue;
        }
        let (mut left, mut right, mut same, mut opp) = (0, 0, 0, 0);
        for (k, &r) in pts.iter().enumerate() {
            if k == i {
                continue;
            }
            match orientation(p, q, r) {
                Orientation::Left => left += 1,
                Orientation::Right => right += 1,
                Orientation::Collinear => {
                    if same_ray(p, q, r) {
                        same += 1;
                    } else {
                        opp += 1;
                    }
                }
            }
        }
        let candidates = [
            left,
            right,
            left + same,
            right + opp,
            left + opp,
            right + same,
        ];
        best = best.min(*candidates.iter().min().unwrap());
    }
    Ok(1 + if best == usize::MAX { 0 } else { best })
}

// r collinear with p and q: same ray from p as q? Coordinate comparisons
// decide it exactly.
fn same_ray(p: Point, q: Point, r: Point) -> bool {
    let sx = |a: f64, b: f64| a.partial_cmp(&b).unwrap_or(Ordering::Equal);
    let qs = (sx(q.x, p.x), sx(q.y, p.y));
    let rs = (sx(r.x, p.x), sx(r.y, p.y));
    qs == rs
}

/// Tukey depth of every point, in index order.
pub fn tukey_depths(xs: &PointSet) -> Result<Vec<usize>> {
    ensure_no_duplicates(xs)?;
    let pts = xs.points();
    Ok((0..pts.len())
        .into_par_iter()
        .map(|i| sweep_depth(pts[i], &others_of(pts, i)))
        .collect())
}

pub fn tukey_layers(xs: &PointSet) -> Result<LayerPartition> {
    Ok(LayerPartition::from_depths(
        LayerKind::Tukey,
        &tukey_depths(xs)?,
    ))
}

/// Extreme-point peeling, stopping after `max_layers` layers.
pub fn convex_layers_limited(xs: &PointSet, max_layers: usize) -> Vec<Vec<usize>> {
    let pts = xs.points();
    let n = pts.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pts[a].lex_cmp(&pts[b]).then(a.cmp(&b)));
    // Coincident points form one group, represented by its first index.
    let mut group_of_rep: Vec<(usize, std::ops::Range<usize>)> = Vec::new();
    let mut s = 0;
    while s < n {
        let mut e = s + 1;
        while e < n && pts[order[e]] == pts[order[s]] {
            e += 1;
        }
        group_of_rep.push((order[s], s..e));
        s = e;
    }
    let mut alive: Vec<usize> = (0..group_of_rep.len()).collect();
    let mut extreme = vec![false; group_of_rep.len()];
    let mut rep_to_group = vec![usize::MAX; n];
    for (g, (rep, _)) in group_of_rep.iter().enumerate() {
        rep_to_group[*rep] = g;
    }
    let mut layers = Vec::new();
    while !alive.is_empty() && layers.len() < max_layers {
        let reps: Vec<usize> = alive.iter().map(|&g| group_of_rep[g].0).collect();
        let chain = monotone_chain(pts, &reps);
        let mut layer = Vec::new();
        for &r in &chain {
            let g = rep_to_group[r];
            extreme[g] = true;
            layer.extend(order[group_of_rep[g].1.clone()].iter().copied());
        }
        layer.sort_unstable();
        layers.push(layer);
        alive.retain(|&g| !extreme[g]);
    }
    layers
}

/// Onion peeling by extreme points, O(n h).
pub fn convex_layers(xs: &PointSet) -> LayerPartition {
    LayerPartition {
        kind: LayerKind::Convex,
        layers: convex_layers_limited(xs, usize::MAX),
    }
}

pub fn convex_depths(xs: &PointSet) -> Vec<usize> {
    convex_layers(xs).depths()
}

pub fn depth_labeling(xs: &PointSet) -> Result<DepthLabeling> {
    Ok(DepthLabeling {
        tukey_depth: tukey_depths(xs)?,
        convex_depth: convex_depths(xs),
    })
}

/// Depth labelings of `xs` and of `xs` with `q` appended (index n).
pub fn convex_depth_after_insert(
    xs: &PointSet,
    q: Point,
) -> Result<(DepthLabeling, DepthLabeling)> {
    if !q.is_finite() {
        return Err(Error::NonFinite);
    }
    if xs.points().contains(&q) {
        return Err(Error::InvalidArgument(
            "inserted point duplicates an existing point".into(),
        ));
    }
    let mut pts = xs.points().to_vec();
    pts.push(q);
    let grown = PointSet::new(pts)?;
    Ok((depth_labeling(xs)?, depth_labeling(&grown)?))
}

/// Tukey depths up to `cap`; `None` means depth greater than `cap`.
///
/// Only the first `cap` boundary-inclusive layers C are examined. For p in
/// X, depth in X is at most `cap` exactly when depth in C is, and then the
/// two agree: in any open half-plane H, the r-th farthest point from the
/// boundary has Tukey depth at most r, hence boundary-layer depth at most r,
/// so the `cap` farthest points of H all lie in C. Extreme-only layers would
/// not do here: a point inside a hull edge has Tukey depth 1 but is not
/// extreme. Cost O(|C|^2 log |C|) instead of O(n^2 log n).
pub fn shallow_tukey_depths(xs: &PointSet, cap: usize) -> Result<Vec<Option<usize>>> {
    ensure_no_duplicates(xs)?;
    let mut candidates: Vec<usize> = boundary_layers_limited(xs.points(), cap)
        .into_iter()
        .flatten()
        .collect();
    candidates.sort_unstable();
    let sub: Vec<Point> = candidates.iter().map(|&i| xs.points()[i]).collect();
    let mut out = vec![None; xs.len()];
    for (k, &i) in candidates.iter().enumerate() {
        let d = sweep_depth(sub[k], &others_of(&sub, k));
        if d <= cap {
            out[i] = Some(d);
        }
    }
    Ok(out)
}

/// Peeling that removes every point on the hull boundary, not just the
/// corners. Points must be distinct.
fn boundary_layers_limited(pts: &[Point], max_layers: usize) -> Vec<Vec<usize>> {
    let mut alive: Vec<usize> = (0..pts.len()).collect();
    alive.sort_by(|&a, &b| pts[a].lex_cmp(&pts[b]));
    let mut layers = Vec::new();
    while !alive.is_empty() && layers.len() < max_layers {
        let chain = monotone_chain(pts, &alive);
        let (mut layer, rest): (Vec<usize>, Vec<usize>) = if chain.len() < 3 {
            (alive.clone(), Vec::new())
        } else {
            let poly: Vec<Point> = chain.iter().map(|&i| pts[i]).collect();
            alive
                .iter()
                .partition(|&&i| convex_containment(&poly, pts[i]) != Containment::Inside)
        };
        layer.sort_unstable();
        layers.push(layer);
        alive = rest;
    }
    layers
}
