//! Executable checks of the structural facts relating Tukey and convex
//! layers.

use crate::depth::{
    convex_depth_after_insert, convex_layers, depth_labeling, first_t_union, tukey_layers,
    DepthLabeling, LayerKind, LayerPartition,
};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, Containment, Hull, Point, PointSet};
use crate::sampling::RngStream;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: usize,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaResult {
    pub lemma_id: String,
    pub pass: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LemmaReport {
    pub results: Vec<LemmaResult>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    fn push(&mut self, id: &str, witness: Option<Witness>) {
        self.results.push(LemmaResult {
            lemma_id: id.into(),
            pass: witness.is_none(),
            witness,
        });
    }
}

fn witness(point: usize, details: impl Into<String>) -> Option<Witness> {
    Some(Witness {
        point,
        details: details.into(),
    })
}

/// Runs every check for layer index `t` (t >= 1). Random partitions and the
/// inserted point are drawn from `rng`.
///
/// Checks, by id: each Tukey layer is in convex position; Tukey depth
/// dominates convex depth; the first t Tukey layers avoid the hull of layer
/// t+1; the first t Tukey layers of X lie in the union of those of a random
/// 2-part and 4-part partition; the same for convex layers of a 2-part
/// partition, whose layer-t vertices stay inside the hull of layer t of X;
/// one random insertion raises convex depths by 0 or 1.
pub fn verify_structural_lemmas(xs: &PointSet, t: usize, rng: &RngStream) -> Result<LemmaReport> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let mut r = rng.rng();
    let labels = depth_labeling(xs)?;
    let tukey = LayerPartition::from_depths(LayerKind::Tukey, &labels.tukey_depth);
    let convex = LayerPartition::from_depths(LayerKind::Convex, &labels.convex_depth);
    let mut report = LemmaReport::default();

    report.push(
        "tukey_layer_convex_position",
        check_convex_position(xs, &tukey)?,
    );
    report.push("tukey_within_convex", check_inclusion(&labels, t));
    report.push("outside_next_tukey_hull", check_disjoint(xs, &tukey, t)?);

    let halves: Vec<usize> = (0..xs.len()).map(|_| r.random_range(0..2)).collect();
    let quarters: Vec<usize> = (0..xs.len()).map(|_| r.random_range(0..4)).collect();
    report.push(
        "bipartition_tukey_union",
        check_partition_union(xs, &tukey, &halves, 2, t)?,
    );
    report.push(
        "four_partition_tukey_union",
        check_partition_union(xs, &tukey, &quarters, 4, t)?,
    );
    report.push(
        "bipartition_convex_layer",
        check_layer_divide(xs, &convex, &halves, t)?,
    );
    report.push("insertion_depth_increment", check_insertion(xs, &mut r)?);
    Ok(report)
}

fn check_convex_position(xs: &PointSet, tukey: &LayerPartition) -> Result<Option<Witness>> {
    for (s, layer) in tukey.layers.iter().enumerate() {
        if layer.len() < 3 {
            continue;
        }
        let hull = convex_hull(&xs.select(layer))?;
        let verts = hull.vertices();
        if let Some(&i) = layer.iter().find(|&&i| !verts.contains(&xs.points()[i])) {
            return Ok(witness(i, format!("not extreme in Tukey layer {}", s + 1)));
        }
    }
    Ok(None)
}

fn check_inclusion(labels: &DepthLabeling, t: usize) -> Option<Witness> {
    for (i, (&dt, &dc)) in labels
        .tukey_depth
        .iter()
        .zip(&labels.convex_depth)
        .enumerate()
    {
        if dc > dt || (dt <= t && dc > t) {
            return witness(i, format!("Tukey depth {dt}, convex depth {dc}"));
        }
    }
    None
}

fn check_disjoint(xs: &PointSet, tukey: &LayerPartition, t: usize) -> Result<Option<Witness>> {
    let next = tukey.layer(t + 1);
    if next.is_empty() {
        return Ok(None);
    }
    let hull = convex_hull(&xs.select(next))?;
    for i in first_t_union(tukey, t) {
        if hull.contains(xs.points()[i]) != Containment::Outside {
            return Ok(witness(
                i,
                format!("inside or on the hull of Tukey layer {}", t + 1),
            ));
        }
    }
    Ok(None)
}

fn parts(labels: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); k];
    for (i, &l) in labels.iter().enumerate() {
        out[l].push(i);
    }
    out
}

fn check_partition_union(
    xs: &PointSet,
    tukey: &LayerPartition,
    labels: &[usize],
    k: usize,
    t: usize,
) -> Result<Option<Witness>> {
    let mut covered = vec![false; xs.len()];
    for part in parts(labels, k) {
        if part.is_empty() {
            continue;
        }
        let sub = tukey_layers(&xs.select(&part))?;
        for local in first_t_union(&sub, t) {
            covered[part[local]] = true;
        }
    }
    Ok(first_t_union(tukey, t)
        .into_iter()
        .find(|&i| !covered[i])
        .and_then(|i| {
            witness(
                i,
                format!("in the first {t} Tukey layers of X but of no part"),
            )
        }))
}

fn check_layer_divide(
    xs: &PointSet,
    convex: &LayerPartition,
    labels: &[usize],
    t: usize,
) -> Result<Option<Witness>> {
    let whole_layer = convex.layer(t);
    let whole_hull: Option<Hull> = if whole_layer.is_empty() {
        None
    } else {
        Some(convex_hull(&xs.select(whole_layer))?)
    };
    let mut covered = vec![false; xs.len()];
    for part in parts(labels, 2) {
        if part.is_empty() {
            continue;
        }
        let sub = convex_layers(&xs.select(&part));
        for local in first_t_union(&sub, t) {
            covered[part[local]] = true;
        }
        let layer = sub.layer(t);
        if layer.is_empty() {
            continue;
        }
        let Some(hull) = &whole_hull else {
            return Ok(witness(
                part[layer[0]],
                format!("a part has convex layer {t} but X does not"),
            ));
        };
        for &local in layer {
            let i = part[local];
            if hull.contains(xs.points()[i]) == Containment::Outside {
                return Ok(witness(
                    i,
                    format!("vertex of a part's layer {t} outside the hull of layer {t} of X"),
                ));
            }
        }
    }
    Ok(first_t_union(convex, t)
        .into_iter()
        .find(|&i| !covered[i])
        .and_then(|i| {
            witness(
                i,
                format!("in the first {t} convex layers of X but of no part"),
            )
        }))
}

fn check_insertion<R: Rng>(xs: &PointSet, r: &mut R) -> Result<Option<Witness>> {
    if xs.is_empty() {
        return Ok(None);
    }
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for p in xs.points() {
        lo_x = lo_x.min(p.x);
        hi_x = hi_x.max(p.x);
        lo_y = lo_y.min(p.y);
        hi_y = hi_y.max(p.y);
    }
    let pad_x = 0.1 * (hi_x - lo_x) + 1e-9;
    let pad_y = 0.1 * (hi_y - lo_y) + 1e-9;
    let q = loop {
        let q = Point::new(
            lo_x - pad_x + r.random::<f64>() * (hi_x - lo_x + 2.0 * pad_x),
            lo_y - pad_y + r.random::<f64>() * (hi_y - lo_y + 2.0 * pad_y),
        );
        if !xs.points().contains(&q) {
            break q;
        }
    };
    let (old, new) = convex_depth_after_insert(xs, q)?;
    for i in 0..xs.len() {
        let (a, b) = (old.convex_depth[i], new.convex_depth[i]);
        if b < a || b > a + 1 {
            return Ok(witness(i, format!("convex depth {a} became {b}")));
        }
    }
    Ok(None)
}
