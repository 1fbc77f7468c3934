//! Browser bindings. Each operation takes flat `[x0, y0, x1, y1, ...]`
//! coordinates and returns a JSON string; the plain functions are used by
//! native tests and the `#[wasm_bindgen]` wrappers by the page.

use serde::Serialize;
use tukey_layers::depth::{convex_layers, tukey_depths, LayerPartition};
use tukey_layers::enclosing::{
    min_area_hull_excluding, min_area_parallelogram_excluding, EnclosingShape, SearchMode,
};
use tukey_layers::gadgets::{build_quadrant_cells, dividing_line_region, UnitShape};
use tukey_layers::geometry::{convex_hull, Point, PointSet};
use tukey_layers::sampling::{regular_kgon, sample_uniform, triangulate_fan, RngStream};
use wasm_bindgen::prelude::*;

type Xy = [f64; 2];

#[derive(Serialize)]
struct Layer {
    points: Vec<usize>,
    hull: Vec<Xy>,
}

#[derive(Serialize)]
struct LayersView {
    tukey_depth: Vec<usize>,
    tukey: Vec<Layer>,
    convex: Vec<Layer>,
}

#[derive(Serialize)]
struct EncloseView {
    excluded: Vec<usize>,
    outline: Vec<Xy>,
    area: f64,
    subsets_evaluated: u64,
}

#[derive(Serialize)]
struct CellView {
    quadrant: String,
    corners: Vec<Xy>,
    diagonal: bool,
}

#[derive(Serialize)]
struct QuadrantView {
    cells: Vec<CellView>,
    /// Corner triangle cut off by the dividing line: corner, then intercepts.
    corner_triangle: Option<[Xy; 3]>,
}

fn xy(p: Point) -> Xy {
    [p.x, p.y]
}

fn point_set(coords: &[f64]) -> Result<PointSet, String> {
    if coords.len() % 2 != 0 {
        return Err("odd number of coordinates".into());
    }
    let pts = coords.chunks(2).map(|c| Point::new(c[0], c[1])).collect();
    PointSet::new(pts).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn view(xs: &PointSet, part: &LayerPartition) -> Result<Vec<Layer>, String> {
    part.layers
        .iter()
        .map(|idx| {
            // A depth value can be skipped, leaving an empty layer.
            if idx.is_empty() {
                return Ok(Layer { points: Vec::new(), hull: Vec::new() });
            }
            let hull = convex_hull(&xs.select(idx)).map_err(|e| e.to_string())?;
            Ok(Layer {
                points: idx.clone(),
                hull: hull.vertices().into_iter().map(xy).collect(),
            })
        })
        .collect()
}

/// `n` uniform points in the unit-area regular `k`-gon.
pub fn sample(k: usize, n: usize, seed: u64) -> Result<Vec<f64>, String> {
    let region = regular_kgon(k, 1.0)
        .and_then(|p| triangulate_fan(&p))
        .map_err(|e| e.to_string())?;
    Ok(sample_uniform(&region, n, &RngStream::new(seed, 0))
        .points()
        .iter()
        .flat_map(|p| [p.x, p.y])
        .collect())
}

/// Tukey depths plus both layer sequences with their hull outlines.
pub fn layers(coords: &[f64]) -> Result<String, String> {
    let xs = point_set(coords)?;
    let depth = tukey_depths(&xs).map_err(|e| e.to_string())?;
    let tukey = LayerPartition::from_depths(tukey_layers::depth::LayerKind::Tukey, &depth);
    to_json(&LayersView {
        tukey: view(&xs, &tukey)?,
        convex: view(&xs, &convex_layers(&xs))?,
        tukey_depth: depth,
    })
}

/// Smallest hull (`parallelogram == false`) or parallelogram enclosing all
/// but `t` points.
pub fn enclose(coords: &[f64], t: usize, parallelogram: bool) -> Result<String, String> {
    let xs = point_set(coords)?;
    let res = if parallelogram {
        min_area_parallelogram_excluding(&xs, t, SearchMode::Pruned)
    } else {
        min_area_hull_excluding(&xs, t, SearchMode::Pruned)
    }
    .map_err(|e| e.to_string())?;
    let outline = match &res.shape {
        EnclosingShape::Hull(h) => h.vertices().into_iter().map(xy).collect(),
        EnclosingShape::Parallelogram(p) => p.corners().into_iter().map(xy).collect(),
    };
    to_json(&EncloseView {
        excluded: res.excluded,
        outline,
        area: res.area,
        subsets_evaluated: res.subsets_evaluated,
    })
}

/// Quadrant cells around (px, py) in the triangle (0,0), (1,0), (0,1), and
/// the dividing-line corner triangle when the point admits one.
pub fn quadrants(px: f64, py: f64, t: usize) -> Result<String, String> {
    let p = Point::new(px, py);
    let part = build_quadrant_cells(p, t).map_err(|e| e.to_string())?;
    let mut cells = Vec::new();
    for q in &part.quadrants {
        for (i, c) in q.cells.iter().enumerate() {
            cells.push(CellView {
                quadrant: format!("{:?}", q.kind),
                corners: c.corners.iter().copied().map(xy).collect(),
                diagonal: q.diagonal.contains(&i),
            });
        }
    }
    let corner_triangle = dividing_line_region(p, UnitShape::Triangle)
        .ok()
        .map(|d| [xy(d.corner), xy(d.x_intercept), xy(d.y_intercept)]);
    to_json(&QuadrantView {
        cells,
        corner_triangle,
    })
}

#[wasm_bindgen(js_name = samplePoints)]
pub fn sample_points(k: usize, n: usize, seed: u32) -> Result<Vec<f64>, JsError> {
    sample(k, n, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = layers)]
pub fn layers_js(coords: &[f64]) -> Result<String, JsError> {
    layers(coords).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = enclose)]
pub fn enclose_js(coords: &[f64], t: usize, parallelogram: bool) -> Result<String, JsError> {
    enclose(coords, t, parallelogram).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = quadrants)]
pub fn quadrants_js(px: f64, py: f64, t: usize) -> Result<String, JsError> {
    quadrants(px, py, t).map_err(|e| JsError::new(&e))
}
