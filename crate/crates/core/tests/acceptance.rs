//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Failing criteria are printed as FAIL with their measured values. The
//! process exits nonzero on any failure only when ACCEPTANCE_STRICT=1, so
//! that the regular test run still completes and shows the full table.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::time::Instant;
use tukey_layers::depth::{tukey_depth_oracle, tukey_depths};
use tukey_layers::enclosing::{
    min_area_hull_excluding, min_area_parallelogram, min_area_parallelogram_excluding, SearchMode,
};
use tukey_layers::experiments::{
    fit_log_slope, format_csv, run_estimate, theoretical_bounds, EstimateRecord, ExperimentConfig,
    Metric,
};
use tukey_layers::gadgets::{
    build_triangle_grid, cell_index, check_diag_lemma, check_dividing_sufficient,
    check_upper_hull_lemma, row_order_statistics, UnitShape,
};
use tukey_layers::geometry::Point;
use tukey_layers::lemmas::verify_structural_lemmas;
use tukey_layers::sampling::{
    regular_kgon, sample_uniform_with, triangulate_fan, unit_right_triangle, unit_square,
    PolygonSpec, RngStream, TriangulatedRegion,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn kgon_region(k: usize) -> TriangulatedRegion {
    triangulate_fan(&regular_kgon(k, 1.0).unwrap()).unwrap()
}

fn artifact_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../target/acceptance-artifacts");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_artifact(name: &str, value: serde_json::Value) -> String {
    let path = artifact_dir().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap()).unwrap();
    path.display().to_string()
}

fn sweep(
    shape: &str,
    n_values: Vec<usize>,
    t_values: Vec<usize>,
    trials: usize,
    seed: u64,
    metrics: Vec<Metric>,
) -> Vec<EstimateRecord> {
    let cfg = ExperimentConfig {
        shape: shape.parse::<PolygonSpec>().unwrap(),
        n_values,
        t_values,
        trials,
        master_seed: seed,
        metrics,
        threads: Some(1),
        record_timing: false,
    };
    run_estimate(&cfg).unwrap()
}

fn find(recs: &[EstimateRecord], n: usize, t: usize, metric: Metric) -> &EstimateRecord {
    recs.iter()
        .find(|r| r.n == n && r.t == t && r.metric == metric)
        .unwrap()
}

fn depth_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mismatches = 0;
    let mut points = 0;
    for _ in 0..500 {
        let k = [3, 4, 6][rng.random_range(0..3)];
        let n = rng.random_range(3..=120);
        let xs = sample_uniform_with(&kgon_region(k), n, &mut rng);
        let d = tukey_depths(&xs).unwrap();
        for (i, &di) in d.iter().enumerate() {
            points += 1;
            if di != tukey_depth_oracle(&xs, i).unwrap() {
                mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("500 instances, {points} points, {mismatches} mismatches"),
    )
}

fn structural() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    for inst in 0..1000u64 {
        let k = [3, 4, 6][rng.random_range(0..3)];
        let n = rng.random_range(3..=300);
        let t = rng.random_range(1..=3);
        let xs = sample_uniform_with(&kgon_region(k), n, &mut rng);
        let report = verify_structural_lemmas(&xs, t, &RngStream::new(2, inst)).unwrap();
        for r in report.results.iter().filter(|r| !r.pass) {
            failures.push(format!("instance {inst} {}", r.lemma_id));
        }
    }
    let detail = if failures.is_empty() {
        "1000 instances, all checks pass".to_string()
    } else {
        format!("{} failing checks, first: {}", failures.len(), failures[0])
    };
    outcome(failures.is_empty(), detail)
}

fn gadgets() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let square = triangulate_fan(&unit_square()).unwrap();
    let tri = triangulate_fan(&unit_right_triangle()).unwrap();
    let (mut upper_inst, mut upper_pts) = (0, 0);
    let mut first_upper = None;
    for inst in 0..500 {
        let n = rng.random_range(3..=200);
        let t = rng.random_range(1..=3);
        let xs = sample_uniform_with(&square, n, &mut rng);
        let v = check_upper_hull_lemma(&xs, t).unwrap().violations;
        if !v.is_empty() {
            upper_inst += 1;
            upper_pts += v.len();
            if first_upper.is_none() {
                let p = xs.points()[v[0]];
                first_upper = Some(write_artifact(
                    "upper_hull_violation.json",
                    serde_json::json!({"instance": inst, "t": t, "point": v[0], "coords": [p.x, p.y], "points": xs}),
                ));
            }
        }
    }
    let mut diag = 0;
    for _ in 0..500 {
        let n = rng.random_range(1..=200);
        let t = rng.random_range(1..=3);
        let xs = sample_uniform_with(&tri, n, &mut rng);
        diag += check_diag_lemma(&xs, t).unwrap().len();
    }
    let mut dividing = 0;
    for _ in 0..500 {
        let n = rng.random_range(1..=200);
        let t = rng.random_range(1..=3);
        let (region, shape) = if rng.random_bool(0.5) {
            (&square, UnitShape::Square)
        } else {
            (&tri, UnitShape::Triangle)
        };
        let xs = sample_uniform_with(region, n, &mut rng);
        dividing += check_dividing_sufficient(&xs, t, shape).unwrap().len();
    }
    let mut zj_bad = 0;
    let apex = [
        Point::new(0.0, 1.0),
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
    ];
    for _ in 0..500 {
        let n = rng.random_range(3..=200);
        let t = rng.random_range(1..=3);
        let xs = sample_uniform_with(&tri, n, &mut rng);
        let grid = build_triangle_grid(apex, n).unwrap();
        let j = rng.random_range(2..n);
        let s = row_order_statistics(&grid, &xs, j, t).unwrap();
        if s.zj > s.i1 + s.i2 {
            zj_bad += 1;
        }
    }
    let pass = upper_inst == 0 && diag == 0 && dividing == 0 && zj_bad == 0;
    let mut detail = format!(
        "upper hull: {upper_pts} violations in {upper_inst}/500 instances; diagonal cells: {diag}; dividing line: {dividing}; Zj > I1+I2: {zj_bad}/500"
    );
    if let Some(path) = first_upper {
        detail += &format!(" (witness: {path})");
    }
    outcome(pass, detail)
}

fn numbering() -> Outcome {
    let labels = [
        [1, 2, 21, 11, 12],
        [3, 4, 22, 13, 14],
        [5, 6, 23, 15, 16],
        [7, 8, 24, 17, 18],
        [9, 10, 25, 19, 20],
    ];
    let mut bad = 0;
    for i in 1..=5 {
        for l in 1..=5 {
            if cell_index(5, i, l, 3).unwrap() != labels[i - 1][l - 1] {
                bad += 1;
            }
        }
    }
    let mut not_bijective = 0;
    for n in 1..=12 {
        for j in 1..=n {
            let mut seen = vec![false; n * n + 1];
            for i in 1..=n {
                for l in 1..=n {
                    let c = cell_index(n, i, l, j).unwrap();
                    if c == 0 || c > n * n || seen[c] {
                        not_bijective += 1;
                    } else {
                        seen[c] = true;
                    }
                }
            }
        }
    }
    outcome(
        bad == 0 && not_bijective == 0,
        format!("{bad}/25 label mismatches, {not_bijective} collisions for n <= 12"),
    )
}

fn efron() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, shape) in [
        ("triangle", "vertices:0,0;1,0;0,1"),
        ("square", "vertices:0,0;1,0;1,1;0,1"),
    ] {
        let recs = sweep(
            shape,
            vec![500],
            vec![1],
            2000,
            5,
            vec![Metric::EfronGap, Metric::HullSize, Metric::HullArea],
        );
        let gap = find(&recs, 500, 1, Metric::EfronGap);
        let ok = gap.mean.abs() <= 3.0 * gap.stderr;
        pass &= ok;
        parts.push(format!(
            "{name}: |gap| {:.4} vs 3 se {:.4} (mean |V1| {:.3}, mean area {:.5})",
            gap.mean.abs(),
            3.0 * gap.stderr,
            find(&recs, 500, 1, Metric::HullSize).mean,
            find(&recs, 500, 1, Metric::HullArea).mean
        ));
    }
    outcome(pass, parts.join("; "))
}

/// mean|U_[t-1]| + 3 se against the upper bound for t in {1, 2, 4}.
fn upper_bounds(recs_by_k: &[(usize, Vec<EstimateRecord>)], triangle_form: bool) -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = String::new();
    let mut pass = true;
    let mut cells = 0;
    for (k, recs) in recs_by_k {
        if triangle_form && *k != 3 {
            continue;
        }
        for &n in &[100, 1000, 10000] {
            for &t in &[1usize, 2, 4] {
                let b = theoretical_bounds(n, *k, t);
                let bound = if triangle_form {
                    b.triangle_upper.value
                } else {
                    b.kgon_upper.value
                };
                // U_[0] is empty.
                let (mean, se) = if t == 1 {
                    (0.0, 0.0)
                } else {
                    let r = find(recs, n, t - 1, Metric::UFirstT);
                    (r.mean, r.stderr)
                };
                cells += 1;
                let lhs = mean + 3.0 * se;
                if lhs > bound {
                    pass = false;
                }
                if lhs / bound > worst {
                    worst = lhs / bound;
                    worst_at = format!("k={k} n={n} t={t}: {lhs:.2} vs {bound:.2}");
                }
            }
        }
    }
    outcome(
        pass,
        format!("{cells} cells, largest (mean + 3 se)/bound = {worst:.3} at {worst_at}"),
    )
}

fn square_slope() -> Outcome {
    let ns: Vec<usize> = (9..=15).map(|e| 1usize << e).collect();
    let recs = sweep("regular:k=4", ns, vec![1, 2], 300, 8, vec![Metric::UFirstT]);
    let mut pass = true;
    let mut parts = Vec::new();
    for t in [1, 2] {
        let sel: Vec<EstimateRecord> = recs.iter().filter(|r| r.t == t).cloned().collect();
        let f = fit_log_slope(&sel).unwrap();
        let need = 2.0 * t as f64 * 0.85;
        pass &= f.slope >= need;
        parts.push(format!(
            "t={t}: slope {:.3} (need >= {need:.2}, r2 {:.3})",
            f.slope, f.r_squared
        ));
    }
    outcome(pass, parts.join("; "))
}

fn hull_slope() -> Outcome {
    let ns: Vec<usize> = (7..=14).map(|e| 1usize << e).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, shape, target) in [
        ("triangle", "regular:k=3", 2.0),
        ("square", "regular:k=4", 8.0 / 3.0),
    ] {
        let recs = sweep(shape, ns.clone(), vec![1], 1000, 9, vec![Metric::HullSize]);
        let f = fit_log_slope(&recs).unwrap();
        let ok = (f.slope - target).abs() <= 0.1 * target;
        pass &= ok;
        parts.push(format!("{name}: slope {:.3} vs {target:.3}", f.slope));
    }
    outcome(pass, parts.join("; "))
}

fn area_inequality(tri: &[EstimateRecord]) -> Outcome {
    let mut pass = true;
    let mut min_z = f64::INFINITY;
    for &n in &[100, 1000, 10000] {
        for &t in &[1usize, 2, 4] {
            let r = find(tri, n, t, Metric::DepthAreaGap);
            if r.mean < -3.0 * r.stderr {
                pass = false;
            }
            let z = if r.stderr > 0.0 {
                r.mean / r.stderr
            } else {
                f64::INFINITY
            };
            min_z = min_z.min(z);
        }
    }
    outcome(
        pass,
        format!("9 cells, smallest gap/se = {min_z:.2} (need >= -3)"),
    )
}

fn convex_layer_ratio() -> Outcome {
    let mut max_ratio = 0.0f64;
    let mut at = String::new();
    let mut finite = true;
    let mut dominated = true;
    for k in [3, 4, 6] {
        let recs = sweep(
            &format!("regular:k={k}"),
            vec![1000, 10000],
            vec![2, 3, 4],
            200,
            11,
            vec![Metric::VFirstTSize, Metric::VFirstT, Metric::UFirstT],
        );
        for &n in &[1000, 10000] {
            for t in 2..=4 {
                let ratio = find(&recs, n, t, Metric::VFirstTSize).mean;
                finite &= ratio.is_finite();
                if ratio > max_ratio {
                    max_ratio = ratio;
                    at = format!("k={k} n={n} t={t}");
                }
                dominated &= find(&recs, n, t, Metric::VFirstT).mean
                    >= find(&recs, n, t, Metric::UFirstT).mean;
            }
        }
    }
    outcome(
        finite && dominated,
        format!("max mean|V_[t]|/(k t^3 ln(n/(k t^2))) = {max_ratio:.4} at {at}; V >= U on all cells: {dominated}"),
    )
}

fn enclosing_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut hull_bad = 0;
    let mut para_bad = 0;
    for inst in 0..200 {
        let k = [3, 4, 6][rng.random_range(0..3)];
        let t = rng.random_range(0..=3);
        let n = rng.random_range(t + 3..=14);
        let xs = sample_uniform_with(&kgon_region(k), n, &mut rng);
        let a = min_area_hull_excluding(&xs, t, SearchMode::Oracle).unwrap();
        let b = min_area_hull_excluding(&xs, t, SearchMode::Pruned).unwrap();
        if a.area != b.area {
            hull_bad += 1;
            write_artifact(
                &format!("hull_mismatch_{inst}.json"),
                serde_json::json!({"t": t, "points": xs, "oracle": a, "pruned": b}),
            );
        }
    }
    for inst in 0..200 {
        let k = [3, 4, 6][rng.random_range(0..3)];
        let t = rng.random_range(0..=2);
        let n = rng.random_range(t + 3..=12);
        let xs = sample_uniform_with(&kgon_region(k), n, &mut rng);
        let a = min_area_parallelogram_excluding(&xs, t, SearchMode::Oracle).unwrap();
        let b = min_area_parallelogram_excluding(&xs, t, SearchMode::Pruned).unwrap();
        if (a.area - b.area).abs() > 1e-6 * a.area {
            para_bad += 1;
            write_artifact(
                &format!("parallelogram_mismatch_{inst}.json"),
                serde_json::json!({"t": t, "points": xs, "oracle": a, "pruned": b}),
            );
        }
    }
    outcome(
        hull_bad == 0 && para_bad == 0,
        format!("hull: {hull_bad}/200 mismatches; parallelogram: {para_bad}/200 mismatches"),
    )
}

fn solver_vs_grid() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (mut above, mut gap_bad) = (0, 0);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let k = [3, 4, 6][rng.random_range(0..3)];
        let n = rng.random_range(3..=30);
        let xs = sample_uniform_with(&kgon_region(k), n, &mut rng);
        let s = min_area_parallelogram(&xs).unwrap().area;
        let g = common::grid_parallelogram_area(xs.points(), 2000);
        // Relative slack for rounding in the two area evaluations.
        if s > g * (1.0 + 1e-12) {
            above += 1;
        }
        let rel = (g - s) / s;
        worst = worst.max(rel);
        if rel > 1e-3 {
            gap_bad += 1;
        }
    }
    outcome(
        above == 0 && gap_bad == 0,
        format!("100 instances: solver above grid {above}, grid - solver > 1e-3 rel {gap_bad}, largest rel gap {worst:.2e}"),
    )
}

fn determinism(reference: &[EstimateRecord]) -> Outcome {
    let cfg = ExperimentConfig {
        shape: "regular:k=3".parse().unwrap(),
        n_values: vec![100, 1000, 10000],
        t_values: vec![1, 2, 3, 4],
        trials: 300,
        master_seed: 6,
        metrics: vec![Metric::UFirstT, Metric::DepthAreaGap],
        threads: Some(4),
        record_timing: false,
    };
    let again = run_estimate(&cfg).unwrap();
    let (a, b) = (format_csv(reference).unwrap(), format_csv(&again).unwrap());
    outcome(
        a == b,
        format!("1 vs 4 workers: {} bytes, identical: {}", a.len(), a == b),
    )
}

fn main() {
    let mut failed = 0;
    let mut run = |id: &str, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!(
            "[{tag}] {id:>2} {name}: {} ({:.1}s)",
            o.detail,
            start.elapsed().as_secs_f64()
        );
    };
    // Shared sweep: every k-gon, n in {1e2, 1e3, 1e4}, t up to 4.
    let start = Instant::now();
    let by_k: Vec<(usize, Vec<EstimateRecord>)> = [3, 4, 6, 12]
        .iter()
        .map(|&k| {
            (
                k,
                sweep(
                    &format!("regular:k={k}"),
                    vec![100, 1000, 10000],
                    vec![1, 2, 3, 4],
                    300,
                    6,
                    vec![Metric::UFirstT, Metric::DepthAreaGap],
                ),
            )
        })
        .collect();
    println!("shared layer sweep: {:.1}s", start.elapsed().as_secs_f64());

    run("1", "sweep depth equals brute force", &mut depth_oracle);
    run("2", "structural layer checks", &mut structural);
    run("3", "proof gadget checks", &mut gadgets);
    run("4", "grid cell numbering", &mut numbering);
    run("5", "Efron identity", &mut efron);
    run("6", "triangle upper bound", &mut || {
        upper_bounds(&by_k, true)
    });
    run("7", "k-gon upper bound", &mut || upper_bounds(&by_k, false));
    run("8", "square lower-bound slope", &mut square_slope);
    run("9", "hull size slope", &mut hull_slope);
    run("10", "depth count vs layer area", &mut || {
        area_inequality(&by_k[0].1)
    });
    run(
        "11",
        "convex layer ratio boundedness",
        &mut convex_layer_ratio,
    );
    run("12", "enclosing pruned = oracle", &mut enclosing_oracles);
    run("13", "parallelogram solver vs grid", &mut solver_vs_grid);
    run("14", "determinism across workers", &mut || {
        determinism(&by_k[0].1)
    });
    println!("{failed} of 14 criteria failed");
    if failed > 0 && std::env::var("ACCEPTANCE_STRICT").as_deref() == Ok("1") {
        std::process::exit(1);
    }
}
