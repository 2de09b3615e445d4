mod common;

use std::time::Instant;

use common::*;
use dspl::decomp::Method;
use dspl::harness::bench::{gen_queries, Built};
use dspl::harness::{
    format_subdivision, load_subdivision, parse_subdivision, random_subdivision, run_bench, save_subdivision,
    BenchConfig, Kind, QueryMode, Structure, Weights,
};
use dspl::geom::Point;
use dspl::quadtree::QuadtreePl;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use dspl::sevengon::{decompose, SevenGonOptions};

#[test]
fn file_round_trip_keeps_faces_weights_and_bounds() {
    let sub = random_subdivision(800, Kind::General, Weights::Zipf(1.2), 5).unwrap();
    let path = std::env::temp_dir().join(format!("dspl_roundtrip_{}.sub", std::process::id()));
    save_subdivision(&sub, &path).unwrap();
    let back = load_subdivision(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(back.faces().len(), sub.faces().len());
    assert_eq!(back.gammas(), sub.gammas());
    assert_eq!(back.bounds(), sub.bounds());
    for (a, b) in back.faces().iter().zip(sub.faces()) {
        assert_eq!(a.polygon.vertices(), b.polygon.vertices());
    }
    assert_eq!(format_subdivision(&back), format_subdivision(&sub));
}

#[test]
fn large_file_loads_quickly() {
    let text = format_subdivision(&random_subdivision(100_000, Kind::ConvexCells, Weights::Uniform, 1).unwrap());
    let t = Instant::now();
    let sub = parse_subdivision(&text).unwrap();
    let secs = t.elapsed().as_secs_f64();
    assert!(sub.n() >= 100_000);
    assert!(secs < 5.0, "{secs:.2}s");
}

#[test]
fn quadtree_is_cheap_away_from_boundary_hugging_edges() {
    let sub = boundary_frames(1000, 1e-6);
    let qt = QuadtreePl::build(&sub, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = 20_000;
    let total: usize = (0..m)
        .map(|_| qt.query(Point::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).unwrap().cost)
        .sum();
    let mean = total as f64 / m as f64;
    let log_n = (sub.n() as f64).log2();
    assert!(mean < 0.5 * log_n, "mean cost {mean} vs log2 n {log_n}");
}

#[test]
fn empty_subdivision_bench_is_trivial() {
    let sub = dspl::subdivision::Subdivision::empty(dspl::subdivision::Bounds::unit());
    let cfg = BenchConfig { structure: Structure::Quadtree, mode: QueryMode::Uniform, queries: 1000, ..Default::default() };
    let r = run_bench(&sub, &cfg).unwrap();
    assert_eq!(r.max_cost, 0);
    let qt = QuadtreePl::build(&sub, 0).unwrap();
    assert_eq!(qt.tree().leaf_count(), 1);
}

#[test]
fn near_right_corner_after_snapping() {
    // a short subdivision edge tilted by tolerance-level snapping
    let d = decompose(&star(371, 1027), SevenGonOptions { rotate_gp: true, ..Default::default() }).unwrap();
    assert!(d.regions.iter().all(|r| r.len() <= 7));
}

#[test]
fn weighted_and_quadtree_agree_with_brute_force() {
    let sub = random_subdivision(3000, Kind::General, Weights::Area, 12).unwrap();
    for structure in [Structure::Weighted, Structure::Quadtree] {
        let built = Built::build(&sub, structure, Method::Auto, true, 2).unwrap();
        for (i, p) in gen_queries(&sub, QueryMode::NearBoundary, 5000, 8).into_iter().enumerate() {
            assert_eq!(built.locate(&sub, i, p).unwrap().face, sub.locate_brute(p), "{structure:?} {p:?}");
        }
    }
}
