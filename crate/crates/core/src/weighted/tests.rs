use super::*;
use crate::decomp::{decompose_subdivision, Method};
use crate::geom::SimplePolygon;
use crate::subdivision::{Bounds, Face};
use rand::Rng;

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> SimplePolygon {
    SimplePolygon::new(vec![Point::new(x0, y0), Point::new(x1, y0), Point::new(x1, y1), Point::new(x0, y1)]).unwrap()
}

/// Guillotine cuts of the unit square on a coarse grid: many shared
/// coordinates, vertical edges and T-junctions.
fn guillotine(cells: usize, seed: u64) -> Subdivision {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut todo = vec![(0.0, 0.0, 1.0, 1.0)];
    let mut done = Vec::new();
    while let Some((x0, y0, x1, y1)) = todo.pop() {
        if done.len() + todo.len() + 1 >= cells || (x1 - x0) < 0.1 && (y1 - y0) < 0.1 {
            done.push((x0, y0, x1, y1));
            continue;
        }
        let snap = |v: f64| (v * 64.0).round() / 64.0;
        if (x1 - x0) >= (y1 - y0) {
            let x = snap(rng.gen_range(x0 + 0.3 * (x1 - x0)..x1 - 0.3 * (x1 - x0)));
            todo.push((x0, y0, x, y1));
            todo.push((x, y0, x1, y1));
        } else {
            let y = snap(rng.gen_range(y0 + 0.3 * (y1 - y0)..y1 - 0.3 * (y1 - y0)));
            todo.push((x0, y0, x1, y));
            todo.push((x0, y, x1, y1));
        }
    }
    let g = 1.0 / done.len() as f64;
    let faces = done.into_iter().map(|(a, b, c, d)| Face { polygon: rect(a, b, c, d), gamma: g }).collect();
    Subdivision::new(faces, Some(Bounds::unit())).unwrap()
}

/// Unit square cut by a zigzag into two non-convex faces.
fn zigzag(gamma_low: f64) -> Subdivision {
    let zig: Vec<Point> = (0..=8).map(|k| Point::new(k as f64 / 8.0, if k % 2 == 0 { 0.4 } else { 0.6 })).collect();
    let mut low = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)];
    low.extend(zig.iter().rev());
    let mut high: Vec<Point> = zig.clone();
    high.extend([Point::new(1.0, 1.0), Point::new(0.0, 1.0)]);
    let faces = vec![
        Face { polygon: SimplePolygon::new(low).unwrap(), gamma: gamma_low },
        Face { polygon: SimplePolygon::new(high).unwrap(), gamma: 1.0 - gamma_low },
    ];
    Subdivision::new(faces, Some(Bounds::unit())).unwrap()
}

fn off_boundary_queries(sub: &Subdivision, m: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < m {
        let p = Point::new(rng.gen(), rng.gen());
        if sub.dist_to_edges(p) > 1e-9 {
            out.push(p);
        }
    }
    out
}

#[test]
fn weights_follow_the_formula() {
    let sq = rect(0.0, 0.0, 1.0, 1.0);
    let sub = Subdivision::new(vec![Face { polygon: sq, gamma: 1.0 }], None).unwrap();
    let halves = FaceDecomposition {
        pieces: vec![
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0)],
            vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)],
        ],
        alpha: 1.0,
    };
    let w = assign_weights(&sub, &[halves], WeightPolicy::Strict).unwrap();
    assert_eq!(w.iter().map(|r| r.w).collect::<Vec<_>>(), vec![0.5, 0.5]);

    let sub = zigzag(0.8);
    let quarter = FaceDecomposition { pieces: vec![], alpha: 1.0 };
    let area = sub.faces()[0].polygon.area();
    let mut d = vec![quarter.clone(), quarter];
    // a square piece with a quarter of the lower face's area
    let s = (area / 4.0).sqrt();
    d[0].pieces.push(vec![Point::new(0.0, 0.0), Point::new(s, 0.0), Point::new(s, s), Point::new(0.0, s)]);
    let w = assign_weights(&sub, &d, WeightPolicy::Strict).unwrap();
    assert!((w[0].w - 0.2).abs() < 1e-12);
}

#[test]
fn zero_probability_is_floored_or_rejected() {
    let sub = zigzag(0.0);
    let d = decompose_subdivision(&sub, Method::Whole, false).unwrap();
    assert!(matches!(assign_weights(&sub, &d, WeightPolicy::Strict), Err(Error::NonPositiveWeight(0, _))));
    let w = assign_weights(&sub, &d, WeightPolicy::Floor).unwrap();
    let n = sub.n() as f64;
    assert!(w[0].w > 0.0 && w[0].w >= 1.0 / (2.0 * n * n) / (1.0 + 1.0 / (2.0 * n * n)) * 0.999);
    assert!((w.iter().map(|r| r.w).sum::<f64>() - 1.0).abs() < 1e-9);
}

#[test]
fn inset_square() {
    let sq = rect(0.0, 0.0, 1.0, 1.0);
    let r = inset_convex(sq.vertices(), 0.1).unwrap();
    let want = [(0.1, 0.1), (0.9, 0.1), (0.9, 0.9), (0.1, 0.9)];
    for (p, w) in r.iter().zip(want) {
        assert!(p.dist(Point::new(w.0, w.1)) < 1e-12);
    }
    assert!(inset_convex(sq.vertices(), 0.6).is_none());
}

#[test]
fn single_segment_map() {
    let seg = MaxSegment {
        a: Point::new(0.2, 0.4),
        b: Point::new(0.7, 0.6),
        above: vec![],
        below: vec![],
        priority: 1.0,
    };
    let dag = SearchDag::build_in_order(Bounds::unit(), vec![seg]).unwrap();
    assert_eq!(dag.leaf_count(), 4);
    assert_eq!(dag.node_count(), 7);
    assert_eq!(dag.depth(), 4);
    for p in [Point::new(0.1, 0.5), Point::new(0.5, 0.9), Point::new(0.5, 0.1), Point::new(0.9, 0.5)] {
        assert!(dag.query(p).unwrap().visited_nodes <= 4);
    }
    assert!(matches!(dag.query(Point::new(1.5, 0.5)), Err(Error::OutsideBounds(_))));
}

#[test]
fn empty_map_answers_outer_face() {
    let sub = Subdivision::empty(Bounds::unit());
    let pl = WeightedPl::build_faces(&sub, BuildOptions::default()).unwrap();
    let a = pl.query(Point::new(0.3, 0.3)).unwrap();
    assert_eq!((a.face, a.stats.visited_nodes), (None, 1));
}

#[test]
fn guillotine_faces_match_oracle() {
    for seed in 0..5 {
        let sub = guillotine(60, seed);
        for weighted in [false, true] {
            let pl = WeightedPl::build_faces(&sub, BuildOptions { seed, weighted }).unwrap();
            for p in off_boundary_queries(&sub, 3000, seed) {
                assert_eq!(pl.query(p).unwrap().face, sub.locate_brute(p), "seed {seed} at {p:?}");
            }
        }
    }
}

#[test]
fn on_edge_queries_return_an_incident_face() {
    let sub = guillotine(20, 3);
    let pl = WeightedPl::build_faces(&sub, BuildOptions::default()).unwrap();
    for e in sub.edges() {
        for t in [0.0, 0.25, 0.5, 1.0] {
            let p = e.a.lerp(e.b, t);
            if let Some(f) = pl.query(p).unwrap().face {
                assert_ne!(sub.faces()[f].polygon.contains(p), crate::geom::Location::Outside);
            }
        }
    }
}

#[test]
fn decomposed_zigzag_matches_oracle() {
    let sub = zigzag(0.3);
    let d = decompose_subdivision(&sub, Method::Auto, true).unwrap();
    let regions = assign_weights(&sub, &d, WeightPolicy::Floor).unwrap();
    let total: f64 = regions.iter().map(|r| r.w).sum();
    assert!((total - 1.0).abs() < 1e-9);
    let pl = WeightedPl::build(&sub, regions, BuildOptions::default()).unwrap();
    for p in off_boundary_queries(&sub, 5000, 9) {
        let a = pl.query(p).unwrap();
        assert_eq!(a.face, sub.locate_brute(p), "at {p:?}");
    }
}

#[test]
fn heavy_face_is_cheaper() {
    let sub = guillotine(64, 11);
    let mut g = vec![0.01 / 63.0; 64];
    g[0] = 0.99;
    let sub = sub.with_gammas(&g).unwrap();
    let pl = WeightedPl::build_faces(&sub, BuildOptions::default()).unwrap();
    let (mut heavy, mut light) = ((0.0, 0), (0.0, 0));
    for p in off_boundary_queries(&sub, 20000, 4) {
        let a = pl.query(p).unwrap();
        let slot = if a.face == Some(0) { &mut heavy } else { &mut light };
        slot.0 += a.stats.visited_nodes as f64;
        slot.1 += 1;
    }
    assert!(heavy.1 > 0 && light.1 > 0);
    assert!(heavy.0 / heavy.1 as f64 <= light.0 / light.1 as f64);
}

#[test]
fn same_seed_same_structure() {
    let sub = guillotine(40, 2);
    let a = WeightedPl::build_faces(&sub, BuildOptions { seed: 5, weighted: true }).unwrap();
    let b = WeightedPl::build_faces(&sub, BuildOptions { seed: 5, weighted: true }).unwrap();
    let c = WeightedPl::build_faces(&sub, BuildOptions { seed: 6, weighted: false }).unwrap();
    assert_eq!(a.dag().structural_hash(), b.dag().structural_hash());
    assert_ne!(a.dag().structural_hash(), c.dag().structural_hash());
}
