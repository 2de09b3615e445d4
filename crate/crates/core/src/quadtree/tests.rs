use super::*;
use crate::geom::{Segment, SimplePolygon};
use crate::subdivision::Face;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
    Segment { a: Point::new(ax, ay), b: Point::new(bx, by) }
}

/// `k x k` cells of a jittered grid, each split by a random diagonal. With
/// `snap`, interior points are rounded to multiples of `1/snap`.
fn triangles(k: usize, seed: u64, snap: Option<f64>) -> Subdivision {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1.0 / k as f64;
    let mut pts = vec![Point::new(0.0, 0.0); (k + 1) * (k + 1)];
    for j in 0..=k {
        for i in 0..=k {
            let mut x = i as f64 * h;
            let mut y = j as f64 * h;
            if i > 0 && i < k {
                x += rng.gen_range(-0.3..0.3) * h;
            }
            if j > 0 && j < k {
                y += rng.gen_range(-0.3..0.3) * h;
            }
            if let Some(s) = snap {
                x = (x * s).round() / s;
                y = (y * s).round() / s;
            }
            pts[j * (k + 1) + i] = Point::new(x, y);
        }
    }
    let at = |i: usize, j: usize| pts[j * (k + 1) + i];
    let mut polys = Vec::new();
    for j in 0..k {
        for i in 0..k {
            let (a, b, c, d) = (at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
            if rng.gen_bool(0.5) {
                polys.push(vec![a, b, c]);
                polys.push(vec![a, c, d]);
            } else {
                polys.push(vec![a, b, d]);
                polys.push(vec![b, c, d]);
            }
        }
    }
    let g = 1.0 / polys.len() as f64;
    let faces = polys.into_iter().map(|p| Face { polygon: SimplePolygon::new(p).unwrap(), gamma: g }).collect();
    Subdivision::new(faces, Some(Bounds::unit())).unwrap()
}

#[test]
fn depth_cap() {
    assert_eq!(d_max(16), 2);
    assert_eq!([0, 1, 2, 4, 5, 17, 64, 65].map(d_max), [0, 0, 1, 1, 2, 3, 3, 4]);
}

#[test]
fn diagonal_marks_its_cells_and_corner_neighbours() {
    let m = mark_segments_bruteforce(&[seg(0.0, 0.0, 1.0, 1.0)], 2);
    let mut want = GridMarking::new(2);
    for i in 0..4 {
        want.set(i, i);
    }
    for (x, y) in [(1, 0), (0, 1), (2, 1), (1, 2), (3, 2), (2, 3)] {
        want.set(x, y);
    }
    assert_eq!(m, want);
    assert_eq!(mark_segments_sweep(&[seg(0.0, 0.0, 1.0, 1.0)], 2), want);
}

#[test]
fn vertex_on_grid_corner_marks_all_four() {
    let e = [seg(0.5, 0.5, 0.6, 0.7)];
    let mut want = GridMarking::new(2);
    for (x, y) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        want.set(x, y);
    }
    assert_eq!(mark_segments_bruteforce(&e, 2), want);
    assert_eq!(mark_segments_sweep(&e, 2), want);
}

#[test]
fn grid_aligned_edges_mark_both_sides() {
    let e = [seg(0.25, 0.0, 0.25, 0.5), seg(0.5, 0.75, 1.0, 0.75), seg(0.0, 1.0, 1.0, 1.0)];
    let m = mark_segments_bruteforce(&e, 2);
    assert!(m.get(0, 0) && m.get(1, 0) && m.get(0, 2) && m.get(1, 2));
    assert!(m.get(2, 2) && m.get(2, 3) && m.get(3, 2) && m.get(0, 3));
    assert!(!m.get(3, 0));
    assert_eq!(mark_segments_sweep(&e, 2), m);
}

#[test]
fn sweep_matches_bruteforce_on_meshes() {
    for seed in 0..12 {
        let k = 4 + seed as usize * 2;
        let fine = (8 * k).next_power_of_two() as f64;
        let snap = [Some(fine), Some(4.0 * fine), None][seed as usize % 3];
        let sub = triangles(k, seed, snap);
        for d in [d_max(sub.n()), 2, 5] {
            assert_eq!(mark_cells_sweep(&sub, d), mark_cells_bruteforce(&sub, d), "seed {seed} depth {d}");
        }
    }
}

#[test]
fn tree_answers_match_oracle_and_certificates_hold() {
    for seed in 0..4 {
        let sub = triangles(6 + 3 * seed as usize, seed, None);
        let qt = QuadtreePl::build(&sub, seed).unwrap();
        let rep = qt.audit().unwrap();
        assert_eq!(rep.empty_leaves + rep.boundary_leaves, qt.tree().leaf_count());
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
        for _ in 0..3000 {
            let p = Point::new(rng.gen(), rng.gen());
            let d = sub.dist_to_edges(p);
            if d < 1e-9 {
                continue;
            }
            let a = qt.query(p).unwrap();
            assert_eq!(a.face, sub.locate_brute(p), "{p:?}");
            assert!(d <= a.distance_bound(sub.n()), "{p:?} d={d} {a:?}");
        }
    }
}

#[test]
fn empty_subdivision_is_one_leaf() {
    let sub = Subdivision::empty(Bounds::unit());
    let qt = QuadtreePl::build(&sub, 1).unwrap();
    assert_eq!(qt.tree().nodes().len(), 1);
    let a = qt.query(Point::new(0.3, 0.3)).unwrap();
    assert_eq!((a.face, a.cost, a.fallback), (None, 0, None));
}

/// A small square face near one corner: most of the unit square is covered
/// by shallow empty leaves.
#[test]
fn corner_cluster() {
    let s = 0.01;
    let sq = SimplePolygon::new(vec![
        Point::new(0.0, 0.0),
        Point::new(s, 0.0),
        Point::new(s, s),
        Point::new(0.0, s),
    ])
    .unwrap();
    let sub = Subdivision::new(vec![Face { polygon: sq, gamma: 1.0 }], Some(Bounds::unit())).unwrap();
    let qt = QuadtreePl::build(&sub, 0).unwrap();
    qt.audit().unwrap();
    let marked = mark_cells_sweep(qt.unit_subdivision(), qt.tree().d_max()).count();
    assert!(qt.tree().leaf_count() <= 4 * marked * qt.tree().d_max().max(1) as usize);
    let a = qt.query(Point::new(0.5, 0.5)).unwrap();
    assert!(a.depth <= 2 && a.face.is_none());
    let b = qt.query(Point::new(0.005, 0.005)).unwrap();
    assert_eq!(b.face, Some(0));
}

#[test]
fn queries_use_original_coordinates() {
    let big = SimplePolygon::new(vec![
        Point::new(10.0, 10.0),
        Point::new(30.0, 10.0),
        Point::new(30.0, 30.0),
        Point::new(10.0, 30.0),
    ])
    .unwrap();
    let sub = Subdivision::new(vec![Face { polygon: big, gamma: 1.0 }], None).unwrap();
    let qt = QuadtreePl::build(&sub, 0).unwrap();
    assert_eq!(qt.query(Point::new(20.0, 20.0)).unwrap().face, Some(0));
    assert!(qt.query(Point::new(5.0, 20.0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Random non-crossing segments on a fine dyadic lattice, so that
    /// vertices on grid lines and grid-aligned edges are common.
    #[test]
    fn sweep_equals_bruteforce(raw in prop::collection::vec((0u32..=32, 0u32..=32, 0u32..=32, 0u32..=32), 1..40), d in 0u32..5) {
        let mut edges: Vec<Segment> = Vec::new();
        for (ax, ay, bx, by) in raw {
            let s = seg(ax as f64 / 32.0, ay as f64 / 32.0, bx as f64 / 32.0, by as f64 / 32.0);
            if s.a == s.b {
                continue;
            }
            if edges.iter().all(|t| !segments_touch(&s, t)) {
                edges.push(s);
            }
        }
        prop_assert_eq!(mark_segments_sweep(&edges, d), mark_segments_bruteforce(&edges, d));
    }
}

fn segments_touch(s: &Segment, t: &Segment) -> bool {
    crate::geom::segments_intersect(s.a, s.b, t.a, t.b)
}
