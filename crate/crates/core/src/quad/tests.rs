use super::*;
use crate::geom::SimplePolygon;
use proptest::prelude::*;

fn regular(n: usize, phase: f64) -> Vec<Point> {
    (0..n)
        .map(|k| {
            let t = phase + std::f64::consts::TAU * k as f64 / n as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect()
}

fn is_convex(vs: &[Point]) -> bool {
    SimplePolygon::new(vs.to_vec()).map(|p| p.is_convex() && p.len() == vs.len()).unwrap_or(false)
}

/// Original vertices that appear in one half but not the other.
fn strictly_in(orig: &[Point], mine: &[Point], other: &[Point]) -> usize {
    orig.iter().filter(|v| mine.contains(v) && !other.contains(v)).count()
}

#[test]
fn hexagon_halves_into_quads() {
    let q = ConvexPiece::new(regular(6, 0.0), 0);
    let (a, b) = equal_area_cut(&q).unwrap();
    assert_eq!((a.len(), b.len()), (4, 4));
    assert!((a.area() - b.area()).abs() < 1e-12);
}

#[test]
fn heptagon_cut_is_balanced() {
    let vs = regular(7, 0.3);
    let q = ConvexPiece::new(vs.clone(), 3);
    let (a, b) = equal_area_cut(&q).unwrap();
    let total = q.area();
    for h in [&a, &b] {
        assert!((h.area() - total / 2.0).abs() <= 1e-9 * total);
        assert_eq!((h.parent, h.depth), (3, 1));
    }
    assert!(strictly_in(&vs, &a.vertices, &b.vertices) <= 3);
    assert!(strictly_in(&vs, &b.vertices, &a.vertices) <= 3);
}

#[test]
fn pentagon_gives_two_quads_at_most() {
    let q = ConvexPiece::new(regular(5, 0.1), 0);
    let (a, b) = equal_area_cut(&q).unwrap();
    assert!(a.len() <= 4 && b.len() <= 4);
}

#[test]
fn small_pieces_are_not_cut() {
    let q = ConvexPiece::new(regular(4, 0.2), 0);
    assert_eq!(equal_area_cut(&q), Err(Error::NoCutNeeded(4)));
    let g = SevenGon { vertices: regular(3, 0.0), parent_face: 0, provenance: String::new() };
    assert_eq!(split_to_quads(&g, 0).unwrap().len(), 1);
}

fn convex_poly() -> impl Strategy<Value = Vec<Point>> {
    (3usize..=7, prop::collection::vec(0.0f64..1.0, 7), 0.2f64..5.0, 0.0f64..3.0).prop_map(|(n, gaps, sx, rot)| {
        let total: f64 = gaps[..n].iter().map(|g| g + 0.2).sum();
        let mut t = 0.0;
        (0..n)
            .map(|k| {
                t += (gaps[k] + 0.2) / total * std::f64::consts::TAU;
                Point::new(sx * t.cos(), t.sin()).rotated(rot)
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn quads_tile_the_sevengon(vs in convex_poly()) {
        prop_assume!(is_convex(&vs));
        let g = SevenGon { vertices: vs.clone(), parent_face: 0, provenance: String::new() };
        let pieces = split_to_quads(&g, 7).unwrap();
        prop_assert!([1, 2, 4].contains(&pieces.len()));
        let area = g.area();
        let sum: f64 = pieces.iter().map(|p| p.area()).sum();
        prop_assert!((sum - area).abs() <= 1e-9 * area);
        for p in &pieces {
            prop_assert!(p.len() >= 3 && p.len() <= 4);
            prop_assert!(is_convex(&p.vertices));
            prop_assert!(p.area() >= area / 4.0 * (1.0 - 1e-6));
            prop_assert_eq!(p.parent, 7);
        }
    }

    #[test]
    fn cut_respects_vertex_bound(vs in convex_poly()) {
        prop_assume!(vs.len() >= 5 && is_convex(&vs));
        let (a, b) = equal_area_cut(&ConvexPiece::new(vs.clone(), 0)).unwrap();
        let half = vs.len() / 2;
        prop_assert!(strictly_in(&vs, &a.vertices, &b.vertices) <= half);
        prop_assert!(strictly_in(&vs, &b.vertices, &a.vertices) <= half);
        prop_assert!(a.len() <= half + 2 && b.len() <= half + 2);
    }
}
