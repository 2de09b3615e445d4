use super::*;
use crate::geom::Location;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn star(n: usize, seed: u64) -> SimplePolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * (k as f64 + rng.gen_range(0.1..0.9)) / n as f64;
            let r = rng.gen_range(0.3..1.0);
            Point::new(r * t.cos(), r * t.sin())
        })
        .collect();
    SimplePolygon::new(pts).unwrap()
}

fn square(rot: f64) -> SimplePolygon {
    let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
        .iter()
        .map(|&(x, y)| Point::new(x, y).rotated(rot))
        .collect();
    SimplePolygon::new(pts).unwrap()
}

fn region_of(d: &SevenGonDecomposition, p: Point) -> Option<&SevenGon> {
    d.regions.iter().find(|r| {
        SimplePolygon::new(r.vertices.clone())
            .map(|q| q.contains(p) != Location::Outside)
            .unwrap_or(false)
    })
}

pub(crate) fn check(poly: &SimplePolygon, d: &SevenGonDecomposition, samples: usize, seed: u64) {
    let total: f64 = d.regions.iter().map(|r| r.area()).sum();
    let rel = (total - poly.area()).abs() / poly.area();
    assert!(rel < 1e-9, "area mismatch {rel:e}");
    for r in &d.regions {
        assert!(r.len() >= 3 && r.len() <= 7, "{} vertices", r.len());
        let q = SimplePolygon::new(r.vertices.clone()).unwrap();
        assert!(q.is_convex());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = poly.bbox();
    let mut got = 0;
    while got < samples {
        let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if poly.contains(p) != Location::Inside {
            continue;
        }
        got += 1;
        let r = region_of(d, p).unwrap_or_else(|| panic!("{p:?} not covered"));
        let dist = poly.dist_to_boundary(p);
        assert!(r.area() >= 0.5 * dist * dist * (1.0 - 1e-6), "half-distance fails at {p:?}");
    }
}

#[test]
fn rotated_square_gives_four_squares() {
    let sq = square(0.1);
    let d = decompose(&sq, SevenGonOptions { p0: Some(sq.centroid()), ..Default::default() }).unwrap();
    assert_eq!(d.regions.len(), 4);
    for r in &d.regions {
        assert!((r.area() - 0.25).abs() < 1e-9, "{}", r.area());
    }
    check(&sq, &d, 2000, 1);
}

#[test]
fn axis_square_needs_rotation_flag() {
    let sq = square(0.0);
    assert!(matches!(decompose(&sq, SevenGonOptions::default()), Err(Error::GeneralPosition(_))));
    let d = decompose(&sq, SevenGonOptions { rotate_gp: true, ..Default::default() }).unwrap();
    check(&sq, &d, 1000, 2);
}

#[test]
fn random_stars() {
    for seed in 0..30 {
        let n = 8 + (seed as usize * 7) % 60;
        let p = star(n, seed);
        let d = decompose(&p, SevenGonOptions::default()).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        check(&p, &d, 500, seed);
        assert!(d.regions.len() <= 20 * n, "seed {seed}: {} regions", d.regions.len());
    }
}
