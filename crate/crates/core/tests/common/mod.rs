#![allow(dead_code)]

use dspl::geom::{Point, SimplePolygon};
use dspl::subdivision::{Bounds, Face, Subdivision};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` points at sorted random angles on a random ellipse.
pub fn convex_polygon(n: usize, seed: u64) -> SimplePolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
    let rot: f64 = rng.gen_range(0.0..3.2);
    let mut t: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
    t.sort_by(f64::total_cmp);
    let pts = t.iter().map(|&t| Point::new(a * t.cos(), b * t.sin()).rotated(rot)).collect();
    SimplePolygon::new(pts).unwrap()
}

/// Star-shaped polygon with `n` vertices at random radii.
pub fn star(n: usize, seed: u64) -> SimplePolygon {
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

/// Axis-aligned comb with `teeth` teeth of random heights.
pub fn comb(teeth: usize, seed: u64) -> SimplePolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = 2.0 * teeth as f64 + 1.0;
    let mut pts = vec![Point::new(0.0, 0.0), Point::new(w, 0.0), Point::new(w, 1.0)];
    for k in (0..teeth).rev() {
        let x = 2.0 * k as f64 + 1.0;
        let h = rng.gen_range(2.0..8.0);
        pts.push(Point::new(x + 1.0, 1.0));
        pts.push(Point::new(x + 1.0, h));
        pts.push(Point::new(x, h));
        pts.push(Point::new(x, 1.0));
    }
    pts.push(Point::new(0.0, 1.0));
    SimplePolygon::new(pts).unwrap()
}

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> SimplePolygon {
    SimplePolygon::new(vec![Point::new(x0, y0), Point::new(x1, y0), Point::new(x1, y1), Point::new(x0, y1)]).unwrap()
}

/// Guillotine cuts of the unit square at multiples of 1/64: edges on grid
/// lines, vertices on grid corners and T-junctions.
pub fn guillotine(cells: usize, seed: u64) -> Subdivision {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut todo = vec![(0.0, 0.0, 1.0, 1.0)];
    let mut done = Vec::new();
    while let Some((x0, y0, x1, y1)) = todo.pop() {
        if done.len() + todo.len() + 1 >= cells || (x1 - x0) < 0.1 && (y1 - y0) < 0.1 {
            done.push((x0, y0, x1, y1));
            continue;
        }
        let snap = |v: f64| (v * 64.0f64).round() / 64.0;
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

/// Triangles fanned around the grid corner (1/2, 1/2), corners of the unit
/// square and side midpoints as outer vertices.
pub fn center_fan() -> Subdivision {
    let c = Point::new(0.5, 0.5);
    let ring = [
        Point::new(0.0, 0.0),
        Point::new(0.5, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 0.5),
        Point::new(1.0, 1.0),
        Point::new(0.5, 1.0),
        Point::new(0.0, 1.0),
        Point::new(0.0, 0.5),
    ];
    let faces = (0..8)
        .map(|i| Face { polygon: SimplePolygon::new(vec![c, ring[i], ring[(i + 1) % 8]]).unwrap(), gamma: 0.125 })
        .collect();
    Subdivision::new(faces, Some(Bounds::unit())).unwrap()
}

/// Uniform point in a convex polygon, drawn by fan triangle area.
pub fn sample_in_convex(vs: &[Point], rng: &mut ChaCha8Rng) -> Point {
    let areas: Vec<f64> = (1..vs.len() - 1).map(|i| (vs[i] - vs[0]).cross(vs[i + 1] - vs[0]).abs()).collect();
    let total: f64 = areas.iter().sum();
    let mut r = rng.gen::<f64>() * total;
    let mut k = 0;
    while k + 1 < areas.len() && r > areas[k] {
        r -= areas[k];
        k += 1;
    }
    let (a, b, c) = (vs[0], vs[k + 1], vs[k + 2]);
    let (mut u, mut v): (f64, f64) = (rng.gen(), rng.gen());
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    a + (b - a) * u + (c - a) * v
}

/// Nested thin frames along the sides of the unit square around one large
/// central face: many edges, all within `rings * step` of the sides.
pub fn boundary_frames(rings: usize, step: f64) -> Subdivision {
    let sq = |t: f64| [Point::new(t, t), Point::new(1.0 - t, t), Point::new(1.0 - t, 1.0 - t), Point::new(t, 1.0 - t)];
    let mut polys = Vec::new();
    for j in 0..rings {
        let (o, i) = (sq(j as f64 * step), sq((j + 1) as f64 * step));
        for k in 0..4 {
            let l = (k + 1) % 4;
            polys.push(SimplePolygon::new(vec![o[k], o[l], i[l], i[k]]).unwrap());
        }
    }
    polys.push(SimplePolygon::new(sq(rings as f64 * step).to_vec()).unwrap());
    let g = 1.0 / polys.len() as f64;
    Subdivision::new(polys.into_iter().map(|polygon| Face { polygon, gamma: g }).collect(), Some(Bounds::unit())).unwrap()
}
