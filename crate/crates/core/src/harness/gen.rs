//! Seeded input generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{loop_signed_area, Point, SimplePolygon};
use crate::subdivision::{Bounds, Face, Subdivision};

/// Eight-vertex polygon with a thin column rising from the bottom edge.
///
/// Concrete realization (the shape is all that matters): body
/// `[-1.5, 1.5] x [0, 2.5]`, column `[-eps/2, eps/2] x [0, 1]` cut out of
/// it. `r`, `s` are the column's base points, `u`, `v` its top corners. The
/// unit square centered on `uv` stays at distance at least 1/2 from every
/// edge except `uv`, `ur` and `vs`.
pub fn lowerbound_polygon(eps: f64) -> Result<SimplePolygon> {
    if !(eps > 0.0 && eps < 0.1) {
        return Err(Error::OutOfRange(format!("column width {eps} not in (0, 0.1)")));
    }
    let h = eps / 2.0;
    SimplePolygon::new(vec![
        Point::new(-1.5, 0.0),
        Point::new(-h, 0.0), // r
        Point::new(-h, 1.0), // u
        Point::new(h, 1.0),  // v
        Point::new(h, 0.0),  // s
        Point::new(1.5, 0.0),
        Point::new(1.5, 2.5),
        Point::new(-1.5, 2.5),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kind {
    /// Cells of a random line arrangement clipped to the unit square.
    #[default]
    ConvexCells,
    /// Strips between wavy x-monotone chains, cut by vertical walls: simple
    /// faces with reflex chains.
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Weights {
    #[default]
    Uniform,
    Area,
    /// `1 / rank^s` over a seeded random ranking.
    Zipf(f64),
}

/// A subdivision of the unit square with about `n` edges.
pub fn random_subdivision(n: usize, kind: Kind, weights: Weights, seed: u64) -> Result<Subdivision> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("edge count {n} below 3")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys = match kind {
        Kind::ConvexCells => arrangement_cells(n, &mut rng),
        Kind::General => strip_cells(n, &mut rng),
    };
    let polys = polys.into_iter().map(SimplePolygon::new).collect::<Result<Vec<_>>>()?;
    let gammas = face_weights(&polys, weights, &mut rng);
    let faces = polys.into_iter().zip(gammas).map(|(polygon, gamma)| Face { polygon, gamma }).collect();
    Subdivision::new(faces, Some(Bounds::unit()))
}

fn face_weights(polys: &[SimplePolygon], weights: Weights, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let raw: Vec<f64> = match weights {
        Weights::Uniform => vec![1.0; polys.len()],
        Weights::Area => polys.iter().map(|p| p.area()).collect(),
        Weights::Zipf(s) => {
            let mut rank: Vec<usize> = (1..=polys.len()).collect();
            rank.shuffle(rng);
            rank.iter().map(|&r| (r as f64).powf(-s)).collect()
        }
    };
    let sum: f64 = raw.iter().sum();
    raw.iter().map(|w| w / sum).collect()
}

/// Random line through the unit square as `(point, direction)`.
fn random_line(rng: &mut ChaCha8Rng) -> (Point, Point) {
    let p = Point::new(rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
    let t: f64 = rng.gen_range(0.0..std::f64::consts::PI);
    (p, Point::new(t.cos(), t.sin()))
}

/// Parameters along line `i` of its crossings with the other inner lines
/// strictly inside the square (lines 0..4 are the sides).
fn line_crossings(lines: &[(Point, Point)], i: usize) -> Vec<(f64, usize)> {
    let (p, d) = lines[i];
    let mut out = Vec::new();
    for (j, &(q, e)) in lines.iter().enumerate() {
        if j == i || j < 4 {
            continue;
        }
        let den = d.cross(e);
        if den.abs() < 1e-12 {
            continue;
        }
        let t = (q - p).cross(e) / den;
        let x = p + d * t;
        if x.x > 0.0 && x.x < 1.0 && x.y > 0.0 && x.y < 1.0 {
            out.push((t, j));
        }
    }
    out
}

/// Cells of the arrangement of the four square sides and random lines,
/// with shared vertices computed once per pair of lines.
fn arrangement_cells(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Point>> {
    // the four sides are lines 0..4
    let mut lines: Vec<(Point, Point)> = vec![
        (Point::new(0.0, 0.0), Point::new(1.0, 0.0)),
        (Point::new(1.0, 0.0), Point::new(0.0, 1.0)),
        (Point::new(1.0, 1.0), Point::new(-1.0, 0.0)),
        (Point::new(0.0, 1.0), Point::new(0.0, -1.0)),
    ];
    // each inner line adds ~2 edges for itself plus 2 per crossing
    let mut edges = 4;
    while edges < n {
        lines.push(random_line(rng));
        let k = lines.len() - 1;
        edges += 3 + 2 * line_crossings(&lines, k).len();
    }
    let mut vid: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
    let mut pts: Vec<Point> = Vec::new();
    let mut vertex = |i: usize, j: usize, lines: &[(Point, Point)]| -> usize {
        let key = (i.min(j), i.max(j));
        *vid.entry(key).or_insert_with(|| {
            let (p, d) = lines[key.0];
            let (q, e) = lines[key.1];
            let x = p + d * ((q - p).cross(e) / d.cross(e));
            // square corners and side hits are snapped onto the square
            let x = Point::new(x.x.clamp(0.0, 1.0), x.y.clamp(0.0, 1.0));
            let x = match key.0 {
                0 => Point::new(x.x, 0.0),
                1 => Point::new(1.0, x.y),
                2 => Point::new(x.x, 1.0),
                3 => Point::new(0.0, x.y),
                _ => x,
            };
            pts.push(x);
            pts.len() - 1
        })
    };
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let link = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
        let m = a.max(b) + 1;
        if adj.len() < m {
            adj.resize(m, Vec::new());
        }
        adj[a].push(b);
        adj[b].push(a);
    };
    for i in 0..lines.len() {
        let mut hits: Vec<(f64, usize)> = if i < 4 {
            let (p, d) = lines[i];
            let mut h: Vec<(f64, usize)> = (0..lines.len())
                .filter(|&j| j != i)
                .filter_map(|j| {
                    let (q, e) = lines[j];
                    let den = d.cross(e);
                    if den.abs() < 1e-12 {
                        return None;
                    }
                    let t = (q - p).cross(e) / den;
                    (0.0..=1.0).contains(&t).then_some((t, j))
                })
                .collect();
            h.retain(|&(t, j)| j < 4 || (t > 0.0 && t < 1.0));
            h
        } else {
            let mut h = line_crossings(&lines, i);
            let (p, d) = lines[i];
            for s in 0..4 {
                let (q, e) = lines[s];
                let den = d.cross(e);
                if den.abs() < 1e-12 {
                    continue;
                }
                let u = (q - p).cross(d) / den;
                if u > 0.0 && u < 1.0 {
                    h.push(((q - p).cross(e) / den, s));
                }
            }
            h
        };
        hits.sort_by(|a, b| a.0.total_cmp(&b.0));
        let ids: Vec<usize> = hits.iter().map(|&(_, j)| vertex(i, j, &lines)).collect();
        for w in ids.windows(2) {
            if w[0] != w[1] {
                link(w[0], w[1], &mut adj);
            }
        }
    }
    faces_of_graph(&pts, &adj)
}

/// Bounded faces of a plane graph, traced with the left-hand rule.
fn faces_of_graph(pts: &[Point], adj: &[Vec<usize>]) -> Vec<Vec<Point>> {
    let mut nbr: Vec<Vec<usize>> = adj.to_vec();
    for (v, l) in nbr.iter_mut().enumerate() {
        l.sort_unstable();
        l.dedup();
        let c = pts[v];
        l.sort_by(|&a, &b| {
            let (da, db) = (pts[a] - c, pts[b] - c);
            da.y.atan2(da.x).total_cmp(&db.y.atan2(db.x))
        });
    }
    let mut used: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut out = Vec::new();
    for u in 0..nbr.len() {
        for &v in &nbr[u] {
            if used.contains(&(u, v)) {
                continue;
            }
            let mut ring = Vec::new();
            let (mut a, mut b) = (u, v);
            while used.insert((a, b)) {
                ring.push(pts[a]);
                // next edge: clockwise neighbour of `a` around `b`
                let l = &nbr[b];
                let k = l.iter().position(|&x| x == a).unwrap();
                let c = l[(k + l.len() - 1) % l.len()];
                a = b;
                b = c;
            }
            if loop_signed_area(&ring) > 0.0 {
                out.push(ring);
            }
        }
    }
    out
}

/// Faces between wavy chains, cut by vertical walls at chain breakpoints.
fn strip_cells(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Point>> {
    let side = ((n as f64 / 1.3).sqrt().ceil() as usize).max(2);
    let (rows, cols) = (side, side);
    let xs: Vec<f64> = (0..=cols)
        .map(|t| if t == 0 || t == cols { t as f64 / cols as f64 } else { (t as f64 + rng.gen_range(-0.3..0.3)) / cols as f64 })
        .collect();
    // chain 0 is the bottom side, chain `rows` the top
    let ys: Vec<Vec<f64>> = (0..=rows)
        .map(|i| {
            (0..=cols)
                .map(|_| if i == 0 || i == rows { i as f64 / rows as f64 } else { (i as f64 + rng.gen_range(-0.4..0.4)) / rows as f64 })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..rows {
        let mut walls = vec![0];
        for t in 1..cols {
            if rng.gen_bool(0.3) {
                walls.push(t);
            }
        }
        walls.push(cols);
        for w in walls.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mut ring = Vec::new();
            for t in a..=b {
                if i > 0 || t == a || t == b {
                    ring.push(Point::new(xs[t], ys[i][t]));
                }
            }
            for t in (a..=b).rev() {
                if i + 1 < rows || t == a || t == b {
                    ring.push(Point::new(xs[t], ys[i + 1][t]));
                }
            }
            out.push(ring);
        }
    }
    out
}
