//! Equal-area cuts that turn convex 7-gons into triangles and quadrilaterals.
//!
//! A chord through a boundary point `p` is swept around the polygon; for each
//! start the opposite endpoint is the one that halves the area. Each cut
//! keeps at most `n/2` original vertices strictly on either side, so a 7-gon
//! becomes two 5-gons and then four quadrilaterals.

use crate::error::{Error, Result};
use crate::geom::{bbox_of, loop_signed_area, orient, Orientation, Point, EPS_GEOM};
use crate::sevengon::SevenGon;

/// A convex piece produced by repeated halving.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPiece {
    /// Counter-clockwise.
    pub vertices: Vec<Point>,
    /// Index of the 7-gon this piece came from.
    pub parent: usize,
    /// Number of cuts between the 7-gon and this piece.
    pub depth: u32,
}

impl ConvexPiece {
    pub fn new(vertices: Vec<Point>, parent: usize) -> Self {
        ConvexPiece { vertices, parent, depth: 0 }
    }

    pub fn area(&self) -> f64 {
        loop_signed_area(&self.vertices)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// A chord from a point on edge `ea` to a point on edge `eb`; an endpoint
/// that coincides with a vertex is recorded by that vertex index.
#[derive(Debug, Clone, Copy)]
struct Chord {
    p: Point,
    ea: usize,
    p_at: Option<usize>,
    q: Point,
    eb: usize,
    q_at: Option<usize>,
}

/// Area to the left of the chord from `p` (on edge `ea`) to vertex `k`,
/// i.e. of the loop `p, v[ea+1], ..., v[k]`.
fn fan_area(vs: &[Point], p: Point, ea: usize, k: usize) -> f64 {
    let n = vs.len();
    let mut acc = 0.0;
    let mut prev = p;
    let mut i = (ea + 1) % n;
    loop {
        acc += prev.cross(vs[i]);
        prev = vs[i];
        if i == k {
            break;
        }
        i = (i + 1) % n;
    }
    0.5 * (acc + prev.cross(p))
}

/// Chord starting at `p` on edge `ea` that leaves half the area on its left.
fn halving_chord(vs: &[Point], p: Point, ea: usize, snap: f64) -> Chord {
    let n = vs.len();
    let half = 0.5 * loop_signed_area(vs);
    // the vertices after p in boundary order, as offsets 1..=n
    let vert = |m: usize| (ea + m) % n;
    // fan_area grows with m; find the last vertex whose fan stays below half
    let (mut lo, mut hi) = (1usize, n);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if fan_area(vs, p, ea, vert(mid)) < half {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (a, b) = (vs[vert(lo)], vs[vert(lo + 1)]);
    let base = fan_area(vs, p, ea, vert(lo));
    // adding the triangle p, a, a + t (b - a) is linear in t
    let full = 0.5 * (a - p).cross(b - p);
    let t = if full.abs() > 0.0 { ((half - base) / full).clamp(0.0, 1.0) } else { 0.0 };
    let mut q = a.lerp(b, t);
    let mut q_at = None;
    if q.dist(a) <= snap {
        q = a;
        q_at = Some(vert(lo));
    } else if q.dist(b) <= snap {
        q = b;
        q_at = Some(vert(lo + 1));
    }
    Chord { p, ea, p_at: None, q, eb: vert(lo), q_at }
}

/// Vertex indices strictly left and right of the chord.
fn strict_sides(vs: &[Point], c: &Chord) -> (usize, usize) {
    let (mut l, mut r) = (0, 0);
    for &v in vs {
        match orient(c.p, c.q, v) {
            Orientation::Left => l += 1,
            Orientation::Right => r += 1,
            Orientation::Collinear => {}
        }
    }
    (l, r)
}

/// Boundary from `from` (a chord endpoint on edge `e_from`) forward to the
/// other endpoint on edge `e_to`.
fn arc(vs: &[Point], from: Point, from_at: Option<usize>, e_from: usize, to: Point, to_at: Option<usize>, e_to: usize) -> Vec<Point> {
    let n = vs.len();
    let mut out = vec![from];
    let mut i = match from_at {
        Some(k) => (k + 1) % n,
        None => (e_from + 1) % n,
    };
    let stop = match to_at {
        Some(k) => k,
        None => (e_to + 1) % n,
    };
    let mut guard = 0;
    while i != stop && guard < n {
        out.push(vs[i]);
        i = (i + 1) % n;
        guard += 1;
    }
    out.push(to);
    out.dedup();
    if out.len() > 1 && out[0] == *out.last().unwrap() {
        out.pop();
    }
    out
}

/// Candidate chord starts: every vertex, then edge midpoints.
fn starts(vs: &[Point]) -> impl Iterator<Item = (Point, usize, Option<usize>)> + '_ {
    let n = vs.len();
    let verts = (0..n).map(move |i| (vs[i], i, Some(i)));
    let mids = (0..n).map(move |i| (vs[i].lerp(vs[(i + 1) % n], 0.5), i, None));
    verts.chain(mids)
}

fn cut(vs: &[Point]) -> Result<(Vec<Point>, Vec<Point>)> {
    let n = vs.len();
    let (lo, hi) = bbox_of(vs);
    let snap = EPS_GEOM * lo.dist(hi);
    let bound = n / 2;
    for (p, ea, p_at) in starts(vs) {
        let mut c = halving_chord(vs, p, ea, snap);
        c.p_at = p_at;
        if c.q_at == p_at && p_at.is_some() {
            continue;
        }
        let (l, r) = strict_sides(vs, &c);
        if l > bound || r > bound {
            continue;
        }
        let left = arc(vs, c.p, c.p_at, c.ea, c.q, c.q_at, c.eb);
        let right = arc(vs, c.q, c.q_at, c.eb, c.p, c.p_at, c.ea);
        if left.len() >= 3 && right.len() >= 3 {
            return Ok((left, right));
        }
    }
    Err(Error::Internal(format!("no balanced halving chord for a {n}-gon")))
}

/// Cuts a convex polygon with at least five vertices into two halves of
/// equal area, with at most `n/2` of its vertices strictly on either side.
pub fn equal_area_cut(q: &ConvexPiece) -> Result<(ConvexPiece, ConvexPiece)> {
    if q.len() <= 4 {
        return Err(Error::NoCutNeeded(q.len()));
    }
    let (a, b) = cut(&q.vertices)?;
    let child = |vertices| ConvexPiece { vertices, parent: q.parent, depth: q.depth + 1 };
    Ok((child(a), child(b)))
}

/// Splits a 7-gon into one, two or four triangles and convex quadrilaterals,
/// each with at least a quarter of its area.
pub fn split_to_quads(q: &SevenGon, id: usize) -> Result<Vec<ConvexPiece>> {
    let root = ConvexPiece::new(q.vertices.clone(), id);
    if root.len() <= 4 {
        return Ok(vec![root]);
    }
    let (a, b) = equal_area_cut(&root)?;
    if a.len() <= 4 && b.len() <= 4 {
        return Ok(vec![a, b]);
    }
    // a quadrilateral next to a 5-gon is halved too, keeping pieces balanced
    let mut out = Vec::with_capacity(4);
    for half in [a, b] {
        let (x, y) = cut(&half.vertices)?;
        for vertices in [x, y] {
            out.push(ConvexPiece { vertices, parent: id, depth: 2 });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
