//! Triangulation of convex polygons with the 1-distance property.
//!
//! The polygon is cut along its diameter. Every piece is then bounded by one
//! cut (the base) and a convex chain of polygon edges meeting the base at
//! acute angles; the triangle on the base with apex at the chain vertex
//! farthest from the base is emitted and the two side pieces recurse.

use crate::error::{Error, Result};
use crate::geom::{Point, SimplePolygon};

/// Chains shorter than this are scanned linearly instead of ternary-searched.
const LINEAR_SCAN_BELOW: usize = 8;

/// A recursion piece: polygon vertices `start, start + 1, ..., end` (indices
/// taken modulo the vertex count) form the convex chain, and the base runs
/// from `end` back to `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvexChainPiece {
    pub start: usize,
    pub end: usize,
}

impl ConvexChainPiece {
    /// Number of chain vertices strictly between the base endpoints.
    pub fn interior_len(&self) -> usize {
        self.end - self.start - 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistTriangulation {
    /// Counter-clockwise vertex index triples into the input polygon.
    pub triangles: Vec<[usize; 3]>,
    /// Certificate constant of the distance property.
    pub alpha: f64,
}

impl DistTriangulation {
    pub fn triangle_points(&self, poly: &SimplePolygon) -> Vec<[Point; 3]> {
        self.triangles
            .iter()
            .map(|t| [poly.vertex(t[0]), poly.vertex(t[1]), poly.vertex(t[2])])
            .collect()
    }
}

fn ensure_convex(poly: &SimplePolygon) -> Result<()> {
    match poly.first_reflex_vertex() {
        Some(i) => Err(Error::NotConvex(i)),
        None => Ok(()),
    }
}

/// Rotating calipers over antipodal pairs. Ties go to the lexicographically
/// smallest index pair.
pub fn diameter(poly: &SimplePolygon) -> Result<((usize, usize), f64)> {
    ensure_convex(poly)?;
    let n = poly.len();
    let v = poly.vertices();
    let d2 = |i: usize, j: usize| {
        let d = v[i % n] - v[j % n];
        d.dot(d)
    };
    let tri2 = |i: usize, j: usize, k: usize| (v[j % n] - v[i % n]).cross(v[k % n] - v[i % n]);

    let mut best = (f64::NEG_INFINITY, (0usize, 0usize));
    let consider = |i: usize, j: usize, best: &mut (f64, (usize, usize))| {
        let (a, b) = ((i % n).min(j % n), (i % n).max(j % n));
        if a == b {
            return;
        }
        let d = d2(a, b);
        if d > best.0 || (d == best.0 && (a, b) < best.1) {
            *best = (d, (a, b));
        }
    };
    let mut j = 1;
    for i in 0..n {
        let i1 = i + 1;
        while tri2(i, i1, j + 1) > tri2(i, i1, j) {
            j += 1;
        }
        consider(i, j, &mut best);
        consider(i1, j, &mut best);
        // a chain edge parallel to the caliper gives a second antipodal vertex
        if tri2(i, i1, j + 1) == tri2(i, i1, j) {
            consider(i, j + 1, &mut best);
            consider(i1, j + 1, &mut best);
        }
    }
    Ok((best.1, best.0.sqrt()))
}

/// Chain vertex farthest from the supporting line of the base.
pub fn farthest_chain_vertex(poly: &SimplePolygon, piece: ConvexChainPiece) -> Result<usize> {
    if piece.end < piece.start + 2 {
        return Err(Error::EmptyChain);
    }
    let n = poly.len();
    let a = poly.vertex(piece.start);
    let b = poly.vertex(piece.end);
    let height = |k: usize| (a - b).cross(poly.vertex(k) - b);
    let (mut lo, mut hi) = (piece.start + 1, piece.end - 1);
    if hi - lo + 1 >= LINEAR_SCAN_BELOW {
        // heights along the chain rise then fall (one plateau of length <= 2)
        while hi - lo > 2 {
            let m1 = lo + (hi - lo) / 3;
            let m2 = hi - (hi - lo) / 3;
            let (h1, h2) = (height(m1), height(m2));
            if h1 < h2 {
                lo = m1 + 1;
            } else if h1 > h2 {
                hi = m2 - 1;
            } else {
                lo = m1;
                hi = m2;
            }
        }
        lo = lo.saturating_sub(1).max(piece.start + 1);
        hi = (hi + 1).min(piece.end - 1);
    }
    let mut best = lo;
    for k in lo..=hi {
        let (hk, hb) = (height(k), height(best));
        if hk > hb || (hk == hb && k % n < best % n) {
            best = k;
        }
    }
    Ok(best)
}

/// Triangulation with the 1-distance property; exactly `n - 2` triangles.
pub fn triangulate_convex(poly: &SimplePolygon) -> Result<DistTriangulation> {
    ensure_convex(poly)?;
    let n = poly.len();
    let ((i, j), _) = diameter(poly)?;
    let mut triangles = Vec::with_capacity(n - 2);
    // left piece first: the chain i..j, then j..i+n
    let mut stack = vec![
        ConvexChainPiece { start: j, end: i + n },
        ConvexChainPiece { start: i, end: j },
    ];
    while let Some(piece) = stack.pop() {
        if piece.end < piece.start + 2 {
            continue;
        }
        debug_assert!(base_is_piece_diameter(poly, piece));
        let v = farthest_chain_vertex(poly, piece)?;
        triangles.push([piece.start % n, v % n, piece.end % n]);
        stack.push(ConvexChainPiece { start: v, end: piece.end });
        stack.push(ConvexChainPiece { start: piece.start, end: v });
    }
    debug_assert_eq!(triangles.len(), n - 2);
    Ok(DistTriangulation { triangles, alpha: 1.0 })
}

fn base_is_piece_diameter(poly: &SimplePolygon, piece: ConvexChainPiece) -> bool {
    let len = piece.end - piece.start + 1;
    if len > 128 {
        return true;
    }
    let base = poly.vertex(piece.start).dist(poly.vertex(piece.end));
    (piece.start..=piece.end).all(|p| {
        (p..=piece.end).all(|q| poly.vertex(p).dist(poly.vertex(q)) <= base * (1.0 + 1e-9))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn regular(n: usize, r: f64, phase: f64) -> SimplePolygon {
        let pts = (0..n)
            .map(|k| {
                let t = phase + std::f64::consts::TAU * k as f64 / n as f64;
                Point::new(r * t.cos(), r * t.sin())
            })
            .collect();
        SimplePolygon::new(pts).unwrap()
    }

    fn brute_diameter(p: &SimplePolygon) -> f64 {
        let v = p.vertices();
        let mut best: f64 = 0.0;
        for a in v {
            for b in v {
                best = best.max(a.dist(*b));
            }
        }
        best
    }

    #[test]
    fn diameter_of_rotated_square() {
        let sq = regular(4, std::f64::consts::FRAC_1_SQRT_2, 0.1 + std::f64::consts::FRAC_PI_4);
        let ((i, j), d) = diameter(&sq).unwrap();
        assert_eq!(j - i, 2);
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn diameter_of_hexagon() {
        let h = regular(6, 1.0, 0.0);
        let ((i, j), d) = diameter(&h).unwrap();
        assert_eq!(j - i, 3);
        assert!((d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn diameter_of_thin_rectangle() {
        let r = SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(10.0, 0.0),
            Point::new(10.0, 0.1),
            Point::new(0.0, 0.1),
        ])
        .unwrap();
        let (_, d) = diameter(&r).unwrap();
        assert_eq!(d, brute_diameter(&r));
        assert!((d - 100.01f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn diameter_rejects_nonconvex() {
        let p = SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 0.3),
            Point::new(2.0, 2.0),
            Point::new(0.0, 2.0),
        ])
        .unwrap();
        assert!(matches!(diameter(&p), Err(Error::NotConvex(_))));
        assert!(triangulate_convex(&p).is_err());
    }

    #[test]
    fn farthest_single_vertex() {
        let t = regular(3, 1.0, 0.3);
        let v = farthest_chain_vertex(&t, ConvexChainPiece { start: 0, end: 2 }).unwrap();
        assert_eq!(v, 1);
        assert!(farthest_chain_vertex(&t, ConvexChainPiece { start: 0, end: 1 }).is_err());
    }

    #[test]
    fn farthest_on_hexagon_half() {
        let h = regular(6, 1.0, 0.0);
        let v = farthest_chain_vertex(&h, ConvexChainPiece { start: 0, end: 3 }).unwrap();
        // vertices 1 and 2 tie; lowest index wins
        assert_eq!(v, 1);
        let h = regular(6, 1.0, 0.2);
        let ((i, j), _) = diameter(&h).unwrap();
        let v = farthest_chain_vertex(&h, ConvexChainPiece { start: i, end: j }).unwrap();
        assert!(v > i && v < j);
    }

    #[test]
    fn triangle_and_square() {
        let t = regular(3, 1.0, 0.3);
        assert_eq!(triangulate_convex(&t).unwrap().triangles.len(), 1);
        let sq = regular(4, std::f64::consts::FRAC_1_SQRT_2, 0.1);
        let tri = triangulate_convex(&sq).unwrap();
        assert_eq!(tri.triangles.len(), 2);
        for [a, b, c] in tri.triangle_points(&sq) {
            let area = 0.5 * (b - a).cross(c - a);
            assert!((area - 0.5).abs() < 1e-12);
        }
    }
}
