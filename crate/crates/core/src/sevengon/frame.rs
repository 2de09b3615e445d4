//! Recursion polygons in a normalized frame: the corner at the origin, the
//! horizontal subdivision edge along +x and the vertical one along +y.

use super::loops::BoundaryLoop;
use crate::error::{Error, Result};
use crate::geom::Point;

/// Sine tolerance for treating two edge directions as parallel.
const ANGLE_TOL: f64 = 1e-9;
/// Cosine tolerance for accepting a right angle between the two edges.
const RIGHT_ANGLE_TOL: f64 = 1e-4;

/// Orthonormal frame; `ey` is `ex` turned left, or turned right for a
/// reflection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub origin: Point,
    pub ex: Point,
    pub ey: Point,
}

impl Frame {
    pub fn new(origin: Point, ex: Point, reflect: bool) -> Self {
        let ex = snap_axis(ex);
        let left = Point::new(-ex.y, ex.x);
        Frame { origin, ex, ey: if reflect { -left } else { left } }
    }

    pub fn to_local(&self, p: Point) -> Point {
        let d = p - self.origin;
        Point::new(d.dot(self.ex), d.dot(self.ey))
    }

    pub fn to_global(&self, q: Point) -> Point {
        self.origin + self.ex * q.x + self.ey * q.y
    }

    pub fn is_reflection(&self) -> bool {
        self.ex.cross(self.ey) < 0.0
    }

    pub fn is_axis_aligned(&self) -> bool {
        self.ex.x == 0.0 || self.ex.y == 0.0
    }
}

fn snap_axis(d: Point) -> Point {
    let u = d * (1.0 / d.norm());
    if u.y.abs() <= ANGLE_TOL {
        Point::new(u.x.signum(), 0.0)
    } else if u.x.abs() <= ANGLE_TOL {
        Point::new(0.0, u.y.signum())
    } else {
        u
    }
}

fn unit(d: Point) -> Point {
    d * (1.0 / d.norm())
}

/// How the subdivision edges of a piece are arranged.
#[derive(Debug, Clone, PartialEq)]
pub enum SubShape {
    /// One subdivision edge, starting at this loop index.
    Single(usize),
    /// Two edges meeting at a right angle; the run starts at this index.
    Corner(usize),
    /// The run turns right (reflex) at loop index `at`, with `before`
    /// run edges ahead of it and `after` edges behind it.
    Reflex { at: usize, before: usize, after: usize },
    Invalid(String),
}

/// A two-edge run is a corner when its angle is right up to
/// `RIGHT_ANGLE_TOL`, or when the far end of the shorter edge is within
/// `tol` of where a right angle would put it.
pub fn classify(lp: &BoundaryLoop, tol: f64) -> SubShape {
    let n = lp.len();
    let starts: Vec<usize> = (0..n).filter(|&i| lp.sub[i] && !lp.sub[lp.prev(i)]).collect();
    if starts.is_empty() {
        return SubShape::Invalid(if lp.sub.iter().all(|&s| s) {
            "piece bounded by subdivision edges only".into()
        } else {
            "piece without subdivision edges".into()
        });
    }
    if starts.len() > 1 {
        return SubShape::Invalid(format!("{} separate subdivision runs", starts.len()));
    }
    let s = starts[0];
    let mut len = 0;
    while lp.sub[(s + len) % n] {
        len += 1;
    }
    let mut turns = Vec::new();
    for k in 1..len {
        let j = (s + k) % n;
        let d1 = unit(lp.pts[j] - lp.pts[lp.prev(j)]);
        let d2 = unit(lp.pts[lp.next(j)] - lp.pts[j]);
        let cr = d1.cross(d2);
        if cr < -ANGLE_TOL {
            return SubShape::Reflex { at: j, before: k, after: len - k };
        }
        if cr > ANGLE_TOL || d1.dot(d2) < 0.0 {
            turns.push(d1.dot(d2));
        }
    }
    match (len, turns.as_slice()) {
        (1, _) => SubShape::Single(s),
        (2, [c]) if c.abs() <= RIGHT_ANGLE_TOL => SubShape::Corner(s),
        (2, [c]) => {
            let j = (s + 1) % n;
            let short = lp.pts[j].dist(lp.pts[lp.prev(j)]).min(lp.pts[j].dist(lp.pts[lp.next(j)]));
            if c.abs() * short <= tol {
                SubShape::Corner(s)
            } else {
                SubShape::Invalid(format!("subdivision run of {len} edges with turns {turns:?}"))
            }
        }
        _ => SubShape::Invalid(format!("subdivision run of {len} edges with turns {turns:?}")),
    }
}

/// A piece bounded by up to two orthogonal subdivision edges meeting at the
/// corner and a chain of input-polygon edges.
#[derive(Debug, Clone)]
pub struct RecursionPolygon {
    pub frame: Frame,
    pub h_len: f64,
    pub v_len: f64,
    /// Local coordinates, from `(h_len, 0)` to `(0, v_len)`.
    pub chain: Vec<Point>,
    pub chain_vertex: Vec<bool>,
    /// How far the ends of the chain were moved to make the corner exact.
    pub slack: f64,
    /// The same piece in world coordinates, counter-clockwise.
    pub boundary: BoundaryLoop,
}

impl RecursionPolygon {
    pub fn from_loop(lp: BoundaryLoop, tol: f64) -> Result<Self> {
        let n = lp.len();
        let at = |k: usize| (k % n + n) % n;
        // (corner, e_h end, e_v end, chain indices in local order)
        let (frame, idx): (Frame, Vec<usize>) = match classify(&lp, tol) {
            SubShape::Single(i) => {
                let (u, v) = (lp.pts[i], lp.pts[at(i + 1)]);
                let angle_at = |o: Point, a: Point, b: Point| {
                    let (da, db) = (unit(a - o), unit(b - o));
                    da.cross(db).atan2(da.dot(db)).rem_euclid(std::f64::consts::TAU)
                };
                let au = angle_at(u, v, lp.pts[at(i + n - 1)]);
                let av = std::f64::consts::TAU - angle_at(v, u, lp.pts[at(i + 2)]);
                // the sharper corner lets the square climb towards the far vertex
                if au <= av {
                    let idx = (1..=n).map(|k| at(i + k)).collect();
                    (Frame::new(u, v - u, false), idx)
                } else {
                    let idx = (0..n).map(|k| at(i + n - k)).collect();
                    (Frame::new(v, u - v, true), idx)
                }
            }
            SubShape::Corner(i) => {
                let (u, w, v) = (lp.pts[i], lp.pts[at(i + 1)], lp.pts[at(i + 2)]);
                if w.dist(v) >= w.dist(u) {
                    let idx = (2..=n).map(|k| at(i + k)).collect();
                    (Frame::new(w, v - w, false), idx)
                } else {
                    let idx = (0..n - 1).map(|k| at(i + n - k)).collect();
                    (Frame::new(w, u - w, true), idx)
                }
            }
            other => return Err(Error::Internal(format!("not a recursion polygon: {other:?}"))),
        };
        let mut chain: Vec<Point> = idx.iter().map(|&k| frame.to_local(lp.pts[k])).collect();
        let chain_vertex = idx.iter().map(|&k| lp.vertex[k]).collect();
        let h_len = chain[0].x;
        let last = chain.len() - 1;
        let v_len = chain[last].y.max(0.0);
        let (a, b) = (Point::new(h_len, 0.0), Point::new(0.0, v_len));
        let slack = chain[0].dist(a).max(chain[last].dist(b));
        chain[0] = a;
        chain[last] = b;
        if h_len <= 0.0 {
            return Err(Error::Internal("recursion polygon with empty horizontal edge".into()));
        }
        Ok(RecursionPolygon { frame, h_len, v_len, chain, chain_vertex, slack, boundary: lp })
    }

    pub fn corner(&self) -> Point {
        self.frame.origin
    }

    /// Horizontal subdivision edge in world coordinates.
    pub fn e_h(&self) -> (Point, Point) {
        (self.corner(), self.frame.to_global(Point::new(self.h_len, 0.0)))
    }

    /// Vertical subdivision edge in world coordinates; may have zero length.
    pub fn e_v(&self) -> (Point, Point) {
        (self.corner(), self.frame.to_global(Point::new(0.0, self.v_len)))
    }

    /// Size used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.boundary.extent()
    }
}
