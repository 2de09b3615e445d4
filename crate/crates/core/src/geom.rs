//! Planar primitives: points, segments, simple polygons and the brute-force
//! predicates the rest of the crate is checked against.
//!
//! Combinatorial decisions (orientation, side-of-segment, on-boundary) are
//! exact. Metric quantities (areas, distances, intersection points) are
//! plain `f64` with relative tolerance [`EPS_GEOM`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Relative tolerance for derived metric quantities.
pub const EPS_GEOM: f64 = 1e-9;

/// Rotation used to restore general position (no shared x or y coordinates).
pub const GP_ROTATION: f64 = 1e-3;

#[derive(Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn checked(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(Error::NonFinite(x, y))
        }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Rotation about the origin.
    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Lexicographic comparison by `x`, then `y`.
    pub fn lex_cmp(&self, o: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Collinear,
    Right,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Exact sign of `(b - a) x (c - a)`.
pub fn orient(a: Point, b: Point, c: Point) -> Orientation {
    let d = robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    );
    // robust returns a positive value for counter-clockwise triples
    if d > 0.0 {
        Orientation::Left
    } else if d < 0.0 {
        Orientation::Right
    } else {
        Orientation::Collinear
    }
}

/// `c` lies on the closed segment `ab` (exact).
pub fn on_segment(a: Point, b: Point, c: Point) -> bool {
    orient(a, b, c) == Orientation::Collinear
        && c.x >= a.x.min(b.x)
        && c.x <= a.x.max(b.x)
        && c.y >= a.y.min(b.y)
        && c.y <= a.y.max(b.y)
}

/// Closed segments `ab` and `cd` share at least one point (exact).
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Euclidean distance from `p` to the closed segment `ab`.
pub fn point_segment_dist(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if a == b {
            return Err(Error::DegenerateSegment(a));
        }
        Ok(Segment { a, b })
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn dist(&self, p: Point) -> f64 {
        point_segment_dist(p, self.a, self.b)
    }

    pub fn contains(&self, p: Point) -> bool {
        on_segment(self.a, self.b, p)
    }

    pub fn intersects(&self, o: &Segment) -> bool {
        segments_intersect(self.a, self.b, o.a, o.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Shoelace signed area of a closed vertex loop.
pub fn loop_signed_area(vs: &[Point]) -> f64 {
    let n = vs.len();
    if n < 3 {
        return 0.0;
    }
    // translate to the first vertex to limit cancellation
    let o = vs[0];
    let mut s = 0.0;
    for i in 1..n - 1 {
        s += (vs[i] - o).cross(vs[i + 1] - o);
    }
    0.5 * s
}

/// Drop repeated points and exactly collinear vertices from a closed loop.
pub fn merge_collinear(vs: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(vs.len());
    for &p in vs {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    loop {
        let n = out.len();
        if n < 3 {
            return out;
        }
        let mut removed = false;
        let mut i = 0;
        while i < out.len() && out.len() >= 3 {
            let n = out.len();
            let prev = out[(i + n - 1) % n];
            let next = out[(i + 1) % n];
            if orient(prev, out[i], next) == Orientation::Collinear {
                out.remove(i);
                removed = true;
            } else {
                i += 1;
            }
        }
        if !removed {
            return out;
        }
    }
}

/// A counter-clockwise simple polygon without collinear vertex chains.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
}

/// Offending vertex pairs found by [`SimplePolygon::validate_general_position`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GeneralPositionReport {
    pub shared_x: Vec<(usize, usize)>,
    pub shared_y: Vec<(usize, usize)>,
}

impl GeneralPositionReport {
    pub fn is_ok(&self) -> bool {
        self.shared_x.is_empty() && self.shared_y.is_empty()
    }

    pub fn violations(&self) -> usize {
        self.shared_x.len() + self.shared_y.len()
    }
}

impl SimplePolygon {
    /// Validates and normalizes a vertex loop. Collinear chains are merged;
    /// clockwise and self-intersecting boundaries are rejected.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        for p in &vertices {
            Point::checked(p.x, p.y)?;
        }
        let vs = merge_collinear(&vertices);
        if vs.len() < 3 {
            return Err(Error::TooFewVertices(vs.len()));
        }
        let area = loop_signed_area(&vs);
        if area <= 0.0 {
            return Err(Error::Clockwise(area));
        }
        check_simple(&vs)?;
        Ok(SimplePolygon { vertices: vs })
    }

    /// Builds a polygon from a loop the caller already knows to be simple and
    /// counter-clockwise (collinear vertices are still merged).
    pub(crate) fn from_trusted(vertices: Vec<Point>) -> Result<Self> {
        let vs = merge_collinear(&vertices);
        if vs.len() < 3 {
            return Err(Error::TooFewVertices(vs.len()));
        }
        let area = loop_signed_area(&vs);
        if area <= 0.0 {
            return Err(Error::Clockwise(area));
        }
        Ok(SimplePolygon { vertices: vs })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn signed_area(&self) -> f64 {
        loop_signed_area(&self.vertices)
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn centroid(&self) -> Point {
        let o = self.vertices[0];
        let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
        for (p, q) in self.edges() {
            let (p, q) = (p - o, q - o);
            let c = p.cross(q);
            a2 += c;
            cx += (p.x + q.x) * c;
            cy += (p.y + q.y) * c;
        }
        Point::new(o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2))
    }

    pub fn bbox(&self) -> (Point, Point) {
        bbox_of(&self.vertices)
    }

    /// Euclidean distance from `p` to the boundary (`p` may be outside).
    pub fn dist_to_boundary(&self, p: Point) -> f64 {
        self.edges()
            .map(|(a, b)| point_segment_dist(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Even-odd classification with exact boundary detection.
    pub fn contains(&self, p: Point) -> Location {
        let mut inside = false;
        for (a, b) in self.edges() {
            if on_segment(a, b, p) {
                return Location::Boundary;
            }
            if (a.y > p.y) != (b.y > p.y) {
                let o = orient(a, b, p);
                let crosses = if b.y > a.y {
                    o == Orientation::Left
                } else {
                    o == Orientation::Right
                };
                if crosses {
                    inside = !inside;
                }
            }
        }
        if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// Winding number by angle summation; independent of [`Self::contains`].
    pub fn winding_number(&self, p: Point) -> i32 {
        let mut total = 0.0;
        for (a, b) in self.edges() {
            let (u, v) = (a - p, b - p);
            total += u.cross(v).atan2(u.dot(v));
        }
        (total / std::f64::consts::TAU).round() as i32
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            orient(
                self.vertices[(i + n - 1) % n],
                self.vertices[i],
                self.vertices[(i + 1) % n],
            ) == Orientation::Left
        })
    }

    pub fn first_reflex_vertex(&self) -> Option<usize> {
        let n = self.vertices.len();
        (0..n).find(|&i| {
            orient(
                self.vertices[(i + n - 1) % n],
                self.vertices[i],
                self.vertices[(i + 1) % n],
            ) != Orientation::Left
        })
    }

    /// Lists vertex pairs that share an x- or a y-coordinate.
    pub fn validate_general_position(&self) -> GeneralPositionReport {
        let shared = |key: fn(&Point) -> f64| {
            let mut idx: Vec<usize> = (0..self.vertices.len()).collect();
            idx.sort_by(|&i, &j| key(&self.vertices[i]).total_cmp(&key(&self.vertices[j])));
            let mut pairs = Vec::new();
            let mut start = 0;
            for k in 1..=idx.len() {
                if k == idx.len() || key(&self.vertices[idx[k]]) != key(&self.vertices[idx[start]]) {
                    for a in start..k {
                        for b in a + 1..k {
                            pairs.push((idx[a].min(idx[b]), idx[a].max(idx[b])));
                        }
                    }
                    start = k;
                }
            }
            pairs.sort_unstable();
            pairs
        };
        GeneralPositionReport {
            shared_x: shared(|p| p.x),
            shared_y: shared(|p| p.y),
        }
    }

    /// The polygon rotated about the origin.
    pub fn rotated(&self, angle: f64) -> Result<Self> {
        SimplePolygon::from_trusted(self.vertices.iter().map(|p| p.rotated(angle)).collect())
    }
}

pub fn bbox_of(pts: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// Counter-clockwise convex hull (Andrew's monotone chain) with exactly
/// collinear points removed.
pub fn convex_hull(pts: &[Point]) -> Vec<Point> {
    let mut v: Vec<Point> = pts.to_vec();
    v.sort_by(|a, b| a.lex_cmp(b));
    v.dedup();
    if v.len() < 3 {
        return v;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * v.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(v.iter())
        } else {
            Box::new(v.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) != Orientation::Left
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Removes vertices of a convex loop that lie within `tol` of the line
/// through their neighbours.
pub fn simplify_convex(mut pts: Vec<Point>, tol: f64) -> Vec<Point> {
    loop {
        let n = pts.len();
        if n <= 3 {
            return pts;
        }
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            let base = c - a;
            let len = base.norm();
            let h = if len == 0.0 { 0.0 } else { (b - a).cross(base).abs() / len };
            if h <= tol && best.map_or(true, |(_, bh)| h < bh) {
                best = Some((i, h));
            }
        }
        match best {
            Some((i, _)) => {
                pts.remove(i);
            }
            None => return pts,
        }
    }
}

/// Ear-clipping triangulation of a counter-clockwise simple loop, as index
/// triples. Quadratic; used for seeding and tests.
pub fn ear_clip(vs: &[Point]) -> Vec<[usize; 3]> {
    let mut idx: Vec<usize> = (0..vs.len()).collect();
    let mut out = Vec::with_capacity(vs.len().saturating_sub(2));
    let mut guard = 0;
    while idx.len() > 3 && guard < 4 * vs.len() * vs.len() + 16 {
        guard += 1;
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (ia, ib, ic) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let (a, b, c) = (vs[ia], vs[ib], vs[ic]);
            if orient(a, b, c) != Orientation::Left {
                continue;
            }
            let blocked = idx.iter().any(|&j| {
                j != ia
                    && j != ib
                    && j != ic
                    && orient(a, b, vs[j]) != Orientation::Right
                    && orient(b, c, vs[j]) != Orientation::Right
                    && orient(c, a, vs[j]) != Orientation::Right
            });
            if !blocked {
                out.push([ia, ib, ic]);
                idx.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            break;
        }
    }
    if idx.len() == 3 {
        out.push([idx[0], idx[1], idx[2]]);
    }
    out
}

fn check_simple(vs: &[Point]) -> Result<()> {
    let n = vs.len();
    let edge = |i: usize| (vs[i], vs[(i + 1) % n]);
    // sort edges by min x so the pair scan can stop early
    let mut order: Vec<usize> = (0..n).collect();
    let minx = |i: usize| vs[i].x.min(vs[(i + 1) % n].x);
    let maxx = |i: usize| vs[i].x.max(vs[(i + 1) % n].x);
    order.sort_by(|&i, &j| minx(i).total_cmp(&minx(j)));
    for (k, &i) in order.iter().enumerate() {
        let (a, b) = edge(i);
        for &j in &order[k + 1..] {
            if minx(j) > maxx(i) {
                break;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            let (c, d) = edge(j);
            if adjacent {
                // adjacent edges share exactly one endpoint; they must not fold back
                let (shared, other_i, other_j) = if (i + 1) % n == j { (b, a, d) } else { (a, b, c) };
                if n > 3
                    && orient(other_i, shared, other_j) == Orientation::Collinear
                    && (other_i - shared).dot(other_j - shared) > 0.0
                {
                    return Err(Error::NotSimple(i.min(j), i.max(j)));
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return Err(Error::NotSimple(i.min(j), i.max(j)));
            }
        }
    }
    Ok(())
}
