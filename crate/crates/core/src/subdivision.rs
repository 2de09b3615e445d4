//! Planar subdivisions: faces with probabilities inside a bounding square.

use crate::error::{Error, Result};
use crate::geom::{bbox_of, orient, point_segment_dist, Location, Orientation, Point, Segment, SimplePolygon};
use crate::grid::BoxGrid;

/// Axis-aligned bounding square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: Point,
    pub size: f64,
}

impl Bounds {
    pub fn unit() -> Self {
        Bounds { min: Point::new(0.0, 0.0), size: 1.0 }
    }

    pub fn max(&self) -> Point {
        self.min + Point::new(self.size, self.size)
    }

    pub fn contains(&self, p: Point) -> bool {
        let hi = self.max();
        p.x >= self.min.x && p.x <= hi.x && p.y >= self.min.y && p.y <= hi.y
    }

    /// Smallest square with the same lower-left corner covering `pts`.
    pub fn around(pts: &[Point]) -> Self {
        if pts.is_empty() {
            return Bounds::unit();
        }
        let (lo, hi) = bbox_of(pts);
        let size = (hi.x - lo.x).max(hi.y - lo.y);
        Bounds { min: lo, size: if size > 0.0 { size } else { 1.0 } }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub polygon: SimplePolygon,
    /// Query probability of the face.
    pub gamma: f64,
}

/// Faces with pairwise disjoint interiors. Points of the bounding square
/// outside every face belong to no face.
#[derive(Debug, Clone)]
pub struct Subdivision {
    faces: Vec<Face>,
    edges: Vec<Segment>,
    bounds: Bounds,
    face_grid: BoxGrid,
    edge_grid: BoxGrid,
}

/// Tolerance on the sum of face probabilities.
pub const GAMMA_SUM_TOL: f64 = 1e-9;

impl Subdivision {
    /// Validates weights, bounds and edge crossings. With `bounds = None` the
    /// smallest square around the faces is used.
    pub fn new(faces: Vec<Face>, bounds: Option<Bounds>) -> Result<Self> {
        for (i, f) in faces.iter().enumerate() {
            if !f.gamma.is_finite() || f.gamma < 0.0 {
                return Err(Error::NonPositiveWeight(i, f.gamma));
            }
        }
        if !faces.is_empty() {
            let sum: f64 = faces.iter().map(|f| f.gamma).sum();
            if (sum - 1.0).abs() > GAMMA_SUM_TOL {
                return Err(Error::WeightSum(sum));
            }
        }
        let all: Vec<Point> = faces.iter().flat_map(|f| f.polygon.vertices().iter().copied()).collect();
        let bounds = bounds.unwrap_or_else(|| Bounds::around(&all));
        if let Some(p) = all.iter().find(|&&p| !bounds.contains(p)) {
            return Err(Error::InvalidSubdivision(format!("vertex {p:?} lies outside the bounding square")));
        }
        let mut keys: Vec<(Point, Point)> = faces
            .iter()
            .flat_map(|f| f.polygon.edges())
            .map(|(a, b)| if a.lex_cmp(&b).is_lt() { (a, b) } else { (b, a) })
            .collect();
        keys.sort_by(|x, y| x.0.lex_cmp(&y.0).then(x.1.lex_cmp(&y.1)));
        keys.dedup();
        let edges: Vec<Segment> = keys.iter().map(|&(a, b)| Segment { a, b }).collect();
        let edge_grid = BoxGrid::auto(edges.iter().map(|e| bbox_of(&[e.a, e.b])).collect());
        for (i, j) in edge_grid.overlapping_pairs() {
            if properly_cross(&edges[i], &edges[j]) {
                return Err(Error::InvalidSubdivision(format!(
                    "edges {:?}-{:?} and {:?}-{:?} cross",
                    edges[i].a, edges[i].b, edges[j].a, edges[j].b
                )));
            }
        }
        let face_grid = BoxGrid::auto(faces.iter().map(|f| f.polygon.bbox()).collect());
        Ok(Subdivision { faces, edges, bounds, face_grid, edge_grid })
    }

    /// A subdivision with no faces.
    pub fn empty(bounds: Bounds) -> Self {
        Subdivision::new(Vec::new(), Some(bounds)).expect("empty subdivision is valid")
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> &[Segment] {
        &self.edges
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Number of distinct edges.
    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn gammas(&self) -> Vec<f64> {
        self.faces.iter().map(|f| f.gamma).collect()
    }

    /// Same faces with new probabilities.
    pub fn with_gammas(&self, gammas: &[f64]) -> Result<Self> {
        if gammas.len() != self.faces.len() {
            return Err(Error::OutOfRange(format!("{} weights for {} faces", gammas.len(), self.faces.len())));
        }
        let faces = self.faces.iter().zip(gammas).map(|(f, &gamma)| Face { polygon: f.polygon.clone(), gamma }).collect();
        Subdivision::new(faces, Some(self.bounds))
    }

    /// Brute-force point location: the face whose polygon contains `p`.
    /// A point on a shared edge reports the first incident face.
    pub fn locate_brute(&self, p: Point) -> Option<usize> {
        let mut on_boundary = None;
        for i in self.face_grid.at(p) {
            match self.faces[i].polygon.contains(p) {
                Location::Inside => return Some(i),
                Location::Boundary => on_boundary = Some(on_boundary.map_or(i, |b: usize| b.min(i))),
                Location::Outside => {}
            }
        }
        on_boundary
    }

    /// Distance from `p` to the nearest edge; infinite without edges.
    pub fn dist_to_edges(&self, p: Point) -> f64 {
        self.edge_grid
            .nearest(p, |i| point_segment_dist(p, self.edges[i].a, self.edges[i].b))
            .map_or(f64::INFINITY, |(_, d)| d)
    }

    /// Edges whose bounding box meets the closed box `lo..hi`.
    pub fn edges_near(&self, lo: Point, hi: Point) -> Vec<usize> {
        self.edge_grid.in_box(lo, hi)
    }

    /// Uniformly scaled and translated copy inside the unit square.
    pub fn normalized(&self) -> Result<Self> {
        let (o, s) = (self.bounds.min, 1.0 / self.bounds.size);
        let map = |p: Point| Point::new(((p.x - o.x) * s).clamp(0.0, 1.0), ((p.y - o.y) * s).clamp(0.0, 1.0));
        let faces = self
            .faces
            .iter()
            .map(|f| {
                Ok(Face { polygon: SimplePolygon::new(f.polygon.vertices().iter().map(|&p| map(p)).collect())?, gamma: f.gamma })
            })
            .collect::<Result<Vec<_>>>()?;
        Subdivision::new(faces, Some(Bounds::unit()))
    }
}

/// Interiors meet in a single point. Collinear overlaps do not count: faces
/// on opposite sides may share part of an edge.
pub fn properly_cross(s: &Segment, t: &Segment) -> bool {
    let (o1, o2) = (orient(s.a, s.b, t.a), orient(s.a, s.b, t.b));
    let (o3, o4) = (orient(t.a, t.b, s.a), orient(t.a, t.b, s.b));
    use Orientation::Collinear as C;
    o1 != C && o2 != C && o1 != o2 && o3 != C && o4 != C && o3 != o4
}

/// True when the segments share a point other than a common endpoint or a
/// touching endpoint (T-junction), i.e. they cross or overlap.
pub fn crosses(s: &Segment, t: &Segment) -> bool {
    let (o1, o2) = (orient(s.a, s.b, t.a), orient(s.a, s.b, t.b));
    let (o3, o4) = (orient(t.a, t.b, s.a), orient(t.a, t.b, s.b));
    use Orientation::Collinear as C;
    if o1 == C && o2 == C {
        // collinear: overlapping in more than a point
        let (s0, s1) = if s.a.lex_cmp(&s.b).is_lt() { (s.a, s.b) } else { (s.b, s.a) };
        let (t0, t1) = if t.a.lex_cmp(&t.b).is_lt() { (t.a, t.b) } else { (t.b, t.a) };
        let lo = if s0.lex_cmp(&t0).is_lt() { t0 } else { s0 };
        let hi = if s1.lex_cmp(&t1).is_lt() { s1 } else { t1 };
        return lo.lex_cmp(&hi).is_lt();
    }
    o1 != C && o2 != C && o1 != o2 && o3 != C && o4 != C && o3 != o4
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(x: f64, y: f64, s: f64) -> SimplePolygon {
        SimplePolygon::new(vec![Point::new(x, y), Point::new(x + s, y), Point::new(x + s, y + s), Point::new(x, y + s)])
            .unwrap()
    }

    #[test]
    fn weights_must_sum_to_one() {
        let f = |g| Face { polygon: sq(0.0, 0.0, 1.0), gamma: g };
        assert!(matches!(Subdivision::new(vec![f(0.9)], None), Err(Error::WeightSum(_))));
        assert!(Subdivision::new(vec![f(1.0)], None).is_ok());
    }

    #[test]
    fn two_squares_share_an_edge() {
        let faces = vec![Face { polygon: sq(0.0, 0.0, 1.0), gamma: 0.5 }, Face { polygon: sq(1.0, 0.0, 1.0), gamma: 0.5 }];
        let s = Subdivision::new(faces, None).unwrap();
        assert_eq!(s.n(), 7);
        assert_eq!(s.locate_brute(Point::new(0.5, 0.5)), Some(0));
        assert_eq!(s.locate_brute(Point::new(1.5, 0.5)), Some(1));
        assert_eq!(s.locate_brute(Point::new(1.0, 0.5)), Some(0));
        assert_eq!(s.locate_brute(Point::new(1.5, 1.5)), None);
        assert_eq!(s.dist_to_edges(Point::new(0.8, 0.5)), 0.19999999999999996);
        let u = s.normalized().unwrap();
        assert_eq!(u.bounds(), Bounds::unit());
        assert_eq!(u.locate_brute(Point::new(0.75, 0.25)), Some(1));
    }

    #[test]
    fn overlapping_faces_are_rejected() {
        let faces = vec![Face { polygon: sq(0.0, 0.0, 1.0), gamma: 0.5 }, Face { polygon: sq(0.5, 0.5, 1.0), gamma: 0.5 }];
        assert!(matches!(Subdivision::new(faces, None), Err(Error::InvalidSubdivision(_))));
    }

    #[test]
    fn t_junctions_are_not_crossings() {
        let s = Segment { a: Point::new(0.0, 0.0), b: Point::new(2.0, 0.0) };
        let t = Segment { a: Point::new(1.0, 0.0), b: Point::new(1.0, 1.0) };
        assert!(!crosses(&s, &t));
        let u = Segment { a: Point::new(1.0, 0.0), b: Point::new(3.0, 0.0) };
        assert!(crosses(&s, &u));
    }
}
