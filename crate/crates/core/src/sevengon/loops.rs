//! Closed boundary loops whose edges are tagged as polygon edges or
//! subdivision edges, plus the cutting operations the recursion needs.

use crate::error::{Error, Result};
use crate::geom::{loop_signed_area, point_segment_dist, Point};

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryLoop {
    pub pts: Vec<Point>,
    /// The point is a vertex of the input polygon.
    pub vertex: Vec<bool>,
    /// Edge `i` (from `pts[i]` to `pts[i + 1]`) is a subdivision edge.
    pub sub: Vec<bool>,
}

impl BoundaryLoop {
    pub fn from_points(pts: &[Point]) -> Self {
        BoundaryLoop {
            pts: pts.to_vec(),
            vertex: vec![true; pts.len()],
            sub: vec![false; pts.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    pub fn area(&self) -> f64 {
        loop_signed_area(&self.pts)
    }

    /// Diagonal of the bounding box.
    pub fn extent(&self) -> f64 {
        let (lo, hi) = crate::geom::bbox_of(&self.pts);
        lo.dist(hi)
    }

    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.pts[i], self.pts[self.next(i)])
    }

    fn insert_after(&mut self, i: usize, p: Point, vertex: bool) -> usize {
        let s = self.sub[i];
        self.pts.insert(i + 1, p);
        self.vertex.insert(i + 1, vertex);
        self.sub.insert(i + 1, s);
        i + 1
    }

    /// Index of `p` on the boundary: an existing point within `tol`, or a
    /// new point inserted into the edge it lies on.
    pub fn locate_or_insert(&mut self, p: Point, tol: f64) -> Option<usize> {
        let near = (0..self.len())
            .map(|i| (self.pts[i].dist(p), i))
            .filter(|&(d, _)| d <= tol)
            .min_by(|a, b| a.0.total_cmp(&b.0));
        if let Some((_, i)) = near {
            return Some(i);
        }
        let on = (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                (point_segment_dist(p, a, b), i)
            })
            .filter(|&(d, _)| d <= tol)
            .min_by(|a, b| a.0.total_cmp(&b.0));
        on.map(|(_, i)| self.insert_after(i, p, false))
    }

    /// Cyclic sub-loop from `from` to `to` inclusive, closed by a new
    /// subdivision edge from `to` back to `from`.
    fn arc_closed(&self, from: usize, to: usize) -> BoundaryLoop {
        let mut out = BoundaryLoop { pts: vec![], vertex: vec![], sub: vec![] };
        let mut i = from;
        loop {
            out.pts.push(self.pts[i]);
            out.vertex.push(self.vertex[i]);
            if i == to {
                out.sub.push(true);
                break;
            }
            out.sub.push(self.sub[i]);
            i = self.next(i);
        }
        out
    }

    /// Shoots a ray from point `j` and cuts the loop along it.
    pub fn split_by_ray(&self, j: usize, dir: Point, tol: f64) -> Result<(BoundaryLoop, BoundaryLoop)> {
        let (pj, pprev) = (j, self.prev(j));
        let (m, hit) = first_hit(&self.pts, self.pts[j], dir, |e| e == pj || e == pprev, tol)
            .ok_or_else(|| Error::Internal(format!("ray from {:?} leaves the piece", self.pts[j])))?;
        let mut lp = self.clone();
        let mut j = j;
        let h = if lp.pts[m].dist(hit) <= tol {
            m
        } else if lp.pts[lp.next(m)].dist(hit) <= tol {
            lp.next(m)
        } else {
            if m < j {
                j += 1;
            }
            lp.insert_after(m, hit, false)
        };
        if h == j || h == lp.next(j) || h == lp.prev(j) {
            return Err(Error::Internal(format!("degenerate ray cut at {:?}", self.pts[j])));
        }
        Ok((lp.arc_closed(j, h), lp.arc_closed(h, j)))
    }

    /// Removes duplicate points and collinear non-vertex points between edges
    /// of the same kind.
    pub fn cleanup(&mut self, tol: f64) {
        let mut changed = true;
        while changed && self.len() > 3 {
            changed = false;
            for i in 0..self.len() {
                let n = self.len();
                if n <= 3 {
                    break;
                }
                let k = (i + 1) % n;
                if self.pts[i].dist(self.pts[k]) <= tol {
                    let keep = if self.vertex[k] && !self.vertex[i] { self.pts[k] } else { self.pts[i] };
                    self.pts[i] = keep;
                    self.vertex[i] |= self.vertex[k];
                    self.sub[i] = self.sub[k];
                    self.remove(k);
                    changed = true;
                    break;
                }
                let (a, c) = (self.pts[(i + n - 1) % n], self.pts[k]);
                if !self.vertex[i]
                    && self.sub[(i + n - 1) % n] == self.sub[i]
                    && point_segment_dist(self.pts[i], a, c) <= tol
                {
                    self.remove(i);
                    changed = true;
                    break;
                }
            }
        }
    }

    fn remove(&mut self, i: usize) {
        self.pts.remove(i);
        self.vertex.remove(i);
        self.sub.remove(i);
    }

    /// Vertices of the input polygon on this loop, not counting those at the
    /// ends of the subdivision run.
    pub fn interior_vertex_count(&self) -> usize {
        (0..self.len())
            .filter(|&i| self.vertex[i] && !self.sub[i] && !self.sub[self.prev(i)])
            .count()
    }
}

/// First crossing of the ray `o + t * dir`, `t > tol`, with the closed
/// edges of `pts` not excluded by `skip`. Returns the edge index and point.
pub fn first_hit(
    pts: &[Point],
    o: Point,
    dir: Point,
    skip: impl Fn(usize) -> bool,
    tol: f64,
) -> Option<(usize, Point)> {
    let n = pts.len();
    let dlen = dir.norm();
    let mut best: Option<(f64, usize, Point)> = None;
    for m in 0..n {
        if skip(m) {
            continue;
        }
        let (a, b) = (pts[m], pts[(m + 1) % n]);
        let e = b - a;
        let elen = e.norm();
        let denom = dir.cross(e);
        if elen == 0.0 || denom.abs() <= 1e-13 * dlen * elen {
            continue;
        }
        let t = (a - o).cross(e) / denom;
        let u = (a - o).cross(dir) / denom;
        let ut = tol / elen;
        if t * dlen > tol && u >= -ut && u <= 1.0 + ut && best.map_or(true, |(bt, _, _)| t < bt) {
            let p = if u <= 0.0 {
                a
            } else if u >= 1.0 {
                b
            } else {
                o + dir * t
            };
            best = Some((t, m, p));
        }
    }
    best.map(|(_, m, p)| (m, p))
}

/// Splits a piece `q` around a convex region `c` lying inside it. `c` is
/// snapped onto the boundary of `q` in place; the returned loops cover
/// `q \ c` and their edges along `c` are subdivision edges.
pub fn pockets(q: &BoundaryLoop, c: &mut [Point], tol: f64) -> Result<Vec<BoundaryLoop>> {
    let mut q = q.clone();
    for cv in c.iter_mut() {
        if let Some(i) = (0..q.len()).find(|&i| q.pts[i].dist(*cv) <= tol) {
            *cv = q.pts[i];
        }
    }
    for cv in c.iter() {
        q.locate_or_insert(*cv, tol);
    }
    let m = c.len();
    let pos_on_c = |p: Point| -> Option<f64> {
        let mut best: Option<(f64, f64)> = None;
        for k in 0..m {
            let (a, b) = (c[k], c[(k + 1) % m]);
            let d = point_segment_dist(p, a, b);
            if d <= tol && best.map_or(true, |(bd, _)| d < bd) {
                let e = b - a;
                let u = ((p - a).dot(e) / e.dot(e)).clamp(0.0, 1.0);
                best = Some((d, k as f64 + u));
            }
        }
        best.map(|(_, pos)| pos)
    };

    // refined boundary of c with every shared point of q on it
    let mut ring: Vec<(f64, Point)> = c.iter().enumerate().map(|(k, &p)| (k as f64, p)).collect();
    let mut shared: Vec<usize> = Vec::new();
    for i in 0..q.len() {
        let p = q.pts[i];
        if let Some(pos) = pos_on_c(p) {
            shared.push(i);
            if !c.iter().any(|&v| v == p) {
                ring.push((pos, p));
            }
        }
    }
    ring.sort_by(|a, b| a.0.total_cmp(&b.0));
    if shared.len() < 2 {
        return Err(Error::Internal("region touches its piece in fewer than two points".into()));
    }
    let ring_index = |p: Point| -> Result<usize> {
        ring.iter()
            .position(|&(_, r)| r == p)
            .ok_or_else(|| Error::Internal(format!("shared point {p:?} missing from region ring")))
    };

    let area_tol = tol * q.extent() * 1e-3;
    let r = ring.len();
    let mut out = Vec::new();
    for k in 0..shared.len() {
        let (a, b) = (shared[k], shared[(k + 1) % shared.len()]);
        if b == q.next(a) {
            let mid = q.pts[a].lerp(q.pts[b], 0.5);
            if pos_on_c(mid).is_some() {
                continue;
            }
        }
        let (ca, cb) = (ring_index(q.pts[a])?, ring_index(q.pts[b])?);
        if ca == cb {
            return Err(Error::Internal("pocket closes on a single region point".into()));
        }
        let mut lp = BoundaryLoop { pts: vec![], vertex: vec![], sub: vec![] };
        let mut i = a;
        loop {
            lp.pts.push(q.pts[i]);
            lp.vertex.push(q.vertex[i]);
            if i == b {
                lp.sub.push(true);
                break;
            }
            lp.sub.push(q.sub[i]);
            i = q.next(i);
        }
        let mut j = (cb + r - 1) % r;
        while j != ca {
            lp.pts.push(ring[j].1);
            lp.vertex.push(false);
            lp.sub.push(true);
            j = (j + r - 1) % r;
        }
        lp.cleanup(tol);
        let area = lp.area();
        if area < -area_tol {
            return Err(Error::Internal(format!("pocket with negative area {area}")));
        }
        if lp.len() >= 3 && area > area_tol {
            out.push(lp);
        }
    }
    Ok(out)
}
