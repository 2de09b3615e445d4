//! Maximal segments: region edges with exactly collinear, overlapping
//! neighbours merged into one segment. Each side keeps the
//! labels of the regions it bounds, by position along the segment.

use crate::error::{Error, Result};
use crate::geom::{bbox_of, orient, Orientation, Point, Segment};
use crate::grid::BoxGrid;
use crate::subdivision::crosses;

/// Labels along one side: `(from, to, label)` in segment parameter order.
pub type SideLabels = Vec<(f64, f64, usize)>;

/// A segment stored left to right in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxSegment {
    pub a: Point,
    pub b: Point,
    /// Regions to the left of `a -> b`.
    pub above: SideLabels,
    pub below: SideLabels,
    /// Largest weight among the adjacent regions.
    pub priority: f64,
}

impl MaxSegment {
    /// Position of `p` along the segment, by `x` unless it is vertical.
    pub fn param(&self, p: Point) -> f64 {
        if self.a.x != self.b.x {
            p.x
        } else {
            p.y
        }
    }

    pub fn label_at(side: &SideLabels, t: f64) -> Option<usize> {
        let k = side.partition_point(|s| s.0 <= t);
        (k > 0 && t <= side[k - 1].1).then(|| side[k - 1].2)
    }

    pub fn above_at(&self, t: f64) -> Option<usize> {
        Self::label_at(&self.above, t)
    }

    pub fn below_at(&self, t: f64) -> Option<usize> {
        Self::label_at(&self.below, t)
    }
}

struct Uf(Vec<usize>);

impl Uf {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn lex_sorted(a: Point, b: Point) -> (Point, Point) {
    if a.lex_cmp(&b).is_lt() {
        (a, b)
    } else {
        (b, a)
    }
}

/// Collinear and overlapping in more than a point. Edges that only touch
/// end to end stay separate, so crossing lines at a shared vertex do not
/// turn into crossing segments.
fn mergeable(s: (Point, Point), t: (Point, Point)) -> bool {
    if orient(s.0, s.1, t.0) != Orientation::Collinear || orient(s.0, s.1, t.1) != Orientation::Collinear {
        return false;
    }
    let lo = if s.0.lex_cmp(&t.0).is_lt() { t.0 } else { s.0 };
    let hi = if s.1.lex_cmp(&t.1).is_lt() { s.1 } else { t.1 };
    lo.lex_cmp(&hi).is_lt()
}

/// A closed counter-clockwise loop with labels for both sides of its edges.
#[derive(Debug, Clone, Copy)]
pub struct LabeledLoop<'a> {
    pub vertices: &'a [Point],
    pub inside: usize,
    pub outside: Option<usize>,
    /// Insertion priority of the loop's edges.
    pub weight: f64,
}

/// Builds maximal segments from labeled loops and checks that no two of
/// them cross.
pub fn maximal_segments(loops: &[LabeledLoop]) -> Result<Vec<MaxSegment>> {
    // (lo, hi, label above, label below, weight)
    let mut edges: Vec<(Point, Point, Option<usize>, Option<usize>, f64)> = Vec::new();
    for lp in loops {
        let vs = lp.vertices;
        let n = vs.len();
        for i in 0..n {
            let (a, b) = (vs[i], vs[(i + 1) % n]);
            if a == b {
                continue;
            }
            let (lo, hi) = lex_sorted(a, b);
            let (up, down) = if lo == a { (Some(lp.inside), lp.outside) } else { (lp.outside, Some(lp.inside)) };
            edges.push((lo, hi, up, down, lp.weight));
        }
    }
    let grid = BoxGrid::auto(edges.iter().map(|e| bbox_of(&[e.0, e.1])).collect());
    let mut uf = Uf((0..edges.len()).collect());
    for (i, j) in grid.overlapping_pairs() {
        if mergeable((edges[i].0, edges[i].1), (edges[j].0, edges[j].1)) {
            uf.union(i, j);
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for i in 0..edges.len() {
        let r = uf.find(i);
        groups[r].push(i);
    }
    let mut out = Vec::new();
    for g in groups.into_iter().filter(|g| !g.is_empty()) {
        let mut a = edges[g[0]].0;
        let mut b = edges[g[0]].1;
        for &i in &g {
            if edges[i].0.lex_cmp(&a).is_lt() {
                a = edges[i].0;
            }
            if b.lex_cmp(&edges[i].1).is_lt() {
                b = edges[i].1;
            }
        }
        let mut seg = MaxSegment { a, b, above: Vec::new(), below: Vec::new(), priority: 0.0 };
        for &i in &g {
            let (lo, hi, up, down, w) = edges[i];
            let (t0, t1) = (seg.param(lo), seg.param(hi));
            if let Some(l) = up {
                seg.above.push((t0, t1, l));
            }
            if let Some(l) = down {
                seg.below.push((t0, t1, l));
            }
            seg.priority = seg.priority.max(w);
        }
        seg.above.sort_by(|x, y| x.0.total_cmp(&y.0));
        seg.below.sort_by(|x, y| x.0.total_cmp(&y.0));
        out.push(seg);
    }
    // deterministic order independent of the merge structure
    out.sort_by(|x, y| x.a.lex_cmp(&y.a).then(x.b.lex_cmp(&y.b)));
    check_crossings(&out)?;
    Ok(out)
}

pub fn check_crossings(segs: &[MaxSegment]) -> Result<()> {
    let grid = BoxGrid::auto(segs.iter().map(|s| bbox_of(&[s.a, s.b])).collect());
    for (i, j) in grid.overlapping_pairs() {
        if crosses(&Segment { a: segs[i].a, b: segs[i].b }, &Segment { a: segs[j].a, b: segs[j].b }) {
            return Err(Error::CrossingSegments(i, j));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn lp(vertices: &[Point], inside: usize, weight: f64) -> LabeledLoop<'_> {
        LabeledLoop { vertices, inside, outside: None, weight }
    }

    #[test]
    fn t_junction_merges_into_one_segment() {
        // one tall square on the left, two small ones on the right
        let big = [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 2.0), p(0.0, 2.0)];
        let lo = [p(1.0, 0.0), p(2.0, 0.0), p(2.0, 1.0), p(1.0, 1.0)];
        let hi = [p(1.0, 1.0), p(2.0, 1.0), p(2.0, 2.0), p(1.0, 2.0)];
        let segs = maximal_segments(&[lp(&big, 0, 0.5), lp(&lo, 1, 0.25), lp(&hi, 2, 0.25)]).unwrap();
        let mid = segs.iter().find(|s| s.a == p(1.0, 0.0) && s.b == p(1.0, 2.0)).unwrap();
        // vertical: "above" is the left side
        assert_eq!(mid.above_at(0.5), Some(0));
        assert_eq!(mid.below_at(0.5), Some(1));
        assert_eq!(mid.below_at(1.5), Some(2));
        assert_eq!(mid.priority, 0.5);
        // bottom edges (0,0)-(1,0) and (1,0)-(2,0) only touch
        assert!(segs.iter().any(|s| s.a == p(0.0, 0.0) && s.b == p(1.0, 0.0)));
        assert_eq!(segs.len(), 9);
        // nothing outside the squares
        let left = segs.iter().find(|s| s.a == p(0.0, 0.0) && s.b == p(0.0, 2.0)).unwrap();
        assert_eq!(left.above_at(1.0), None);
        assert_eq!(left.below_at(1.0), Some(0));
    }

    #[test]
    fn crossing_regions_are_rejected() {
        let a = [p(0.0, 0.0), p(2.0, 0.0), p(2.0, 2.0), p(0.0, 2.0)];
        let b = [p(1.0, 1.0), p(3.0, 1.0), p(3.0, 3.0), p(1.0, 3.0)];
        assert!(matches!(maximal_segments(&[lp(&a, 0, 0.5), lp(&b, 1, 0.5)]), Err(Error::CrossingSegments(_, _))));
    }
}
