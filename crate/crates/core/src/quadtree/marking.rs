//! Marking the grid cells whose closed squares meet a subdivision edge.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ops::Bound;

use crate::geom::{orient, Orientation, Point, Segment};
use crate::subdivision::Subdivision;

/// One bit per cell of the `2^depth x 2^depth` grid over the unit square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridMarking {
    depth: u32,
    bits: Vec<u64>,
}

impl GridMarking {
    pub fn new(depth: u32) -> Self {
        let side = 1usize << depth;
        GridMarking { depth, bits: vec![0; (side * side).div_ceil(64)] }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Cells per side.
    pub fn side(&self) -> usize {
        1 << self.depth
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        let i = y * self.side() + x;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, x: usize, y: usize) {
        let i = y * self.side() + x;
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Marked cells in row-major order.
    pub fn marked(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let s = self.side();
        (0..s * s).filter(move |&i| self.get(i % s, i / s)).map(move |i| (i % s, i / s))
    }

    /// Coarser marking: a cell is marked iff one of its four children is.
    pub fn coarsen(&self) -> GridMarking {
        assert!(self.depth > 0);
        let mut out = GridMarking::new(self.depth - 1);
        for (x, y) in self.marked() {
            out.set(x / 2, y / 2);
        }
        out
    }

    /// Sets `(x, y)` and, if `transposed`, `(y, x)` instead.
    fn put(&mut self, x: usize, y: usize, transposed: bool) {
        if transposed {
            self.set(y, x)
        } else {
            self.set(x, y)
        }
    }
}

/// Grid indices of the closed cells containing coordinate `v`: one, or two
/// when `v` is on an inner grid line.
fn cell_range(v: f64, side: usize) -> (usize, usize) {
    let t = v * side as f64;
    let f = t.floor();
    let hi = (f.max(0.0) as usize).min(side - 1);
    let lo = if f == t && f > 0.0 && (f as usize) <= side { f as usize - 1 } else { hi };
    (lo.min(hi), hi)
}

/// Closed cell `(x, y)` of a grid with `side` cells per side.
pub fn cell_square(x: usize, y: usize, side: usize) -> (Point, Point) {
    let l = 1.0 / side as f64;
    (Point::new(x as f64 * l, y as f64 * l), Point::new((x + 1) as f64 * l, (y + 1) as f64 * l))
}

/// Exact test of a segment against a closed axis-aligned box.
pub fn segment_meets_box(s: &Segment, lo: Point, hi: Point) -> bool {
    if s.a.x.max(s.b.x) < lo.x || s.a.x.min(s.b.x) > hi.x || s.a.y.max(s.b.y) < lo.y || s.a.y.min(s.b.y) > hi.y {
        return false;
    }
    let corners = [lo, Point::new(hi.x, lo.y), hi, Point::new(lo.x, hi.y)];
    let o: Vec<Orientation> = corners.iter().map(|&c| orient(s.a, s.b, c)).collect();
    !(o.iter().all(|&x| x == Orientation::Left) || o.iter().all(|&x| x == Orientation::Right))
}

/// Reference marking: every edge against every cell its bounding box meets.
pub fn mark_cells_bruteforce(sub: &Subdivision, depth: u32) -> GridMarking {
    mark_segments_bruteforce(sub.edges(), depth)
}

pub fn mark_segments_bruteforce(edges: &[Segment], depth: u32) -> GridMarking {
    let mut m = GridMarking::new(depth);
    let side = m.side();
    for e in edges {
        let (x0, _) = cell_range(e.a.x.min(e.b.x), side);
        let (_, x1) = cell_range(e.a.x.max(e.b.x), side);
        let (y0, _) = cell_range(e.a.y.min(e.b.y), side);
        let (_, y1) = cell_range(e.a.y.max(e.b.y), side);
        for y in y0..=y1 {
            for x in x0..=x1 {
                let (lo, hi) = cell_square(x, y, side);
                if segment_meets_box(e, lo, hi) {
                    m.set(x, y);
                }
            }
        }
    }
    m
}

/// Sweep marking: cells holding a vertex, then cells next to a vertical grid
/// segment crossed by an edge (left-to-right sweep), then the same for
/// horizontal grid segments (the sweep run on the transposed edges).
pub fn mark_cells_sweep(sub: &Subdivision, depth: u32) -> GridMarking {
    mark_segments_sweep(sub.edges(), depth)
}

/// Sweep marking of pairwise non-crossing segments in the unit square.
pub fn mark_segments_sweep(edges: &[Segment], depth: u32) -> GridMarking {
    let mut m = GridMarking::new(depth);
    let side = m.side();
    for e in edges {
        for v in [e.a, e.b] {
            let (x0, x1) = cell_range(v.x, side);
            let (y0, y1) = cell_range(v.y, side);
            for y in y0..=y1 {
                for x in x0..=x1 {
                    m.set(x, y);
                }
            }
        }
    }
    sweep_vertical_lines(edges, &mut m, false);
    let flipped: Vec<Segment> =
        edges.iter().map(|e| Segment { a: Point::new(e.a.y, e.a.x), b: Point::new(e.b.y, e.b.x) }).collect();
    sweep_vertical_lines(&flipped, &mut m, true);
    m
}

/// Non-vertical edge with `a` left of `b`, ordered by height along the
/// sweep line while it strictly spans the sweep position.
#[derive(Debug, Clone, Copy)]
enum Key {
    Edge { a: Point, b: Point, id: u32 },
    /// Sorts below any edge passing through it.
    Probe(Point),
}

fn edge_cmp(a: Point, b: Point, ia: u32, c: Point, d: Point, ic: u32) -> Ordering {
    if ia == ic {
        return Ordering::Equal;
    }
    // test the later left endpoint against the other edge's line
    let (flip, p, q, s, t) = if a.x >= c.x { (false, a, b, c, d) } else { (true, c, d, a, b) };
    let side = match orient(s, t, p) {
        Orientation::Collinear => orient(s, t, q),
        o => o,
    };
    let o = match side {
        Orientation::Left => Ordering::Greater,
        Orientation::Right => Ordering::Less,
        // collinear overlap
        Orientation::Collinear => return ia.cmp(&ic),
    };
    if flip {
        o.reverse()
    } else {
        o
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Key::Edge { a, b, id }, Key::Edge { a: c, b: d, id: ic }) => edge_cmp(a, b, id, c, d, ic),
            (Key::Probe(q), Key::Edge { a, b, .. }) => match orient(a, b, q) {
                Orientation::Left => Ordering::Greater,
                _ => Ordering::Less,
            },
            (Key::Edge { .. }, Key::Probe(_)) => other.cmp(self).reverse(),
            (Key::Probe(p), Key::Probe(q)) => p.y.total_cmp(&q.y),
        }
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Key {}

/// Marks the two cells beside every vertical grid segment that an edge
/// meets away from the edge's endpoints (those are covered by vertex
/// marking). Edges lying on a grid line mark both sides directly.
fn sweep_vertical_lines(edges: &[Segment], m: &mut GridMarking, transposed: bool) {
    let side = m.side();
    let l = 1.0 / side as f64;
    let mark_segment = |m: &mut GridMarking, i: usize, j: usize| {
        if i > 0 {
            m.put(i - 1, j, transposed);
        }
        if i < side {
            m.put(i, j, transposed);
        }
    };

    // (x, kind, edge): removals sort before the grid line at the same x,
    // insertions after it
    let mut events: Vec<(f64, u8, u32)> = Vec::new();
    for (k, e) in edges.iter().enumerate() {
        let (a, b) = if e.a.lex_cmp(&e.b).is_lt() { (e.a, e.b) } else { (e.b, e.a) };
        if a.x == b.x {
            let t = a.x * side as f64;
            if t == t.floor() {
                let i = t as usize;
                let (j0, _) = cell_range(a.y, side);
                let (_, j1) = cell_range(b.y, side);
                for j in j0..=j1 {
                    mark_segment(m, i, j);
                }
            }
            continue;
        }
        events.push((a.x, 2, k as u32));
        events.push((b.x, 0, k as u32));
    }
    for i in 0..=side {
        events.push((i as f64 * l, 1, i as u32));
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let key = |k: u32| {
        let e = &edges[k as usize];
        let (a, b) = if e.a.lex_cmp(&e.b).is_lt() { (e.a, e.b) } else { (e.b, e.a) };
        Key::Edge { a, b, id: k }
    };
    let mut status: BTreeSet<Key> = BTreeSet::new();
    for (x, kind, k) in events {
        match kind {
            0 => {
                status.remove(&key(k));
            }
            2 => {
                status.insert(key(k));
            }
            _ => {
                if status.is_empty() {
                    continue;
                }
                let i = k as usize;
                for j in 0..side {
                    // lowest edge at or above the grid vertex below segment j
                    let lo = Key::Probe(Point::new(x, j as f64 * l));
                    let hit = status.range((Bound::Excluded(lo), Bound::Unbounded)).next();
                    if let Some(&Key::Edge { a, b, .. }) = hit {
                        let top = Point::new(x, (j + 1) as f64 * l);
                        if orient(a, b, top) != Orientation::Right {
                            mark_segment(m, i, j);
                        }
                    }
                }
            }
        }
    }
}
