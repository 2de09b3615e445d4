//! Trapezoidal map with its search DAG, built by incremental insertion.
//!
//! Points are ordered lexicographically, which acts as an infinitesimal
//! shear: vertical segments and shared `x` coordinates need no special
//! cases. The leaves crossed by a new segment are found by a range search in
//! the DAG itself, so trapezoids carry no neighbour links.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::segments::MaxSegment;
use crate::error::{Error, Result};
use crate::geom::{orient, Orientation, Point};
use crate::subdivision::Bounds;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Node {
    /// Left if the query is lexicographically smaller than `p`.
    X { p: Point, left: u32, right: u32 },
    /// Above if the query lies left of segment `seg`.
    Y { seg: u32, above: u32, below: u32 },
    Leaf { trap: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    pub top: u32,
    pub bottom: u32,
    pub leftp: Point,
    pub rightp: Point,
    node: u32,
}

/// Result of one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryStats {
    /// DAG nodes on the root-to-leaf path, leaf included.
    pub visited_nodes: usize,
    pub leaf: usize,
    /// Label of the region containing the leaf, `None` outside all regions.
    pub region: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SearchDag {
    nodes: Vec<Node>,
    traps: Vec<Trapezoid>,
    labels: Vec<Option<usize>>,
    /// Two box sentinels first, then the inserted segments.
    segs: Vec<MaxSegment>,
    bounds: Bounds,
    leaves: usize,
}

const BOTTOM: u32 = 0;
const TOP: u32 = 1;

fn lt(a: Point, b: Point) -> bool {
    a.lex_cmp(&b).is_lt()
}

/// Whether `s` lies above `t` where their open ranges overlap. The two may
/// share endpoints or touch, but not cross.
fn seg_above(s: &MaxSegment, t: &MaxSegment) -> bool {
    let (a, b, c, d) = (s.a, s.b, t.a, t.b);
    if a == c {
        return orient(c, d, b) == Orientation::Left;
    }
    if lt(c, a) {
        match orient(c, d, a) {
            Orientation::Left => true,
            Orientation::Right => false,
            Orientation::Collinear => orient(c, d, b) == Orientation::Left,
        }
    } else {
        match orient(a, b, c) {
            Orientation::Left => false,
            Orientation::Right => true,
            Orientation::Collinear => orient(a, b, d) == Orientation::Right,
        }
    }
}

impl SearchDag {
    /// Empty map over `bounds`, with a small margin.
    pub fn new(bounds: Bounds) -> Self {
        let m = 0.01 * bounds.size;
        let lo = bounds.min - Point::new(m, m);
        let hi = bounds.max() + Point::new(m, m);
        let sentinel = |y| MaxSegment {
            a: Point::new(lo.x, y),
            b: Point::new(hi.x, y),
            above: vec![],
            below: vec![],
            priority: 0.0,
        };
        SearchDag {
            nodes: vec![Node::Leaf { trap: 0 }],
            traps: vec![Trapezoid { top: TOP, bottom: BOTTOM, leftp: lo, rightp: hi, node: 0 }],
            labels: vec![None],
            segs: vec![sentinel(lo.y), sentinel(hi.y)],
            bounds,
            leaves: 1,
        }
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    /// Inserted segments, without the two box sentinels.
    pub fn segment_count(&self) -> usize {
        self.segs.len() - 2
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn trapezoid(&self, leaf: usize) -> &Trapezoid {
        &self.traps[leaf]
    }

    /// Leaves whose trapezoid is crossed by segment `si`, left to right.
    fn crossed(&self, si: usize, stamp: &mut Vec<u32>, epoch: u32) -> Vec<u32> {
        let s = &self.segs[si];
        stamp.resize(self.nodes.len(), 0);
        let mut out = Vec::new();
        let mut stack = vec![0u32];
        while let Some(n) = stack.pop() {
            if stamp[n as usize] == epoch {
                continue;
            }
            stamp[n as usize] = epoch;
            match self.nodes[n as usize] {
                Node::X { p, left, right } => {
                    if lt(s.a, p) {
                        stack.push(left);
                    }
                    if lt(p, s.b) {
                        stack.push(right);
                    }
                }
                Node::Y { seg, above, below } => {
                    stack.push(if seg_above(s, &self.segs[seg as usize]) { above } else { below });
                }
                Node::Leaf { trap } => out.push(trap),
            }
        }
        out.sort_by(|&x, &y| self.traps[x as usize].leftp.lex_cmp(&self.traps[y as usize].leftp));
        out
    }

    fn push_trap(&mut self, top: u32, bottom: u32, leftp: Point, rightp: Point) -> u32 {
        let id = self.traps.len() as u32;
        let node = self.nodes.len() as u32;
        self.nodes.push(Node::Leaf { trap: id });
        self.traps.push(Trapezoid { top, bottom, leftp, rightp, node });
        self.labels.push(None);
        id
    }

    fn push_node(&mut self, n: Node) -> u32 {
        self.nodes.push(n);
        (self.nodes.len() - 1) as u32
    }

    fn label_of(&self, t: &Trapezoid) -> Option<usize> {
        let mid = t.leftp.lerp(t.rightp, 0.5);
        if t.top != TOP {
            let s = &self.segs[t.top as usize];
            s.below_at(s.param(mid))
        } else if t.bottom != BOTTOM {
            let s = &self.segs[t.bottom as usize];
            s.above_at(s.param(mid))
        } else {
            None
        }
    }

    fn insert(&mut self, seg: MaxSegment, stamp: &mut Vec<u32>, epoch: u32) -> Result<()> {
        let si = self.segs.len();
        self.segs.push(seg);
        let found = self.crossed(si, stamp, epoch);
        if found.is_empty() {
            return Err(Error::Internal("segment crosses no trapezoid".into()));
        }
        let (a, b) = (self.segs[si].a, self.segs[si].b);
        let old: Vec<Trapezoid> = found.iter().map(|&t| self.traps[t as usize]).collect();
        for w in old.windows(2) {
            if w[0].rightp != w[1].leftp {
                return Err(Error::Internal(format!("trapezoids along a segment do not chain at {:?}", w[0].rightp)));
            }
        }
        let k = old.len();
        let first = old[0];
        let last = old[k - 1];
        let left = lt(first.leftp, a).then(|| self.push_trap(first.top, first.bottom, first.leftp, a));
        let right = lt(b, last.rightp).then(|| self.push_trap(last.top, last.bottom, b, last.rightp));
        // pieces above and below the new segment; neighbours with the same
        // top (bottom) merge because the wall between them is cut off
        let mut upper = vec![0u32; k];
        let mut lower = vec![0u32; k];
        let s = si as u32;
        for j in 0..k {
            let lp = if j == 0 { a } else { old[j].leftp };
            let rp = if j == k - 1 { b } else { old[j].rightp };
            if j > 0 && old[j].top == old[j - 1].top {
                upper[j] = upper[j - 1];
                self.traps[upper[j] as usize].rightp = rp;
            } else {
                upper[j] = self.push_trap(old[j].top, s, lp, rp);
            }
            if j > 0 && old[j].bottom == old[j - 1].bottom {
                lower[j] = lower[j - 1];
                self.traps[lower[j] as usize].rightp = rp;
            } else {
                lower[j] = self.push_trap(s, old[j].bottom, lp, rp);
            }
        }
        for j in 0..k {
            let (ua, lb) = (self.traps[upper[j] as usize].node, self.traps[lower[j] as usize].node);
            let mut node = Node::Y { seg: s, above: ua, below: lb };
            if j == k - 1 {
                if let Some(r) = right {
                    let inner = self.push_node(node);
                    node = Node::X { p: b, left: inner, right: self.traps[r as usize].node };
                }
            }
            if j == 0 {
                if let Some(l) = left {
                    let inner = self.push_node(node);
                    node = Node::X { p: a, left: self.traps[l as usize].node, right: inner };
                }
            }
            self.nodes[old[j].node as usize] = node;
        }
        let mut fresh: Vec<u32> = upper.iter().chain(lower.iter()).copied().chain(left).chain(right).collect();
        fresh.sort_unstable();
        fresh.dedup();
        self.leaves = self.leaves + fresh.len() - k;
        for t in fresh {
            let tr = self.traps[t as usize];
            self.labels[t as usize] = self.label_of(&tr);
        }
        Ok(())
    }

    /// Inserts segments in the given order.
    pub fn build_in_order(bounds: Bounds, segs: Vec<MaxSegment>) -> Result<Self> {
        let mut dag = SearchDag::new(bounds);
        let mut stamp = Vec::new();
        for (i, s) in segs.into_iter().enumerate() {
            dag.insert(s, &mut stamp, i as u32 + 1)?;
        }
        Ok(dag)
    }

    pub fn query(&self, p: Point) -> Result<QueryStats> {
        if !self.bounds.contains(p) {
            return Err(Error::OutsideBounds(p));
        }
        let mut n = 0u32;
        let mut visited = 1;
        loop {
            match self.nodes[n as usize] {
                Node::X { p: q, left, right } => n = if lt(p, q) { left } else { right },
                Node::Y { seg, above, below } => {
                    let s = &self.segs[seg as usize];
                    n = if orient(s.a, s.b, p) == Orientation::Left { above } else { below };
                }
                Node::Leaf { trap } => {
                    return Ok(QueryStats { visited_nodes: visited, leaf: trap as usize, region: self.labels[trap as usize] });
                }
            }
            visited += 1;
        }
    }

    /// Longest root-to-leaf path, in nodes.
    pub fn depth(&self) -> usize {
        let mut memo = vec![0usize; self.nodes.len()];
        // post-order; rewritten nodes can point to children with larger ids
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut state = vec![0u8; self.nodes.len()];
        let mut stack = vec![0u32];
        while let Some(&n) = stack.last() {
            let i = n as usize;
            if state[i] == 0 {
                state[i] = 1;
                match self.nodes[i] {
                    Node::X { left, right, .. } => stack.extend([left, right].into_iter().filter(|c| state[*c as usize] == 0)),
                    Node::Y { above, below, .. } => stack.extend([above, below].into_iter().filter(|c| state[*c as usize] == 0)),
                    Node::Leaf { .. } => {}
                }
            } else {
                stack.pop();
                if state[i] == 1 {
                    state[i] = 2;
                    order.push(i);
                }
            }
        }
        for &i in &order {
            memo[i] = 1 + match self.nodes[i] {
                Node::X { left, right, .. } => memo[left as usize].max(memo[right as usize]),
                Node::Y { above, below, .. } => memo[above as usize].max(memo[below as usize]),
                Node::Leaf { .. } => 0,
            };
        }
        memo[0]
    }

    /// Hash of the node structure, segment coordinates and leaf labels.
    pub fn structural_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        let pt = |h: &mut DefaultHasher, p: Point| {
            p.x.to_bits().hash(h);
            p.y.to_bits().hash(h);
        };
        for n in &self.nodes {
            match *n {
                Node::X { p, left, right } => {
                    0u8.hash(&mut h);
                    pt(&mut h, p);
                    (left, right).hash(&mut h);
                }
                Node::Y { seg, above, below } => {
                    1u8.hash(&mut h);
                    pt(&mut h, self.segs[seg as usize].a);
                    pt(&mut h, self.segs[seg as usize].b);
                    (above, below).hash(&mut h);
                }
                Node::Leaf { trap } => {
                    2u8.hash(&mut h);
                    self.labels[trap as usize].hash(&mut h);
                }
            }
        }
        h.finish()
    }
}
