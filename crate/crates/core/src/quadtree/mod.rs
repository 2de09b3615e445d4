//! Depth-bounded quadtree over a subdivision of the unit square.
//!
//! The grid at depth `d_max = ceil(log2 sqrt n)` has cells of side at most
//! `1/sqrt n`. Cells meeting an edge are marked, marks are propagated up,
//! and unmarked children of marked nodes become empty leaves labeled with
//! their face. A query ending in an empty leaf at depth `i` is at distance
//! at most `2 sqrt 2 / 2^i` from the boundary; one ending in a boundary
//! leaf is answered by a fallback structure.

mod marking;

pub use marking::{
    cell_square, mark_cells_bruteforce, mark_cells_sweep, mark_segments_bruteforce, mark_segments_sweep, segment_meets_box,
    GridMarking,
};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::subdivision::{Bounds, Subdivision};
use crate::weighted::{BuildOptions, QueryStats, WeightedPl};

/// Smallest `d` with `2^d >= sqrt n`.
pub fn d_max(n: usize) -> u32 {
    let mut d = 0;
    while (1usize << (2 * d)) < n {
        d += 1;
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// Children in the order (x, y) = (0,0), (1,0), (0,1), (1,1).
    Internal([u32; 4]),
    /// No edge meets the closed square; the face containing it.
    Empty(Option<usize>),
    /// Marked cell at the depth cap.
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QNode {
    pub depth: u32,
    /// Cell coordinates in the grid at `depth`.
    pub x: u32,
    pub y: u32,
    pub kind: NodeKind,
}

impl QNode {
    /// Lower-left corner and side of the node's square.
    pub fn square(&self) -> (Point, f64) {
        let l = 1.0 / (1u64 << self.depth) as f64;
        (Point::new(self.x as f64 * l, self.y as f64 * l), l)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundedQuadtree {
    nodes: Vec<QNode>,
    d_max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QtAnswer {
    pub face: Option<usize>,
    /// Depth of the leaf reached.
    pub depth: u32,
    /// Fallback statistics when the leaf was a boundary leaf.
    pub fallback: Option<QueryStats>,
    /// Tree depth plus fallback nodes visited.
    pub cost: usize,
}

impl QtAnswer {
    /// Upper bound on the distance from the query point to the nearest edge
    /// implied by how the query was answered, for a tree over `n` edges.
    pub fn distance_bound(&self, n: usize) -> f64 {
        if self.fallback.is_some() {
            std::f64::consts::SQRT_2 / (n as f64).sqrt()
        } else if self.depth == 0 {
            f64::INFINITY
        } else {
            2.0 * std::f64::consts::SQRT_2 / (1u64 << self.depth) as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AuditReport {
    pub nodes: usize,
    pub empty_leaves: usize,
    pub boundary_leaves: usize,
}

/// Builds the tree from a marking at depth `d_max`, labeling each empty leaf
/// with one fallback query at its center.
pub fn build_quadtree(marking: &GridMarking, fallback: &WeightedPl) -> Result<BoundedQuadtree> {
    let d = marking.depth();
    let mut levels = vec![marking.clone()];
    for _ in 0..d {
        let next = levels.last().unwrap().coarsen();
        levels.push(next);
    }
    levels.reverse();
    let mut nodes = vec![QNode { depth: 0, x: 0, y: 0, kind: NodeKind::Boundary }];
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        let QNode { depth, x, y, .. } = nodes[i];
        let kind = if !levels[depth as usize].get(x as usize, y as usize) {
            let (lo, l) = nodes[i].square();
            NodeKind::Empty(fallback.query(lo + Point::new(l / 2.0, l / 2.0))?.face)
        } else if depth == d {
            NodeKind::Boundary
        } else {
            let mut ch = [0u32; 4];
            for (c, slot) in ch.iter_mut().enumerate() {
                let (cx, cy) = (2 * x + (c as u32 & 1), 2 * y + (c as u32 >> 1));
                *slot = nodes.len() as u32;
                stack.push(nodes.len());
                nodes.push(QNode { depth: depth + 1, x: cx, y: cy, kind: NodeKind::Boundary });
            }
            NodeKind::Internal(ch)
        };
        nodes[i].kind = kind;
    }
    Ok(BoundedQuadtree { nodes, d_max: d })
}

impl BoundedQuadtree {
    pub fn nodes(&self) -> &[QNode] {
        &self.nodes
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| !matches!(n.kind, NodeKind::Internal(_))).count()
    }

    /// Leaf whose square contains `p`; points on a split line go to the
    /// upper or right child.
    pub fn leaf(&self, p: Point) -> Result<&QNode> {
        if !Bounds::unit().contains(p) {
            return Err(Error::OutsideBounds(p));
        }
        let mut n = &self.nodes[0];
        while let NodeKind::Internal(ch) = n.kind {
            let s = (1u64 << (n.depth + 1)) as f64;
            let cx = ((p.x * s).floor() as u32).saturating_sub(2 * n.x).min(1);
            let cy = ((p.y * s).floor() as u32).saturating_sub(2 * n.y).min(1);
            n = &self.nodes[ch[(cy * 2 + cx) as usize] as usize];
        }
        Ok(n)
    }

    pub fn query(&self, fallback: &WeightedPl, p: Point) -> Result<QtAnswer> {
        let leaf = self.leaf(p)?;
        match leaf.kind {
            NodeKind::Empty(face) => Ok(QtAnswer { face, depth: leaf.depth, fallback: None, cost: leaf.depth as usize }),
            _ => {
                let a = fallback.query(p)?;
                Ok(QtAnswer {
                    face: a.face,
                    depth: leaf.depth,
                    fallback: Some(a.stats),
                    cost: self.d_max as usize + a.stats.visited_nodes,
                })
            }
        }
    }

    /// Checks every node against the subdivision with exact tests: internal
    /// and boundary nodes meet an edge, boundary leaves sit at `d_max`, empty
    /// leaves meet no edge and carry the face of their center.
    pub fn audit(&self, sub: &Subdivision) -> Result<AuditReport> {
        let mut rep = AuditReport { nodes: self.nodes.len(), ..Default::default() };
        let fail = |n: &QNode, what: &str| Err(Error::Internal(format!("quadtree node {:?}: {what}", (n.depth, n.x, n.y))));
        for n in &self.nodes {
            let (lo, l) = n.square();
            let hi = lo + Point::new(l, l);
            let meets = sub.edges_near(lo, hi).into_iter().any(|e| segment_meets_box(&sub.edges()[e], lo, hi));
            match n.kind {
                NodeKind::Internal(ch) => {
                    if !meets || n.depth >= self.d_max {
                        return fail(n, "internal node without reason to split");
                    }
                    for (c, &k) in ch.iter().enumerate() {
                        let m = &self.nodes[k as usize];
                        if m.depth != n.depth + 1 || m.x != 2 * n.x + (c as u32 & 1) || m.y != 2 * n.y + (c as u32 >> 1) {
                            return fail(n, "misplaced child");
                        }
                    }
                }
                NodeKind::Empty(face) => {
                    if meets {
                        return fail(n, "empty leaf meets an edge");
                    }
                    if face != sub.locate_brute(lo + Point::new(l / 2.0, l / 2.0)) {
                        return fail(n, "wrong face label");
                    }
                    rep.empty_leaves += 1;
                }
                NodeKind::Boundary => {
                    if !meets || n.depth != self.d_max {
                        return fail(n, "boundary leaf above the depth cap or without edges");
                    }
                    rep.boundary_leaves += 1;
                }
            }
        }
        Ok(rep)
    }
}

/// Quadtree plus fallback over a subdivision mapped into the unit square.
#[derive(Debug, Clone)]
pub struct QuadtreePl {
    tree: BoundedQuadtree,
    fallback: WeightedPl,
    unit: Subdivision,
    frame: Bounds,
}

impl QuadtreePl {
    pub fn build(sub: &Subdivision, seed: u64) -> Result<Self> {
        let unit = if sub.bounds() == Bounds::unit() { sub.clone() } else { sub.normalized()? };
        let fallback = WeightedPl::build_faces(&unit, BuildOptions { seed, weighted: false })?;
        let marking = mark_cells_sweep(&unit, d_max(unit.n()));
        let tree = build_quadtree(&marking, &fallback)?;
        Ok(QuadtreePl { tree, fallback, unit, frame: sub.bounds() })
    }

    /// Maps a point of the original subdivision into the unit square.
    pub fn to_unit(&self, p: Point) -> Point {
        (p - self.frame.min) * (1.0 / self.frame.size)
    }

    /// Query with `p` in the original coordinates.
    pub fn query(&self, p: Point) -> Result<QtAnswer> {
        if !self.frame.contains(p) {
            return Err(Error::OutsideBounds(p));
        }
        let q = self.to_unit(p);
        self.tree.query(&self.fallback, Point::new(q.x.clamp(0.0, 1.0), q.y.clamp(0.0, 1.0)))
    }

    pub fn tree(&self) -> &BoundedQuadtree {
        &self.tree
    }

    pub fn fallback(&self) -> &WeightedPl {
        &self.fallback
    }

    /// The subdivision in unit-square coordinates.
    pub fn unit_subdivision(&self) -> &Subdivision {
        &self.unit
    }

    pub fn audit(&self) -> Result<AuditReport> {
        self.tree.audit(&self.unit)
    }
}

#[cfg(test)]
mod tests;
