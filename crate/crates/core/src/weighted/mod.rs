//! Weight-sensitive point location over decomposed faces.
//!
//! Each convex region of a face decomposition gets the weight
//! `gamma_i * area(R) / area(P_i)`. Segments are inserted into a trapezoidal
//! map heaviest class first (class `k` holds priorities in
//! `(2^-(k+1), 2^-k]`), shuffled within a class, so a query inside a region
//! of weight `w` visits `O(1 + log 1/w)` nodes in expectation.
//!
//! Decomposition vertices on face edges are computed in floating point and
//! are generally not exactly on those edges. Regions are therefore shrunk by
//! a tiny fixed offset before insertion, and the face edges go in exactly;
//! the thin gaps are labeled with their face.

pub mod dag;
pub mod segments;

pub use dag::{Node, QueryStats, SearchDag, Trapezoid};
pub use segments::{maximal_segments, LabeledLoop, MaxSegment};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decomp::FaceDecomposition;
use crate::error::{Error, Result};
use crate::geom::{loop_signed_area, Point};
use crate::subdivision::Subdivision;

/// Region offset relative to the bounding square.
pub const INSET_REL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedRegion {
    /// Convex, counter-clockwise.
    pub vertices: Vec<Point>,
    pub face: usize,
    pub w: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightPolicy {
    /// Zero face probabilities are an error.
    Strict,
    /// Probabilities are floored at `1 / (2 n^2)` and renormalized.
    #[default]
    Floor,
}

/// Face probabilities after the floor for a subdivision with `n` edges.
pub fn floored_gammas(gammas: &[f64], n: usize) -> Vec<f64> {
    let floor = 1.0 / (2.0 * (n.max(1) as f64).powi(2));
    let g: Vec<f64> = gammas.iter().map(|&x| x.max(floor)).collect();
    let sum: f64 = g.iter().sum();
    g.into_iter().map(|x| x / sum).collect()
}

pub fn assign_weights(sub: &Subdivision, decomps: &[FaceDecomposition], policy: WeightPolicy) -> Result<Vec<WeightedRegion>> {
    if decomps.len() != sub.faces().len() {
        return Err(Error::OutOfRange(format!("{} decompositions for {} faces", decomps.len(), sub.faces().len())));
    }
    let gammas = match policy {
        WeightPolicy::Floor => floored_gammas(&sub.gammas(), sub.n()),
        WeightPolicy::Strict => {
            if let Some((i, f)) = sub.faces().iter().enumerate().find(|(_, f)| f.gamma <= 0.0) {
                return Err(Error::NonPositiveWeight(i, f.gamma));
            }
            sub.gammas()
        }
    };
    let mut out = Vec::new();
    for (i, (f, d)) in sub.faces().iter().zip(decomps).enumerate() {
        let area = f.polygon.area();
        for piece in &d.pieces {
            let w = gammas[i] * loop_signed_area(piece) / area;
            out.push(WeightedRegion { vertices: piece.clone(), face: i, w });
        }
    }
    Ok(out)
}

/// Convex polygon with every edge moved inward by `d`; `None` if it
/// collapses.
pub fn inset_convex(vs: &[Point], d: f64) -> Option<Vec<Point>> {
    let mut v: Vec<Point> = vs.to_vec();
    v.dedup();
    if v.len() > 1 && v[0] == v[v.len() - 1] {
        v.pop();
    }
    let n = v.len();
    if n < 3 {
        return None;
    }
    // each edge as (point on the moved line, unit direction)
    let lines: Vec<(Point, Point)> = (0..n)
        .map(|i| {
            let e = v[(i + 1) % n] - v[i];
            let u = e * (1.0 / e.norm());
            (v[i] + Point::new(-u.y, u.x) * d, u)
        })
        .collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (p, u) = lines[(i + n - 1) % n];
        let (q, w) = lines[i];
        let den = u.cross(w);
        if den <= 0.0 {
            return None;
        }
        out.push(p + u * ((q - p).cross(w) / den));
    }
    for i in 0..n {
        let e = out[(i + 1) % n] - out[i];
        if e.dot(lines[i].1) <= 0.0 {
            return None;
        }
    }
    (loop_signed_area(&out) > 0.0).then_some(out)
}

/// Insertion order: by weight class, shuffled within each class.
pub fn insertion_order(mut segs: Vec<MaxSegment>, seed: u64, weighted: bool) -> Vec<MaxSegment> {
    let class = |p: f64| -> u32 {
        if !weighted {
            0
        } else if p > 0.0 {
            (-p.log2()).floor().clamp(0.0, 2000.0) as u32
        } else {
            u32::MAX
        }
    };
    segs.sort_by_key(|s| class(s.priority));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut i = 0;
    while i < segs.len() {
        let k = class(segs[i].priority);
        let j = i + segs[i..].iter().take_while(|s| class(s.priority) == k).count();
        segs[i..j].shuffle(&mut rng);
        i = j;
    }
    segs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub seed: u64,
    /// Insert by weight class; otherwise one uniformly shuffled class.
    pub weighted: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { seed: DEFAULT_SEED, weighted: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Answer {
    pub face: Option<usize>,
    pub region: Option<usize>,
    pub stats: QueryStats,
}

/// Search structure plus the regions its leaves refer to.
#[derive(Debug, Clone)]
pub struct WeightedPl {
    dag: SearchDag,
    regions: Vec<WeightedRegion>,
    faces: usize,
    /// Regions too thin to survive the inset; their area answers by face.
    pub dropped_regions: usize,
}

impl WeightedPl {
    /// Structure over the regions of a decomposed subdivision.
    pub fn build(sub: &Subdivision, regions: Vec<WeightedRegion>, opts: BuildOptions) -> Result<Self> {
        let nf = sub.faces().len();
        let d = INSET_REL * sub.bounds().size;
        let mut loops: Vec<LabeledLoop> = sub
            .faces()
            .iter()
            .enumerate()
            .map(|(i, f)| LabeledLoop { vertices: f.polygon.vertices(), inside: i, outside: None, weight: 0.0 })
            .collect();
        let insets: Vec<Option<Vec<Point>>> = regions.iter().map(|r| inset_convex(&r.vertices, d)).collect();
        let mut dropped = 0;
        for (r, (reg, inset)) in regions.iter().zip(&insets).enumerate() {
            match inset {
                Some(vs) => loops.push(LabeledLoop { vertices: vs, inside: nf + r, outside: Some(reg.face), weight: reg.w }),
                None => dropped += 1,
            }
        }
        let segs = insertion_order(maximal_segments(&loops)?, opts.seed, opts.weighted);
        let dag = SearchDag::build_in_order(sub.bounds(), segs)?;
        Ok(WeightedPl { dag, regions, faces: nf, dropped_regions: dropped })
    }

    /// Structure over the faces themselves, weighted by their probabilities
    /// or uniformly.
    pub fn build_faces(sub: &Subdivision, opts: BuildOptions) -> Result<Self> {
        let gammas = floored_gammas(&sub.gammas(), sub.n());
        let loops: Vec<LabeledLoop> = sub
            .faces()
            .iter()
            .enumerate()
            .map(|(i, f)| LabeledLoop { vertices: f.polygon.vertices(), inside: i, outside: None, weight: gammas[i] })
            .collect();
        let segs = insertion_order(maximal_segments(&loops)?, opts.seed, opts.weighted);
        let dag = SearchDag::build_in_order(sub.bounds(), segs)?;
        Ok(WeightedPl { dag, regions: Vec::new(), faces: sub.faces().len(), dropped_regions: 0 })
    }

    pub fn query(&self, p: Point) -> Result<Answer> {
        let stats = self.dag.query(p)?;
        let (face, region) = match stats.region {
            None => (None, None),
            Some(l) if l < self.faces => (Some(l), None),
            Some(l) => (Some(self.regions[l - self.faces].face), Some(l - self.faces)),
        };
        Ok(Answer { face, region, stats })
    }

    pub fn dag(&self) -> &SearchDag {
        &self.dag
    }

    pub fn regions(&self) -> &[WeightedRegion] {
        &self.regions
    }
}

#[cfg(test)]
mod tests;
