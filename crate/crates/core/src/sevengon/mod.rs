//! Decomposition of a simple polygon into convex pieces with at most seven
//! vertices and the 1/2-distance property.
//!
//! The polygon is first cut into four pieces by axis-parallel rays from an
//! interior point. In each piece a square grows from the corner where its two
//! cut edges meet and is then pushed along the polygon boundary; the region
//! is the union of all squares. What remains of the piece is cut again into
//! pieces of the same form.

pub mod frame;
pub mod loops;
pub mod split;
pub mod sweep;

pub use frame::{Frame, RecursionPolygon};
pub use split::{recursion_split, seed_rays};
pub use sweep::{grow_from_corner, push_square, sweep, sweep_union, Case, Phase, Square, SweptSquareState};

use crate::error::{Error, Result};
use crate::geom::{ear_clip, loop_signed_area, Point, SimplePolygon, GP_ROTATION};

/// Event tolerance relative to the size of the piece being processed.
const REL_TOL: f64 = 1e-10;
/// Snapping and simplification tolerance, same scale.
const REL_SNAP: f64 = 1e-8;

/// A convex region of the decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SevenGon {
    /// Counter-clockwise, 3 to 7 vertices.
    pub vertices: Vec<Point>,
    pub parent_face: usize,
    /// Terminal labels of the square pushes, e.g. `A>B>C:vertex`.
    pub provenance: String,
}

impl SevenGon {
    pub fn area(&self) -> f64 {
        loop_signed_area(&self.vertices)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SevenGonOptions {
    /// Seed point; defaults to the centroid of the largest ear.
    pub p0: Option<Point>,
    /// Rotate by a small fixed angle when vertices share coordinates.
    pub rotate_gp: bool,
    pub parent_face: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DecompStats {
    /// Recursion polygons processed.
    pub pieces: usize,
    pub max_vertices: usize,
    /// Child pieces that did not lose a polygon vertex relative to their parent.
    pub progress_violations: usize,
    pub rotated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SevenGonDecomposition {
    pub regions: Vec<SevenGon>,
    pub alpha: f64,
    pub stats: DecompStats,
}

/// Default seed: centroid of the largest triangle of an ear clipping.
pub fn default_seed(poly: &SimplePolygon) -> Point {
    let v = poly.vertices();
    ear_clip(v)
        .into_iter()
        .map(|[a, b, c]| {
            let area = (v[b] - v[a]).cross(v[c] - v[a]);
            (area, (v[a] + v[b] + v[c]) * (1.0 / 3.0))
        })
        .max_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, p)| p)
        .unwrap_or_else(|| poly.centroid())
}

pub fn decompose(poly: &SimplePolygon, opts: SevenGonOptions) -> Result<SevenGonDecomposition> {
    let report = poly.validate_general_position();
    if !report.is_ok() {
        if !opts.rotate_gp {
            return Err(Error::GeneralPosition(report.violations()));
        }
        let rotated = poly.rotated(GP_ROTATION)?;
        let opts_r = SevenGonOptions { p0: opts.p0.map(|p| p.rotated(GP_ROTATION)), rotate_gp: false, ..opts };
        let mut out = decompose_unchecked(&rotated, opts_r)?;
        for r in &mut out.regions {
            for p in &mut r.vertices {
                *p = p.rotated(-GP_ROTATION);
            }
        }
        out.stats.rotated = true;
        return Ok(out);
    }
    decompose_unchecked(poly, opts)
}

/// Decomposition without the general-position check. Ties between events
/// are still resolved, so this also works on axis-aligned inputs.
pub fn decompose_unchecked(poly: &SimplePolygon, opts: SevenGonOptions) -> Result<SevenGonDecomposition> {
    let p0 = opts.p0.unwrap_or_else(|| default_seed(poly));
    let (lo, hi) = poly.bbox();
    let tol0 = REL_TOL * lo.dist(hi);
    let limit = 50 * poly.len() + 100;
    let mut stats = DecompStats::default();
    let mut regions = Vec::new();
    let mut stack: Vec<RecursionPolygon> = seed_rays(poly, p0, tol0)?;
    stack.reverse();
    while let Some(rp) = stack.pop() {
        stats.pieces += 1;
        if regions.len() >= limit {
            return Err(Error::Internal(format!("more than {limit} regions")));
        }
        let tol = REL_TOL * rp.scale();
        let trace = sweep(&rp, tol)?;
        let snap = REL_SNAP * rp.scale();
        let mut c = sweep_union(&trace, &rp, snap);
        if c.len() < 3 || loop_signed_area(&c) <= snap * snap {
            return Err(Error::Internal(format!("empty region at corner {:?}", rp.corner())));
        }
        let children = recursion_split(&rp, &mut c, snap)?;
        if c.len() > 7 {
            return Err(Error::Internal(format!("region with {} vertices", c.len())));
        }
        let before = rp.boundary.interior_vertex_count();
        for ch in &children {
            if before > 0 && ch.boundary.interior_vertex_count() >= before {
                stats.progress_violations += 1;
            }
        }
        stats.max_vertices = stats.max_vertices.max(c.len());
        let provenance = trace.iter().filter_map(|p| p.label()).collect::<Vec<_>>().join(",");
        regions.push(SevenGon { vertices: c, parent_face: opts.parent_face, provenance });
        for ch in children.into_iter().rev() {
            stack.push(ch);
        }
    }
    Ok(SevenGonDecomposition { regions, alpha: 0.5, stats })
}

#[cfg(test)]
mod tests;
