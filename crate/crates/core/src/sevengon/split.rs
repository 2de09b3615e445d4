//! Seeding and cutting pieces into recursion polygons.

use super::frame::{classify, RecursionPolygon, SubShape};
use super::loops::{first_hit, pockets, BoundaryLoop};
use crate::error::{Error, Result};
use crate::geom::{Location, Point, SimplePolygon};

const MAX_CUTS: usize = 64;

/// Cuts `p` along the horizontal line through `p0` and then along vertical
/// rays up and down from `p0`.
pub fn seed_rays(poly: &SimplePolygon, p0: Point, tol: f64) -> Result<Vec<RecursionPolygon>> {
    if poly.contains(p0) != Location::Inside {
        return Err(Error::NotInterior(p0));
    }
    let mut lp = BoundaryLoop::from_points(poly.vertices());
    let mut ends = [0usize; 2];
    let mut lens = [0usize; 2];
    for (slot, dir) in [Point::new(1.0, 0.0), Point::new(-1.0, 0.0)].into_iter().enumerate() {
        let (_, hit) = first_hit(&lp.pts, p0, dir, |_| false, tol)
            .ok_or_else(|| Error::Internal("seed ray escapes the polygon".into()))?;
        lens[slot] = lp.len();
        ends[slot] = lp
            .locate_or_insert(hit, tol)
            .ok_or_else(|| Error::Internal("seed ray hit is off the boundary".into()))?;
    }
    // inserting the left end may have shifted the right one
    let il = ends[1];
    let inserted_left = lp.len() > lens[1];
    let ir = if inserted_left && il <= ends[0] { ends[0] + 1 } else { ends[0] };

    let half = |from: usize, to: usize| {
        let mut out = BoundaryLoop { pts: vec![], vertex: vec![], sub: vec![] };
        let mut i = from;
        loop {
            out.pts.push(lp.pts[i]);
            out.vertex.push(lp.vertex[i]);
            out.sub.push(i != to && lp.sub[i]);
            if i == to {
                break;
            }
            i = lp.next(i);
        }
        *out.sub.last_mut().unwrap() = true;
        out.pts.push(p0);
        out.vertex.push(false);
        out.sub.push(true);
        out
    };
    let upper = half(ir, il);
    let lower = half(il, ir);
    let mut out = Vec::new();
    for (half, dir) in [(upper, Point::new(0.0, 1.0)), (lower, Point::new(0.0, -1.0))] {
        let j = half.len() - 1;
        let (a, b) = half.split_by_ray(j, dir, tol)?;
        for mut piece in [a, b] {
            piece.cleanup(tol);
            out.push(RecursionPolygon::from_loop(piece, tol)?);
        }
    }
    Ok(out)
}

/// Cuts a piece until every part has at most two orthogonal subdivision
/// edges meeting at a corner, by extending subdivision edges through their
/// reflex joints.
pub fn normalize(piece: BoundaryLoop, tol: f64) -> Result<Vec<BoundaryLoop>> {
    let mut work = vec![piece];
    let mut out = Vec::new();
    let mut cuts = 0;
    while let Some(lp) = work.pop() {
        match classify(&lp, tol) {
            SubShape::Single(_) | SubShape::Corner(_) => out.push(lp),
            SubShape::Reflex { at: j, before, after } => {
                cuts += 1;
                if cuts > MAX_CUTS {
                    return Err(Error::Internal("too many cuts while normalizing a piece".into()));
                }
                // extend the edge on the shorter side of the joint
                let d = if after >= before {
                    lp.pts[j] - lp.pts[lp.next(j)]
                } else {
                    lp.pts[j] - lp.pts[lp.prev(j)]
                };
                let (a, b) = lp.split_by_ray(j, d * (1.0 / d.norm()), tol)?;
                for mut part in [a, b] {
                    part.cleanup(tol);
                    if part.len() >= 3 && part.area() > tol * tol {
                        work.push(part);
                    }
                }
            }
            SubShape::Invalid(why) => {
                return Err(Error::Internal(format!("cannot normalize piece: {why}")));
            }
        }
    }
    Ok(out)
}

/// Splits what is left of `rp` after removing the region `c` into
/// recursion polygons. `c` is snapped onto the piece boundary in place.
pub fn recursion_split(rp: &RecursionPolygon, c: &mut [Point], tol: f64) -> Result<Vec<RecursionPolygon>> {
    let tol = tol.max(2.0 * rp.slack);
    let mut out = Vec::new();
    for pocket in pockets(&rp.boundary, c, tol)? {
        for part in normalize(pocket, tol)? {
            out.push(RecursionPolygon::from_loop(part, tol)?);
        }
    }
    Ok(out)
}
