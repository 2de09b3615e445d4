//! Face decompositions feeding the weighted search structure.

use crate::convex::triangulate_convex;
use crate::error::Result;
use crate::geom::{Point, SimplePolygon};
use crate::quad::split_to_quads;
use crate::sevengon::{decompose, SevenGonOptions};
use crate::subdivision::Subdivision;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Convex faces are triangulated, the others go through 7-gons and quads.
    #[default]
    Auto,
    /// Convex 7-gons, alpha 1/2.
    SevenGons,
    /// Triangles and quadrilaterals from 7-gons, alpha 1/8.
    Quads,
    /// Each face is a single region.
    Whole,
}

/// Convex pieces of one face with the distance constant they guarantee.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceDecomposition {
    pub pieces: Vec<Vec<Point>>,
    pub alpha: f64,
}

pub fn decompose_face(poly: &SimplePolygon, face: usize, method: Method, rotate_gp: bool) -> Result<FaceDecomposition> {
    let opts = SevenGonOptions { rotate_gp, parent_face: face, ..Default::default() };
    match method {
        Method::Whole => Ok(FaceDecomposition { pieces: vec![poly.vertices().to_vec()], alpha: 0.0 }),
        Method::Auto if poly.is_convex() => {
            let t = triangulate_convex(poly)?;
            Ok(FaceDecomposition {
                pieces: t.triangle_points(poly).into_iter().map(|t| t.to_vec()).collect(),
                alpha: t.alpha,
            })
        }
        Method::SevenGons => {
            let d = decompose(poly, opts)?;
            Ok(FaceDecomposition { pieces: d.regions.into_iter().map(|r| r.vertices).collect(), alpha: d.alpha })
        }
        Method::Auto | Method::Quads => {
            let d = decompose(poly, opts)?;
            let mut pieces = Vec::new();
            for (i, r) in d.regions.iter().enumerate() {
                pieces.extend(split_to_quads(r, i)?.into_iter().map(|q| q.vertices));
            }
            Ok(FaceDecomposition { pieces, alpha: d.alpha / 4.0 })
        }
    }
}

pub fn decompose_subdivision(sub: &Subdivision, method: Method, rotate_gp: bool) -> Result<Vec<FaceDecomposition>> {
    sub.faces()
        .iter()
        .enumerate()
        .map(|(i, f)| decompose_face(&f.polygon, i, method, rotate_gp))
        .collect()
}
