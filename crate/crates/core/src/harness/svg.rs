//! Standalone SVG renderings of subdivisions, decompositions and quadtrees.

use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::FaceDecomposition;
use crate::error::Result;
use crate::geom::{loop_signed_area, Point, SimplePolygon};
use crate::quadtree::{NodeKind, QuadtreePl};
use crate::subdivision::{Bounds, Subdivision};

const PX: f64 = 800.0;
const PAD: f64 = 10.0;

struct Canvas {
    bounds: Bounds,
    body: String,
}

impl Canvas {
    fn new(bounds: Bounds) -> Self {
        let mut c = Canvas { bounds, body: String::new() };
        let lo = bounds.min;
        let hi = bounds.max();
        c.poly(&[lo, Point::new(hi.x, lo.y), hi, Point::new(lo.x, hi.y)], "none", "#999", 1.0);
        c
    }

    fn map(&self, p: Point) -> (f64, f64) {
        let s = PX / self.bounds.size;
        (PAD + (p.x - self.bounds.min.x) * s, PAD + PX - (p.y - self.bounds.min.y) * s)
    }

    fn poly(&mut self, pts: &[Point], fill: &str, stroke: &str, width: f64) {
        let mut d = String::new();
        for &p in pts {
            let (x, y) = self.map(p);
            let _ = write!(d, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" stroke="{stroke}" stroke-width="{width}"/>"#,
            d.trim_end()
        );
    }

    fn finish(self) -> String {
        let size = PX + 2.0 * PAD;
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

/// Pastel color picked from an index.
fn color(i: usize) -> String {
    let h = (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 40;
    let (r, g, b) = (160 + (h & 0x5f), 160 + ((h >> 8) & 0x5f), 160 + ((h >> 16) & 0x5f));
    format!("#{r:02x}{g:02x}{b:02x}")
}

pub fn svg_subdivision(sub: &Subdivision) -> String {
    let mut c = Canvas::new(sub.bounds());
    for (i, f) in sub.faces().iter().enumerate() {
        c.poly(f.polygon.vertices(), &color(i), "black", 1.0);
    }
    c.finish()
}

/// Sampled check of the distance property of one region: for points `p`
/// of the region, `area >= alpha * d(p)^2` with `d` the distance to the
/// face boundary.
pub fn region_passes_alpha(region: &[Point], face: &SimplePolygon, alpha: f64, samples: usize, seed: u64) -> bool {
    let area = loop_signed_area(region);
    let poly = match SimplePolygon::new(region.to_vec()) {
        Ok(p) => p,
        Err(_) => return false,
    };
    let (lo, hi) = poly.bbox();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    for _ in 0..samples * 20 {
        if tested == samples {
            break;
        }
        let p = Point::new(rng.gen_range(lo.x..=hi.x), rng.gen_range(lo.y..=hi.y));
        if poly.contains(p) == crate::geom::Location::Outside {
            continue;
        }
        tested += 1;
        let d = face.dist_to_boundary(p);
        if area < alpha * d * d * (1.0 - 1e-6) {
            return false;
        }
    }
    true
}

/// Regions of every face; with `alpha_check`, passing regions are green
/// and failing ones red.
pub fn svg_decomposition(sub: &Subdivision, decomps: &[FaceDecomposition], alpha_check: bool) -> String {
    let mut c = Canvas::new(sub.bounds());
    let mut k = 0;
    for (f, d) in sub.faces().iter().zip(decomps) {
        for r in &d.pieces {
            let fill = if alpha_check {
                let ok = region_passes_alpha(r, &f.polygon, d.alpha, 64, k as u64);
                if ok { "#9be59b" } else { "#f08080" }.to_string()
            } else {
                color(k)
            };
            c.poly(r, &fill, "#555", 0.5);
            k += 1;
        }
    }
    for f in sub.faces() {
        c.poly(f.polygon.vertices(), "none", "black", 1.5);
    }
    c.finish()
}

/// Leaves of the tree (empty ones light, boundary ones dark) under the
/// subdivision edges, in unit-square coordinates.
pub fn svg_quadtree(qt: &QuadtreePl) -> String {
    let mut c = Canvas::new(Bounds::unit());
    for n in qt.tree().nodes() {
        let fill = match n.kind {
            NodeKind::Internal(_) => continue,
            NodeKind::Empty(_) => "#eef4ff",
            NodeKind::Boundary => "#ffcf8f",
        };
        let (lo, l) = n.square();
        c.poly(&[lo, lo + Point::new(l, 0.0), lo + Point::new(l, l), lo + Point::new(0.0, l)], fill, "#6a7fa8", 0.5);
    }
    for f in qt.unit_subdivision().faces() {
        c.poly(f.polygon.vertices(), "none", "black", 1.0);
    }
    c.finish()
}

pub fn write_svg(path: impl AsRef<Path>, svg: &str) -> Result<()> {
    std::fs::write(path, svg)?;
    Ok(())
}
