//! Triangulates a regular polygon so that every triangle is at least as
//! large as the squared distance from any of its points to the boundary.

use dspl::convex::triangulate_convex;
use dspl::geom::{Point, SimplePolygon};

fn main() -> dspl::error::Result<()> {
    let n = 12;
    let pts = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect();
    let poly = SimplePolygon::new(pts)?;
    let t = triangulate_convex(&poly)?;
    println!("{} triangles, alpha = {}", t.triangles.len(), t.alpha);
    for (ids, tri) in t.triangles.iter().zip(t.triangle_points(&poly)) {
        let area = dspl::geom::loop_signed_area(&tri);
        println!("{ids:?} area {area:.4}");
    }
    Ok(())
}
