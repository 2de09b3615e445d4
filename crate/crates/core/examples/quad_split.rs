//! Cuts the 7-gons of a comb-shaped polygon into triangles and
//! quadrilaterals, each at least a quarter of its parent.

use dspl::geom::{Point, SimplePolygon};
use dspl::quad::split_to_quads;
use dspl::sevengon::{decompose, SevenGonOptions};

fn main() -> dspl::error::Result<()> {
    let mut pts = vec![Point::new(0.0, 0.0), Point::new(5.0, 0.0), Point::new(5.0, 1.0)];
    for k in (0..5).rev() {
        let x = k as f64;
        pts.extend([Point::new(x + 0.7, 1.0), Point::new(x + 0.5, 3.0), Point::new(x + 0.3, 1.0)]);
    }
    pts.push(Point::new(0.0, 1.0));
    let poly = SimplePolygon::new(pts)?;
    let d = decompose(&poly, SevenGonOptions { rotate_gp: true, ..Default::default() })?;
    let mut total = 0;
    for (i, r) in d.regions.iter().enumerate() {
        let quads = split_to_quads(r, i)?;
        let worst = quads.iter().map(|q| q.area() / r.area()).fold(1.0, f64::min);
        println!("7-gon {i}: {} vertices -> {} pieces, smallest share {worst:.3}", r.len(), quads.len());
        total += quads.len();
    }
    println!("{} vertices, {} 7-gons, {total} pieces", poly.len(), d.regions.len());
    Ok(())
}
