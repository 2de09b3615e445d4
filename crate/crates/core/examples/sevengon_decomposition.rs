//! Decomposes the thin-column polygon into convex pieces with at most
//! seven vertices. The piece count does not grow as the column narrows.

use dspl::harness::lowerbound_polygon;
use dspl::sevengon::{decompose, SevenGonOptions};

fn main() -> dspl::error::Result<()> {
    for eps in [0.05, 0.01, 0.001] {
        let poly = lowerbound_polygon(eps)?;
        // the polygon has axis-parallel edges sharing coordinates
        let d = decompose(&poly, SevenGonOptions { rotate_gp: true, ..Default::default() })?;
        let sizes: Vec<usize> = d.regions.iter().map(|r| r.len()).collect();
        println!("eps {eps}: {} regions, alpha {}, vertex counts {sizes:?}", d.regions.len(), d.alpha);
    }
    Ok(())
}
