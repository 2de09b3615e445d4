//! Point location where heavy faces are found with fewer steps.

use dspl::decomp::{decompose_subdivision, Method};
use dspl::geom::Point;
use dspl::harness::{random_subdivision, Kind, Weights};
use dspl::weighted::{assign_weights, BuildOptions, WeightPolicy, WeightedPl};

fn main() -> dspl::error::Result<()> {
    let sub = random_subdivision(2000, Kind::ConvexCells, Weights::Zipf(1.5), 1)?;
    let decomps = decompose_subdivision(&sub, Method::Auto, true)?;
    let regions = assign_weights(&sub, &decomps, WeightPolicy::Floor)?;
    let pl = WeightedPl::build(&sub, regions, BuildOptions::default())?;
    println!("{} faces, {} regions, {} DAG nodes", sub.faces().len(), pl.regions().len(), pl.dag().node_count());

    let g = sub.gammas();
    let heaviest = (0..g.len()).max_by(|&a, &b| g[a].total_cmp(&g[b])).unwrap();
    let lightest = (0..g.len()).min_by(|&a, &b| g[a].total_cmp(&g[b])).unwrap();
    for f in [heaviest, lightest] {
        let p = centroid(sub.faces()[f].polygon.vertices());
        let a = pl.query(p)?;
        println!("face {f} (gamma {:.2e}): found {:?} in {} nodes", g[f], a.face, a.stats.visited_nodes);
    }
    Ok(())
}

fn centroid(vs: &[Point]) -> Point {
    let s = vs.iter().fold(Point::new(0.0, 0.0), |acc, &p| acc + p);
    s * (1.0 / vs.len() as f64)
}
