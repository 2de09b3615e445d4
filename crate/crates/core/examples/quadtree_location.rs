//! Quadtree location with a distance certificate: a query that stops in an
//! empty leaf at depth `i` is within `2 sqrt(2) / 2^i` of the boundary.

use dspl::geom::Point;
use dspl::harness::{random_subdivision, Kind, Weights};
use dspl::quadtree::QuadtreePl;

fn main() -> dspl::error::Result<()> {
    let sub = random_subdivision(5000, Kind::General, Weights::Uniform, 4)?;
    let qt = QuadtreePl::build(&sub, 0)?;
    let audit = qt.audit()?;
    println!(
        "d_max {}, {} nodes, {} empty leaves, {} boundary leaves",
        qt.tree().d_max(),
        audit.nodes,
        audit.empty_leaves,
        audit.boundary_leaves
    );
    for p in [Point::new(0.5, 0.5), Point::new(0.01, 0.37), Point::new(0.999, 0.999)] {
        let a = qt.query(p)?;
        let d = sub.dist_to_edges(p);
        println!(
            "{p:?}: face {:?}, depth {}, cost {}, fallback {}, d = {d:.4} <= {:.4}",
            a.face,
            a.depth,
            a.cost,
            a.fallback.is_some(),
            a.distance_bound(sub.n())
        );
    }
    Ok(())
}
