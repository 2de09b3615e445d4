//! Renders a subdivision, its decomposition and its quadtree.

use dspl::decomp::{decompose_subdivision, Method};
use dspl::harness::svg::{svg_decomposition, svg_quadtree, svg_subdivision, write_svg};
use dspl::harness::{random_subdivision, Kind, Weights};
use dspl::quadtree::QuadtreePl;

fn main() -> dspl::error::Result<()> {
    let sub = random_subdivision(150, Kind::General, Weights::Uniform, 5)?;
    let dir = std::env::temp_dir();
    let decomps = decompose_subdivision(&sub, Method::Quads, true)?;
    let qt = QuadtreePl::build(&sub, 0)?;
    for (name, svg) in [
        ("subdivision", svg_subdivision(&sub)),
        ("decomposition", svg_decomposition(&sub, &decomps, true)),
        ("quadtree", svg_quadtree(&qt)),
    ] {
        let path = dir.join(format!("dspl_{name}.svg"));
        write_svg(&path, &svg)?;
        println!("{}", path.display());
    }
    Ok(())
}
