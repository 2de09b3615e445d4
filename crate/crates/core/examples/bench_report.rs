//! Benchmarks both structures on one weighted subdivision.

use dspl::harness::{random_subdivision, run_bench, BenchConfig, Kind, QueryMode, Structure, Weights};

fn main() -> dspl::error::Result<()> {
    let sub = random_subdivision(5000, Kind::ConvexCells, Weights::Zipf(1.5), 2)?;
    for structure in [Structure::Weighted, Structure::Quadtree] {
        let cfg = BenchConfig { structure, mode: QueryMode::PerFace, queries: 50_000, rotate_gp: true, ..Default::default() };
        let r = run_bench(&sub, &cfg)?;
        println!("{}", r.to_table());
    }
    Ok(())
}
