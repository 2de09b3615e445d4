//! File ingestion, generators, benchmarks and rendering.

pub mod bench;
pub mod gen;
pub mod io;
pub mod svg;

pub use bench::{run_bench, BenchConfig, BenchReport, Built, QueryMode, QueryRecord, Structure};
pub use gen::{lowerbound_polygon, random_subdivision, Kind, Weights};
pub use io::{format_subdivision, load_subdivision, parse_subdivision, save_subdivision};

use crate::subdivision::Subdivision;

/// `sum gamma log2(1/gamma)` over the faces; zero probabilities add nothing.
pub fn compute_entropy(sub: &Subdivision) -> f64 {
    sub.faces().iter().map(|f| f.gamma).filter(|&g| g > 0.0).map(|g| -g * g.log2()).sum()
}
