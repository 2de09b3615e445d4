//! Writes a generated subdivision to a file and reads it back.

use dspl::harness::{compute_entropy, load_subdivision, random_subdivision, save_subdivision, Kind, Weights};

fn main() -> dspl::error::Result<()> {
    let sub = random_subdivision(500, Kind::General, Weights::Area, 9)?;
    let path = std::env::temp_dir().join("dspl_example.sub");
    save_subdivision(&sub, &path)?;
    let back = load_subdivision(&path)?;
    println!("wrote {}", path.display());
    println!("{} faces, {} edges, entropy {:.4} bits", back.faces().len(), back.n(), compute_entropy(&back));
    assert_eq!(back.gammas(), sub.gammas());
    Ok(())
}
