//! Writes the reference curves as JSON files into the given directory.
//!
//! cargo run -p jordan-core --example export_fixtures -- crates/cli/fixtures

use std::path::PathBuf;

use jordan_core::fixtures::{figure_eight, jordan_fixtures};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    let mut all = jordan_fixtures();
    all.push(("figure8", figure_eight()));
    for (name, spec) in all {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, spec.to_json() + "\n")?;
        println!("{}", path.display());
    }
    Ok(())
}
