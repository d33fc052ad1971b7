//! Writes `data/11a.lfun` and `data/37a.lfun` from the point-counting oracle.
//!
//! cargo run -p toroidal-core --example gen_curve_lfun [-- <out_dir>]

#[path = "../tests/common/curves.rs"]
mod curves;

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let out_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"));
    std::fs::create_dir_all(&out_dir)?;
    for curve in [curves::CURVE_11A, curves::CURVE_37A] {
        let path = out_dir.join(format!("{}.lfun", curve.label));
        std::fs::write(&path, curves::lfun_file(&curve, curves::DATA_PRIME_BOUND))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
