//! Nilpotence degrees of the bundled presented modules.
//!
//! $ cargo run --example nilpotence

use steenrod_chow::unstable::{nilpotence_degree_fp, FinitelyPresentedModule};

fn main() -> steenrod_chow::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/modules");
    let mut paths: Vec<_> = std::fs::read_dir(dir)?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();
    for path in paths {
        let m = FinitelyPresentedModule::from_json(&std::fs::read_to_string(&path)?)?;
        let n = nilpotence_degree_fp(&m, 8);
        let top = m.bounded().and_then(|b| b.top());
        println!("{:<18} top {:<8} nil {} ({:?})", path.file_stem().unwrap().to_string_lossy(), format!("{top:?}"), n.n, n.verdict);
    }
    Ok(())
}
