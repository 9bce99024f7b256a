//! d0 and d1 for the bundled abelian groups, with the faithful-degree bounds.
//!
//! $ cargo run --release --example d0_bounds

use steenrod_chow::groups::{load_group_path, GroupData};
use steenrod_chow::localization::{bounds_report, synthetic_totaro};
use steenrod_chow::fp::Prime;

fn main() -> steenrod_chow::Result<()> {
    for name in ["z2", "z4", "klein", "z3squared", "z4xz2"] {
        let path = format!("{}/data/groups/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let file = load_group_path(std::path::Path::new(&path))?;
        let g = GroupData::from_file(&file, file.prime.expect("bundled groups name a prime"));
        let b = bounds_report(&g, file.faithful_degree.unwrap_or(1), 4)?;
        println!("{:<10} d0 = {}  d1 = {}  passed {}", g.name, b.d0, b.d1, b.passed());
    }

    // CH*_V ⊕ F_p[d]: the largest nil level tracks d
    for d in 0..4 {
        let t = synthetic_totaro(Prime::new(2)?, 1, d, 4)?;
        println!("point in degree {d}: d0 {}  nil level {}", t.d0, t.nil_level);
    }
    Ok(())
}
