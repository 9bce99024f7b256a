//! T_V dimension tables of presented modules, and the tensor check.
//!
//! $ cargo run --example tv_modules

use steenrod_chow::fp::Prime;
use steenrod_chow::lannes::{tensor_convolution_check, tv_table};
use steenrod_chow::unstable::FinitelyPresentedModule;

fn load(name: &str) -> steenrod_chow::Result<FinitelyPresentedModule> {
    let path = format!("{}/data/modules/{name}.json", env!("CARGO_MANIFEST_DIR"));
    FinitelyPresentedModule::from_json(&std::fs::read_to_string(path)?)
}

fn main() -> steenrod_chow::Result<()> {
    for name in ["point2", "truncated_f1", "free1", "mixed_p3"] {
        let m = load(name)?;
        for r in 1..=2 {
            let t = tv_table(&m, name, r, 6)?;
            println!("{name} r={r} {:?}", t.dims.values().collect::<Vec<_>>());
        }
    }

    let p = Prime::new(2)?;
    let a = FinitelyPresentedModule::point(p, 1);
    let b = load("truncated_f1")?;
    println!("T_V(M ⊗ N) = T_V M ⊗ T_V N: {}", tensor_convolution_check(&a, &b, 1, 6)?);
    Ok(())
}
