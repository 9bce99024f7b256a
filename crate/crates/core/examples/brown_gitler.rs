//! Free unstable modules F(n) and Brown-Gitler modules J(k).
//!
//! $ cargo run --example brown_gitler

use steenrod_chow::fp::Prime;
use steenrod_chow::unstable::{brown_gitler, free_basis, hom_space, FinitelyPresentedModule};

fn main() -> steenrod_chow::Result<()> {
    let p = Prime::new(2)?;
    for n in 1..=3 {
        let dims: Vec<usize> = (0..=10).map(|d| free_basis(n, d, p).len()).collect();
        println!("F({n}) dims {dims:?}");
    }
    let b = free_basis(2, 6, p);
    println!("F(2)^6 = {:?}", b.words().iter().map(|w| w.to_string()).collect::<Vec<_>>());

    // Hom(F(i), J(k)) is the dual of F(i)^k
    let k = 5;
    let j = brown_gitler(k, 8, p);
    println!("J({k}) dims {:?}", j.module.dims_slice());
    for i in 1..=k {
        let h = hom_space(&FinitelyPresentedModule::free(p, i), &j.module)?;
        println!("Hom(F({i}), J({k})) = {}  dim F({i})^{k} = {}", h.dim(), free_basis(i, k, p).len());
    }
    Ok(())
}
