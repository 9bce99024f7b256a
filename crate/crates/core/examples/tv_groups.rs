//! T_V CH*_G as a product over Rep(V, G), and the map ℓ for abelian groups.
//!
//! $ cargo run --example tv_groups

use steenrod_chow::fp::Prime;
use steenrod_chow::groups::{AbelianGroup, GroupData};
use steenrod_chow::lannes::{ell_check, iterativity, tv_structural};

fn main() -> steenrod_chow::Result<()> {
    let p = Prime::new(2)?;
    let a = AbelianGroup::new(p, vec![4, 2])?;
    let g = GroupData::from_abelian(a.clone());
    let tv = tv_structural(&g, 1)?;
    println!("{}: {} components, dims {:?}", g.name, tv.components.len(), tv.table(6)?.dims.values().collect::<Vec<_>>());
    for rep in ell_check(&a, 1, 4)? {
        println!(
            "  k={} dim {} -> {}  surjective {} injective {}",
            rep.degree, rep.domain_dim, rep.codomain_dim, rep.surjective, rep.injective
        );
    }

    let s3 = steenrod_chow::groups::FiniteGroup::symmetric(3)?;
    for q in [2, 3] {
        let (direct, iterated) = iterativity(&s3, Prime::new(q)?);
        println!("S3 p={q}: Rep(V², G) centralizers {direct:?}, iterated {iterated:?}");
    }
    Ok(())
}
