//! The localization map λ_n, its equalizer and the F-isomorphism certificate.
//!
//! $ cargo run --release --example localization

use steenrod_chow::fp::Prime;
use steenrod_chow::groups::{AbelianGroup, GroupData};
use steenrod_chow::localization::{build_lambda, f_iso_check};

fn main() -> steenrod_chow::Result<()> {
    let g = GroupData::from_abelian(AbelianGroup::new(Prime::new(2)?, vec![2, 2])?);
    for n in 1..=2 {
        let e = build_lambda(&g, n, 4)?;
        println!("{} λ_{n}: {} objects, {} morphisms", g.name, e.objects.len(), e.morphisms.len());
        for d in &e.degrees {
            println!(
                "  deg {}  source {}  equalizer {}  rank {}",
                d.degree, d.source_dim, d.equalizer_dim, d.lambda_rank
            );
        }
        println!("  injective {} onto equalizer {}", e.injective(), e.onto_equalizer());
    }

    let c = f_iso_check(&g, 4)?;
    println!("F-isomorphism: kernel empty {}, image full {}, {}", c.kernel_empty(), c.image_full(), c.verdict);
    println!("limit dims {:?}", c.limit_dims);
    Ok(())
}
