//! Steenrod operations on CH*((Z/p)^r) and on an ingested ring.
//!
//! $ cargo run --example chow_action

use steenrod_chow::chow::{elem_abelian_ring, ingest_ring};
use steenrod_chow::fp::Prime;
use steenrod_chow::poly::parse_poly;
use steenrod_chow::powers::parse_operation;

fn main() -> steenrod_chow::Result<()> {
    let p = Prime::new(3)?;
    let ring = elem_abelian_ring(2, p);
    let names = ring.names();
    let f = parse_poly("y1 y2 + y2^2", &names, p)?;
    for op in ["P^1", "P^2", "P^3", "P^1 P^1"] {
        let g = ring.apply_expr(&parse_operation(op, p)?, &f)?;
        println!("{op}({}) = {}", f.display(&names), g.display(&names));
    }

    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/rings/f2_x_mod_x2.json"))?;
    let r = ingest_ring(&text)?;
    let dims: Vec<usize> = (0..=4).map(|d| r.dim(d)).collect::<Result<_, _>>()?;
    println!("ingested ring: dims {dims:?}, provenance {:?}", r.provenance());
    r.validate(8)?;
    Ok(())
}
