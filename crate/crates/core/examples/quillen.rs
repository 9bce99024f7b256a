//! Representation classes and the Quillen category of a group file.
//!
//! $ cargo run --example quillen -- data/groups/d4.json

use steenrod_chow::fp::Prime;
use steenrod_chow::groups::{elementary_abelians, load_group_path, rep_classes};

fn main() -> steenrod_chow::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "data/groups/d4.json".into());
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join(arg);
    let file = load_group_path(&path)?;
    let p = file.prime.unwrap_or(Prime::new(2)?);
    let g = &file.group;
    println!("{} of order {}, p = {}", file.display_name(), g.order(), p.value());
    for r in 1..=2 {
        let classes = rep_classes(r, g, p);
        println!("Rep((Z/p)^{r}, G): {} classes", classes.len());
        for c in &classes {
            let labels: Vec<&str> = c.representative.iter().map(|&x| g.label(x)).collect();
            println!("  {labels:?} orbit {}", c.orbit_size);
        }
    }
    let cat = elementary_abelians(g, p);
    println!("Quillen category: {} objects, {} morphisms", cat.objects.len(), cat.morphisms.len());
    for e in &cat.objects {
        println!("  rank {} {:?}", e.rank, e.elements);
    }
    Ok(())
}
