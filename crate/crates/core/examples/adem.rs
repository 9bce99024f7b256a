//! Adem normal forms at a few primes.
//!
//! $ cargo run --example adem

use steenrod_chow::fp::Prime;
use steenrod_chow::powers::{adem_reduce, admissible_monomials, parse_operation};

fn main() -> steenrod_chow::Result<()> {
    for (p, expr) in [(2, "P^1 P^1"), (2, "P^1 P^2"), (3, "P^1 P^1"), (3, "P^2 P^3 + P^4 P^1"), (5, "P^1 P^1 P^1")] {
        let p = Prime::new(p)?;
        let e = parse_operation(expr, p)?;
        println!("p={}  {expr}  =  {}", p.value(), adem_reduce(&e));
    }

    // admissible basis of the degree-8 part at p = 3
    let p = Prime::new(3)?;
    for w in admissible_monomials(8, p, None).iter() {
        println!("{w}");
    }
    Ok(())
}
