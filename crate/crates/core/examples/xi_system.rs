//! The `Ξ` and `Ξ*` bases of the football and the pairing matrix between them.

use orbcone::cli::fmt_vec;
use orbcone::fixtures;
use orbcone::orb::Orbifold;

fn main() -> orbcone::error::Result<()> {
    let o = Orbifold::new(fixtures::football())?;
    for (i, eta) in o.xi.labels().iter().enumerate() {
        println!(
            "{eta:<3} Ξ = {:<10} Ξ* = {}",
            fmt_vec(&o.xi.xi()[i]),
            fmt_vec(&o.xi.xi_star()[i])
        );
    }
    println!("<Ξ*_η, Ξ_η'>:");
    for row in o.xi.pairing_matrix() {
        println!("  {}", fmt_vec(&row));
    }
    Ok(())
}
