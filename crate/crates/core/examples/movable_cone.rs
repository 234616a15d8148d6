//! The movable cone of orbifold curve classes, computed from the `Ξ*`
//! inequalities and again as `cone(Ξ) ∩ Ker(beta'_orb)`.

use orbcone::cli::fmt_vec;
use orbcone::fixtures;
use orbcone::orb::{mov_cone_by_intersection, Orbifold};

fn main() -> orbcone::error::Result<()> {
    for fan in fixtures::all() {
        let o = Orbifold::new(fan)?;
        let mov = o.mov_cone()?;
        let meet = mov_cone_by_intersection(&o.xi, &o.spaces)?;
        let rays: Vec<String> = mov.generators().iter().map(|g| fmt_vec(g)).collect();
        println!(
            "{:<14} Mov = cone{{{}}}  paths agree: {}",
            o.name(),
            rays.join(", "),
            mov.generators() == meet.generators()
        );
    }
    Ok(())
}
