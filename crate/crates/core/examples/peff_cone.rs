//! Generators `lambda_orb(Ξ*_η)` of the orbifold pseudo-effective cone and
//! its extremal rays.

use orbcone::cli::fmt_vec;
use orbcone::fixtures;
use orbcone::orb::Orbifold;

fn main() -> orbcone::error::Result<()> {
    for name in ["football", "gerby-p1", "p1xfootball"] {
        let o = Orbifold::new(fixtures::by_name(name).expect("shipped fixture"))?;
        println!("{name}");
        for (eta, g) in o.xi.labels().iter().zip(o.peff_generators()?) {
            println!("  {eta}: {}", fmt_vec(&g.0));
        }
        let extremal: Vec<String> = o
            .peff_cone()?
            .generators()
            .iter()
            .map(|g| fmt_vec(g))
            .collect();
        println!("  extremal: {}", extremal.join(", "));
    }
    Ok(())
}
