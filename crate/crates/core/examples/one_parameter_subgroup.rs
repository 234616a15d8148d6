//! Orbifold classes of one-parameter subgroups and their decomposition into
//! `Ξ_{q(b)}` plus non-negative integer multiples of the `Ξ_rho`.

use orbcone::cli::fmt_vec;
use orbcone::fan::NElement;
use orbcone::fixtures;
use orbcone::orb::Orbifold;

fn main() -> orbcone::error::Result<()> {
    let o = Orbifold::new(fixtures::p1xfootball())?;
    for b in [[0, 0], [1, 0], [0, -1], [0, -3], [-2, 5], [3, -7]] {
        let c = o.one_ps_class(&NElement::from_i64(o.fan.group(), &b, &[])?)?;
        let parts: Vec<String> = c
            .decomposition
            .iter()
            .map(|(eta, n)| format!("{n}·Ξ[{eta}]"))
            .collect();
        println!(
            "b = {:<8} class = {:<22} sector = {:<8} = {}",
            format!("{b:?}"),
            fmt_vec(&c.class_vector),
            c.sector.to_string(),
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        );
        assert_eq!(c.reconstruct(&o.xi), c.class_vector);
    }
    Ok(())
}
