//! The orbifold Néron–Severi space of `P1 x football`: dimensions, the curve
//! basis, the ray divisor classes and the exactness checks.

use orbcone::cli::fmt_vec;
use orbcone::fixtures;
use orbcone::orb::Orbifold;

fn main() -> orbcone::error::Result<()> {
    let o = Orbifold::new(fixtures::p1xfootball())?;
    let sp = &o.spaces;
    println!(
        "dim N^1 = {}, dim N^1_orb = {}",
        sp.picard_number(),
        sp.orb_picard_number()
    );

    println!("curve basis in V_orb:");
    for (i, e) in sp.curve_basis().iter().enumerate() {
        println!("  e{} = {}", i + 1, fmt_vec(e));
    }

    println!("ray classes [E] and [ℰ] = [E] / c:");
    for rho in 0..sp.num_rays() {
        let (e, script_e) = sp.divisor_class_of_ray(rho)?;
        println!("  ρ{rho}: {}  {}", fmt_vec(&e.0), fmt_vec(&script_e.0));
    }

    for (name, ok) in sp.exactness_checks() {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
    }
    Ok(())
}
