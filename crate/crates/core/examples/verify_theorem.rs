//! Checks that the dual of the movable cone is generated by the explicit
//! divisor classes, on every fixture and on a user-supplied fan.

use orbcone::fixtures;
use orbcone::io::parse_fan;
use orbcone::orb::verify_duality;

const WEIGHTED: &str = r#"{
  "name": "weighted-p2",
  "rank": 2,
  "rays": [{"beta_free": [3, 0]}, {"beta_free": [0, 2]}, {"beta_free": [-1, -1]}],
  "max_cones": [[0, 1], [1, 2], [0, 2]]
}"#;

fn main() -> orbcone::error::Result<()> {
    let mut fans = fixtures::all();
    fans.push(parse_fan(WEIGHTED)?);
    for fan in &fans {
        let r = verify_duality(fan)?;
        println!(
            "{:<14} |Mov| = {:<3} |PEff extremal| = {:<3} {}",
            r.name,
            r.mov.len(),
            r.corollary_extremal.len(),
            if r.passed() { "equal" } else { "MISMATCH" }
        );
    }
    Ok(())
}
