//! The exact cone engine on its own: duals, canonical forms, membership and
//! intersection with a subspace.

use orbcone::cli::fmt_vec;
use orbcone::cone::{intersect_with_subspace, Cone};
use orbcone::linalg::rat_vec;

fn show(label: &str, c: &Cone) {
    let g: Vec<String> = c.generators().iter().map(|v| fmt_vec(v)).collect();
    println!("{label:<22} {}", g.join(", "));
}

fn main() -> orbcone::error::Result<()> {
    let c = Cone::new(
        3,
        [
            rat_vec(&[1, 0, 0]),
            rat_vec(&[1, 1, 0]),
            rat_vec(&[1, 1, 1]),
            rat_vec(&[2, 1, 0]),
        ],
    )?;
    show("generators", &c);
    show("canonical", &c.canonical());
    show("dual", &c.dual());
    println!("pointed: {}", c.is_pointed());
    println!("contains (3,2,1): {}", c.contains(&rat_vec(&[3, 2, 1]))?);
    println!("contains (0,1,0): {}", c.contains(&rat_vec(&[0, 1, 0]))?);

    let meet = intersect_with_subspace(&c, &[rat_vec(&[1, -1, 0])])?;
    show("∩ {x = y}", &meet);

    let half_plane = Cone::new(2, [rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[0, -1])])?;
    show("half-plane canonical", &half_plane.canonical());
    println!(
        "lineality: {:?}",
        half_plane
            .lineality_space()
            .iter()
            .map(|v| fmt_vec(v))
            .collect::<Vec<_>>()
    );
    Ok(())
}
