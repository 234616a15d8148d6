//! Lists `Box(Σ)` and the twisted sectors of a few fixtures, then reduces
//! some lattice points with `q`.

use orbcone::boxes::{enumerate_box, q_reduce, twisted_sectors};
use orbcone::fan::{NElement, ValidatedFan};
use orbcone::fixtures;

fn main() -> orbcone::error::Result<()> {
    for name in ["football", "gerby-p1", "p1xfootball", "p2-stretched"] {
        let fan = ValidatedFan::new(fixtures::by_name(name).expect("shipped fixture"))?;
        println!("{name}: |Box| = {}", enumerate_box(&fan).len());
        for (i, y) in twisted_sectors(&fan).iter().enumerate() {
            let coeffs: Vec<String> = y
                .coeffs
                .iter()
                .map(|(r, a)| format!("a[ρ{r}]={a}"))
                .collect();
            println!("  Y{i} = {y}  {}", coeffs.join(" ").trim_end());
        }
    }

    let football = ValidatedFan::new(fixtures::football())?;
    println!("\nq on the football:");
    for b in -4..=4 {
        let e = q_reduce(&football, &NElement::from_i64(football.group(), &[b], &[])?)?;
        println!("  q({b:>2}) = {e}");
    }
    Ok(())
}
