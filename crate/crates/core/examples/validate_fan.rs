//! Runs the fan checks on every shipped fixture and on a fan whose cones do
//! not cover the line.

use orbcone::fan::validate;
use orbcone::fixtures;
use orbcone::io::parse_fan;

fn main() {
    for fan in fixtures::all() {
        let report = validate(&fan);
        println!(
            "{:<14} {}",
            fan.name,
            if report.passed() { "valid" } else { "invalid" }
        );
    }

    let half_line = parse_fan(
        r#"{"name": "half-line", "rank": 1, "rays": [{"beta_free": [1]}], "max_cones": [[0]]}"#,
    )
    .expect("well-formed JSON");
    println!("\n{}:", half_line.name);
    print!("{}", validate(&half_line));
}
