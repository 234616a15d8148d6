//! The fixture library shipped in `fixtures/`.

use crate::fan::StackyFan;
use crate::io::parse_fan;

pub const FIXTURE_FILES: [(&str, &str); 7] = [
    ("p1", include_str!("../fixtures/p1.json")),
    ("p2", include_str!("../fixtures/p2.json")),
    (
        "hirzebruch-f1",
        include_str!("../fixtures/hirzebruch-f1.json"),
    ),
    ("football", include_str!("../fixtures/football.json")),
    ("gerby-p1", include_str!("../fixtures/gerby-p1.json")),
    ("p1xfootball", include_str!("../fixtures/p1xfootball.json")),
    (
        "p2-stretched",
        include_str!("../fixtures/p2-stretched.json"),
    ),
];

pub fn by_name(name: &str) -> Option<StackyFan> {
    FIXTURE_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_fan(text).expect("shipped fixture parses"))
}

pub fn all() -> Vec<StackyFan> {
    FIXTURE_FILES
        .iter()
        .map(|(_, text)| parse_fan(text).expect("shipped fixture parses"))
        .collect()
}

/// `P^1` with rays `1, -1`.
pub fn p1() -> StackyFan {
    by_name("p1").unwrap()
}

/// `P^2` with rays `(1,0), (0,1), (-1,-1)`.
pub fn p2() -> StackyFan {
    by_name("p2").unwrap()
}

pub fn hirzebruch_f1() -> StackyFan {
    by_name("hirzebruch-f1").unwrap()
}

/// The football `P(1,2)`: rays `beta = 1, -2`.
pub fn football() -> StackyFan {
    by_name("football").unwrap()
}

/// A `Z/2`-gerbe over `P^1`: `N = Z ⊕ Z/2`, `beta = (1, 1), (-1, 0)`.
pub fn gerby_p1() -> StackyFan {
    by_name("gerby-p1").unwrap()
}

pub fn p1xfootball() -> StackyFan {
    by_name("p1xfootball").unwrap()
}

/// `P^2` with the first ray image doubled, so `c = 2` there.
pub fn p2_stretched() -> StackyFan {
    by_name("p2-stretched").unwrap()
}
