#![allow(dead_code)]

use num_bigint::BigInt;
use orbcone::fan::{AbelianGroupSpec, NElement, StackyFan};
use rand::Rng;

/// Scales every ray image by an independent factor in `1..=4` and/or, for a
/// fan with torsion, redraws the torsion residues of the rays.
pub fn random_variant<R: Rng>(fan: &StackyFan, rng: &mut R) -> StackyFan {
    let group = fan.group.clone();
    let has_torsion = !group.torsion_orders.is_empty();
    // 0: scale only, 1: torsion only, 2: both
    let mode = if has_torsion { rng.gen_range(0..3) } else { 0 };
    let rays = fan
        .rays
        .iter()
        .map(|r| {
            let k = if mode == 1 { 1 } else { rng.gen_range(1..=4) };
            let free = r.free.iter().map(|x| x * BigInt::from(k)).collect();
            let torsion: Vec<i64> = if mode >= 1 {
                group
                    .torsion_orders
                    .iter()
                    .map(|&l| rng.gen_range(0..l as i64))
                    .collect()
            } else {
                r.torsion.iter().map(|&t| t as i64).collect()
            };
            NElement::new(&group, free, &torsion).unwrap()
        })
        .collect();
    StackyFan::new(
        format!("{}-variant", fan.name),
        group,
        rays,
        fan.max_cones.clone(),
    )
    .unwrap()
}

/// Random element of `N` with free coordinates in `[-bound, bound]`.
pub fn random_n_element<R: Rng>(group: &AbelianGroupSpec, bound: i64, rng: &mut R) -> NElement {
    let free: Vec<i64> = (0..group.rank)
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    let torsion: Vec<i64> = group
        .torsion_orders
        .iter()
        .map(|&l| rng.gen_range(0..l as i64))
        .collect();
    NElement::from_i64(group, &free, &torsion).unwrap()
}

/// Independent box oracle for rank <= 2 fans with small integer rays: a
/// lattice point `y` is in `Box^rig` iff for some maximal cone the Cramer's
/// rule coefficients (computed in `i64` as fractions `num/det`) all lie in
/// `[0, 1)`. Scans the square `[-r, r]^d`.
pub fn brute_force_box_rig(fan: &StackyFan, r: i64) -> Vec<Vec<i64>> {
    let d = fan.dim();
    let rays: Vec<Vec<i64>> = fan
        .rays
        .iter()
        .map(|x| x.free.iter().map(|c| i64::try_from(c).unwrap()).collect())
        .collect();
    let in_unit = |num: i64, det: i64| {
        // 0 <= num/det < 1
        if det > 0 {
            num >= 0 && num < det
        } else {
            num <= 0 && num > det
        }
    };
    let mut out = Vec::new();
    let points: Vec<Vec<i64>> = match d {
        1 => (-r..=r).map(|a| vec![a]).collect(),
        2 => (-r..=r)
            .flat_map(|a| (-r..=r).map(move |b| vec![a, b]))
            .collect(),
        _ => panic!("oracle handles rank 1 and 2 only"),
    };
    for y in points {
        let hit = fan.max_cones.iter().any(|cone| match d {
            1 => {
                let b = rays[cone[0]][0];
                in_unit(y[0], b)
            }
            _ => {
                let (p, q) = (&rays[cone[0]], &rays[cone[1]]);
                let det = p[0] * q[1] - p[1] * q[0];
                let n1 = y[0] * q[1] - y[1] * q[0];
                let n2 = p[0] * y[1] - p[1] * y[0];
                in_unit(n1, det) && in_unit(n2, det)
            }
        });
        if hit {
            out.push(y);
        }
    }
    out
}

/// `|det|` of the rays of each maximal cone, computed directly in `i64` for
/// rank <= 2.
pub fn cone_determinants(fan: &StackyFan) -> Vec<i64> {
    let ray = |i: usize| -> Vec<i64> {
        fan.rays[i]
            .free
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    };
    fan.max_cones
        .iter()
        .map(|c| match c.len() {
            0 => 1,
            1 => ray(c[0])[0].abs(),
            2 => {
                let (p, q) = (ray(c[0]), ray(c[1]));
                (p[0] * q[1] - p[1] * q[0]).abs()
            }
            _ => panic!("rank <= 2 only"),
        })
        .collect()
}

pub const COMMANDS: [&str; 9] = [
    "validate", "rays", "box", "sectors", "ns", "xi", "mov", "peff", "verify",
];

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn golden_path(name: &str, json: bool) -> std::path::PathBuf {
    let ext = if json { "json.golden" } else { "golden" };
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(format!("{name}.{ext}"))
}

/// Concatenated output of every command on one fixture, each section headed
/// by the command line and its exit code.
pub fn render_all(name: &str, json: bool) -> String {
    let file = fixture_path(name);
    let file = file.to_str().unwrap();
    let mut out = String::new();
    let mut runs: Vec<Vec<&str>> = COMMANDS.iter().map(|c| vec![*c, file]).collect();
    runs.push(vec!["class-of-1ps", file, "--b", "0"]);
    for mut args in runs {
        if json {
            args.push("--json");
        }
        let mut argv = vec!["orbcone"];
        argv.extend(&args);
        let o = orbcone::cli::run(&argv);
        let shown: Vec<&str> = args
            .iter()
            .map(|a| if *a == file { "<fixture>" } else { a })
            .collect();
        out.push_str(&format!(
            "$ orbcone {}  [exit {}]\n",
            shown.join(" "),
            o.code
        ));
        out.push_str(&o.stdout);
        out.push_str(&o.stderr);
        out.push('\n');
    }
    out
}
