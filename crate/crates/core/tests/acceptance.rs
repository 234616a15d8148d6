//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use orbcone::boxes::{enumerate_box, parallelepiped_points};
use orbcone::cone::{cone_equal, Cone};
use orbcone::fan::{NElement, StackyFan, ValidatedFan};
use orbcone::fixtures;
use orbcone::linalg::{dot, int, rat, rat_vec, RatVector, Scalar};
use orbcone::orb::{Eta, Orbifold};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_0c0e;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn variants(per_fixture: usize, seed: u64) -> Vec<StackyFan> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for f in fixtures::all() {
        for _ in 0..per_fixture {
            out.push(common::random_variant(&f, &mut rng));
        }
    }
    out
}

fn fixtures_and_variants(per_fixture: usize, seed: u64) -> Vec<StackyFan> {
    let mut all = fixtures::all();
    all.extend(variants(per_fixture, seed));
    all
}

fn err<E: std::fmt::Display>(name: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{name}: {e}")
}

fn theorem_verification() -> Check {
    let fans = fixtures_and_variants(50, SEED);
    let mut slowest = Duration::ZERO;
    for fan in &fans {
        let start = Instant::now();
        let report = orbcone::orb::verify_duality(fan).map_err(err(&fan.name))?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure(report.passed(), || format!("{}: {report:?}", fan.name))?;
        ensure(took < Duration::from_secs(1), || {
            format!("{}: took {took:?}", fan.name)
        })?;
    }
    Ok(format!("{} instances, slowest {:?}", fans.len(), slowest))
}

fn football_end_to_end() -> Check {
    let o = Orbifold::new(fixtures::football()).map_err(err("football"))?;
    let rig: Vec<RatVector> = {
        let mut r: Vec<_> = enumerate_box(&o.fan).into_iter().map(|e| e.rig).collect();
        r.dedup();
        r.iter()
            .map(|v| v.iter().cloned().map(Scalar::from_integer).collect())
            .collect()
    };
    ensure(rig == vec![rat_vec(&[-1]), rat_vec(&[0])], || {
        format!("Box^rig {rig:?}")
    })?;
    ensure(o.sectors.len() == 1, || {
        format!("{} sectors", o.sectors.len())
    })?;
    ensure(
        o.sectors[0].coeff(1) == rat(1, 2) && o.sectors[0].coeff(0).is_zero(),
        || format!("a(Y) = {:?}", o.sectors[0].coeffs),
    )?;
    ensure(o.spaces.orb_picard_number() == 2, || "dim N^1_orb".into())?;
    let mov = o.mov_cone().map_err(err("mov"))?;
    let want_mov = Cone::new(2, [rat_vec(&[1, 0]), rat_vec(&[1, 1])]).unwrap();
    ensure(
        mov.generators() == want_mov.canonical().generators(),
        || format!("Mov {:?}", mov.generators()),
    )?;
    let peff = o.peff_cone().map_err(err("peff"))?;
    let want: Vec<RatVector> = vec![rat_vec(&[0, 1]), rat_vec(&[1, -1])];
    ensure(peff.generators() == want.as_slice(), || {
        format!("PEff {:?}", peff.generators())
    })?;
    Ok("Box^rig {0,-1}, a = 1/2, Mov {(1,0),(1,1)}, PEff {(1,-1),(0,1)}".into())
}

fn box_count() -> Check {
    let fans = fixtures_and_variants(100, SEED + 1);
    let mut cones = 0;
    for fan in &fans {
        let dets = common::cone_determinants(fan);
        let vf = ValidatedFan::new(fan.clone()).map_err(err(&fan.name))?;
        for (k, d) in dets.iter().enumerate() {
            let n = parallelepiped_points(&vf, k).len() as i64;
            ensure(n == *d, || {
                format!("{} cone {k}: {n} points, |det| {d}", fan.name)
            })?;
            cones += 1;
        }
    }
    Ok(format!("{} fans, {cones} cones", fans.len()))
}

fn dual_basis() -> Check {
    let fans = fixtures_and_variants(20, SEED + 2);
    for fan in &fans {
        let o = Orbifold::new(fan.clone()).map_err(err(&fan.name))?;
        for (i, xs) in o.xi.xi_star().iter().enumerate() {
            for (j, x) in o.xi.xi().iter().enumerate() {
                let want = if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                ensure(dot(xs, x) == want, || {
                    format!("{}: <Ξ*{i}, Ξ{j}>", fan.name)
                })?;
            }
        }
    }
    Ok(format!("{} fans", fans.len()))
}

fn one_ps_classes() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let fans = fixtures_and_variants(5, SEED + 4);
    let mut samples = 0;
    for fan in &fans {
        let o = Orbifold::new(fan.clone()).map_err(err(&fan.name))?;
        for _ in 0..100 {
            let b = common::random_n_element(o.fan.group(), 20, &mut rng);
            let c = o.one_ps_class(&b).map_err(err(&fan.name))?;
            for (eta, n) in &c.decomposition {
                if let Eta::Ray(_) = eta {
                    ensure(n.is_integer() && !n.is_negative(), || {
                        format!("{}: coefficient {n} on {eta}", fan.name)
                    })?;
                }
            }
            ensure(c.reconstruct(&o.xi) == c.class_vector, || {
                format!("{}: reconstruction of {b:?}", fan.name)
            })?;
            samples += 1;
        }
        let zero_torsion = vec![0; o.fan.group().torsion_orders.len()];
        for rho in 0..o.fan.num_rays() {
            let b = NElement {
                free: o.fan.rays()[rho].b_rig.clone(),
                torsion: zero_torsion.clone(),
            };
            let c = o.one_ps_class(&b).map_err(err(&fan.name))?;
            ensure(&c.class_vector == o.xi.xi_of(Eta::Ray(rho)), || {
                format!("{}: Ξ identity for ρ{rho}", fan.name)
            })?;
        }
        for (i, y) in o.sectors.iter().enumerate() {
            let c = o.one_ps_class(&y.as_n_element()).map_err(err(&fan.name))?;
            ensure(&c.class_vector == o.xi.xi_of(Eta::Sector(i)), || {
                format!("{}: Ξ identity for Y{i}", fan.name)
            })?;
        }
    }
    Ok(format!("{} fans, {samples} random b", fans.len()))
}

fn classical_reduction() -> Check {
    for fan in [fixtures::p1(), fixtures::p2(), fixtures::hirzebruch_f1()] {
        let o = Orbifold::new(fan.clone()).map_err(err(&fan.name))?;
        ensure(o.sectors.is_empty(), || {
            format!("{}: twisted sectors", fan.name)
        })?;
        let dim = o.spaces.orb_picard_number();
        let classes: Vec<RatVector> = (0..o.fan.num_rays())
            .map(|rho| o.spaces.divisor_class_of_ray(rho).map(|(e, _)| e.0))
            .collect::<Result<_, _>>()
            .map_err(err(&fan.name))?;
        let classical = Cone::new(dim, classes).map_err(err(&fan.name))?;
        let peff = o.peff_cone().map_err(err(&fan.name))?;
        ensure(cone_equal(&classical, &peff), || {
            format!("{}: PEff", fan.name)
        })?;
    }
    let mut with_sectors = 0;
    for fan in fixtures::all() {
        let o = Orbifold::new(fan.clone()).map_err(err(&fan.name))?;
        if o.sectors.is_empty() {
            continue;
        }
        with_sectors += 1;
        ensure(o.projection_consistent().map_err(err(&fan.name))?, || {
            format!("{}: projection", fan.name)
        })?;
    }
    Ok(format!(
        "P1, P2, F1 classical; projection on {with_sectors} fixtures"
    ))
}

fn polyhedral_engine() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    for case in 0..200 {
        let dim = rng.gen_range(1..=6);
        let n = rng.gen_range(0..=10);
        let gens: Vec<RatVector> = (0..n)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-4..=4))).collect())
            .collect();
        let c = Cone::new(dim, gens.clone()).map_err(err("cone"))?;
        let dd = c.dual().dual();
        ensure(cone_equal(&dd, &c), || format!("case {case}: {gens:?}"))?;
        for g in dd.generators() {
            ensure(c.contains(g).unwrap(), || format!("case {case}: dd ⊄ C"))?;
        }
        for g in &gens {
            ensure(dd.contains(g).unwrap(), || format!("case {case}: C ⊄ dd"))?;
        }
    }
    for fan in fixtures::all() {
        let o = Orbifold::new(fan.clone()).map_err(err(&fan.name))?;
        for (name, ok) in o.spaces.exactness_checks() {
            ensure(ok, || format!("{}: {name}", fan.name))?;
        }
    }
    Ok("200 random cones; exactness on 7 fixtures".into())
}

fn determinism() -> Check {
    for (name, _) in fixtures::FIXTURE_FILES {
        for json in [false, true] {
            let a = common::render_all(name, json);
            let b = common::render_all(name, json);
            ensure(a == b, || format!("{name}: repeated runs differ"))?;
            let path = common::golden_path(name, json);
            let want = std::fs::read_to_string(&path).map_err(err(name))?;
            ensure(a == want, || format!("{}: golden mismatch", path.display()))?;
        }
    }
    Ok("10 commands x 7 fixtures x 2 formats".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 theorem verification", theorem_verification),
        ("2 football end-to-end", football_end_to_end),
        ("3 box count", box_count),
        ("4 dual basis", dual_basis),
        ("5 one-parameter subgroup classes", one_ps_classes),
        ("6 classical reduction", classical_reduction),
        ("7 polyhedral engine", polyhedral_engine),
        ("8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {name}: {detail} ({:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
