//! Values worked out by hand, compared against the library.

mod common;

use orbcone::boxes::{enumerate_box, minimal_cone_coeffs, q_reduce, ACoeffs};
use orbcone::cone::{cone_equal, Cone};
use orbcone::fan::{NElement, ValidatedFan};
use orbcone::fixtures;
use orbcone::linalg::{add, int_vec, rat, rat_vec, RatVector};
use orbcone::orb::{Eta, Orbifold};

#[test]
fn football_coefficients_by_hand() {
    // y >= 0 sits on ρ0 = (1) with a = y; y < 0 sits on ρ1 = (-2) with a = -y/2
    let f = ValidatedFan::new(fixtures::football()).unwrap();
    for y in -6i64..=6 {
        let a = minimal_cone_coeffs(&f, &int_vec(&[y])).unwrap();
        let want: ACoeffs = match y {
            0 => ACoeffs::new(),
            y if y > 0 => ACoeffs::from([(0, rat(y, 1))]),
            y => ACoeffs::from([(1, rat(-y, 2))]),
        };
        assert_eq!(a, want, "y = {y}");
        let q = q_reduce(&f, &NElement::from_i64(f.group(), &[y], &[]).unwrap()).unwrap();
        let odd_negative = y < 0 && y % 2 != 0;
        assert_eq!(
            q.rig,
            int_vec(&[if odd_negative { -1 } else { 0 }]),
            "y = {y}"
        );
    }
}

#[test]
fn brute_force_box_on_fixtures() {
    let want: [(&str, &[&[i64]]); 7] = [
        ("p1", &[&[0]]),
        ("p2", &[&[0, 0]]),
        ("hirzebruch-f1", &[&[0, 0]]),
        ("football", &[&[-1], &[0]]),
        ("gerby-p1", &[&[0]]),
        ("p1xfootball", &[&[0, -1], &[0, 0]]),
        ("p2-stretched", &[&[0, 0], &[1, 0]]),
    ];
    for (name, rig) in want {
        let fan = fixtures::by_name(name).unwrap();
        let mut oracle = common::brute_force_box_rig(&fan, 6);
        oracle.sort();
        let rig: Vec<Vec<i64>> = rig.iter().map(|v| v.to_vec()).collect();
        assert_eq!(oracle, rig, "{name}");
        let vf = ValidatedFan::new(fan).unwrap();
        let mut ours: Vec<Vec<i64>> = enumerate_box(&vf)
            .into_iter()
            .map(|e| e.rig.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        ours.dedup();
        assert_eq!(ours, rig, "{name}");
    }
}

#[test]
fn hirzebruch_classical_relations() {
    // with m = (1,0): D0 = D2; with m = (0,1): D3 = D1 + D2, and the
    // effective cone is spanned by D1 (the negative section) and D2 (a fiber)
    let o = Orbifold::new(fixtures::hirzebruch_f1()).unwrap();
    let e: Vec<RatVector> = (0..4)
        .map(|r| o.spaces.divisor_class_of_ray(r).unwrap().0 .0)
        .collect();
    assert_eq!(e[0], e[2]);
    assert_eq!(e[3], add(&e[1], &e[2]));
    let peff = o.peff_cone().unwrap();
    let span = Cone::new(2, [e[1].clone(), e[2].clone()]).unwrap();
    assert!(cone_equal(&peff, &span));
    assert_eq!(peff.generators().len(), 2);
}

#[test]
fn p2_classes_are_all_equal() {
    let o = Orbifold::new(fixtures::p2()).unwrap();
    let e: Vec<RatVector> = (0..3)
        .map(|r| o.spaces.divisor_class_of_ray(r).unwrap().0 .0)
        .collect();
    assert!(e.iter().all(|x| *x == e[0]));
    assert_eq!(o.mov_cone().unwrap().generators(), &[rat_vec(&[1])]);
}

#[test]
fn gerby_sector_is_pure_torsion() {
    let o = Orbifold::new(fixtures::gerby_p1()).unwrap();
    assert_eq!(o.sectors.len(), 1);
    assert!(o.sectors[0].coeffs.is_empty());
    // with all a = 0, Ξ_Y = v_Y and Ξ*_Y = u_Y
    let y = o.xi.index_of(Eta::Sector(0));
    let unit = o.spaces.u_sector(0);
    assert_eq!(o.xi.xi()[y], unit);
    assert_eq!(o.xi.xi_star()[y], unit);
    // the corollary generators are [E_ρ0], [E_ρ1] and u_Y, with no corrections
    let gens: Vec<RatVector> = o
        .peff_generators()
        .unwrap()
        .into_iter()
        .map(|g| g.0)
        .collect();
    for (rho, g) in gens.iter().take(2).enumerate() {
        let (_, script_e) = o.spaces.divisor_class_of_ray(rho).unwrap();
        assert_eq!(*g, script_e.0);
    }
}

#[test]
fn football_one_parameter_subgroup() {
    // b = -3: a_ρ1 = 3/2, b_ρ1 = 2 v_ρ1, q(b) = Y0, so the class is 3 v_ρ1 + v_Y0
    let o = Orbifold::new(fixtures::football()).unwrap();
    let b = NElement::from_i64(o.fan.group(), &[-3], &[]).unwrap();
    let c = o.one_ps_class(&b).unwrap();
    assert_eq!(c.class_vector, rat_vec(&[0, 3, 1]));
    assert_eq!(c.sector_index, Some(0));
    // Ξ_Y0 = v_Y0 + v_ρ1 and Ξ_ρ1 = 2 v_ρ1
    let xi_y = o.xi.xi_of(Eta::Sector(0));
    let xi_r = o.xi.xi_of(Eta::Ray(1));
    assert_eq!(*xi_y, rat_vec(&[0, 1, 1]));
    assert_eq!(add(xi_y, xi_r), c.class_vector);
}
