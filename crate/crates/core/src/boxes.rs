//! Barycentric coefficients `a_rho(y)`, the reduction map `q`, and the
//! enumeration of `Box(Σ) = Box^rig(Σ) × N_tor`.
//!
//! Nonzero box elements are the twisted sectors. Their canonical order
//! (rigid part lexicographically, then torsion lexicographically) is the
//! index order used by every sector coordinate elsewhere in the crate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fan::{NElement, ValidatedFan};
use crate::linalg::{to_int, to_rat, IntVector, RatVector, Scalar};

/// Sparse `rho -> a_rho(y)`; only strictly positive entries are stored.
pub type ACoeffs = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxElement {
    pub rig: IntVector,
    pub torsion: Vec<u64>,
    pub coeffs: ACoeffs,
}

impl BoxElement {
    pub fn is_untwisted(&self) -> bool {
        self.rig.iter().all(Zero::is_zero) && self.torsion.iter().all(|&t| t == 0)
    }

    pub fn as_n_element(&self) -> NElement {
        NElement {
            free: self.rig.clone(),
            torsion: self.torsion.clone(),
        }
    }

    /// `a_rho` of the rigid part, zero when `rho` is not in the support.
    pub fn coeff(&self, rho: usize) -> Scalar {
        self.coeffs.get(&rho).cloned().unwrap_or_else(Scalar::zero)
    }

    fn sort_key(&self) -> (&IntVector, &Vec<u64>) {
        (&self.rig, &self.torsion)
    }
}

impl fmt::Display for BoxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rig: Vec<String> = self.rig.iter().map(ToString::to_string).collect();
        write!(f, "({})", rig.join(","))?;
        if !self.torsion.is_empty() {
            let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
            write!(f, " tor ({})", t.join(","))?;
        }
        Ok(())
    }
}

/// `a_rho(y)` for the minimal cone containing `y`: the first maximal cone (in
/// input order) with non-negative coefficients is used.
pub fn minimal_cone_coeffs(fan: &ValidatedFan, y: &[BigInt]) -> Result<ACoeffs> {
    if y.len() != fan.dim() {
        return Err(Error::DimensionMismatch {
            expected: fan.dim(),
            found: y.len(),
        });
    }
    let target = to_rat(y);
    for (k, cone) in fan.max_cones().iter().enumerate() {
        let a = fan.coefficients_in_cone(k, &target);
        if a.iter().all(|x| !x.is_negative()) {
            return Ok(cone
                .iter()
                .zip(a)
                .filter(|(_, x)| x.is_positive())
                .map(|(&rho, x)| (rho, x))
                .collect());
        }
    }
    let shown: Vec<String> = y.iter().map(ToString::to_string).collect();
    Err(Error::NotComplete(format!("({})", shown.join(","))))
}

fn fract(x: &Scalar) -> Scalar {
    x - x.floor()
}

/// `q(b)`: keeps the fractional parts of the coefficients and passes the
/// torsion part through unchanged.
pub fn q_reduce(fan: &ValidatedFan, b: &NElement) -> Result<BoxElement> {
    let a = minimal_cone_coeffs(fan, &b.free)?;
    let coeffs: ACoeffs = a
        .into_iter()
        .map(|(rho, x)| (rho, fract(&x)))
        .filter(|(_, x)| !x.is_zero())
        .collect();
    let mut rig = vec![Scalar::zero(); fan.dim()];
    for (&rho, x) in &coeffs {
        for (r, bc) in rig.iter_mut().zip(&fan.rays()[rho].b_rig) {
            *r += x * Scalar::from_integer(bc.clone());
        }
    }
    let rig = to_int(&rig)
        .ok_or_else(|| Error::Invariant("fractional reduction left the lattice".into()))?;
    Ok(BoxElement {
        rig,
        torsion: b.torsion.clone(),
        coeffs,
    })
}

/// Lattice points `sum a_rho b_rho` with every `0 <= a_rho < 1`, over the
/// rays of maximal cone `k`. The count equals `|det(b_rho)|`.
pub fn parallelepiped_points(fan: &ValidatedFan, k: usize) -> Vec<IntVector> {
    let d = fan.dim();
    let cone = &fan.max_cones()[k];
    let mut lo = vec![BigInt::zero(); d];
    let mut hi = vec![BigInt::zero(); d];
    // the bounding box of the closed parallelepiped is spanned coordinatewise
    // by the negative and positive parts of the generators
    for &rho in cone {
        for (i, x) in fan.rays()[rho].b_rig.iter().enumerate() {
            if x.is_negative() {
                lo[i] += x;
            } else {
                hi[i] += x;
            }
        }
    }
    let lo: Vec<i64> = lo
        .iter()
        .map(|x| x.to_i64().expect("desk-scale box"))
        .collect();
    let hi: Vec<i64> = hi
        .iter()
        .map(|x| x.to_i64().expect("desk-scale box"))
        .collect();

    let mut out = Vec::new();
    let mut point = lo.clone();
    loop {
        let y: RatVector = point
            .iter()
            .map(|&x| Scalar::from_integer(x.into()))
            .collect();
        let a = fan.coefficients_in_cone(k, &y);
        if a.iter().all(|x| !x.is_negative() && *x < Scalar::one()) {
            out.push(point.iter().map(|&x| BigInt::from(x)).collect());
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            if point[i] < hi[i] {
                point[i] += 1;
                break;
            }
            point[i] = lo[i];
            i += 1;
        }
    }
}

/// All of `Box(Σ)` in canonical order, the untwisted element included.
pub fn enumerate_box(fan: &ValidatedFan) -> Vec<BoxElement> {
    let rig: BTreeSet<IntVector> = (0..fan.max_cones().len())
        .flat_map(|k| parallelepiped_points(fan, k))
        .collect();
    let torsion = fan.group().torsion_elements();
    let mut out = Vec::with_capacity(rig.len() * torsion.len());
    for y in &rig {
        let coeffs = minimal_cone_coeffs(fan, y).expect("validated fan is complete");
        for t in &torsion {
            out.push(BoxElement {
                rig: y.clone(),
                torsion: t.clone(),
                coeffs: coeffs.clone(),
            });
        }
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// `Box(Σ)` without the untwisted element.
pub fn twisted_sectors(fan: &ValidatedFan) -> Vec<BoxElement> {
    enumerate_box(fan)
        .into_iter()
        .filter(|e| !e.is_untwisted())
        .collect()
}

/// Position of a box element (given by its rigid and torsion parts) in the
/// twisted sector list, or `None` for the untwisted sector.
pub fn sector_index(sectors: &[BoxElement], e: &BoxElement) -> Option<usize> {
    sectors
        .binary_search_by(|s| s.sort_key().cmp(&e.sort_key()))
        .ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{int_vec, rat};

    fn vf(fan: crate::fan::StackyFan) -> ValidatedFan {
        ValidatedFan::new(fan).unwrap()
    }

    #[test]
    fn football_coefficients() {
        let f = vf(fixtures::football());
        let a = minimal_cone_coeffs(&f, &int_vec(&[5])).unwrap();
        assert_eq!(a, ACoeffs::from([(0, rat(5, 1))]));
        let a = minimal_cone_coeffs(&f, &int_vec(&[-3])).unwrap();
        assert_eq!(a, ACoeffs::from([(1, rat(3, 2))]));
        assert!(minimal_cone_coeffs(&f, &int_vec(&[0])).unwrap().is_empty());
        assert!(minimal_cone_coeffs(&f, &int_vec(&[0, 0])).is_err());
    }

    #[test]
    fn q_examples() {
        let f = vf(fixtures::football());
        let g = f.group().clone();
        let e = q_reduce(&f, &NElement::from_i64(&g, &[-3], &[]).unwrap()).unwrap();
        assert_eq!(e.rig, int_vec(&[-1]));
        assert_eq!(e.coeffs, ACoeffs::from([(1, rat(1, 2))]));

        let e = q_reduce(&f, &NElement::from_i64(&g, &[5], &[]).unwrap()).unwrap();
        assert!(e.is_untwisted());
        assert!(e.coeffs.is_empty());

        let f = vf(fixtures::gerby_p1());
        let g = f.group().clone();
        let e = q_reduce(&f, &NElement::from_i64(&g, &[0], &[1]).unwrap()).unwrap();
        assert_eq!(e.rig, int_vec(&[0]));
        assert_eq!(e.torsion, vec![1]);
        assert!(e.coeffs.is_empty());
    }

    #[test]
    fn p2_box_is_trivial() {
        let f = vf(fixtures::p2());
        let b = enumerate_box(&f);
        assert_eq!(b.len(), 1);
        assert!(b[0].is_untwisted());
        assert!(twisted_sectors(&f).is_empty());
    }

    #[test]
    fn football_box() {
        let f = vf(fixtures::football());
        let rig: Vec<IntVector> = enumerate_box(&f).into_iter().map(|e| e.rig).collect();
        assert_eq!(rig, vec![int_vec(&[-1]), int_vec(&[0])]);
        let s = twisted_sectors(&f);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].rig, int_vec(&[-1]));
        assert_eq!(s[0].coeffs, ACoeffs::from([(1, rat(1, 2))]));
    }

    #[test]
    fn gerby_box_crosses_torsion() {
        let f = vf(fixtures::gerby_p1());
        let b = enumerate_box(&f);
        assert_eq!(b.len(), 2);
        let s = twisted_sectors(&f);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].rig, int_vec(&[0]));
        assert_eq!(s[0].torsion, vec![1]);
        assert!(s[0].coeffs.is_empty());
    }

    #[test]
    fn stretched_p2_dedups_shared_ray_point() {
        let f = vf(fixtures::p2_stretched());
        assert_eq!(parallelepiped_points(&f, 0).len(), 2);
        assert_eq!(parallelepiped_points(&f, 2).len(), 2);
        let s = twisted_sectors(&f);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].rig, int_vec(&[1, 0]));
        assert_eq!(s[0].coeffs, ACoeffs::from([(0, rat(1, 2))]));
    }

    #[test]
    fn sector_lookup() {
        let f = vf(fixtures::p1xfootball());
        let s = twisted_sectors(&f);
        assert_eq!(sector_index(&s, &s[0]), Some(0));
        let zero = q_reduce(&f, &NElement::zero(f.group())).unwrap();
        assert_eq!(sector_index(&s, &zero), None);
    }
}
