//! The `Ξ` system, orbifold classes of one-parameter subgroups, the movable
//! cone of orbifold curve classes and the orbifold pseudo-effective cone.
//!
//! With `b_rho = c_rho v_rho`, the vectors
//!
//! ```text
//! Ξ_rho = b_rho                          Ξ*_rho = u_rho / c_rho - sum_Y a_rho(Y) u_Y
//! Ξ_Y   = v_Y + sum_rho a_rho(Y) b_rho   Ξ*_Y   = u_Y
//! ```
//!
//! are dual bases of `V_orb` and `U_orb`. The movable cone is
//! `cone(Ξ) ∩ Ker(beta'_orb)`, and the pseudo-effective cone is generated by
//! the images `lambda_orb(Ξ*_η)`. [`verify_duality`] checks the latter
//! against the dual of the former computed by the generic cone engine.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::boxes::{minimal_cone_coeffs, q_reduce, sector_index, twisted_sectors, BoxElement};
use crate::cone::{cone_equal, intersect_with_subspace, separating_generator, Cone};
use crate::error::{Error, Result};
use crate::fan::{NElement, StackyFan, ValidatedFan};
use crate::linalg::{axpy, det, dot, scale, RatMatrix, RatVector, Scalar};
use crate::ns::{OrbCurveClass, OrbDivisorClass, OrbSpaces};

/// Index of `Σ(1) ∪ π_0^*(J_0 X)`: rays first, then twisted sectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Eta {
    Ray(usize),
    Sector(usize),
}

impl fmt::Display for Eta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eta::Ray(i) => write!(f, "ρ{i}"),
            Eta::Sector(i) => write!(f, "Y{i}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct XiSystem {
    labels: Vec<Eta>,
    b_vectors: Vec<RatVector>,
    xi: Vec<RatVector>,
    xi_star: Vec<RatVector>,
}

impl XiSystem {
    pub fn build(fan: &ValidatedFan, sectors: &[BoxElement], spaces: &OrbSpaces) -> Result<Self> {
        let n = fan.num_rays();
        let t = sectors.len();
        let dim = spaces.orb_dim();
        let c: Vec<Scalar> = fan
            .rays()
            .iter()
            .map(|r| Scalar::from_integer(r.c.clone()))
            .collect();

        let b_vectors: Vec<RatVector> = (0..n)
            .map(|rho| scale(&spaces.u_ray(rho), &c[rho]))
            .collect();

        let mut labels: Vec<Eta> = (0..n).map(Eta::Ray).collect();
        labels.extend((0..t).map(Eta::Sector));

        let mut xi = b_vectors.clone();
        for (i, y) in sectors.iter().enumerate() {
            let v = y.coeffs.iter().fold(spaces.u_sector(i), |acc, (&rho, a)| {
                axpy(&acc, a, &b_vectors[rho])
            });
            xi.push(v);
        }

        let mut xi_star: Vec<RatVector> = (0..n)
            .map(|rho| {
                let mut v = scale(&spaces.u_ray(rho), &c[rho].recip());
                for (i, y) in sectors.iter().enumerate() {
                    v[n + i] -= y.coeff(rho);
                }
                v
            })
            .collect();
        xi_star.extend((0..t).map(|i| spaces.u_sector(i)));

        let sys = XiSystem {
            labels,
            b_vectors,
            xi,
            xi_star,
        };
        for (i, s) in sys.xi_star.iter().enumerate() {
            for (j, x) in sys.xi.iter().enumerate() {
                let expected = if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                if dot(s, x) != expected {
                    return Err(Error::Invariant(format!(
                        "<Ξ*_{}, Ξ_{}> = {}",
                        sys.labels[i],
                        sys.labels[j],
                        dot(s, x)
                    )));
                }
            }
        }
        if det(&RatMatrix::from_columns(dim, &sys.xi)?)?.is_zero() {
            return Err(Error::Invariant(
                "Ξ vectors are not a basis of V_orb".into(),
            ));
        }
        Ok(sys)
    }

    pub fn labels(&self) -> &[Eta] {
        &self.labels
    }

    /// `b_rho = c_rho v_rho`.
    pub fn b_vectors(&self) -> &[RatVector] {
        &self.b_vectors
    }

    pub fn xi(&self) -> &[RatVector] {
        &self.xi
    }

    pub fn xi_star(&self) -> &[RatVector] {
        &self.xi_star
    }

    pub fn index_of(&self, eta: Eta) -> usize {
        match eta {
            Eta::Ray(i) => i,
            Eta::Sector(i) => self.b_vectors.len() + i,
        }
    }

    pub fn xi_of(&self, eta: Eta) -> &RatVector {
        &self.xi[self.index_of(eta)]
    }

    /// The full matrix of pairings `<Ξ*_η, Ξ_η'>`.
    pub fn pairing_matrix(&self) -> Vec<Vec<Scalar>> {
        self.xi_star
            .iter()
            .map(|s| self.xi.iter().map(|x| dot(s, x)).collect())
            .collect()
    }
}

/// Orbifold class of the one-parameter subgroup attached to `b ∈ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePSClass {
    pub b: NElement,
    /// `sum_rho a_rho(b) b_rho + v_{q(b)}` in `V_orb`.
    pub class_vector: RatVector,
    pub sector: BoxElement,
    /// Index of `q(b)` among the twisted sectors; `None` when untwisted.
    pub sector_index: Option<usize>,
    /// `Ξ_{q(b)} + sum_rho floor(a_rho(b)) Ξ_rho`, zero entries omitted.
    pub decomposition: BTreeMap<Eta, Scalar>,
}

impl OnePSClass {
    /// Evaluates the decomposition against the `Ξ` vectors.
    pub fn reconstruct(&self, xi: &XiSystem) -> RatVector {
        self.decomposition.iter().fold(
            vec![Scalar::zero(); self.class_vector.len()],
            |acc, (&eta, k)| axpy(&acc, k, xi.xi_of(eta)),
        )
    }
}

pub fn one_ps_class(
    fan: &ValidatedFan,
    sectors: &[BoxElement],
    xi: &XiSystem,
    b: &NElement,
) -> Result<OnePSClass> {
    let a = minimal_cone_coeffs(fan, &b.free)?;
    let sector = q_reduce(fan, b)?;
    let idx = sector_index(sectors, &sector);
    if idx.is_none() && !sector.is_untwisted() {
        return Err(Error::Invariant(format!(
            "q(b) = {sector} is not an enumerated sector"
        )));
    }
    let dim = fan.num_rays() + sectors.len();
    let mut class_vector = vec![Scalar::zero(); dim];
    let mut decomposition = BTreeMap::new();
    for (&rho, x) in &a {
        class_vector = axpy(&class_vector, x, &xi.b_vectors()[rho]);
        let floor = x.floor();
        if floor.is_positive() {
            decomposition.insert(Eta::Ray(rho), floor);
        }
    }
    if let Some(i) = idx {
        class_vector[fan.num_rays() + i] += Scalar::one();
        decomposition.insert(Eta::Sector(i), Scalar::one());
    }
    Ok(OnePSClass {
        b: b.clone(),
        class_vector,
        sector,
        sector_index: idx,
        decomposition,
    })
}

/// Images `lambda_orb(Ξ*_η)` in canonical order (rays, then sectors): for a
/// ray `[ℰ_rho] - sum_Y a_rho(Y) u_Y`, for a sector `u_Y`.
pub fn peff_generators(xi: &XiSystem, spaces: &OrbSpaces) -> Result<Vec<OrbDivisorClass>> {
    xi.xi_star().iter().map(|s| spaces.lambda_orb(s)).collect()
}

pub fn peff_cone(xi: &XiSystem, spaces: &OrbSpaces) -> Result<Cone> {
    let gens = peff_generators(xi, spaces)?;
    Ok(Cone::new(spaces.orb_picard_number(), gens.into_iter().map(|g| g.0))?.canonical())
}

/// The movable cone in curve-basis coordinates. `cone(Ξ)` is simplicial with
/// inequalities `<Ξ*_η, ·> >= 0`; restricted to the curve space these become
/// the pairing vectors of `lambda_orb(Ξ*_η)`, and the cone they cut out is
/// their dual.
pub fn mov_cone(xi: &XiSystem, spaces: &OrbSpaces) -> Result<Cone> {
    let restricted = peff_generators(xi, spaces)?;
    Ok(Cone::new(
        spaces.orb_picard_number(),
        restricted.into_iter().map(|g| g.0),
    )?
    .dual())
}

/// The movable cone by intersecting `cone(Ξ) ⊂ V_orb` with `Ker(beta'_orb)`
/// in the generic engine, then changing to curve-basis coordinates.
pub fn mov_cone_by_intersection(xi: &XiSystem, spaces: &OrbSpaces) -> Result<Cone> {
    let big = Cone::new(spaces.orb_dim(), xi.xi().iter().cloned())?;
    let equations: Vec<RatVector> = spaces
        .beta_prime_orb()
        .rows()
        .map(<[Scalar]>::to_vec)
        .collect();
    let meet = intersect_with_subspace(&big, &equations)?;
    let gens = meet
        .generators()
        .iter()
        .map(|v| spaces.curve_class(v).map(|c| c.0))
        .collect::<Result<Vec<_>>>()?;
    // the intersection's generators are already extremal, and its half-spaces
    // restrict to the curve space by pairing with the curve basis
    let ineq = meet
        .inequalities()
        .iter()
        .map(|h| spaces.lambda_orb(h).map(|d| d.0))
        .collect::<Result<Vec<_>>>()?;
    Cone::with_inequalities(spaces.orb_picard_number(), gens, ineq)
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub name: String,
    /// Movable cone from the `Ξ*` shortcut.
    pub mov: Vec<RatVector>,
    /// Movable cone from the generic subspace intersection.
    pub mov_by_intersection: Vec<RatVector>,
    /// Generic dual of the movable cone.
    pub dual_of_mov: Vec<RatVector>,
    /// `lambda_orb(Ξ*_η)` for every η, as listed.
    pub corollary_generators: Vec<RatVector>,
    /// Extremal rays of the cone on `corollary_generators`.
    pub corollary_extremal: Vec<RatVector>,
    pub mov_paths_agree: bool,
    pub equal: bool,
    /// A generator of one side lying outside the other, when they differ.
    pub separating: Option<RatVector>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mov_paths_agree && self.equal
    }
}

/// All pipeline stages for one stacky fan.
#[derive(Clone, Debug)]
pub struct Orbifold {
    pub fan: ValidatedFan,
    pub sectors: Vec<BoxElement>,
    pub spaces: OrbSpaces,
    pub xi: XiSystem,
}

impl Orbifold {
    pub fn new(fan: StackyFan) -> Result<Self> {
        let fan = ValidatedFan::new(fan)?;
        let sectors = twisted_sectors(&fan);
        let spaces = OrbSpaces::build(&fan, &sectors)?;
        let xi = XiSystem::build(&fan, &sectors, &spaces)?;
        Ok(Orbifold {
            fan,
            sectors,
            spaces,
            xi,
        })
    }

    pub fn name(&self) -> &str {
        &self.fan.fan().name
    }

    pub fn one_ps_class(&self, b: &NElement) -> Result<OnePSClass> {
        one_ps_class(&self.fan, &self.sectors, &self.xi, b)
    }

    pub fn mov_cone(&self) -> Result<Cone> {
        mov_cone(&self.xi, &self.spaces)
    }

    pub fn peff_generators(&self) -> Result<Vec<OrbDivisorClass>> {
        peff_generators(&self.xi, &self.spaces)
    }

    pub fn peff_cone(&self) -> Result<Cone> {
        peff_cone(&self.xi, &self.spaces)
    }

    /// Orbifold class of `Ξ_η` in curve-basis coordinates; `None` unless
    /// `Ξ_η` lies in the curve space.
    pub fn xi_curve_class(&self, eta: Eta) -> Option<OrbCurveClass> {
        self.spaces.curve_class(self.xi.xi_of(eta)).ok()
    }

    pub fn verify_duality(&self) -> Result<VerificationReport> {
        let corollary: Vec<RatVector> = self.peff_generators()?.into_iter().map(|g| g.0).collect();
        let corollary_cone = Cone::new(self.spaces.orb_picard_number(), corollary.clone())?;
        let mov = corollary_cone.dual();
        let by_intersection = mov_cone_by_intersection(&self.xi, &self.spaces)?;
        // both sides are lists of primitive extremal rays, so agreement is
        // usually visible without any containment test
        let mov_paths_agree =
            mov.generators() == by_intersection.generators() || cone_equal(&mov, &by_intersection);
        let dual_of_mov = by_intersection.dual().canonical();
        let corollary_extremal = corollary_cone.canonical();
        let equal = dual_of_mov.generators() == corollary_extremal.generators()
            || cone_equal(&dual_of_mov, &corollary_cone);
        let separating = if equal && mov_paths_agree {
            None
        } else {
            separating_generator(&dual_of_mov, &corollary_cone)
                .or_else(|| separating_generator(&mov, &by_intersection))
        };
        Ok(VerificationReport {
            name: self.name().to_string(),
            mov: mov.generators().to_vec(),
            mov_by_intersection: by_intersection.generators().to_vec(),
            mov_paths_agree,
            dual_of_mov: dual_of_mov.generators().to_vec(),
            corollary_extremal: corollary_extremal.generators().to_vec(),
            corollary_generators: corollary,
            separating,
            equal,
        })
    }

    /// Dropping the sector coordinates of the pseudo-effective generators
    /// gives the cone spanned by the classical `[E_rho]` in `N^1(X)`.
    pub fn projection_consistent(&self) -> Result<bool> {
        let k = self.spaces.picard_number();
        let projected = self
            .peff_generators()?
            .into_iter()
            .map(|g| g.0[..k].to_vec());
        let classical = (0..self.fan.num_rays())
            .map(|rho| {
                let mut u = vec![Scalar::zero(); self.fan.num_rays()];
                u[rho] = Scalar::one();
                self.spaces.lambda(&u)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(cone_equal(
            &Cone::new(k, projected)?,
            &Cone::new(k, classical)?,
        ))
    }
}

pub fn verify_duality(fan: &StackyFan) -> Result<VerificationReport> {
    Orbifold::new(fan.clone())?.verify_duality()
}
