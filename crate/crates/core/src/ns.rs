//! Orbifold Néron–Severi spaces and the spaces of orbifold curve classes.
//!
//! Coordinates of `U_orb` and `V_orb` list the rays in input order, then the
//! twisted sectors in canonical box order. The curve space
//! `N_{1,orb} = Ker(beta'_orb)` gets a fixed basis: the canonical basis of
//! `Ker(beta')` padded with zeros, followed by the sector unit vectors.
//! Divisor classes are stored as their values on that basis, so two vectors
//! of `U_orb` have the same class exactly when those values agree.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::boxes::BoxElement;
use crate::error::{Error, Result};
use crate::fan::ValidatedFan;
use crate::linalg::{
    dot, kernel_basis, rank, scale, solve_unique, to_rat, unit_vector, zero_vector, RatMatrix,
    RatVector, Scalar,
};

/// A class in `N^1_orb`, as its pairing values on the curve-space basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbDivisorClass(pub RatVector);

/// A class in `N_{1,orb}`, as coordinates in the curve-space basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbCurveClass(pub RatVector);

impl OrbDivisorClass {
    pub fn pairing_vector(&self) -> &[Scalar] {
        &self.0
    }
}

impl OrbCurveClass {
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub struct OrbSpaces {
    d: usize,
    n: usize,
    t: usize,
    c: Vec<BigInt>,
    alpha: RatMatrix,
    alpha_orb: RatMatrix,
    beta_prime: RatMatrix,
    beta_prime_orb: RatMatrix,
    ker_basis: Vec<RatVector>,
    curve_basis: Vec<RatVector>,
    curve_matrix: RatMatrix,
    ker_matrix: RatMatrix,
}

impl OrbSpaces {
    pub fn build(fan: &ValidatedFan, sectors: &[BoxElement]) -> Result<Self> {
        let d = fan.dim();
        let n = fan.num_rays();
        let t = sectors.len();
        let w: Vec<RatVector> = fan.rays().iter().map(|r| to_rat(&r.w)).collect();

        // alpha(m) = sum <w_rho, m> u_rho, so its rows are the w_rho
        let alpha = RatMatrix::from_rows(d, &w)?;
        let mut orb_rows = w.clone();
        orb_rows.extend((0..t).map(|_| zero_vector(d)));
        let alpha_orb = RatMatrix::from_rows(d, &orb_rows)?;
        let beta_prime = alpha.transpose();
        let beta_prime_orb = alpha_orb.transpose();

        if rank(&beta_prime) != d {
            return Err(Error::Invariant(format!(
                "beta' has rank {} < {d}",
                rank(&beta_prime)
            )));
        }
        let ker_basis = kernel_basis(&beta_prime);
        let mut curve_basis: Vec<RatVector> = ker_basis
            .iter()
            .map(|k| {
                let mut v = k.clone();
                v.extend((0..t).map(|_| Scalar::zero()));
                v
            })
            .collect();
        curve_basis.extend((0..t).map(|i| unit_vector(n + t, n + i)));
        if ker_basis.len() != n - d || curve_basis.len() != n - d + t {
            return Err(Error::Invariant(
                "curve space has the wrong dimension".into(),
            ));
        }
        let curve_matrix = RatMatrix::from_columns(n + t, &curve_basis)?;
        let ker_matrix = RatMatrix::from_columns(n, &ker_basis)?;

        Ok(OrbSpaces {
            d,
            n,
            t,
            c: fan.rays().iter().map(|r| r.c.clone()).collect(),
            alpha,
            alpha_orb,
            beta_prime,
            beta_prime_orb,
            ker_basis,
            curve_basis,
            curve_matrix,
            ker_matrix,
        })
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn num_rays(&self) -> usize {
        self.n
    }

    pub fn num_sectors(&self) -> usize {
        self.t
    }

    /// `dim U_orb = dim V_orb = n + t`.
    pub fn orb_dim(&self) -> usize {
        self.n + self.t
    }

    /// `dim N^1(X) = dim N_1(X) = n - d`.
    pub fn picard_number(&self) -> usize {
        self.ker_basis.len()
    }

    /// `dim N^1_orb = dim N_{1,orb} = n - d + t`.
    pub fn orb_picard_number(&self) -> usize {
        self.curve_basis.len()
    }

    pub fn alpha(&self) -> &RatMatrix {
        &self.alpha
    }

    pub fn alpha_orb(&self) -> &RatMatrix {
        &self.alpha_orb
    }

    pub fn beta_prime(&self) -> &RatMatrix {
        &self.beta_prime
    }

    pub fn beta_prime_orb(&self) -> &RatMatrix {
        &self.beta_prime_orb
    }

    /// Basis of `N_1(X) = Ker(beta') ⊂ V`.
    pub fn ker_basis(&self) -> &[RatVector] {
        &self.ker_basis
    }

    /// Basis of `N_{1,orb} = Ker(beta'_orb) ⊂ V_orb`.
    pub fn curve_basis(&self) -> &[RatVector] {
        &self.curve_basis
    }

    pub fn u_ray(&self, rho: usize) -> RatVector {
        unit_vector(self.orb_dim(), rho)
    }

    pub fn u_sector(&self, i: usize) -> RatVector {
        unit_vector(self.orb_dim(), self.n + i)
    }

    fn check_orb_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.orb_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.orb_dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `lambda_orb: U_orb -> N^1_orb`.
    pub fn lambda_orb(&self, u: &[Scalar]) -> Result<OrbDivisorClass> {
        self.check_orb_len(u)?;
        Ok(OrbDivisorClass(
            self.curve_basis.iter().map(|e| dot(u, e)).collect(),
        ))
    }

    /// Classical `lambda: U -> N^1(X)`, valued on the `Ker(beta')` basis.
    pub fn lambda(&self, u: &[Scalar]) -> Result<RatVector> {
        if u.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: u.len(),
            });
        }
        Ok(self.ker_basis.iter().map(|e| dot(u, e)).collect())
    }

    /// `alpha_orb(m)` for `m ∈ M_R` in the dual standard basis.
    pub fn alpha_orb_image(&self, m: &[Scalar]) -> Result<RatVector> {
        self.alpha_orb.mul_vec(m)
    }

    /// Coordinates of a vector of `V_orb` lying in `Ker(beta'_orb)`.
    pub fn curve_class(&self, v: &[Scalar]) -> Result<OrbCurveClass> {
        self.check_orb_len(v)?;
        // the curve basis is the padded kernel basis followed by the sector
        // unit vectors, so only the ray block needs solving
        let (rays, sectors) = v.split_at(self.n);
        let mut c = solve_unique(&self.ker_matrix, rays)?.ok_or(Error::NotInCurveSpace)?;
        c.extend_from_slice(sectors);
        Ok(OrbCurveClass(c))
    }

    /// The `V_orb` vector of a curve class.
    pub fn curve_vector(&self, c: &OrbCurveClass) -> Result<RatVector> {
        self.curve_matrix.mul_vec(&c.0)
    }

    /// `[E_rho] = lambda_orb(u_rho)` and `[ℰ_rho] = lambda_orb(u_rho / c_rho)`.
    pub fn divisor_class_of_ray(&self, rho: usize) -> Result<(OrbDivisorClass, OrbDivisorClass)> {
        if rho >= self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rho,
            });
        }
        let e = self.lambda_orb(&self.u_ray(rho))?;
        let inv = Scalar::new(1.into(), self.c[rho].clone());
        let script_e = OrbDivisorClass(scale(&e.0, &inv));
        Ok((e, script_e))
    }

    /// Checks exactness of `0 -> M -> U_orb -> N^1_orb -> 0` and the
    /// dimension counts; returns one `(name, passed)` entry per check.
    pub fn exactness_checks(&self) -> Vec<(&'static str, bool)> {
        let lambda_alpha_zero = (0..self.d).all(|j| {
            let col = self.alpha_orb.column(j);
            self.lambda_orb(&col)
                .map(|c| c.0.iter().all(Zero::is_zero))
                .unwrap_or(false)
        });
        let curves_in_kernel = self.curve_basis.iter().all(|e| {
            self.beta_prime_orb
                .mul_vec(e)
                .map(|v| v.iter().all(Zero::is_zero))
                .unwrap_or(false)
        });
        vec![
            ("lambda_orb . alpha_orb = 0", lambda_alpha_zero),
            ("rank alpha_orb = d", rank(&self.alpha_orb) == self.d),
            ("rank alpha = d", rank(&self.alpha) == self.d),
            ("curve basis lies in Ker(beta'_orb)", curves_in_kernel),
            ("dim N^1 = n - d", self.picard_number() == self.n - self.d),
            (
                "dim N^1_orb = n - d + t",
                self.orb_picard_number() == self.n - self.d + self.t,
            ),
            (
                "curve basis is independent",
                rank(&self.curve_matrix) == self.orb_picard_number(),
            ),
        ]
    }
}

/// Intersection pairing: the dot product of pairing values and coordinates.
pub fn pair(d: &OrbDivisorClass, c: &OrbCurveClass) -> Result<Scalar> {
    if d.0.len() != c.0.len() {
        return Err(Error::DimensionMismatch {
            expected: d.0.len(),
            found: c.0.len(),
        });
    }
    Ok(dot(&d.0, &c.0))
}
