//! Finitely generated convex polyhedral cones over the rationals.
//!
//! Dual cones are computed with the double description method: the dual of
//! `cone(g_1, ..., g_k)` is the intersection of the half-spaces
//! `{u : <u, g_i> >= 0}`, which are inserted one at a time into a
//! representation `lineality + cone(rays)` that starts as the whole space.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    dot, kernel_basis, primitive_direction, primitive_line, project_off, rank_of, row_space_basis,
    to_int, unit_vector, IntVector, RatMatrix, RatVector, Scalar,
};

/// A convex cone given by generators, with a lazily computed inequality
/// description.
///
/// Generators are nonzero primitive integer vectors, deduplicated and sorted
/// lexicographically. They may be redundant; [`Cone::canonical`] removes
/// redundancy.
pub struct Cone {
    dim: usize,
    generators: Vec<RatVector>,
    inequalities: OnceLock<Vec<RatVector>>,
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        Cone {
            dim: self.dim,
            generators: self.generators.clone(),
            inequalities: self.inequalities.clone(),
        }
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let c: Vec<String> = g.iter().map(ToString::to_string).collect();
                format!("({})", c.join(","))
            })
            .collect();
        write!(f, "Cone[{}]{{{}}}", self.dim, gens.join(", "))
    }
}

impl Cone {
    pub fn new(dim: usize, generators: impl IntoIterator<Item = RatVector>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            if let Some(p) = primitive_direction(&g) {
                gens.push(p);
            }
        }
        gens.sort();
        gens.dedup();
        Ok(Cone {
            dim,
            generators: gens,
            inequalities: OnceLock::new(),
        })
    }

    pub fn zero(dim: usize) -> Self {
        Cone {
            dim,
            generators: Vec::new(),
            inequalities: OnceLock::new(),
        }
    }

    pub fn full_space(dim: usize) -> Self {
        let gens = (0..dim).flat_map(|i| {
            let e = unit_vector(dim, i);
            let minus: RatVector = e.iter().map(|x| -x.clone()).collect();
            [e, minus]
        });
        Cone::new(dim, gens).expect("unit vectors have the ambient dimension")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[RatVector] {
        &self.generators
    }

    /// Normals `h` with `C = {x : <h, x> >= 0 for all h}`. Equations of the
    /// linear span appear as pairs `h, -h`. Computed once and cached.
    pub fn inequalities(&self) -> &[RatVector] {
        self.inequalities
            .get_or_init(|| dual_generators(self.dim, &self.generators))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self.inequalities().iter().all(|h| !dot(h, v).is_negative()))
    }

    /// The dual cone. Its inequalities are this cone's generators, so the
    /// pair is reused rather than recomputed.
    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            generators: self.inequalities().to_vec(),
            inequalities: OnceLock::from(self.generators.clone()),
        }
    }

    /// Same cone with redundant generators removed and the lineality space
    /// written in a canonical basis.
    ///
    /// For a pointed cone a generator is extremal exactly when no other
    /// generator is tight on a strictly larger set of inequalities, which
    /// only needs the incidence between generators and inequalities.
    pub fn canonical(&self) -> Cone {
        let ineq = self.inequalities();
        let generators = if self.is_pointed() {
            let tight = incidence(ineq, &self.generators);
            self.generators
                .iter()
                .zip(&tight)
                .filter(|(_, t)| !tight.iter().any(|o| *t != o && t.is_subset(o)))
                .map(|(g, _)| g.clone())
                .collect()
        } else {
            dual_generators(self.dim, ineq)
        };
        Cone {
            dim: self.dim,
            generators,
            inequalities: OnceLock::from(ineq.to_vec()),
        }
    }

    /// A cone from both descriptions at once; the caller guarantees that
    /// `inequalities` cut out exactly `cone(generators)`.
    pub(crate) fn with_inequalities(
        dim: usize,
        generators: Vec<RatVector>,
        inequalities: Vec<RatVector>,
    ) -> Result<Self> {
        let mut c = Cone::new(dim, generators)?;
        let ineq = Cone::new(dim, inequalities)?.generators;
        c.inequalities = OnceLock::from(ineq);
        Ok(c)
    }

    /// Basis of the lineality space `C ∩ -C`.
    pub fn lineality_space(&self) -> Vec<RatVector> {
        let all = RatMatrix::from_rows(self.dim, self.inequalities()).expect("row length");
        kernel_basis(&all)
    }

    pub fn is_pointed(&self) -> bool {
        rank_of(self.dim, self.inequalities()) == self.dim
    }

    /// Extremality of a vector `g` of a pointed cone: the inequalities tight
    /// at `g` must have rank `dim - 1`.
    pub fn is_extremal(&self, g: &[Scalar]) -> Result<bool> {
        if !self.contains(g)? || g.iter().all(Zero::is_zero) {
            return Ok(false);
        }
        let tight: Vec<RatVector> = self
            .inequalities()
            .iter()
            .filter(|h| dot(h, g).is_zero())
            .cloned()
            .collect();
        Ok(rank_of(self.dim, &tight) + 1 == self.dim)
    }

    /// Dimension of the linear span of the cone.
    pub fn span_dim(&self) -> usize {
        rank_of(self.dim, &self.generators)
    }
}

pub fn dual_cone(c: &Cone) -> Cone {
    c.dual()
}

pub fn contains(c: &Cone, v: &[Scalar]) -> Result<bool> {
    c.contains(v)
}

/// Mutual containment of generators.
pub fn cone_equal(a: &Cone, b: &Cone) -> bool {
    a.dim == b.dim
        && a.generators
            .iter()
            .all(|g| b.contains(g).expect("same dimension"))
        && b.generators
            .iter()
            .all(|g| a.contains(g).expect("same dimension"))
}

/// A generator of one cone lying outside the other, if the cones differ.
pub fn separating_generator(a: &Cone, b: &Cone) -> Option<RatVector> {
    a.generators
        .iter()
        .find(|g| !b.contains(g).unwrap_or(false))
        .or_else(|| {
            b.generators
                .iter()
                .find(|g| !a.contains(g).unwrap_or(false))
        })
        .cloned()
}

/// `C ∩ {x : <e, x> = 0 for every e in equations}`.
pub fn intersect_with_subspace(c: &Cone, equations: &[RatVector]) -> Result<Cone> {
    for e in equations {
        if e.len() != c.dim {
            return Err(Error::DimensionMismatch {
                expected: c.dim,
                found: e.len(),
            });
        }
    }
    if equations.is_empty() {
        return Ok(c.clone());
    }
    let mut halfspaces = c.inequalities().to_vec();
    for e in equations {
        halfspaces.push(e.clone());
        halfspaces.push(e.iter().map(|x| -x.clone()).collect());
    }
    Ok(Cone::new(c.dim, halfspaces)?.dual())
}

/// A vector as small integers, when every entry is an integer of absolute
/// value below `2^40` (so dot products of length below `2^40` fit `i128`).
fn small_ints(v: &[Scalar]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                x.numer().to_i64().filter(|n| n.unsigned_abs() < 1 << 40)
            } else {
                None
            }
        })
        .collect()
}

/// For each vector, the set of inequalities vanishing at it.
fn incidence(inequalities: &[RatVector], vectors: &[RatVector]) -> Vec<Bits> {
    let fast_h: Option<Vec<Vec<i64>>> = inequalities.iter().map(|h| small_ints(h)).collect();
    vectors
        .iter()
        .map(|v| {
            let mut out = Bits::with_capacity(inequalities.len());
            match (&fast_h, small_ints(v)) {
                (Some(hs), Some(fv)) => {
                    for (i, h) in hs.iter().enumerate() {
                        let s: i128 = h
                            .iter()
                            .zip(&fv)
                            .map(|(a, b)| i128::from(*a) * i128::from(*b))
                            .sum();
                        if s == 0 {
                            out.set(i);
                        }
                    }
                }
                _ => {
                    for (i, h) in inequalities.iter().enumerate() {
                        if dot(h, v).is_zero() {
                            out.set(i);
                        }
                    }
                }
            }
            out
        })
        .collect()
}

/// Small fixed-width bitset over inserted constraint indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn with_capacity(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &Bits) -> Bits {
        Bits(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a & b)
                .collect(),
        )
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.0.get(i).copied().unwrap_or(0) == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Exact integer arithmetic for the double description loop. The `i64`
/// instance reports overflow as `None`, and the whole computation is then
/// repeated over `BigInt`.
trait DdInt: Clone + Ord + Sized {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn zero() -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl DdInt for i64 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn zero() -> Self {
        0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl DdInt for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

fn int_dot<T: DdInt>(a: &[T], b: &[T]) -> Option<T> {
    a.iter()
        .zip(b)
        .try_fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)?))
}

/// `s * a + t * b`, divided by the gcd of its entries; `None` on overflow.
fn int_combine<T: DdInt>(s: &T, a: &[T], t: &T, b: &[T]) -> Option<Vec<T>> {
    let v = a
        .iter()
        .zip(b)
        .map(|(x, y)| s.mul(x)?.add(&t.mul(y)?))
        .collect::<Option<Vec<T>>>()?;
    Some(int_primitive(v))
}

fn int_primitive<T: DdInt>(mut v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() {
        for x in &mut v {
            *x = x.div_exact(&g);
        }
    }
    v
}

struct Ray<T> {
    v: Vec<T>,
    tight: Bits,
}

/// Double description state for `lineality + cone(rays)`; every inserted
/// constraint vanishes on the lineality space.
struct DoubleDescription<T> {
    dim: usize,
    lineality: Vec<Vec<T>>,
    rays: Vec<Ray<T>>,
    inserted: usize,
}

impl<T: DdInt> DoubleDescription<T> {
    fn whole_space(dim: usize) -> Option<Self> {
        let one = T::from_big(&BigInt::from(1))?;
        let lineality = (0..dim)
            .map(|i| {
                let mut e = vec![T::zero(); dim];
                e[i] = one.clone();
                e
            })
            .collect();
        Some(DoubleDescription {
            dim,
            lineality,
            rays: Vec::new(),
            inserted: 0,
        })
    }

    fn insert(&mut self, h: &[T]) -> Option<()> {
        let idx = self.inserted;
        self.inserted += 1;

        let lin_values = self
            .lineality
            .iter()
            .map(|l| int_dot(h, l))
            .collect::<Option<Vec<T>>>()?;
        if let Some(pos) = lin_values.iter().position(|x| !x.is_zero()) {
            let mut l0 = self.lineality.swap_remove(pos);
            let mut s = lin_values[pos].clone();
            if s.is_negative() {
                l0 = l0.iter().map(T::neg).collect::<Option<_>>()?;
                s = s.neg()?;
            }
            let mut rest = lin_values;
            rest.swap_remove(pos);
            // each lineality vector and ray is moved onto the hyperplane by
            // subtracting a multiple of l0
            for (l, f) in self.lineality.iter_mut().zip(&rest) {
                if !f.is_zero() {
                    *l = int_combine(&s, l, &f.neg()?, &l0)?;
                }
            }
            for r in &mut self.rays {
                let f = int_dot(h, &r.v)?;
                if !f.is_zero() {
                    r.v = int_combine(&s, &r.v, &f.neg()?, &l0)?;
                }
                r.tight.set(idx);
            }
            let mut tight = Bits::with_capacity(idx + 1);
            for j in 0..idx {
                tight.set(j);
            }
            self.rays.push(Ray {
                v: int_primitive(l0),
                tight,
            });
            return Some(());
        }

        let values = self
            .rays
            .iter()
            .map(|r| int_dot(h, &r.v))
            .collect::<Option<Vec<T>>>()?;
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in self.rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.set(idx);
                }
            }
            return Some(());
        }

        let positive = |v: &T| !v.is_negative() && !v.is_zero();
        let plus: Vec<usize> = (0..self.rays.len())
            .filter(|&i| positive(&values[i]))
            .collect();
        let minus: Vec<usize> = (0..self.rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let pointed_dim = self.dim - self.lineality.len();

        let mut fresh = Vec::new();
        for &p in &plus {
            for &m in &minus {
                let common = self.rays[p].tight.intersect(&self.rays[m].tight);
                if pointed_dim >= 2 && common.count() + 2 < pointed_dim {
                    continue;
                }
                if !self.adjacent(&common, p, m) {
                    continue;
                }
                let v = int_combine(
                    &values[p],
                    &self.rays[m].v,
                    &values[m].neg()?,
                    &self.rays[p].v,
                )?;
                let mut tight = common;
                tight.set(idx);
                fresh.push(Ray { v, tight });
            }
        }

        let old = std::mem::take(&mut self.rays);
        for (i, mut r) in old.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.tight.set(idx);
            }
            self.rays.push(r);
        }
        self.rays.extend(fresh);
        Some(())
    }

    /// Combinatorial adjacency: no third ray is tight on every constraint
    /// the pair shares.
    fn adjacent(&self, common: &Bits, p: usize, m: usize) -> bool {
        !self
            .rays
            .iter()
            .enumerate()
            .any(|(k, r)| k != p && k != m && common.is_subset(&r.tight))
    }

    /// Canonical generators: rays projected off the lineality space, plus
    /// `±` a reduced basis of the lineality space.
    fn into_generators(self) -> Vec<RatVector> {
        let to_rat =
            |v: &[T]| -> RatVector { v.iter().map(|x| Scalar::from_integer(x.to_big())).collect() };
        let lineality: Vec<RatVector> = self.lineality.iter().map(|l| to_rat(l)).collect();
        let lin = row_space_basis(self.dim, &lineality);
        let mut out: Vec<RatVector> = if lin.is_empty() {
            // rays are kept primitive throughout
            self.rays.iter().map(|r| to_rat(&r.v)).collect()
        } else {
            self.rays
                .iter()
                .filter_map(|r| primitive_direction(&project_off(&to_rat(&r.v), &lin)))
                .collect()
        };
        for l in &lin {
            let l = primitive_line(l).expect("basis vector is nonzero");
            out.push(l.iter().map(|x| -x.clone()).collect());
            out.push(l);
        }
        out.sort();
        out.dedup();
        out
    }
}

fn run_dd<T: DdInt>(dim: usize, constraints: &[IntVector]) -> Option<Vec<RatVector>> {
    let mut dd = DoubleDescription::<T>::whole_space(dim)?;
    for c in constraints {
        let h = c.iter().map(T::from_big).collect::<Option<Vec<T>>>()?;
        dd.insert(&h)?;
    }
    Some(dd.into_generators())
}

/// Generators of `{u : <u, g> >= 0 for all g in generators}`.
fn dual_generators(dim: usize, generators: &[RatVector]) -> Vec<RatVector> {
    let constraints: Vec<IntVector> = generators
        .iter()
        .filter_map(|g| primitive_direction(g))
        .map(|g| to_int(&g).expect("primitive vectors are integral"))
        .collect();
    run_dd::<i64>(dim, &constraints)
        .unwrap_or_else(|| run_dd::<BigInt>(dim, &constraints).expect("BigInt cannot overflow"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_vec;

    fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
        Cone::new(dim, gens.iter().map(|g| rat_vec(g))).unwrap()
    }

    #[test]
    fn quadrant_is_self_dual() {
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(q.dual().generators(), &[rat_vec(&[0, 1]), rat_vec(&[1, 0])]);
    }

    #[test]
    fn dual_of_origin_is_everything() {
        let z = Cone::zero(2);
        let d = z.dual();
        assert!(cone_equal(&d, &Cone::full_space(2)));
        assert_eq!(d.generators().len(), 4);
    }

    #[test]
    fn dual_of_everything_is_origin() {
        assert!(Cone::full_space(3).dual().generators().is_empty());
    }

    #[test]
    fn two_dimensional_dual() {
        let c = cone(2, &[&[1, 0], &[1, 1]]);
        let d = c.dual();
        assert_eq!(d.generators(), &[rat_vec(&[0, 1]), rat_vec(&[1, -1])]);
    }

    #[test]
    fn membership() {
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(q.contains(&rat_vec(&[2, 3])).unwrap());
        assert!(!q.contains(&rat_vec(&[-1, 0])).unwrap());
        let c = cone(2, &[&[1, 0], &[1, 1]]);
        assert!(!c.contains(&rat_vec(&[1, -1])).unwrap());
        assert!(matches!(
            c.contains(&rat_vec(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn subspace_intersections() {
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        let diag = intersect_with_subspace(&q, &[rat_vec(&[1, -1])]).unwrap();
        assert_eq!(diag.generators(), &[rat_vec(&[1, 1])]);

        let c = cone(3, &[&[1, 0, 0], &[0, 2, 0], &[0, 1, 1]]);
        let r = intersect_with_subspace(&c, &[rat_vec(&[1, -1, 0])]).unwrap();
        assert!(cone_equal(&r, &cone(3, &[&[2, 2, 0], &[1, 1, 1]])));
        assert_eq!(r.generators(), &[rat_vec(&[1, 1, 0]), rat_vec(&[1, 1, 1])]);

        let same = intersect_with_subspace(&c, &[]).unwrap();
        assert!(cone_equal(&same, &c));
    }

    #[test]
    fn zero_dimensional_ambient_space() {
        let c = Cone::zero(0);
        let d = c.dual();
        assert_eq!(d.dim(), 0);
        assert!(d.generators().is_empty());
        assert!(d.contains(&[]).unwrap());
    }

    #[test]
    fn redundant_generators_removed_by_canonical() {
        let c = cone(2, &[&[1, 0], &[0, 1], &[1, 1], &[2, 1]]);
        assert_eq!(c.generators().len(), 4);
        let k = c.canonical();
        assert_eq!(k.generators(), &[rat_vec(&[0, 1]), rat_vec(&[1, 0])]);
        assert!(c.is_extremal(&rat_vec(&[1, 0])).unwrap());
        assert!(!c.is_extremal(&rat_vec(&[1, 1])).unwrap());
    }

    #[test]
    fn half_plane_has_lineality() {
        let c = cone(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(c.lineality_space(), vec![rat_vec(&[1, 0])]);
        let d = c.dual();
        assert_eq!(d.generators(), &[rat_vec(&[0, 1])]);
        assert!(!c.is_pointed());
    }

    #[test]
    fn lower_dimensional_cone_has_equations() {
        let c = cone(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(c.contains(&rat_vec(&[3, 5, 0])).unwrap());
        assert!(!c.contains(&rat_vec(&[3, 5, 1])).unwrap());
        assert_eq!(c.span_dim(), 2);
        assert!(c.is_extremal(&rat_vec(&[1, 0, 0])).unwrap());
        assert!(!c.is_extremal(&rat_vec(&[1, 1, 0])).unwrap());
    }
}
