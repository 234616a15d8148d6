//! Stacky fans: a complete simplicial fan in `N^rig ⊗ R` together with the
//! images `beta(v_rho)` of the ray generators in `N = Z^d ⊕ ∏ Z/l_i`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cone::{cone_equal, Cone};
use crate::error::{Error, Result};
use crate::linalg::{
    primitive, rank_of, solve_square, to_rat, IntVector, RatMatrix, RatVector, Scalar,
};

/// `N = Z^rank ⊕ Z/l_1 ⊕ ... ⊕ Z/l_s` with a fixed decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    pub rank: usize,
    pub torsion_orders: Vec<u64>,
}

impl AbelianGroupSpec {
    pub fn new(rank: usize, torsion_orders: Vec<u64>) -> Result<Self> {
        if let Some(l) = torsion_orders.iter().find(|&&l| l < 2) {
            return Err(Error::Malformed(format!(
                "torsion order {l} must be at least 2"
            )));
        }
        Ok(AbelianGroupSpec {
            rank,
            torsion_orders,
        })
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupSpec {
            rank,
            torsion_orders: Vec::new(),
        }
    }

    pub fn torsion_size(&self) -> u64 {
        self.torsion_orders.iter().product()
    }

    /// Reduces raw residues into `[0, l_i)`.
    pub fn normalize_torsion(&self, raw: &[i64]) -> Result<Vec<u64>> {
        if raw.len() != self.torsion_orders.len() {
            return Err(Error::Malformed(format!(
                "torsion part has {} entries, group has {} torsion factors",
                raw.len(),
                self.torsion_orders.len()
            )));
        }
        Ok(raw
            .iter()
            .zip(&self.torsion_orders)
            .map(|(&r, &l)| r.rem_euclid(l as i64) as u64)
            .collect())
    }

    /// All torsion elements in lexicographic order.
    pub fn torsion_elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &l in &self.torsion_orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..l).map(move |r| {
                        let mut p = prefix.clone();
                        p.push(r);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

/// An element of `N`, split into its free and torsion parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NElement {
    pub free: IntVector,
    pub torsion: Vec<u64>,
}

impl NElement {
    pub fn new(group: &AbelianGroupSpec, free: IntVector, torsion: &[i64]) -> Result<Self> {
        if free.len() != group.rank {
            return Err(Error::Malformed(format!(
                "free part has length {}, expected rank {}",
                free.len(),
                group.rank
            )));
        }
        Ok(NElement {
            free,
            torsion: group.normalize_torsion(torsion)?,
        })
    }

    pub fn from_i64(group: &AbelianGroupSpec, free: &[i64], torsion: &[i64]) -> Result<Self> {
        Self::new(
            group,
            free.iter().map(|&x| BigInt::from(x)).collect(),
            torsion,
        )
    }

    pub fn zero(group: &AbelianGroupSpec) -> Self {
        NElement {
            free: vec![BigInt::zero(); group.rank],
            torsion: vec![0; group.torsion_orders.len()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(|&r| r == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    pub name: String,
    pub group: AbelianGroupSpec,
    /// `beta(v_rho)` for each ray, in input order.
    pub rays: Vec<NElement>,
    /// Maximal cones as sorted ray-index lists.
    pub max_cones: Vec<Vec<usize>>,
}

impl StackyFan {
    /// Structural checks only (index ranges, lengths, residues); the
    /// geometric checks live in [`validate`].
    pub fn new(
        name: impl Into<String>,
        group: AbelianGroupSpec,
        rays: Vec<NElement>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.free.len() != group.rank {
                return Err(Error::Malformed(format!(
                    "ray {i}: free part has length {}, expected {}",
                    r.free.len(),
                    group.rank
                )));
            }
            if r.torsion.len() != group.torsion_orders.len()
                || r.torsion
                    .iter()
                    .zip(&group.torsion_orders)
                    .any(|(&x, &l)| x >= l)
            {
                return Err(Error::Malformed(format!(
                    "ray {i}: torsion residues out of range"
                )));
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (k, cone) in max_cones.into_iter().enumerate() {
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if set.len() != cone.len() {
                return Err(Error::Malformed(format!("cone {k}: repeated ray index")));
            }
            if let Some(&bad) = set.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::Malformed(format!(
                    "cone {k}: ray index {bad} out of range"
                )));
            }
            cones.push(set.into_iter().collect());
        }
        if cones.is_empty() {
            return Err(Error::Malformed("fan has no maximal cones".into()));
        }
        Ok(StackyFan {
            name: name.into(),
            group,
            rays,
            max_cones: cones,
        })
    }

    pub fn dim(&self) -> usize {
        self.group.rank
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }
}

/// Per-ray data derived from `beta`: `b_rig = c * w` with `w` primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayData {
    pub b_rig: IntVector,
    pub w: IntVector,
    pub c: BigInt,
    pub torsion: Vec<u64>,
}

pub fn ray_data(fan: &StackyFan) -> Result<Vec<RayData>> {
    fan.rays
        .iter()
        .map(|r| {
            let (w, c) = primitive(&r.free)?;
            Ok(RayData {
                b_rig: r.free.clone(),
                w,
                c,
                torsion: r.torsion.clone(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn failures(&self) -> String {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{tag} {}", c.name)?;
            } else {
                writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

pub const CHECK_NONZERO: &str = "nonzero-rays";
pub const CHECK_SIMPLICIAL: &str = "simplicial";
pub const CHECK_FACES: &str = "intersections-are-faces";
pub const CHECK_COMPLETE: &str = "complete";
pub const CHECK_COKERNEL: &str = "finite-cokernel";

fn cone_rays(fan: &StackyFan, cone: &[usize]) -> Vec<RatVector> {
    cone.iter().map(|&i| to_rat(&fan.rays[i].free)).collect()
}

/// Coefficients of `y` in the basis of rays of a full-dimensional simplicial
/// cone, or `None` if the cone is not full-dimensional.
fn coefficients_in(fan: &StackyFan, cone: &[usize], y: &[Scalar]) -> Option<RatVector> {
    if cone.len() != fan.dim() {
        return None;
    }
    let m = RatMatrix::from_columns(fan.dim(), &cone_rays(fan, cone)).ok()?;
    solve_square(&m, y).ok().flatten()
}

fn check_completeness(fan: &StackyFan, rays: Option<&[RayData]>) -> (bool, String) {
    let d = fan.dim();
    if let Some(k) = fan.max_cones.iter().position(|c| c.len() != d) {
        return (false, format!("cone {k} is not {d}-dimensional"));
    }
    let used: BTreeSet<usize> = fan.max_cones.iter().flatten().copied().collect();
    if let Some(r) = (0..fan.num_rays()).find(|r| !used.contains(r)) {
        return (false, format!("ray {r} lies in no maximal cone"));
    }

    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, cone) in fan.max_cones.iter().enumerate() {
        for skip in 0..cone.len() {
            let ridge: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &r)| r)
                .collect();
            ridges.entry(ridge).or_default().push(k);
        }
    }
    if let Some((ridge, owners)) = ridges.iter().find(|(_, o)| o.len() != 2) {
        return (
            false,
            format!(
                "ridge {:?} lies in {} maximal cones, expected 2",
                ridge,
                owners.len()
            ),
        );
    }

    let n = fan.max_cones.len();
    let mut adj = vec![Vec::new(); n];
    for owners in ridges.values() {
        adj[owners[0]].push(owners[1]);
        adj[owners[1]].push(owners[0]);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(k) = queue.pop_front() {
        for &j in &adj[k] {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return (false, format!("dual graph is disconnected at cone {k}"));
    }

    let Some(rays) = rays else {
        return (false, "ray data unavailable".into());
    };
    for (k, cone) in fan.max_cones.iter().enumerate() {
        let mut probe = vec![Scalar::zero(); d];
        for &r in cone {
            for (p, x) in probe.iter_mut().zip(&rays[r].w) {
                *p -= Scalar::from_integer(x.clone());
            }
        }
        let covered = fan.max_cones.iter().any(|c| {
            coefficients_in(fan, c, &probe).is_some_and(|a| a.iter().all(|x| !x.is_negative()))
        });
        if !covered {
            return (
                false,
                format!("-(sum of w over cone {k}) lies in no maximal cone"),
            );
        }
    }
    (true, String::new())
}

/// Runs every geometric check and reports each one.
///
/// The completeness check is a battery of necessary conditions (pure
/// dimension, each ridge in exactly two cones, connected dual graph, and a
/// probe direction per cone); it is not a certified covering test.
pub fn validate(fan: &StackyFan) -> ValidationReport {
    let d = fan.dim();
    let mut checks = Vec::new();

    let zero_rays: Vec<usize> = (0..fan.num_rays())
        .filter(|&i| fan.rays[i].free.iter().all(Zero::is_zero))
        .collect();
    checks.push(CheckResult {
        name: CHECK_NONZERO,
        passed: zero_rays.is_empty(),
        detail: if zero_rays.is_empty() {
            String::new()
        } else {
            format!("rays {zero_rays:?} have zero free part")
        },
    });
    let rays = zero_rays.is_empty().then(|| ray_data(fan).ok()).flatten();

    let degenerate: Vec<usize> = fan
        .max_cones
        .iter()
        .enumerate()
        .filter(|(_, c)| rank_of(d, &cone_rays(fan, c)) != c.len())
        .map(|(k, _)| k)
        .collect();
    let simplicial = degenerate.is_empty();
    checks.push(CheckResult {
        name: CHECK_SIMPLICIAL,
        passed: simplicial,
        detail: if simplicial {
            String::new()
        } else {
            format!("cones {degenerate:?} have linearly dependent rays")
        },
    });

    let faces = if !simplicial {
        (false, "skipped: fan is not simplicial".to_string())
    } else {
        check_faces(fan)
    };
    checks.push(CheckResult {
        name: CHECK_FACES,
        passed: faces.0,
        detail: faces.1,
    });

    let complete = check_completeness(fan, rays.as_deref());
    checks.push(CheckResult {
        name: CHECK_COMPLETE,
        passed: complete.0,
        detail: complete.1,
    });

    let all: Vec<RatVector> = fan.rays.iter().map(|r| to_rat(&r.free)).collect();
    let r = rank_of(d, &all);
    checks.push(CheckResult {
        name: CHECK_COKERNEL,
        passed: r == d,
        detail: if r == d {
            String::new()
        } else {
            format!("rays span rank {r}, expected {d}")
        },
    });

    ValidationReport { checks }
}

fn check_faces(fan: &StackyFan) -> (bool, String) {
    let d = fan.dim();
    let cones: Vec<Cone> = fan
        .max_cones
        .iter()
        .map(|c| Cone::new(d, cone_rays(fan, c)).expect("ray length checked"))
        .collect();
    let mut ray_dirs: BTreeMap<RatVector, usize> = BTreeMap::new();
    for (i, r) in fan.rays.iter().enumerate() {
        if let Ok((w, _)) = primitive(&r.free) {
            if let Some(j) = ray_dirs.insert(to_rat(&w), i) {
                return (false, format!("rays {j} and {i} span the same ray"));
            }
        }
    }
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            let mut halfspaces = cones[a].inequalities().to_vec();
            halfspaces.extend_from_slice(cones[b].inequalities());
            let meet = Cone::new(d, halfspaces).expect("same dimension").dual();
            let common: Vec<usize> = fan.max_cones[a]
                .iter()
                .filter(|r| fan.max_cones[b].contains(r))
                .copied()
                .collect();
            let face = Cone::new(d, cone_rays(fan, &common)).expect("same dimension");
            if !cone_equal(&meet, &face) {
                return (
                    false,
                    format!("cones {a} and {b} meet outside their common face {common:?}"),
                );
            }
        }
    }
    (true, String::new())
}

/// A stacky fan that passed every validation check, with ray data and
/// per-cone ray matrices precomputed.
#[derive(Clone, Debug)]
pub struct ValidatedFan {
    fan: StackyFan,
    rays: Vec<RayData>,
    cone_matrices: Vec<RatMatrix>,
}

impl ValidatedFan {
    pub fn new(fan: StackyFan) -> Result<Self> {
        let report = validate(&fan);
        if !report.passed() {
            return Err(Error::Validation(report.failures()));
        }
        let rays = ray_data(&fan)?;
        let cone_matrices = fan
            .max_cones
            .iter()
            .map(|c| RatMatrix::from_columns(fan.dim(), &cone_rays(&fan, c)))
            .collect::<Result<_>>()?;
        Ok(ValidatedFan {
            fan,
            rays,
            cone_matrices,
        })
    }

    pub fn fan(&self) -> &StackyFan {
        &self.fan
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    pub fn num_rays(&self) -> usize {
        self.fan.num_rays()
    }

    pub fn group(&self) -> &AbelianGroupSpec {
        &self.fan.group
    }

    pub fn rays(&self) -> &[RayData] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.fan.max_cones
    }

    /// Matrix whose columns are `b_rho` for the rays of maximal cone `k`.
    pub fn cone_matrix(&self, k: usize) -> &RatMatrix {
        &self.cone_matrices[k]
    }

    /// Coefficients of `y` over the rays of maximal cone `k` (in the cone's
    /// sorted ray order).
    pub fn coefficients_in_cone(&self, k: usize, y: &[Scalar]) -> RatVector {
        solve_square(&self.cone_matrices[k], y)
            .expect("square matrix of matching size")
            .expect("simplicial cone has invertible ray matrix")
    }
}
