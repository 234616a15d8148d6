//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate. Matrices are small and dense, so
//! plain Gauss-Jordan elimination over `BigRational` is used for rank,
//! kernels and solving, and Bareiss elimination over `BigInt` for
//! determinants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;
pub type IntVector = Vec<BigInt>;
pub type RatVector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_vec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat_vec(v: &[i64]) -> RatVector {
    v.iter().map(|&x| int(x)).collect()
}

pub fn to_rat(v: &[BigInt]) -> RatVector {
    v.iter().cloned().map(Scalar::from_integer).collect()
}

/// Integer vector of an all-integral rational vector, `None` otherwise.
pub fn to_int(v: &[Scalar]) -> Option<IntVector> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

pub fn unit_vector(dim: usize, i: usize) -> RatVector {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

pub fn zero_vector(dim: usize) -> RatVector {
    vec![Scalar::zero(); dim]
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    // most vectors here are sparse, and skipping zeros avoids the gcd work
    // of rational products
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn scale(v: &[Scalar], s: &Scalar) -> RatVector {
    v.iter().map(|x| x * s).collect()
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `a + s * b`
pub fn axpy(a: &[Scalar], s: &Scalar, b: &[Scalar]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Splits a nonzero integer vector as `c * w` with `w` primitive and `c > 0`.
pub fn primitive(v: &[BigInt]) -> Result<(IntVector, BigInt)> {
    let c = gcd_all(v);
    if c.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok((v.iter().map(|x| x / &c).collect(), c))
}

/// Positive rescaling of a nonzero rational vector to a primitive integer
/// vector. Returns `None` for the zero vector.
pub fn primitive_direction(v: &[Scalar]) -> Option<RatVector> {
    if is_zero_vec(v) {
        return None;
    }
    let den = if v.iter().all(|x| x.denom().is_one()) {
        BigInt::one()
    } else {
        v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
    };
    let ints: IntVector = if den.is_one() {
        v.iter().map(|x| x.numer().clone()).collect()
    } else {
        v.iter().map(|x| x.numer() * (&den / x.denom())).collect()
    };
    let g = gcd_all(&ints);
    if g.is_one() {
        return Some(to_rat(&ints));
    }
    Some(ints.iter().map(|x| Scalar::from_integer(x / &g)).collect())
}

/// Like [`primitive_direction`] but also normalizes the sign so that the
/// first nonzero coordinate is positive.
pub fn primitive_line(v: &[Scalar]) -> Option<RatVector> {
    let mut w = primitive_direction(v)?;
    if w.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in &mut w {
            *x = -x.clone();
        }
    }
    Some(w)
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: &[RatVector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<RatVector> = rows.iter().map(|r| rat_vec(r)).collect();
        Self::from_rows(cols, &rows).expect("ragged matrix literal")
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, cols: &[RatVector]) -> Result<Self> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<RatVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(self.rows().map(|r| dot(r, x)).collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let v = &a[(r, j)] * &f;
                    a[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn rank(a: &RatMatrix) -> usize {
    a.rref().1.len()
}

/// Rank of a list of vectors of common length `dim`.
///
/// Rows are reduced one at a time against an echelon basis, so the scan
/// stops as soon as the rank reaches `dim`.
pub fn rank_of(dim: usize, vectors: &[RatVector]) -> usize {
    // rank modulo a prime never exceeds the rational rank, so reaching the
    // largest possible value settles the question exactly
    let bound = dim.min(vectors.len());
    if rank_mod_p(dim, vectors) == Some(bound) {
        return bound;
    }
    let mut basis: Vec<(usize, RatVector)> = Vec::new();
    for v in vectors {
        if basis.len() == dim {
            break;
        }
        let mut v = v.clone();
        for (p, b) in &basis {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                v = axpy(&v, &-f, b);
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            // later rows vanish at earlier pivots, so no back substitution
            let inv = v[p].recip();
            basis.push((p, scale(&v, &inv)));
        }
    }
    basis.len()
}

const RANK_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(RANK_PRIME)) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, RANK_PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Rank over `Z / p` of the rows with denominators cleared; `None` when some
/// denominator is divisible by `p`. Stops once the rank reaches `dim`.
fn rank_mod_p(dim: usize, vectors: &[RatVector]) -> Option<usize> {
    let p = BigInt::from(RANK_PRIME);
    let reduce = |x: &BigInt| -> u64 {
        match x.to_i64() {
            Some(n) => n.rem_euclid(RANK_PRIME as i64) as u64,
            None => x.mod_floor(&p).to_u64().expect("residue fits"),
        }
    };
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for v in vectors {
        if basis.len() == dim {
            break;
        }
        let mut row = Vec::with_capacity(dim);
        for x in v {
            let n = reduce(x.numer());
            if x.denom().is_one() {
                row.push(n);
                continue;
            }
            let d = reduce(x.denom());
            if d == 0 {
                return None;
            }
            row.push(mul_mod(n, inv_mod(d)));
        }
        for (piv, b) in &basis {
            let f = row[*piv];
            if f != 0 {
                for (r, bv) in row.iter_mut().zip(b) {
                    *r = (*r + RANK_PRIME - mul_mod(f, *bv)) % RANK_PRIME;
                }
            }
        }
        if let Some(piv) = row.iter().position(|&x| x != 0) {
            let inv = inv_mod(row[piv]);
            for r in &mut row {
                *r = mul_mod(*r, inv);
            }
            basis.push((piv, row));
        }
    }
    Some(basis.len())
}

/// Determinant by Bareiss fraction-free elimination on an integer matrix.
pub fn det_int(a: &[IntVector]) -> BigInt {
    let n = a.len();
    let mut m: Vec<IntVector> = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of a square rational matrix: rows are cleared of
/// denominators, then the integer determinant is rescaled.
pub fn det(a: &RatMatrix) -> Result<Scalar> {
    if a.rows != a.cols {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let mut scale_back = BigInt::one();
    let rows: Vec<IntVector> = a
        .rows()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            scale_back *= &l;
            r.iter()
                .map(|x| (x * Scalar::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    Ok(Scalar::new(det_int(&rows), scale_back))
}

/// Solves `A x = y` for square invertible `A`; `None` when `A` is singular.
pub fn solve_square(a: &RatMatrix, y: &[Scalar]) -> Result<Option<RatVector>> {
    if a.rows != a.cols {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if y.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: y.len(),
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut aug = RatMatrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = y[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    Ok(Some((0..n).map(|i| r[(i, n)].clone()).collect()))
}

/// Solves a possibly non-square system `A x = y`. Returns `None` when the
/// system is inconsistent or has more than one solution.
pub fn solve_unique(a: &RatMatrix, y: &[Scalar]) -> Result<Option<RatVector>> {
    if y.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: y.len(),
        });
    }
    let (m, n) = (a.rows, a.cols);
    let mut aug = RatMatrix::zeros(m, n + 1);
    for i in 0..m {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = y[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) || pivots.len() != n {
        return Ok(None);
    }
    Ok(Some((0..n).map(|i| r[(i, n)].clone()).collect()))
}

/// Basis of the right kernel `{x : A x = 0}`.
///
/// Each vector comes from one free column of the reduced row echelon form,
/// is rescaled to a primitive integer vector with positive leading
/// coordinate, and the list is sorted lexicographically.
pub fn kernel_basis(a: &RatMatrix) -> Vec<RatVector> {
    let n = a.cols;
    let (r, pivots) = a.rref();
    let mut basis: Vec<RatVector> = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = zero_vector(n);
            x[free] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r[(row, free)].clone();
            }
            primitive_line(&x).expect("kernel vector has a unit coordinate")
        })
        .collect();
    basis.sort();
    basis
}

/// Basis of the row space in reduced echelon form, each row primitive.
pub fn row_space_basis(dim: usize, vectors: &[RatVector]) -> Vec<RatVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RatMatrix::from_rows(dim, vectors).expect("row length");
    let (r, pivots) = m.rref();
    (0..pivots.len())
        .map(|i| primitive_line(r.row(i)).expect("pivot row is nonzero"))
        .collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`, where
/// `basis` is linearly independent.
pub fn project_off(v: &[Scalar], basis: &[RatVector]) -> RatVector {
    if basis.is_empty() {
        return v.to_vec();
    }
    let k = basis.len();
    let mut gram = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = dot(&basis[i], &basis[j]);
        }
    }
    let rhs: RatVector = basis.iter().map(|b| dot(b, v)).collect();
    let coef = solve_square(&gram, &rhs)
        .expect("square gram matrix")
        .expect("independent basis has invertible gram matrix");
    basis
        .iter()
        .zip(&coef)
        .fold(v.to_vec(), |acc, (b, c)| axpy(&acc, &-c.clone(), b))
}
