//! Exact integer and rational linear algebra plus low-dimensional convex
//! geometry (hulls, polar duals, volumes, GL(2,Z) normal forms).

mod canonical;
mod hnf;
mod hull;

pub use canonical::{canonical_form, canonical_form_vertices, weak_canonical_form_3d};
pub use hnf::{hermite_normal_form, row_echelon};
pub use hull::{convex_hull, polytope_dual, volume, Facet, RationalPolytope};

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("point set is not full-dimensional")]
    Degenerate,
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("dimension {0} is not supported (only 2 and 3)")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope is not a Fano polygon")]
    NotFano,
}

/// A point of an integer lattice `Z^d` with arbitrary-precision coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        assert!(!coords.is_empty(), "lattice vectors have positive dimension");
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); dim];
        v[i] = BigInt::one();
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Content: the gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint(self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Coordinates as `i64`, when they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Splits `v` as `g * u` with `g` the gcd of the coordinates and `u` primitive.
pub fn primitive_part(v: &LatticeVector) -> Result<(LatticeVector, BigInt), LatticeError> {
    let g = v.content();
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let u = LatticeVector(v.0.iter().map(|c| c / &g).collect());
    Ok((u, g))
}

/// A point of `Q^d`. Coordinates are always reduced fractions with positive
/// denominator (guaranteed by `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub(crate) Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        assert!(!coords.is_empty(), "points have positive dimension");
        RationalPoint(coords)
    }

    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Self::new(
            coords
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.is_integral()
            .then(|| LatticeVector(self.0.iter().map(|c| c.to_integer()).collect()))
    }

    pub fn dot_int(&self, v: &LatticeVector) -> BigRational {
        self.0
            .iter()
            .zip(v.coords())
            .map(|(a, b)| a * BigRational::from_integer(b.clone()))
            .sum()
    }

    pub fn dot(&self, other: &RationalPoint) -> BigRational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub(crate) fn sub(&self, other: &RationalPoint) -> RationalPoint {
        RationalPoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub(crate) fn add_scaled(&self, other: &RationalPoint, t: &BigRational) -> RationalPoint {
        RationalPoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b * t).collect())
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        IntMatrix { rows, ncols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[LatticeVector]) -> Self {
        let n = cols[0].dim();
        Self::new(
            (0..n)
                .map(|i| cols.iter().map(|c| c.coords()[i].clone()).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub(crate) fn rows_mut(&mut self) -> &mut Vec<Vec<BigInt>> {
        &mut self.rows
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows());
        IntMatrix::new(
            self.rows
                .iter()
                .map(|r| {
                    (0..other.ncols)
                        .map(|j| r.iter().zip(&other.rows).map(|(a, orow)| a * &orow[j]).sum())
                        .collect()
                })
                .collect(),
        )
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.ncols, v.dim());
        LatticeVector(self.rows.iter().map(|r| r.iter().zip(v.coords()).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn apply_rational(&self, v: &RationalPoint) -> RationalPoint {
        RationalPoint(
            self.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .zip(v.coords())
                        .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                        .sum()
                })
                .collect(),
        )
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::new(
            (0..self.ncols)
                .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
                .collect(),
        )
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.nrows();
        assert_eq!(n, self.ncols, "determinant of a non-square matrix");
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let (_, _, pivots) = row_echelon(self);
        pivots.len()
    }
}

/// An element of `GL(d,Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    matrix: IntMatrix,
}

impl UnimodularMap {
    pub fn new(matrix: IntMatrix) -> Option<Self> {
        (matrix.nrows() == matrix.ncols() && matrix.det().abs().is_one())
            .then_some(UnimodularMap { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        UnimodularMap { matrix: IntMatrix::identity(dim) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        self.matrix.apply(v)
    }

    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        UnimodularMap { matrix: self.matrix.mul(&other.matrix) }
    }

    /// Exact inverse via the adjugate.
    pub fn inverse(&self) -> UnimodularMap {
        let n = self.matrix.nrows();
        let d = self.det();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                // adj[i][j] = (-1)^{i+j} minor(j, i)
                let minor = IntMatrix::new(
                    (0..n)
                        .filter(|&r| r != j)
                        .map(|r| {
                            (0..n)
                                .filter(|&c| c != i)
                                .map(|c| self.matrix.get(r, c).clone())
                                .collect()
                        })
                        .collect(),
                );
                let m = if n == 1 { BigInt::one() } else { minor.det() };
                let signed = if (i + j) % 2 == 0 { m } else { -m };
                *entry = signed * &d;
            }
        }
        UnimodularMap { matrix: IntMatrix::new(rows) }
    }
}

/// 2×2 determinant `det[a b]` of two plane vectors (columns).
pub fn det2(a: &LatticeVector, b: &LatticeVector) -> BigInt {
    let (a, b) = (a.coords(), b.coords());
    &a[0] * &b[1] - &a[1] * &b[0]
}

#[cfg(test)]
pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
