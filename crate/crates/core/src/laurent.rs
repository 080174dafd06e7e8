//! Sparse Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{convex_hull, LatticeError, LatticeVector, RationalPolytope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("exact division failed: remainder is nonzero")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// A finite sum `Σ c_n z^n` over exponents `n ∈ Z^d`; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    dim: usize,
    terms: BTreeMap<LatticeVector, BigRational>,
}

impl LaurentPolynomial {
    pub fn zero(dim: usize) -> Self {
        LaurentPolynomial { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(LatticeVector::zero(dim), BigRational::one())
    }

    pub fn monomial(exp: LatticeVector, coeff: BigRational) -> Self {
        let mut p = Self::zero(exp.dim());
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    /// The coordinate function `z_i`.
    pub fn variable(dim: usize, i: usize) -> Self {
        Self::monomial(LatticeVector::unit(dim, i), BigRational::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (LatticeVector, BigRational)>,
    {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.dim(), dim, "exponent dimension");
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_i64(dim: usize, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(
            dim,
            terms
                .iter()
                .map(|(e, c)| (LatticeVector::from_i64(e), BigRational::from_integer((*c).into()))),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &LatticeVector) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> Vec<LatticeVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub(crate) fn add_term(&mut self, exp: LatticeVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.dim);
        }
        LaurentPolynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplication by the monomial `c·z^e`.
    pub fn shift(&self, e: &LatticeVector, c: &BigRational) -> Self {
        LaurentPolynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(x, k)| (x + e, k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse of a monomial.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.terms.iter().next().filter(|_| self.is_monomial())?;
        Some(Self::monomial(-e, c.recip()))
    }

    /// Integer-power of a monomial (negative powers allowed).
    pub fn monomial_pow(exp: &LatticeVector, k: &BigInt) -> Self {
        Self::monomial(exp.scale(k), BigRational::one())
    }

    fn leading(&self) -> Option<(&LatticeVector, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Per-coordinate minimum and maximum of the exponents.
    fn exponent_box(&self) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.coords().to_vec();
        let mut hi = lo.clone();
        for e in it {
            for (i, c) in e.coords().iter().enumerate() {
                if *c < lo[i] {
                    lo[i] = c.clone();
                }
                if *c > hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
        Some((lo, hi))
    }

    /// Convex hull of the support (the Newton polytope).
    pub fn newton_polytope(&self) -> Result<RationalPolytope, LatticeError> {
        let pts: Vec<_> = self.terms.keys().map(LatticeVector::to_rational).collect();
        if pts.is_empty() {
            return Err(LatticeError::Degenerate);
        }
        convex_hull(&pts, self.dim)
    }

    /// Evaluates at a point with nonzero rational coordinates.
    pub fn evaluate(&self, at: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.coords().iter().zip(at).fold(c.clone(), |acc, (k, x)| {
                    let p = num_traits::pow::Pow::pow(x, k.magnitude().clone());
                    if k.is_negative() {
                        acc / p
                    } else {
                        acc * p
                    }
                })
            })
            .sum()
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (k, x) in e.coords().iter().enumerate() {
                if !x.is_zero() {
                    write!(f, "*z{k}^{x}")?;
                }
            }
        }
        Ok(())
    }
}

/// Exact quotient `num / den`.
///
/// Long division under lexicographic order on exponents. Every quotient
/// exponent must lie in the box `[min(num) − min(den), max(num) − max(den)]`
/// (coordinate-wise), which bounds the loop; leaving the box, or a box that is
/// empty, proves the division is not exact.
pub fn laurent_divide_exact(
    num: &LaurentPolynomial,
    den: &LaurentPolynomial,
) -> Result<LaurentPolynomial, LaurentError> {
    if num.dim != den.dim {
        return Err(LaurentError::DimensionMismatch(num.dim, den.dim));
    }
    if den.is_zero() {
        return Err(LaurentError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(LaurentPolynomial::zero(num.dim));
    }
    if let Some(inv) = den.monomial_inverse() {
        return Ok(num.mul(&inv));
    }
    let (nlo, nhi) = num.exponent_box().expect("nonzero");
    let (dlo, dhi) = den.exponent_box().expect("nonzero");
    let lo: Vec<BigInt> = nlo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
    let hi: Vec<BigInt> = nhi.iter().zip(&dhi).map(|(a, b)| a - b).collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Err(LaurentError::NotDivisible);
    }
    let (dle, dlc) = den.leading().map(|(e, c)| (e.clone(), c.clone())).expect("nonzero");
    let mut rem = num.clone();
    let mut quot = LaurentPolynomial::zero(num.dim);
    while let Some((re, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
        let qe = &re - &dle;
        let inside = qe.coords().iter().zip(lo.iter().zip(&hi)).all(|(x, (a, b))| a <= x && x <= b);
        if !inside {
            return Err(LaurentError::NotDivisible);
        }
        let qc = rc / &dlc;
        for (e, c) in &den.terms {
            rem.add_term(e + &qe, -(c * &qc));
        }
        debug_assert!(!rem.terms.contains_key(&re));
        quot.add_term(qe, qc);
    }
    Ok(quot)
}
