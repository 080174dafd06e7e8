//! Algebraic mutation of Laurent polynomials and combinatorial mutation of
//! Fano polytopes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{
    convex_hull, polytope_dual, row_echelon, volume, IntMatrix, LatticeError, LatticeVector, RationalPoint,
    RationalPolytope,
};
use crate::laurent::LaurentPolynomial;
use crate::polygon::{make_fano, EdgeData, FanoPolytope, PolygonError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error("mutation does not preserve regularity (result is not Laurent)")]
    NotLaurent,
    #[error("image of the dual polytope is not convex")]
    NotConvex,
    #[error("mutated polytope is not a Fano lattice polytope")]
    NotFano,
    #[error("invalid mutation data: {0}")]
    InvalidData(&'static str),
    #[error("cannot mutate the zero polynomial")]
    ZeroPolynomial,
    #[error("exponent too large for dense expansion")]
    ExponentTooLarge,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// A weight `w ∈ M` and factor `f ∈ N`, both primitive, with `⟨w,f⟩ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationData {
    pub weight_w: LatticeVector,
    pub factor_f: LatticeVector,
}

impl MutationData {
    pub fn new(weight_w: LatticeVector, factor_f: LatticeVector) -> Result<Self, MutationError> {
        if weight_w.dim() != factor_f.dim() {
            return Err(MutationError::InvalidData("dimension mismatch"));
        }
        if !weight_w.is_primitive() || !factor_f.is_primitive() {
            return Err(MutationError::InvalidData("w and f must be primitive"));
        }
        if !weight_w.dot(&factor_f).is_zero() {
            return Err(MutationError::InvalidData("⟨w,f⟩ must vanish"));
        }
        Ok(MutationData { weight_w, factor_f })
    }

    pub fn from_i64(w: &[i64], f: &[i64]) -> Result<Self, MutationError> {
        Self::new(LatticeVector::from_i64(w), LatticeVector::from_i64(f))
    }

    /// The edge mutation of a polygon edge: inward normal and direction.
    pub fn from_edge(e: &EdgeData) -> Self {
        MutationData { weight_w: e.normal_w.clone(), factor_f: e.direction_f.clone() }
    }

    pub fn dim(&self) -> usize {
        self.weight_w.dim()
    }

    /// `(−w, f)`, which undoes this mutation.
    pub fn inverse(&self) -> Self {
        MutationData { weight_w: -&self.weight_w, factor_f: self.factor_f.clone() }
    }

    /// `(w, −f)`.
    pub fn flip_factor(&self) -> Self {
        MutationData { weight_w: self.weight_w.clone(), factor_f: -&self.factor_f }
    }

    /// `T_{w,f}(m) = m + max(0, ⟨m,f⟩)·w`.
    pub fn tropical_map(&self, m: &RationalPoint) -> RationalPoint {
        let s = m.dot_int(&self.factor_f);
        if s.is_positive() {
            m.add_scaled(&self.weight_w.to_rational(), &s)
        } else {
            m.clone()
        }
    }
}

/// Some `λ ∈ M` with `⟨λ,f⟩ = 1`.
fn section(f: &LatticeVector) -> LatticeVector {
    let (h, u, _) = row_echelon(&IntMatrix::from_columns(std::slice::from_ref(f)));
    debug_assert!(h.get(0, 0) == &BigInt::from(1));
    LatticeVector::new(u.rows()[0].clone())
}

fn mul_one_plus_t(c: &mut Vec<BigRational>, times: usize) {
    for _ in 0..times {
        c.push(BigRational::zero());
        for i in (1..c.len()).rev() {
            let prev = c[i - 1].clone();
            c[i] += prev;
        }
    }
}

/// Exact division by `(1+t)^times` of a polynomial given densely from the
/// constant term; `None` if a remainder appears.
fn div_one_plus_t(c: &[BigRational], times: usize) -> Option<Vec<BigRational>> {
    let mut p = c.to_vec();
    for _ in 0..times {
        if p.len() < 2 {
            return None;
        }
        // p = (1+t)q  ⇔  p_i = q_i + q_{i-1}
        let n = p.len() - 1;
        let mut q = vec![BigRational::zero(); n];
        q[n - 1] = p[n].clone();
        for i in (1..n).rev() {
            q[i - 1] = &p[i] - &q[i];
        }
        if q[0] != p[0] {
            return None;
        }
        p = q;
    }
    Some(p)
}

/// `φ*_{w,f}(W)`: every term `z^n` becomes `z^n (1+z^f)^{⟨w,n⟩}`.
///
/// The exponents are grouped into lines parallel to `f`. On each line
/// `⟨w,·⟩` is a constant `k`, so the line is a univariate Laurent polynomial
/// in `t = z^f` multiplied by `(1+t)^k`; for `k < 0` this is an exact
/// division and a remainder means the result is not Laurent.
pub fn algebraic_mutate(w: &LaurentPolynomial, d: &MutationData) -> Result<LaurentPolynomial, MutationError> {
    if w.is_zero() {
        return Err(MutationError::ZeroPolynomial);
    }
    if w.dim() != d.dim() {
        return Err(MutationError::InvalidData("dimension mismatch"));
    }
    let f = &d.factor_f;
    let lam = section(f);
    let mut lines: BTreeMap<LatticeVector, BTreeMap<BigInt, BigRational>> = BTreeMap::new();
    for (n, c) in w.terms() {
        let j = lam.dot(n);
        let base = n - &f.scale(&j);
        lines.entry(base).or_default().insert(j, c.clone());
    }
    let mut out = LaurentPolynomial::zero(w.dim());
    for (base, line) in lines {
        let k = d.weight_w.dot(&base);
        let jmin = line.keys().next().expect("nonempty line").clone();
        let jmax = line.keys().next_back().expect("nonempty line").clone();
        let span = (&jmax - &jmin).to_usize().ok_or(MutationError::ExponentTooLarge)?;
        let times = k.magnitude().to_usize().ok_or(MutationError::ExponentTooLarge)?;
        if span.checked_add(times).is_none_or(|s| s > 1 << 24) {
            return Err(MutationError::ExponentTooLarge);
        }
        let mut dense = vec![BigRational::zero(); span + 1];
        for (j, c) in line {
            dense[(j - &jmin).to_usize().expect("within span")] = c;
        }
        let dense = if k.is_negative() {
            div_one_plus_t(&dense, times).ok_or(MutationError::NotLaurent)?
        } else {
            mul_one_plus_t(&mut dense, times);
            dense
        };
        for (i, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                let j = &jmin + BigInt::from(i);
                out.add_term(&base + &f.scale(&j), c);
            }
        }
    }
    Ok(out)
}

/// Image of `Q ⊂ M_Q` under `T_{w,f}`.
///
/// The two halves `Q ∩ {⟨·,f⟩ ≥ 0}` and `Q ∩ {⟨·,f⟩ ≤ 0}` are mapped by
/// unimodular linear maps, so their union is convex exactly when the hull of
/// the image points has the volume of `Q`.
pub fn pl_transform(q: &RationalPolytope, d: &MutationData) -> Result<RationalPolytope, MutationError> {
    if q.dim() != d.dim() {
        return Err(MutationError::InvalidData("dimension mismatch"));
    }
    let verts = q.vertices();
    let vals: Vec<BigRational> = verts.iter().map(|v| v.dot_int(&d.factor_f)).collect();
    let mut pts: Vec<RationalPoint> = verts.iter().map(|v| d.tropical_map(v)).collect();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if vals[i].is_positive() && vals[j].is_negative() || vals[i].is_negative() && vals[j].is_positive() {
                let t = &vals[i] / (&vals[i] - &vals[j]);
                pts.push(verts[i].add_scaled(&verts[j].sub(&verts[i]), &t));
            }
        }
    }
    let image = convex_hull(&pts, q.dim())?;
    if volume(&image) != volume(q) {
        return Err(MutationError::NotConvex);
    }
    Ok(image)
}

/// `(T_{w,f}(P°))°`.
///
/// With the dual taken as `{u : ⟨u,v⟩ ≥ −1}`, the Newton polytope of
/// `φ*_{w,f}(W)` is the mutation of `Newt(W)` by `(w, −f)`; the two results
/// differ by the shear `m ↦ m − ⟨m,f⟩w` on the dual side.
pub fn combinatorial_mutate(p: &FanoPolytope, d: &MutationData) -> Result<FanoPolytope, MutationError> {
    let image = pl_transform(&p.dual(), d)?;
    let back = polytope_dual(&image)?;
    let verts = back.lattice_vertices().ok_or(MutationError::NotFano)?;
    make_fano(&verts).map_err(|e| match e {
        PolygonError::NonPrimitiveVertex(_) => MutationError::NotFano,
        e => MutationError::Polygon(e),
    })
}
