//! Fano polytopes, the edge data of Fano polygons, and singularity content.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{
    canonical_form_vertices, convex_hull, det2, polytope_dual, primitive_part, weak_canonical_form_3d,
    IntMatrix, LatticeError, LatticeVector, RationalPolytope, UnimodularMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("origin is not in the interior")]
    OriginNotInterior,
    #[error("vertex {0} is not primitive")]
    NonPrimitiveVertex(LatticeVector),
    #[error("vertices do not span the ambient space")]
    Degenerate,
    #[error("only dimensions 2 and 3 are supported, got {0}")]
    UnsupportedDimension(usize),
    #[error("vertex dimensions disagree")]
    DimensionMismatch,
    #[error("operation requires a polygon")]
    NotPlanar,
}

impl From<LatticeError> for PolygonError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::OriginNotInterior => PolygonError::OriginNotInterior,
            LatticeError::UnsupportedDimension(d) => PolygonError::UnsupportedDimension(d),
            LatticeError::DimensionMismatch { .. } => PolygonError::DimensionMismatch,
            _ => PolygonError::Degenerate,
        }
    }
}

/// A lattice polytope with the origin strictly inside and primitive vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FanoPolytope {
    vertices: Vec<LatticeVector>,
    hull: RationalPolytope,
}

/// Validates a vertex set and returns the Fano polytope it spans.
///
/// Points that are not hull vertices are discarded; polygon vertices come
/// back counter-clockwise.
pub fn make_fano(vertices: &[LatticeVector]) -> Result<FanoPolytope, PolygonError> {
    let dim = vertices.first().ok_or(PolygonError::Degenerate)?.dim();
    if !(2..=3).contains(&dim) {
        return Err(PolygonError::UnsupportedDimension(dim));
    }
    let pts: Vec<_> = vertices.iter().map(LatticeVector::to_rational).collect();
    let hull = convex_hull(&pts, dim)?;
    if !hull.origin_interior() {
        return Err(PolygonError::OriginNotInterior);
    }
    let verts = hull.lattice_vertices().expect("hull of lattice points");
    if let Some(v) = verts.iter().find(|v| !v.is_primitive()) {
        return Err(PolygonError::NonPrimitiveVertex(v.clone()));
    }
    Ok(FanoPolytope { vertices: verts, hull })
}

impl FanoPolytope {
    pub fn from_i64(vertices: &[&[i64]]) -> Result<Self, PolygonError> {
        let v: Vec<_> = vertices.iter().map(|c| LatticeVector::from_i64(c)).collect();
        make_fano(&v)
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn polytope(&self) -> &RationalPolytope {
        &self.hull
    }

    /// The dual polytope in `M_Q`.
    pub fn dual(&self) -> RationalPolytope {
        polytope_dual(&self.hull).expect("Fano polytopes contain the origin")
    }

    pub fn max_abs_coord(&self) -> BigInt {
        self.vertices.iter().map(LatticeVector::max_abs).max().unwrap_or_default()
    }

    /// Image under `U ∈ GL(d,Z)`.
    pub fn transform(&self, u: &UnimodularMap) -> FanoPolytope {
        let img: Vec<_> = self.vertices.iter().map(|v| u.apply(v)).collect();
        make_fano(&img).expect("unimodular images of Fano polytopes are Fano")
    }

    /// GL-normal form. In the plane this is a complete invariant; in space it
    /// is the vertex-triple HNF normal form of [`weak_canonical_form_3d`].
    pub fn canonical_vertices(&self) -> Vec<LatticeVector> {
        match self.dim() {
            2 => canonical_form_vertices(&self.vertices).0,
            _ => weak_canonical_form_3d(&self.vertices),
        }
    }

    /// Canonical representative of the GL(2,Z)-orbit and the map onto it.
    pub fn canonical_form(&self) -> Result<(FanoPolytope, UnimodularMap), PolygonError> {
        if self.dim() != 2 {
            return Err(PolygonError::NotPlanar);
        }
        let (list, u) = canonical_form_vertices(&self.vertices);
        Ok((make_fano(&list)?, u))
    }

    pub fn edges(&self) -> Result<Vec<EdgeData>, PolygonError> {
        edges(self)
    }

    pub fn singularity_content(&self) -> Result<SingularityContent, PolygonError> {
        singularity_content(self)
    }
}

impl fmt::Display for FanoPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// The cyclic quotient singularity `1/R(1,a)`, normalised so that
/// `a ≤ a⁻¹ mod R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicType {
    pub r: BigInt,
    pub a: BigInt,
}

impl fmt::Display for CyclicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.r, self.a)
    }
}

/// Cyclic type of the cone spanned by two primitive plane vectors with
/// `det[u1 u2] > 0`.
pub fn cone_type(u1: &LatticeVector, u2: &LatticeVector) -> CyclicType {
    let r = det2(u1, u2);
    assert!(r.is_positive(), "cone generators must be counter-clockwise");
    let (x, y) = (&u1.coords()[0], &u1.coords()[1]);
    let eg = x.extended_gcd(y);
    debug_assert!(eg.gcd.is_one());
    // U = [[-y, x], [p, q]] sends u1 to (0,1) and u2 to (r, t)
    let t = &eg.x * &u2.coords()[0] + &eg.y * &u2.coords()[1];
    let a = (-t).mod_floor(&r);
    if r.is_one() {
        return CyclicType { r, a: BigInt::zero() };
    }
    let inv = a.extended_gcd(&r).x.mod_floor(&r);
    CyclicType { a: a.clone().min(inv), r }
}

/// One edge of a Fano polygon together with its local data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeData {
    pub endpoints: (LatticeVector, LatticeVector),
    /// Primitive inward normal in `M`.
    pub normal_w: LatticeVector,
    /// Primitive direction in `N`, counter-clockwise along the boundary.
    pub direction_f: LatticeVector,
    /// Lattice height (local index): the edge lies on `⟨w,·⟩ = −h`.
    pub height_h: BigInt,
    pub length_l: BigInt,
    pub tcone_count_m: usize,
    pub residue_width: BigInt,
}

impl EdgeData {
    /// The residual cone of this edge, if `ℓ` is not a multiple of `h`.
    ///
    /// It is placed at the start of the edge; all placements give the same
    /// singularity since shifting by `h` steps along the edge is a lattice
    /// shear.
    pub fn residue(&self) -> Option<ResidueCone> {
        if self.residue_width.is_zero() {
            return None;
        }
        let start = &self.endpoints.0;
        let end = start + &self.direction_f.scale(&self.residue_width);
        let u1 = primitive_part(start).expect("vertex is nonzero").0;
        let u2 = primitive_part(&end).expect("point at positive height").0;
        Some(ResidueCone {
            height: self.height_h.clone(),
            width: self.residue_width.clone(),
            normal: self.normal_w.clone(),
            cyclic_type: cone_type(&u1, &u2),
        })
    }
}

/// A rigid residual cone of a polygon edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueCone {
    pub height: BigInt,
    pub width: BigInt,
    pub normal: LatticeVector,
    pub cyclic_type: CyclicType,
}

/// Singularity content `(n, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingularityContent {
    pub n: usize,
    pub basket: Vec<ResidueCone>,
}

impl SingularityContent {
    /// The basket as a sorted multiset of singularity types.
    pub fn basket_types(&self) -> Vec<CyclicType> {
        let mut t: Vec<_> = self.basket.iter().map(|c| c.cyclic_type.clone()).collect();
        t.sort();
        t
    }

    /// Equality of `n` and of the basket as a multiset of singularity types.
    pub fn equivalent(&self, other: &SingularityContent) -> bool {
        self.n == other.n && self.basket_types() == other.basket_types()
    }
}

pub fn edges(p: &FanoPolytope) -> Result<Vec<EdgeData>, PolygonError> {
    if p.dim() != 2 {
        return Err(PolygonError::NotPlanar);
    }
    let v = p.vertices();
    let n = v.len();
    Ok((0..n)
        .map(|i| {
            let (a, b) = (&v[i], &v[(i + 1) % n]);
            let (f, l) = primitive_part(&(b - a)).expect("distinct vertices");
            let w = LatticeVector::new(vec![-f.coords()[1].clone(), f.coords()[0].clone()]);
            let h = -w.dot(a);
            debug_assert!(h.is_positive());
            let (m, rho) = l.div_mod_floor(&h);
            EdgeData {
                endpoints: (a.clone(), b.clone()),
                normal_w: w,
                direction_f: f,
                height_h: h,
                length_l: l,
                tcone_count_m: m.to_usize().expect("T-cone count fits in memory"),
                residue_width: rho,
            }
        })
        .collect())
}

pub fn singularity_content(p: &FanoPolytope) -> Result<SingularityContent, PolygonError> {
    let es = edges(p)?;
    Ok(SingularityContent {
        n: es.iter().map(|e| e.tcone_count_m).sum(),
        basket: es.iter().filter_map(EdgeData::residue).collect(),
    })
}

/// Matrix of a 2×2 unimodular map given by rows.
pub fn gl2(a: i64, b: i64, c: i64, d: i64) -> Option<UnimodularMap> {
    UnimodularMap::new(IntMatrix::from_i64(&[&[a, b], &[c, d]]))
}
