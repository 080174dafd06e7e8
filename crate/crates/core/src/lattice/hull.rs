use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{primitive_part, IntMatrix, LatticeError, LatticeVector, RationalPoint};

/// A supporting half-space `⟨normal, x⟩ ≥ offset` of a polytope, with the
/// indices of the polytope vertices on it in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: LatticeVector,
    pub offset: BigRational,
    pub vertices: Vec<usize>,
}

/// A full-dimensional rational polytope in dimension 2 or 3, described by its
/// irredundant vertex list together with its facets.
///
/// In the plane the vertices run counter-clockwise starting from the
/// lexicographically least one; in space they are sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolytope {
    vertices: Vec<RationalPoint>,
    facets: Vec<Facet>,
}

impl RationalPolytope {
    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn from_lattice_points(points: &[LatticeVector]) -> Result<Self, LatticeError> {
        let pts: Vec<_> = points.iter().map(LatticeVector::to_rational).collect();
        let dim = pts.first().ok_or(LatticeError::Degenerate)?.dim();
        convex_hull(&pts, dim)
    }

    /// True if the origin lies strictly inside.
    pub fn origin_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_negative())
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.facets.iter().all(|f| p.dot_int(&f.normal) >= f.offset)
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(RationalPoint::is_integral)
    }

    /// Vertices as lattice vectors, if all of them are integral.
    pub fn lattice_vertices(&self) -> Option<Vec<LatticeVector>> {
        self.vertices.iter().map(RationalPoint::to_lattice).collect()
    }

    /// Image under a linear map (re-hulled so the canonical vertex order holds).
    pub fn map_linear(&self, m: &IntMatrix) -> Result<Self, LatticeError> {
        let pts: Vec<_> = self.vertices.iter().map(|v| m.apply_rational(v)).collect();
        convex_hull(&pts, self.dim())
    }
}

/// Converts a rational direction to the primitive integer vector with the
/// same direction.
fn integral_direction(v: &[BigRational]) -> LatticeVector {
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive_part(&LatticeVector::new(ints))
        .expect("facet normals are nonzero")
        .0
}

fn orient3(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint, d: &RationalPoint) -> BigRational {
    let u = b.sub(a);
    let v = c.sub(a);
    let w = d.sub(a);
    let (u, v, w) = (u.coords(), v.coords(), w.coords());
    &u[0] * (&v[1] * &w[2] - &v[2] * &w[1]) - &u[1] * (&v[0] * &w[2] - &v[2] * &w[0])
        + &u[2] * (&v[0] * &w[1] - &v[1] * &w[0])
}

/// Andrew's monotone chain on exact rationals. Returns indices into `pts`
/// (which must be sorted and deduplicated) in counter-clockwise order,
/// dropping collinear boundary points.
fn monotone_chain<T>(pts: &[T], left: impl Fn(&T, &T, &T) -> bool) -> Vec<usize> {
    if pts.len() < 3 {
        return (0..pts.len()).collect();
    }
    let mut lower: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while lower.len() >= 2 && !left(&pts[lower[lower.len() - 2]], &pts[lower[lower.len() - 1]], &pts[i]) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for i in (0..pts.len()).rev() {
        while upper.len() >= 2 && !left(&pts[upper[upper.len() - 2]], &pts[upper[upper.len() - 1]], &pts[i]) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Hull indices of sorted, distinct planar points. Coordinates are put over a
/// common denominator first; small numerators take the `i128` path.
fn hull_2d_indices(pts: &[RationalPoint]) -> Vec<usize> {
    let den = pts.iter().flat_map(|p| p.coords().iter()).fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let scaled: Vec<[BigInt; 2]> = pts
        .iter()
        .map(|p| {
            let c = p.coords();
            [c[0].numer() * (&den / c[0].denom()), c[1].numer() * (&den / c[1].denom())]
        })
        .collect();
    let bound = BigInt::from(1i64 << 60);
    if scaled.iter().all(|p| p[0].abs() < bound && p[1].abs() < bound) {
        use num_traits::ToPrimitive;
        let small: Vec<[i128; 2]> =
            scaled.iter().map(|p| [p[0].to_i128().unwrap(), p[1].to_i128().unwrap()]).collect();
        monotone_chain(&small, |o, a, b| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]) > 0)
    } else {
        monotone_chain(&scaled, |o, a, b| {
            ((&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])).is_positive()
        })
    }
}

fn hull_2d(points: &[RationalPoint]) -> Result<RationalPolytope, LatticeError> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let idx = hull_2d_indices(&pts);
    if idx.len() < 3 {
        return Err(LatticeError::Degenerate);
    }
    let vertices: Vec<RationalPoint> = idx.into_iter().map(|i| pts[i].clone()).collect();
    let n = vertices.len();
    let facets = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let d = vertices[j].sub(&vertices[i]);
            let normal = integral_direction(&[-d.coords()[1].clone(), d.coords()[0].clone()]);
            let offset = vertices[i].dot_int(&normal);
            Facet { normal, offset, vertices: vec![i, j] }
        })
        .collect();
    Ok(RationalPolytope { vertices, facets })
}

/// Incremental 3D hull with exact orientation tests. Faces are triangles
/// `(a, b, c)` oriented so that interior points have negative orientation.
fn hull_3d(points: &[RationalPoint]) -> Result<RationalPolytope, LatticeError> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n < 4 {
        return Err(LatticeError::Degenerate);
    }
    // initial simplex
    let p0 = 0;
    let p1 = 1;
    let p2 = (2..n)
        .find(|&i| {
            let u = pts[p1].sub(&pts[p0]);
            let v = pts[i].sub(&pts[p0]);
            let (u, v) = (u.coords(), v.coords());
            !(&u[1] * &v[2] - &u[2] * &v[1]).is_zero()
                || !(&u[2] * &v[0] - &u[0] * &v[2]).is_zero()
                || !(&u[0] * &v[1] - &u[1] * &v[0]).is_zero()
        })
        .ok_or(LatticeError::Degenerate)?;
    let p3 = (2..n)
        .find(|&i| !orient3(&pts[p0], &pts[p1], &pts[p2], &pts[i]).is_zero())
        .ok_or(LatticeError::Degenerate)?;

    let mut faces: Vec<[usize; 3]> = if orient3(&pts[p0], &pts[p1], &pts[p2], &pts[p3]).is_negative() {
        vec![[p0, p1, p2], [p0, p3, p1], [p1, p3, p2], [p0, p2, p3]]
    } else {
        vec![[p0, p2, p1], [p0, p1, p3], [p1, p2, p3], [p0, p3, p2]]
    };
    for i in 0..n {
        if [p0, p1, p2, p3].contains(&i) {
            continue;
        }
        let visible: Vec<bool> = faces
            .iter()
            .map(|f| orient3(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[i]).is_positive())
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let hidden_edges: HashSet<(usize, usize)> = faces
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .flat_map(|(f, _)| [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])])
            .collect();
        let mut next = Vec::with_capacity(faces.len() + 4);
        let mut horizon = Vec::new();
        for (f, &vis) in faces.iter().zip(&visible) {
            if vis {
                for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                    if hidden_edges.contains(&(b, a)) {
                        horizon.push((a, b));
                    }
                }
            } else {
                next.push(*f);
            }
        }
        next.extend(horizon.into_iter().map(|(a, b)| [a, b, i]));
        faces = next;
    }

    // group coplanar triangles into facets
    let mut planes: BTreeMap<(LatticeVector, BigRational), Vec<usize>> = BTreeMap::new();
    for f in &faces {
        let u = pts[f[1]].sub(&pts[f[0]]);
        let v = pts[f[2]].sub(&pts[f[0]]);
        let (u, v) = (u.coords(), v.coords());
        // outward normal is u × v; inward is its negation
        let inward = [
            -(&u[1] * &v[2] - &u[2] * &v[1]),
            -(&u[2] * &v[0] - &u[0] * &v[2]),
            -(&u[0] * &v[1] - &u[1] * &v[0]),
        ];
        let normal = integral_direction(&inward);
        let offset = pts[f[0]].dot_int(&normal);
        let entry = planes.entry((normal, offset)).or_default();
        entry.extend_from_slice(f);
    }

    let mut facet_polys: Vec<(LatticeVector, BigRational, Vec<RationalPoint>)> = Vec::new();
    for ((normal, offset), mut idx) in planes {
        idx.sort_unstable();
        idx.dedup();
        let drop = (0..3)
            .max_by_key(|&k| normal.coords()[k].abs())
            .expect("three coordinates");
        let mut proj: Vec<(RationalPoint, usize)> = idx
            .iter()
            .map(|&i| {
                let c: Vec<_> = (0..3).filter(|&k| k != drop).map(|k| pts[i].coords()[k].clone()).collect();
                (RationalPoint::new(c), i)
            })
            .collect();
        proj.sort();
        let flat: Vec<RationalPoint> = proj.iter().map(|(p, _)| p.clone()).collect();
        let ring: Vec<RationalPoint> = hull_2d_indices(&flat)
            .into_iter()
            .map(|k| pts[proj[k].1].clone())
            .collect();
        facet_polys.push((normal, offset, ring));
    }

    let mut vertices: Vec<RationalPoint> = facet_polys.iter().flat_map(|(_, _, r)| r.iter().cloned()).collect();
    vertices.sort();
    vertices.dedup();
    let facets = facet_polys
        .into_iter()
        .map(|(normal, offset, ring)| Facet {
            normal,
            offset,
            vertices: ring
                .iter()
                .map(|p| vertices.binary_search(p).expect("facet vertex is a hull vertex"))
                .collect(),
        })
        .collect();
    Ok(RationalPolytope { vertices, facets })
}

/// Convex hull of a finite point set in dimension 2 or 3.
pub fn convex_hull(points: &[RationalPoint], dim: usize) -> Result<RationalPolytope, LatticeError> {
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(LatticeError::DimensionMismatch { expected: dim, found: p.dim() });
    }
    match dim {
        2 => hull_2d(points),
        3 => hull_3d(points),
        d => Err(LatticeError::UnsupportedDimension(d)),
    }
}

/// Polar dual `{u : ⟨u, v⟩ ≥ −1 for all v ∈ P}`.
///
/// Each facet `⟨n, x⟩ ≥ b` (with `b < 0`) contributes the dual vertex
/// `n / (−b)`.
pub fn polytope_dual(p: &RationalPolytope) -> Result<RationalPolytope, LatticeError> {
    if !p.origin_interior() {
        return Err(LatticeError::OriginNotInterior);
    }
    let pts: Vec<RationalPoint> = p
        .facets
        .iter()
        .map(|f| {
            let scale = -&f.offset;
            RationalPoint::new(
                f.normal
                    .coords()
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()) / &scale)
                    .collect(),
            )
        })
        .collect();
    convex_hull(&pts, p.dim())
}

/// Exact Euclidean volume (area in the plane).
pub fn volume(p: &RationalPolytope) -> BigRational {
    let v = &p.vertices;
    match p.dim() {
        2 => {
            let n = v.len();
            let twice: BigRational = (0..n)
                .map(|i| {
                    let (a, b) = (v[i].coords(), v[(i + 1) % n].coords());
                    &a[0] * &b[1] - &a[1] * &b[0]
                })
                .sum();
            twice.abs() / BigRational::from_integer(2.into())
        }
        3 => {
            let apex = &v[0];
            let mut six = BigRational::zero();
            for f in p.facets.iter().filter(|f| !f.vertices.contains(&0)) {
                let ring = &f.vertices;
                for k in 1..ring.len() - 1 {
                    six += orient3(apex, &v[ring[0]], &v[ring[k]], &v[ring[k + 1]]).abs();
                }
            }
            six / BigRational::from_integer(6.into())
        }
        d => unreachable!("polytopes of dimension {d} are never constructed"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn pt(c: &[i64]) -> RationalPoint {
        LatticeVector::from_i64(c).to_rational()
    }

    #[test]
    fn interior_point_dropped() {
        let pts = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), RationalPoint::from_ratios(&[(1, 4), (1, 4)])];
        let h = convex_hull(&pts, 2).unwrap();
        assert_eq!(h.vertices(), &[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]);
    }

    #[test]
    fn diamond_and_its_dual() {
        let d = convex_hull(&[pt(&[1, 0]), pt(&[0, 1]), pt(&[-1, 0]), pt(&[0, -1])], 2).unwrap();
        assert_eq!(d.vertices().len(), 4);
        let dual = polytope_dual(&d).unwrap();
        let mut got = dual.vertices().to_vec();
        got.sort();
        assert_eq!(got, vec![pt(&[-1, -1]), pt(&[-1, 1]), pt(&[1, -1]), pt(&[1, 1])]);
        assert_eq!(polytope_dual(&dual).unwrap(), d);
    }

    #[test]
    fn projective_plane_dual() {
        let p = convex_hull(&[pt(&[1, 0]), pt(&[0, 1]), pt(&[-1, -1])], 2).unwrap();
        assert_eq!(volume(&p), BigRational::new(3.into(), 2.into()));
        let dual = polytope_dual(&p).unwrap();
        let mut got = dual.vertices().to_vec();
        got.sort();
        assert_eq!(got, vec![pt(&[-1, -1]), pt(&[-1, 2]), pt(&[2, -1])]);
    }

    #[test]
    fn unit_square_area() {
        let sq = convex_hull(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])], 2).unwrap();
        assert_eq!(volume(&sq), rat(1));
    }

    #[test]
    fn origin_outside_has_no_dual() {
        let p = convex_hull(&[pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])], 2).unwrap();
        assert_eq!(polytope_dual(&p), Err(LatticeError::OriginNotInterior));
    }

    #[test]
    fn collinear_is_degenerate() {
        let pts = [pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])];
        assert_eq!(convex_hull(&pts, 2), Err(LatticeError::Degenerate));
        let flat = [pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 0]), pt(&[5, 3, 0])];
        assert_eq!(convex_hull(&flat, 3), Err(LatticeError::Degenerate));
    }

    #[test]
    fn cube_with_redundant_points() {
        let mut pts = Vec::new();
        for x in -1..=1 {
            for y in -1..=1 {
                for z in -1..=1 {
                    pts.push(pt(&[x, y, z]));
                }
            }
        }
        let cube = convex_hull(&pts, 3).unwrap();
        assert_eq!(cube.vertices().len(), 8);
        assert_eq!(cube.facets().len(), 6);
        assert!(cube.facets().iter().all(|f| f.vertices.len() == 4));
        assert_eq!(volume(&cube), rat(8));
        let oct = polytope_dual(&cube).unwrap();
        assert_eq!(oct.vertices().len(), 6);
        assert_eq!(volume(&oct), BigRational::new(4.into(), 3.into()));
        assert_eq!(polytope_dual(&oct).unwrap(), cube);
    }
}
