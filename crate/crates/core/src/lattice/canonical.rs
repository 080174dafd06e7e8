use num_traits::Zero;

use super::{hermite_normal_form, IntMatrix, LatticeError, LatticeVector, RationalPolytope, UnimodularMap};

/// GL(2,Z) normal form of a counter-clockwise cycle of primitive lattice
/// vertices.
///
/// For every cyclically adjacent pair `(v_i, v_{i±1})`, in both directions of
/// travel, the column HNF of `[v_i v_{i±1}]` fixes a unimodular `U`; the
/// cycle is mapped by `U`, read from `U·v_i` in that direction, and the
/// lexicographically least list wins.
pub fn canonical_form_vertices(cycle: &[LatticeVector]) -> (Vec<LatticeVector>, UnimodularMap) {
    let n = cycle.len();
    let mut best: Option<(Vec<LatticeVector>, UnimodularMap)> = None;
    for i in 0..n {
        for forward in [true, false] {
            let step = |k: usize| if forward { (i + k) % n } else { (i + n - k) % n };
            let a = IntMatrix::from_columns(&[cycle[step(0)].clone(), cycle[step(1)].clone()]);
            let (_, u) = hermite_normal_form(&a).expect("adjacent vertices of a polygon are independent");
            let list: Vec<LatticeVector> = (0..n).map(|k| u.apply(&cycle[step(k)])).collect();
            if best.as_ref().is_none_or(|(b, _)| list < *b) {
                best = Some((list, u));
            }
        }
    }
    best.expect("polygons have vertices")
}

/// Canonical representative of the GL(2,Z)-orbit of a Fano polygon, with the
/// unimodular map that carries the input onto it.
pub fn canonical_form(p: &RationalPolytope) -> Result<(RationalPolytope, UnimodularMap), LatticeError> {
    if p.dim() != 2 {
        return Err(LatticeError::UnsupportedDimension(p.dim()));
    }
    let verts = p.lattice_vertices().ok_or(LatticeError::NotFano)?;
    if !p.origin_interior() || !verts.iter().all(LatticeVector::is_primitive) {
        return Err(LatticeError::NotFano);
    }
    let (list, u) = canonical_form_vertices(&verts);
    let poly = RationalPolytope::from_lattice_points(&list)?;
    Ok((poly, u))
}

/// Normal form for lattice polytopes in dimension 3: the least sorted vertex
/// list over all images `U·P`, where `U` is the unimodular factor of the
/// column HNF of an ordered vertex triple spanning `Q^3`.
pub fn weak_canonical_form_3d(vertices: &[LatticeVector]) -> Vec<LatticeVector> {
    let n = vertices.len();
    let mut best: Option<Vec<LatticeVector>> = None;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                let m = IntMatrix::from_columns(&[vertices[a].clone(), vertices[b].clone(), vertices[c].clone()]);
                if m.det().is_zero() {
                    continue;
                }
                let (_, u) = hermite_normal_form(&m).expect("nonsingular");
                let mut img: Vec<_> = vertices.iter().map(|v| u.apply(v)).collect();
                img.sort();
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
        }
    }
    best.unwrap_or_else(|| {
        let mut v = vertices.to_vec();
        v.sort();
        v
    })
}
