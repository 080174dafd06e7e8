use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{check_compatible, CompatibleCollection, HighDimError, MutationRule, TrackedCollection};
use crate::lattice::{polytope_dual, volume, weak_canonical_form_3d, IntMatrix, LatticeVector, RationalPolytope};
use crate::mutation::{combinatorial_mutate, pl_transform, MutationData, MutationError};
use crate::polygon::{FanoPolytope, PolygonError};

/// Which polytope the B5 walk mutates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PolytopeModel {
    /// The moment polytope of the hyperplane class: the pyramid over the
    /// degenerate dP5 polygon, with the origin at the centre of its base.
    #[default]
    Raw,
    /// Twice the raw polytope, moved so that it is the (reflexive) dual of
    /// the Fano polytope of the degeneration.
    Dilated,
}

/// `{(−1,0,0), (0,1,1)}`, `{(0,0,−1), (−1,0,0)}`.
pub fn b5_collection() -> CompatibleCollection {
    let d = |w: &[i64], f: &[i64]| MutationData::from_i64(w, f).expect("valid data");
    check_compatible(vec![d(&[-1, 0, 0], &[0, 1, 1]), d(&[0, 0, -1], &[-1, 0, 0])]).expect("compatible")
}

/// Change of basis of `M` placing the B5 polytopes so that both items of
/// [`b5_collection`] are valid mutations.
fn b5_placement() -> IntMatrix {
    IntMatrix::from_i64(B5_PLACEMENT)
}

const B5_PLACEMENT: &[&[i64]] = &[&[1, 0, 0], &[0, -1, 1], &[0, 0, -1]];

/// Vertices of the dual of the degenerate dP5 polygon
/// `conv{(−1,−1), (1,−1), (1,0), (0,1), (−1,1)}`, which has two `A_1` points.
const DP5_DUAL: [[i64; 2]; 5] = [[0, 1], [-1, 0], [-1, -1], [0, -1], [1, 0]];

fn start_placed(model: PolytopeModel, g: &IntMatrix) -> RationalPolytope {
    let (scale, lift) = match model {
        PolytopeModel::Raw => (1, 0),
        PolytopeModel::Dilated => (2, -1),
    };
    let mut pts: Vec<LatticeVector> =
        DP5_DUAL.iter().map(|m| LatticeVector::from_i64(&[scale * m[0], scale * m[1], lift])).collect();
    pts.push(LatticeVector::from_i64(&[0, 0, 1]));
    let pts: Vec<LatticeVector> = pts.iter().map(|p| g.apply(p)).collect();
    RationalPolytope::from_lattice_points(&pts).expect("full-dimensional")
}

/// The Fano polytope of the projective cone over the degenerate dP5: the
/// dual of the dilated model.
pub fn b5_fano_polytope() -> FanoPolytope {
    let dual = b5_start(PolytopeModel::Dilated);
    let p = polytope_dual(&dual).expect("reflexive");
    crate::polygon::make_fano(&p.lattice_vertices().expect("lattice")).expect("Fano")
}

/// The M-side start polytope of the B5 pentagon.
pub fn b5_start(model: PolytopeModel) -> RationalPolytope {
    start_placed(model, &b5_placement())
}

/// Normal form of a 3D rational polytope under `GL(3,Z)`: the common
/// denominator `L` of its vertices and the normal form of `L·Q`.
pub fn m_side_form(q: &RationalPolytope) -> (BigInt, Vec<LatticeVector>) {
    let den = q.vertices().iter().flat_map(|v| v.coords()).fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let scaled: Vec<LatticeVector> = q
        .vertices()
        .iter()
        .map(|v| LatticeVector::new(v.coords().iter().map(|c| c.numer() * (&den / c.denom())).collect()))
        .collect();
    (den.clone(), weak_canonical_form_3d(&scaled))
}

/// Combinatorial mutation of a Fano 3-polytope; [`MutationError::NotConvex`]
/// is an expected outcome here.
pub fn mutate_polytope_3d(p: &FanoPolytope, d: &MutationData) -> Result<FanoPolytope, HighDimError> {
    if p.dim() != 3 || d.dim() != 3 {
        return Err(PolygonError::UnsupportedDimension(p.dim().min(d.dim())).into());
    }
    let q = combinatorial_mutate(p, d)?;
    debug_assert_eq!(volume(&q.dual()), volume(&p.dual()));
    Ok(q)
}

/// Polytopes and collections along an alternating walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonWalk {
    /// Start polytope followed by the result of each successful step.
    pub polytopes: Vec<RationalPolytope>,
    /// The collection used at each step, then the collection after the last.
    pub collections: Vec<CompatibleCollection>,
    /// Step at which the polytope returned to the start up to `GL(3,Z)`.
    pub closed_at: Option<usize>,
    /// Step (1-based) whose piecewise linear image was not convex.
    pub not_convex_at: Option<usize>,
}

/// Mutates an M-side polytope alternately by items 0 and 1 of a two-item
/// collection, moving the collection along by `rule` after each step.
///
/// Stops when the polytope comes back to the start up to `GL(3,Z)`, when a
/// step is not convex, or after `max_steps`.
pub fn pentagon_walk(
    start: &RationalPolytope,
    e: &CompatibleCollection,
    max_steps: usize,
    rule: MutationRule,
) -> Result<PentagonWalk, HighDimError> {
    if e.len() != 2 {
        return Err(HighDimError::NotAPair);
    }
    if e.dim() != start.dim() {
        return Err(HighDimError::DimensionMismatch);
    }
    let target = m_side_form(start);
    let mut walk =
        PentagonWalk { polytopes: vec![start.clone()], collections: vec![e.clone()], closed_at: None, not_convex_at: None };
    let mut cur = TrackedCollection::new(e);
    for t in 1..=max_steps {
        let k = (t - 1) % 2;
        let q = walk.polytopes.last().expect("nonempty");
        match pl_transform(q, &cur.collection.items()[k]) {
            Ok(next) => walk.polytopes.push(next),
            Err(MutationError::NotConvex) => {
                walk.not_convex_at = Some(t);
                return Ok(walk);
            }
            Err(err) => return Err(err.into()),
        }
        cur = cur.mutate(k, rule)?;
        walk.collections.push(cur.collection.clone());
        if m_side_form(walk.polytopes.last().expect("pushed")) == target {
            walk.closed_at = Some(t);
            return Ok(walk);
        }
    }
    Ok(walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn dilated_model_is_reflexive_dual() {
        let p = b5_fano_polytope();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.dual(), b5_start(PolytopeModel::Dilated));
        // B5 has degree H³ = 5, so (−K)³ = 40 and the dual has volume 40/6
        assert_eq!(volume(&p.dual()), BigRational::new(40.into(), 6.into()));
    }

    fn distinct_forms(w: &PentagonWalk) -> usize {
        let mut forms: Vec<_> = w.polytopes[..w.polytopes.len() - 1].iter().map(m_side_form).collect();
        forms.sort();
        forms.dedup();
        forms.len()
    }

    #[test]
    fn b5_pentagon_closes_after_five_steps() {
        for model in [PolytopeModel::Raw, PolytopeModel::Dilated] {
            let w = pentagon_walk(&b5_start(model), &b5_collection(), 12, MutationRule::Linear).unwrap();
            assert_eq!(w.closed_at, Some(5), "{model:?}");
            assert_eq!(w.not_convex_at, None);
            assert_eq!(distinct_forms(&w), 5);
            for (a, b) in w.polytopes.iter().zip(&w.polytopes[1..]) {
                assert_eq!(volume(a), volume(b));
            }
        }
    }

    #[test]
    fn sign_coherent_transport_breaks_convexity() {
        let w = pentagon_walk(&b5_start(PolytopeModel::Raw), &b5_collection(), 12, MutationRule::SignCoherent).unwrap();
        assert_eq!(w.not_convex_at, Some(2));
    }

    #[test]
    fn transported_collection_can_stop_being_valid() {
        let q = RationalPolytope::from_lattice_points(
            &[[-2, -2, 1], [-2, 1, -1], [-1, 0, 2], [-1, 2, -1], [2, 0, 0]].map(|v: [i64; 3]| LatticeVector::from_i64(&v)),
        )
        .unwrap();
        let d = |w: &[i64], f: &[i64]| MutationData::from_i64(w, f).unwrap();
        let e = check_compatible(vec![d(&[2, -2, 1], &[0, -1, -2]), d(&[1, 1, -1], &[0, 1, 1])]).unwrap();
        assert!(e.items().iter().all(|d| pl_transform(&q, d).is_ok()));
        let w = pentagon_walk(&q, &e, 4, MutationRule::Linear).unwrap();
        assert_eq!(w.not_convex_at, Some(2));
    }

    #[test]
    fn commuting_items_walk() {
        let q = b5_start(PolytopeModel::Raw);
        let d = |w: &[i64], f: &[i64]| MutationData::from_i64(w, f).unwrap();
        let e = check_compatible(vec![d(&[0, 0, -1], &[-1, 0, 0]), d(&[0, 1, 0], &[-1, 0, 0])]).unwrap();
        assert!(e.form().iter().flatten().all(|x| x == &BigInt::from(0)));
        let w = pentagon_walk(&q, &e, 8, MutationRule::Linear).unwrap();
        assert_eq!(w.closed_at, Some(4));
    }
}
