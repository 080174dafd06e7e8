//! The correspondence between Fano polygons and quivers: polygon seeds,
//! mutation through quiver vertices, mutation-class exploration and
//! finite-type classification.

mod explore;
mod growth;
mod search;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use thiserror::Error;

pub use explore::{
    classify, polygon_mutation_graph, ClassifyOptions, ExploreOptions, FiniteTypeReport, GraphEdge, MutationGraph,
    Verdict,
};
pub use growth::{kronecker_growth_trace, maximally_mutable, MutabilityReport};
pub use search::{enumerate_fano_polygons, enumerate_fano_polygons_by, tcone_normals};

use crate::cluster::{quiver_isomorphic, quiver_mutate, Quiver, QuiverError};
use crate::lattice::{det2, volume, LatticeVector};
use crate::mutation::{combinatorial_mutate, MutationData, MutationError};
use crate::polygon::{EdgeData, FanoPolytope, PolygonError, ResidueCone};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Mutation(#[from] MutationError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("index {0} is frozen")]
    FrozenIndex(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("the two vertices do not span a Kronecker subquiver")]
    NotKronecker,
    #[error("Newton polytope is not a Fano polygon")]
    NotFanoSupport,
    #[error("arrow count does not fit in 64 bits")]
    Overflow,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

/// The seed attached to a Fano polygon.
///
/// Indices `0..n` are unfrozen, one per T-cone, with the `m_E` copies of each
/// edge consecutive and edges in counter-clockwise order. Indices `n..n+|B|`
/// are frozen, one per residual cone, in the same edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonSeed {
    pub polygon: FanoPolytope,
    pub edges: Vec<EdgeData>,
    /// The primitive inward normal `ρ(e_i)` of each index.
    pub rho: Vec<LatticeVector>,
    /// Edge (position in `edges`) of each unfrozen index.
    pub edge_of: Vec<usize>,
    /// Residual cone of each frozen index, offset by the unfrozen count.
    pub basket_of: Vec<ResidueCone>,
    /// `b_ij = det[ρ(e_i) ρ(e_j)]`.
    pub quiver: Quiver,
}

impl PolygonSeed {
    pub fn unfrozen_count(&self) -> usize {
        self.edge_of.len()
    }

    pub fn size(&self) -> usize {
        self.rho.len()
    }

    /// Mutation data of the edge behind an unfrozen index.
    pub fn mutation_data(&self, k: usize) -> Result<MutationData, BridgeError> {
        if k >= self.size() {
            return Err(BridgeError::IndexOutOfRange(k));
        }
        let e = self.edge_of.get(k).ok_or(BridgeError::FrozenIndex(k))?;
        Ok(MutationData::from_edge(&self.edges[*e]))
    }

    /// First unfrozen index of every edge carrying T-cones.
    pub fn edge_representatives(&self) -> Vec<usize> {
        (0..self.unfrozen_count()).filter(|&k| k == 0 || self.edge_of[k - 1] != self.edge_of[k]).collect()
    }
}

pub fn polygon_seed(p: &FanoPolytope) -> Result<PolygonSeed, BridgeError> {
    let edges = p.edges()?;
    let mut rho = Vec::new();
    let mut edge_of = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        for _ in 0..e.tcone_count_m {
            rho.push(e.normal_w.clone());
            edge_of.push(i);
        }
    }
    let basket_of: Vec<ResidueCone> = edges.iter().filter_map(EdgeData::residue).collect();
    rho.extend(basket_of.iter().map(|c| c.normal.clone()));
    let n = edge_of.len();
    let b = rho
        .iter()
        .map(|a| rho.iter().map(|c| det2(a, c).to_i64().ok_or(BridgeError::Overflow)).collect())
        .collect::<Result<Vec<Vec<i64>>, _>>()?;
    let quiver = Quiver::new(b, n..rho.len())?;
    Ok(PolygonSeed { polygon: p.clone(), edges, rho, edge_of, basket_of, quiver })
}

fn sorted(mut v: Vec<LatticeVector>) -> Vec<LatticeVector> {
    v.sort();
    v
}

/// Checks that `after = μ_k(before)` on the level of seeds: the normals of
/// `before` transported by `ρ(e_i) ↦ ρ(e_i) + max(b_ik, 0)·ρ(e_k)`,
/// `ρ(e_k) ↦ −ρ(e_k)` are the normals of `after`, frozen and unfrozen
/// separately, and (at desk scale) the quivers are isomorphic.
pub(crate) fn check_intertwining(before: &PolygonSeed, k: usize, after: &PolygonSeed) -> Result<(), BridgeError> {
    let wk = &before.rho[k];
    let moved: Vec<LatticeVector> = before
        .rho
        .iter()
        .enumerate()
        .map(|(i, w)| {
            if i == k {
                -w
            } else {
                w + &wk.scale(&BigInt::from(before.quiver.b(i, k).max(0)))
            }
        })
        .collect();
    let n = before.unfrozen_count();
    let m = after.unfrozen_count();
    if n != m
        || sorted(moved[..n].to_vec()) != sorted(after.rho[..m].to_vec())
        || sorted(moved[n..].to_vec()) != sorted(after.rho[m..].to_vec())
    {
        return Err(BridgeError::InvariantViolation(format!(
            "normals of {} do not follow seed mutation at {k}",
            after.polygon
        )));
    }
    let expected = quiver_mutate(&before.quiver, k)?;
    match quiver_isomorphic(&expected, &after.quiver) {
        Ok(Some(_)) | Err(QuiverError::SizeLimit(_)) => Ok(()),
        Ok(None) => Err(BridgeError::InvariantViolation(format!("quiver of {} is not μ_{k}", after.polygon))),
        Err(e) => Err(e.into()),
    }
}

/// Mutates a polygon at the edge behind unfrozen index `k`, and checks that
/// the result's seed is the mutated seed.
pub fn polygon_mutate_at(p: &FanoPolytope, k: usize) -> Result<FanoPolytope, BridgeError> {
    let seed = polygon_seed(p)?;
    let d = seed.mutation_data(k)?;
    let q = combinatorial_mutate(p, &d)?;
    check_intertwining(&seed, k, &polygon_seed(&q)?)?;
    Ok(q)
}

/// Applies `steps` edge mutations at uniformly random unfrozen indices.
///
/// Every step checks that the dual area and the singularity content are
/// unchanged, that the data `(−w, f)` mutates back to the previous polygon
/// exactly, and that the seed follows seed mutation; the polygon is then
/// replaced by its normal form. Stops early at a polygon without T-cones.
pub fn random_mutation_walk<R: Rng>(
    p: &FanoPolytope,
    steps: usize,
    rng: &mut R,
) -> Result<Vec<FanoPolytope>, BridgeError> {
    let mut walk = vec![p.clone()];
    let mut cur = p.clone();
    for _ in 0..steps {
        let seed = polygon_seed(&cur)?;
        if seed.unfrozen_count() == 0 {
            break;
        }
        let k = rng.gen_range(0..seed.unfrozen_count());
        let d = seed.mutation_data(k)?;
        let next = combinatorial_mutate(&cur, &d)?;
        let fail = |what: &str| Err(BridgeError::InvariantViolation(format!("{what} changed: {cur} -> {next}")));
        if volume(&next.dual()) != volume(&cur.dual()) {
            return fail("dual area");
        }
        if !next.singularity_content()?.equivalent(&cur.singularity_content()?) {
            return fail("singularity content");
        }
        if combinatorial_mutate(&next, &d.inverse())?.vertices() != cur.vertices() {
            return fail("inverse mutation");
        }
        check_intertwining(&seed, k, &polygon_seed(&next)?)?;
        cur = next.canonical_form()?.0;
        walk.push(cur.clone());
    }
    Ok(walk)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::cluster::{has_kronecker, Quiver};
    use crate::mutation::tests::random_fano_polygon;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn p2() -> FanoPolytope {
        FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    pub(crate) fn diamond() -> FanoPolytope {
        FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]).unwrap()
    }

    #[test]
    fn random_walks_keep_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let p = random_fano_polygon(&mut rng, 3);
            let w = random_mutation_walk(&p, 5, &mut rng).unwrap();
            assert!(w.len() <= 6);
        }
    }

    #[test]
    fn p2_seed_is_markov() {
        let s = polygon_seed(&p2()).unwrap();
        assert_eq!(s.unfrozen_count(), 3);
        assert!(s.basket_of.is_empty());
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(s.quiver.b(i, j).abs(), 3);
                }
            }
        }
    }

    #[test]
    fn diamond_seed_has_kronecker() {
        let s = polygon_seed(&diamond()).unwrap();
        assert_eq!(s.unfrozen_count(), 4);
        for i in 0..4 {
            assert_eq!(s.quiver.b(i, (i + 1) % 4).abs(), 2);
        }
        assert!(has_kronecker(&s.quiver));
    }

    #[test]
    fn frozen_indices_carry_the_basket() {
        // P(1,1,3): two T-cones and a unit edge at height 3
        let p = FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -3]]).unwrap();
        let s = polygon_seed(&p).unwrap();
        assert_eq!((s.unfrozen_count(), s.size()), (2, 3));
        assert_eq!(s.basket_of[0].cyclic_type.to_string(), "1/3(1,1)");
        assert_eq!(s.basket_of.len() + s.unfrozen_count(), s.size());
        assert_eq!(s.quiver.frozen().len(), s.basket_of.len());
        assert_eq!(s.mutation_data(s.size() - 1), Err(BridgeError::FrozenIndex(s.size() - 1)));
    }

    #[test]
    fn p2_mutates_to_p114() {
        let p114 = FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -4]]).unwrap();
        for k in 0..3 {
            let q = polygon_mutate_at(&p2(), k).unwrap();
            assert_eq!(q.canonical_vertices(), p114.canonical_vertices());
            // Markov triple (1,1,1) -> (1,1,2)
            let s = polygon_seed(&q).unwrap();
            let mut t: Vec<i64> = vec![s.quiver.b(0, 1).abs() / 3, s.quiver.b(1, 2).abs() / 3, s.quiver.b(0, 2).abs() / 3];
            t.sort();
            assert_eq!(t, vec![1, 1, 2]);
            // mutate back through the index now carrying −w_k
            let back = polygon_seed(&q).unwrap();
            let wk = -&polygon_seed(&p2()).unwrap().rho[k];
            let j = (0..back.unfrozen_count()).find(|&j| back.rho[j] == wk).unwrap();
            let r = polygon_mutate_at(&q, j).unwrap();
            assert_eq!(r.canonical_vertices(), p2().canonical_vertices());
        }
    }

    #[test]
    fn rank_and_transitivity_on_random_polygons() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let p = random_fano_polygon(&mut rng, 4);
            let s = polygon_seed(&p).unwrap();
            let q: &Quiver = &s.quiver;
            let n = q.size();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if i != j && j != k && i != k && q.b(i, j) == 0 && q.b(j, k) == 0 {
                            assert_eq!(q.b(i, k), 0);
                        }
                    }
                }
            }
            let m = crate::lattice::IntMatrix::new(
                q.matrix().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            );
            if n > 0 {
                assert!(m.rank() <= 2);
            }
            for k in s.edge_representatives() {
                polygon_mutate_at(&p, k).unwrap();
            }
        }
    }
}
