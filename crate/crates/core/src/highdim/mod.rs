//! Compatible collections of mutation data in any dimension, their quivers
//! and mutations, the correspondence with cluster seeds, and mutation
//! experiments with 3D polytopes.

mod polytope;
mod seed;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use polytope::{
    b5_collection, b5_fano_polytope, b5_start, m_side_form, mutate_polytope_3d, pentagon_walk, PentagonWalk,
    PolytopeModel,
};
pub use seed::{check_seed_commutation, from_cluster_seed, SeedProjection};

use crate::cluster::{Quiver, QuiverError};
use crate::lattice::LatticeVector;
use crate::mutation::{MutationData, MutationError};
use crate::polygon::PolygonError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HighDimError {
    #[error("items {0} and {1} are not compatible")]
    Incompatible(usize, usize),
    #[error("item {0} is not primitive")]
    NonPrimitive(usize),
    #[error("item {0} has ⟨w,f⟩ ≠ 0")]
    NotAnnihilating(usize),
    #[error("items have different dimensions")]
    DimensionMismatch,
    #[error("mutation at {0} broke compatibility")]
    CompatibilityBroken(usize),
    #[error("c-vector of item {0} is not sign-coherent")]
    NotSignCoherent(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("subspace is not contained in the kernel of the form")]
    NotInKernel,
    #[error("the exchange matrix has frozen vertices")]
    FrozenVertices,
    #[error("a collection of two items is required")]
    NotAPair,
    #[error("form entry does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Mutation(#[from] MutationError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Mutation data `(w_i, f_i)` with `⟨w_i,f_j⟩ = −⟨w_j,f_i⟩` for all pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompatibleCollection {
    items: Vec<MutationData>,
    form: Vec<Vec<BigInt>>,
}

fn form_of(items: &[MutationData]) -> Vec<Vec<BigInt>> {
    items.iter().map(|a| items.iter().map(|b| a.weight_w.dot(&b.factor_f)).collect()).collect()
}

fn validate(items: &[MutationData], primitive: bool) -> Result<Vec<Vec<BigInt>>, HighDimError> {
    let dim = items.first().map(MutationData::dim);
    for (i, d) in items.iter().enumerate() {
        if Some(d.weight_w.dim()) != dim || Some(d.factor_f.dim()) != dim {
            return Err(HighDimError::DimensionMismatch);
        }
        if primitive && !(d.weight_w.is_primitive() && d.factor_f.is_primitive()) {
            return Err(HighDimError::NonPrimitive(i));
        }
    }
    let form = form_of(items);
    for i in 0..items.len() {
        if !form[i][i].is_zero() {
            return Err(HighDimError::NotAnnihilating(i));
        }
        for j in i + 1..items.len() {
            if form[i][j] != -&form[j][i] {
                return Err(HighDimError::Incompatible(i, j));
            }
        }
    }
    Ok(form)
}

/// Validates a list of mutation data as a compatible collection.
pub fn check_compatible(items: Vec<MutationData>) -> Result<CompatibleCollection, HighDimError> {
    let form = validate(&items, true)?;
    Ok(CompatibleCollection { items, form })
}

impl CompatibleCollection {
    /// As [`check_compatible`] but allowing imprimitive weights and factors,
    /// as produced by seeds whose exchange matrix has non-unit content.
    pub fn new_imprimitive(items: Vec<MutationData>) -> Result<Self, HighDimError> {
        let form = validate(&items, false)?;
        Ok(CompatibleCollection { items, form })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Ambient dimension, or 0 for the empty collection.
    pub fn dim(&self) -> usize {
        self.items.first().map_or(0, MutationData::dim)
    }

    pub fn items(&self) -> &[MutationData] {
        &self.items
    }

    /// `{E_i, E_j} = ⟨w_i, f_j⟩`.
    pub fn form(&self) -> &[Vec<BigInt>] {
        &self.form
    }

    /// The items as an unordered list, for comparing collections up to
    /// relabelling.
    pub fn sorted_items(&self) -> Vec<MutationData> {
        let mut v = self.items.clone();
        v.sort();
        v
    }

    /// `E ↦ −E` on every item.
    pub fn negated(&self) -> CompatibleCollection {
        let items =
            self.items.iter().map(|d| MutationData { weight_w: -&d.weight_w, factor_f: -&d.factor_f }).collect();
        CompatibleCollection { items, form: self.form.clone() }
    }
}

impl fmt::Display for CompatibleCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.items.iter().map(|d| format!("({}, {})", d.weight_w, d.factor_f)).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// The quiver with `b_ij = ⟨w_i, f_j⟩` and no frozen vertices.
pub fn collection_quiver(e: &CompatibleCollection) -> Result<Quiver, HighDimError> {
    let b = e
        .form
        .iter()
        .map(|row| row.iter().map(|x| x.to_i64().ok_or(HighDimError::Overflow)).collect())
        .collect::<Result<Vec<Vec<i64>>, _>>()?;
    Ok(Quiver::new(b, [])?)
}

fn shifted(e: &CompatibleCollection, k: usize, coeff: impl Fn(&BigInt) -> BigInt) -> Vec<MutationData> {
    let ek = &e.items[k];
    e.items
        .iter()
        .enumerate()
        .map(|(i, d)| {
            if i == k {
                MutationData { weight_w: -&d.weight_w, factor_f: -&d.factor_f }
            } else {
                let c = coeff(&e.form[i][k]);
                MutationData { weight_w: &d.weight_w + &ek.weight_w.scale(&c), factor_f: &d.factor_f + &ek.factor_f.scale(&c) }
            }
        })
        .collect()
}

fn rebuild(items: Vec<MutationData>, k: usize) -> Result<CompatibleCollection, HighDimError> {
    let form = validate(&items, false).map_err(|_| HighDimError::CompatibilityBroken(k))?;
    Ok(CompatibleCollection { items, form })
}

/// Mutation at `k`: `E_k ↦ −E_k` and `E_i ↦ E_i + max({E_i,E_k}, 0)·E_k`.
///
/// This is the seed mutation rule of the basis vectors, so it is
/// intertwined with [`crate::cluster::seed_mutate`] and
/// [`crate::cluster::quiver_mutate`]. Mutating twice at `k` is the shear
/// `E_i ↦ E_i + {E_i,E_k}·E_k`, not the identity; the tracked
/// [`MutationRule::SignCoherent`] rule is an involution.
pub fn collection_mutate(e: &CompatibleCollection, k: usize) -> Result<CompatibleCollection, HighDimError> {
    if k >= e.len() {
        return Err(HighDimError::IndexOutOfRange(k));
    }
    let zero = BigInt::zero();
    rebuild(shifted(e, k, |b| b.max(&zero).clone()), k)
}

/// How collections move along a mutation sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MutationRule {
    /// [`collection_mutate`] at every step.
    #[default]
    Linear,
    /// `E_i ↦ E_i + max(−ε_k{E_i,E_k}, 0)·E_k`, with `ε_k` the sign of the
    /// coordinates of `E_k` in the starting collection (the tropical sign of
    /// its c-vector).
    SignCoherent,
}

/// A collection together with the coordinates of its items in the
/// collection a walk started from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedCollection {
    pub collection: CompatibleCollection,
    pub c_vectors: Vec<LatticeVector>,
}

impl TrackedCollection {
    pub fn new(e: &CompatibleCollection) -> Self {
        let n = e.len();
        TrackedCollection { collection: e.clone(), c_vectors: (0..n).map(|i| LatticeVector::unit(n, i)).collect() }
    }

    pub fn mutate(&self, k: usize, rule: MutationRule) -> Result<Self, HighDimError> {
        let e = &self.collection;
        if k >= e.len() {
            return Err(HighDimError::IndexOutOfRange(k));
        }
        let zero = BigInt::zero();
        let flip = match rule {
            MutationRule::Linear => false,
            MutationRule::SignCoherent => {
                let c = self.c_vectors[k].coords();
                if c.iter().all(|x| !x.is_negative()) && c.iter().any(|x| x.is_positive()) {
                    true
                } else if c.iter().all(|x| !x.is_positive()) && c.iter().any(|x| x.is_negative()) {
                    false
                } else {
                    return Err(HighDimError::NotSignCoherent(k));
                }
            }
        };
        let coeff = |b: &BigInt| if flip { (-b).max(zero.clone()) } else { b.max(&zero).clone() };
        let ck = &self.c_vectors[k];
        let c_vectors = self
            .c_vectors
            .iter()
            .enumerate()
            .map(|(i, c)| if i == k { -c } else { c + &ck.scale(&coeff(&e.form[i][k])) })
            .collect();
        let collection = rebuild(shifted(e, k, coeff), k)?;
        Ok(TrackedCollection { collection, c_vectors })
    }
}

/// Collections visited by mutating alternately at items 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionOrbit {
    /// Start collection followed by one collection per step.
    pub collections: Vec<CompatibleCollection>,
    /// First step at which the unordered collection is the start one.
    pub period: Option<usize>,
}

pub fn alternating_orbit(
    e: &CompatibleCollection,
    rule: MutationRule,
    max_steps: usize,
) -> Result<CollectionOrbit, HighDimError> {
    if e.len() != 2 {
        return Err(HighDimError::NotAPair);
    }
    let start = e.sorted_items();
    let mut cur = TrackedCollection::new(e);
    let mut collections = vec![e.clone()];
    for t in 1..=max_steps {
        cur = cur.mutate((t - 1) % 2, rule)?;
        collections.push(cur.collection.clone());
        if cur.collection.sorted_items() == start {
            return Ok(CollectionOrbit { collections, period: Some(t) });
        }
    }
    Ok(CollectionOrbit { collections, period: None })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::cluster::quiver_mutate;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn d(w: &[i64], f: &[i64]) -> MutationData {
        MutationData::from_i64(w, f).unwrap()
    }

    pub(crate) fn b5() -> CompatibleCollection {
        check_compatible(vec![d(&[-1, 0, 0], &[0, 1, 1]), d(&[0, 0, -1], &[-1, 0, 0])]).unwrap()
    }

    /// Random compatible collection in `Z^3`: items `((a,b,0), (−b,a,c))`,
    /// whose pairings are the determinants `det[w_j w_i]`, moved by a random
    /// elementary change of basis `w ↦ g^{−T}w`, `f ↦ g f`.
    pub(crate) fn random_collection(rng: &mut ChaCha8Rng) -> CompatibleCollection {
        loop {
            let n = rng.gen_range(1..5);
            let mut items: Vec<MutationData> = (0..n)
                .filter_map(|_| {
                    let (a, b, c) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3), rng.gen_range(-2i64..=2));
                    MutationData::from_i64(&[a, b, 0], &[-b, a, c]).ok()
                })
                .collect();
            if items.len() != n {
                continue;
            }
            for _ in 0..4 {
                // f ↦ f + t·f_j e_i, w ↦ w − t·w_i e_j
                let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
                let t = BigInt::from(rng.gen_range(-2i64..=2));
                if i == j {
                    continue;
                }
                for d in &mut items {
                    let mut f = d.factor_f.clone().into_coords();
                    let mut w = d.weight_w.clone().into_coords();
                    f[i] = &f[i] + &t * &f[j];
                    w[j] = &w[j] - &t * &w[i];
                    d.factor_f = LatticeVector::new(f);
                    d.weight_w = LatticeVector::new(w);
                }
            }
            if let Ok(e) = check_compatible(items) {
                return e;
            }
        }
    }

    #[test]
    fn b5_data() {
        let e = b5();
        assert_eq!(e.form()[0][1], BigInt::from(1));
        let q = collection_quiver(&e).unwrap();
        assert_eq!(crate::cluster::dynkin_type(&q, 50).unwrap(), crate::cluster::DynkinType::A2);
    }

    #[test]
    fn validation_errors() {
        let single = check_compatible(vec![d(&[1, 0], &[0, 1])]).unwrap();
        assert_eq!(collection_quiver(&single).unwrap().size(), 1);
        let bad = check_compatible(vec![d(&[1, 0], &[0, 1]), d(&[0, 1], &[1, 0])]);
        assert_eq!(bad, Err(HighDimError::Incompatible(0, 1)));
        let imp = MutationData { weight_w: LatticeVector::from_i64(&[2, 0]), factor_f: LatticeVector::from_i64(&[0, 1]) };
        assert_eq!(check_compatible(vec![imp.clone()]), Err(HighDimError::NonPrimitive(0)));
        assert!(CompatibleCollection::new_imprimitive(vec![imp]).is_ok());
        let ann = MutationData { weight_w: LatticeVector::from_i64(&[1, 0]), factor_f: LatticeVector::from_i64(&[1, 1]) };
        assert_eq!(check_compatible(vec![ann]), Err(HighDimError::NotAnnihilating(0)));
    }

    #[test]
    fn involution_and_quiver_intertwining() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let e = random_collection(&mut rng);
            let k = rng.gen_range(0..e.len());
            let m = collection_mutate(&e, k).unwrap();
            let sheared: Vec<MutationData> = e
                .items()
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    let (b, ek) = (&e.form()[i][k], &e.items()[k]);
                    MutationData { weight_w: &d.weight_w + &ek.weight_w.scale(b), factor_f: &d.factor_f + &ek.factor_f.scale(b) }
                })
                .collect();
            assert_eq!(collection_mutate(&m, k).unwrap().items(), &sheared[..]);
            let t = TrackedCollection::new(&e).mutate(k, MutationRule::SignCoherent).unwrap();
            assert_eq!(t.mutate(k, MutationRule::SignCoherent).unwrap().collection, e);
            assert_eq!(collection_quiver(&m).unwrap(), quiver_mutate(&collection_quiver(&e).unwrap(), k).unwrap());
        }
    }

    #[test]
    fn b5_orbits() {
        let lin = alternating_orbit(&b5(), MutationRule::Linear, 20).unwrap();
        // the linear rule passes through −E at step 2
        assert_eq!(lin.period, Some(4));
        assert_eq!(lin.collections[2], b5().negated());
        let trop = alternating_orbit(&b5(), MutationRule::SignCoherent, 20).unwrap();
        assert_eq!(trop.period, Some(5));
        let mut distinct: Vec<_> = trop.collections[..5].iter().map(CompatibleCollection::sorted_items).collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 5);
    }

    #[test]
    fn commuting_pair_has_short_orbit() {
        let e = check_compatible(vec![d(&[1, 0, 0], &[0, 1, 0]), d(&[0, 0, 1], &[0, 1, 0])]).unwrap();
        for rule in [MutationRule::Linear, MutationRule::SignCoherent] {
            let p = alternating_orbit(&e, rule, 10).unwrap().period.unwrap();
            assert!(p <= 4);
        }
    }
}
