use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;

use super::{quiver_mutate, Quiver, QuiverError, SearchStatus};
use crate::lattice::LatticeVector;
use crate::laurent::{laurent_divide_exact, LaurentPolynomial};

/// How frozen cluster variables are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FrozenMode {
    /// Frozen variables stay as independent coefficients.
    Symbolic,
    /// Frozen variables are set equal to 1.
    #[default]
    Unit,
}

/// A labelled seed: quiver, basis vectors in `Z^m` with the skew form of the
/// initial exchange matrix, and cluster variables as Laurent polynomials in
/// the initial cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    quiver: Quiver,
    form: Vec<Vec<BigInt>>,
    basis_e: Vec<LatticeVector>,
    cluster_x: Vec<LaurentPolynomial>,
    mode: FrozenMode,
}

impl Seed {
    /// The initial seed of a quiver: standard basis and the coordinate
    /// functions as cluster.
    pub fn initial(quiver: &Quiver, mode: FrozenMode) -> Seed {
        let m = quiver.size();
        let form = quiver.matrix().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let cluster_x = (0..m)
            .map(|i| {
                if mode == FrozenMode::Unit && quiver.is_frozen(i) {
                    LaurentPolynomial::one(m)
                } else {
                    LaurentPolynomial::variable(m, i)
                }
            })
            .collect();
        Seed {
            quiver: quiver.clone(),
            form,
            basis_e: (0..m).map(|i| LatticeVector::unit(m, i)).collect(),
            cluster_x,
            mode,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis_e
    }

    pub fn cluster(&self) -> &[LaurentPolynomial] {
        &self.cluster_x
    }

    pub fn mode(&self) -> FrozenMode {
        self.mode
    }

    /// The ambient skew form `{a, b} = aᵀ B₀ b`.
    pub fn skew_form(&self, a: &LatticeVector, b: &LatticeVector) -> BigInt {
        let ac = a.coords();
        let bc = b.coords();
        self.form
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, x)| &ac[i] * x * &bc[j]))
            .sum()
    }

    /// The matrix `({e_i, e_j})`; equals the exchange matrix of the quiver.
    pub fn form_matrix(&self) -> Vec<Vec<BigInt>> {
        self.basis_e.iter().map(|a| self.basis_e.iter().map(|b| self.skew_form(a, b)).collect()).collect()
    }

    /// The unfrozen cluster variables as a sorted list, identifying clusters
    /// regardless of labelling.
    pub fn cluster_key(&self) -> Vec<LaurentPolynomial> {
        let mut key: Vec<_> = self.quiver.unfrozen().into_iter().map(|i| self.cluster_x[i].clone()).collect();
        key.sort();
        key
    }

    pub fn mutate(&self, k: usize) -> Result<Seed, QuiverError> {
        seed_mutate(self, k)
    }
}

/// Seed mutation at an unfrozen index: `e'_k = −e_k`,
/// `e'_i = e_i + max(b_ik, 0)·e_k`, and the exchange relation
/// `x_k x'_k = Π_{b_ik>0} x_i^{b_ik} + Π_{b_ik<0} x_i^{−b_ik}`.
pub fn seed_mutate(s: &Seed, k: usize) -> Result<Seed, QuiverError> {
    let q = &s.quiver;
    let quiver = quiver_mutate(q, k)?;
    let basis_e = s
        .basis_e
        .iter()
        .enumerate()
        .map(|(i, e)| {
            if i == k {
                -e
            } else {
                e + &s.basis_e[k].scale(&BigInt::from(q.b(i, k).max(0)))
            }
        })
        .collect();
    let m = q.size();
    let mut plus = LaurentPolynomial::one(m);
    let mut minus = LaurentPolynomial::one(m);
    for i in 0..m {
        let b = q.b(i, k);
        let e = u32::try_from(b.unsigned_abs()).map_err(|_| QuiverError::Overflow)?;
        if b > 0 {
            plus = plus.mul(&s.cluster_x[i].pow(e));
        } else if b < 0 {
            minus = minus.mul(&s.cluster_x[i].pow(e));
        }
    }
    let x_new = laurent_divide_exact(&plus.add(&minus), &s.cluster_x[k]).map_err(|_| QuiverError::InternalNonLaurent)?;
    let mut cluster_x = s.cluster_x.clone();
    cluster_x[k] = x_new;
    Ok(Seed { quiver, form: s.form.clone(), basis_e, cluster_x, mode: s.mode })
}

/// Clusters reachable from a seed and the mutations between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeGraph {
    /// Each cluster as a sorted list of its unfrozen variables.
    pub clusters: Vec<Vec<LaurentPolynomial>>,
    /// `(a, b, k)`: mutating the first seed found for cluster `a` at `k`
    /// gives cluster `b`; each unordered pair appears once.
    pub edges: Vec<(usize, usize, usize)>,
    pub status: SearchStatus,
}

/// Breadth-first search of the exchange graph, stopping with
/// [`SearchStatus::Exceeded`] beyond `max_clusters` clusters.
pub fn cluster_exchange_graph(s: &Seed, max_clusters: usize) -> Result<ExchangeGraph, QuiverError> {
    let mut index: BTreeMap<Vec<LaurentPolynomial>, usize> = BTreeMap::new();
    let mut clusters = vec![s.cluster_key()];
    index.insert(s.cluster_key(), 0);
    let mut edges = Vec::new();
    let mut seen_edges = BTreeSet::new();
    let mut queue = VecDeque::from([(0usize, s.clone())]);
    while let Some((a, seed)) = queue.pop_front() {
        for k in seed.quiver.unfrozen() {
            let next = seed_mutate(&seed, k)?;
            let key = next.cluster_key();
            let b = match index.get(&key) {
                Some(&b) => b,
                None => {
                    let b = clusters.len();
                    if b >= max_clusters {
                        return Ok(ExchangeGraph { clusters, edges, status: SearchStatus::Exceeded });
                    }
                    index.insert(key.clone(), b);
                    clusters.push(key);
                    queue.push_back((b, next));
                    b
                }
            };
            if seen_edges.insert((a.min(b), a.max(b))) {
                edges.push((a, b, k));
            }
        }
    }
    Ok(ExchangeGraph { clusters, edges, status: SearchStatus::Complete })
}
