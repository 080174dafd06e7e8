use num_bigint::BigInt;
use num_traits::Signed;

use super::{collection_mutate, CompatibleCollection, HighDimError};
use crate::cluster::{seed_mutate, FrozenMode, Quiver, Seed};
use crate::lattice::{row_echelon, IntMatrix, LatticeVector, UnimodularMap};
use crate::laurent::LaurentPolynomial;
use crate::mutation::MutationData;

/// The projection `p: Z^m → M = Z^m / V` of a seed lattice, with coordinates
/// on `M` taken from the completion of `V` to a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedProjection {
    quiver: Quiver,
    /// `U` with `U·[V] = [H; 0]`; the last `m − r` rows of `U` give `p`.
    u: UnimodularMap,
    /// Rows are the columns of `U⁻¹`.
    u_inv_cols: IntMatrix,
    form: IntMatrix,
    rank: usize,
    collection: CompatibleCollection,
}

impl SeedProjection {
    pub fn collection(&self) -> &CompatibleCollection {
        &self.collection
    }

    /// Dimension of `M`.
    pub fn dim(&self) -> usize {
        self.quiver.size() - self.rank
    }

    /// `p(n)` in the coordinates of `M`.
    pub fn project(&self, n: &LatticeVector) -> LatticeVector {
        LatticeVector::new(self.u.apply(n).coords()[self.rank..].to_vec())
    }

    /// `θ(n) = (p(n), {−, n})`.
    pub fn theta(&self, n: &LatticeVector) -> MutationData {
        let col = self.form.apply(n);
        let m = self.quiver.size();
        // f[t] = (U⁻¹ e_{r+t})ᵀ B n
        let f = (self.rank..m).map(|t| LatticeVector::new(self.u_inv_cols.rows()[t].clone()).dot(&col)).collect();
        MutationData { weight_w: self.project(n), factor_f: LatticeVector::new(f) }
    }

    /// The functional on `Z^m` induced by `u ∈ Hom(M, Z)`.
    pub fn pull_back(&self, u: &LatticeVector) -> LatticeVector {
        let rows = self.u.matrix().rows();
        let m = self.quiver.size();
        LatticeVector::new(
            (0..m).map(|i| u.coords().iter().enumerate().map(|(t, c)| c * &rows[self.rank + t][i]).sum()).collect(),
        )
    }
}

/// `θ(n) = (p(n), {−, n})` on the seed basis, for a subspace `V` of the
/// kernel of the exchange matrix given by spanning vectors.
///
/// The factor is `{−, e_i}` so that `⟨w_i, f_j⟩ = b_ij`; factors are
/// imprimitive whenever the columns of `B` are. A subspace of full rank
/// leaves nothing to project to and gives [`HighDimError::DimensionMismatch`].
pub fn from_cluster_seed(b: &Quiver, v: &[LatticeVector]) -> Result<SeedProjection, HighDimError> {
    if !b.frozen().is_empty() {
        return Err(HighDimError::FrozenVertices);
    }
    let m = b.size();
    let bm = IntMatrix::new(b.matrix().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
    for x in v {
        if x.dim() != m {
            return Err(HighDimError::DimensionMismatch);
        }
        if !bm.apply(x).is_zero() {
            return Err(HighDimError::NotInKernel);
        }
    }
    let (u, rank) = if v.is_empty() {
        (IntMatrix::identity(m), 0)
    } else {
        let (_, u, pivots) = row_echelon(&IntMatrix::from_columns(v));
        (u, pivots.len())
    };
    if rank == m {
        return Err(HighDimError::DimensionMismatch);
    }
    let u = UnimodularMap::new(u).expect("row echelon transform is unimodular");
    let u_inv_cols = u.inverse().matrix().transpose();
    let mut proj = SeedProjection {
        quiver: b.clone(),
        u,
        u_inv_cols,
        form: bm,
        rank,
        collection: CompatibleCollection::new_imprimitive(Vec::new())?,
    };
    let items = (0..m).map(|i| proj.theta(&LatticeVector::unit(m, i))).collect();
    proj.collection = CompatibleCollection::new_imprimitive(items)?;
    Ok(proj)
}

fn monomial(exp: &LatticeVector) -> LaurentPolynomial {
    LaurentPolynomial::monomial(exp.clone(), num_rational::BigRational::from_integer(1.into()))
}

/// `num / den` with `base^e` multiplied into the right side.
fn times_power(num: &mut LaurentPolynomial, den: &mut LaurentPolynomial, base: &LaurentPolynomial, e: &BigInt) {
    let k = u32::try_from(e.magnitude()).expect("exponent fits in u32");
    if e.is_negative() {
        *den = den.mul(&base.pow(k));
    } else {
        *num = num.mul(&base.pow(k));
    }
}

/// Checks that mutating the seed at `k` and then projecting agrees with
/// projecting and then applying the algebraic mutation of the mutated
/// item `−E_k`, on the character `z^u` with `u ∈ Hom(M, Z)`:
///
/// `μ_k*(p'* z^u) = p*(φ*_{(w'_k, f'_k)} z^u)`.
///
/// Both sides are rational functions of the initial cluster; they are
/// compared after clearing denominators.
pub fn check_seed_commutation(proj: &SeedProjection, k: usize, u: &LatticeVector) -> Result<bool, HighDimError> {
    let q = &proj.quiver;
    if k >= q.size() {
        return Err(HighDimError::IndexOutOfRange(k));
    }
    if u.dim() != proj.dim() {
        return Err(HighDimError::DimensionMismatch);
    }
    let m = q.size();
    let s = Seed::initial(q, FrozenMode::Symbolic);
    let s2 = seed_mutate(&s, k)?;
    let n = proj.pull_back(u);

    // left: Π x'_i^{n(e'_i)}
    let (mut ln, mut ld) = (LaurentPolynomial::one(m), LaurentPolynomial::one(m));
    for (e, x) in s2.basis().iter().zip(s2.cluster()) {
        times_power(&mut ln, &mut ld, x, &n.dot(e));
    }

    // right: x^n (1 + x^{p*f})^{⟨w,u⟩} with (w, f) the k-th mutated item
    let e2 = collection_mutate(&proj.collection, k)?;
    let d = &e2.items()[k];
    let (mut rn, mut rd) = (monomial(&n), LaurentPolynomial::one(m));
    let one_plus = LaurentPolynomial::one(m).add(&monomial(&proj.pull_back(&d.factor_f)));
    times_power(&mut rn, &mut rd, &one_plus, &d.weight_w.dot(u));

    Ok(ln.mul(&rd) == rn.mul(&ld))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::tests::{a2, markov, random_quiver};
    use crate::highdim::collection_quiver;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Integer basis of the kernel of a small integer matrix, by brute force
    /// over a box followed by a rank check.
    fn kernel_vectors(q: &Quiver, r: i64) -> Vec<LatticeVector> {
        let m = q.size();
        let bm = IntMatrix::new(q.matrix().iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect());
        let mut out: Vec<LatticeVector> = Vec::new();
        let mut idx = vec![-r; m];
        loop {
            let v = LatticeVector::from_i64(&idx);
            if !v.is_zero() && bm.apply(&v).is_zero() {
                let mut cand = out.clone();
                cand.push(v.clone());
                if IntMatrix::from_columns(&cand).rank() == cand.len() {
                    out = cand;
                }
            }
            let mut p = 0;
            while p < m && idx[p] == r {
                idx[p] = -r;
                p += 1;
            }
            if p == m {
                return out;
            }
            idx[p] += 1;
        }
    }

    fn unfrozen_quiver(rng: &mut ChaCha8Rng, max: usize) -> Quiver {
        loop {
            let n = rng.gen_range(2..=max);
            let q = random_quiver(rng, n, 2).unfrozen_part();
            if q.size() >= 2 {
                return q;
            }
        }
    }

    #[test]
    fn a2_without_kernel() {
        let p = from_cluster_seed(&a2(), &[]).unwrap();
        assert_eq!(p.collection().len(), 2);
        assert_eq!(collection_quiver(p.collection()).unwrap(), a2());
    }

    #[test]
    fn markov_projects_to_the_plane() {
        let v = [LatticeVector::from_i64(&[1, 1, 1])];
        let p = from_cluster_seed(&markov(), &v).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(collection_quiver(p.collection()).unwrap(), markov());
        for d in p.collection().items() {
            assert!(d.weight_w.is_primitive());
            assert_eq!(d.factor_f.content(), BigInt::from(3));
        }
        assert_eq!(from_cluster_seed(&markov(), &[LatticeVector::from_i64(&[1, 0, 0])]), Err(HighDimError::NotInKernel));
    }

    #[test]
    fn round_trip_and_commutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 40 {
            let q = unfrozen_quiver(&mut rng, 4);
            let n = q.size();
            let ker = kernel_vectors(&q, 2);
            let take = rng.gen_range(0..=ker.len());
            let Ok(p) = from_cluster_seed(&q, &ker[..take]) else {
                assert_eq!(take, n);
                continue;
            };
            assert_eq!(collection_quiver(p.collection()).unwrap(), q);
            let k = rng.gen_range(0..n);
            let u = LatticeVector::new((0..p.dim()).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect());
            assert!(check_seed_commutation(&p, k, &u).unwrap(), "{q} k={k} u={u}");
            checked += 1;
        }
    }

    #[test]
    fn basis_mutation_matches_collection_mutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let q = unfrozen_quiver(&mut rng, 5);
            let n = q.size();
            let p = from_cluster_seed(&q, &[]).unwrap();
            let k = rng.gen_range(0..n);
            let s2 = seed_mutate(&Seed::initial(&q, FrozenMode::Unit), k).unwrap();
            let e2 = collection_mutate(p.collection(), k).unwrap();
            let mapped: Vec<MutationData> = s2.basis().iter().map(|e| p.theta(e)).collect();
            assert_eq!(mapped, e2.items());
        }
    }
}
